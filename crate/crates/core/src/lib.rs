//! Gaussian double Markovian models `M(G, H)`: positive definite matrices
//! whose inverse vanishes off the edges of `G` and which themselves vanish
//! off the edges of `H`.
//!
//! - [`graph`]: graphs, separation, minors, paths.
//! - [`ci`]: CI statements and relations, axioms, closure, canonical forms.
//! - [`matrix`]: symmetric matrices, minors, `⟨Σ⟩`, membership residuals.
//! - [`geometry`]: tangent spaces, Jacobian ranks, decomposition,
//!   connectedness certificates, model-point search.
//! - [`ideal`]: path expansions and monomial CI ideals.
//! - [`classify`]: models with at most three common edges; enumeration.
//! - [`report`]: the combined analysis behind the command-line tool.

pub mod ci;
pub mod classify;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod ideal;
pub mod matrix;
pub mod report;

pub use ci::{Relation, Statement};
pub use classify::{ModelDescription, CaseTag};
pub use error::{Error, Result};
pub use geometry::{ConnectednessCertificate, ModelPoint, PointOptions};
pub use graph::{Graph, GraphPair, VertexSet};
pub use ideal::{MonomialIdeal, PathTerm, SparsePolynomial};
pub use matrix::{RationalSymMatrix, SymMatrix};
pub use report::{analyze, AnalyzeOptions, ModelReport};
