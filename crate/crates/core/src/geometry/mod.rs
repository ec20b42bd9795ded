//! Model geometry: tangent spaces, transversality, the stacked Jacobian of
//! the defining equations, dimension bounds, block decomposition,
//! connectedness certificates and a numerical point finder.

mod certificate;
mod point;

pub use certificate::{connectedness_certificate, hub_vertex, ConnectednessCertificate};
pub use point::{find_model_point, ModelPoint, PointOptions};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphPair, VertexSet};
use crate::matrix::{max_norm, membership_residual, SymMatrix};

/// Singular values above `RANK_TOL · σ_max` count towards numerical rank.
pub const RANK_TOL: f64 = 1e-8;

/// Max-norm residual below which a matrix is accepted as a model point by
/// the local analyses.
pub const MODEL_TOL: f64 = 1e-8;

/// Number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let max = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Index of a tangent generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentTag {
    Edge(usize, usize),
    Diagonal(usize),
}

#[derive(Clone, Debug)]
pub struct TangentBasis {
    pub base: SymMatrix,
    pub generators: Vec<(TangentTag, SymMatrix)>,
}

impl TangentBasis {
    /// Dimension of the span, by numerical rank.
    pub fn span_dimension(&self, rel_tol: f64) -> usize {
        numerical_rank(&coordinate_matrix(self.base.n(), self.generators.iter().map(|g| &g.1)), rel_tol)
    }
}

/// Columns are the upper-triangle coordinates of the given matrices.
fn coordinate_matrix<'a>(n: usize, mats: impl Iterator<Item = &'a SymMatrix>) -> DMatrix<f64> {
    let mats: Vec<&SymMatrix> = mats.collect();
    let coords: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    DMatrix::from_fn(coords.len(), mats.len(), |r, c| mats[c].get(coords[r].0, coords[r].1))
}

fn tags(g: &Graph) -> Vec<TangentTag> {
    let mut t: Vec<TangentTag> = (0..g.n()).map(TangentTag::Diagonal).collect();
    t.extend(g.edges().into_iter().map(|(i, j)| TangentTag::Edge(i, j)));
    t
}

/// Tangent space of `M(G)` at `P`: `M^{ij} = p_i p_jᵀ + p_j p_iᵀ` for
/// `ij ∈ E_G` and `M^{ii} = 2 p_i p_iᵀ`, where `p_i` is column `i` of `P`.
pub fn tangent_basis_concentration(p: &SymMatrix, g: &Graph) -> Result<TangentBasis> {
    check_sizes(p, g, g)?;
    if !p.is_pd() {
        return Err(Error::domain("base point is not positive definite"));
    }
    let n = p.n();
    let generators = tags(g)
        .into_iter()
        .map(|t| {
            let (i, j) = match t {
                TangentTag::Edge(i, j) => (i, j),
                TangentTag::Diagonal(i) => (i, i),
            };
            let m = SymMatrix::from_fn(n, |a, b| p.get(a, i) * p.get(j, b) + p.get(a, j) * p.get(i, b));
            (t, m)
        })
        .collect();
    Ok(TangentBasis {
        base: p.clone(),
        generators,
    })
}

/// Tangent space of the linear model `M(H)^{-1}`: `E^{ij} = E_ij + E_ji`
/// for `ij ∈ E_H` and `E_ii` on the diagonal.
pub fn tangent_basis_covariance(p: &SymMatrix, h: &Graph) -> Result<TangentBasis> {
    check_sizes(p, h, h)?;
    let n = p.n();
    let generators = tags(h)
        .into_iter()
        .map(|t| {
            let mut m = SymMatrix::zeros(n);
            match t {
                TangentTag::Edge(i, j) => m.set(i, j, 1.0),
                TangentTag::Diagonal(i) => m.set(i, i, 1.0),
            }
            (t, m)
        })
        .collect();
    Ok(TangentBasis {
        base: p.clone(),
        generators,
    })
}

fn check_sizes(p: &SymMatrix, g: &Graph, h: &Graph) -> Result<()> {
    if g.n() != p.n() || h.n() != p.n() {
        return Err(Error::arg("graph and matrix sizes differ"));
    }
    Ok(())
}

fn require_model_point(p: &SymMatrix, g: &Graph, h: &Graph) -> Result<()> {
    let res = max_norm(&membership_residual(p, g, h)?);
    if res > MODEL_TOL * p.max_abs().max(1.0) {
        return Err(Error::domain(format!("matrix is not a model point (residual {res:e})")));
    }
    Ok(())
}

/// Whether the tangent spaces of `M(G)` and `M(H)^{-1}` at `P` span all
/// symmetric matrices.
pub fn is_transverse_at(p: &SymMatrix, g: &Graph, h: &Graph) -> Result<bool> {
    is_transverse_at_with_tol(p, g, h, RANK_TOL)
}

pub fn is_transverse_at_with_tol(p: &SymMatrix, g: &Graph, h: &Graph, rank_tol: f64) -> Result<bool> {
    check_sizes(p, g, h)?;
    require_model_point(p, g, h)?;
    let a = tangent_basis_concentration(p, g)?;
    let b = tangent_basis_covariance(p, h)?;
    let n = p.n();
    let m = coordinate_matrix(n, a.generators.iter().chain(&b.generators).map(|g| &g.1));
    Ok(numerical_rank(&m, rank_tol) == n * (n + 1) / 2)
}

/// Row label of the stacked Jacobian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobianRow {
    /// `g_kl = det Σ_{N∖k,N∖l}` for `kl ∉ G`.
    Minor(usize, usize),
    /// `f_ij = σ_ij` for `ij ∉ H`.
    Entry(usize, usize),
}

#[derive(Clone, Debug)]
pub struct PseudoJacobian {
    pub rows: Vec<JacobianRow>,
    /// `(s, t)` with `s <= t` (`s < t` in correlation mode), row-major.
    pub columns: Vec<(usize, usize)>,
    pub matrix: DMatrix<f64>,
}

impl PseudoJacobian {
    pub fn rank(&self, rel_tol: f64) -> usize {
        numerical_rank(&self.matrix, rel_tol)
    }
}

fn det_or_one(m: DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        1.0
    } else {
        m.determinant()
    }
}

/// `det Σ_{N∖k,N∖l}` with rows and columns in increasing order.
pub fn submaximal_minor(sigma: &SymMatrix, k: usize, l: usize) -> f64 {
    let n = sigma.n();
    let rows: Vec<usize> = (0..n).filter(|&v| v != k).collect();
    let cols: Vec<usize> = (0..n).filter(|&v| v != l).collect();
    det_or_one(sigma.submatrix(&rows, &cols))
}

/// Gradient of [`submaximal_minor`] with respect to the symmetric
/// coordinates `σ_st`, `s <= t` in row-major order. Each entry is a sum of
/// cofactors of `Σ_{N∖k,N∖l}`, computed as explicit determinants so it
/// stays exact where the minor itself is singular.
pub fn submaximal_minor_gradient(sigma: &SymMatrix, k: usize, l: usize) -> Vec<f64> {
    let n = sigma.n();
    let rows: Vec<usize> = (0..n).filter(|&v| v != k).collect();
    let cols: Vec<usize> = (0..n).filter(|&v| v != l).collect();
    // d det / d A_ab = (-1)^{a+b} det(A without row a, column b)
    let cofactor = |a: usize, b: usize| -> f64 {
        let r: Vec<usize> = rows.iter().enumerate().filter(|&(x, _)| x != a).map(|(_, &v)| v).collect();
        let c: Vec<usize> = cols.iter().enumerate().filter(|&(x, _)| x != b).map(|(_, &v)| v).collect();
        let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
        sign * det_or_one(sigma.submatrix(&r, &c))
    };
    let pos = |list: &[usize], v: usize| list.iter().position(|&x| x == v);
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for s in 0..n {
        for t in s..n {
            let mut d = 0.0;
            if let (Some(a), Some(b)) = (pos(&rows, s), pos(&cols, t)) {
                d += cofactor(a, b);
            }
            if s != t {
                if let (Some(a), Some(b)) = (pos(&rows, t), pos(&cols, s)) {
                    d += cofactor(a, b);
                }
            }
            out.push(d);
        }
    }
    out
}

/// Stacked gradients of `g_kl` (`kl ∉ G`) then `f_ij` (`ij ∉ H`).
pub fn stacked_jacobian(sigma: &SymMatrix, g: &Graph, h: &Graph, correlation_mode: bool) -> Result<PseudoJacobian> {
    check_sizes(sigma, g, h)?;
    let n = sigma.n();
    let all_cols: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let keep: Vec<usize> = (0..all_cols.len())
        .filter(|&c| !correlation_mode || all_cols[c].0 != all_cols[c].1)
        .collect();
    let columns: Vec<(usize, usize)> = keep.iter().map(|&c| all_cols[c]).collect();
    let mut rows = Vec::new();
    let mut data: Vec<Vec<f64>> = Vec::new();
    for (k, l) in g.non_edges() {
        let grad = submaximal_minor_gradient(sigma, k, l);
        rows.push(JacobianRow::Minor(k, l));
        data.push(keep.iter().map(|&c| grad[c]).collect());
    }
    for (i, j) in h.non_edges() {
        rows.push(JacobianRow::Entry(i, j));
        data.push(columns.iter().map(|&c| if c == (i, j) { 1.0 } else { 0.0 }).collect());
    }
    let matrix = DMatrix::from_fn(rows.len(), columns.len(), |r, c| data[r][c]);
    Ok(PseudoJacobian { rows, columns, matrix })
}

/// `(|E_G ∩ E_H| + n, |E_G ∩ E_H|)`: bounds on the dimensions of the model
/// and of its correlation slice.
pub fn dimension_bound(g: &Graph, h: &Graph) -> Result<(usize, usize)> {
    let common = g.edge_intersection(h)?.num_edges();
    Ok((common + g.n(), common))
}

/// Kernel dimension of the stacked Jacobian at a model point.
pub fn local_tangent_dimension(sigma: &SymMatrix, g: &Graph, h: &Graph, correlation_mode: bool) -> Result<usize> {
    require_model_point(sigma, g, h)?;
    let j = stacked_jacobian(sigma, g, h, correlation_mode)?;
    Ok(j.columns.len() - j.rank(RANK_TOL))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionResult {
    /// Components of `G ∩ H`, sorted by least element.
    pub blocks: Vec<VertexSet>,
    /// `(G|V, H|V)` for each block, relabeled in increasing order.
    pub pairs: Vec<GraphPair>,
}

pub fn decompose(g: &Graph, h: &Graph) -> Result<DecompositionResult> {
    let blocks = g.edge_intersection(h)?.connected_components();
    let pairs = blocks
        .iter()
        .map(|&b| GraphPair::new(g.induced(b), h.induced(b)))
        .collect::<Result<_>>()?;
    Ok(DecompositionResult { blocks, pairs })
}

/// `Σ ⊙ W` where `W` has `ε` in row and column `i` off the diagonal and 1
/// elsewhere.
pub fn hadamard_shrink(sigma: &SymMatrix, i: usize, eps: f64) -> Result<SymMatrix> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::arg(format!("shrink factor {eps} outside [0, 1]")));
    }
    if i >= sigma.n() {
        return Err(Error::arg("vertex out of range"));
    }
    if !sigma.is_pd() {
        return Err(Error::domain("matrix is not positive definite"));
    }
    let w = SymMatrix::from_fn(sigma.n(), |a, b| if a != b && (a == i || b == i) { eps } else { 1.0 });
    sigma.hadamard(&w)
}
