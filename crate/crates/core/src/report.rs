//! The combined analysis of a graph pair, as a serializable report.
//!
//! Vertices in a report are 1-based, matching the text formats.

use serde::Serialize;

use crate::ci::{check_axioms, statement_count, Relation};
use crate::classify::{classify_small_intersection, ModelDescription};
use crate::error::{Error, Result};
use crate::geometry::{
    connectedness_certificate, decompose, dimension_bound, find_model_point, is_transverse_at_with_tol,
    stacked_jacobian, ConnectednessCertificate, PointOptions, RANK_TOL,
};
use crate::graph::{GraphPair, VertexSet, DEFAULT_PATH_CAP};
use crate::ideal::{inverse_graphical_recognition, sci_monomial_generators, unique_path_hypothesis};
use crate::matrix::SymMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub seed: u64,
    /// Relative singular-value threshold for numerical ranks.
    pub rank_tol: f64,
    /// Search for a numerical model point.
    pub point: bool,
    /// Cap on the number of paths enumerated between any two vertices.
    pub path_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: 0,
            rank_tol: RANK_TOL,
            point: false,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelReport {
    pub input: InputEcho,
    pub blocks: Vec<Vec<usize>>,
    pub dimension_bound: DimensionBound,
    pub union_complete: bool,
    pub transverse_at_identity: bool,
    pub certificate: CertificateReport,
    pub ci_structure: CiStats,
    pub ideal: Option<IdealReport>,
    pub classification: Option<Vec<BlockClassification>>,
    pub point: Option<PointReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputEcho {
    pub n: usize,
    pub g_edges: Vec<[usize; 2]>,
    pub h_edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionBound {
    pub model: usize,
    pub correlation: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub kind: String,
    /// Hub vertex, for the hub certificates.
    pub vertex: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CiStats {
    pub size: usize,
    pub statement_count: usize,
    pub axiom_violations: usize,
    pub first_violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealReport {
    /// Number of terms in the path expansions of all submaximal minors
    /// `det Σ_{N∖k,N∖l}`, `kl ∉ G`, over paths in `H`.
    pub path_terms: usize,
    pub unique_path: bool,
    /// Present under the unique-path hypothesis.
    pub generators: Option<Vec<String>>,
    pub minimal_primes: Option<Vec<Vec<String>>>,
    /// Edges of `G'` when the model is the inverse graphical model of
    /// `G ∩ H`.
    pub inverse_graphical: Option<Vec<[usize; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockClassification {
    pub block: Vec<usize>,
    pub case: String,
    pub roles: Vec<usize>,
    pub swapped: bool,
    pub reversed: bool,
    pub dimension: usize,
    pub components: usize,
    pub connected: bool,
    pub families: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointReport {
    pub seed: u64,
    pub converged: bool,
    pub residual: f64,
    pub restart: Option<usize>,
    pub iterations: Option<usize>,
    pub jacobian_rank: Option<usize>,
    pub local_tangent_dimension: Option<usize>,
    pub matrix: Option<Vec<Vec<f64>>>,
}

fn one_based(edges: Vec<(usize, usize)>) -> Vec<[usize; 2]> {
    edges.into_iter().map(|(i, j)| [i + 1, j + 1]).collect()
}

fn block_list(b: VertexSet) -> Vec<usize> {
    b.iter().map(|v| v + 1).collect()
}

fn certificate_report(c: ConnectednessCertificate) -> CertificateReport {
    let vertex = match c {
        ConnectednessCertificate::Hub { vertex } | ConnectednessCertificate::HubSwapped { vertex } => Some(vertex + 1),
        _ => None,
    };
    CertificateReport {
        kind: c.name().to_string(),
        vertex,
    }
}

fn classification_entry(block: VertexSet, d: &ModelDescription) -> BlockClassification {
    let map = block.to_vec();
    // the description was computed on the block relabeled to 0..|block|
    let orig = |v: usize| if map.is_empty() { v + 1 } else { map[v] + 1 };
    let relabel_line = |line: String| -> String {
        if map.is_empty() {
            return line;
        }
        relabel_variables(&line, &map)
    };
    BlockClassification {
        block: block_list(block),
        case: d.case.to_string(),
        roles: d.roles.iter().map(|&v| orig(v)).collect(),
        swapped: d.swapped,
        reversed: d.reversed,
        dimension: d.dimension(),
        components: d.components(),
        connected: d.connected,
        families: d
            .families
            .iter()
            .map(|f| f.describe(d.n).into_iter().map(relabel_line).collect())
            .collect(),
    }
}

/// Rewrites `s_ab` variable names from block labels to original labels.
fn relabel_variables(line: &str, map: &[usize]) -> String {
    let n = map.iter().max().map_or(0, |m| m + 1);
    let mut out = String::new();
    let mut rest = line;
    while let Some(pos) = rest.find("s_") {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos + 2..];
        let len = tail.find(|c: char| !c.is_ascii_digit() && c != '_').unwrap_or(tail.len());
        let token = &tail[..len];
        let digits: Vec<usize> = if token.contains('_') {
            token.split('_').filter_map(|t| t.parse().ok()).collect()
        } else {
            token.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        if digits.len() == 2 && digits.iter().all(|&d| d >= 1 && d <= map.len()) {
            out.push_str(&crate::ideal::variable_name(n, map[digits[0] - 1], map[digits[1] - 1]));
        } else {
            out.push_str("s_");
            out.push_str(token);
        }
        rest = &tail[len..];
    }
    out.push_str(rest);
    out
}

/// Runs every analysis that applies to `pair`.
pub fn analyze(pair: &GraphPair, opts: &AnalyzeOptions) -> Result<ModelReport> {
    let (g, h) = (&pair.g, &pair.h);
    let n = pair.n();
    let decomposition = decompose(g, h)?;
    let (model, correlation) = dimension_bound(g, h)?;
    let union_complete = g.edge_union(h)?.is_complete();
    let transverse_at_identity = is_transverse_at_with_tol(&SymMatrix::identity(n), g, h, opts.rank_tol)?;
    let certificate = certificate_report(connectedness_certificate(g, h)?);

    let relation = Relation::double_markov(g, h)?;
    let violations = check_axioms(&relation);
    let ci_structure = CiStats {
        size: relation.len(),
        statement_count: statement_count(n),
        axiom_violations: violations.len(),
        first_violation: violations.first().map(|v| v.to_string()),
    };

    let ideal = Some(ideal_report(pair, opts)?);
    let common = g.edge_intersection(h)?.num_edges();
    let classification = if common <= 3 {
        let mut out = Vec::new();
        if common == 0 {
            out.push(classification_entry(VertexSet::EMPTY, &classify_small_intersection(g, h)?));
        }
        for (block, sub) in decomposition.blocks.iter().zip(&decomposition.pairs) {
            if block.len() > 1 {
                out.push(classification_entry(*block, &classify_small_intersection(&sub.g, &sub.h)?));
            }
        }
        Some(out)
    } else {
        None
    };

    let point = if opts.point { Some(point_report(pair, opts)?) } else { None };
    Ok(ModelReport {
        input: InputEcho {
            n,
            g_edges: one_based(g.edges()),
            h_edges: one_based(h.edges()),
        },
        blocks: decomposition.blocks.iter().map(|&b| block_list(b)).collect(),
        dimension_bound: DimensionBound { model, correlation },
        union_complete,
        transverse_at_identity,
        certificate,
        ci_structure,
        ideal,
        classification,
        point,
    })
}

fn ideal_report(pair: &GraphPair, opts: &AnalyzeOptions) -> Result<IdealReport> {
    let (g, h) = (&pair.g, &pair.h);
    let mut path_terms = 0;
    for (k, l) in g.non_edges() {
        path_terms += h.all_paths(k, l, Some(opts.path_cap))?.len();
    }
    let unique_path = unique_path_hypothesis(g, h)?;
    let (generators, minimal_primes, inverse_graphical) = if unique_path {
        let ideal = sci_monomial_generators(g, h)?;
        let primes = ideal
            .minimal_primes()
            .into_iter()
            .map(|p| {
                p.edges(pair.n())
                    .into_iter()
                    .map(|(i, j)| crate::ideal::variable_name(pair.n(), i, j))
                    .collect()
            })
            .collect();
        let inv = inverse_graphical_recognition(g, h)?.map(|gp| one_based(gp.edges()));
        (Some(ideal.generator_strings()), Some(primes), inv)
    } else {
        (None, None, None)
    };
    Ok(IdealReport {
        path_terms,
        unique_path,
        generators,
        minimal_primes,
        inverse_graphical,
    })
}

fn point_report(pair: &GraphPair, opts: &AnalyzeOptions) -> Result<PointReport> {
    let (g, h) = (&pair.g, &pair.h);
    match find_model_point(g, h, opts.seed, &PointOptions::default()) {
        Ok(p) => {
            let j = stacked_jacobian(&p.matrix, g, h, true)?;
            let rank = j.rank(opts.rank_tol);
            let n = pair.n();
            Ok(PointReport {
                seed: opts.seed,
                converged: true,
                residual: p.residual,
                restart: Some(p.restart),
                iterations: Some(p.iterations),
                jacobian_rank: Some(rank),
                local_tangent_dimension: Some(j.columns.len() - rank),
                matrix: Some((0..n).map(|i| (0..n).map(|k| p.matrix.get(i, k)).collect()).collect()),
            })
        }
        Err(Error::NoConvergence { best_residual }) => Ok(PointReport {
            seed: opts.seed,
            converged: false,
            residual: best_residual,
            restart: None,
            iterations: None,
            jacobian_rank: None,
            local_tangent_dimension: None,
            matrix: None,
        }),
        Err(e) => Err(e),
    }
}

impl ModelReport {
    /// Plain-text rendering: model-level quantities first, diagnostics after.
    pub fn to_text(&self) -> String {
        let edges = |e: &[[usize; 2]]| {
            e.iter().map(|[a, b]| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
        };
        let set = |b: &[usize]| format!("{{{}}}", b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        let mut s = String::new();
        s += &format!("n: {}\nG: {}\nH: {}\n", self.input.n, edges(&self.input.g_edges), edges(&self.input.h_edges));
        s += &format!("blocks: {}\n", self.blocks.iter().map(|b| set(b)).collect::<Vec<_>>().join(" "));
        s += &format!(
            "dimension bound: model {}, correlation {}\n",
            self.dimension_bound.model, self.dimension_bound.correlation
        );
        s += &format!("certificate: {}", self.certificate.kind);
        if let Some(v) = self.certificate.vertex {
            s += &format!(" (vertex {v})");
        }
        s += "\n";
        s += &format!("union complete: {}\n", self.union_complete);
        s += &format!("transverse at identity: {}\n", self.transverse_at_identity);
        if let Some(cls) = &self.classification {
            for c in cls {
                s += &format!(
                    "classification {}: {} (dimension {}, {} component(s){}{})\n",
                    set(&c.block),
                    c.case,
                    c.dimension,
                    c.components,
                    if c.swapped { ", swapped" } else { "" },
                    if c.reversed { ", reversed" } else { "" }
                );
                for (idx, f) in c.families.iter().enumerate() {
                    s += &format!("  family {}: {}\n", idx + 1, f.join("; "));
                }
            }
        }
        if let Some(ideal) = &self.ideal {
            s += &format!("unique-path hypothesis: {}\n", ideal.unique_path);
            if let Some(gens) = &ideal.generators {
                s += "generators:\n";
                for g in gens {
                    s += &format!("  {g}\n");
                }
            }
            if let Some(primes) = &ideal.minimal_primes {
                s += &format!("minimal primes: {}\n", primes.len());
            }
            if let Some(inv) = &ideal.inverse_graphical {
                s += &format!("inverse graphical model via G': {}\n", edges(inv));
            }
            s += &format!("path terms: {}\n", ideal.path_terms);
        }
        s += &format!(
            "CI structure: {} of {} statements, {} axiom violation(s)\n",
            self.ci_structure.size, self.ci_structure.statement_count, self.ci_structure.axiom_violations
        );
        if let Some(v) = &self.ci_structure.first_violation {
            s += &format!("  first: {v}\n");
        }
        if let Some(p) = &self.point {
            if p.converged {
                s += &format!(
                    "model point (seed {}): residual {:e}, jacobian rank {}, local tangent dimension {}\n",
                    p.seed,
                    p.residual,
                    p.jacobian_rank.unwrap_or(0),
                    p.local_tangent_dimension.unwrap_or(0)
                );
            } else {
                s += &format!("model point (seed {}): no convergence, best residual {:e}\n", p.seed, p.residual);
            }
        }
        s
    }
}
