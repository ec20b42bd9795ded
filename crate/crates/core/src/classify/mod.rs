//! Explicit descriptions of the correlation models `M_1(G, H)` with at most
//! three common edges, and enumeration of inequivalent double Markov
//! relations on small ground sets.

mod enumerate;

pub use enumerate::{enumerate_inequivalent, EnumeratedClass, Enumeration, MAX_ENUMERATION_N};

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::ideal::SparsePolynomial;
use crate::matrix::SymMatrix;

/// Which proposition case a graph pair falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// No common edge: the correlation model is `{1_n}`.
    Empty,
    SingleEdge,
    /// Two common edges `ij, jk`; cases 1 to 3 by the status of `ik`.
    TwoEdgePath(u8),
    Triangle,
    /// Three common edges forming a path; cases 1 to 11.
    ThreeEdgePath(u8),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Empty => write!(f, "empty"),
            CaseTag::SingleEdge => write!(f, "single-edge"),
            CaseTag::TwoEdgePath(c) => write!(f, "two-edge-path({c})"),
            CaseTag::Triangle => write!(f, "triangle"),
            CaseTag::ThreeEdgePath(c) => write!(f, "three-edge-path({c})"),
        }
    }
}

/// Rational function `num / den` in the family parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalEntry {
    pub num: SparsePolynomial,
    pub den: SparsePolynomial,
}

impl RationalEntry {
    fn poly(p: SparsePolynomial) -> Self {
        let n = p.n();
        RationalEntry {
            num: p,
            den: SparsePolynomial::one(n),
        }
    }

    fn eval(&self, values: &[f64]) -> f64 {
        self.num.eval(values) / self.den.eval(values)
    }
}

impl fmt::Display for RationalEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == SparsePolynomial::one(self.den.n()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A parametrized piece of a correlation model. The parameters are the
/// entries `σ_ij` listed in `params`; every other off-diagonal entry is 0
/// unless given in `entries`. The domain is the set of parameter values in
/// `(-1, 1)` for which every polynomial in `positive` is positive and, if
/// `require_pd` is set, the pattern matrix is positive definite.
///
/// With `inverted` set, the family describes `M_1(H, G)` and the model
/// points are the correlation matrices of the inverses of its members.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub params: Vec<(usize, usize)>,
    pub entries: Vec<((usize, usize), RationalEntry)>,
    pub positive: Vec<SparsePolynomial>,
    pub require_pd: bool,
    pub inverted: bool,
}

impl Family {
    pub fn dimension(&self) -> usize {
        self.params.len()
    }

    /// Human-readable lines: parameters, derived entries and constraints.
    pub fn describe(&self, n: usize) -> Vec<String> {
        let name = |&(i, j): &(usize, usize)| crate::ideal::variable_name(n, i, j);
        let mut out = vec![format!(
            "params: {}",
            if self.params.is_empty() {
                "none".to_string()
            } else {
                self.params.iter().map(name).collect::<Vec<_>>().join(", ")
            }
        )];
        for (p, e) in &self.entries {
            out.push(format!("{} = {e}", name(p)));
        }
        for c in &self.positive {
            out.push(format!("{c} > 0"));
        }
        if self.require_pd {
            out.push("positive definite".into());
        }
        if self.inverted {
            out.push("points are correlation matrices of inverses".into());
        }
        out
    }

    fn values(&self, n: usize, params: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; crate::graph::num_pairs(n)];
        for (&(i, j), &x) in self.params.iter().zip(params) {
            v[crate::graph::pair_rank(n, i, j)] = x;
        }
        v
    }

    /// Pattern matrix at `params`, before any inversion.
    pub fn pattern(&self, n: usize, params: &[f64]) -> Result<SymMatrix> {
        if params.len() != self.params.len() {
            return Err(Error::arg(format!(
                "family has {} parameters, got {}",
                self.params.len(),
                params.len()
            )));
        }
        let values = self.values(n, params);
        let mut m = SymMatrix::identity(n);
        for (&(i, j), &x) in self.params.iter().zip(params) {
            m.set(i, j, x);
        }
        for ((i, j), e) in &self.entries {
            m.set(*i, *j, e.eval(&values));
        }
        Ok(m)
    }

    pub fn in_domain(&self, n: usize, params: &[f64]) -> Result<bool> {
        let m = self.pattern(n, params)?;
        let values = self.values(n, params);
        Ok(params.iter().all(|x| x.abs() < 1.0)
            && self.positive.iter().all(|c| c.eval(&values) > 0.0)
            && (!self.require_pd || m.is_pd()))
    }

    /// Model point at `params`; an error if they lie outside the domain.
    pub fn instantiate(&self, n: usize, params: &[f64]) -> Result<SymMatrix> {
        if !self.in_domain(n, params)? {
            return Err(Error::domain(format!("parameters {params:?} lie outside the family domain")));
        }
        let m = self.pattern(n, params)?;
        if self.inverted {
            Ok(m.inverse()?.to_correlation()?.1)
        } else {
            Ok(m)
        }
    }

    /// Whether the correlation matrix `m` belongs to the family, comparing
    /// entries to within `tol`.
    pub fn contains(&self, m: &SymMatrix, tol: f64) -> Result<bool> {
        let n = m.n();
        let target = if self.inverted {
            m.inverse()?.to_correlation()?.1
        } else {
            m.clone()
        };
        let params: Vec<f64> = self.params.iter().map(|&(i, j)| target.get(i, j)).collect();
        Ok(self.in_domain(n, &params)? && self.pattern(n, &params)?.max_abs_diff(&target) <= tol)
    }

    /// Uniform rejection sampling of parameters in the domain.
    pub fn sample_params<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        for _ in 0..100_000 {
            let p: Vec<f64> = self.params.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
            if self.in_domain(n, &p)? {
                return Ok(p);
            }
        }
        Err(Error::domain("could not draw parameters inside the family domain"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelDescription {
    pub n: usize,
    pub case: CaseTag,
    /// Vertices of the common-edge support in case order: `(i, j)` for a
    /// single edge, `(i, j, k)` with centre `j` for two edges or a
    /// triangle, `(i, j, k, l)` along the path for three edges.
    pub roles: Vec<usize>,
    /// `G` and `H` were exchanged to reach the listed case.
    pub swapped: bool,
    /// The path was read from its other end to reach the listed case.
    pub reversed: bool,
    pub families: Vec<Family>,
    pub connected: bool,
}

impl ModelDescription {
    /// Dimension of the correlation model: the largest family dimension.
    pub fn dimension(&self) -> usize {
        self.families.iter().map(Family::dimension).max().unwrap_or(0)
    }

    pub fn components(&self) -> usize {
        self.families.len()
    }
}

/// Builds families on role labels `0..4` mapped through `roles`.
struct Builder<'a> {
    n: usize,
    roles: &'a [usize],
    inverted: bool,
}

impl Builder<'_> {
    fn pair(&self, a: usize, b: usize) -> (usize, usize) {
        let (x, y) = (self.roles[a], self.roles[b]);
        (x.min(y), x.max(y))
    }

    fn var(&self, a: usize, b: usize) -> SparsePolynomial {
        let (x, y) = self.pair(a, b);
        SparsePolynomial::var(self.n, x, y)
    }

    /// `1 - Σ σ²` over the given role pairs.
    fn ball(&self, vars: &[(usize, usize)]) -> SparsePolynomial {
        vars.iter().fold(SparsePolynomial::one(self.n), |acc, &(a, b)| {
            let v = self.var(a, b);
            &acc - &(&v * &v)
        })
    }

    fn family(
        &self,
        params: &[(usize, usize)],
        entries: Vec<((usize, usize), RationalEntry)>,
        positive: Vec<SparsePolynomial>,
        require_pd: bool,
    ) -> Family {
        Family {
            params: params.iter().map(|&(a, b)| self.pair(a, b)).collect(),
            entries: entries
                .into_iter()
                .map(|((a, b), e)| (self.pair(a, b), e))
                .collect(),
            positive,
            require_pd,
            inverted: self.inverted,
        }
    }

    /// Each listed pair free in `(-1, 1)`, independently.
    fn boxed(&self, params: &[(usize, usize)]) -> Family {
        let pos = params.iter().map(|&p| self.ball(&[p])).collect();
        self.family(params, vec![], pos, false)
    }

    /// The listed pairs jointly inside the unit ball.
    fn disc(&self, params: &[(usize, usize)]) -> Family {
        self.family(params, vec![], vec![self.ball(params)], false)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    G,
    H,
    Neither,
}

fn label(g: &Graph, h: &Graph, a: usize, b: usize) -> Label {
    match (g.has_edge(a, b), h.has_edge(a, b)) {
        (true, false) => Label::G,
        (false, true) => Label::H,
        _ => Label::Neither,
    }
}

const THREE_EDGE_CASES: [[Label; 3]; 11] = {
    use Label::{Neither as O, G, H};
    [
        [G, G, G],
        [O, G, G],
        [G, O, G],
        [O, O, G],
        [O, G, O],
        [O, O, O],
        [H, G, G],
        [H, O, G],
        [H, G, O],
        [G, H, G],
        [O, H, G],
    ]
};

/// Matches `(G, H)` against the classification of models with at most
/// three common edges. The common edges must form a connected graph on
/// the vertices they touch; apply [`crate::geometry::decompose`] first
/// otherwise.
pub fn classify_small_intersection(g: &Graph, h: &Graph) -> Result<ModelDescription> {
    let common = g.edge_intersection(h)?;
    let n = g.n();
    let m = common.num_edges();
    if m > 3 {
        return Err(Error::arg(format!("{m} common edges; the classification covers at most 3")));
    }
    let nontrivial: Vec<VertexSet> = common
        .connected_components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    if nontrivial.len() > 1 {
        return Err(Error::arg("common edges are not connected; decompose the pair first"));
    }
    let describe = |case, roles: Vec<usize>, swapped, reversed, families| ModelDescription {
        n,
        case,
        roles,
        swapped,
        reversed,
        families,
        connected: true,
    };
    match m {
        0 => Ok(describe(
            CaseTag::Empty,
            vec![],
            false,
            false,
            vec![Builder { n, roles: &[], inverted: false }.family(&[], vec![], vec![], false)],
        )),
        1 => {
            let (i, j) = common.edges()[0];
            let roles = vec![i, j];
            let b = Builder { n, roles: &roles, inverted: false };
            let fam = b.boxed(&[(0, 1)]);
            Ok(describe(CaseTag::SingleEdge, roles.clone(), false, false, vec![fam]))
        }
        2 => {
            let support = nontrivial[0];
            let centre = support.iter().find(|&v| common.neighbors(v).len() == 2).expect("path centre");
            let ends: Vec<usize> = support.without(centre).to_vec();
            let roles = vec![ends[0], centre, ends[1]];
            let b = Builder { n, roles: &roles, inverted: false };
            let (case, families) = match label(g, h, ends[0], ends[1]) {
                Label::G => (1, vec![b.disc(&[(0, 1), (1, 2)])]),
                Label::H => {
                    let prod = &b.var(0, 1) * &b.var(1, 2);
                    let f = b.family(
                        &[(0, 1), (1, 2)],
                        vec![((0, 2), RationalEntry::poly(prod))],
                        vec![b.ball(&[(0, 1)]), b.ball(&[(1, 2)])],
                        false,
                    );
                    (2, vec![f])
                }
                Label::Neither => (3, vec![b.boxed(&[(0, 1)]), b.boxed(&[(1, 2)])]),
            };
            Ok(describe(CaseTag::TwoEdgePath(case), roles.clone(), false, false, families))
        }
        _ => {
            let support = nontrivial[0];
            if support.len() == 3 {
                let roles = support.to_vec();
                let b = Builder { n, roles: &roles, inverted: false };
                let f = b.family(&[(0, 1), (0, 2), (1, 2)], vec![], vec![], true);
                return Ok(describe(CaseTag::Triangle, roles.clone(), false, false, vec![f]));
            }
            three_edge_path(g, h, &common, support)
        }
    }
}

fn three_edge_path(g: &Graph, h: &Graph, common: &Graph, support: VertexSet) -> Result<ModelDescription> {
    let n = g.n();
    let ends: Vec<usize> = support.iter().filter(|&v| common.neighbors(v).len() == 1).collect();
    let mut path = vec![ends[0]];
    while path.len() < 4 {
        let last = *path.last().expect("non-empty");
        let next = common
            .neighbors(last)
            .iter()
            .find(|v| !path.contains(v))
            .expect("path continues");
        path.push(next);
    }
    let labels = |p: &[usize]| [label(g, h, p[0], p[2]), label(g, h, p[0], p[3]), label(g, h, p[1], p[3])];
    let mut triple = labels(&path);
    let count = |t: &[Label; 3], l: Label| t.iter().filter(|&&x| x == l).count();
    let swapped = count(&triple, Label::H) > count(&triple, Label::G);
    if swapped {
        for l in triple.iter_mut() {
            *l = match *l {
                Label::G => Label::H,
                Label::H => Label::G,
                Label::Neither => Label::Neither,
            };
        }
    }
    let reversed_triple = [triple[2], triple[1], triple[0]];
    let (case, reversed) = if let Some(c) = THREE_EDGE_CASES.iter().position(|c| *c == triple) {
        (c + 1, false)
    } else if let Some(c) = THREE_EDGE_CASES.iter().position(|c| *c == reversed_triple) {
        (c + 1, true)
    } else {
        unreachable!("every normalized label triple is a listed case")
    };
    if reversed {
        path.reverse();
    }
    let b = Builder { n, roles: &path, inverted: swapped };
    let pd12x34 = || b.boxed(&[(0, 1), (2, 3)]);
    let markov_13 = || RationalEntry::poly(&b.var(0, 1) * &b.var(1, 2));
    let families = match case {
        1 => vec![b.family(&[(0, 1), (1, 2), (2, 3)], vec![], vec![], true)],
        // K_13 = 0 forces σ12·σ23 = 0, so case 4 has the two pieces of case 2
        2 | 4 => vec![pd12x34(), b.disc(&[(1, 2), (2, 3)])],
        3 => vec![pd12x34(), b.disc(&[(0, 1), (1, 2)]), b.disc(&[(1, 2), (2, 3)])],
        5 | 6 => vec![pd12x34(), b.boxed(&[(1, 2)])],
        7 | 8 => vec![b.family(
            &[(0, 1), (1, 2), (2, 3)],
            vec![((0, 2), markov_13())],
            vec![b.ball(&[(0, 1)]), b.ball(&[(1, 2), (2, 3)])],
            false,
        )],
        9 => vec![
            pd12x34(),
            b.family(
                &[(0, 1), (1, 2)],
                vec![((0, 2), markov_13())],
                vec![b.ball(&[(0, 1)]), b.ball(&[(1, 2)])],
                false,
            ),
        ],
        10 => {
            let num = (&(&b.var(0, 1) * &b.var(1, 2)) * &b.var(2, 3)).scale(&-BigRational::one());
            let den = b.ball(&[(1, 2)]);
            vec![b.family(
                &[(0, 1), (1, 2), (2, 3)],
                vec![((0, 3), RationalEntry { num, den })],
                vec![b.ball(&[(0, 1), (1, 2)]), b.ball(&[(1, 2), (2, 3)])],
                false,
            )]
        }
        11 => vec![pd12x34(), b.disc(&[(1, 2), (2, 3)])],
        _ => unreachable!(),
    };
    Ok(ModelDescription {
        n,
        case: CaseTag::ThreeEdgePath(case as u8),
        roles: path,
        swapped,
        reversed,
        families,
        connected: true,
    })
}

/// A model point from `desc.families[family]`, at `params` if given and
/// at randomly drawn admissible parameters otherwise.
pub fn sample_from_family<R: Rng + ?Sized>(
    desc: &ModelDescription,
    family: usize,
    params: Option<&[f64]>,
    rng: &mut R,
) -> Result<SymMatrix> {
    let fam = desc
        .families
        .get(family)
        .ok_or_else(|| Error::arg(format!("no family {family}")))?;
    let drawn;
    let params = match params {
        Some(p) => p,
        None => {
            drawn = fam.sample_params(desc.n, rng)?;
            &drawn
        }
    };
    fam.instantiate(desc.n, params)
}
