//! Path expansions of submaximal minors and square-free monomial CI ideals
//! under the unique-path hypothesis.

mod poly;

pub use poly::{variable_name, Exponents, SparsePolynomial};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{pair_rank, pairs, Graph, VertexSet};
use crate::matrix::SymMatrix;

/// Largest `n` accepted by the symbolic determinant routines.
pub const MAX_SYMBOLIC_N: usize = 7;

/// Whether every non-edge of `G` is joined by at most one simple path in `H`.
pub fn unique_path_hypothesis(g: &Graph, h: &Graph) -> Result<bool> {
    g.edge_intersection(h)?;
    Ok(g.non_edges().iter().all(|&(k, l)| h.count_paths_up_to(k, l, 2) <= 1))
}

/// A simple path with its sign `(-1)^{|V(p)|-1}` and its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTerm {
    /// Vertex sequence, 0-based.
    pub path: Vec<usize>,
    pub sign: i8,
    /// Edges of the path as `(i, j)`, `i < j`, sorted.
    pub monomial: Vec<(usize, usize)>,
}

impl PathTerm {
    pub fn new(path: Vec<usize>) -> PathTerm {
        let sign = if path.len() % 2 == 1 { 1 } else { -1 };
        let mut monomial: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        monomial.sort_unstable();
        PathTerm { path, sign, monomial }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_iter(self.path.iter().copied())
    }

    /// `sgn(p) · σ_p · det Σ_{N∖V(p)}` at a concrete matrix.
    pub fn evaluate(&self, sigma: &SymMatrix) -> f64 {
        let rest = VertexSet::full(sigma.n()).difference(self.vertices());
        let minor = if rest.is_empty() { 1.0 } else { sigma.principal(rest).determinant() };
        let mono: f64 = self.monomial.iter().map(|&(i, j)| sigma.get(i, j)).product();
        self.sign as f64 * mono * minor
    }
}

/// One term per simple `H`-path from `k` to `l`, in lexicographic path
/// order. Their sum equals `(-1)^{k+l} det Σ_{N∖k,N∖l}` on matrices with
/// the zero pattern of `H`.
pub fn path_expansion(h: &Graph, k: usize, l: usize, cap: Option<usize>) -> Result<Vec<PathTerm>> {
    Ok(h.all_paths(k, l, cap)?.into_iter().map(PathTerm::new).collect())
}

fn check_symbolic(h: &Graph) -> Result<()> {
    if h.n() > MAX_SYMBOLIC_N {
        return Err(Error::Size(format!(
            "symbolic determinants are limited to n <= {MAX_SYMBOLIC_N}, got {}",
            h.n()
        )));
    }
    Ok(())
}

/// Entry `(a, b)` of the generic unit-diagonal symmetric matrix with zeros
/// off `H`.
fn generic_entry(h: &Graph, a: usize, b: usize) -> Option<SparsePolynomial> {
    if a == b {
        Some(SparsePolynomial::one(h.n()))
    } else if h.has_edge(a, b) {
        Some(SparsePolynomial::var(h.n(), a, b))
    } else {
        None
    }
}

/// Determinant of the generic matrix restricted to `rows × cols` (same
/// size), by Laplace expansion along the sparsest row with memoisation on
/// the remaining row and column sets.
fn symbolic_det(h: &Graph, rows: VertexSet, cols: VertexSet) -> SparsePolynomial {
    let mut memo = HashMap::new();
    det_rec(h, rows, cols, &mut memo)
}

fn det_rec(
    h: &Graph,
    rows: VertexSet,
    cols: VertexSet,
    memo: &mut HashMap<(u16, u16), SparsePolynomial>,
) -> SparsePolynomial {
    let n = h.n();
    if rows.is_empty() {
        return SparsePolynomial::one(n);
    }
    if let Some(p) = memo.get(&(rows.0, cols.0)) {
        return p.clone();
    }
    let nonzeros = |r: usize| cols.iter().filter(|&c| r == c || h.has_edge(r, c)).count();
    let r = rows.iter().min_by_key(|&r| nonzeros(r)).expect("non-empty");
    let row_pos = rows.iter().position(|v| v == r).expect("member");
    let mut acc = SparsePolynomial::zero(n);
    for (col_pos, c) in cols.iter().enumerate() {
        let Some(entry) = generic_entry(h, r, c) else {
            continue;
        };
        let sub = det_rec(h, rows.without(r), cols.without(c), memo);
        if sub.is_zero() {
            continue;
        }
        let term = &entry * &sub;
        acc = if (row_pos + col_pos) % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    memo.insert((rows.0, cols.0), acc.clone());
    acc
}

/// `det Σ_{N∖k,N∖l}` of the generic unit-diagonal symmetric matrix with
/// zeros off `H`, rows and columns in increasing order.
pub fn symbolic_apm(h: &Graph, k: usize, l: usize) -> Result<SparsePolynomial> {
    check_symbolic(h)?;
    if k >= h.n() || l >= h.n() || k == l {
        return Err(Error::arg("symbolic minor needs distinct vertices in range"));
    }
    let all = VertexSet::full(h.n());
    Ok(symbolic_det(h, all.without(k), all.without(l)))
}

/// `det Σ_{S,S}` of the same generic matrix.
pub fn symbolic_principal_minor(h: &Graph, s: VertexSet) -> Result<SparsePolynomial> {
    check_symbolic(h)?;
    Ok(symbolic_det(h, s, s))
}

/// Right-hand side of the path expansion as a polynomial:
/// `Σ_p sgn(p) · σ_p · det Σ_{N∖V(p)}`.
pub fn path_expansion_polynomial(h: &Graph, k: usize, l: usize) -> Result<SparsePolynomial> {
    check_symbolic(h)?;
    let n = h.n();
    let mut acc = SparsePolynomial::zero(n);
    for term in path_expansion(h, k, l, None)? {
        let minor = symbolic_principal_minor(h, VertexSet::full(n).difference(term.vertices()))?;
        let mono = SparsePolynomial::monomial(n, &term.monomial);
        let t = (&mono * &minor).scale(&BigRational::from_integer(term.sign.into()));
        acc = &acc + &t;
    }
    Ok(acc)
}

/// A square-free monomial: a set of variables `σ_ij`, as a bitmask over
/// pair ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub u128);

impl Monomial {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Monomial {
        Monomial(edges.iter().fold(0, |m, &(i, j)| m | 1u128 << pair_rank(n, i.min(j), i.max(j))))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn edges(self, n: usize) -> Vec<(usize, usize)> {
        pairs(n).enumerate().filter(|(r, _)| self.0 >> r & 1 == 1).map(|(_, p)| p).collect()
    }

    pub fn to_string(self, n: usize) -> String {
        self.edges(n)
            .iter()
            .map(|&(i, j)| variable_name(n, i, j))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Minimal generating set of a square-free monomial ideal, sorted by degree
/// then by variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        let all: BTreeSet<u128> = gens.into_iter().map(|m| m.0).collect();
        let mut kept: Vec<Monomial> = all
            .iter()
            .filter(|&&m| !all.iter().any(|&o| o != m && o & !m == 0))
            .map(|&m| Monomial(m))
            .collect();
        kept.sort_by_key(|m| (m.degree(), m.edges(n)));
        MonomialIdeal { n, generators: kept }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Generators as `s_ij` products.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|m| m.to_string(self.n)).collect()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Minimal primes, each given by its set of variables: the minimal sets
    /// of variables meeting every generator.
    pub fn minimal_primes(&self) -> Vec<Monomial> {
        let mut covers: Vec<u128> = vec![0];
        for g in &self.generators {
            let mut next: BTreeSet<u128> = BTreeSet::new();
            for &c in &covers {
                if c & g.0 != 0 {
                    next.insert(c);
                } else {
                    let mut bits = g.0;
                    while bits != 0 {
                        let b = bits & bits.wrapping_neg();
                        next.insert(c | b);
                        bits &= bits - 1;
                    }
                }
            }
            covers = next
                .iter()
                .filter(|&&c| !next.iter().any(|&o| o != c && o & !c == 0))
                .copied()
                .collect();
        }
        let mut out: Vec<Monomial> = covers.into_iter().map(Monomial).collect();
        out.sort_by_key(|m| (m.degree(), m.edges(self.n)));
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.generator_strings() {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn require_unique_paths(g: &Graph, h: &Graph) -> Result<()> {
    if !unique_path_hypothesis(g, h)? {
        return Err(Error::Unsupported(
            "some non-edge of G is joined by more than one path in H".into(),
        ));
    }
    Ok(())
}

/// Generators of the CI ideal when every non-edge of `G` is joined by at
/// most one `H`-path: `σ_ij` for `ij ∉ H` and `σ_p` for every `H`-path `p`
/// whose endpoints are a non-edge of `G`.
pub fn sci_monomial_generators(g: &Graph, h: &Graph) -> Result<MonomialIdeal> {
    require_unique_paths(g, h)?;
    let n = g.n();
    let mut gens: Vec<Monomial> = h.non_edges().iter().map(|&e| Monomial::from_edges(n, &[e])).collect();
    for (k, l) in g.non_edges() {
        for p in h.all_paths(k, l, Some(1))? {
            gens.push(Monomial::from_edges(n, &PathTerm::new(p).monomial));
        }
    }
    Ok(MonomialIdeal::new(n, gens))
}

/// Under the unique-path hypothesis, returns `G'` = `G` plus every pair that
/// is an edge of neither graph, when each `H`-path joining a non-edge of `G`
/// contains a non-edge of `G`. Then `M(G, H) = M(G', H) = M(G ∩ H)^{-1}`.
pub fn inverse_graphical_recognition(g: &Graph, h: &Graph) -> Result<Option<Graph>> {
    require_unique_paths(g, h)?;
    for (k, l) in g.non_edges() {
        for p in h.all_paths(k, l, Some(1))? {
            if p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                return Ok(None);
            }
        }
    }
    let mut out = *g;
    for (i, j) in g.non_edges() {
        if !h.has_edge(i, j) {
            out.add_edge(i, j)?;
        }
    }
    Ok(Some(out))
}

/// Values `σ_ij` of a matrix indexed by pair rank, for [`SparsePolynomial::eval`].
pub fn pair_values(sigma: &SymMatrix) -> Vec<f64> {
    pairs(sigma.n()).map(|(i, j)| sigma.get(i, j)).collect()
}

/// `(-1)^{k+l}` as a rational.
pub fn cofactor_sign(k: usize, l: usize) -> BigRational {
    if (k + l) % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}
