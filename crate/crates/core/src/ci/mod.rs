//! Conditional independence statements and relations.
//!
//! A [`Relation`] over the ground set `0..n` is a bitset over all statements
//! `(ij|K)`. The bit index of a statement is frozen, since serialized
//! relations depend on it:
//!
//! ```text
//! index(ij|K) = pair_rank(i, j) * 2^(n-2) + rank of K inside N \ {i, j}
//! ```
//!
//! where `pair_rank` is the lexicographic rank of `i < j` and the rank of `K`
//! is the binary number whose bit `b` says whether the `b`-th smallest element
//! of `N \ {i, j}` lies in `K`.

mod axioms;
mod canon;
mod io;

pub use axioms::{check_axioms, closure, is_upward_stable, recognize_markov, ClosureOutcome, Rule, RuleSet, Violation};
pub use canon::{canonical_form, permutations, Canonicalizer, MAX_CANONICAL_N};
pub use io::{parse_relation, parse_statement};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{num_pairs, pair_rank, pairs, Graph, VertexSet, MAX_VERTICES};

/// The statement `(ij|K)` with `i < j` and `K` disjoint from `{i, j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    i: usize,
    j: usize,
    k: VertexSet,
}

impl Statement {
    /// Normalizes the order of `i` and `j`.
    pub fn new(i: usize, j: usize, k: VertexSet) -> Result<Self> {
        if i == j {
            return Err(Error::arg("a CI statement needs two distinct vertices"));
        }
        if k.contains(i) || k.contains(j) {
            return Err(Error::arg("conditioning set must not contain i or j"));
        }
        Ok(Self::new_unchecked(i, j, k))
    }

    pub(crate) fn new_unchecked(i: usize, j: usize, k: VertexSet) -> Self {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Statement { i, j, k }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn cond(&self) -> VertexSet {
        self.k
    }

    /// `(ij|N \ ijK)`
    pub fn dual(&self, n: usize) -> Statement {
        let rest = VertexSet::full(n).without(self.i).without(self.j);
        Statement {
            k: rest.difference(self.k),
            ..*self
        }
    }

    fn index(&self, n: usize) -> usize {
        let packed = self.k.delete_vertex(self.j).delete_vertex(self.i).0 as usize;
        (pair_rank(n, self.i, self.j) << (n - 2)) | packed
    }

    fn from_index(n: usize, idx: usize) -> Statement {
        let rank = idx >> (n - 2);
        let packed = VertexSet((idx & ((1 << (n - 2)) - 1)) as u16);
        let (i, j) = pairs(n).nth(rank).expect("index in range");
        Statement {
            i,
            j,
            k: packed.insert_gap(i).insert_gap(j),
        }
    }
}

impl fmt::Display for Statement {
    /// `(i j | k1 k2 ...)`, 1-based; `(i j |)` for an empty conditioning set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} |", self.i + 1, self.j + 1)?;
        for v in self.k.iter() {
            write!(f, " {}", v + 1)?;
        }
        write!(f, ")")
    }
}

/// Number of statements `(ij|K)` on `n` elements: `C(n,2) * 2^(n-2)`.
pub fn statement_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        num_pairs(n) << (n - 2)
    }
}

/// A set of CI statements over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Size(format!(
                "relations are limited to {MAX_VERTICES} elements, got {n}"
            )));
        }
        Ok(Relation {
            n,
            bits: vec![0; statement_count(n).div_ceil(64)],
        })
    }

    /// All statements: the relation `A_n`.
    pub fn full(n: usize) -> Result<Self> {
        let mut r = Relation::empty(n)?;
        let total = statement_count(n);
        for (w, word) in r.bits.iter_mut().enumerate() {
            let lo = w * 64;
            *word = if lo + 64 <= total {
                u64::MAX
            } else {
                (1u64 << (total - lo)) - 1
            };
        }
        Ok(r)
    }

    pub fn from_statements<I: IntoIterator<Item = Statement>>(n: usize, it: I) -> Result<Self> {
        let mut r = Relation::empty(n)?;
        for s in it {
            r.insert(s)?;
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    fn check(&self, s: &Statement) -> Result<()> {
        let full = VertexSet::full(self.n);
        if s.j >= self.n || !s.k.is_subset(full) {
            Err(Error::arg(format!("statement {s} is not over {} elements", self.n)))
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, s: &Statement) -> bool {
        if self.check(s).is_err() {
            return false;
        }
        self.test_index(s.index(self.n))
    }

    pub(crate) fn test_index(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub(crate) fn set_index(&mut self, idx: usize) -> bool {
        let before = self.test_index(idx);
        self.bits[idx / 64] |= 1 << (idx % 64);
        !before
    }

    /// Returns whether the statement was newly added.
    pub fn insert(&mut self, s: Statement) -> Result<bool> {
        self.check(&s)?;
        Ok(self.set_index(s.index(self.n)))
    }

    pub fn remove(&mut self, s: &Statement) {
        if self.check(s).is_ok() {
            let idx = s.index(self.n);
            self.bits[idx / 64] &= !(1 << (idx % 64));
        }
    }

    /// Membership without bounds validation; `s` must be over `self.n()`.
    pub(crate) fn has(&self, i: usize, j: usize, k: VertexSet) -> bool {
        self.test_index(Statement::new_unchecked(i, j, k).index(self.n))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Members in index order.
    pub fn iter(&self) -> impl Iterator<Item = Statement> + '_ {
        self.indices().map(move |idx| Statement::from_index(self.n, idx))
    }

    pub(crate) fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    fn check_same_n(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            Err(Error::arg(format!(
                "relations over different ground sets ({} and {})",
                self.n, other.n
            )))
        } else {
            Ok(())
        }
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_same_n(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(Relation { n: self.n, bits })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_same_n(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        Ok(Relation { n: self.n, bits })
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.check_same_n(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        Ok(Relation { n: self.n, bits })
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Separation statements of `g`: `(ij|K)` whenever `K` separates `i` and `j`.
    pub fn of_graph(g: &Graph) -> Relation {
        let n = g.n();
        let mut r = Relation::empty(n).expect("graph size already bounded");
        for (i, j) in pairs(n) {
            let rest = VertexSet::full(n).without(i).without(j);
            for k in rest.subsets() {
                if g.separates_unchecked(i, j, k) {
                    r.set_index(Statement::new_unchecked(i, j, k).index(n));
                }
            }
        }
        r
    }

    /// `<G> ∪ <H>^⊥`
    pub fn double_markov(g: &Graph, h: &Graph) -> Result<Relation> {
        if g.n() != h.n() {
            return Err(Error::arg(format!(
                "graphs on different vertex counts ({} and {})",
                g.n(),
                h.n()
            )));
        }
        Relation::of_graph(g).union(&Relation::of_graph(h).dual())
    }

    pub fn dual(&self) -> Relation {
        let mut r = Relation::empty(self.n).expect("same size");
        for s in self.iter() {
            r.set_index(s.dual(self.n).index(self.n));
        }
        r
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k >= self.n {
            Err(Error::arg(format!("vertex {} out of range 1..={}", k + 1, self.n)))
        } else {
            Ok(())
        }
    }

    fn minor(&self, k: usize, conditional: bool) -> Result<Relation> {
        self.check_vertex(k)?;
        let m = self.n - 1;
        let mut r = Relation::empty(m)?;
        let lift = |v: usize| if v >= k { v + 1 } else { v };
        for (a, b) in pairs(m) {
            let rest = VertexSet::full(m).without(a).without(b);
            for kk in rest.subsets() {
                let mut lifted = kk.insert_gap(k);
                if conditional {
                    lifted = lifted.with(k);
                }
                if self.has(lift(a), lift(b), lifted) {
                    r.set_index(Statement::new_unchecked(a, b, kk).index(m));
                }
            }
        }
        Ok(r)
    }

    /// Statements of `self` not mentioning `k`, relabeled to `N \ k`.
    pub fn marginal(&self, k: usize) -> Result<Relation> {
        self.minor(k, false)
    }

    /// `(ij|K)` over `N \ k` such that `(ij|kK)` is in `self`.
    pub fn conditional(&self, k: usize) -> Result<Relation> {
        self.minor(k, true)
    }

    /// Direct sum on the ground set `0..n+m`, `other` shifted by `n`.
    pub fn direct_sum(&self, other: &Relation) -> Result<Relation> {
        let n = self.n;
        let total = n + other.n;
        let mut r = Relation::empty(total)?;
        let first = VertexSet::full(n);
        let second = VertexSet::full(total).difference(first);
        for (i, j) in pairs(total) {
            let rest = VertexSet::full(total).without(i).without(j);
            for k in rest.subsets() {
                let keep = if i < n && j >= n {
                    true
                } else if j < n {
                    self.has(i, j, k.intersection(first))
                } else {
                    let shifted = VertexSet(k.intersection(second).0 >> n);
                    other.has(i - n, j - n, shifted)
                };
                if keep {
                    r.set_index(Statement::new_unchecked(i, j, k).index(total));
                }
            }
        }
        Ok(r)
    }

    /// Image under the vertex map `v -> perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Relation {
        let mut r = Relation::empty(self.n).expect("same size");
        for s in self.iter() {
            let k = VertexSet::from_iter(s.k.iter().map(|v| perm[v]));
            r.set_index(Statement::new_unchecked(perm[s.i], perm[s.j], k).index(self.n));
        }
        r
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "Relation(n={}; {})", self.n, items.join(", "))
    }
}

/// Index of a statement in the frozen bijection, for callers that build
/// relation-indexed tables.
pub fn statement_index(n: usize, s: &Statement) -> usize {
    s.index(n)
}
