//! Canonical forms of relations under vertex relabeling and duality.

use super::{statement_count, Relation, Statement};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Largest ground set for which the factorial scan is allowed.
pub const MAX_CANONICAL_N: usize = 7;

/// Precomputed statement permutations for every vertex permutation of `0..n`.
pub struct Canonicalizer {
    n: usize,
    /// `maps[p][idx]` is the index of the image of statement `idx` under the
    /// `p`-th vertex permutation.
    maps: Vec<Vec<u32>>,
    dual: Vec<u32>,
}

impl Canonicalizer {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_CANONICAL_N {
            return Err(Error::Size(format!(
                "canonical forms need a full permutation scan; n = {n} exceeds {MAX_CANONICAL_N}"
            )));
        }
        let total = statement_count(n);
        let full = Relation::full(n)?;
        let statements: Vec<Statement> = full.iter().collect();
        let maps = permutations(n)
            .into_iter()
            .map(|perm| {
                statements
                    .iter()
                    .map(|s| {
                        let k = VertexSet::from_iter(s.cond().iter().map(|v| perm[v]));
                        Statement::new_unchecked(perm[s.i()], perm[s.j()], k).index(n) as u32
                    })
                    .collect()
            })
            .collect();
        let dual = statements.iter().map(|s| s.dual(n).index(n) as u32).collect();
        debug_assert_eq!(statements.len(), total);
        Ok(Canonicalizer { n, maps, dual })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lexicographically least byte encoding over all relabelings of `r`,
    /// and of its dual when `modulo_duality` is set.
    pub fn canonical_form(&self, r: &Relation, modulo_duality: bool) -> Result<Vec<u8>> {
        if r.n() != self.n {
            return Err(Error::arg(format!(
                "relation over {} elements given to a canonicalizer for {}",
                r.n(),
                self.n
            )));
        }
        let members: Vec<usize> = r.indices().collect();
        let mut best: Option<Vec<u8>> = None;
        let bytes = statement_count(self.n).div_ceil(8);
        let mut buf = vec![0u8; bytes];
        let mut consider = |images: &mut dyn Iterator<Item = usize>, best: &mut Option<Vec<u8>>| {
            buf.iter_mut().for_each(|b| *b = 0);
            for idx in images {
                buf[idx / 8] |= 1 << (idx % 8);
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                *best = Some(buf.clone());
            }
        };
        for map in &self.maps {
            consider(&mut members.iter().map(|&i| map[i] as usize), &mut best);
            if modulo_duality {
                consider(
                    &mut members.iter().map(|&i| map[self.dual[i] as usize] as usize),
                    &mut best,
                );
            }
        }
        Ok(best.unwrap_or_default())
    }
}

/// Canonical form of `r`; see [`Canonicalizer::canonical_form`].
pub fn canonical_form(r: &Relation, modulo_duality: bool) -> Result<Vec<u8>> {
    Canonicalizer::new(r.n())?.canonical_form(r, modulo_duality)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
