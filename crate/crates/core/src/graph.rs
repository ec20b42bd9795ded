//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Vertices are `0..n` in the API and `1..=n` in every text format. Adjacency
//! is a symmetric array of `u16` bitmasks, so all queries are a handful of
//! word operations. Deleting a vertex `k` relabels every vertex `v > k` to
//! `v - 1`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 16;

/// Default cap on the number of simple paths returned by [`Graph::all_paths`].
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// A subset of the ground set, one bit per vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Subsets of `self`, in increasing order of their bitmask.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut cur: Option<u16> = Some(0);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full {
                None
            } else {
                Some((s.wrapping_sub(full)) & full)
            };
            Some(VertexSet(s))
        })
    }

    /// Remove vertex `k` and shift higher labels down by one.
    pub fn delete_vertex(self, k: usize) -> Self {
        let low = self.0 & ((1u32 << k) - 1) as u16;
        let high = ((self.0 as u32) >> (k + 1)) << k;
        VertexSet(low | high as u16)
    }

    /// Inverse of [`VertexSet::delete_vertex`]: labels `>= k` move up by one.
    pub fn insert_gap(self, k: usize) -> Self {
        let low = self.0 & ((1u32 << k) - 1) as u16;
        let high = ((self.0 as u32) >> k) << (k + 1);
        VertexSet(low | high as u16)
    }
}

impl fmt::Display for VertexSet {
    /// 1-based, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Number of unordered pairs on `n` vertices.
pub fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic rank of the pair `i < j` among all pairs of `0..n`.
pub fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `i < j` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Size(format!(
                "graph on {n} vertices exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (i, j) in pairs(n) {
            g.add_edge_unchecked(i, j);
        }
        Ok(g)
    }

    /// Build from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Parse a 1-based edge list such as `"1-2 2-3"`.
    pub fn parse_edges(n: usize, text: &str) -> Result<Self> {
        parse_edge_tokens(n, text, 1, 1)
    }

    /// Graph whose edge set is encoded by bit `pair_rank(i, j)`.
    pub fn from_edge_code(n: usize, code: u128) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (r, (i, j)) in pairs(n).enumerate() {
            if code >> r & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
        }
        Ok(g)
    }

    pub fn edge_code(&self) -> u128 {
        pairs(self.n)
            .enumerate()
            .filter(|&(_, (i, j))| self.has_edge(i, j))
            .fold(0u128, |c, (r, _)| c | 1 << r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::arg(format!("self-loop at vertex {}", i + 1)));
        }
        self.add_edge_unchecked(i, j);
        Ok(())
    }

    fn add_edge_unchecked(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        self.adj[i] &= !(1 << j);
        self.adj[j] &= !(1 << i);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn num_edges(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        pairs(self.n).filter(|&(i, j)| self.has_edge(i, j)).collect()
    }

    /// Pairs `(i, j)`, `i < j`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        pairs(self.n).filter(|&(i, j)| !self.has_edge(i, j)).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for (i, j) in self.non_edges() {
            g.add_edge_unchecked(i, j);
        }
        g
    }

    pub fn is_complete(&self) -> bool {
        self.num_edges() == num_pairs(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::arg(format!(
                "vertex {} out of range 1..={}",
                v + 1,
                self.n
            )))
        } else {
            Ok(())
        }
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reachable_avoiding(&self, start: usize, blocked: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u16;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            let next = VertexSet(next).difference(seen).difference(blocked);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether `k` separates `i` and `j`: every path from `i` to `j` meets `k`.
    pub fn separates(&self, i: usize, j: usize, k: VertexSet) -> Result<bool> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::arg("separation query needs distinct vertices"));
        }
        if !k.is_subset(self.vertices()) {
            return Err(Error::arg("separator contains vertices out of range"));
        }
        if k.contains(i) || k.contains(j) {
            return Err(Error::arg("separator must not contain the endpoints"));
        }
        Ok(!self.reachable_avoiding(i, k).contains(j))
    }

    /// Separation test without argument validation, for hot loops.
    pub(crate) fn separates_unchecked(&self, i: usize, j: usize, k: VertexSet) -> bool {
        !self.reachable_avoiding(i, k).contains(j)
    }

    /// Delete `k` and its incident edges.
    pub fn marginal_minor(&self, k: usize) -> Result<Graph> {
        self.check_vertex(k)?;
        let mut g = Graph::empty(self.n - 1)?;
        for (i, j) in self.edges() {
            if i != k && j != k {
                g.add_edge_unchecked(shift_down(i, k), shift_down(j, k));
            }
        }
        Ok(g)
    }

    /// Delete `k` and turn its former neighbourhood into a clique.
    pub fn conditional_minor(&self, k: usize) -> Result<Graph> {
        let mut g = self.marginal_minor(k)?;
        let nb = self.neighbors(k).delete_vertex(k).to_vec();
        for (a, &u) in nb.iter().enumerate() {
            for &v in &nb[a + 1..] {
                g.add_edge_unchecked(u, v);
            }
        }
        Ok(g)
    }

    /// Disjoint union; the second graph's labels are offset by `self.n()`.
    pub fn direct_sum(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Size(format!(
                "direct sum on {n} vertices exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        let mut g = Graph::empty(n)?;
        for (i, j) in self.edges() {
            g.add_edge_unchecked(i, j);
        }
        for (i, j) in other.edges() {
            g.add_edge_unchecked(i + self.n, j + self.n);
        }
        Ok(g)
    }

    /// Connected components as vertex sets, sorted by least element.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.iter().next() {
            let comp = self.reachable_avoiding(v, VertexSet::EMPTY);
            out.push(comp);
            left = left.difference(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Induced subgraph on `vertices`, relabeled to `0..vertices.len()` in
    /// increasing order.
    pub fn induced(&self, vertices: VertexSet) -> Graph {
        let vs = vertices.to_vec();
        let mut g = Graph {
            n: vs.len(),
            adj: [0; MAX_VERTICES],
        };
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge_unchecked(a, b);
                }
            }
        }
        g
    }

    fn check_same_size(&self, other: &Graph) -> Result<()> {
        if self.n != other.n {
            Err(Error::arg(format!(
                "graphs on different vertex counts ({} and {})",
                self.n, other.n
            )))
        } else {
            Ok(())
        }
    }

    pub fn edge_intersection(&self, other: &Graph) -> Result<Graph> {
        self.check_same_size(other)?;
        let mut g = *self;
        for v in 0..self.n {
            g.adj[v] &= other.adj[v];
        }
        Ok(g)
    }

    pub fn edge_union(&self, other: &Graph) -> Result<Graph> {
        self.check_same_size(other)?;
        let mut g = *self;
        for v in 0..self.n {
            g.adj[v] |= other.adj[v];
        }
        Ok(g)
    }

    /// Relabel by `perm`: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for (i, j) in self.edges() {
            g.add_edge_unchecked(perm[i], perm[j]);
        }
        g
    }

    /// Every simple path from `k` to `l` as a vertex sequence, in
    /// lexicographic order. Exceeding `cap` paths is an error.
    pub fn all_paths(&self, k: usize, l: usize, cap: Option<usize>) -> Result<Vec<Vec<usize>>> {
        self.check_vertex(k)?;
        self.check_vertex(l)?;
        if k == l {
            return Err(Error::arg("path endpoints must differ"));
        }
        let cap = cap.unwrap_or(DEFAULT_PATH_CAP);
        let mut out = Vec::new();
        let mut stack = vec![k];
        let mut exceeded = false;
        self.dfs_paths(l, VertexSet::singleton(k), &mut stack, &mut |p| {
            if out.len() == cap {
                exceeded = true;
                return false;
            }
            out.push(p.to_vec());
            true
        });
        if exceeded {
            return Err(Error::PathCap {
                cap,
                from: k + 1,
                to: l + 1,
            });
        }
        Ok(out)
    }

    /// Number of simple `k`-`l` paths, counting stops once `limit` is reached.
    pub fn count_paths_up_to(&self, k: usize, l: usize, limit: usize) -> usize {
        let mut count = 0;
        let mut stack = vec![k];
        self.dfs_paths(l, VertexSet::singleton(k), &mut stack, &mut |_| {
            count += 1;
            count < limit
        });
        count
    }

    /// Depth-first enumeration in increasing neighbour order. The visitor
    /// returns `false` to stop the search. Returns `false` if stopped.
    fn dfs_paths(
        &self,
        target: usize,
        visited: VertexSet,
        stack: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let cur = *stack.last().expect("non-empty path");
        let next = VertexSet(self.adj[cur]).difference(visited);
        for v in next.iter() {
            stack.push(v);
            let keep_going = if v == target {
                visit(stack)
            } else {
                self.dfs_paths(target, visited.with(v), stack, visit)
            };
            stack.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// 1-based `i-j` tokens separated by spaces.
    pub fn edge_list_string(&self) -> String {
        self.edges()
            .iter()
            .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The edge list, as in [`Graph::edge_list_string`].
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.edge_list_string())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}; {})", self.n, self.edge_list_string())
    }
}

fn shift_down(v: usize, k: usize) -> usize {
    if v > k {
        v - 1
    } else {
        v
    }
}

fn parse_edge_tokens(n: usize, text: &str, line: usize, col0: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let mut col = col0;
    for piece in text.split_inclusive(char::is_whitespace) {
        let tok = piece.trim();
        if !tok.is_empty() {
            let bad = |why: &str| Error::parse(line, col, format!("bad edge token `{tok}`: {why}"));
            let (a, b) = tok.split_once('-').ok_or_else(|| bad("expected i-j"))?;
            let i: usize = a.parse().map_err(|_| bad("not an integer"))?;
            let j: usize = b.parse().map_err(|_| bad("not an integer"))?;
            if i == 0 || j == 0 || i > n || j > n {
                return Err(bad(&format!("vertices must lie in 1..={n}")));
            }
            if i == j {
                return Err(bad("self-loop"));
            }
            g.add_edge_unchecked(i - 1, j - 1);
        }
        col += piece.chars().count();
    }
    Ok(g)
}

/// A pair of graphs on a common vertex set: `g` constrains the concentration
/// matrix, `h` the covariance matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphPair {
    pub g: Graph,
    pub h: Graph,
}

impl GraphPair {
    pub fn new(g: Graph, h: Graph) -> Result<Self> {
        g.check_same_size(&h)?;
        Ok(GraphPair { g, h })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// Parse the three-line pair format:
    ///
    /// ```text
    /// n 4
    /// G 1-2 1-3 1-4
    /// H 1-2 2-3 3-4
    /// ```
    ///
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty input, expected `n <count>`"))?;
        let mut it = first.split_whitespace();
        if it.next() != Some("n") {
            return Err(Error::parse(ln, 1, "expected `n <count>`"));
        }
        let count = it.next().ok_or_else(|| Error::parse(ln, 3, "missing vertex count"))?;
        let n: usize = count
            .parse()
            .map_err(|_| Error::parse(ln, 3, format!("bad vertex count `{count}`")))?;
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::parse(ln, 3, format!("vertex count must lie in 1..={MAX_VERTICES}")));
        }

        let mut read = |tag: &str| -> Result<Graph> {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln + 1, 1, format!("missing `{tag}` line")))?;
            let trimmed = line.trim_start();
            let lead = line.len() - trimmed.len();
            let rest = trimmed
                .strip_prefix(tag)
                .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
                .ok_or_else(|| Error::parse(ln, lead + 1, format!("expected line starting with `{tag}`")))?;
            parse_edge_tokens(n, rest, ln, lead + tag.len() + 1)
        };
        let g = read("G")?;
        let h = read("H")?;
        GraphPair::new(g, h)
    }

    pub fn to_text(&self) -> String {
        format!(
            "n {}\nG {}\nH {}\n",
            self.n(),
            self.g.edge_list_string(),
            self.h.edge_list_string()
        )
    }

    pub fn swapped(&self) -> GraphPair {
        GraphPair {
            g: self.h,
            h: self.g,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, s: &str) -> Graph {
        Graph::parse_edges(n, s).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_iter(v.iter().map(|x| x - 1))
    }

    // BFS oracle over explicit adjacency lists, independent of the bitmask code.
    fn bfs_separates(gr: &Graph, i: usize, j: usize, k: VertexSet) -> bool {
        let n = gr.n();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|u| (0..n).filter(|&v| gr.has_edge(u, v)).collect())
            .collect();
        let mut seen = vec![false; n];
        let mut q = std::collections::VecDeque::from([i]);
        seen[i] = true;
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if !seen[v] && !k.contains(v) {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        !seen[j]
    }

    #[test]
    fn separation_examples() {
        let path = g(3, "1-2 2-3");
        assert!(path.separates(0, 2, vs(&[2])).unwrap());
        let k3 = Graph::complete(3).unwrap();
        assert!(!k3.separates(0, 1, vs(&[3])).unwrap());
        let star = g(4, "1-2 1-3 1-4");
        let s = star.separates(1, 2, vs(&[1])).unwrap();
        assert_eq!(s, bfs_separates(&star, 1, 2, vs(&[1])));
        assert!(s);
    }

    #[test]
    fn separation_rejects_bad_arguments() {
        let path = g(3, "1-2 2-3");
        assert!(path.separates(0, 0, VertexSet::EMPTY).is_err());
        assert!(path.separates(0, 2, vs(&[1])).is_err());
        assert!(path.separates(0, 5, VertexSet::EMPTY).is_err());
    }

    #[test]
    fn separation_matches_bfs_on_all_graphs_n4() {
        for code in 0..64u128 {
            let gr = Graph::from_edge_code(4, code).unwrap();
            for (i, j) in pairs(4) {
                let rest = VertexSet::full(4).without(i).without(j);
                for k in rest.subsets() {
                    assert_eq!(gr.separates(i, j, k).unwrap(), bfs_separates(&gr, i, j, k));
                }
            }
        }
    }

    #[test]
    fn minors() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.marginal_minor(2).unwrap(), Graph::complete(2).unwrap());
        let path = g(3, "1-2 2-3");
        assert_eq!(path.marginal_minor(1).unwrap(), Graph::empty(2).unwrap());
        let star = g(4, "1-2 1-3 1-4");
        assert_eq!(star.marginal_minor(0).unwrap(), Graph::empty(3).unwrap());

        assert_eq!(path.conditional_minor(1).unwrap(), g(2, "1-2"));
        let g4 = g(4, "1-4 2-3 3-4");
        assert_eq!(g4.conditional_minor(3).unwrap(), g(3, "1-3 2-3"));
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.conditional_minor(2).unwrap(), Graph::complete(4).unwrap());
    }

    #[test]
    fn direct_sums() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k2.direct_sum(&k2).unwrap(), g(4, "1-2 3-4"));
        let e = Graph::empty(2).unwrap();
        assert_eq!(e.direct_sum(&e).unwrap(), Graph::empty(4).unwrap());
        let p3 = g(3, "1-2 2-3");
        assert_eq!(p3.direct_sum(&Graph::empty(1).unwrap()).unwrap(), g(4, "1-2 2-3"));
        let big = Graph::empty(10).unwrap();
        assert!(matches!(big.direct_sum(&big), Err(Error::Size(_))));
    }

    #[test]
    fn components() {
        assert_eq!(g(4, "1-2 3-4").connected_components(), vec![vs(&[1, 2]), vs(&[3, 4])]);
        assert_eq!(Graph::complete(4).unwrap().connected_components(), vec![vs(&[1, 2, 3, 4])]);
        assert_eq!(
            Graph::empty(3).unwrap().connected_components(),
            vec![vs(&[1]), vs(&[2]), vs(&[3])]
        );
    }

    #[test]
    fn paths() {
        assert_eq!(g(3, "1-2 2-3").all_paths(0, 2, None).unwrap(), vec![vec![0, 1, 2]]);
        let c4 = g(4, "1-2 2-3 3-4 1-4");
        assert_eq!(
            c4.all_paths(0, 2, None).unwrap(),
            vec![vec![0, 1, 2], vec![0, 3, 2]]
        );
        assert!(Graph::empty(2).unwrap().all_paths(0, 1, None).unwrap().is_empty());
    }

    #[test]
    fn path_cap_is_distinct_from_no_paths() {
        let k6 = Graph::complete(6).unwrap();
        assert!(matches!(k6.all_paths(0, 1, Some(10)), Err(Error::PathCap { cap: 10, .. })));
        assert_eq!(k6.count_paths_up_to(0, 1, 2), 2);
        assert_eq!(Graph::empty(6).unwrap().count_paths_up_to(0, 1, 2), 0);
    }

    #[test]
    fn intersection_and_union() {
        let a = g(3, "1-2 1-3");
        let b = g(3, "1-3 2-3");
        assert_eq!(a.edge_intersection(&b).unwrap(), g(3, "1-3"));
        assert_eq!(a.edge_union(&a.complement()).unwrap(), Graph::complete(3).unwrap());
        let star = g(4, "1-2 1-3 1-4");
        let path = g(4, "1-2 2-3 3-4");
        assert_eq!(star.edge_intersection(&path).unwrap(), g(4, "1-2"));
        assert!(a.edge_union(&path).is_err());
    }

    #[test]
    fn vertex_set_relabeling_round_trip() {
        let s = vs(&[1, 3, 5]);
        assert_eq!(s.delete_vertex(1), vs(&[1, 2, 4]));
        assert_eq!(s.delete_vertex(1).insert_gap(1), s);
        assert_eq!(vs(&[1, 2, 3]).subsets().count(), 8);
    }

    #[test]
    fn pair_ranks_are_lexicographic() {
        for n in 2..8 {
            for (r, (i, j)) in pairs(n).enumerate() {
                assert_eq!(pair_rank(n, i, j), r);
            }
        }
    }

    #[test]
    fn parse_pair_file() {
        let p = GraphPair::parse("n 4\nG 1-2 1-3 1-4\nH 1-2 2-3 3-4\n").unwrap();
        assert_eq!(p.g, g(4, "1-2 1-3 1-4"));
        assert_eq!(GraphPair::parse(&p.to_text()).unwrap(), p);
        let blank = GraphPair::parse("n 3\nG\nH 1-2\n").unwrap();
        assert_eq!(blank.g.num_edges(), 0);
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = GraphPair::parse("n 4\nG 1-2 1-1\nH\n").unwrap_err();
        match err {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 7));
                assert!(message.contains("`1-1`"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(GraphPair::parse("n 3\nG 1-4\nH\n").is_err());
        assert!(GraphPair::parse("n 3\nH 1-2\nG\n").is_err());
    }
}
