//! Sufficient conditions for connectedness of `M(G, H)`.

use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::ideal::unique_path_hypothesis;

/// The first sufficient condition for connectedness that `(G, H)` meets.
/// `Unknown` means no listed condition applies, not that the model is
/// disconnected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectednessCertificate {
    /// Every non-edge of `G` is joined by at most one path in `H`.
    UniquePath,
    /// The same with `G` and `H` exchanged.
    UniquePathSwapped,
    /// Vertex `vertex` (0-based) lies on every `H`-path joining a non-edge
    /// of `G`.
    Hub { vertex: usize },
    HubSwapped { vertex: usize },
    /// `|E_G ∩ E_H| <= 3`, where the explicit classification applies.
    SmallIntersection { common_edges: usize },
    Unknown,
}

/// Least `i` such that every `H`-path between the endpoints of any non-edge
/// of `G` passes through `i`.
pub fn hub_vertex(g: &Graph, h: &Graph) -> Result<Option<usize>> {
    g.edge_intersection(h)?;
    let non_edges = g.non_edges();
    Ok((0..g.n()).find(|&i| {
        non_edges
            .iter()
            .all(|&(k, l)| k == i || l == i || h.separates_unchecked(k, l, VertexSet::singleton(i)))
    }))
}

pub fn connectedness_certificate(g: &Graph, h: &Graph) -> Result<ConnectednessCertificate> {
    use ConnectednessCertificate::*;
    if unique_path_hypothesis(g, h)? {
        return Ok(UniquePath);
    }
    if unique_path_hypothesis(h, g)? {
        return Ok(UniquePathSwapped);
    }
    if let Some(vertex) = hub_vertex(g, h)? {
        return Ok(Hub { vertex });
    }
    if let Some(vertex) = hub_vertex(h, g)? {
        return Ok(HubSwapped { vertex });
    }
    let common_edges = g.edge_intersection(h)?.num_edges();
    if common_edges <= 3 {
        return Ok(SmallIntersection { common_edges });
    }
    Ok(Unknown)
}

impl ConnectednessCertificate {
    /// Re-checks the certificate's condition from the graphs alone.
    pub fn verify(&self, g: &Graph, h: &Graph) -> Result<bool> {
        use ConnectednessCertificate::*;
        Ok(match *self {
            UniquePath => unique_path_hypothesis(g, h)?,
            UniquePathSwapped => unique_path_hypothesis(h, g)?,
            Hub { vertex } => hub_holds(g, h, vertex),
            HubSwapped { vertex } => hub_holds(h, g, vertex),
            SmallIntersection { common_edges } => {
                let c = g.edge_intersection(h)?.num_edges();
                c == common_edges && c <= 3
            }
            Unknown => connectedness_certificate(g, h)? == Unknown,
        })
    }

    pub fn name(&self) -> &'static str {
        use ConnectednessCertificate::*;
        match self {
            UniquePath => "unique-path",
            UniquePathSwapped => "unique-path-swapped",
            Hub { .. } => "hub",
            HubSwapped { .. } => "hub-swapped",
            SmallIntersection { .. } => "small-intersection",
            Unknown => "unknown",
        }
    }
}

fn hub_holds(g: &Graph, h: &Graph, i: usize) -> bool {
    i < g.n()
        && g.non_edges()
            .iter()
            .all(|&(k, l)| k == i || l == i || h.separates_unchecked(k, l, VertexSet::singleton(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::test_util::graph;
    use ConnectednessCertificate::*;

    #[test]
    fn forest_gives_unique_path() {
        let g = graph(5, "1-2");
        let h = graph(5, "1-2 2-3 2-4 4-5");
        assert_eq!(connectedness_certificate(&g, &h).unwrap(), UniquePath);
    }

    #[test]
    fn star_centre_is_a_hub() {
        let star = graph(5, "1-2 1-3 1-4 1-5");
        let g = graph(5, "2-3 3-4");
        assert_eq!(hub_vertex(&g, &star).unwrap(), Some(0));
        assert!(Hub { vertex: 0 }.verify(&g, &star).unwrap());
        assert!(!Hub { vertex: 1 }.verify(&g, &star).unwrap());
    }

    #[test]
    fn hub_certificate_when_paths_are_not_unique() {
        // H: two triangles sharing vertex 3; every path between the
        // triangles passes through 3, but paths inside a triangle are not
        // unique, so G must keep those pairs as edges.
        let h = graph(5, "1-2 1-3 2-3 3-4 3-5 4-5");
        let g = graph(5, "1-2 1-3 2-3 3-4 3-5 4-5 1-4");
        let c = connectedness_certificate(&g, &h).unwrap();
        assert_eq!(c, Hub { vertex: 2 });
        assert!(c.verify(&g, &h).unwrap());
    }

    #[test]
    fn swapped_and_unknown() {
        let cycle = graph(4, "1-2 2-3 3-4 1-4");
        let g = graph(4, "1-2 2-3 3-4");
        assert_eq!(connectedness_certificate(&g, &cycle).unwrap(), UniquePathSwapped);
        // two disjoint non-edges, each joined by many paths avoiding any
        // single vertex
        let mut g = Graph::complete(5).unwrap();
        g.remove_edge(0, 1);
        g.remove_edge(2, 3);
        let k = g;
        assert_eq!(connectedness_certificate(&g, &k).unwrap(), Unknown);
        assert!(Unknown.verify(&g, &k).unwrap());
    }
}
