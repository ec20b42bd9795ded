//! Orbits of double Markov relations under relabeling and duality.
//!
//! Since `⟨G, H⟩^⊥ = ⟨H, G⟩`, duality acts on pairs by exchanging the two
//! graphs. Pairs are reduced to orbit minima under `S_n × {swap}` using
//! precomputed permutation images of every graph, and only the minima are
//! canonicalized. Pairs are ordered by their edge codes `(code(G), code(H))`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::ci::{permutations, Canonicalizer, Relation};
use crate::error::{Error, Result};
use crate::graph::{num_pairs, Graph};

pub const MAX_ENUMERATION_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedClass {
    pub canonical: Vec<u8>,
    /// The least pair realizing the class.
    pub g: Graph,
    pub h: Graph,
}

impl EnumeratedClass {
    pub fn canonical_hex(&self) -> String {
        self.canonical.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub n: usize,
    pub connected_only: bool,
    /// Classes sorted by canonical bytes.
    pub classes: Vec<EnumeratedClass>,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// `canonical_hex,n,rep_G_edges,rep_H_edges` with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("canonical_hex,n,rep_G_edges,rep_H_edges\n");
        for c in &self.classes {
            s.push_str(&format!(
                "{},{},{},{}\n",
                c.canonical_hex(),
                self.n,
                c.g.edge_list_string(),
                c.h.edge_list_string()
            ));
        }
        s
    }
}

/// Inequivalent relations `⟨G, H⟩` over ordered pairs of graphs on `n`
/// vertices (connected graphs only if `connected_only`), modulo vertex
/// relabeling and duality.
pub fn enumerate_inequivalent(n: usize, connected_only: bool) -> Result<Enumeration> {
    if n < 3 {
        return Err(Error::arg(format!("enumeration needs n >= 3, got {n}")));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::Size(format!("enumeration supports n <= {MAX_ENUMERATION_N}, got {n}")));
    }
    let graphs: Vec<Graph> = (0..1u128 << num_pairs(n))
        .map(|c| Graph::from_edge_code(n, c).expect("valid code"))
        .filter(|g| !connected_only || g.is_connected())
        .collect();
    let codes: Vec<u32> = graphs.iter().map(|g| g.edge_code() as u32).collect();
    let perms = permutations(n);
    // images[g][p]: code of graph g relabeled by permutation p
    let images: Vec<Vec<u32>> = graphs
        .iter()
        .map(|g| perms.iter().map(|p| g.permuted(p).edge_code() as u32).collect())
        .collect();
    let canon = Canonicalizer::new(n)?;

    let found: BTreeMap<Vec<u8>, (u32, u32)> = (0..graphs.len())
        .into_par_iter()
        .map(|a| {
            let mut local: BTreeMap<Vec<u8>, (u32, u32)> = BTreeMap::new();
            for b in 0..graphs.len() {
                let key = (codes[a], codes[b]);
                let is_min = (0..perms.len()).all(|p| {
                    let (x, y) = (images[a][p], images[b][p]);
                    (x, y) >= key && (y, x) >= key
                });
                if !is_min {
                    continue;
                }
                let r = Relation::double_markov(&graphs[a], &graphs[b]).expect("same size");
                let form = canon.canonical_form(&r, true).expect("size checked");
                local
                    .entry(form)
                    .and_modify(|rep| *rep = (*rep).min(key))
                    .or_insert(key);
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, other| {
            for (form, rep) in other {
                acc.entry(form).and_modify(|r| *r = (*r).min(rep)).or_insert(rep);
            }
            acc
        });

    let classes = found
        .into_iter()
        .map(|(canonical, (gc, hc))| EnumeratedClass {
            canonical,
            g: Graph::from_edge_code(n, gc as u128).expect("valid code"),
            h: Graph::from_edge_code(n, hc as u128).expect("valid code"),
        })
        .collect();
    Ok(Enumeration {
        n,
        connected_only,
        classes,
    })
}
