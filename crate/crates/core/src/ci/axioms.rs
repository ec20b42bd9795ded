//! Gaussoid axioms, Horn closure and recognition of Markov relations.
//!
//! Axiom instances range over distinct `i, j, k` and `K ⊆ N \ ijk`:
//!
//! ```text
//! semigraphoid       (ij|K)  ∧ (ik|jK) ⇒ (ik|K)  ∧ (ij|kK)
//! intersection       (ij|kK) ∧ (ik|jK) ⇒ (ij|K)  ∧ (ik|K)
//! composition        (ij|K)  ∧ (ik|K)  ⇒ (ij|kK) ∧ (ik|jK)
//! weak transitivity  (ij|K)  ∧ (ij|kK) ⇒ (ik|K)  ∨ (jk|K)
//! ```
//!
//! Weak transitivity has a disjunctive conclusion, so it is checked but never
//! used for closure. Rule 17 of Lněnička and Matúš,
//! `(ab|) ∧ (cd|) ∧ (ac|bd) ∧ (bd|ac) ⇒ (ac|)`, is instantiated over every
//! injective assignment of `a, b, c, d` with the conditioning sets exactly as
//! written; vertices outside `abcd` never enter a conditioning set.

use std::fmt;
use std::str::FromStr;

use super::{Relation, Statement};
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Semigraphoid,
    Intersection,
    Composition,
    WeakTransitivity,
    Rule17,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Semigraphoid => "semigraphoid",
            Rule::Intersection => "intersection",
            Rule::Composition => "composition",
            Rule::WeakTransitivity => "weak-transitivity",
            Rule::Rule17 => "rule17",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failing axiom instance: all antecedents hold, the listed conclusions
/// do not. For weak transitivity both disjuncts are missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub antecedents: Vec<Statement>,
    pub missing: Vec<Statement>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.antecedents.iter().map(|s| s.to_string()).collect();
        parts.extend(self.missing.iter().map(|s| format!("¬{s}")));
        write!(f, "{}: {}", self.rule, parts.join(" ∧ "))
    }
}

/// Visit every `(i, j, k, K)` with distinct `i, j, k` and `K ⊆ N \ ijk`.
fn for_each_triple(n: usize, mut f: impl FnMut(usize, usize, usize, VertexSet)) {
    let full = VertexSet::full(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let rest = full.without(i).without(j).without(k);
                for kk in rest.subsets() {
                    f(i, j, k, kk);
                }
            }
        }
    }
}

fn st(i: usize, j: usize, k: VertexSet) -> Statement {
    Statement::new_unchecked(i, j, k)
}

/// All violated instances of the four gaussoid axioms. Empty iff `r` is a
/// gaussoid. Instances symmetric under a role swap are reported once.
pub fn check_axioms(r: &Relation) -> Vec<Violation> {
    let mut out = Vec::new();
    for_each_triple(r.n(), |i, j, k, kk| {
        let jk = kk.with(j);
        let kkk = kk.with(k);

        // semigraphoid
        if r.has(i, j, kk) && r.has(i, k, jk) {
            let missing: Vec<_> = [st(i, k, kk), st(i, j, kkk)]
                .into_iter()
                .filter(|s| !r.contains(s))
                .collect();
            if !missing.is_empty() {
                out.push(Violation {
                    rule: Rule::Semigraphoid,
                    antecedents: vec![st(i, j, kk), st(i, k, jk)],
                    missing,
                });
            }
        }
        // intersection and composition are symmetric in j, k
        if j < k {
            if r.has(i, j, kkk) && r.has(i, k, jk) {
                let missing: Vec<_> = [st(i, j, kk), st(i, k, kk)]
                    .into_iter()
                    .filter(|s| !r.contains(s))
                    .collect();
                if !missing.is_empty() {
                    out.push(Violation {
                        rule: Rule::Intersection,
                        antecedents: vec![st(i, j, kkk), st(i, k, jk)],
                        missing,
                    });
                }
            }
            if r.has(i, j, kk) && r.has(i, k, kk) {
                let missing: Vec<_> = [st(i, j, kkk), st(i, k, jk)]
                    .into_iter()
                    .filter(|s| !r.contains(s))
                    .collect();
                if !missing.is_empty() {
                    out.push(Violation {
                        rule: Rule::Composition,
                        antecedents: vec![st(i, j, kk), st(i, k, kk)],
                        missing,
                    });
                }
            }
        }
        // weak transitivity is symmetric in i, j
        if i < j && r.has(i, j, kk) && r.has(i, j, kkk) && !r.has(i, k, kk) && !r.has(j, k, kk) {
            out.push(Violation {
                rule: Rule::WeakTransitivity,
                antecedents: vec![st(i, j, kk), st(i, j, kkk)],
                missing: vec![st(i, k, kk), st(j, k, kk)],
            });
        }
    });
    out
}

/// Selection of Horn rules for [`closure`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleSet {
    pub semigraphoid: bool,
    pub intersection: bool,
    pub composition: bool,
    pub rule17: bool,
}

impl RuleSet {
    pub fn none() -> Self {
        RuleSet::default()
    }

    pub fn all() -> Self {
        RuleSet {
            semigraphoid: true,
            intersection: true,
            composition: true,
            rule17: true,
        }
    }

    pub fn semigraphoid() -> Self {
        RuleSet {
            semigraphoid: true,
            ..RuleSet::default()
        }
    }

    /// Semigraphoid, intersection and composition.
    pub fn semigaussoid() -> Self {
        RuleSet {
            rule17: false,
            ..RuleSet::all()
        }
    }

    pub fn rules(&self) -> Vec<Rule> {
        let mut v = Vec::new();
        if self.semigraphoid {
            v.push(Rule::Semigraphoid);
        }
        if self.intersection {
            v.push(Rule::Intersection);
        }
        if self.composition {
            v.push(Rule::Composition);
        }
        if self.rule17 {
            v.push(Rule::Rule17);
        }
        v
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    /// Comma-separated rule names, or `all`.
    fn from_str(s: &str) -> Result<Self> {
        let mut set = RuleSet::none();
        for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match name {
                "all" => set = RuleSet::all(),
                "semigraphoid" => set.semigraphoid = true,
                "intersection" => set.intersection = true,
                "composition" => set.composition = true,
                "rule17" => set.rule17 = true,
                "weak-transitivity" => {
                    return Err(Error::arg(
                        "weak transitivity has a disjunctive conclusion and cannot drive a closure",
                    ))
                }
                other => return Err(Error::arg(format!("unknown rule `{other}`"))),
            }
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOutcome {
    pub relation: Relation,
    /// Number of statements each rule added, in rule order.
    pub fired: Vec<(Rule, usize)>,
}

/// Least superset of `r` closed under the selected Horn rules.
pub fn closure(r: &Relation, rules: RuleSet) -> ClosureOutcome {
    let n = r.n();
    let mut cur = r.clone();
    let mut fired: Vec<(Rule, usize)> = rules.rules().into_iter().map(|rule| (rule, 0)).collect();
    let bump = |fired: &mut Vec<(Rule, usize)>, rule: Rule| {
        if let Some(e) = fired.iter_mut().find(|(r, _)| *r == rule) {
            e.1 += 1;
        }
    };
    loop {
        let mut changed = false;
        let mut add = |cur: &mut Relation, fired: &mut Vec<(Rule, usize)>, rule: Rule, s: Statement| {
            if cur.set_index(s.index(n)) {
                bump(fired, rule);
                changed = true;
            }
        };
        for_each_triple(n, |i, j, k, kk| {
            let jk = kk.with(j);
            let kkk = kk.with(k);
            if rules.semigraphoid && cur.has(i, j, kk) && cur.has(i, k, jk) {
                add(&mut cur, &mut fired, Rule::Semigraphoid, st(i, k, kk));
                add(&mut cur, &mut fired, Rule::Semigraphoid, st(i, j, kkk));
            }
            if rules.intersection && cur.has(i, j, kkk) && cur.has(i, k, jk) {
                add(&mut cur, &mut fired, Rule::Intersection, st(i, j, kk));
                add(&mut cur, &mut fired, Rule::Intersection, st(i, k, kk));
            }
            if rules.composition && cur.has(i, j, kk) && cur.has(i, k, kk) {
                add(&mut cur, &mut fired, Rule::Composition, st(i, j, kkk));
                add(&mut cur, &mut fired, Rule::Composition, st(i, k, jk));
            }
        });
        if rules.rule17 {
            for_each_quadruple(n, |a, b, c, d| {
                let e = VertexSet::EMPTY;
                let bd = VertexSet::from_iter([b, d]);
                let ac = VertexSet::from_iter([a, c]);
                if cur.has(a, b, e) && cur.has(c, d, e) && cur.has(a, c, bd) && cur.has(b, d, ac) {
                    add(&mut cur, &mut fired, Rule::Rule17, st(a, c, e));
                }
            });
        }
        if !changed {
            break;
        }
    }
    ClosureOutcome { relation: cur, fired }
}

fn for_each_quadruple(n: usize, mut f: impl FnMut(usize, usize, usize, usize)) {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        f(a, b, c, d);
                    }
                }
            }
        }
    }
}

/// `(ij|L)` implies `(ij|kL)` for every `k ∉ ijL`.
pub fn is_upward_stable(r: &Relation) -> bool {
    r.iter().all(|s| {
        VertexSet::full(r.n())
            .without(s.i())
            .without(s.j())
            .difference(s.cond())
            .iter()
            .all(|k| r.has(s.i(), s.j(), s.cond().with(k)))
    })
}

/// The graph `G` with `<G> = r`, if `r` is an upward-stable gaussoid of that
/// form. Edges are the pairs whose maximal statement `(ij|N \ ij)` is absent.
pub fn recognize_markov(r: &Relation) -> Option<Graph> {
    if !is_upward_stable(r) || !check_axioms(r).is_empty() {
        return None;
    }
    let n = r.n();
    let mut g = Graph::empty(n).ok()?;
    for (i, j) in pairs(n) {
        let rest = VertexSet::full(n).without(i).without(j);
        if !r.has(i, j, rest) {
            g.add_edge(i, j).ok()?;
        }
    }
    (Relation::of_graph(&g) == *r).then_some(g)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn relation(n: usize) -> impl Strategy<Value = Relation> {
        let total = super::super::statement_count(n);
        proptest::collection::vec(any::<bool>(), total).prop_map(move |bits| {
            let mut r = Relation::empty(n).unwrap();
            for (idx, b) in bits.into_iter().enumerate() {
                if b {
                    r.set_index(idx);
                }
            }
            r
        })
    }

    fn sparse_relation(n: usize) -> impl Strategy<Value = Relation> {
        let total = super::super::statement_count(n);
        proptest::collection::vec(0..total, 0..8).prop_map(move |idx| {
            let mut r = Relation::empty(n).unwrap();
            for i in idx {
                r.set_index(i);
            }
            r
        })
    }

    fn rules() -> impl Strategy<Value = RuleSet> {
        (any::<bool>(), any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(a, b, c, d)| RuleSet {
            semigraphoid: a,
            intersection: b,
            composition: c,
            rule17: d,
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn closure_is_extensive_idempotent_monotone(r in sparse_relation(4), extra in sparse_relation(4), rules in rules()) {
            let c = closure(&r, rules).relation;
            prop_assert!(r.is_subset(&c));
            prop_assert_eq!(closure(&c, rules).relation, c.clone());
            let bigger = r.union(&extra).unwrap();
            prop_assert!(c.is_subset(&closure(&bigger, rules).relation));
        }

        #[test]
        fn closed_relations_pass_the_horn_axioms(r in relation(4)) {
            let c = closure(&r, RuleSet::semigaussoid()).relation;
            prop_assert!(check_axioms(&c).iter().all(|v| v.rule == Rule::WeakTransitivity));
        }
    }
}
