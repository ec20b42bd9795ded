//! Acceptance suite, run without the libtest harness so that its output is
//! never captured. Each criterion prints one `PASS` or `FAIL` line, and the
//! process exits non-zero if any criterion fails.

use gaussdm::ci::{check_axioms, closure, parse_statement, statement_count, Rule, RuleSet};
use gaussdm::classify::{classify_small_intersection, enumerate_inequivalent, sample_from_family, CaseTag};
use gaussdm::geometry::{
    decompose, dimension_bound, find_model_point, is_transverse_at_with_tol, local_tangent_dimension,
    stacked_jacobian, submaximal_minor, RANK_TOL,
};
use gaussdm::graph::{num_pairs, pairs};
use gaussdm::ideal::{cofactor_sign, path_expansion, path_expansion_polynomial, sci_monomial_generators, symbolic_apm};
use gaussdm::matrix::{max_norm, membership_residual, relation_of_matrix, DEFAULT_CI_TOL};
use gaussdm::{Graph, PointOptions, Relation, Statement, SymMatrix, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph(n: usize, edges: &str) -> Graph {
    Graph::parse_edges(n, edges).unwrap()
}

fn st(text: &str) -> Statement {
    parse_statement(text).unwrap()
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u128 << num_pairs(n)).map(move |c| Graph::from_edge_code(n, c).unwrap())
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for (i, j) in pairs(n) {
        if rng.gen_bool(p) {
            g.add_edge(i, j).unwrap();
        }
    }
    g
}

/// Random forest: each vertex joins an earlier one with probability 0.85,
/// then the labels are shuffled.
fn random_forest(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for v in 1..n {
        if rng.gen_bool(0.85) {
            let u = rng.gen_range(0..v);
            g.add_edge(u, v).unwrap();
        }
    }
    let perm = {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        p
    };
    g.permuted(&perm)
}

fn random_relation(n: usize, rng: &mut ChaCha8Rng) -> Relation {
    let full = Relation::full(n).unwrap();
    Relation::from_statements(n, full.iter().filter(|_| rng.gen_bool(0.5))).unwrap()
}

fn binomial2(n: usize) -> usize {
    n * (n - 1) / 2
}

// 1. Enumeration counts.
fn enumeration() -> Outcome {
    let mut counts = Vec::new();
    for (n, expected) in [(3, 4), (4, 55), (5, 2644)] {
        let c = enumerate_inequivalent(n, true).map_err(|e| e.to_string())?.count();
        check(c == expected, || format!("n={n}: {c} classes, expected {expected}"))?;
        counts.push(c.to_string());
    }
    Ok(format!("counts {}", counts.join(" + ")))
}

// 2. Principally regular counterexample.
fn counterexample() -> Outcome {
    let x = (981.0f64 / 1210.0).sqrt();
    let rows = vec![
        vec![10.0, 1.0, 1.0, x, 11.0 * x, 0.0],
        vec![1.0, 10.0, 1.0, 0.0, 0.0, 0.0],
        vec![1.0, 1.0, 10.0, -x, 0.0, -11.0 * x],
        vec![x, 0.0, -x, 10.0, 1.0, 1.0],
        vec![11.0 * x, 0.0, 0.0, 1.0, 10.0, 1.0],
        vec![0.0, 0.0, -11.0 * x, 1.0, 1.0, 10.0],
    ];
    let sigma = SymMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
    let full = VertexSet::full(6);
    let mut worst = 0.0f64;
    for (i, j) in [(0, 3), (0, 4), (2, 3), (2, 5)] {
        let k = full.without(i).without(j);
        let v = sigma.almost_principal_minor(i, j, k).map_err(|e| e.to_string())?;
        worst = worst.max(v.abs());
    }
    check(worst <= 1e-7, || format!("designated minor {worst:e} exceeds 1e-7"))?;
    let minors: Vec<f64> = full
        .subsets()
        .filter(|s| !s.is_empty() && *s != full)
        .map(|s| sigma.principal(s).determinant())
        .collect();
    let smallest = minors.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    check(minors.len() == 62 && smallest > 1e-6, || {
        format!("{} proper principal minors, smallest |minor| {smallest:e}", minors.len())
    })?;
    let det = sigma.determinant();
    let target = -4374.0 / 55.0;
    check((det - target).abs() <= 1e-7, || format!("det {det} vs {target}"))?;
    check(!sigma.is_pd(), || "is_pd returned true".into())?;
    Ok(format!(
        "max designated minor {worst:.1e}, 62 minors with min |minor| {smallest:.3}, det {det:.9}"
    ))
}

// 3. Path expansion of almost-principal minors.
fn path_expansion_identity() -> Outcome {
    let mut exact = 0;
    for n in 2..=5 {
        for h in all_graphs(n) {
            for (k, l) in pairs(n) {
                let lhs = symbolic_apm(&h, k, l).map_err(|e| e.to_string())?.scale(&cofactor_sign(k, l));
                let rhs = path_expansion_polynomial(&h, k, l).map_err(|e| e.to_string())?;
                check(lhs == rhs, || format!("exact mismatch for H={h} k={} l={}", k + 1, l + 1))?;
                exact += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=7);
        let h = random_graph(n, 0.5, &mut rng);
        let sigma = SymMatrix::from_fn(n, |i, j| {
            if i == j {
                rng.gen_range(0.5..2.0)
            } else if h.has_edge(i, j) {
                rng.gen_range(-1.0..1.0)
            } else {
                0.0
            }
        });
        let k = rng.gen_range(0..n);
        let l = (k + rng.gen_range(1..n)) % n;
        let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = sign * submaximal_minor(&sigma, k, l);
        let terms: Vec<f64> = path_expansion(&h, k, l, None)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|t| t.evaluate(&sigma))
            .collect();
        let rhs: f64 = terms.iter().sum();
        let abs_sum: f64 = terms.iter().map(|t| t.abs()).sum();
        let scale = lhs.abs().max(rhs.abs()).max(abs_sum);
        let rel = if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale };
        worst = worst.max(rel);
    }
    check(worst <= 1e-10, || format!("numeric relative error {worst:e}"))?;
    Ok(format!("{exact} exact (H, k, l) identities; 1000 numeric, max rel err {worst:.1e}"))
}

// 4. Monomial CI ideal.
fn monomial_ideal() -> Outcome {
    let ideal = sci_monomial_generators(&graph(4, "1-2 1-3 1-4"), &graph(4, "1-2 2-3 3-4")).map_err(|e| e.to_string())?;
    let gens = ideal.generator_strings();
    check(gens == ["s_13", "s_14", "s_23", "s_24", "s_34"], || format!("generators {gens:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut patterns, mut tested, mut worst) = (0, 0, 0.0f64);
    for _ in 0..200 {
        let n = rng.gen_range(3..=6);
        let g = random_graph(n, 0.5, &mut rng);
        let h = random_forest(n, &mut rng);
        let ideal = sci_monomial_generators(&g, &h).map_err(|e| e.to_string())?;
        for prime in ideal.minimal_primes() {
            patterns += 1;
            let zero = prime.edges(n);
            for _ in 0..5 {
                let sigma = SymMatrix::from_fn(n, |i, j| {
                    if i == j {
                        1.0
                    } else if h.has_edge(i, j) && !zero.contains(&(i, j)) {
                        rng.gen_range(-0.45..0.45)
                    } else {
                        0.0
                    }
                });
                if !sigma.is_pd() {
                    continue;
                }
                let r = max_norm(&membership_residual(&sigma, &g, &h).map_err(|e| e.to_string())?);
                worst = worst.max(r);
                tested += 1;
            }
        }
    }
    check(worst <= 1e-9, || format!("membership residual {worst:e}"))?;
    check(tested > 0, || "no PD instantiation".into())?;
    Ok(format!(
        "star/path generators {}; 200 forest pairs, {patterns} prime patterns, {tested} PD points, max residual {worst:.1e}",
        gens.join(" ")
    ))
}

/// Converged model points on random pairs, shared by criteria 5 and 7.
struct PointSample {
    g: Graph,
    h: Graph,
    matrix: SymMatrix,
}

fn off_block_max(m: &SymMatrix, blocks: &[VertexSet]) -> f64 {
    let block_of = |v: usize| blocks.iter().position(|b| b.contains(v)).unwrap();
    pairs(m.n())
        .filter(|&(i, j)| block_of(i) != block_of(j))
        .map(|(i, j)| m.get(i, j).abs())
        .fold(0.0, f64::max)
}

// 5. Block decomposition of model points.
fn decomposition(samples: &mut Vec<PointSample>) -> Outcome {
    let opts = PointOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut converged, mut skipped, mut worst) = (0, 0, 0.0f64);
    while converged < 100 {
        let n = rng.gen_range(3..=6);
        let g = random_graph(n, 0.6, &mut rng);
        let h = random_graph(n, 0.6, &mut rng);
        let blocks = decompose(&g, &h).map_err(|e| e.to_string())?.blocks;
        if blocks.len() < 2 {
            continue;
        }
        match find_model_point(&g, &h, rng.gen(), &opts) {
            Ok(p) => {
                worst = worst.max(off_block_max(&p.matrix, &blocks));
                converged += 1;
                samples.push(PointSample { g, h, matrix: p.matrix });
            }
            Err(_) => skipped += 1,
        }
        check(skipped <= 100, || format!("{skipped} pairs without convergence"))?;
    }
    check(worst <= 1e-6, || format!("off-block entry {worst:e}"))?;

    let mut worst_disjoint = 0.0f64;
    let mut disjoint = 0;
    while disjoint < 50 {
        let n = rng.gen_range(3..=6);
        let g = random_graph(n, 0.5, &mut rng);
        let mut h = random_graph(n, 0.5, &mut rng);
        for (i, j) in g.edges() {
            h.remove_edge(i, j);
        }
        let p = find_model_point(&g, &h, rng.gen(), &opts).map_err(|e| format!("disjoint pair G=[{g}] H=[{h}]: {e}"))?;
        let (_, r) = p.matrix.to_correlation().map_err(|e| e.to_string())?;
        worst_disjoint = worst_disjoint.max(r.max_abs_diff(&SymMatrix::identity(n)));
        samples.push(PointSample { g, h, matrix: p.matrix });
        disjoint += 1;
    }
    check(worst_disjoint <= 1e-6, || format!("|R - 1| = {worst_disjoint:e} on a disjoint pair"))?;
    Ok(format!(
        "100 disconnected pairs ({skipped} skipped without convergence), max off-block {worst:.1e}; 50 disjoint pairs, max |R - 1| {worst_disjoint:.1e}"
    ))
}

// 6. Transversality at the identity.
fn transversality() -> Outcome {
    let mut checked = 0;
    for tol in [1e-6, RANK_TOL, 1e-10] {
        for n in 3..=4 {
            let id = SymMatrix::identity(n);
            let graphs: Vec<Graph> = all_graphs(n).collect();
            for g in &graphs {
                for h in &graphs {
                    let t = is_transverse_at_with_tol(&id, g, h, tol).map_err(|e| e.to_string())?;
                    let complete = g.edge_union(h).unwrap().is_complete();
                    check(t == complete, || format!("G=[{g}] H=[{h}] tol={tol:e}: transverse={t}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (pair, tolerance) checks, zero exceptions"))
}

// 7. Rank of the stacked Jacobian.
fn rank_bound(samples: &[PointSample]) -> Outcome {
    let mut checked = 0;
    for tol in [1e-6, RANK_TOL, 1e-10] {
        for n in 2..=4 {
            let id = SymMatrix::identity(n);
            let graphs: Vec<Graph> = all_graphs(n).collect();
            for g in &graphs {
                for h in &graphs {
                    let common = g.edge_intersection(h).unwrap().num_edges();
                    let rank = stacked_jacobian(&id, g, h, true).map_err(|e| e.to_string())?.rank(tol);
                    check(rank == binomial2(n) - common, || {
                        format!("G=[{g}] H=[{h}] tol={tol:e}: rank {rank}, expected {}", binomial2(n) - common)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    for s in samples {
        let n = s.g.n();
        let common = s.g.edge_intersection(&s.h).unwrap().num_edges();
        let rank = stacked_jacobian(&s.matrix, &s.g, &s.h, true).map_err(|e| e.to_string())?.rank(RANK_TOL);
        check(rank >= binomial2(n) - common, || {
            format!("G={} H={}: rank {rank} below {}", s.g, s.h, binomial2(n) - common)
        })?;
    }
    Ok(format!("{checked} exact ranks at the identity; {} model points above the bound", samples.len()))
}

fn minor_exchange(g: &Graph, h: &Graph) -> Result<(), String> {
    let gh = Relation::double_markov(g, h).unwrap();
    check(gh.dual() == Relation::double_markov(h, g).unwrap(), || format!("dual of <{g},{h}>"))?;
    for k in 0..g.n() {
        let marg = Relation::double_markov(&g.conditional_minor(k).unwrap(), &h.marginal_minor(k).unwrap()).unwrap();
        check(gh.marginal(k).unwrap() == marg, || format!("marginal of <{g},{h}> at {}", k + 1))?;
        let cond = Relation::double_markov(&g.marginal_minor(k).unwrap(), &h.conditional_minor(k).unwrap()).unwrap();
        check(gh.conditional(k).unwrap() == cond, || format!("conditional of <{g},{h}> at {}", k + 1))?;
    }
    Ok(())
}

fn relation_laws(r: &Relation) -> Result<(), String> {
    check(r.dual().dual() == *r, || "dual is not an involution".into())?;
    for k in 0..r.n() {
        let lhs = r.dual().marginal(k).unwrap();
        let rhs = r.conditional(k).unwrap().dual();
        check(lhs == rhs, || format!("Marg(R^dual) differs from Cond(R)^dual at {}", k + 1))?;
    }
    Ok(())
}

/// Covariance of a random tree-structured concentration matrix.
fn random_structured_pd(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let tree = random_forest(n, rng);
    let k = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else if tree.has_edge(i, j) {
            rng.gen_range(-0.3..0.3)
        } else {
            0.0
        }
    });
    k.inverse().unwrap()
}

// 8. Laws of the CI calculus.
fn ci_laws() -> Outcome {
    let mut relations = 0;
    for n in 2..=3 {
        for bits in 0..1u64 << statement_count(n) {
            let full = Relation::full(n).unwrap();
            let r = Relation::from_statements(n, full.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, s)| s)).unwrap();
            relation_laws(&r)?;
            relations += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [4, 5] {
        for _ in 0..2000 {
            relation_laws(&random_relation(n, &mut rng))?;
            relations += 1;
        }
    }
    let mut pairs_checked = 0;
    for n in 2..=4 {
        let graphs: Vec<Graph> = all_graphs(n).collect();
        for g in &graphs {
            for h in &graphs {
                minor_exchange(g, h)?;
                relation_laws(&Relation::double_markov(g, h).unwrap())?;
                pairs_checked += 1;
            }
        }
    }
    for _ in 0..2000 {
        let g = random_graph(5, 0.5, &mut rng);
        let h = random_graph(5, 0.5, &mut rng);
        minor_exchange(&g, &h)?;
        pairs_checked += 1;
    }
    let mut nonempty = 0;
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let s1 = random_structured_pd(a, &mut rng);
        let s2 = random_structured_pd(b, &mut rng);
        let lhs = relation_of_matrix(&s1.direct_sum(&s2), DEFAULT_CI_TOL).map_err(|e| e.to_string())?;
        let r1 = relation_of_matrix(&s1, DEFAULT_CI_TOL).map_err(|e| e.to_string())?;
        let r2 = relation_of_matrix(&s2, DEFAULT_CI_TOL).map_err(|e| e.to_string())?;
        check(lhs == r1.direct_sum(&r2).unwrap(), || "direct sum of PD relations".into())?;
        nonempty += usize::from(!r1.is_empty() || !r2.is_empty());
    }
    Ok(format!(
        "{relations} relations, {pairs_checked} graph pairs, 100 PD direct sums ({nonempty} with nonempty summands)"
    ))
}

// 9. Closure regressions.
fn closure_regressions() -> Outcome {
    let vnr = Relation::double_markov(&graph(4, "1-2 2-3"), &graph(4, "1-3")).unwrap();
    let out = closure(&vnr, RuleSet::semigraphoid());
    check(out.relation == Relation::full(4).unwrap(), || format!("semigraphoid closure has {} statements", out.relation.len()))?;

    let inc = Relation::double_markov(&graph(4, "1-2 1-4 2-3 3-4"), &graph(4, "1-3 1-4 2-3 2-4")).unwrap();
    let out = closure(&inc, RuleSet::all());
    check(out.relation.contains(&st("(1 3 |)")), || "rule 17 closure misses (1 3 |)".into())?;
    // the completion drops exactly the statements (1 4 | L) and (2 3 | L)
    let completion = Relation::from_statements(
        4,
        Relation::full(4).unwrap().iter().filter(|s| !matches!((s.i(), s.j()), (0, 3) | (1, 2))),
    )
    .unwrap();
    check(out.relation == completion, || format!("closure {} differs from the completion", out.relation.to_list()))?;

    let g = graph(4, "1-3 2-3");
    let violations = check_axioms(&Relation::double_markov(&g, &g).unwrap());
    let found = violations.iter().any(|v| {
        v.rule == Rule::WeakTransitivity
            && v.antecedents == [st("(1 2 |)"), st("(1 2 | 3)")]
            && v.missing == [st("(1 3 |)"), st("(2 3 |)")]
    });
    check(found, || "weak transitivity violation (1 2 |) ∧ (1 2 | 3) not reported".into())?;
    Ok(format!(
        "semigraphoid closure = A_4; rule 17 adds (1 3 |) and reaches the {}-statement completion; weak transitivity violation reported",
        out.relation.len()
    ))
}

/// Pairs whose common edges are the path 1-2-3-4, the other three support
/// pairs labelled G, H or neither.
fn path_pairs() -> Vec<(Graph, Graph)> {
    let mut out = Vec::new();
    for code in 0..27 {
        let mut g = graph(4, "1-2 2-3 3-4");
        let mut h = graph(4, "1-2 2-3 3-4");
        let mut c = code;
        for (a, b) in [(0, 2), (0, 3), (1, 3)] {
            match c % 3 {
                0 => g.add_edge(a, b).unwrap(),
                1 => h.add_edge(a, b).unwrap(),
                _ => {}
            }
            c /= 3;
        }
        out.push((g, h));
    }
    out
}

// 10. Classification families.
fn classification() -> Outcome {
    let mut cases: Vec<(Graph, Graph)> = vec![
        (graph(4, "1-2 3-4"), graph(4, "2-3 1-4")),
        (graph(4, "1-2 1-3"), graph(4, "1-2 2-4")),
        (graph(4, "1-2 2-3 1-3"), graph(4, "1-2 2-3")),
        (graph(4, "1-2 2-3"), graph(4, "1-2 2-3 1-3")),
        (graph(4, "1-2 2-3"), graph(4, "1-2 2-3")),
        (graph(4, "1-2 2-3 1-3"), graph(4, "1-2 2-3 1-3")),
    ];
    cases.extend(path_pairs());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut seen: Vec<CaseTag> = Vec::new();
    let (mut draws, mut worst) = (0, 0.0f64);
    for (g, h) in &cases {
        let d = classify_small_intersection(g, h).map_err(|e| e.to_string())?;
        let (_, bound) = dimension_bound(g, h).map_err(|e| e.to_string())?;
        let maximal = match d.case {
            CaseTag::TwoEdgePath(c) => c == 1 || c == 2,
            CaseTag::ThreeEdgePath(c) => matches!(c, 1 | 7 | 8 | 10),
            _ => true,
        };
        let expected = if maximal { bound } else { bound - 1 };
        check(d.dimension() == expected, || {
            format!("{}: dimension {} vs bound {bound}", d.case, d.dimension())
        })?;
        for f in 0..d.families.len() {
            for _ in 0..100 {
                let m = sample_from_family(&d, f, None, &mut rng).map_err(|e| e.to_string())?;
                check(m.is_pd(), || format!("{} family {f}: not PD", d.case))?;
                let r = max_norm(&membership_residual(&m, g, h).map_err(|e| e.to_string())?);
                worst = worst.max(r);
                draws += 1;
            }
        }
        // the numerical tangent dimension at a generic point of the largest family
        let big = (0..d.families.len()).max_by_key(|&f| d.families[f].dimension()).unwrap();
        let m = sample_from_family(&d, big, None, &mut rng).map_err(|e| e.to_string())?;
        let local = local_tangent_dimension(&m, g, h, true).map_err(|e| e.to_string())?;
        check(local == d.dimension(), || {
            format!("{}: local tangent dimension {local} vs {}", d.case, d.dimension())
        })?;
        if !seen.contains(&d.case) {
            seen.push(d.case);
        }
    }
    check(worst <= 1e-9, || format!("family residual {worst:e}"))?;
    let three_edge = seen.iter().filter(|c| matches!(c, CaseTag::ThreeEdgePath(_))).count();
    check(three_edge == 11 && seen.len() == 17, || format!("cases reached: {seen:?}"))?;
    Ok(format!("{} cases, {draws} draws, max residual {worst:.1e}", seen.len()))
}

fn main() -> std::process::ExitCode {
    let mut samples = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 enumeration", enumeration()),
        ("2 principally regular counterexample", counterexample()),
        ("3 path expansion identity", path_expansion_identity()),
        ("4 monomial CI ideal", monomial_ideal()),
        ("5 block decomposition", decomposition(&mut samples)),
        ("6 transversality at the identity", transversality()),
        ("7 Jacobian rank bound", rank_bound(&samples)),
        ("8 CI calculus laws", ci_laws()),
        ("9 closure regressions", closure_regressions()),
        ("10 classification families", classification()),
    ];
    let mut failed = Vec::new();
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(*name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
