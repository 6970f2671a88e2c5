//! Acceptance suite. Every criterion prints one PASS/FAIL line; run with
//! `cargo test -p domdraw --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use domdraw::decomposition::enumerate_all_modules;
use domdraw::graph::count_linear_extensions;
use domdraw::{
    brute_force_min_fips, classify_fips, compaction, coordinate_assignment, dominance_dimension,
    expand, expand_by_coordinates, fip_count, fips, fpt_min_fips, gen_antichain, gen_chain,
    gen_crown, is_compact, md_tree, outer_fips_lower_bound_check, validate, Dag, Drawing,
    FipReport, Index, MdNode, QuotientGraph, Reachability, SearchLimits, quotient,
};

use common::*;

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] AC{id} {name}: {detail}");
    assert!(pass, "AC{id} {name} failed: {detail}");
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

/// Whole-graph brute force must stay affordable: at most this many tuples.
const ORACLE_TUPLES: u128 = 2_000_000;

#[test]
fn ac1_fpt_matches_whole_graph_brute_force() {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut checked = [0usize; 2];
    let mut skipped = 0usize;
    let mut mismatches = Vec::new();
    let mut by_n = [0usize; 9];
    while checked.iter().any(|&c| c < 250) {
        let g = random_dag(&mut rng, 2, 8, 0.1, 0.7);
        let e = count_linear_extensions(&g).unwrap();
        for (slot, d) in [2usize, 3].into_iter().enumerate() {
            if checked[slot] >= 250 {
                continue;
            }
            if e.pow(d as u32) > ORACLE_TUPLES {
                skipped += 1;
                continue;
            }
            let fpt = fpt_min_fips(&g, d, &limits()).unwrap();
            let brute = brute_force_min_fips(&g, d, &limits()).unwrap();
            let r = Reachability::new(&g);
            if fpt.cost != brute.cost
                || fip_count(&r, &fpt.drawing) as u64 != fpt.cost
                || !validate(&g, &fpt.drawing).unwrap()
            {
                mismatches.push((g.edges().to_vec(), d, fpt.cost, brute.cost));
            }
            checked[slot] += 1;
            by_n[g.n()] += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "oracle equivalence",
        mismatches.is_empty() && elapsed < Duration::from_secs(300),
        &format!(
            "{} graphs at d=2, {} at d=3 (per-n counts {:?}, {skipped} above the oracle budget skipped), {} mismatches, {:.1?}",
            checked[0],
            checked[1],
            &by_n[2..],
            mismatches.len(),
            elapsed
        ),
    );
}

#[test]
fn ac2_quoted_cost_arithmetic() {
    // v_1..v_6 are 0..5.
    let costs = [6u64, 1, 2, 9, 1, 1];
    let gamma1 = vec![(0, 1), (0, 2), (1, 4), (2, 3), (3, 4), (5, 4)];
    let all = FipReport::from_pairs(gamma1, &costs).unwrap().cost;
    let single = FipReport::from_pairs(vec![(1, 4)], &costs).unwrap().cost;
    report(
        2,
        "cost arithmetic",
        all == 47 && single == 1,
        &format!("six fips cost {all} (want 47), fip (v2,v5) costs {single} (want 1)"),
    );
}

#[test]
fn ac3_dominance_dimension() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 1..=12 {
        let dim = dominance_dimension(&gen_chain(n).unwrap(), 3, &limits()).unwrap();
        if dim != Some(1) {
            problems.push(format!("chain({n}) -> {dim:?}"));
        }
    }
    for n in 2..=12 {
        let dim = dominance_dimension(&gen_antichain(n).unwrap(), 3, &limits()).unwrap();
        if dim != Some(2) {
            problems.push(format!("antichain({n}) -> {dim:?}"));
        }
    }
    let crown = gen_crown(3).unwrap();
    let dim = dominance_dimension(&crown, 3, &limits()).unwrap();
    let two = brute_force_min_fips(&crown, 2, &limits()).unwrap().cost;
    let three = brute_force_min_fips(&crown, 3, &limits()).unwrap().cost;
    if dim != Some(3) || two < 1 || three != 0 {
        problems.push(format!(
            "crown(3): dimension {dim:?}, 2D min {two}, 3D min {three}"
        ));
    }
    let elapsed = start.elapsed();
    report(
        3,
        "dominance dimension",
        problems.is_empty() && elapsed < Duration::from_secs(30),
        &format!(
            "chains -> 1, antichains -> 2, crown(3) -> {dim:?} (2D min {two}, 3D min {three}); problems {problems:?}; {elapsed:.1?}"
        ),
    );
}

fn inner_fips(r: &Reachability, d: &Drawing, module: &[usize]) -> Vec<(usize, usize)> {
    let rest: Vec<usize> = (0..r.n()).filter(|v| !module.contains(v)).collect();
    let mut partition = vec![module.to_vec()];
    if !rest.is_empty() {
        partition.push(rest);
    }
    let rep: FipReport = fips(r, d, None).unwrap();
    classify_fips(&rep, &partition).unwrap().inner()
}

#[test]
fn ac4_compaction() {
    let mut rng = rng(4);
    let mut instances = 0;
    let mut with_second = 0;
    let mut violations: Vec<String> = Vec::new();
    while instances < 600 {
        let g = random_dag(&mut rng, 4, 10, 0.05, 0.5);
        let r = Reachability::new(&g);
        let modules = nontrivial_modules(&r);
        let Some(module) = pick(&modules, &mut rng).cloned() else {
            continue;
        };
        let d = rng_d(&mut rng);
        let mut drawing = random_drawing(&g, d, &mut rng);
        let others: Vec<Vec<usize>> = modules
            .iter()
            .filter(|m| disjoint(m, &module))
            .cloned()
            .collect();
        let second = pick(&others, &mut rng).cloned();
        if let Some(m2) = &second {
            drawing = compaction(&r, &drawing, m2).unwrap();
            with_second += 1;
        }
        let out = compaction(&r, &drawing, &module).unwrap();
        instances += 1;

        let mut fail = |what: &str| violations.push(format!("{what}: edges {:?}", g.edges()));
        if !validate(&g, &out).unwrap() {
            fail("(a) not topological");
        }
        if !is_compact(&out, &module) {
            fail("(b) module not compact");
        }
        if fip_count(&r, &out) > fip_count(&r, &drawing) {
            fail("(c) fips increased");
        }
        if let Some(m2) = &second {
            if !is_compact(&out, m2) {
                fail("(d) disjoint module lost compactness");
            }
        }
        if inner_fips(&r, &out, &module) != inner_fips(&r, &drawing, &module) {
            fail("(e) inner fips changed");
        }
    }
    report(
        4,
        "compaction",
        violations.is_empty(),
        &format!(
            "{instances} instances ({with_second} with a pre-compact disjoint module), {} violations {:?}",
            violations.len(),
            violations.first()
        ),
    );
}

fn rng_d(rng: &mut rand_chacha::ChaCha8Rng) -> usize {
    use rand::Rng;
    rng.gen_range(1..=3)
}

/// Congruence partition from the root's children, each child randomly kept
/// whole or split into its own children.
fn random_congruence_partition(root: &MdNode, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Vec<usize>> {
    use rand::Rng;
    let mut out = Vec::new();
    for child in &root.children {
        if !child.is_leaf() && rng.gen_bool(0.5) {
            out.extend(child.partition());
        } else {
            out.push(child.members.clone());
        }
    }
    out
}

#[test]
fn ac5_outer_fip_lower_bound() {
    let mut rng = rng(5);
    let mut instances = 0;
    let mut tight = 0;
    let mut violations = Vec::new();
    while instances < 250 {
        let g = random_dag(&mut rng, 3, 9, 0.1, 0.6);
        let r = Reachability::new(&g);
        let tree = md_tree(&r);
        let partition = random_congruence_partition(&tree.root, &mut rng);
        let d = rng_d(&mut rng);
        let q: QuotientGraph = quotient(&r, &partition).unwrap();
        if q.len() > limits().max_k
            || count_linear_extensions(&q.dag).unwrap().pow(d as u32) > ORACLE_TUPLES
        {
            continue;
        }
        let mut drawing = random_drawing(&g, d, &mut rng);
        for block in &partition {
            drawing = compaction(&r, &drawing, block).unwrap();
        }
        let check = match outer_fips_lower_bound_check(&r, &partition, &drawing, &limits()) {
            Ok(c) => c,
            Err(e) => {
                violations.push(format!("check errored ({e}) on {:?}", g.edges()));
                continue;
            }
        };
        instances += 1;
        if check.outer == check.quotient_opt {
            tight += 1;
        }
        if !check.holds() {
            violations.push(format!("{check:?} on {:?}", g.edges()));
        }
    }
    report(
        5,
        "outer-fip lower bound",
        violations.is_empty(),
        &format!(
            "{instances} compact congruence partitions ({tight} tight), {} violations {:?}",
            violations.len(),
            violations.first()
        ),
    );
}

fn strong_internal(r: &Reachability) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = enumerate_all_modules(r)
        .unwrap()
        .strong
        .into_iter()
        .filter(|m| m.len() >= 2)
        .collect();
    v.sort();
    v
}

#[test]
fn ac6_decomposition_tree() {
    let mut rng = rng(6);
    let mut violations = Vec::new();
    let graphs = 600;
    for _ in 0..graphs {
        let g = random_dag(&mut rng, 1, 7, 0.0, 0.8);
        let r = Reachability::new(&g);
        let tree = md_tree(&r);
        let mut internal: Vec<Vec<usize>> =
            tree.internal_nodes().map(|n| n.members.clone()).collect();
        internal.sort();
        if internal != strong_internal(&r) {
            violations.push(format!("strong modules differ on {:?}", g.edges()));
        }
        for node in tree.nodes() {
            if !domdraw::is_module(&r, &node.members).unwrap() {
                violations.push(format!("{:?} is not a module", node.members));
            }
            if !node.is_leaf() {
                let mut joined: Vec<usize> = node.children.iter().flat_map(|c| c.members.clone()).collect();
                joined.sort();
                if joined != node.members {
                    violations.push(format!("children do not partition {:?}", node.members));
                }
            }
        }
    }
    report(
        6,
        "decomposition tree",
        violations.is_empty(),
        &format!("{graphs} graphs with n <= 7, {} violations {:?}", violations.len(), violations.first()),
    );
}

/// Random expansion instance: quotient drawing over `h` super-vertices and
/// random module drawings for a random partition of `0..N`.
fn random_expansion(
    rng: &mut rand_chacha::ChaCha8Rng,
) -> (Drawing, Vec<Vec<usize>>, Vec<Drawing>) {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let d = rng.gen_range(1..=3);
    let h = rng.gen_range(1..=6);
    let sizes: Vec<usize> = (0..h).map(|_| rng.gen_range(1..=4)).collect();
    let total: usize = sizes.iter().sum();
    let mut ids: Vec<usize> = (0..total).collect();
    ids.shuffle(rng);
    let mut blocks = Vec::new();
    let mut at = 0;
    for &s in &sizes {
        blocks.push(ids[at..at + s].to_vec());
        at += s;
    }
    let perm = |k: usize, rng: &mut rand_chacha::ChaCha8Rng| {
        let mut p: Vec<usize> = (0..k).collect();
        p.shuffle(rng);
        p
    };
    let quotient = Drawing::new((0..d).map(|_| perm(h, rng)).collect()).unwrap();
    let inner = sizes
        .iter()
        .map(|&s| Drawing::new((0..d).map(|_| perm(s, rng)).collect()).unwrap())
        .collect();
    (quotient, blocks, inner)
}

#[test]
fn ac7_expansion() {
    let mut rng = rng(7);
    let mut mismatches = 0;
    let runs = 300;
    for _ in 0..runs {
        let (q, blocks, inner) = random_expansion(&mut rng);
        let a = expand(&q, &blocks, &inner).unwrap();
        let b = expand_by_coordinates(&q, &blocks, &inner).unwrap();
        if a != b {
            mismatches += 1;
        }
    }

    // Super-vertices v_1..v_4 are 0..3 with costs 6, 1, 6, 5. In X, v_4 has
    // v_1 and v_2 before it; vertex 16 of M_4 is third inside its module.
    let blocks = vec![
        (0..6).collect::<Vec<_>>(),
        vec![6],
        (7..13).collect(),
        vec![14, 15, 16, 17, 13],
    ];
    let q = Drawing::new(vec![vec![0, 1, 3, 2]]).unwrap();
    let inner = vec![
        Drawing::new(vec![(0..6).collect()]).unwrap(),
        Drawing::new(vec![vec![0]]).unwrap(),
        Drawing::new(vec![(0..6).collect()]).unwrap(),
        Drawing::new(vec![vec![1, 0, 2, 3, 4]]).unwrap(),
    ];
    let formula = coordinate_assignment(q.position(0, 3), [6, 1], inner[3].position(0, 2));
    let by_concat = expand(&q, &blocks, &inner).unwrap().position(0, 16);
    let by_coords = expand_by_coordinates(&q, &blocks, &inner).unwrap().position(0, 16);
    report(
        7,
        "expansion",
        mismatches == 0 && formula == 9 && by_concat == 9 && by_coords == 9,
        &format!(
            "{runs} random instances, {mismatches} mismatches; X(16) = {formula} by formula, {by_concat}/{by_coords} by expansion (want 9)"
        ),
    );
}

#[test]
fn ac8_reachability_index() {
    let mut rng = rng(8);
    let mut problems = Vec::new();
    let mut graphs = 0;
    let mut total_fips = 0;
    while graphs < 120 {
        let g = random_dag(&mut rng, 2, 14, 0.05, 0.5);
        let d = if graphs % 2 == 0 { 2 } else { 3 };
        let Ok(opt) = fpt_min_fips(&g, d, &limits()) else {
            continue;
        };
        graphs += 1;
        let r = Reachability::new(&g);
        let index = Index::build(&g, &opt.drawing).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                let got = index.query(u, v).unwrap().answer == domdraw::Answer::Reachable;
                if got != r.reaches(u, v) {
                    problems.push(format!("({u},{v}) on {:?}", g.edges()));
                }
            }
        }
        // A random drawing of the same graph as well, so plenty of fips are
        // exercised.
        let random = random_drawing(&g, d, &mut rng);
        for drawing in [&opt.drawing, &random] {
            let index = Index::build(&g, drawing).unwrap();
            let stats = index.sweep_stats();
            let count = fip_count(&r, drawing) as u64;
            total_fips += count;
            if stats.fallback_fips != count
                || stats.fallbacks != r.pair_count() as u64 + count
                || stats.queries != stats.negative_certificates + stats.fallbacks
            {
                problems.push(format!("stats {stats:?} vs {count} fips on {:?}", g.edges()));
            }
        }
    }
    report(
        8,
        "reachability index",
        problems.is_empty(),
        &format!(
            "{graphs} graphs with FPT drawings plus a random drawing each ({total_fips} fips swept), {} problems {:?}",
            problems.len(),
            problems.first()
        ),
    );
}

fn chain_with(n: usize) -> Dag {
    gen_chain(n).unwrap()
}

#[test]
fn ac9_complexity_sanity() {
    let mut rng = rng(9);
    let mut bad_counts = Vec::new();
    for _ in 0..100 {
        let g = random_dag(&mut rng, 1, 7, 0.1, 0.7);
        let e = count_linear_extensions(&g).unwrap();
        for d in 1..=2u32 {
            if e.pow(d) > ORACLE_TUPLES {
                continue;
            }
            let res = brute_force_min_fips(&g, d as usize, &limits()).unwrap();
            if res.explored != e.pow(d) {
                bad_counts.push((g.edges().to_vec(), d, res.explored, e.pow(d)));
            }
        }
    }
    let g = chain_with(1000);
    let start = Instant::now();
    let res = fpt_min_fips(&g, 3, &limits()).unwrap();
    let elapsed = start.elapsed();
    report(
        9,
        "complexity sanity",
        bad_counts.is_empty() && res.cost == 0 && elapsed < Duration::from_secs(5),
        &format!(
            "explored == e^d on all sampled graphs ({} mismatches); chain(1000), d=3: cost {}, {} tuples explored, {elapsed:.2?}",
            bad_counts.len(),
            res.cost,
            res.explored
        ),
    );
}
