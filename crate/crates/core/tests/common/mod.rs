#![allow(dead_code)]

use domdraw::{enumerate_all_modules, gen_random_dag, Dag, Drawing, Reachability};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random DAG with `n` in `lo..=hi` and edge probability in `[p_lo, p_hi)`.
pub fn random_dag(rng: &mut ChaCha8Rng, lo: usize, hi: usize, p_lo: f64, p_hi: f64) -> Dag {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(p_lo..p_hi);
    gen_random_dag(n, p, rng.gen()).unwrap()
}

/// Uniformly random choice among the minimal vertices at every step.
pub fn random_extension(g: &Dag, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut indeg: Vec<usize> = (0..g.n()).map(|v| g.predecessors(v).len()).collect();
    let mut ready: Vec<usize> = (0..g.n()).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(g.n());
    while !ready.is_empty() {
        let i = rng.gen_range(0..ready.len());
        let v = ready.swap_remove(i);
        order.push(v);
        for &w in g.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    order
}

pub fn random_drawing(g: &Dag, d: usize, rng: &mut ChaCha8Rng) -> Drawing {
    Drawing::new((0..d).map(|_| random_extension(g, rng)).collect()).unwrap()
}

/// Non-singleton modules of `g`, by exhaustive enumeration.
pub fn nontrivial_modules(r: &Reachability) -> Vec<Vec<usize>> {
    enumerate_all_modules(r)
        .unwrap()
        .modules
        .into_iter()
        .filter(|m| m.len() >= 2)
        .collect()
}

pub fn pick<'a, T>(items: &'a [T], rng: &mut ChaCha8Rng) -> Option<&'a T> {
    items.choose(rng)
}

pub fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}
