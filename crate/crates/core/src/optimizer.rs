//! Cost-minimum weak dominance drawings.
//!
//! [`brute_force_min_cost`] tries every `d`-tuple of linear extensions of a
//! small cost-weighted DAG. [`fpt_min_fips`] walks the modular
//! decomposition tree bottom-up: each internal node's quotient (children
//! merged into super-vertices weighted by their size) is drawn at minimum
//! cost, then every super-vertex is replaced by its child's optimal drawing.
//! The exhaustive work is therefore bounded by the widest prime node, not by
//! the size of the graph.

use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::{build_quotient, md_tree, MdNode, ModuleKind, QuotientGraph};
use crate::drawing::{contract, fip_count, fips, Drawing};
use crate::error::{Error, Result};
use crate::graph::{count_linear_extensions, topological_orders, Dag, Reachability};
use crate::weight::{add_cost, pair_cost, Weight};

/// Bounds on exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest vertex count handed to the exhaustive search (the widest
    /// prime node for [`fpt_min_fips`]).
    pub max_k: usize,
    /// Largest number of `d`-tuples one exhaustive search may examine.
    pub max_explored: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_k: 9,
            max_explored: 1_000_000_000,
        }
    }
}

/// A minimum-cost drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptResult<W: Weight = u64> {
    pub cost: W,
    pub drawing: Drawing,
    /// Candidate tuples examined.
    pub explored: u128,
    pub k: usize,
    pub d: usize,
}

struct Search<'a, W> {
    exts: &'a [Vec<usize>],
    masks: Vec<u64>,
    words: usize,
    valid: Vec<u64>,
    /// `None` when every pair weighs 1.
    weights: Option<Vec<W>>,
    d: usize,
}

impl<W: Weight> Search<'_, W> {
    fn mask(&self, e: usize) -> &[u64] {
        &self.masks[e * self.words..(e + 1) * self.words]
    }

    fn cost(&self, fwd: &[u64], bwd: &[u64]) -> W {
        match &self.weights {
            None => {
                let ones: u32 = fwd.iter().zip(bwd).map(|(f, b)| (f | b).count_ones()).sum();
                W::from_count(ones as usize).expect("bounded by the pair count")
            }
            Some(weights) => {
                let mut total = W::zero();
                for (k, (f, b)) in fwd.iter().zip(bwd).enumerate() {
                    let mut bits = f | b;
                    while bits != 0 {
                        let i = bits.trailing_zeros() as usize;
                        total = total + weights[k * 64 + i];
                        bits &= bits - 1;
                    }
                }
                total
            }
        }
    }

    /// Best tuple whose first dimension is extension `first`; the earliest
    /// tuple in lexicographic order wins ties.
    fn best_from(&self, first: usize) -> (W, Vec<usize>) {
        let w = self.words;
        let mut fwd = vec![0u64; self.d * w];
        let mut bwd = vec![0u64; self.d * w];
        let m = self.mask(first);
        for k in 0..w {
            fwd[k] = m[k];
            bwd[k] = !m[k] & self.valid[k];
        }
        let mut tuple = vec![first; self.d];
        let mut best = None;
        if self.d == 1 {
            return (self.cost(&fwd, &bwd), tuple);
        }
        self.descend(1, &mut fwd, &mut bwd, &mut tuple, &mut best);
        best.expect("at least one extension")
    }

    fn descend(
        &self,
        level: usize,
        fwd: &mut [u64],
        bwd: &mut [u64],
        tuple: &mut Vec<usize>,
        best: &mut Option<(W, Vec<usize>)>,
    ) {
        let w = self.words;
        for e in 0..self.exts.len() {
            let m = self.mask(e);
            {
                let (prev_f, cur_f) = fwd.split_at_mut(level * w);
                let (prev_b, cur_b) = bwd.split_at_mut(level * w);
                let pf = &prev_f[(level - 1) * w..];
                let pb = &prev_b[(level - 1) * w..];
                for k in 0..w {
                    cur_f[k] = pf[k] & m[k];
                    cur_b[k] = pb[k] & !m[k];
                }
            }
            tuple[level] = e;
            if level + 1 == self.d {
                let range = level * w..(level + 1) * w;
                let c = self.cost(&fwd[range.clone()], &bwd[range]);
                if best.as_ref().is_none_or(|(b, _)| c < *b) {
                    *best = Some((c, tuple.clone()));
                }
            } else {
                self.descend(level + 1, fwd, bwd, tuple, best);
            }
        }
    }
}

/// Exhaustive minimum over all `d`-tuples of linear extensions of `h`,
/// where a fip `(u, v)` costs `costs[u] * costs[v]`. Ties go to the
/// lexicographically smallest tuple of orders.
pub fn brute_force_min_cost<W: Weight>(
    h: &Dag,
    costs: &[W],
    d: usize,
    limits: &SearchLimits,
) -> Result<OptResult<W>> {
    if d == 0 {
        return Err(Error::ZeroDimensions);
    }
    let n = h.n();
    if costs.len() != n {
        return Err(Error::BadDrawing(format!("{} costs for {n} vertices", costs.len())));
    }
    if n > limits.max_k {
        return Err(Error::SearchBound {
            vertices: n,
            bound: limits.max_k,
        });
    }
    let r = Reachability::new(h);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !r.comparable(a, b))
        .collect();
    let mut weights = Vec::with_capacity(pairs.len());
    let mut total = W::zero();
    for &(a, b) in &pairs {
        let c = pair_cost(costs[a], costs[b])?;
        total = add_cost(total, c)?;
        weights.push(c);
    }
    let unit = weights.iter().all(|&w| w == W::one());

    let mut exts = Vec::new();
    for ext in topological_orders(h) {
        exts.push(ext);
        let tuples = (exts.len() as u128).checked_pow(d as u32);
        if tuples.is_none_or(|t| t > limits.max_explored) {
            let tuples = count_linear_extensions(h)
                .and_then(|e| e.checked_pow(d as u32))
                .unwrap_or(u128::MAX);
            return Err(Error::ExploreBudget {
                tuples,
                budget: limits.max_explored,
            });
        }
    }

    let words = pairs.len().div_ceil(64).max(1);
    let mut valid = vec![0u64; words];
    for i in 0..pairs.len() {
        valid[i / 64] |= 1 << (i % 64);
    }
    let mut masks = vec![0u64; exts.len() * words];
    let mut pos = vec![0usize; n];
    for (e, ext) in exts.iter().enumerate() {
        for (i, &v) in ext.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if pos[a] < pos[b] {
                masks[e * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    let search = Search {
        exts: &exts,
        masks,
        words,
        valid,
        weights: (!unit).then_some(weights),
        d,
    };
    let (cost, tuple) = (0..exts.len())
        .into_par_iter()
        .map(|first| search.best_from(first))
        .collect::<Vec<_>>()
        .into_iter()
        .min_by_key(|(c, _)| *c)
        .expect("a DAG has at least one linear extension");
    let drawing = Drawing::new(tuple.iter().map(|&e| exts[e].clone()).collect())?;
    Ok(OptResult {
        cost,
        drawing,
        explored: (exts.len() as u128).pow(d as u32),
        k: n,
        d,
    })
}

/// Brute force with every vertex costing 1, i.e. minimum fip count.
pub fn brute_force_min_fips(h: &Dag, d: usize, limits: &SearchLimits) -> Result<OptResult<u64>> {
    brute_force_min_cost(h, &vec![1u64; h.n()], d, limits)
}

/// Brute force on a quotient with its block sizes as costs.
pub fn brute_force_quotient<W: Weight>(
    q: &QuotientGraph<W>,
    d: usize,
    limits: &SearchLimits,
) -> Result<OptResult<W>> {
    brute_force_min_cost(&q.dag, &q.costs, d, limits)
}

/// 0-based position of a vertex after expanding its super-vertex: the
/// super-vertex's position, plus `c(u) - 1` for every super-vertex `u`
/// placed before it, plus the vertex's position inside its module drawing.
pub fn coordinate_assignment(
    quotient_pos: usize,
    preceding_costs: impl IntoIterator<Item = usize>,
    inner_pos: usize,
) -> usize {
    quotient_pos + preceding_costs.into_iter().map(|c| c - 1).sum::<usize>() + inner_pos
}

fn check_expansion(quotient: &Drawing, blocks: &[Vec<usize>], inner: &[Drawing]) -> Result<usize> {
    let h = quotient.n();
    if blocks.len() != h || inner.len() != h {
        return Err(Error::BadDrawing(format!(
            "quotient drawing has {h} super-vertices, got {} blocks and {} module drawings",
            blocks.len(),
            inner.len()
        )));
    }
    for (i, (b, m)) in blocks.iter().zip(inner).enumerate() {
        if m.d() != quotient.d() {
            return Err(Error::BadDrawing(format!(
                "module drawing {i} has {} dimensions, quotient has {}",
                m.d(),
                quotient.d()
            )));
        }
        if m.n() != b.len() {
            return Err(Error::BadDrawing(format!(
                "module drawing {i} has {} vertices but c(v_{i}) = {}",
                m.n(),
                b.len()
            )));
        }
    }
    Ok(blocks.iter().map(Vec::len).sum())
}

/// Replace each super-vertex `i` of `quotient` by `inner[i]`, a drawing of
/// block `blocks[i]` whose local vertex `j` is `blocks[i][j]`. Each
/// dimension of the result is the concatenation of the module orders in
/// quotient order. The blocks must partition `0..N`.
pub fn expand(quotient: &Drawing, blocks: &[Vec<usize>], inner: &[Drawing]) -> Result<Drawing> {
    check_expansion(quotient, blocks, inner)?;
    let orders = (0..quotient.d())
        .map(|dim| {
            quotient
                .order(dim)
                .iter()
                .flat_map(|&i| inner[i].order(dim).iter().map(move |&j| blocks[i][j]))
                .collect()
        })
        .collect();
    Drawing::new(orders)
}

/// Same result as [`expand`], computed vertex by vertex with
/// [`coordinate_assignment`].
pub fn expand_by_coordinates(
    quotient: &Drawing,
    blocks: &[Vec<usize>],
    inner: &[Drawing],
) -> Result<Drawing> {
    let total = check_expansion(quotient, blocks, inner)?;
    let mut orders = vec![vec![usize::MAX; total]; quotient.d()];
    for (dim, order) in orders.iter_mut().enumerate() {
        for (i, block) in blocks.iter().enumerate() {
            let qpos = quotient.position(dim, i);
            let preceding = quotient.order(dim)[..qpos].iter().map(|&u| blocks[u].len());
            let base = coordinate_assignment(qpos, preceding, 0);
            for (j, &v) in block.iter().enumerate() {
                let slot = base + inner[i].position(dim, j);
                if slot >= total {
                    return Err(Error::BadPartition("blocks do not partition 0..N".into()));
                }
                order[slot] = v;
            }
        }
    }
    Drawing::new(orders)
}

/// Minimum-fip `d`-dimensional drawing of `g` via the decomposition tree.
pub fn fpt_min_fips(g: &Dag, d: usize, limits: &SearchLimits) -> Result<OptResult<u64>> {
    fpt_min_fips_with(g, &Reachability::new(g), d, limits)
}

/// As [`fpt_min_fips`], reusing a closure computed by the caller.
pub fn fpt_min_fips_with(
    g: &Dag,
    r: &Reachability,
    d: usize,
    limits: &SearchLimits,
) -> Result<OptResult<u64>> {
    if d == 0 {
        return Err(Error::ZeroDimensions);
    }
    let tree = md_tree(r);
    let width = tree.prime_width();
    if width > limits.max_k {
        return Err(Error::KTooLarge {
            k: tree.k(),
            width,
            bound: limits.max_k,
        });
    }
    let solved = solve_node::<u64>(r, &tree.root, d, limits)?;
    let drawing = Drawing::new(solved.orders)?;
    debug_assert_eq!(fip_count(r, &drawing) as u64, solved.cost);
    debug_assert!(crate::drawing::validate(g, &drawing).unwrap_or(false));
    Ok(OptResult {
        cost: solved.cost,
        drawing,
        explored: solved.explored,
        k: tree.k(),
        d,
    })
}

struct Solved<W> {
    /// Orders over global vertex ids, each a permutation of the node.
    orders: Vec<Vec<usize>>,
    cost: W,
    explored: u128,
}

fn solve_node<W: Weight>(
    r: &Reachability,
    node: &MdNode,
    d: usize,
    limits: &SearchLimits,
) -> Result<Solved<W>> {
    if node.is_leaf() {
        return Ok(Solved {
            orders: vec![node.members.clone(); d],
            cost: W::zero(),
            explored: 0,
        });
    }
    let children = node
        .children
        .iter()
        .map(|c| solve_node::<W>(r, c, d, limits))
        .collect::<Result<Vec<_>>>()?;
    let q: QuotientGraph<W> = build_quotient(r, &node.partition())?;
    let top = match node.kind {
        ModuleKind::Prime => brute_force_quotient(&q, d, limits)?,
        ModuleKind::Series | ModuleKind::Parallel => linear_quotient(&q, node.kind, d)?,
        ModuleKind::Leaf => unreachable!("leaves handled above"),
    };
    let mut cost = top.cost;
    let mut explored = top.explored;
    for c in &children {
        cost = add_cost(cost, c.cost)?;
        explored += c.explored;
    }
    let orders = (0..d)
        .map(|dim| {
            top.drawing
                .order(dim)
                .iter()
                .flat_map(|&i| children[i].orders[dim].iter().copied())
                .collect()
        })
        .collect();
    Ok(Solved {
        orders,
        cost,
        explored,
    })
}

/// Closed-form optimum for series and parallel quotients, matching the
/// brute-force tie-break. A series quotient is a chain with one extension.
/// A parallel quotient is an antichain: with `d >= 2` the tuple
/// (identity, ..., identity, reversed) kills every fip; with `d = 1` all
/// orders cost the same and the identity is the smallest.
fn linear_quotient<W: Weight>(q: &QuotientGraph<W>, kind: ModuleKind, d: usize) -> Result<OptResult<W>> {
    let h = q.len();
    let identity: Vec<usize> = (0..h).collect();
    let mut orders = vec![identity.clone(); d];
    let mut cost = W::zero();
    if kind == ModuleKind::Parallel {
        if d >= 2 {
            orders[d - 1].reverse();
        } else {
            for a in 0..h {
                for b in a + 1..h {
                    cost = add_cost(cost, pair_cost(q.costs[a], q.costs[b])?)?;
                }
            }
        }
    }
    Ok(OptResult {
        cost,
        drawing: Drawing::new(orders)?,
        explored: 1,
        k: h,
        d,
    })
}

/// Outcome of [`outer_fips_lower_bound_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OuterFipBound {
    /// Outer fips of the drawing.
    pub outer: u64,
    /// Cost of the drawing with every block contracted to a super-vertex.
    pub contracted_cost: u64,
    /// Minimum cost over all drawings of the quotient.
    pub quotient_opt: u64,
}

impl OuterFipBound {
    pub fn holds(&self) -> bool {
        self.outer >= self.quotient_opt && self.outer == self.contracted_cost
    }
}

/// For a drawing in which the congruence partition is compact: count its
/// outer fips, the cost of the contracted quotient drawing and the
/// quotient's optimum.
pub fn outer_fips_lower_bound_check(
    r: &Reachability,
    partition: &[Vec<usize>],
    drawing: &Drawing,
    limits: &SearchLimits,
) -> Result<OuterFipBound> {
    let contracted = contract(drawing, partition)?;
    let q: QuotientGraph<u64> = crate::decomposition::quotient(r, partition)?;
    let report: crate::drawing::FipReport<u64> = fips(r, drawing, None)?;
    let classified = crate::drawing::classify_fips(&report, partition)?;
    let outer = classified.outer().len() as u64;
    let contracted_cost = fips(&Reachability::new(&q.dag), &contracted, Some(&q.costs))?.cost;
    let quotient_opt = brute_force_quotient(&q, drawing.d(), limits)?.cost;
    Ok(OuterFipBound {
        outer,
        contracted_cost,
        quotient_opt,
    })
}

/// Does `g` have a `d`-dimensional dominance drawing (zero fips)?
pub fn dominance_dimension_at_most(g: &Dag, d: usize, limits: &SearchLimits) -> Result<bool> {
    Ok(fpt_min_fips(g, d, limits)?.cost == 0)
}

/// Smallest `d <= d_max` admitting a zero-fip drawing.
pub fn dominance_dimension(g: &Dag, d_max: usize, limits: &SearchLimits) -> Result<Option<usize>> {
    if d_max == 0 {
        return Err(Error::ZeroDimensions);
    }
    let r = Reachability::new(g);
    for d in 1..=d_max {
        if fpt_min_fips_with(g, &r, d, limits)?.cost == 0 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_antichain, gen_chain, gen_crown, gen_random_dag};

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn chain_costs_nothing() {
        for d in 1..=3 {
            let r = brute_force_min_fips(&gen_chain(4).unwrap(), d, &limits()).unwrap();
            assert_eq!(r.cost, 0);
            assert_eq!(r.explored, 1);
        }
    }

    #[test]
    fn antichain_pair_in_two_dimensions() {
        let r = brute_force_min_fips(&gen_antichain(2).unwrap(), 2, &limits()).unwrap();
        assert_eq!(r.cost, 0);
        assert_eq!(r.drawing.orders(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(r.explored, 4);
    }

    #[test]
    fn crown_needs_a_fip_in_two_dimensions() {
        let g = gen_crown(3).unwrap();
        let r = brute_force_min_fips(&g, 2, &limits()).unwrap();
        assert!(r.cost >= 1);
        let f = fpt_min_fips(&g, 2, &limits()).unwrap();
        assert_eq!(f.cost, r.cost);
        assert_eq!(brute_force_min_fips(&g, 3, &limits()).unwrap().cost, 0);
    }

    #[test]
    fn weighted_brute_force_matches_direct_evaluation() {
        let g = gen_antichain(3).unwrap();
        let costs = [6u64, 1, 2];
        let r = brute_force_min_cost(&g, &costs, 1, &limits()).unwrap();
        assert_eq!(r.cost, 6 + 12 + 2);
        let rep = fips(&Reachability::new(&g), &r.drawing, Some(&costs)).unwrap();
        assert_eq!(rep.cost, r.cost);
    }

    #[test]
    fn search_bounds() {
        let g = gen_antichain(10).unwrap();
        assert_eq!(
            brute_force_min_fips(&g, 2, &limits()),
            Err(Error::SearchBound { vertices: 10, bound: 9 })
        );
        let tight = SearchLimits {
            max_k: 9,
            max_explored: 100,
        };
        assert_eq!(
            brute_force_min_fips(&gen_antichain(4).unwrap(), 2, &tight),
            Err(Error::ExploreBudget {
                tuples: 576,
                budget: 100
            })
        );
        assert_eq!(
            brute_force_min_fips(&gen_chain(2).unwrap(), 0, &limits()),
            Err(Error::ZeroDimensions)
        );
    }

    #[test]
    fn quoted_coordinate() {
        assert_eq!(coordinate_assignment(2, [6, 1], 2), 9);
    }

    #[test]
    fn singleton_expansion_is_identity() {
        let q = Drawing::new(vec![vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        let blocks = vec![vec![0], vec![1], vec![2]];
        let unit = Drawing::new(vec![vec![0], vec![0]]).unwrap();
        let inner = vec![unit; 3];
        assert_eq!(expand(&q, &blocks, &inner).unwrap(), q);
        assert_eq!(expand_by_coordinates(&q, &blocks, &inner).unwrap(), q);
    }

    #[test]
    fn expansion_errors() {
        let q = Drawing::new(vec![vec![0, 1]]).unwrap();
        let one = Drawing::new(vec![vec![0]]).unwrap();
        let two_d = Drawing::new(vec![vec![0], vec![0]]).unwrap();
        assert!(expand(&q, &[vec![0], vec![1, 2]], &[one.clone(), one.clone()]).is_err());
        assert!(expand(&q, &[vec![0], vec![1]], &[one.clone(), two_d]).is_err());
        assert!(expand(&q, &[vec![0]], &[one]).is_err());
    }

    #[test]
    fn fpt_handles_long_series() {
        let g = gen_chain(200).unwrap();
        let r = fpt_min_fips(&g, 3, &limits()).unwrap();
        assert_eq!(r.cost, 0);
        assert_eq!(r.k, 200);
    }

    #[test]
    fn fpt_reports_wide_prime_nodes() {
        let g = gen_crown(5).unwrap();
        assert_eq!(
            fpt_min_fips(&g, 2, &limits()),
            Err(Error::KTooLarge {
                k: 10,
                width: 10,
                bound: 9
            })
        );
    }

    #[test]
    fn fpt_matches_brute_force_on_a_few_graphs() {
        for seed in 0..20 {
            let g = gen_random_dag(6, 0.35, seed).unwrap();
            for d in [1, 2] {
                let f = fpt_min_fips(&g, d, &limits()).unwrap();
                let b = brute_force_min_fips(&g, d, &limits()).unwrap();
                assert_eq!(f.cost, b.cost, "seed {seed} d {d}");
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dominance_dimension(&gen_chain(4).unwrap(), 3, &limits()), Ok(Some(1)));
        assert_eq!(dominance_dimension(&gen_antichain(2).unwrap(), 3, &limits()), Ok(Some(2)));
        assert_eq!(dominance_dimension(&gen_crown(3).unwrap(), 3, &limits()), Ok(Some(3)));
        assert_eq!(dominance_dimension(&gen_crown(3).unwrap(), 2, &limits()), Ok(None));
        assert!(dominance_dimension_at_most(&gen_chain(3).unwrap(), 1, &limits()).unwrap());
    }

    #[test]
    fn opt_result_json() {
        let r = fpt_min_fips(&gen_chain(2).unwrap(), 1, &limits()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["cost"], 0);
        assert_eq!(v["drawing"]["d"], 1);
        assert_eq!(v["k"], 2);
        assert_eq!(v["d"], 1);
        assert_eq!(v["explored"], 1);
    }
}
