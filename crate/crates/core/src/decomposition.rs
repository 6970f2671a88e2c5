//! Path-based modular decomposition.
//!
//! A vertex set `M` is a module when no outside vertex can tell its members
//! apart by reachability: for every `w` outside `M`, either `w` reaches all
//! of `M` or none of it, and either all of `M` reaches `w` or none of it.
//! The decomposition tree is built by the classic three-way split on the
//! induced subposet of each node: parallel (comparability graph
//! disconnected), series (incomparability graph disconnected) or prime.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Dag, Reachability};
use crate::weight::Weight;

/// Default vertex bound for [`enumerate_all_modules`].
pub const MODULE_ORACLE_BOUND: usize = 12;

fn to_bitset(n: usize, s: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &v in s {
        b.insert(v);
    }
    b
}

/// Does `w` split `s`, i.e. relate differently to two members of `s`?
fn splits(r: &Reachability, w: usize, s: &FixedBitSet, size: usize) -> bool {
    let below = r.descendants(w).intersection_count(s);
    let above = r.ancestors(w).intersection_count(s);
    (below != 0 && below != size) || (above != 0 && above != size)
}

pub fn is_module(r: &Reachability, s: &[usize]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(&v) = s.iter().find(|&&v| v >= r.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: r.n() });
    }
    let set = to_bitset(r.n(), s);
    let size = set.count_ones(..);
    if size == 1 {
        return Ok(true);
    }
    Ok((0..r.n()).all(|w| set.contains(w) || !splits(r, w, &set, size)))
}

/// Grow `set` inside `domain` until no vertex of `domain` splits it.
fn close_within(r: &Reachability, domain: &[usize], mut set: FixedBitSet) -> FixedBitSet {
    let mut size = set.count_ones(..);
    loop {
        let mut grown = false;
        for &w in domain {
            if !set.contains(w) && splits(r, w, &set, size) {
                set.insert(w);
                size += 1;
                grown = true;
            }
        }
        if !grown {
            return set;
        }
    }
}

/// The inclusion-minimal module containing both `u` and `v`.
pub fn minimal_module(r: &Reachability, u: usize, v: usize) -> Result<Vec<usize>> {
    for x in [u, v] {
        if x >= r.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: r.n() });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    let domain: Vec<usize> = (0..r.n()).collect();
    let closed = close_within(r, &domain, to_bitset(r.n(), &[u, v]));
    Ok(closed.ones().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Leaf,
    Parallel,
    Series,
    Prime,
}

/// A node of the decomposition tree. `members` is sorted ascending.
/// Series children follow the order they are stacked in; the others are
/// ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdNode {
    pub kind: ModuleKind,
    pub members: Vec<usize>,
    pub children: Vec<MdNode>,
}

impl MdNode {
    fn leaf(v: usize) -> Self {
        MdNode {
            kind: ModuleKind::Leaf,
            members: vec![v],
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Children's member sets, in child order.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.children.iter().map(|c| c.members.clone()).collect()
    }

    /// Pre-order traversal of this subtree.
    pub fn iter(&self) -> impl Iterator<Item = &MdNode> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev());
            Some(node)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdTree {
    pub n: usize,
    pub root: MdNode,
}

impl MdTree {
    pub fn build(r: &Reachability) -> Self {
        let all: Vec<usize> = (0..r.n()).collect();
        MdTree {
            n: r.n(),
            root: build_node(r, all),
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = &MdNode> {
        self.root.iter()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = &MdNode> {
        self.nodes().filter(|n| !n.is_leaf())
    }

    /// The node whose member set is exactly `members` (sorted), if any.
    pub fn find(&self, members: &[usize]) -> Option<&MdNode> {
        let first = *members.first()?;
        let mut node = &self.root;
        loop {
            if node.members == members {
                return Some(node);
            }
            node = node
                .children
                .iter()
                .find(|c| c.members.binary_search(&first).is_ok())?;
        }
    }

    pub fn k(&self) -> usize {
        k_parameter(self)
    }

    /// Largest child count over prime nodes: the size of the biggest
    /// quotient that needs an exhaustive search.
    pub fn prime_width(&self) -> usize {
        self.internal_nodes()
            .filter(|n| n.kind == ModuleKind::Prime)
            .map(|n| n.children.len())
            .max()
            .unwrap_or(0)
    }
}

/// Build the tree for `g`.
pub fn md_tree(r: &Reachability) -> MdTree {
    MdTree::build(r)
}

/// Maximum child count over internal nodes; 0 for a single vertex.
pub fn k_parameter(t: &MdTree) -> usize {
    t.internal_nodes().map(|n| n.children.len()).max().unwrap_or(0)
}

/// Connected components of `members` under `adjacent`, each sorted, ordered
/// by smallest member.
fn components(members: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; members.len()];
    let mut out = Vec::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![members[start]];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..members.len() {
                if !seen[j] && adjacent(members[i], members[j]) {
                    seen[j] = true;
                    comp.push(members[j]);
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn build_node(r: &Reachability, members: Vec<usize>) -> MdNode {
    if members.len() == 1 {
        return MdNode::leaf(members[0]);
    }
    let comparable = components(&members, |u, v| r.comparable(u, v));
    let (kind, parts) = if comparable.len() > 1 {
        (ModuleKind::Parallel, comparable)
    } else {
        let mut incomparable = components(&members, |u, v| !r.comparable(u, v));
        if incomparable.len() > 1 {
            // Blocks of a linear sum: a later block's members have strictly
            // more ancestors.
            incomparable.sort_by_key(|c| r.ancestors(c[0]).count_ones(..));
            (ModuleKind::Series, incomparable)
        } else {
            (ModuleKind::Prime, maximal_modules(r, &members))
        }
    };
    let children = parts.into_iter().map(|p| build_node(r, p)).collect();
    MdNode {
        kind,
        members,
        children,
    }
}

/// Maximal proper modules of a prime node: `u` and `v` share a child iff
/// their minimal common module is not the whole member set.
fn maximal_modules(r: &Reachability, members: &[usize]) -> Vec<Vec<usize>> {
    let mut assigned = FixedBitSet::with_capacity(r.n());
    let mut out = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        if assigned.contains(u) {
            continue;
        }
        let mut class = to_bitset(r.n(), &[u]);
        for &v in &members[i + 1..] {
            if assigned.contains(v) || class.contains(v) {
                continue;
            }
            let closed = close_within(r, members, to_bitset(r.n(), &[u, v]));
            if closed.count_ones(..) < members.len() {
                class.union_with(&closed);
            }
        }
        assigned.union_with(&class);
        out.push(class.ones().collect());
    }
    out
}

/// A graph over super-vertices, one per block, with block sizes as costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph<W: Weight = u64> {
    pub dag: Dag,
    pub costs: Vec<W>,
    pub blocks: Vec<Vec<usize>>,
}

impl<W: Weight> QuotientGraph<W> {
    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn total_cost(&self) -> Result<W> {
        self.costs
            .iter()
            .try_fold(W::zero(), |acc, &c| crate::weight::add_cost(acc, c))
    }
}

fn check_blocks(n: usize, partition: &[Vec<usize>]) -> Result<FixedBitSet> {
    let mut union = FixedBitSet::with_capacity(n);
    for block in partition {
        if block.is_empty() {
            return Err(Error::BadPartition("empty block".into()));
        }
        for &v in block {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if union.put(v) {
                return Err(Error::BadPartition(format!("vertex {v} in two blocks")));
            }
        }
    }
    Ok(union)
}

/// Quotient of the module formed by the union of `partition` with respect
/// to that partition. Every block must be a module, and so must their
/// union. Edges are the transitive reduction of the block order.
pub fn quotient<W: Weight>(r: &Reachability, partition: &[Vec<usize>]) -> Result<QuotientGraph<W>> {
    if partition.is_empty() {
        return Err(Error::BadPartition("no blocks".into()));
    }
    let union = check_blocks(r.n(), partition)?;
    for block in partition {
        if !is_module(r, block)? {
            return Err(Error::NotModule(sorted(block)));
        }
    }
    let members: Vec<usize> = union.ones().collect();
    if !is_module(r, &members)? {
        return Err(Error::BadPartition(
            "blocks do not cover a module of the graph".into(),
        ));
    }
    build_quotient(r, partition)
}

/// Quotient without the module checks; `partition` must already be a
/// congruence partition of a module.
pub(crate) fn build_quotient<W: Weight>(
    r: &Reachability,
    partition: &[Vec<usize>],
) -> Result<QuotientGraph<W>> {
    let reps: Vec<usize> = partition.iter().map(|b| b[0]).collect();
    let h = reps.len();
    let mut after = vec![FixedBitSet::with_capacity(h); h];
    let mut before = vec![FixedBitSet::with_capacity(h); h];
    for i in 0..h {
        for j in 0..h {
            if r.reaches(reps[i], reps[j]) {
                after[i].insert(j);
                before[j].insert(i);
            }
        }
    }
    let mut edges = Vec::new();
    for (i, succ) in after.iter().enumerate() {
        for j in succ.ones() {
            if succ.is_disjoint(&before[j]) {
                edges.push((i, j));
            }
        }
    }
    let costs = partition
        .iter()
        .map(|b| W::from_count(b.len()))
        .collect::<Result<_>>()?;
    Ok(QuotientGraph {
        dag: Dag::new(h, edges)?,
        costs,
        blocks: partition.iter().map(|b| sorted(b)).collect(),
    })
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

/// Every module and every strong module, found by testing all subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleCensus {
    pub modules: Vec<Vec<usize>>,
    pub strong: Vec<Vec<usize>>,
}

/// Exhaustive module oracle for graphs with at most
/// [`MODULE_ORACLE_BOUND`] vertices.
pub fn enumerate_all_modules(r: &Reachability) -> Result<ModuleCensus> {
    enumerate_all_modules_bounded(r, MODULE_ORACLE_BOUND)
}

pub fn enumerate_all_modules_bounded(r: &Reachability, bound: usize) -> Result<ModuleCensus> {
    let n = r.n();
    if n > bound || n >= usize::BITS as usize {
        return Err(Error::SearchBound { vertices: n, bound });
    }
    let as_vec = |mask: usize| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>();
    let masks: Vec<usize> = (1..1usize << n)
        .filter(|&mask| is_module(r, &as_vec(mask)).expect("non-empty"))
        .collect();
    let overlap = |a: usize, b: usize| a & b != 0 && a & !b != 0 && b & !a != 0;
    let strong = masks
        .iter()
        .filter(|&&a| masks.iter().all(|&b| !overlap(a, b)))
        .map(|&m| as_vec(m))
        .collect();
    Ok(ModuleCensus {
        modules: masks.iter().map(|&m| as_vec(m)).collect(),
        strong,
    })
}
