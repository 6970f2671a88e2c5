//! Weak dominance drawings as tuples of topological orders, and the
//! operations on them: fip enumeration and costing, compactness,
//! separators and the compaction of a module.

use serde::{Deserialize, Serialize};

use crate::decomposition::is_module;
use crate::error::{Error, Result};
use crate::graph::{Dag, Reachability};
use crate::weight::{add_cost, pair_cost, Weight};

/// A `d`-dimensional drawing. Dimension `D` is a permutation of the
/// vertices; the coordinate of `v` in `D` is its 1-based rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DrawingRepr", into = "DrawingRepr")]
pub struct Drawing {
    orders: Vec<Vec<usize>>,
    #[serde(skip)]
    pos: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DrawingRepr {
    d: usize,
    orders: Vec<Vec<usize>>,
}

impl TryFrom<DrawingRepr> for Drawing {
    type Error = Error;

    fn try_from(repr: DrawingRepr) -> Result<Self> {
        if repr.d != repr.orders.len() {
            return Err(Error::BadDrawing(format!(
                "d = {} but {} orders given",
                repr.d,
                repr.orders.len()
            )));
        }
        Drawing::new(repr.orders)
    }
}

impl From<Drawing> for DrawingRepr {
    fn from(d: Drawing) -> Self {
        DrawingRepr {
            d: d.orders.len(),
            orders: d.orders,
        }
    }
}

impl Drawing {
    pub fn new(orders: Vec<Vec<usize>>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::ZeroDimensions);
        }
        let n = orders[0].len();
        if n == 0 {
            return Err(Error::BadDrawing("no vertices".into()));
        }
        let mut pos = Vec::with_capacity(orders.len());
        for (dim, order) in orders.iter().enumerate() {
            if order.len() != n {
                return Err(Error::BadDrawing(format!(
                    "dimension {dim} has {} entries, expected {n}",
                    order.len()
                )));
            }
            let mut p = vec![usize::MAX; n];
            for (i, &v) in order.iter().enumerate() {
                if v >= n || p[v] != usize::MAX {
                    return Err(Error::BadDrawing(format!(
                        "dimension {dim} is not a permutation of 0..{n}"
                    )));
                }
                p[v] = i;
            }
            pos.push(p);
        }
        Ok(Drawing { orders, pos })
    }

    /// Number of dimensions.
    pub fn d(&self) -> usize {
        self.orders.len()
    }

    pub fn n(&self) -> usize {
        self.orders[0].len()
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn order(&self, dim: usize) -> &[usize] {
        &self.orders[dim]
    }

    pub fn into_orders(self) -> Vec<Vec<usize>> {
        self.orders
    }

    /// 0-based position of `v` in dimension `dim`.
    pub fn position(&self, dim: usize, v: usize) -> usize {
        self.pos[dim][v]
    }

    /// 1-based coordinate of `v` in dimension `dim`.
    pub fn coord(&self, dim: usize, v: usize) -> usize {
        self.pos[dim][v] + 1
    }

    /// `u` precedes `v` in every dimension.
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.pos.iter().all(|p| p[u] < p[v])
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::BadDrawing(format!(
                "drawing has {} vertices, graph has {n}",
                self.n()
            )));
        }
        Ok(())
    }
}

/// Check that every dimension is a topological order of `g`, naming the
/// first offending dimension and edge.
pub fn check_valid(g: &Dag, drawing: &Drawing) -> Result<()> {
    drawing.check_size(g.n())?;
    for dim in 0..drawing.d() {
        if let Some(&(u, v)) = g
            .edges()
            .iter()
            .find(|&&(u, v)| drawing.position(dim, u) > drawing.position(dim, v))
        {
            return Err(Error::NotTopological { dim, u, v });
        }
    }
    Ok(())
}

/// `true` iff every dimension is a topological order of `g`. Errors only
/// when the drawing does not have `g`'s vertex count.
pub fn validate(g: &Dag, drawing: &Drawing) -> Result<bool> {
    match check_valid(g, drawing) {
        Ok(()) => Ok(true),
        Err(Error::NotTopological { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FipClass {
    Inner,
    Outer,
}

/// The falsely implied paths of a drawing together with their total cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FipReport<W: Weight = u64> {
    pub fips: Vec<(usize, usize)>,
    pub count: usize,
    pub cost: W,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<FipClass>>,
}

impl<W: Weight> FipReport<W> {
    /// Report for an explicit fip list under per-vertex `costs`.
    pub fn from_pairs(fips: Vec<(usize, usize)>, costs: &[W]) -> Result<Self> {
        let mut cost = W::zero();
        for &(u, v) in &fips {
            let (cu, cv) = match (costs.get(u), costs.get(v)) {
                (Some(&cu), Some(&cv)) => (cu, cv),
                _ => {
                    return Err(Error::VertexOutOfRange {
                        vertex: u.max(v),
                        n: costs.len(),
                    })
                }
            };
            cost = add_cost(cost, pair_cost(cu, cv)?)?;
        }
        Ok(FipReport {
            count: fips.len(),
            fips,
            cost,
            classes: None,
        })
    }

    /// Fips classified [`FipClass::Inner`], if classified.
    pub fn inner(&self) -> Vec<(usize, usize)> {
        self.with_class(FipClass::Inner)
    }

    pub fn outer(&self) -> Vec<(usize, usize)> {
        self.with_class(FipClass::Outer)
    }

    fn with_class(&self, class: FipClass) -> Vec<(usize, usize)> {
        let Some(classes) = &self.classes else {
            return Vec::new();
        };
        self.fips
            .iter()
            .zip(classes)
            .filter(|(_, &c)| c == class)
            .map(|(&f, _)| f)
            .collect()
    }
}

/// Enumerate every fip: ordered incomparable pairs `(u, v)` with `u` before
/// `v` in all dimensions. Costs default to 1 per vertex.
pub fn fips<W: Weight>(
    r: &Reachability,
    drawing: &Drawing,
    costs: Option<&[W]>,
) -> Result<FipReport<W>> {
    drawing.check_size(r.n())?;
    let pairs = fip_pairs(r, drawing);
    match costs {
        Some(c) => {
            if c.len() != r.n() {
                return Err(Error::BadDrawing(format!(
                    "{} costs for {} vertices",
                    c.len(),
                    r.n()
                )));
            }
            FipReport::from_pairs(pairs, c)
        }
        None => {
            let count = pairs.len();
            Ok(FipReport {
                fips: pairs,
                count,
                cost: W::from_count(count)?,
                classes: None,
            })
        }
    }
}

fn fip_pairs(r: &Reachability, drawing: &Drawing) -> Vec<(usize, usize)> {
    let n = r.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && drawing.dominates(u, v) && !r.comparable(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Number of fips with unit costs.
pub fn fip_count(r: &Reachability, drawing: &Drawing) -> usize {
    fip_pairs(r, drawing).len()
}

fn block_index(n: usize, partition: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut block = vec![None; n];
    for (i, b) in partition.iter().enumerate() {
        for &v in b {
            if v < n {
                block[v] = Some(i);
            }
        }
    }
    block
}

/// Tag each fip inner (both ends in one block) or outer.
pub fn classify_fips<W: Weight>(
    report: &FipReport<W>,
    partition: &[Vec<usize>],
) -> Result<FipReport<W>> {
    let n = report
        .fips
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0)
        .max(partition.iter().flatten().map(|&v| v + 1).max().unwrap_or(0));
    let block = block_index(n, partition);
    let classes = report
        .fips
        .iter()
        .map(|&(u, v)| match (block[u], block[v]) {
            (Some(a), Some(b)) => Ok(if a == b {
                FipClass::Inner
            } else {
                FipClass::Outer
            }),
            _ => Err(Error::BadPartition(format!(
                "fip ({u}, {v}) has an endpoint outside the partition"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FipReport {
        classes: Some(classes),
        ..report.clone()
    })
}

/// Module members occupy consecutive positions in every dimension.
pub fn is_compact(drawing: &Drawing, module: &[usize]) -> bool {
    (0..drawing.d()).all(|dim| is_compact_in(drawing, module, dim))
}

pub fn is_compact_in(drawing: &Drawing, module: &[usize], dim: usize) -> bool {
    match span(drawing, module, dim) {
        Some((lo, hi)) => hi - lo + 1 == module.len(),
        None => true,
    }
}

fn span(drawing: &Drawing, module: &[usize], dim: usize) -> Option<(usize, usize)> {
    let positions = module.iter().map(|&v| drawing.position(dim, v));
    let lo = positions.clone().min()?;
    let hi = positions.max()?;
    Some((lo, hi))
}

/// Vertices outside `module` lying strictly between two members in `dim`,
/// in drawing order.
pub fn separator(drawing: &Drawing, module: &[usize], dim: usize) -> Vec<usize> {
    let Some((lo, hi)) = span(drawing, module, dim) else {
        return Vec::new();
    };
    let inside = membership(drawing.n(), module);
    drawing.order(dim)[lo..=hi]
        .iter()
        .copied()
        .filter(|&v| !inside[v])
        .collect()
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    inside
}

/// For each vertex of `module`, the number of fips joining it to a vertex
/// outside the module.
pub fn outer_fip_counts(r: &Reachability, drawing: &Drawing, module: &[usize]) -> Vec<usize> {
    let inside = membership(r.n(), module);
    module
        .iter()
        .map(|&v| {
            (0..r.n())
                .filter(|&w| !inside[w] && !r.comparable(v, w))
                .filter(|&w| drawing.dominates(v, w) || drawing.dominates(w, v))
                .count()
        })
        .collect()
}

/// Result of compacting a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compaction {
    pub drawing: Drawing,
    /// The module vertex that never moves.
    pub pivot: usize,
    /// Outer-fip count of the pivot, which after compaction is the
    /// outer-fip count of every module vertex.
    pub pivot_outer_fips: usize,
}

/// Make `module` compact in every dimension without adding fips.
pub fn compaction(r: &Reachability, drawing: &Drawing, module: &[usize]) -> Result<Drawing> {
    compaction_detailed(r, drawing, module).map(|c| c.drawing)
}

/// Compaction around the module vertex `p` with the fewest outer fips
/// (smallest id on ties). In each dimension, module members left of `p`
/// swap rightwards past adjacent separator vertices and members right of
/// `p` swap leftwards, until the module is a block around `p`. Only pairs
/// (member, separator vertex) change relative order, and those are
/// incomparable, so every dimension stays a topological order.
pub fn compaction_detailed(
    r: &Reachability,
    drawing: &Drawing,
    module: &[usize],
) -> Result<Compaction> {
    drawing.check_size(r.n())?;
    if !is_module(r, module)? {
        let mut m = module.to_vec();
        m.sort_unstable();
        return Err(Error::NotModule(m));
    }
    let outer = outer_fip_counts(r, drawing, module);
    let (pivot, pivot_outer_fips) = module
        .iter()
        .zip(&outer)
        .map(|(&v, &o)| (v, o))
        .min_by_key(|&(v, o)| (o, v))
        .expect("module is non-empty");

    let inside = membership(r.n(), module);
    let mut orders = drawing.orders().to_vec();
    for (dim, order) in orders.iter_mut().enumerate() {
        let sep = membership(r.n(), &separator(drawing, module, dim));
        let p = drawing.position(dim, pivot);
        let mut i = 0;
        while i + 1 < order.len() {
            let (a, b) = (order[i], order[i + 1]);
            let eligible = (inside[a] && sep[b] && i + 1 < p) || (sep[a] && inside[b] && i > p);
            if eligible {
                order.swap(i, i + 1);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
    }
    Ok(Compaction {
        drawing: Drawing::new(orders)?,
        pivot,
        pivot_outer_fips,
    })
}

/// Contract every block of a compact partition to one vertex. Block `i`
/// becomes vertex `i` of the result.
pub fn contract(drawing: &Drawing, partition: &[Vec<usize>]) -> Result<Drawing> {
    let block = block_index(drawing.n(), partition);
    if let Some(v) = block.iter().position(Option::is_none) {
        return Err(Error::BadPartition(format!("vertex {v} is in no block")));
    }
    if let Some(b) = partition.iter().find(|b| !is_compact(drawing, b)) {
        return Err(Error::NotCompact(b.clone()));
    }
    let orders = drawing
        .orders()
        .iter()
        .map(|order| {
            let mut out: Vec<usize> = Vec::with_capacity(partition.len());
            for &v in order {
                let b = block[v].expect("checked above");
                if out.last() != Some(&b) {
                    out.push(b);
                }
            }
            out
        })
        .collect();
    Drawing::new(orders)
}
