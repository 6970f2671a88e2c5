//! Reachability queries answered from a weak dominance drawing.
//!
//! If `u` comes after `v` in any dimension there is no path `u -> v`
//! (every dimension is a topological order), so the drawing is a negative
//! certificate checked in `O(d)`. Pairs dominated in every dimension may be
//! genuine paths or fips; those fall back to a graph search. Fewer fips
//! means fewer searches that come back empty.

use std::collections::VecDeque;

use serde::Serialize;

use crate::drawing::{check_valid, Drawing};
use crate::error::{Error, Result};
use crate::graph::Dag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Reachable,
    NotReachable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Certificate,
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    pub answer: Answer,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IndexStats {
    pub queries: u64,
    #[serde(rename = "certificates")]
    pub negative_certificates: u64,
    pub fallbacks: u64,
    /// Fallback searches that found no path: the fips of the drawing.
    pub fallback_fips: u64,
}

pub struct Index {
    n: usize,
    d: usize,
    /// `ranks[v * d + dim]`, 0-based.
    ranks: Vec<u32>,
    succ: Vec<Vec<usize>>,
}

impl Index {
    pub fn build(g: &Dag, drawing: &Drawing) -> Result<Self> {
        check_valid(g, drawing)?;
        let (n, d) = (g.n(), drawing.d());
        let mut ranks = vec![0u32; n * d];
        for v in 0..n {
            for dim in 0..d {
                ranks[v * d + dim] = drawing.position(dim, v) as u32;
            }
        }
        Ok(Index {
            n,
            d,
            ranks,
            succ: (0..n).map(|v| g.successors(v).to_vec()).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn rank(&self, v: usize) -> &[u32] {
        &self.ranks[v * self.d..(v + 1) * self.d]
    }

    pub fn query(&self, u: usize, v: usize) -> Result<QueryResult> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let (ru, rv) = (self.rank(u), self.rank(v));
        if ru.iter().zip(rv).any(|(a, b)| a > b) {
            return Ok(QueryResult {
                answer: Answer::NotReachable,
                method: Method::Certificate,
            });
        }
        let answer = if self.search(u, v) {
            Answer::Reachable
        } else {
            Answer::NotReachable
        };
        Ok(QueryResult {
            answer,
            method: Method::Fallback,
        })
    }

    /// BFS from `u`, skipping vertices ranked after `v` in dimension 0:
    /// nothing there can lie on a path to `v`.
    fn search(&self, u: usize, v: usize) -> bool {
        let limit = self.rank(v)[0];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &self.succ[x] {
                if y == v {
                    return true;
                }
                if !seen[y] && self.rank(y)[0] < limit {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Query every ordered pair of distinct vertices.
    pub fn sweep_stats(&self) -> IndexStats {
        let mut stats = IndexStats::default();
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let res = self.query(u, v).expect("ids in range");
                stats.queries += 1;
                match res.method {
                    Method::Certificate => stats.negative_certificates += 1,
                    Method::Fallback => {
                        stats.fallbacks += 1;
                        if res.answer == Answer::NotReachable {
                            stats.fallback_fips += 1;
                        }
                    }
                }
            }
        }
        stats
    }
}
