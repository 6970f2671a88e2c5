//! DAG substrate: representation, edge-list I/O, generators, transitive
//! closure and linear-extension enumeration.

mod closure;
mod extensions;
mod generate;
mod parse;

use std::collections::HashSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use closure::Reachability;
pub use extensions::{count_linear_extensions, topological_orders, LinearExtensions};
pub use generate::{gen_antichain, gen_chain, gen_crown, gen_random_dag, Generator};
pub use parse::{parse_edge_list, write_edge_list};

/// A directed acyclic graph over the dense vertex ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    edges: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Dag {
    /// Build a DAG, rejecting self-loops, duplicate edges, out-of-range ids
    /// and cycles.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashSet::new();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            succ[u].push(v);
            pred[v].push(u);
            list.push((u, v));
        }
        for adj in succ.iter_mut().chain(pred.iter_mut()) {
            adj.sort_unstable();
        }
        list.sort_unstable();
        let dag = Dag {
            n,
            edges: list,
            succ,
            pred,
        };
        if dag.topological_sort().is_none() {
            return Err(Error::Cycle);
        }
        Ok(dag)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// Kahn's algorithm, smallest available id first. `None` on a cycle.
    fn topological_sort(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Some topological order of the graph.
    pub fn a_topological_order(&self) -> Vec<usize> {
        self.topological_sort().expect("Dag is acyclic by construction")
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Dag {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Dag::new(vertices.len(), edges).expect("induced subgraph of a DAG is a DAG")
    }
}
