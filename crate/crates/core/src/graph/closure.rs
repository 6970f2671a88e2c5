use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::Dag;

/// Transitive closure `G*` stored as one bitrow of descendants and one of
/// ancestors per vertex. `reaches(u, v)` is true iff a directed path `u -> v`
/// with `u != v` exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    n: usize,
    desc: Vec<FixedBitSet>,
    anc: Vec<FixedBitSet>,
}

impl Reachability {
    /// One BFS per vertex.
    pub fn new(g: &Dag) -> Self {
        let n = g.n();
        let mut desc = vec![FixedBitSet::with_capacity(n); n];
        let mut queue = VecDeque::new();
        for (s, row) in desc.iter_mut().enumerate() {
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in g.successors(u) {
                    if !row.put(v) {
                        queue.push_back(v);
                    }
                }
            }
        }
        Self::from_descendants(desc)
    }

    fn from_descendants(desc: Vec<FixedBitSet>) -> Self {
        let n = desc.len();
        let mut anc = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in desc.iter().enumerate() {
            for v in row.ones() {
                anc[v].insert(u);
            }
        }
        Reachability { n, desc, anc }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.desc[u].contains(v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.reaches(u, v) || self.reaches(v, u)
    }

    /// Neither `u -> v` nor `v -> u`. Calling this with `u == v` is a
    /// contract violation.
    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "incomparable() needs two distinct vertices");
        !self.comparable(u, v)
    }

    pub fn descendants(&self, u: usize) -> &FixedBitSet {
        &self.desc[u]
    }

    pub fn ancestors(&self, u: usize) -> &FixedBitSet {
        &self.anc[u]
    }

    /// All reachable ordered pairs, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.desc
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    pub fn pair_count(&self) -> usize {
        self.desc.iter().map(|row| row.count_ones(..)).sum::<usize>()
    }

    /// The closure as a DAG whose edges are all reachable pairs.
    pub fn to_dag(&self) -> Dag {
        Dag::new(self.n, self.pairs()).expect("a strict partial order is acyclic")
    }

    /// Restriction of the relation to `vertices`, relabelled to
    /// `0..vertices.len()` in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Reachability {
        let k = vertices.len();
        let desc = vertices
            .iter()
            .map(|&u| {
                let mut row = FixedBitSet::with_capacity(k);
                for (j, &v) in vertices.iter().enumerate() {
                    if self.reaches(u, v) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self::from_descendants(desc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_antichain, gen_chain, gen_crown, gen_random_dag};

    fn pairs(r: &Reachability) -> Vec<(usize, usize)> {
        r.pairs().collect()
    }

    #[test]
    fn chain_closure() {
        let r = Reachability::new(&gen_chain(3).unwrap());
        assert_eq!(pairs(&r), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(r.ancestors(2).contains(0));
    }

    #[test]
    fn antichain_closure_is_empty() {
        let r = Reachability::new(&gen_antichain(3).unwrap());
        assert_eq!(r.pair_count(), 0);
        assert!(r.incomparable(0, 1));
    }

    #[test]
    fn crown_is_already_transitive() {
        let g = gen_crown(3).unwrap();
        let r = Reachability::new(&g);
        assert_eq!(pairs(&r), g.edges().to_vec());
        // a_1 and b_1
        assert!(r.incomparable(0, 3));
    }

    #[test]
    fn incomparable_examples() {
        let r = Reachability::new(&gen_chain(2).unwrap());
        assert!(!r.incomparable(0, 1));
        let r = Reachability::new(&gen_antichain(2).unwrap());
        assert!(r.incomparable(0, 1));
    }

    #[test]
    #[should_panic]
    fn incomparable_same_vertex_panics() {
        let r = Reachability::new(&gen_chain(2).unwrap());
        r.incomparable(1, 1);
    }

    #[test]
    fn closure_is_idempotent() {
        for seed in 0..20 {
            let r = Reachability::new(&gen_random_dag(9, 0.3, seed).unwrap());
            assert_eq!(Reachability::new(&r.to_dag()), r);
        }
    }

    #[test]
    fn restrict_keeps_relation() {
        let r = Reachability::new(&gen_chain(4).unwrap());
        let s = r.restrict(&[3, 1]);
        assert!(s.reaches(1, 0));
        assert!(!s.reaches(0, 1));
    }
}
