use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Dag;
use crate::error::{Error, Result};

/// Path `0 -> 1 -> ... -> n-1`.
pub fn gen_chain(n: usize) -> Result<Dag> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    Dag::new(n, (1..n).map(|i| (i - 1, i)))
}

/// `n` isolated vertices.
pub fn gen_antichain(n: usize) -> Result<Dag> {
    Dag::new(n, [])
}

/// The crown `S_n^0`: minima `a_i = i`, maxima `b_j = n + j` and an edge
/// `a_i -> b_j` for every `i != j`.
pub fn gen_crown(n: usize) -> Result<Dag> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)));
    Dag::new(2 * n, edges)
}

/// Random DAG where each forward pair `(i, j)`, `i < j`, is an edge with
/// probability `edge_prob`. Reproducible for a given seed.
pub fn gen_random_dag(n: usize, edge_prob: f64, seed: u64) -> Result<Dag> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::BadProbability(edge_prob));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j));
            }
        }
    }
    Dag::new(n, edges)
}

/// A generator description such as `chain:5`, `crown:3` or `random:10,0.3,42`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Chain(usize),
    Antichain(usize),
    Crown(usize),
    Random { n: usize, p: f64, seed: u64 },
}

impl Generator {
    pub fn generate(&self) -> Result<Dag> {
        match *self {
            Generator::Chain(n) => gen_chain(n),
            Generator::Antichain(n) => gen_antichain(n),
            Generator::Crown(n) => gen_crown(n),
            Generator::Random { n, p, seed } => gen_random_dag(n, p, seed),
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| format!("expected kind:args, got {s:?}"))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |a: &str| a.parse::<usize>().map_err(|e| format!("{a:?}: {e}"));
        match (kind, args.as_slice()) {
            ("chain", [n]) => Ok(Generator::Chain(int(n)?)),
            ("antichain", [n]) => Ok(Generator::Antichain(int(n)?)),
            ("crown", [n]) => Ok(Generator::Crown(int(n)?)),
            ("random", [n, p, seed]) => Ok(Generator::Random {
                n: int(n)?,
                p: p.parse().map_err(|e| format!("{p:?}: {e}"))?,
                seed: seed.parse().map_err(|e| format!("{seed:?}: {e}"))?,
            }),
            _ => Err(format!(
                "unknown generator {s:?}; expected chain:n, antichain:n, crown:n or random:n,p,seed"
            )),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Chain(n) => write!(f, "chain:{n}"),
            Generator::Antichain(n) => write!(f, "antichain:{n}"),
            Generator::Crown(n) => write!(f, "crown:{n}"),
            Generator::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
        }
    }
}
