use super::Dag;

/// Lexicographic enumeration of the linear extensions (topological orders)
/// of a DAG by backtracking over the currently minimal vertices, smallest
/// id first.
pub struct LinearExtensions<'a> {
    g: &'a Dag,
    indeg: Vec<usize>,
    placed: Vec<bool>,
    order: Vec<usize>,
    frames: Vec<Frame>,
    done: bool,
}

struct Frame {
    candidates: Vec<usize>,
    next: usize,
}

impl<'a> LinearExtensions<'a> {
    pub fn new(g: &'a Dag) -> Self {
        let mut it = Self::empty(g);
        let sources = it.minimal();
        it.frames.push(Frame {
            candidates: sources,
            next: 0,
        });
        it.done = false;
        it
    }

    /// Only the extensions whose first vertex is `first`. The sub-streams for
    /// distinct `first` partition the full stream and can be consumed
    /// independently.
    pub fn starting_with(g: &'a Dag, first: usize) -> Self {
        let mut it = Self::empty(g);
        if first < g.n() && it.indeg[first] == 0 {
            it.frames.push(Frame {
                candidates: vec![first],
                next: 0,
            });
            it.done = false;
        }
        it
    }

    fn empty(g: &'a Dag) -> Self {
        LinearExtensions {
            g,
            indeg: (0..g.n()).map(|v| g.predecessors(v).len()).collect(),
            placed: vec![false; g.n()],
            order: Vec::with_capacity(g.n()),
            frames: Vec::with_capacity(g.n()),
            done: true,
        }
    }

    fn minimal(&self) -> Vec<usize> {
        (0..self.g.n())
            .filter(|&v| !self.placed[v] && self.indeg[v] == 0)
            .collect()
    }

    fn place(&mut self, v: usize) {
        self.order.push(v);
        self.placed[v] = true;
        for &w in self.g.successors(v) {
            self.indeg[w] -= 1;
        }
    }

    fn unplace(&mut self) {
        let v = self.order.pop().expect("non-empty prefix");
        self.placed[v] = false;
        for &w in self.g.successors(v) {
            self.indeg[w] += 1;
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.order.len() == self.g.n() {
            self.unplace();
        }
        loop {
            let Some(frame) = self.frames.last_mut() else {
                self.done = true;
                return None;
            };
            if frame.next < frame.candidates.len() {
                let v = frame.candidates[frame.next];
                frame.next += 1;
                self.place(v);
                if self.order.len() == self.g.n() {
                    return Some(self.order.clone());
                }
                let candidates = self.minimal();
                self.frames.push(Frame {
                    candidates,
                    next: 0,
                });
            } else {
                self.frames.pop();
                if self.frames.is_empty() {
                    self.done = true;
                    return None;
                }
                self.unplace();
            }
        }
    }
}

/// Stream of all topological orders of `g`, lexicographically ascending.
pub fn topological_orders(g: &Dag) -> LinearExtensions<'_> {
    LinearExtensions::new(g)
}

/// Number of linear extensions by dynamic programming over down-sets.
/// `None` when `n > 24` (table too large) or the count overflows.
pub fn count_linear_extensions(g: &Dag) -> Option<u128> {
    let n = g.n();
    if n > 24 {
        return None;
    }
    let pred_mask: Vec<u32> = (0..n)
        .map(|v| g.predecessors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full = (1usize << n) - 1;
    let mut ways = vec![0u128; full + 1];
    ways[0] = 1;
    for set in 0..full {
        let w = ways[set];
        if w == 0 {
            continue;
        }
        for (v, &preds) in pred_mask.iter().enumerate() {
            let bit = 1usize << v;
            if set & bit == 0 && (preds as usize) & !set == 0 {
                ways[set | bit] = ways[set | bit].checked_add(w)?;
            }
        }
    }
    Some(ways[full])
}
