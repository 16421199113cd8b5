//! Word problem by Tits' theorem alone: braid moves and cancellation of
//! repeated letters, with no root system. Slow; used as an independent
//! check of the normal forms on small balls.

use super::CoxeterSystem;
use std::collections::{BTreeSet, HashSet, VecDeque};

/// Rewriting oracle over one Coxeter matrix.
pub struct BraidOracle {
    rank: usize,
    m: Vec<u32>,
}

impl BraidOracle {
    pub fn new(w: &CoxeterSystem) -> Self {
        BraidOracle {
            rank: w.rank(),
            m: w.matrix().entries().to_vec(),
        }
    }

    fn braid_moves(&self, w: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            for j in 0..self.rank {
                let m = self.m[w[i] * self.rank + j] as usize;
                if m < 2 || j == w[i] || i + m > w.len() {
                    continue;
                }
                let (a, b) = (w[i], j);
                let alt = |x: usize, y: usize, k: usize| if k.is_multiple_of(2) { x } else { y };
                if (0..m).all(|k| w[i + k] == alt(a, b, k)) {
                    let mut v = w.to_vec();
                    for k in 0..m {
                        v[i + k] = alt(b, a, k);
                    }
                    out.push(v);
                }
            }
        }
        out
    }

    /// Least ShortLex reduced word for the element of `w`.
    pub fn reduce(&self, w: &[usize]) -> Vec<usize> {
        let mut cur = w.to_vec();
        'outer: loop {
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(cur.clone());
            queue.push_back(cur.clone());
            while let Some(v) = queue.pop_front() {
                if let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] == v[i + 1]) {
                    let mut shorter = v.clone();
                    shorter.drain(i..i + 2);
                    cur = shorter;
                    continue 'outer;
                }
                for x in self.braid_moves(&v) {
                    if seen.insert(x.clone()) {
                        queue.push_back(x);
                    }
                }
            }
            return seen.into_iter().min().unwrap();
        }
    }

    /// Cayley-graph BFS ball keyed by oracle normal forms.
    pub fn ball(&self, radius: usize) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        seen.insert((0, vec![]));
        let mut layer = vec![vec![]];
        for r in 1..=radius {
            let mut next = BTreeSet::new();
            for w in &layer {
                for s in 0..self.rank {
                    let mut v: Vec<usize> = w.clone();
                    v.push(s);
                    let nf = self.reduce(&v);
                    if nf.len() == r {
                        next.insert(nf);
                    }
                }
            }
            layer = next.into_iter().collect();
            seen.extend(layer.iter().map(|w| (w.len(), w.clone())));
        }
        seen.into_iter().map(|(_, w)| w).collect()
    }
}
