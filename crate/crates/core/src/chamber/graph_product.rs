//! Graph products of finite cyclic groups over a simple graph.
//!
//! Elements are reduced syllable sequences `(vertex, exponent)`. Syllables of
//! adjacent vertices commute; the canonical form is the lexicographically
//! least shuffle by vertex index.

use crate::error::{Error, Result};

pub(crate) type Syllable = (u8, u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GraphProduct {
    pub(crate) orders: Vec<u8>,
    adjacent: Vec<bool>,
}

impl GraphProduct {
    pub(crate) fn new(orders: Vec<u8>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = orders.len();
        if n == 0 {
            return Err(Error::MalformedBuilding("graph product needs a vertex".into()));
        }
        if let Some(q) = orders.iter().find(|&&q| q < 2) {
            return Err(Error::MalformedBuilding(format!("vertex order {q} < 2")));
        }
        let mut adjacent = vec![false; n * n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::MalformedBuilding(format!("bad edge {a}-{b}")));
            }
            if adjacent[a * n + b] {
                return Err(Error::MalformedBuilding(format!("repeated edge {a}-{b}")));
            }
            adjacent[a * n + b] = true;
            adjacent[b * n + a] = true;
        }
        Ok(GraphProduct { orders, adjacent })
    }

    pub(crate) fn rank(&self) -> usize {
        self.orders.len()
    }

    pub(crate) fn commute(&self, a: u8, b: u8) -> bool {
        self.adjacent[a as usize * self.rank() + b as usize]
    }

    /// `g ← g·(v, a)` on a reduced sequence.
    pub(crate) fn push(&self, g: &mut Vec<Syllable>, (v, a): Syllable) {
        let q = self.orders[v as usize];
        let a = a % q;
        if a == 0 {
            return;
        }
        for i in (0..g.len()).rev() {
            let (w, b) = g[i];
            if w == v {
                let c = (b + a) % q;
                if c == 0 {
                    g.remove(i);
                } else {
                    g[i].1 = c;
                }
                return;
            }
            if !self.commute(w, v) {
                break;
            }
        }
        g.push((v, a));
    }

    pub(crate) fn inverse(&self, g: &[Syllable]) -> Vec<Syllable> {
        g.iter().rev().map(|&(v, a)| (v, self.orders[v as usize] - a)).collect()
    }

    /// Reduced `g⁻¹ h`, not canonicalized.
    pub(crate) fn quotient(&self, g: &[Syllable], h: &[Syllable]) -> Vec<Syllable> {
        let mut out = self.inverse(g);
        for &x in h {
            self.push(&mut out, x);
        }
        out
    }

    pub(crate) fn product(&self, g: &[Syllable], h: &[Syllable]) -> Vec<Syllable> {
        let mut out = g.to_vec();
        for &x in h {
            self.push(&mut out, x);
        }
        out
    }

    /// Lexicographically least shuffle of a reduced sequence.
    pub(crate) fn canonical(&self, mut g: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(g.len());
        while !g.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..g.len() {
                let v = g[i].0;
                if best.is_some_and(|b| g[b].0 <= v) {
                    continue;
                }
                if g[..i].iter().all(|&(w, _)| self.commute(w, v)) {
                    best = Some(i);
                }
            }
            out.push(g.remove(best.expect("a reduced sequence has a movable syllable")));
        }
        out
    }

    pub(crate) fn encode(g: &[Syllable]) -> Box<[u16]> {
        g.iter().map(|&(v, a)| (v as u16) << 8 | a as u16).collect()
    }

    pub(crate) fn decode(key: &[u16]) -> Vec<Syllable> {
        key.iter().map(|&k| ((k >> 8) as u8, (k & 0xff) as u8)).collect()
    }
}
