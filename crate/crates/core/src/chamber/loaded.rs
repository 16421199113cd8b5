//! Finite chamber systems given by explicit panel partitions.

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::error::{Error, Result};
use parking_lot::Mutex;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

#[derive(Debug)]
pub(crate) struct Loaded {
    pub(crate) count: usize,
    /// `blocks[s][b]`: chambers of the `b`-th `s`-panel, sorted.
    pub(crate) blocks: Vec<Vec<Vec<usize>>>,
    /// `block_of[s][c]`: index of the `s`-panel containing `c`.
    pub(crate) block_of: Vec<Vec<usize>>,
    rows: Mutex<HashMap<usize, Arc<Vec<Option<(usize, GroupElement)>>>>>,
}

impl Loaded {
    pub(crate) fn new(rank: usize, count: usize, mut blocks: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if count == 0 {
            return Err(Error::MalformedBuilding("no chambers".into()));
        }
        if blocks.len() != rank {
            return Err(Error::MalformedBuilding(format!(
                "panels given for {} generators, rank is {rank}",
                blocks.len()
            )));
        }
        let mut block_of = vec![vec![usize::MAX; count]; rank];
        for (s, parts) in blocks.iter_mut().enumerate() {
            for (b, part) in parts.iter_mut().enumerate() {
                part.sort_unstable();
                for &c in part.iter() {
                    if c >= count {
                        return Err(Error::MalformedBuilding(format!("chamber {c} out of range")));
                    }
                    if block_of[s][c] != usize::MAX {
                        return Err(Error::MalformedBuilding(format!("chamber {c} lies in two {s}-panels")));
                    }
                    block_of[s][c] = b;
                }
            }
            if let Some(c) = block_of[s].iter().position(|&b| b == usize::MAX) {
                return Err(Error::MalformedBuilding(format!("chamber {c} has no {s}-panel")));
            }
        }
        Ok(Loaded {
            count,
            blocks,
            block_of,
            rows: Mutex::new(HashMap::new()),
        })
    }

    pub(crate) fn panel(&self, c: usize, s: usize) -> &[usize] {
        &self.blocks[s][self.block_of[s][c]]
    }

    /// Gallery distances and Weyl distances from `c`, the latter read off the
    /// types of breadth-first galleries.
    pub(crate) fn row(&self, w: &CoxeterSystem, c: usize) -> Arc<Vec<Option<(usize, GroupElement)>>> {
        if let Some(r) = self.rows.lock().get(&c) {
            return r.clone();
        }
        let rank = self.blocks.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.count];
        let mut seen = vec![false; self.count];
        seen[c] = true;
        let mut order = vec![c];
        let mut queue = VecDeque::from([c]);
        while let Some(a) = queue.pop_front() {
            for s in 0..rank {
                for &b in self.panel(a, s) {
                    if !seen[b] {
                        seen[b] = true;
                        parent[b] = Some((a, s));
                        order.push(b);
                        queue.push_back(b);
                    }
                }
            }
        }
        let mut row: Vec<Option<(usize, GroupElement)>> = vec![None; self.count];
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); self.count];
        row[c] = Some((0, GroupElement::identity()));
        for &b in &order[1..] {
            let (a, s) = parent[b].expect("visited chamber has a parent");
            let mut word = words[a].clone();
            word.push(s);
            row[b] = Some((word.len(), w.normal_form(&word).expect("letters below rank")));
            words[b] = word;
        }
        let row = Arc::new(row);
        self.rows.lock().insert(c, row.clone());
        row
    }
}
