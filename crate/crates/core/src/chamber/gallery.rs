//! Galleries, projections onto panels and combinatorial convex hulls.

use super::{Building, ChamberId};
use crate::coxeter::GroupElement;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Largest gallery distance accepted by gallery enumeration.
pub const GALLERY_BOUND: usize = 48;

/// A gallery with its type word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gallery {
    pub chambers: Vec<ChamberId>,
    pub types: Vec<usize>,
}

impl Gallery {
    pub fn single(c: ChamberId) -> Self {
        Gallery {
            chambers: vec![c],
            types: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn first(&self) -> ChamberId {
        self.chambers[0]
    }

    pub fn last(&self) -> ChamberId {
        *self.chambers.last().expect("galleries are nonempty")
    }
}

impl Building {
    fn check_bound(&self, d: usize) -> Result<()> {
        if d > GALLERY_BOUND {
            Err(Error::BoundExceeded {
                what: "gallery length",
                value: d,
                bound: GALLERY_BOUND,
            })
        } else {
            Ok(())
        }
    }

    /// The chamber of the `s`-panel of `c` nearest to `d`.
    pub fn proj_panel(&self, c: ChamberId, s: usize, d: ChamberId) -> Result<ChamberId> {
        let mut best: Option<(usize, ChamberId)> = None;
        let mut tie = false;
        for e in self.panel(c, s)? {
            let k = self.distance(d, e)?;
            match best {
                Some((b, _)) if k > b => {}
                Some((b, _)) if k == b => tie = true,
                _ => {
                    best = Some((k, e));
                    tie = false;
                }
            }
        }
        if tie {
            return Err(Error::MalformedBuilding(format!(
                "no unique projection of {d} onto the {s}-panel of {c}"
            )));
        }
        Ok(best.expect("panels are nonempty").1)
    }

    /// Minimal galleries from `c` to `d` in lexicographic order of
    /// (type word, chamber keys), at most `limit` of them.
    pub fn minimal_galleries(&self, c: ChamberId, d: ChamberId, limit: usize) -> Result<Vec<Gallery>> {
        let total = self.distance(c, d)?;
        self.check_bound(total)?;
        let mut out = Vec::new();
        let mut path = Gallery::single(c);
        self.gallery_dfs(d, total, &mut path, limit, &mut out)?;
        Ok(out)
    }

    fn gallery_dfs(
        &self,
        d: ChamberId,
        remaining: usize,
        path: &mut Gallery,
        limit: usize,
        out: &mut Vec<Gallery>,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        if remaining == 0 {
            out.push(path.clone());
            return Ok(());
        }
        for (s, z) in self.neighbours(path.last())? {
            if self.distance(z, d)? + 1 == remaining {
                path.chambers.push(z);
                path.types.push(s);
                self.gallery_dfs(d, remaining - 1, path, limit, out)?;
                path.chambers.pop();
                path.types.pop();
                if out.len() >= limit {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Union of all minimal galleries from `c` to `d`.
    pub fn conv_chambers(&self, c: ChamberId, d: ChamberId) -> Result<BTreeSet<ChamberId>> {
        let total = self.distance(c, d)?;
        self.check_bound(total)?;
        let mut out = BTreeSet::from([c]);
        let mut layer = vec![c];
        for k in 1..=total {
            let mut next = BTreeSet::new();
            for &z in &layer {
                for (_, y) in self.neighbours(z)? {
                    if !next.contains(&y) && self.distance(y, d)? == total - k && self.distance(c, y)? == k {
                        next.insert(y);
                    }
                }
            }
            out.extend(next.iter().copied());
            layer = next.into_iter().collect();
        }
        Ok(out)
    }

    /// Whether `g` is a gallery: consecutive chambers distinct and adjacent
    /// with the recorded types.
    pub fn is_gallery(&self, g: &Gallery) -> Result<bool> {
        if g.chambers.len() != g.types.len() + 1 {
            return Ok(false);
        }
        for (k, &s) in g.types.iter().enumerate() {
            let (a, b) = (g.chambers[k], g.chambers[k + 1]);
            if a == b || !self.panel(a, s)?.contains(&b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether a gallery is minimal, decided by its length against `d_Ch`.
    pub fn is_minimal(&self, g: &Gallery) -> Result<bool> {
        Ok(self.is_gallery(g)? && self.distance(g.first(), g.last())? == g.len())
    }

    /// Normal form of a gallery's type word.
    pub fn gallery_type(&self, g: &Gallery) -> Result<GroupElement> {
        self.system().normal_form(&g.types)
    }
}
