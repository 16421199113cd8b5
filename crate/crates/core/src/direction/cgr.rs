//! Combinatorial geodesic rays with a periodic tail.

use crate::chamber::{Building, ChamberId, Gallery, Translation};
use crate::error::Result;

/// A ray `lead · period · g(period) · g²(period) · …` where `g` is a
/// translation taking the first chamber of `period` to its last.
#[derive(Debug, Clone)]
pub struct Cgr {
    pub lead: Gallery,
    pub period: Gallery,
    pub(crate) translation: Translation,
}

impl Cgr {
    /// Chamber base of the periodic tail.
    pub fn tail_base(&self) -> ChamberId {
        self.lead.last()
    }

    pub fn start(&self) -> ChamberId {
        self.lead.first()
    }

    pub fn translation(&self) -> &Translation {
        &self.translation
    }

    /// Index of the tail base translated `j` times.
    pub fn checkpoint(&self, j: usize) -> usize {
        self.lead.len() + j * self.period.len()
    }

    /// The `n`-th chamber of the ray.
    pub fn chamber(&self, b: &Building, n: usize) -> Result<ChamberId> {
        if n <= self.lead.len() {
            return Ok(self.lead.chambers[n]);
        }
        let m = n - self.lead.len();
        let l = self.period.len();
        let (j, r) = (m / l, m % l);
        b.translate(&self.translation, self.period.chambers[r], j as i64)
    }

    /// The first `n + 1` chambers as a gallery.
    pub fn prefix(&self, b: &Building, n: usize) -> Result<Gallery> {
        let mut g = Gallery::single(self.start());
        for k in 1..=n {
            g.chambers.push(self.chamber(b, k)?);
            let t = if k <= self.lead.len() {
                self.lead.types[k - 1]
            } else {
                self.period.types[(k - self.lead.len() - 1) % self.period.len()]
            };
            g.types.push(t);
        }
        Ok(g)
    }

    /// The ray with `head` prepended; `head` must end at the start of the ray.
    pub fn prepend(&self, head: &Gallery) -> Cgr {
        debug_assert_eq!(head.last(), self.start());
        let mut lead = head.clone();
        lead.chambers.extend_from_slice(&self.lead.chambers[1..]);
        lead.types.extend_from_slice(&self.lead.types);
        Cgr {
            lead,
            period: self.period.clone(),
            translation: self.translation.clone(),
        }
    }
}
