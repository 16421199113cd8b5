//! Combinatorial sectors `Q(x, ξ)` towards a class `ξ` of a direction.
//!
//! `Q(x, ξ)` is the set of chambers lying in `Conv(x, r_n)` for all large
//! `n`, for any sequence `r_n` converging to `ξ`; here `r_n` runs over the
//! periodic checkpoints of the straight ray from a representative of `ξ`.
//! Sectors are closed under taking chambers on minimal galleries back to
//! `x`, so they are grown breadth first from `x`.

use crate::chamber::{Building, ChamberId};
use crate::direction::{ClassTable, Direction, Extension};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap};


/// A class of `~η`, named by an index and a representative chamber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransversalChamber {
    pub id: usize,
    pub representative: ChamberId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorSlice {
    pub base: ChamberId,
    pub target: TransversalChamber,
    pub radius: usize,
    pub chambers: BTreeSet<ChamberId>,
    pub stabilized: bool,
    /// First checkpoint period of the accepted window.
    pub periods: usize,
}

/// Chambers with an explicit witness ray, those whose test failed with a
/// horizon or stabilization error, and (for sectors) those for which no
/// witness turned up within the horizon.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleSlice {
    pub chambers: BTreeSet<ChamberId>,
    pub indeterminate: BTreeSet<ChamberId>,
    pub unwitnessed: BTreeSet<ChamberId>,
}

/// `Q(x, ξ_x)` together with the classes where `Q(x, ξ_x) = Q(x, ξ) ∩ Φη(x)`
/// failed or could not be decided.
#[derive(Debug, Clone)]
pub struct MinimalSector {
    pub slice: SectorSlice,
    pub identity_failures: Vec<TransversalChamber>,
    pub unstabilized: Vec<TransversalChamber>,
}

impl ClassTable {
    /// One transversal chamber per class, represented by its least member.
    pub fn transversal_chambers(&self) -> Vec<TransversalChamber> {
        self.classes
            .iter()
            .enumerate()
            .map(|(id, c)| TransversalChamber {
                id,
                representative: c[0],
            })
            .collect()
    }
}

/// Breadth-first growth from `x` of a set closed under predecessors,
/// up to distance `radius`.
pub(crate) fn grow(
    b: &Building,
    x: ChamberId,
    radius: usize,
    mut keep: impl FnMut(ChamberId) -> Result<bool>,
) -> Result<BTreeSet<ChamberId>> {
    let mut out = BTreeSet::new();
    if !keep(x)? {
        return Ok(out);
    }
    out.insert(x);
    let mut layer = vec![x];
    for depth in 0..radius {
        let mut next = BTreeMap::new();
        for &z in &layer {
            for (_, y) in b.neighbours(z)? {
                if next.contains_key(&y) || b.distance(x, y)? != depth + 1 {
                    continue;
                }
                next.insert(y, ());
            }
        }
        layer.clear();
        for y in next.into_keys() {
            if keep(y)? {
                out.insert(y);
                layer.push(y);
            }
        }
        if layer.is_empty() {
            break;
        }
    }
    Ok(out)
}

impl Direction {
    /// The class of `x` among `classes`, decided by `phi_equal`.
    pub fn class_among(
        &self,
        b: &Building,
        x: ChamberId,
        classes: &[TransversalChamber],
    ) -> Result<Option<TransversalChamber>> {
        for &c in classes {
            if self.phi_equal(b, x, c.representative)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// First checkpoint period used for sectors of radius `radius`: far
    /// enough that the checkpoints lie beyond twice the radius.
    fn first_period(&self, radius: usize) -> usize {
        let l = self.period().len();
        self.window().max((2 * radius).div_ceil(l) + 1)
    }

    /// Chambers within `radius` of `x` lying in `Conv(x, r)` for the
    /// checkpoints `r` of periods `j..=2j`.
    fn sector_at(
        &self,
        b: &Building,
        x: ChamberId,
        xi: &TransversalChamber,
        radius: usize,
        j: usize,
    ) -> Result<BTreeSet<ChamberId>> {
        let ray = &self.straight_surrogate(b, xi.representative)?.ray;
        let mut targets = Vec::with_capacity(j + 1);
        for i in j..=2 * j {
            let r = ray.chamber(b, ray.checkpoint(i))?;
            targets.push((r, b.distance(x, r)?));
        }
        grow(b, x, radius, |y| {
            let dy = b.distance(x, y)?;
            for &(r, dr) in &targets {
                if dy + b.distance(y, r)? != dr {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }

    /// `Q(x, ξ)` within distance `radius` of `x`. The slice is marked
    /// unstabilized if doubling the checkpoint window kept changing it.
    pub fn sector(&self, b: &Building, x: ChamberId, xi: &TransversalChamber, radius: usize) -> Result<SectorSlice> {
        let mut j = self.first_period(radius);
        let mut here = self.sector_at(b, x, xi, radius, j)?;
        let mut stabilized = false;
        for _ in 0..=crate::direction::STABILIZATION_DOUBLINGS {
            let there = self.sector_at(b, x, xi, radius, 2 * j)?;
            if there == here {
                stabilized = true;
                break;
            }
            j *= 2;
            here = there;
        }
        Ok(SectorSlice {
            base: x,
            target: *xi,
            radius,
            chambers: here,
            stabilized,
            periods: j,
        })
    }

    /// Chambers within `radius` of `x` on some geodesic ray from `x`
    /// converging to `ξ`, each confirmed by an explicit ray
    /// `x → y → z → (straight ray from z)` with `z` in the class `ξ`.
    /// Members of `Geo(x, η)` without such a witness within the horizon
    /// are reported separately.
    pub fn sector_oracle(
        &self,
        b: &Building,
        x: ChamberId,
        xi: &TransversalChamber,
        radius: usize,
    ) -> Result<OracleSlice> {
        let mut geo_memo: HashMap<ChamberId, bool> = HashMap::new();
        let geo = self.geo_oracle_memo(b, x, radius, &mut geo_memo)?;
        let mut out = OracleSlice::default();
        let mut witnesses: Vec<(ChamberId, usize)> = Vec::new();
        for &y in &geo.chambers {
            let dy = b.distance(x, y)?;
            let mut found = false;
            for &(z, dz) in &witnesses {
                if dy + b.distance(y, z)? == dz {
                    found = true;
                    break;
                }
            }
            if !found {
                if let Some(z) = self.class_witness(b, x, y, xi, &mut geo_memo)? {
                    witnesses.push((z, b.distance(x, z)?));
                    found = true;
                }
            }
            if found {
                out.chambers.insert(y);
            } else {
                out.unwitnessed.insert(y);
            }
        }
        out.indeterminate = geo.indeterminate;
        Ok(out)
    }

    /// A chamber `z` of class `ξ` beyond `y` (seen from `x`) through which
    /// a geodesic ray from `x` passes, searched breadth first up to the
    /// horizon.
    fn class_witness(
        &self,
        b: &Building,
        x: ChamberId,
        y: ChamberId,
        xi: &TransversalChamber,
        geo: &mut HashMap<ChamberId, bool>,
    ) -> Result<Option<ChamberId>> {
        let dy = b.distance(x, y)?;
        let mut layer = vec![y];
        for depth in 0..=self.horizon() {
            for &z in &layer {
                if self.phi_equal(b, z, xi.representative)? {
                    return Ok(Some(z));
                }
            }
            if depth == self.horizon() {
                break;
            }
            let mut next = BTreeSet::new();
            for &z in &layer {
                for (_, w) in b.neighbours(z)? {
                    if next.contains(&w) || b.distance(x, w)? != dy + depth + 1 {
                        continue;
                    }
                    if self.in_geo(b, x, w, geo)? {
                        next.insert(w);
                    }
                }
            }
            layer = next.into_iter().collect();
        }
        Ok(None)
    }

    pub(crate) fn in_geo(
        &self,
        b: &Building,
        x: ChamberId,
        y: ChamberId,
        memo: &mut HashMap<ChamberId, bool>,
    ) -> Result<bool> {
        if let Some(&v) = memo.get(&y) {
            return Ok(v);
        }
        let v = matches!(self.extend_to_cgr(b, x, y)?, Extension::Witness(_));
        memo.insert(y, v);
        Ok(v)
    }

    /// `Q(x, ξ_x)` for the class `ξ_x` of `x`, checking for each class
    /// `ξ` that it equals `Q(x, ξ) ∩ Φη(x)`.
    pub fn sector_min(
        &self,
        b: &Building,
        x: ChamberId,
        classes: &[TransversalChamber],
        radius: usize,
    ) -> Result<MinimalSector> {
        let own = self
            .class_among(b, x, classes)?
            .ok_or_else(|| Error::ExceedsTruncation(format!("class of {x} is not among the given classes")))?;
        let own = TransversalChamber {
            id: own.id,
            representative: x,
        };
        let slice = self.sector(b, x, &own, radius)?;
        let mut identity_failures = Vec::new();
        let mut unstabilized = Vec::new();
        if !slice.stabilized {
            unstabilized.push(own);
        }
        for xi in classes {
            let q = self.sector(b, x, xi, radius)?;
            if !q.stabilized {
                unstabilized.push(*xi);
                continue;
            }
            let mut cut = BTreeSet::new();
            for &y in &q.chambers {
                if self.phi_equal(b, x, y)? {
                    cut.insert(y);
                }
            }
            if cut != slice.chambers {
                identity_failures.push(*xi);
            }
        }
        Ok(MinimalSector {
            slice,
            identity_failures,
            unstabilized,
        })
    }
}
