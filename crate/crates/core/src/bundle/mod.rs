//! Geodesic ray bundles `Geo(x, η)`: all chambers on some geodesic ray from
//! `x` towards the direction.

use crate::chamber::{ApartmentChart, Building, ChamberId};
use crate::coxeter::GroupElement;
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::sector::{grow, OracleSlice, TransversalChamber};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSlice {
    pub base: ChamberId,
    pub radius: usize,
    pub chambers: BTreeSet<ChamberId>,
    /// Sector of each class, restricted to the slice.
    pub attribution: BTreeMap<TransversalChamber, BTreeSet<ChamberId>>,
    pub indeterminate: BTreeSet<ChamberId>,
    /// False if some sector did not stabilize.
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub radius: usize,
    pub only_x: BTreeSet<ChamberId>,
    pub only_y: BTreeSet<ChamberId>,
    pub stabilized: bool,
    /// Some slice was unstabilized or had undecided chambers.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymDiffProfile {
    pub x: ChamberId,
    pub y: ChamberId,
    pub center: ChamberId,
    pub rows: Vec<ProfileRow>,
}

impl SymDiffProfile {
    /// Whether the last row is stabilized and no row is flagged.
    pub fn settled(&self) -> bool {
        self.rows.last().is_some_and(|r| r.stabilized) && self.rows.iter().all(|r| !r.flagged)
    }
}

/// Inclusion failures `Geo_A(y) ⊄ Geo_A(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneReport {
    pub checked: usize,
    pub missing: BTreeSet<ChamberId>,
}

/// Whether Theorem-A-type finiteness is expected: the Coxeter system is
/// Gromov hyperbolic. All supported buildings are locally finite.
pub fn hyperbolicity_gate(b: &Building) -> Result<bool> {
    b.system().is_hyperbolic()
}

impl Direction {
    /// `Geo(x, η)` within distance `radius` of `x`, as the union of the
    /// sectors `Q(x, ξ)`. Classes met on the boundary of the union but
    /// missing from `classes` are added.
    pub fn geo(
        &self,
        b: &Building,
        x: ChamberId,
        classes: &[TransversalChamber],
        radius: usize,
    ) -> Result<BundleSlice> {
        let mut classes = classes.to_vec();
        let mut attribution = BTreeMap::new();
        let mut stabilized = true;
        loop {
            for xi in &classes {
                if !attribution.contains_key(xi) {
                    let q = self.sector(b, x, xi, radius)?;
                    stabilized &= q.stabilized;
                    attribution.insert(*xi, q.chambers);
                }
            }
            let chambers: BTreeSet<ChamberId> = attribution.values().flatten().copied().collect();
            let mut added = false;
            for &z in &chambers {
                let dz = b.distance(x, z)?;
                if dz == radius {
                    continue;
                }
                for (_, y) in b.neighbours(z)? {
                    if chambers.contains(&y) || b.distance(x, y)? != dz + 1 {
                        continue;
                    }
                    if self.class_among(b, y, &classes)?.is_none() {
                        classes.push(TransversalChamber {
                            id: classes.iter().map(|c| c.id + 1).max().unwrap_or(0),
                            representative: y,
                        });
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(BundleSlice {
                    base: x,
                    radius,
                    chambers,
                    attribution,
                    indeterminate: BTreeSet::new(),
                    stabilized,
                });
            }
        }
    }

    /// `Geo(x, η)` within distance `radius` of `x`, grown from `x` by
    /// testing each chamber for a geodesic ray through it.
    pub fn geo_oracle(&self, b: &Building, x: ChamberId, radius: usize) -> Result<OracleSlice> {
        self.geo_oracle_memo(b, x, radius, &mut HashMap::new())
    }

    pub(crate) fn geo_oracle_memo(
        &self,
        b: &Building,
        x: ChamberId,
        radius: usize,
        memo: &mut HashMap<ChamberId, bool>,
    ) -> Result<OracleSlice> {
        let mut indeterminate = BTreeSet::new();
        let chambers = grow(b, x, radius, |y| match self.in_geo(b, x, y, memo) {
            Ok(v) => Ok(v),
            Err(Error::HorizonExhausted(_) | Error::Unstabilized(_) | Error::NoApartmentWithinHorizon(_)) => {
                indeterminate.insert(y);
                Ok(false)
            }
            Err(e) => Err(e),
        })?;
        Ok(OracleSlice {
            chambers,
            indeterminate,
            unwitnessed: BTreeSet::new(),
        })
    }

    /// Axis chambers at the checkpoints `1..=far`, far enough for every
    /// stabilization window.
    fn axis_checkpoints(&self, b: &Building) -> Result<Vec<ChamberId>> {
        let axis = self.axis(b)?;
        let far = (2 * self.window()) << crate::direction::STABILIZATION_DOUBLINGS;
        (1..=far).map(|j| axis.chamber(b, axis.checkpoint(j))).collect()
    }

    /// A chart based at `x` containing the axis of the direction from some
    /// checkpoint on, filled on the ball of radius `radius` around `x`.
    /// Checkpoints are added from the farthest back while they fit.
    pub fn bundle_chart(&self, b: &Building, x: ChamberId, radius: usize) -> Result<ApartmentChart> {
        let mut points = self.axis_checkpoints(b)?;
        let last = points.pop().expect("at least one checkpoint");
        let mut chart = ApartmentChart::through(b, x, &[last])?;
        while let Some(a) = points.pop() {
            match chart.extend_apartment(b, &[a]) {
                Ok(c) => chart = c,
                Err(Error::NoApartmentWithinHorizon(_)) => break,
                Err(e) => return Err(e),
            }
        }
        chart.fill_ball(b, radius)?;
        Ok(chart)
    }

    /// `Geo_A(x, η)` within distance `radius` of `x` for the apartment of
    /// `chart`, computed in the Coxeter complex from coordinates alone and
    /// mapped back through the chart.
    pub fn geo_apartment(
        &self,
        b: &Building,
        x: ChamberId,
        chart: &ApartmentChart,
        radius: usize,
    ) -> Result<BTreeSet<ChamberId>> {
        let w = b.system().clone();
        let wx = chart
            .coordinate(x)
            .ok_or_else(|| Error::ChartCoverage(format!("{x} is not charted")))?
            .clone();
        let anchor = self
            .axis_checkpoints(b)?
            .into_iter()
            .find_map(|a| chart.coordinate(a).cloned())
            .ok_or_else(|| Error::ChartCoverage("no axis checkpoint is charted".into()))?;
        let sigma = Building::thin(w, 0)?;
        let dir = Direction::new(
            &sigma,
            sigma.thin_chamber(&anchor)?,
            self.period(),
            self.window(),
            self.horizon(),
        )?;
        let start = sigma.thin_chamber(&wx)?;
        let local = dir.geo_oracle(&sigma, start, radius)?;
        if let Some(c) = local.indeterminate.first() {
            return Err(Error::HorizonExhausted(format!(
                "coordinate of {c} undecided in the Coxeter complex"
            )));
        }
        let origin = sigma.thin_chamber(&GroupElement::identity())?;
        let mut out = BTreeSet::new();
        for c in local.chambers {
            let v = sigma.delta(origin, c)?;
            let d = chart
                .chamber_at(&v)
                .ok_or_else(|| Error::ChartCoverage(format!("coordinate {v} is not charted")))?;
            out.insert(d);
        }
        Ok(out)
    }

    /// Checks `Geo_A(y) ⊆ Geo_A(x)` on the ball of radius
    /// `radius - d(x, y)` around `y`.
    pub fn monotone_check(
        &self,
        b: &Building,
        x: ChamberId,
        y: ChamberId,
        chart: &ApartmentChart,
        radius: usize,
    ) -> Result<MonotoneReport> {
        let dxy = b.distance(x, y)?;
        if dxy > radius {
            return Err(Error::ExceedsTruncation(format!(
                "{y} lies beyond radius {radius} of {x}"
            )));
        }
        let gx = self.geo_apartment(b, x, chart, radius)?;
        let gy = self.geo_apartment(b, y, chart, radius - dxy)?;
        Ok(MonotoneReport {
            checked: gy.len(),
            missing: gy.difference(&gx).copied().collect(),
        })
    }

    /// Differences of `Geo(x)` and `Geo(y)` inside balls around the
    /// midpoint of the least minimal gallery from `x` to `y`.
    pub fn sym_diff_profile(
        &self,
        b: &Building,
        x: ChamberId,
        y: ChamberId,
        classes: &[TransversalChamber],
        radii: &[usize],
    ) -> Result<SymDiffProfile> {
        let g = b.minimal_galleries(x, y, 1)?.remove(0);
        let center = g.chambers[g.len() / 2];
        let top = radii.iter().copied().max().unwrap_or(0);
        let slice = |a: ChamberId| self.geo(b, a, classes, top + b.distance(a, center)?);
        let (sx, sy) = (slice(x)?, slice(y)?);
        let flagged = !sx.stabilized || !sy.stabilized || !sx.indeterminate.is_empty() || !sy.indeterminate.is_empty();
        let mut rows: Vec<ProfileRow> = Vec::new();
        for &r in radii {
            let cut = |s: &BundleSlice| -> Result<BTreeSet<ChamberId>> {
                let mut out = BTreeSet::new();
                for &c in &s.chambers {
                    if b.distance(center, c)? <= r {
                        out.insert(c);
                    }
                }
                Ok(out)
            };
            let (gx, gy) = (cut(&sx)?, cut(&sy)?);
            let only_x: BTreeSet<ChamberId> = gx.difference(&gy).copied().collect();
            let only_y: BTreeSet<ChamberId> = gy.difference(&gx).copied().collect();
            let n = rows.len();
            let stabilized = n >= 2 && rows[n - 2..].iter().all(|p| p.only_x == only_x && p.only_y == only_y);
            rows.push(ProfileRow {
                radius: r,
                only_x,
                only_y,
                stabilized,
                flagged,
            });
        }
        Ok(SymDiffProfile { x, y, center, rows })
    }
}
