//! Exhaustive checks of the building axioms, the gate property and
//! retraction contraction on a truncated ball.

use super::{ApartmentChart, Building, Chamber, ChamberId};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Which pairs of chambers of the ball are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairScope {
    /// Every ordered pair.
    All,
    /// Pairs at gallery distance at most the given bound.
    Within(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub c: ChamberId,
    pub d: ChamberId,
    pub s: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} c={} d={}", self.axiom, self.c, self.d)?;
        if let Some(s) = self.s {
            write!(f, " s={s}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Number of checked instances.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn fail(&mut self, axiom: &'static str, c: ChamberId, d: ChamberId, s: Option<usize>, detail: String) {
        self.violations.push(Violation { axiom, c, d, s, detail });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "checked {} instances, {} violations",
            self.checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl Building {
    /// Keys of the ball of radius `radius` around the base, i.e. the first
    /// materialized ids.
    fn truncated_ball(&self, radius: usize) -> Result<Vec<Chamber>> {
        if radius > self.radius {
            return Err(Error::ExceedsTruncation(format!(
                "radius {radius} beyond materialized radius {}",
                self.radius
            )));
        }
        let mut out = Vec::new();
        for id in self.materialized() {
            let k = self.key(id);
            if self.key_distance(&self.key(self.base()), &k)? > radius {
                break;
            }
            out.push(k);
        }
        Ok(out)
    }

    /// Keys within distance `r` of `center`, breadth first.
    fn key_ball(&self, center: &Chamber, r: usize) -> Result<Vec<Chamber>> {
        let mut seen = BTreeSet::from([center.clone()]);
        let mut layer = vec![center.clone()];
        let mut out = layer.clone();
        for _ in 0..r {
            let mut next = BTreeSet::new();
            for c in &layer {
                for s in 0..self.rank() {
                    for d in self.key_panel(c, s)? {
                        if !seen.contains(&d) {
                            next.insert(d);
                        }
                    }
                }
            }
            seen.extend(next.iter().cloned());
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        Ok(out)
    }

    /// Calls `f(i, j)` for index pairs of `ball` in scope.
    fn for_pairs(
        &self,
        ball: &[Chamber],
        scope: PairScope,
        mut f: impl FnMut(usize, usize) -> Result<()>,
    ) -> Result<()> {
        match scope {
            PairScope::All => {
                for i in 0..ball.len() {
                    for j in 0..ball.len() {
                        f(i, j)?;
                    }
                }
            }
            PairScope::Within(p) => {
                let index: HashMap<&Chamber, usize> = ball.iter().enumerate().map(|(i, k)| (k, i)).collect();
                for i in 0..ball.len() {
                    for k in self.key_ball(&ball[i], p)? {
                        if let Some(&j) = index.get(&k) {
                            f(i, j)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks (WD1)–(WD3), inverse symmetry of δ, agreement of `ℓ(δ)` with
    /// gallery distance and the panel partition, on the truncated ball.
    pub fn verify_building_axioms(&self, radius: usize, scope: PairScope) -> Result<AxiomReport> {
        let ball = self.truncated_ball(radius)?;
        let ids: Vec<ChamberId> = (0..ball.len() as u32).map(ChamberId).collect();
        let w = self.system();
        let mut report = AxiomReport::default();
        let mut panels: HashMap<(usize, usize), Vec<Chamber>> = HashMap::new();
        for (i, c) in ball.iter().enumerate() {
            for s in 0..self.rank() {
                let p = self.key_panel(c, s)?;
                report.checked += 1;
                if p.len() < 2 || !p.contains(c) {
                    report.fail(
                        "panel",
                        ids[i],
                        ids[i],
                        Some(s),
                        format!("panel of size {} missing or thin", p.len()),
                    );
                }
                for e in &p {
                    if self.key_panel(e, s)? != p {
                        let d = self.intern(e)?;
                        report.fail(
                            "panel",
                            ids[i],
                            d,
                            Some(s),
                            "panels of one type do not partition".into(),
                        );
                    }
                }
                panels.insert((i, s), p);
            }
        }
        self.for_pairs(&ball, scope, |i, j| {
            let (c, d) = (&ball[i], &ball[j]);
            let delta = self.key_delta(c, d)?;
            report.checked += 1;
            if delta.is_identity() != (i == j) {
                report.fail("WD1", ids[i], ids[j], None, format!("delta = {delta}"));
            }
            if self.key_delta(d, c)? != w.inverse(&delta) {
                report.fail(
                    "symmetry",
                    ids[i],
                    ids[j],
                    None,
                    "delta(d,c) is not delta(c,d)^-1".into(),
                );
            }
            if delta.len() != self.key_distance(c, d)? {
                report.fail(
                    "metric",
                    ids[i],
                    ids[j],
                    None,
                    format!("length of {delta} differs from gallery distance"),
                );
            }
            for s in 0..self.rank() {
                let sw = w.gen_mul(s, &delta);
                let longer = sw.len() == delta.len() + 1;
                let mut realized = false;
                report.checked += 1;
                for e in &panels[&(i, s)] {
                    if e == c {
                        continue;
                    }
                    let got = self.key_delta(e, d)?;
                    if got == sw {
                        realized = true;
                    } else if longer || got != delta {
                        let detail = format!(
                            "delta(c',d) = {got}, expected {sw}{}",
                            if longer { "" } else { " or delta(c,d)" }
                        );
                        report.fail("WD2", ids[i], ids[j], Some(s), detail);
                    }
                }
                if !realized {
                    report.fail(
                        "WD3",
                        ids[i],
                        ids[j],
                        Some(s),
                        format!("no s-neighbour at Weyl distance {sw}"),
                    );
                }
            }
            Ok(())
        })?;
        Ok(report)
    }

    /// Gate property: every panel has a unique nearest chamber to `d`, and
    /// all other members are one step further.
    pub fn gate_check(&self, radius: usize, scope: PairScope) -> Result<AxiomReport> {
        let ball = self.truncated_ball(radius)?;
        let mut report = AxiomReport::default();
        self.for_pairs(&ball, scope, |i, j| {
            for s in 0..self.rank() {
                report.checked += 1;
                let p = self.key_panel(&ball[i], s)?;
                let dist: Vec<usize> = p
                    .iter()
                    .map(|e| self.key_distance(&ball[j], e))
                    .collect::<Result<_>>()?;
                let min = *dist.iter().min().expect("panels are nonempty");
                let at_min = dist.iter().filter(|&&x| x == min).count();
                if at_min != 1 || dist.iter().any(|&x| x != min && x != min + 1) {
                    report.fail(
                        "gate",
                        ChamberId(i as u32),
                        ChamberId(j as u32),
                        Some(s),
                        format!("distances {dist:?}"),
                    );
                }
            }
            Ok(())
        })?;
        Ok(report)
    }

    /// Retraction onto a chart through the base centred at the base: fixes
    /// the chart, preserves distance from the centre and never increases
    /// distances.
    pub fn retraction_check(&self, radius: usize, scope: PairScope) -> Result<AxiomReport> {
        let ball = self.truncated_ball(radius)?;
        let mut chart = ApartmentChart::new(self.base());
        chart.fill_ball(self, radius)?;
        let mut report = AxiomReport::default();
        let base = self.base();
        let mut image = Vec::with_capacity(ball.len());
        for (i, _) in ball.iter().enumerate() {
            let d = ChamberId(i as u32);
            let r = chart.retraction(self, base, d)?;
            report.checked += 1;
            if chart.contains(d) && r != d {
                report.fail("retraction-fixes-chart", base, d, None, format!("image {r}"));
            }
            if self.distance(base, r)? != self.distance(base, d)? {
                report.fail("retraction-centre", base, d, None, format!("image {r}"));
            }
            image.push(self.key(r));
        }
        self.for_pairs(&ball, scope, |i, j| {
            report.checked += 1;
            let before = self.key_distance(&ball[i], &ball[j])?;
            let after = self.key_distance(&image[i], &image[j])?;
            if after > before {
                report.fail(
                    "retraction-contracts",
                    ChamberId(i as u32),
                    ChamberId(j as u32),
                    None,
                    format!("{before} -> {after}"),
                );
            }
            Ok(())
        })?;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, CoxeterSystem};

    fn s3() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::new(vec![vec![1, 3], vec![3, 1]]).unwrap())
    }

    #[test]
    fn thin_s3_passes() {
        let b = Building::thin(s3(), 3).unwrap();
        let r = b.verify_building_axioms(3, PairScope::All).unwrap();
        assert!(r.passed(), "{r}");
        assert!(b.gate_check(3, PairScope::All).unwrap().passed());
        assert!(b.retraction_check(3, PairScope::All).unwrap().passed());
    }

    #[test]
    fn tree_passes_at_radius_four() {
        let b = Building::tree(3, 3, 4).unwrap();
        assert!(b.verify_building_axioms(4, PairScope::All).unwrap().passed());
        assert!(b.gate_check(4, PairScope::All).unwrap().passed());
        assert!(b.retraction_check(4, PairScope::All).unwrap().passed());
    }

    #[test]
    fn split_panel_violates_wd3() {
        // S3 chambers: 0=e 1=s 2=t 3=st 4=ts 5=sts; s-panels {e,s} {t,ts} {st,sts}
        let panels = vec![
            vec![vec![0], vec![1], vec![2, 4], vec![3, 5]],
            vec![vec![0, 2], vec![1, 3], vec![4, 5]],
        ];
        let b = Building::load_unverified(s3(), 6, panels.clone(), 0, 3).unwrap();
        let r = b.verify_building_axioms(3, PairScope::All).unwrap();
        assert!(r.violations.iter().any(|v| v.axiom == "WD3"));
        assert!(Building::load(s3(), 6, panels, 0, 3).is_err());
    }

    #[test]
    fn radius_beyond_truncation_fails() {
        let b = Building::tree(3, 3, 2).unwrap();
        assert!(matches!(
            b.verify_building_axioms(3, PairScope::All),
            Err(Error::ExceedsTruncation(_))
        ));
    }
}
