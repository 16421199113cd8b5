//! Apartment charts: partial Weyl-isometric maps from `W` into a building.
//!
//! Every Weyl isometry from a subset of `W` extends to a whole apartment, so
//! a chart grows one panel step at a time without backtracking: the new
//! chamber is forced to be a projection whenever some charted chamber lies
//! beyond the crossed wall, and is otherwise free.

use super::{Building, ChamberId};
use crate::coxeter::CoxeterSystem;
use crate::coxeter::GroupElement;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Debug, Clone)]
pub struct ApartmentChart {
    base: ChamberId,
    forward: BTreeMap<GroupElement, ChamberId>,
    back: HashMap<ChamberId, GroupElement>,
    /// Walls separating each charted coordinate from `e`.
    walls: HashMap<GroupElement, HashSet<GroupElement>>,
}

impl ApartmentChart {
    /// The chart `{e ↦ c0}`.
    pub fn new(c0: ChamberId) -> Self {
        let mut chart = ApartmentChart {
            base: c0,
            forward: BTreeMap::new(),
            back: HashMap::new(),
            walls: HashMap::new(),
        };
        chart.back.insert(c0, GroupElement::identity());
        chart.forward.insert(GroupElement::identity(), c0);
        chart.walls.insert(GroupElement::identity(), HashSet::new());
        chart
    }

    /// A chart through `c0` and all `targets`.
    pub fn through(b: &Building, c0: ChamberId, targets: &[ChamberId]) -> Result<Self> {
        ApartmentChart::new(c0).extend_apartment(b, targets)
    }

    fn insert(&mut self, sys: &CoxeterSystem, w: GroupElement, c: ChamberId) {
        let walls = sys.inversion_set(&w).into_iter().map(|r| r.into_element()).collect();
        self.walls.insert(w.clone(), walls);
        self.back.insert(c, w.clone());
        self.forward.insert(w, c);
    }

    pub fn base(&self) -> ChamberId {
        self.base
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn coordinate(&self, c: ChamberId) -> Option<&GroupElement> {
        self.back.get(&c)
    }

    pub fn chamber_at(&self, w: &GroupElement) -> Option<ChamberId> {
        self.forward.get(w).copied()
    }

    pub fn contains(&self, c: ChamberId) -> bool {
        self.back.contains_key(&c)
    }

    /// Charted pairs in ShortLex order of coordinates.
    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, ChamberId)> {
        self.forward.iter().map(|(w, &c)| (w, c))
    }

    /// A chart containing this one and every target. Targets are placed at
    /// their Weyl distance from the base and must be consistent with every
    /// charted chamber.
    pub fn extend_apartment(&self, b: &Building, targets: &[ChamberId]) -> Result<Self> {
        let mut chart = self.clone();
        for &d in targets {
            if chart.contains(d) {
                continue;
            }
            let w = b.delta(chart.base, d)?;
            for (u, c) in chart.iter() {
                let expect = b.system().quotient(u, &w);
                if b.delta(c, d)? != expect {
                    return Err(Error::NoApartmentWithinHorizon(format!(
                        "chamber {d} at coordinate {w} is inconsistent with {c} at {u}"
                    )));
                }
            }
            chart.insert(b.system(), w, d);
        }
        Ok(chart)
    }

    /// Maps the coordinate `w`, filling a minimal path from the nearest
    /// charted coordinate.
    pub fn fill(&mut self, b: &Building, w: &GroupElement) -> Result<ChamberId> {
        if let Some(c) = self.chamber_at(w) {
            return Ok(c);
        }
        let w_sys = b.system();
        let (from, step) = self
            .forward
            .keys()
            .map(|u| (u, w_sys.quotient(u, w)))
            .min_by(|x, y| x.1.len().cmp(&y.1.len()).then_with(|| x.0.cmp(y.0)))
            .map(|(u, g)| (u.clone(), g))
            .expect("charts are nonempty");
        let mut v = from;
        let mut c = None;
        for &s in step.word() {
            let next = self.step(b, &v, s as usize)?;
            v = w_sys.mul_gen(&v, s as usize);
            c = Some(next);
        }
        Ok(c.expect("unmapped coordinate differs from every charted one"))
    }

    /// Maps `v·s` given that `v` is charted.
    fn step(&mut self, b: &Building, v: &GroupElement, s: usize) -> Result<ChamberId> {
        let w_sys = b.system();
        let w = w_sys.mul_gen(v, s);
        if let Some(c) = self.chamber_at(&w) {
            return Ok(c);
        }
        let cv = self.chamber_at(v).expect("step starts inside the chart");
        let candidates: Vec<ChamberId> = b.panel(cv, s)?.into_iter().filter(|&x| x != cv).collect();
        let chosen = if candidates.len() == 1 {
            candidates[0]
        } else {
            let t = w_sys.conjugate(v, &w_sys.generator(s)?);
            let v_side = self.walls[v].contains(&t);
            let forcing = self
                .forward
                .iter()
                .find(|(u, _)| self.walls[*u].contains(&t) != v_side)
                .map(|(_, &c)| c);
            match forcing {
                Some(cu) => b.proj_panel(cv, s, cu)?,
                None => *candidates
                    .iter()
                    .min_by_key(|&&x| b.key(x))
                    .ok_or_else(|| Error::MalformedBuilding(format!("{s}-panel of {cv} is a singleton")))?,
            }
        };
        if let Some(prev) = self.back.get(&chosen) {
            return Err(Error::NoApartmentWithinHorizon(format!(
                "chamber {chosen} already charted at {prev}, needed at {w}"
            )));
        }
        self.insert(w_sys, w, chosen);
        Ok(chosen)
    }

    /// Maps every coordinate of length at most `radius`.
    pub fn fill_ball(&mut self, b: &Building, radius: usize) -> Result<()> {
        for w in b.system().ball(radius)? {
            if self.chamber_at(&w).is_none() {
                let letters = w.word();
                let v = b.system().normal_form(
                    &letters[..letters.len() - 1]
                        .iter()
                        .map(|&s| s as usize)
                        .collect::<Vec<_>>(),
                )?;
                self.step(b, &v, *letters.last().expect("identity is charted") as usize)?;
            }
        }
        Ok(())
    }

    /// The retraction onto this chart centred at `center`.
    pub fn retraction(&self, b: &Building, center: ChamberId, d: ChamberId) -> Result<ChamberId> {
        if self.coordinate(d).is_some() {
            return Ok(d);
        }
        let wc = self
            .coordinate(center)
            .ok_or_else(|| Error::ChartCoverage(format!("centre {center} is not charted")))?;
        let target = b.system().mul(wc, &b.delta(center, d)?);
        self.chamber_at(&target)
            .ok_or_else(|| Error::ChartCoverage(format!("coordinate {target} is not charted")))
    }

    /// Pairs of coordinates whose chambers violate the isometry condition.
    pub fn isometry_defects(&self, b: &Building) -> Result<Vec<(GroupElement, GroupElement)>> {
        let mut out = Vec::new();
        for (u, cu) in self.iter() {
            for (v, cv) in self.iter() {
                if b.delta(cu, cv)? != b.system().quotient(u, v) {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        Ok(out)
    }
}
