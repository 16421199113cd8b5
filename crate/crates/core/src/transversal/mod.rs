//! The transversal building of a direction: classes of `~η` as chambers,
//! adjacency through adjacent chambers, and the Weyl distance over the
//! Coxeter system `(Wη, Sη)` generated by reflections in the walls through
//! the direction.

use crate::chamber::{AxiomReport, Building, ChamberId};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GroupElement, Reflection, INFINITY};
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::sector::TransversalChamber;
use std::collections::{BTreeSet, HashMap, VecDeque};

#[cfg(test)]
mod tests;

/// Default bound for orders of products of canonical generators.
pub const ORDER_BOUND: usize = 12;

/// Canonical generators `Sη` seen from one chamber, in its coordinates.
#[derive(Debug, Clone)]
pub struct EtaSystem {
    pub generators: Vec<Reflection>,
    /// Orders of `s_i s_j`; `None` if none was found up to the bound.
    pub orders: Vec<Vec<Option<usize>>>,
    /// Pairs whose order was recorded as infinite for lack of a finite one.
    pub flagged: Vec<(usize, usize)>,
    system: Option<CoxeterSystem>,
}

impl EtaSystem {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The Coxeter system `(Wη, Sη)`, or `None` when `Sη` is empty.
    pub fn system(&self) -> Option<&CoxeterSystem> {
        self.system.as_ref()
    }

    /// Coxeter matrix entries with `0` for infinity.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.orders
            .iter()
            .map(|row| row.iter().map(|o| o.map_or(INFINITY, |k| k as u32)).collect())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct TransversalGraph {
    pub radius: usize,
    /// Classes meeting the ball of radius `radius` around the base.
    pub vertices: Vec<TransversalChamber>,
    /// Classes met in the enlarged ball used for panels.
    pub outer: Vec<TransversalChamber>,
    /// Edges between `outer` ids, each with `a < b`.
    pub edges: BTreeSet<(usize, usize)>,
    /// Classes met by a geodesic ray from the base inside the ball.
    pub limits: BTreeSet<usize>,
    pub eta: EtaSystem,
}

impl Direction {
    /// `Sη` at `x`: walls through the direction near `x` such that no other
    /// such wall separates `x` from its reflection.
    pub fn canonical_generators_at(&self, b: &Building, x: ChamberId) -> Result<EtaSystem> {
        let w = b.system();
        let sx = self.straight_surrogate(b, x)?;
        let mut generators = Vec::new();
        for r in w.ball(2 * self.window() - 1)? {
            if r.len() % 2 == 0 || !w.is_reflection(&r) || sx.wall_period(b, &r).is_none() {
                continue;
            }
            let inner = w
                .inversion_set(&r)
                .into_iter()
                .filter(|t| sx.wall_period(b, t.element()).is_some())
                .count();
            if inner == 1 {
                generators.push(w.reflection(&r)?);
            }
        }
        let n = generators.len();
        let mut orders = vec![vec![Some(1); n]; n];
        let mut flagged = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = w.mul(generators[i].element(), generators[j].element());
                let o = w.order_of(&p, ORDER_BOUND);
                if o.is_none() {
                    flagged.push((i, j));
                }
                orders[i][j] = o;
                orders[j][i] = o;
            }
        }
        let system = if n == 0 {
            None
        } else {
            let rows = orders
                .iter()
                .map(|row| row.iter().map(|o| o.map_or(INFINITY, |k| k as u32)).collect())
                .collect();
            Some(CoxeterSystem::new(CoxeterMatrix::new(rows)?))
        };
        Ok(EtaSystem {
            generators,
            orders,
            flagged,
            system,
        })
    }

    pub fn canonical_generators(&self, b: &Building) -> Result<EtaSystem> {
        self.canonical_generators_at(b, self.base())
    }

    /// Walls through the direction crossed by a minimal gallery from `x` to
    /// a chamber of the class of `y` sharing an apartment with the ray from
    /// `x`, in the order crossed and in the coordinates of `x`.
    fn eta_crossings(&self, b: &Building, x: ChamberId, y: ChamberId) -> Result<Vec<GroupElement>> {
        let sx = self.straight_surrogate(b, x)?;
        let z = if x == y { x } else { self.common_point(b, &sx, y)? };
        Ok(b.system()
            .inversion_set(&b.delta(x, z)?)
            .into_iter()
            .map(Reflection::into_element)
            .filter(|r| sx.wall_period(b, r).is_some())
            .collect())
    }

    /// Types, as reflections bounding the class of `x`, of the successive
    /// crossings in `crossings` (coordinates of `x`).
    fn local_types(&self, b: &Building, crossings: &[GroupElement]) -> Vec<GroupElement> {
        let w = b.system();
        let mut p = GroupElement::identity();
        let mut out = Vec::with_capacity(crossings.len());
        for r in crossings {
            out.push(w.mul_all(&[&w.inverse(&p), r, &p]));
            p = w.mul(r, &p);
        }
        out
    }

    /// Index in `eta` (canonical generators at the base) of the type `t`,
    /// a reflection bounding the class of `x` in the coordinates of `x`.
    fn label(&self, b: &Building, eta: &EtaSystem, x: ChamberId, t: &GroupElement) -> Result<usize> {
        let w = b.system();
        let base = self.base();
        let sb = self.straight_surrogate(b, base)?;
        let xp = if x == base { base } else { self.common_point(b, &sb, x)? };
        let a = b.delta(base, xp)?;
        let crossings: Vec<GroupElement> = w
            .inversion_set(&a)
            .into_iter()
            .map(Reflection::into_element)
            .filter(|r| sb.wall_period(b, r).is_some())
            .collect();
        let p = crossings.iter().fold(GroupElement::identity(), |p, r| w.mul(r, &p));
        let c = b.delta(x, xp)?;
        let at_xp = w.mul_all(&[&w.inverse(&c), t, &c]);
        let at_base = w.conjugate(&a, &at_xp);
        let ty = w.mul_all(&[&w.inverse(&p), &at_base, &p]);
        eta.generators
            .iter()
            .position(|g| g.element() == &ty)
            .ok_or_else(|| Error::ChartCoverage(format!("type {ty} of a wall at {x} is not a canonical generator")))
    }

    /// `δη(ξ, ζ)` in `(Wη, Sη)`, read off the walls through the direction
    /// crossed between representatives.
    pub fn weyl_distance_eta(
        &self,
        b: &Building,
        eta: &EtaSystem,
        xi: &TransversalChamber,
        zeta: &TransversalChamber,
    ) -> Result<GroupElement> {
        let x = xi.representative;
        let crossings = self.eta_crossings(b, x, zeta.representative)?;
        let mut letters = Vec::with_capacity(crossings.len());
        for t in self.local_types(b, &crossings) {
            letters.push(self.label(b, eta, x, &t)?);
        }
        match eta.system() {
            Some(s) => s.normal_form(&letters),
            None if letters.is_empty() => Ok(GroupElement::identity()),
            None => Err(Error::ChartCoverage("walls crossed but no canonical generators".into())),
        }
    }

    /// The transversal graph on classes meeting the ball of radius `radius`,
    /// with panels read off the ball of radius `radius + margin`. Classes
    /// whose neighbours lie beyond the enlarged ball show up as (WD3)
    /// failures, so `margin` should cover the width of a class.
    pub fn transversal_graph(&self, b: &Building, radius: usize, margin: usize) -> Result<TransversalGraph> {
        let table = self.classes(b, radius + margin)?;
        let outer: Vec<TransversalChamber> = table
            .classes
            .iter()
            .enumerate()
            .map(|(id, c)| TransversalChamber {
                id,
                representative: c[0],
            })
            .collect();
        let mut inner = BTreeSet::new();
        for &c in &table.chambers {
            if b.distance(self.base(), c)? <= radius {
                inner.insert(table.class_of(c).expect("ball chambers are classified"));
            }
        }
        let vertices = outer.iter().filter(|t| inner.contains(&t.id)).copied().collect();
        let mut edges = BTreeSet::new();
        for &c in &table.chambers {
            let i = table.class_of(c).expect("ball chambers are classified");
            for (_, d) in b.neighbours(c)? {
                if let Some(j) = table.class_of(d) {
                    if i != j {
                        edges.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
        let mut limits = BTreeSet::new();
        let mut memo = HashMap::new();
        for &c in &table.chambers {
            let k = table.class_of(c).expect("ball chambers are classified");
            if !limits.contains(&k)
                && b.distance(self.base(), c)? <= radius
                && self.in_geo(b, self.base(), c, &mut memo)?
            {
                limits.insert(k);
            }
        }
        Ok(TransversalGraph {
            radius,
            vertices,
            outer,
            edges,
            limits,
            eta: self.canonical_generators(b)?,
        })
    }

    /// (WD1)–(WD3), inverse symmetry and agreement of `ℓ(δη)` with graph
    /// distance for the vertices of `g`.
    pub fn check_transversal_building(&self, b: &Building, g: &TransversalGraph) -> Result<AxiomReport> {
        let mut report = AxiomReport::default();
        let ids: Vec<usize> = g.outer.iter().map(|t| t.id).collect();
        let mut delta: HashMap<(usize, usize), GroupElement> = HashMap::new();
        let mut get = |a: usize, c: usize| -> Result<GroupElement> {
            if let Some(v) = delta.get(&(a, c)) {
                return Ok(v.clone());
            }
            let v = self.weyl_distance_eta(b, &g.eta, &g.outer[a], &g.outer[c])?;
            delta.insert((a, c), v.clone());
            Ok(v)
        };
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, c) in &g.edges {
            adj.entry(a).or_default().push(c);
            adj.entry(c).or_default().push(a);
        }
        let rep = |i: usize| g.outer[i].representative;
        let rank = g.eta.rank();
        for xi in &g.vertices {
            let a = xi.id;
            let dist = bfs(&ids, &adj, a);
            let mut panels: Vec<Vec<usize>> = vec![Vec::new(); rank];
            for &n in adj.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
                let d = get(a, n)?;
                report.checked += 1;
                if d.len() != 1 {
                    report.fail("edge", rep(a), rep(n), None, format!("adjacent classes at δη = {d}"));
                    continue;
                }
                panels[d.word()[0] as usize].push(n);
            }
            for zeta in &g.vertices {
                let c = zeta.id;
                let d = get(a, c)?;
                let sys = g.eta.system();
                report.checked += 1;
                if d.is_identity() != (a == c) {
                    report.fail("WD1", rep(a), rep(c), None, format!("δη = {d}"));
                }
                let back = get(c, a)?;
                let inv = sys.map_or(GroupElement::identity(), |s| s.inverse(&d));
                if back != inv {
                    report.fail(
                        "symmetry",
                        rep(a),
                        rep(c),
                        None,
                        format!("δη(ζ,ξ) = {back}, δη(ξ,ζ) = {d}"),
                    );
                }
                if dist.get(&c) != Some(&d.len()) {
                    report.fail(
                        "metric",
                        rep(a),
                        rep(c),
                        None,
                        format!("graph distance {:?}, length of {d}", dist.get(&c)),
                    );
                }
                let Some(sys) = sys else { continue };
                for (s, panel) in panels.iter().enumerate() {
                    let sw = sys.generator(s).and_then(|g| sys.multiply(&g, &d))?;
                    let longer = sw.len() == d.len() + 1;
                    let mut realized = false;
                    report.checked += 1;
                    for &n in panel {
                        let got = get(n, c)?;
                        if got == sw {
                            realized = true;
                        } else if longer || got != d {
                            report.fail(
                                "WD2",
                                rep(a),
                                rep(c),
                                Some(s),
                                format!("δη(ξ',ζ) = {got}, expected {sw}"),
                            );
                        }
                    }
                    if !realized {
                        report.fail("WD3", rep(a), rep(c), Some(s), format!("no s-neighbour at δη = {sw}"));
                    }
                }
            }
        }
        Ok(report)
    }
}

fn bfs(ids: &[usize], adj: &HashMap<usize, Vec<usize>>, from: usize) -> HashMap<usize, usize> {
    let mut dist = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        for &n in adj.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
            if !dist.contains_key(&n) {
                dist.insert(n, dist[&a] + 1);
                queue.push_back(n);
            }
        }
    }
    debug_assert!(dist.keys().all(|k| ids.contains(k)));
    dist
}
