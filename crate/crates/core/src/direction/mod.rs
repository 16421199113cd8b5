//! Boundary directions given by periodic straight rays, their walls, the
//! relation `~η` and its classes, and geodesic rays towards them.
//!
//! A direction is the end of the axis `base, g·base, g²·base, …` of a
//! translation `g` moving the base chamber to Weyl distance `u`. Every
//! chamber `x` gets a straight surrogate ray: a minimal gallery to a chamber
//! `t` followed by the orbit of `t` under a power `gᵐ`, crossing no wall
//! through the direction. In coordinates centred at `x` such a ray advances
//! by `u_x = c d c⁻¹` per period (`c = δ(x, t)`, `d = δ(t, gᵐ t)`), and a wall
//! `r` contains the direction exactly when `u_xᵏ r u_x⁻ᵏ = r` for some `k`.

mod cgr;

pub use cgr::Cgr;

use crate::chamber::{ApartmentChart, Building, ChamberId, Gallery, Translation};
use crate::coxeter::{GroupElement, Reflection};
use crate::error::{Error, Result};
use parking_lot::Mutex;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Number of window doublings before an "eventually" check gives up.
pub const STABILIZATION_DOUBLINGS: usize = 3;

/// A reflection whose wall contains the direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaWall {
    pub reflection: Reflection,
    /// Least `k` with `uᵏ r u⁻ᵏ = r`.
    pub period: usize,
    /// Whether the base lies on the positive side (the side of `e`).
    pub base_side: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionWalls {
    pub window: usize,
    pub walls: Vec<EtaWall>,
}

/// A straight ray from a chamber together with its chart data.
#[derive(Debug, Clone)]
pub struct Surrogate {
    pub ray: Cgr,
    /// `δ(x, t)` for the tail base `t`.
    pub c: GroupElement,
    /// `δ(t, gᵐ t)`.
    pub d: GroupElement,
    /// `c d c⁻¹`, the period seen from `x`.
    pub axis: GroupElement,
    /// `(axisᵏ, axis⁻ᵏ)` for `k = 1..=window`.
    powers: Vec<(GroupElement, GroupElement)>,
}

/// Verdict of `extend_to_cgr`.
#[derive(Debug, Clone)]
pub enum Extension {
    Witness(Cgr),
    /// No geodesic ray from `x` towards the direction passes through `y`.
    Refuted,
}

impl Extension {
    pub fn witness(&self) -> Option<&Cgr> {
        match self {
            Extension::Witness(g) => Some(g),
            Extension::Refuted => None,
        }
    }
}

/// Classes of `~η` on a ball around the base.
#[derive(Debug, Clone)]
pub struct ClassTable {
    pub radius: usize,
    /// Chambers of the ball, breadth first.
    pub chambers: Vec<ChamberId>,
    /// Members of each class, sorted; classes ordered by least member.
    pub classes: Vec<Vec<ChamberId>>,
    class_of: HashMap<ChamberId, usize>,
}

impl ClassTable {
    pub fn class_of(&self, c: ChamberId) -> Option<usize> {
        self.class_of.get(&c).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Debug)]
pub struct Direction {
    base: ChamberId,
    period: GroupElement,
    translation: Translation,
    window: usize,
    horizon: usize,
    chart: ApartmentChart,
    surrogates: Mutex<HashMap<ChamberId, Arc<Surrogate>>>,
}

impl Direction {
    /// The end of the axis through `base` with period `u`, verified over
    /// `window` periods. `horizon` bounds the depth of surrogate searches.
    pub fn new(b: &Building, base: ChamberId, u: &GroupElement, window: usize, horizon: usize) -> Result<Self> {
        let w = b.system();
        w.check_element(u)?;
        if u.is_identity() {
            return Err(Error::InvalidDirection("period is the identity".into()));
        }
        if window == 0 {
            return Err(Error::InvalidDirection("window must be positive".into()));
        }
        if !w.is_straight_certificate(u, window) {
            return Err(Error::InvalidDirection(format!(
                "ℓ(u^k) = k ℓ(u) fails for u = {u} within {window}"
            )));
        }
        let translation = b.translation(base, u)?;
        let mut axis = Vec::with_capacity(window);
        for k in 1..=window {
            let c = b.translate(&translation, base, k as i64)?;
            if b.distance(base, c)? != k * u.len() {
                return Err(Error::InvalidDirection(format!("axis is not geodesic at period {k}")));
            }
            axis.push(c);
        }
        let chart = ApartmentChart::through(b, base, &axis)?;
        Ok(Direction {
            base,
            period: u.clone(),
            translation,
            window,
            horizon,
            chart,
            surrogates: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> ChamberId {
        self.base
    }

    pub fn period(&self) -> &GroupElement {
        &self.period
    }

    pub fn translation(&self) -> &Translation {
        &self.translation
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Chart containing the base and the axis over the window.
    pub fn chart(&self) -> &ApartmentChart {
        &self.chart
    }

    /// The axis ray from the base.
    pub fn axis(&self, b: &Building) -> Result<Cgr> {
        Ok(self.straight_surrogate(b, self.base)?.ray.clone())
    }

    /// Evaluates `f` at `window` and twice `window` periods, doubling until
    /// both agree.
    pub(crate) fn stabilized<T: PartialEq + std::fmt::Debug>(
        &self,
        what: &str,
        mut f: impl FnMut(usize) -> Result<T>,
    ) -> Result<T> {
        let mut j = self.window;
        let mut here = f(j)?;
        for _ in 0..=STABILIZATION_DOUBLINGS {
            let there = f(2 * j)?;
            if there == here {
                return Ok(here);
            }
            j *= 2;
            here = there;
        }
        Err(Error::Unstabilized(format!("{what}: still changing at {j} periods")))
    }

    /// Walls through the direction meeting the ball of radius `window`
    /// around the base, in base coordinates.
    pub fn walls_eta(&self, b: &Building) -> Result<DirectionWalls> {
        let w = b.system();
        let axis = self.straight_surrogate(b, self.base)?;
        let mut walls = Vec::new();
        for r in w.ball(2 * self.window - 1)? {
            if r.len() % 2 == 0 || !w.is_reflection(&r) {
                continue;
            }
            if let Some(k) = axis.wall_period(b, &r) {
                let reflection = w.reflection(&r)?;
                let base_side = w.side(&reflection, &GroupElement::identity());
                walls.push(EtaWall {
                    reflection,
                    period: k,
                    base_side,
                });
            }
        }
        Ok(DirectionWalls {
            window: self.window,
            walls,
        })
    }

    /// A straight ray from `x` towards the direction.
    pub fn straight_surrogate(&self, b: &Building, x: ChamberId) -> Result<Arc<Surrogate>> {
        if let Some(s) = self.surrogates.lock().get(&x) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.search_surrogate(b, x)?);
        self.surrogates.lock().insert(x, s.clone());
        Ok(s)
    }

    fn search_surrogate(&self, b: &Building, x: ChamberId) -> Result<Surrogate> {
        let far = b.translate(&self.translation, x, self.window as i64)?;
        let total = b.distance(x, far)?;
        let mut layer = vec![x];
        for depth in 0..=self.horizon.min(total) {
            for &t in &layer {
                for m in 1..=self.window {
                    if let Some(s) = self.try_tail(b, x, t, m)? {
                        return Ok(s);
                    }
                }
            }
            let mut next = BTreeMap::new();
            for &z in &layer {
                for (_, y) in b.neighbours(z)? {
                    if b.distance(x, y)? == depth + 1 && b.distance(y, far)? + depth + 1 == total {
                        next.insert(b.key(y), y);
                    }
                }
            }
            layer = next.into_values().collect();
        }
        Err(Error::HorizonExhausted(format!(
            "no straight ray from {x} within depth {}",
            self.horizon
        )))
    }

    /// The ray `x → t → gᵐ t → …` if it is geodesic over the window and
    /// crosses no wall through the direction.
    fn try_tail(&self, b: &Building, x: ChamberId, t: ChamberId, m: usize) -> Result<Option<Surrogate>> {
        let w = b.system();
        let g = b.translation_power(&self.translation, m);
        let l = m * self.period.len();
        let c = b.delta(x, t)?;
        let gt = b.translate(&g, t, 1)?;
        let d = b.delta(t, gt)?;
        if d.len() != l {
            return Ok(None);
        }
        for j in 2..=self.window {
            let gj = b.translate(&g, t, j as i64)?;
            if b.distance(t, gj)? != j * l || b.distance(x, gj)? != c.len() + j * l {
                return Ok(None);
            }
        }
        if b.distance(x, gt)? != c.len() + l {
            return Ok(None);
        }
        let axis = w.conjugate(&c, &d);
        let inv = w.inverse(&axis);
        let mut powers = Vec::with_capacity(self.window);
        let (mut p, mut q) = (GroupElement::identity(), GroupElement::identity());
        for _ in 0..self.window {
            p = w.mul(&p, &axis);
            q = w.mul(&q, &inv);
            powers.push((p.clone(), q.clone()));
        }
        let lead = b.minimal_galleries(x, t, 1)?.remove(0);
        let period = b.minimal_galleries(t, gt, 1)?.remove(0);
        let s = Surrogate {
            ray: Cgr {
                lead,
                period,
                translation: g,
            },
            c: c.clone(),
            d: d.clone(),
            axis,
            powers,
        };
        let crossed = w
            .inversion_set(&c)
            .into_iter()
            .map(Reflection::into_element)
            .chain(w.inversion_set(&d).into_iter().map(|r| w.conjugate(&c, r.element())));
        for r in crossed {
            if s.wall_period(b, &r).is_some() {
                return Ok(None);
            }
        }
        Ok(Some(s))
    }

    /// Whether `y` shares an apartment with the surrogate ray from `x`,
    /// checked over the window.
    fn shares_chart(&self, b: &Building, sx: &Surrogate, y: ChamberId) -> Result<bool> {
        let w = b.system();
        let x = sx.ray.start();
        let wy = w.inverse(&b.delta(x, y)?);
        for n in 0..=sx.ray.checkpoint(self.window) {
            let z = sx.ray.chamber(b, n)?;
            if b.delta(y, z)? != w.mul(&wy, &b.delta(x, z)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Adjacency relation `≈η` for chambers of a common panel: some
    /// apartment of the direction contains both and their common wall does
    /// not contain the direction, or no such apartment exists at all.
    pub fn approx(&self, b: &Building, x: ChamberId, y: ChamberId) -> Result<bool> {
        if x == y {
            return Ok(true);
        }
        let s = match b.neighbours(x)?.into_iter().find(|&(_, z)| z == y) {
            Some((s, _)) => s,
            None => return Err(Error::InvalidDirection(format!("{x} and {y} are not adjacent"))),
        };
        let sx = self.straight_surrogate(b, x)?;
        if !self.shares_chart(b, &sx, y)? {
            return Ok(true);
        }
        Ok(sx.wall_period(b, &b.system().generator(s)?).is_none())
    }

    /// `x ~η y`: no wall through the direction separates `x` from `y` in an
    /// apartment containing the surrogate from `x` and a chamber far along
    /// the surrogate from `y`.
    pub fn phi_equal(&self, b: &Building, x: ChamberId, y: ChamberId) -> Result<bool> {
        if x == y {
            return Ok(true);
        }
        let sx = self.straight_surrogate(b, x)?;
        let z = self.common_point(b, &sx, y)?;
        let between = b.system().inversion_set(&b.delta(x, z)?);
        Ok(between.iter().all(|r| sx.wall_period(b, r.element()).is_none()))
    }

    /// The first chamber of the surrogate from `y` sharing an apartment
    /// with the surrogate `sx`; it lies in the class of `y`. The search
    /// reaches twice the distance between the starts past the window.
    pub(crate) fn common_point(&self, b: &Building, sx: &Surrogate, y: ChamberId) -> Result<ChamberId> {
        let sy = self.straight_surrogate(b, y)?;
        let reach = sy.ray.checkpoint(2 * self.window) + 2 * b.distance(sx.start(), y)?;
        for n in 0..=reach {
            let z = sy.ray.chamber(b, n)?;
            if self.shares_chart(b, sx, z)? {
                return Ok(z);
            }
        }
        Err(Error::NoApartmentWithinHorizon(format!(
            "no chart through the rays from {} and {y}",
            sx.start()
        )))
    }

    /// Classes of `~η` on the ball of radius `radius` around the base:
    /// components of `≈η`, merged where `phi_equal` identifies them.
    pub fn classes(&self, b: &Building, radius: usize) -> Result<ClassTable> {
        let chambers = b.ball(self.base, radius)?;
        let index: HashMap<ChamberId, usize> = chambers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut uf = UnionFind::new(chambers.len());
        for (i, &x) in chambers.iter().enumerate() {
            for (_, y) in b.neighbours(x)? {
                if let Some(&j) = index.get(&y) {
                    if i < j && uf.find(i) != uf.find(j) && self.approx(b, x, y)? {
                        uf.union(i, j);
                    }
                }
            }
        }
        let mut reps: Vec<usize> = (0..chambers.len()).filter(|&i| uf.find(i) == i).collect();
        reps.sort_by_key(|&i| chambers[i]);
        for a in 0..reps.len() {
            for c in a + 1..reps.len() {
                let (i, j) = (reps[a], reps[c]);
                if uf.find(i) != uf.find(j) && self.phi_equal(b, chambers[i], chambers[j])? {
                    uf.union(i, j);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<ChamberId>> = BTreeMap::new();
        for (i, &c) in chambers.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(c);
        }
        let mut classes: Vec<Vec<ChamberId>> = groups.into_values().collect();
        for cl in classes.iter_mut() {
            cl.sort();
        }
        classes.sort();
        let mut class_of = HashMap::new();
        for (k, cl) in classes.iter().enumerate() {
            for &c in cl {
                class_of.insert(c, k);
            }
        }
        Ok(ClassTable {
            radius,
            chambers,
            classes,
            class_of,
        })
    }

    /// Members of the ball of radius `radius` equivalent to `x`.
    pub fn phi_class(&self, b: &Building, x: ChamberId, radius: usize) -> Result<Vec<ChamberId>> {
        let table = self.classes(b, radius)?;
        match table.class_of(x) {
            Some(k) => Ok(table.classes[k].clone()),
            None => {
                let mut out = Vec::new();
                for cl in &table.classes {
                    if self.phi_equal(b, x, cl[0])? {
                        out.extend_from_slice(cl);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Whether a ray is geodesic: its lead and one period are galleries,
    /// the period closes up under the translation, and distances from the
    /// start grow additively over the window.
    pub fn is_cgr(&self, b: &Building, ray: &Cgr) -> Result<bool> {
        if !b.is_gallery(&ray.lead)? || !b.is_gallery(&ray.period)? || ray.period.is_empty() {
            return Ok(false);
        }
        if ray.period.first() != ray.lead.last()
            || b.translate(&ray.translation, ray.period.first(), 1)? != ray.period.last()
        {
            return Ok(false);
        }
        let x = ray.start();
        let end = ray.checkpoint(self.window);
        for n in 0..=end {
            if b.distance(x, ray.chamber(b, n)?)? != n {
                return Ok(false);
            }
        }
        self.stabilized("geodesic ray", |j| {
            let n = ray.checkpoint(j);
            Ok(b.distance(x, ray.chamber(b, n)?)? == n)
        })
    }

    /// Whether a finite gallery is geodesic.
    pub fn is_cgr_gallery(&self, b: &Building, g: &Gallery) -> Result<bool> {
        b.is_minimal(g)
    }

    /// A geodesic ray from `x` towards the direction through `y`, namely a
    /// minimal gallery to `y` followed by the surrogate from `y`, or a
    /// definite refutation. The refutation is exact: any such ray through
    /// `y` crosses only walls the surrogate from `y` avoids.
    pub fn extend_to_cgr(&self, b: &Building, x: ChamberId, y: ChamberId) -> Result<Extension> {
        let sy = self.straight_surrogate(b, y)?;
        let dxy = b.distance(x, y)?;
        let ok = self.stabilized("ray extension", |j| {
            let n = sy.ray.checkpoint(j);
            Ok(b.distance(x, sy.ray.chamber(b, n)?)? == dxy + n)
        })?;
        if !ok {
            return Ok(Extension::Refuted);
        }
        let head = b.minimal_galleries(x, y, 1)?.remove(0);
        Ok(Extension::Witness(sy.ray.prepend(&head)))
    }

    /// Whether two rays towards the direction converge to the same class,
    /// read off their chambers once the answer stops changing.
    pub fn same_limit(&self, b: &Building, g1: &Cgr, g2: &Cgr) -> Result<bool> {
        self.stabilized("limit comparison", |j| {
            let a = g1.chamber(b, g1.checkpoint(j))?;
            let c = g2.chamber(b, g2.checkpoint(j))?;
            self.phi_equal(b, a, c)
        })
    }
}

impl Surrogate {
    /// Least `k` in the window with `axisᵏ r axis⁻ᵏ = r`.
    pub(crate) fn wall_period(&self, b: &Building, r: &GroupElement) -> Option<usize> {
        let w = b.system();
        self.powers
            .iter()
            .position(|(p, q)| &w.mul_all(&[p, r, q]) == r)
            .map(|k| k + 1)
    }

    pub fn start(&self) -> ChamberId {
        self.ray.start()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut k = i;
        while self.0[k] != r {
            let next = self.0[k];
            self.0[k] = r;
            k = next;
        }
        r
    }

    /// Links the larger root under the smaller.
    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
    }
}
