//! Buildings as W-metric chamber systems.
//!
//! A chamber is identified by an algebraic key: the normal form of a Coxeter
//! group element (thin), of a graph-product element (tree and graph product),
//! or an index (loaded). Weyl distances and panels are computed from keys, so
//! every answer is exact. A ball of the configured radius around the base
//! chamber is materialized eagerly with dense ids in breadth-first order;
//! chambers met later are interned on demand.

mod apartment;
mod axioms;
mod gallery;
mod graph_product;
mod loaded;

pub use apartment::ApartmentChart;
pub use axioms::{AxiomReport, PairScope, Violation};
pub use gallery::Gallery;

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GroupElement, INFINITY};
use crate::error::{Error, Result};
use graph_product::{GraphProduct, Syllable};
use loaded::Loaded;
use parking_lot::RwLock;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Handle of a chamber within one [`Building`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberId(pub u32);

impl ChamberId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ChamberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Algebraic key of a chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber(Box<[u16]>);

impl Chamber {
    pub fn raw(&self) -> &[u16] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildingKind {
    Thin,
    Tree,
    GraphProduct,
    Loaded,
}

impl fmt::Display for BuildingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuildingKind::Thin => "thin",
            BuildingKind::Tree => "tree",
            BuildingKind::GraphProduct => "graph-product",
            BuildingKind::Loaded => "loaded",
        })
    }
}

#[derive(Debug)]
enum Model {
    Thin,
    Product(GraphProduct),
    Loaded(Loaded),
}

#[derive(Debug, Default)]
struct Store {
    keys: Vec<Chamber>,
    index: HashMap<Chamber, u32>,
}

/// A type-preserving automorphism taking its anchor chamber to a chamber at
/// Weyl distance `period` from it.
#[derive(Debug, Clone)]
pub struct Translation {
    period: GroupElement,
    op: TranslationOp,
}

#[derive(Debug, Clone)]
enum TranslationOp {
    Thin(GroupElement),
    Product(Vec<Syllable>),
}

impl Translation {
    pub fn period(&self) -> &GroupElement {
        &self.period
    }
}

/// A locally finite building with exact Weyl distance.
#[derive(Debug)]
pub struct Building {
    system: CoxeterSystem,
    kind: BuildingKind,
    model: Model,
    radius: usize,
    eager: usize,
    store: RwLock<Store>,
}

impl Building {
    /// The Coxeter complex of `system`.
    pub fn thin(system: CoxeterSystem, radius: usize) -> Result<Self> {
        Self::assemble(system, BuildingKind::Thin, Model::Thin, Chamber(Box::new([])), radius)
    }

    /// A tree of type D∞ whose `s`-panels hold `q_s` chambers and whose
    /// `t`-panels hold `q_t`.
    pub fn tree(q_s: u8, q_t: u8, radius: usize) -> Result<Self> {
        let gp = GraphProduct::new(vec![q_s, q_t], &[])?;
        let system = CoxeterSystem::new(CoxeterMatrix::new(vec![vec![1, INFINITY], vec![INFINITY, 1]])?);
        Self::assemble(
            system,
            BuildingKind::Tree,
            Model::Product(gp),
            Chamber(Box::new([])),
            radius,
        )
    }

    /// The right-angled building of the graph product of cyclic groups
    /// `Z/orders[v]` over the graph with the given edges. Its type is the
    /// right-angled Coxeter system with `m = 2` on edges and `∞` elsewhere.
    pub fn graph_product(orders: Vec<u8>, edges: &[(usize, usize)], radius: usize) -> Result<Self> {
        let gp = GraphProduct::new(orders, edges)?;
        let n = gp.rank();
        let matrix = CoxeterMatrix::from_fn(n, |i, j| if gp.commute(i as u8, j as u8) { 2 } else { INFINITY })?;
        Self::assemble(
            CoxeterSystem::new(matrix),
            BuildingKind::GraphProduct,
            Model::Product(gp),
            Chamber(Box::new([])),
            radius,
        )
    }

    /// A finite chamber system given by panel partitions, accepted only if
    /// the building axioms hold on every pair of chambers.
    pub fn load(
        system: CoxeterSystem,
        count: usize,
        panels: Vec<Vec<Vec<usize>>>,
        base: usize,
        radius: usize,
    ) -> Result<Self> {
        let b = Self::load_unverified(system, count, panels, base, radius)?;
        let report = b.verify_building_axioms(b.radius(), PairScope::All)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::MalformedBuilding(format!(
                "{} violation(s), first: {v}",
                report.violations.len()
            )));
        }
        Ok(b)
    }

    /// As [`Building::load`] without the axiom check; for negative controls.
    pub fn load_unverified(
        system: CoxeterSystem,
        count: usize,
        panels: Vec<Vec<Vec<usize>>>,
        base: usize,
        radius: usize,
    ) -> Result<Self> {
        if base >= count {
            return Err(Error::MalformedBuilding(format!("base {base} out of range")));
        }
        let data = Loaded::new(system.rank(), count, panels)?;
        Self::assemble(
            system,
            BuildingKind::Loaded,
            Model::Loaded(data),
            Chamber(Box::new([base as u16])),
            radius,
        )
    }

    fn assemble(system: CoxeterSystem, kind: BuildingKind, model: Model, base: Chamber, radius: usize) -> Result<Self> {
        let mut b = Building {
            system,
            kind,
            model,
            radius,
            eager: 0,
            store: RwLock::new(Store::default()),
        };
        let mut seen: BTreeSet<Chamber> = BTreeSet::new();
        seen.insert(base.clone());
        let mut layer = vec![base];
        let mut all = layer.clone();
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for c in &layer {
                for s in 0..b.rank() {
                    for d in b.key_panel(c, s)? {
                        if !seen.contains(&d) {
                            next.insert(d);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            seen.extend(next.iter().cloned());
            layer = next.into_iter().collect();
            all.extend(layer.iter().cloned());
        }
        {
            let store = b.store.get_mut();
            for (i, c) in all.into_iter().enumerate() {
                store.index.insert(c.clone(), i as u32);
                store.keys.push(c);
            }
            b.eager = store.keys.len();
        }
        Ok(b)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn kind(&self) -> BuildingKind {
        self.kind
    }

    pub fn base(&self) -> ChamberId {
        ChamberId(0)
    }

    /// Radius of the eagerly materialized ball.
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of eagerly materialized chambers; their ids are `0..len`.
    pub fn len(&self) -> usize {
        self.eager
    }

    pub fn is_empty(&self) -> bool {
        self.eager == 0
    }

    /// Ids of the materialized ball in breadth-first order.
    pub fn materialized(&self) -> impl Iterator<Item = ChamberId> {
        (0..self.eager as u32).map(ChamberId)
    }

    /// Number of chambers known so far, including lazily interned ones.
    pub fn known(&self) -> usize {
        self.store.read().keys.len()
    }

    /// Panel sizes `q_s` when every `s`-panel has the same size.
    pub fn thickness(&self) -> Option<Vec<usize>> {
        match &self.model {
            Model::Thin => Some(vec![2; self.rank()]),
            Model::Product(gp) => Some(gp.orders.iter().map(|&q| q as usize).collect()),
            Model::Loaded(_) => None,
        }
    }

    pub fn key(&self, c: ChamberId) -> Chamber {
        self.store.read().keys[c.index()].clone()
    }

    /// Id of a key, interning it if needed.
    pub fn intern(&self, key: &Chamber) -> Result<ChamberId> {
        if let Some(&i) = self.store.read().index.get(key) {
            return Ok(ChamberId(i));
        }
        if let Model::Loaded(l) = &self.model {
            if key.0.len() != 1 || key.0[0] as usize >= l.count {
                return Err(Error::ExceedsTruncation(format!("no chamber {:?}", key.0)));
            }
        }
        let mut store = self.store.write();
        if let Some(&i) = store.index.get(key) {
            return Ok(ChamberId(i));
        }
        let i = store.keys.len() as u32;
        store.keys.push(key.clone());
        store.index.insert(key.clone(), i);
        Ok(ChamberId(i))
    }

    pub fn lookup(&self, key: &Chamber) -> Option<ChamberId> {
        self.store.read().index.get(key).map(|&i| ChamberId(i))
    }

    /// Chamber with a given index in a loaded building.
    pub fn loaded_chamber(&self, index: usize) -> Result<ChamberId> {
        self.intern(&Chamber(Box::new([index as u16])))
    }

    /// Chamber of a thin building at a group element.
    pub fn thin_chamber(&self, w: &GroupElement) -> Result<ChamberId> {
        match self.model {
            Model::Thin => self.intern(&Chamber(w.word().iter().map(|&s| s as u16).collect())),
            _ => Err(Error::Unsupported("not a thin building".into())),
        }
    }

    fn element_of(&self, c: &Chamber) -> GroupElement {
        let letters: Vec<usize> = c.0.iter().map(|&s| s as usize).collect();
        self.system.normal_form(&letters).expect("thin keys are normal forms")
    }

    fn element_key(w: &GroupElement) -> Chamber {
        Chamber(w.word().iter().map(|&s| s as u16).collect())
    }

    pub(crate) fn key_delta(&self, a: &Chamber, b: &Chamber) -> Result<GroupElement> {
        match &self.model {
            Model::Thin => Ok(self.system.quotient(&self.element_of(a), &self.element_of(b))),
            Model::Product(gp) => {
                let q = gp.quotient(&GraphProduct::decode(&a.0), &GraphProduct::decode(&b.0));
                let word: Vec<usize> = q.iter().map(|&(v, _)| v as usize).collect();
                self.system.normal_form(&word)
            }
            Model::Loaded(l) => {
                let row = l.row(&self.system, a.0[0] as usize);
                row[b.0[0] as usize]
                    .as_ref()
                    .map(|(_, w)| w.clone())
                    .ok_or_else(|| Error::MalformedBuilding("chamber graph is disconnected".into()))
            }
        }
    }

    pub(crate) fn key_distance(&self, a: &Chamber, b: &Chamber) -> Result<usize> {
        match &self.model {
            Model::Thin => Ok(self.key_delta(a, b)?.len()),
            Model::Product(gp) => Ok(gp
                .quotient(&GraphProduct::decode(&a.0), &GraphProduct::decode(&b.0))
                .len()),
            Model::Loaded(l) => {
                let row = l.row(&self.system, a.0[0] as usize);
                row[b.0[0] as usize]
                    .as_ref()
                    .map(|(d, _)| *d)
                    .ok_or_else(|| Error::MalformedBuilding("chamber graph is disconnected".into()))
            }
        }
    }

    /// Members of the `s`-panel of `c`, sorted by key.
    pub(crate) fn key_panel(&self, c: &Chamber, s: usize) -> Result<Vec<Chamber>> {
        if s >= self.rank() {
            return Err(Error::InvalidGenerator {
                index: s,
                rank: self.rank(),
            });
        }
        let mut out: Vec<Chamber> = match &self.model {
            Model::Thin => {
                let w = self.element_of(c);
                vec![c.clone(), Self::element_key(&self.system.mul_gen(&w, s))]
            }
            Model::Product(gp) => {
                let g = GraphProduct::decode(&c.0);
                (0..gp.orders[s])
                    .map(|a| {
                        let mut h = g.clone();
                        gp.push(&mut h, (s as u8, a));
                        Chamber(GraphProduct::encode(&gp.canonical(h)))
                    })
                    .collect()
            }
            Model::Loaded(l) => l
                .panel(c.0[0] as usize, s)
                .iter()
                .map(|&i| Chamber(Box::new([i as u16])))
                .collect(),
        };
        out.sort();
        Ok(out)
    }

    pub fn delta(&self, c: ChamberId, d: ChamberId) -> Result<GroupElement> {
        self.key_delta(&self.key(c), &self.key(d))
    }

    /// Gallery distance `d_Ch`.
    pub fn distance(&self, c: ChamberId, d: ChamberId) -> Result<usize> {
        if c == d {
            return Ok(0);
        }
        self.key_distance(&self.key(c), &self.key(d))
    }

    /// The `s`-panel of `c`, including `c`, sorted by key.
    pub fn panel(&self, c: ChamberId, s: usize) -> Result<Vec<ChamberId>> {
        self.key_panel(&self.key(c), s)?
            .iter()
            .map(|k| self.intern(k))
            .collect()
    }

    /// Chambers adjacent to `c` with the adjacency type, by type then key.
    pub fn neighbours(&self, c: ChamberId) -> Result<Vec<(usize, ChamberId)>> {
        let key = self.key(c);
        let mut out = Vec::new();
        for s in 0..self.rank() {
            for k in self.key_panel(&key, s)? {
                if k != key {
                    out.push((s, self.intern(&k)?));
                }
            }
        }
        Ok(out)
    }

    /// Chambers at gallery distance at most `r` from `center`, ordered by
    /// distance then key.
    pub fn ball(&self, center: ChamberId, r: usize) -> Result<Vec<ChamberId>> {
        let mut seen: BTreeSet<Chamber> = BTreeSet::new();
        let start = self.key(center);
        seen.insert(start.clone());
        let mut layer = vec![start];
        let mut out = vec![center];
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
            if next.is_empty() {
                break;
            }
            seen.extend(next.iter().cloned());
            for k in &next {
                out.push(self.intern(k)?);
            }
            layer = next.into_iter().collect();
        }
        Ok(out)
    }

    /// The automorphism `a ι(u) a⁻¹`, acting by left multiplication, where
    /// `a` is the chamber `at` and `ι(u)` lifts `u` (itself for thin
    /// buildings; each letter `s` becomes the syllable `(s, 1)` for graph
    /// products). It moves `at` to the chamber at Weyl distance `u` from it.
    pub fn translation(&self, at: ChamberId, u: &GroupElement) -> Result<Translation> {
        let key = self.key(at);
        let op = match &self.model {
            Model::Thin => {
                let a = self.element_of(&key);
                TranslationOp::Thin(self.system.mul_all(&[&a, u, &self.system.inverse(&a)]))
            }
            Model::Product(gp) => {
                let a = GraphProduct::decode(&key.0);
                let mut g = a.clone();
                for &s in u.word() {
                    if s as usize >= gp.rank() {
                        return Err(Error::InvalidGenerator {
                            index: s as usize,
                            rank: gp.rank(),
                        });
                    }
                    gp.push(&mut g, (s, 1));
                }
                TranslationOp::Product(gp.product(&g, &gp.inverse(&a)))
            }
            Model::Loaded(_) => return Err(Error::Unsupported("loaded buildings carry no translations".into())),
        };
        Ok(Translation { period: u.clone(), op })
    }

    /// The `m`-th power of `t`.
    pub fn translation_power(&self, t: &Translation, m: usize) -> Translation {
        let op = match (&t.op, &self.model) {
            (TranslationOp::Thin(u), _) => TranslationOp::Thin(self.system.power(u, m)),
            (TranslationOp::Product(g), Model::Product(gp)) => {
                let mut h = Vec::new();
                for _ in 0..m {
                    h = gp.product(&h, g);
                }
                TranslationOp::Product(h)
            }
            _ => unreachable!("translation built for another building"),
        };
        Translation {
            period: self.system.power(&t.period, m),
            op,
        }
    }

    /// Image of `c` under the `k`-th power of `t`; negative powers use the
    /// inverse.
    pub fn translate(&self, t: &Translation, c: ChamberId, k: i64) -> Result<ChamberId> {
        self.intern(&self.translate_key(t, &self.key(c), k))
    }

    pub(crate) fn translate_key(&self, t: &Translation, c: &Chamber, k: i64) -> Chamber {
        match (&t.op, &self.model) {
            (TranslationOp::Thin(u), Model::Thin) => {
                let step = if k >= 0 { u.clone() } else { self.system.inverse(u) };
                let p = self.system.power(&step, k.unsigned_abs() as usize);
                Self::element_key(&self.system.mul(&p, &self.element_of(c)))
            }
            (TranslationOp::Product(g), Model::Product(gp)) => {
                let step = if k >= 0 { g.clone() } else { gp.inverse(g) };
                let mut h = Vec::new();
                for _ in 0..k.unsigned_abs() {
                    h = gp.product(&h, &step);
                }
                Chamber(GraphProduct::encode(
                    &gp.canonical(gp.product(&h, &GraphProduct::decode(&c.0))),
                ))
            }
            _ => unreachable!("translation built for another building"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::new(vec![vec![1, 3], vec![3, 1]]).unwrap())
    }

    #[test]
    fn thin_s3_has_six_chambers() {
        let b = Building::thin(s3(), 10).unwrap();
        assert_eq!(b.len(), 6);
        for c in b.materialized() {
            assert_eq!(b.delta(c, c).unwrap(), GroupElement::identity());
            for s in 0..2 {
                assert_eq!(b.panel(c, s).unwrap().len(), 2);
            }
        }
    }

    #[test]
    fn tree_ball_counts() {
        let b = Building::tree(3, 3, 2).unwrap();
        assert_eq!(b.len(), 13);
        let c = b.materialized().nth(5).unwrap();
        assert_eq!(b.ball(c, 2).unwrap().len(), 13);
        for (s, d) in b.neighbours(b.base()).unwrap() {
            assert_eq!(b.delta(b.base(), d).unwrap().letters(), vec![s]);
        }
    }

    #[test]
    fn pentagon_layers() {
        let b = Building::graph_product(vec![3; 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 3).unwrap();
        assert_eq!(b.len(), 1 + 10 + 60 + 320);
        for c in b.materialized().take(50) {
            for s in 0..5 {
                assert_eq!(b.panel(c, s).unwrap().len(), 3);
            }
        }
    }

    #[test]
    fn delta_is_inverse_symmetric() {
        let b = Building::graph_product(vec![3; 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 2).unwrap();
        let ids: Vec<_> = b.materialized().collect();
        for &c in &ids {
            for &d in &ids {
                let w = b.delta(c, d).unwrap();
                assert_eq!(b.delta(d, c).unwrap(), b.system().inverse(&w));
                assert_eq!(w.len(), b.distance(c, d).unwrap());
            }
        }
    }

    #[test]
    fn translations_shift_the_base() {
        let b = Building::tree(3, 3, 2).unwrap();
        let w = b.system();
        let u = w.normal_form(&[0, 1]).unwrap();
        let t = b.translation(b.base(), &u).unwrap();
        let c = b.translate(&t, b.base(), 2).unwrap();
        assert_eq!(b.delta(b.base(), c).unwrap().letters(), vec![0, 1, 0, 1]);
        assert_eq!(b.translate(&t, c, -2).unwrap(), b.base());
        let x = b.materialized().nth(7).unwrap();
        let tx = b.translation(x, &u).unwrap();
        let y = b.translate(&tx, x, 3).unwrap();
        assert_eq!(b.delta(x, y).unwrap(), w.power(&u, 3));
    }
}
