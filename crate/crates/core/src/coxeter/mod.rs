//! Coxeter systems: word problem, reflections, inversion sets, convex hulls.

mod classify;
pub mod oracle;
mod roots;

pub use classify::{HyperbolicWitness, TypeClass};

use crate::error::{Error, Result};
use roots::{Cartan, RootMatrix};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

/// Entry value used for an infinite order.
pub const INFINITY: u32 = 0;

/// Symmetric Coxeter matrix; `INFINITY` (0) stands for `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Builds a matrix from rows, validating the Coxeter conditions.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be positive".into()));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {rank}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(rank, entries)
    }

    /// Builds a matrix from a row-major list.
    pub fn from_flat(rank: usize, entries: Vec<u32>) -> Result<Self> {
        if rank == 0 || entries.len() != rank * rank {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for rank {rank}, got {}",
                rank * rank,
                entries.len()
            )));
        }
        if rank > u8::MAX as usize {
            return Err(Error::InvalidMatrix(format!("rank {rank} too large")));
        }
        for i in 0..rank {
            if entries[i * rank + i] != 1 {
                return Err(Error::InvalidMatrix(format!("diagonal entry ({i},{i}) is not 1")));
            }
            for j in 0..rank {
                let m = entries[i * rank + j];
                if m != entries[j * rank + i] {
                    return Err(Error::InvalidMatrix(format!("not symmetric at ({i},{j})")));
                }
                if i != j && m == 1 {
                    return Err(Error::InvalidMatrix(format!("off-diagonal entry ({i},{j}) < 2")));
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// Rank-`n` matrix with all off-diagonal entries set by `f(i, j)`.
    pub fn from_fn(rank: usize, f: impl Fn(usize, usize) -> u32) -> Result<Self> {
        let mut e = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                e.push(if i == j { 1 } else { f(i.min(j), i.max(j)) });
            }
        }
        Self::from_flat(rank, e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Raw entry, `INFINITY` for `∞`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }

    /// Order of `s_i s_j`, `None` when infinite.
    pub fn order(&self, i: usize, j: usize) -> Option<u32> {
        match self.entry(i, j) {
            INFINITY => None,
            m => Some(m),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

/// An element of `W`, stored as its ShortLex-least reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    word: Box<[u8]>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Word as `usize` letters.
    pub fn letters(&self) -> Vec<usize> {
        self.word.iter().map(|&s| s as usize).collect()
    }

    fn from_reduced(word: Vec<u8>) -> Self {
        GroupElement {
            word: word.into_boxed_slice(),
        }
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, s) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A reflection `w s w⁻¹`, kept as its own normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Reflection(GroupElement);

impl Reflection {
    pub fn element(&self) -> &GroupElement {
        &self.0
    }

    pub fn into_element(self) -> GroupElement {
        self.0
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Size limits for enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `ℓ(a⁻¹b)` accepted by [`CoxeterSystem::conv`].
    pub conv_bound: usize,
    /// Largest radius accepted by [`CoxeterSystem::ball`].
    pub ball_bound: usize,
    /// Largest rank accepted by [`CoxeterSystem::is_hyperbolic`].
    pub hyperbolic_rank_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            conv_bound: 64,
            ball_bound: 64,
            hyperbolic_rank_bound: 10,
        }
    }
}

/// A Coxeter system `(W, S)` with `S = {0, .., rank-1}`.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    cartan: Cartan,
    limits: Limits,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        Self::with_limits(matrix, Limits::default())
    }

    pub fn with_limits(matrix: CoxeterMatrix, limits: Limits) -> Self {
        let cartan = Cartan::from_orders(matrix.rank(), matrix.entries());
        CoxeterSystem { matrix, cartan, limits }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Whether the exact integer root representation is in use.
    pub fn is_exact(&self) -> bool {
        matches!(self.cartan, Cartan::Int(_))
    }

    fn check_letter(&self, s: usize) -> Result<()> {
        if s >= self.rank() {
            Err(Error::InvalidGenerator {
                index: s,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_element(&self, w: &GroupElement) -> Result<()> {
        match w.word.iter().find(|&&s| s as usize >= self.rank()) {
            Some(&s) => self.check_letter(s as usize),
            None => Ok(()),
        }
    }

    /// ShortLex normal form of an arbitrary word.
    pub fn normal_form(&self, word: &[usize]) -> Result<GroupElement> {
        for &s in word {
            self.check_letter(s)?;
        }
        Ok(self.reduce(word.iter().rev().copied()))
    }

    /// `letters_rev` yields the word back to front.
    fn reduce(&self, letters_rev: impl Iterator<Item = usize>) -> GroupElement {
        let rank = self.rank();
        let mut m = RootMatrix::identity(&self.cartan, rank);
        for s in letters_rev {
            m.right_mul(&self.cartan, s);
        }
        // m is now the matrix of w⁻¹; peel the least left descent each round
        let mut out = Vec::new();
        'peel: loop {
            for s in 0..rank {
                if m.column_negative(s) {
                    out.push(s as u8);
                    m.right_mul(&self.cartan, s);
                    continue 'peel;
                }
            }
            break;
        }
        GroupElement::from_reduced(out)
    }

    pub fn generator(&self, s: usize) -> Result<GroupElement> {
        self.check_letter(s)?;
        Ok(GroupElement::from_reduced(vec![s as u8]))
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        w.len()
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        if b.is_identity() {
            return a.clone();
        }
        if a.is_identity() {
            return b.clone();
        }
        let it = b.word.iter().rev().chain(a.word.iter().rev()).map(|&s| s as usize);
        self.reduce(it)
    }

    /// Product of several elements, left to right.
    pub(crate) fn mul_all(&self, parts: &[&GroupElement]) -> GroupElement {
        let it = parts
            .iter()
            .rev()
            .flat_map(|p| p.word.iter().rev())
            .map(|&s| s as usize);
        self.reduce(it)
    }

    /// `w·s`.
    pub(crate) fn mul_gen(&self, w: &GroupElement, s: usize) -> GroupElement {
        let it = std::iter::once(s).chain(w.word.iter().rev().map(|&x| x as usize));
        self.reduce(it)
    }

    /// `s·w`.
    pub(crate) fn gen_mul(&self, s: usize, w: &GroupElement) -> GroupElement {
        let it = w.word.iter().rev().map(|&x| x as usize).chain(std::iter::once(s));
        self.reduce(it)
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        self.reduce(w.word.iter().map(|&s| s as usize))
    }

    /// `a⁻¹ b`.
    pub(crate) fn quotient(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let it = b.word.iter().rev().chain(a.word.iter()).map(|&s| s as usize);
        self.reduce(it)
    }

    /// `uᵏ`.
    pub fn power(&self, u: &GroupElement, k: usize) -> GroupElement {
        let n = u.len();
        let it = (0..k * n).map(|i| u.word[n - 1 - i % n] as usize);
        self.reduce(it)
    }

    /// `a b a⁻¹`.
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let it = a
            .word
            .iter()
            .map(|&s| s as usize)
            .chain(b.word.iter().rev().map(|&s| s as usize))
            .chain(a.word.iter().rev().map(|&s| s as usize));
        self.reduce(it)
    }

    /// Whether `s` is a right descent of `w`.
    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        self.mul_gen(w, s).len() < w.len()
    }

    /// Whether `w` is a reflection. Every reflection has a reduced form
    /// `a s a⁻¹`, so conjugating by a simple generator shortens it by two
    /// until a generator is reached.
    pub fn is_reflection(&self, w: &GroupElement) -> bool {
        if w.len().is_multiple_of(2) {
            return false;
        }
        let mut cur = w.clone();
        'shrink: while cur.len() > 1 {
            for s in 0..self.rank() {
                let c = self.conjugate(&GroupElement::from_reduced(vec![s as u8]), &cur);
                if c.len() + 2 == cur.len() {
                    cur = c;
                    continue 'shrink;
                }
            }
            return false;
        }
        true
    }

    /// Validates and wraps a reflection.
    pub fn reflection(&self, w: &GroupElement) -> Result<Reflection> {
        self.check_element(w)?;
        if self.is_reflection(w) {
            Ok(Reflection(w.clone()))
        } else {
            Err(Error::Unsupported(format!("{w} is not a reflection")))
        }
    }

    /// `N(w) = { t : ℓ(t w) < ℓ(w) }`, listed in gallery order.
    pub fn inversion_set(&self, w: &GroupElement) -> Vec<Reflection> {
        let mut out = Vec::with_capacity(w.len());
        for k in 0..w.len() {
            let prefix = GroupElement::from_reduced(w.word[..k].to_vec());
            let t = self.conjugate(&prefix, &GroupElement::from_reduced(vec![w.word[k]]));
            out.push(Reflection(t));
        }
        out
    }

    /// Side of the wall of `t` containing `x`: `true` when `x` is on the side of `e`.
    pub fn side(&self, t: &Reflection, x: &GroupElement) -> bool {
        self.mul(&t.0, x).len() > x.len()
    }

    pub fn separates(&self, t: &Reflection, a: &GroupElement, b: &GroupElement) -> bool {
        a != b && self.side(t, a) != self.side(t, b)
    }

    /// Union of minimal galleries from `a` to `b`.
    pub fn conv(&self, a: &GroupElement, b: &GroupElement) -> Result<BTreeSet<GroupElement>> {
        self.check_element(a)?;
        self.check_element(b)?;
        let g = self.quotient(a, b);
        if g.len() > self.limits.conv_bound {
            return Err(Error::BoundExceeded {
                what: "conv length",
                value: g.len(),
                bound: self.limits.conv_bound,
            });
        }
        Ok(self.interval(&g).into_iter().map(|v| self.mul(a, &v)).collect())
    }

    /// `{ v : ℓ(v) + ℓ(v⁻¹ g) = ℓ(g) }`.
    pub(crate) fn interval(&self, g: &GroupElement) -> Vec<GroupElement> {
        let total = g.len();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(GroupElement::identity());
        queue.push_back(GroupElement::identity());
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for s in 0..self.rank() {
                let vs = self.mul_gen(&v, s);
                if vs.len() != v.len() + 1 || seen.contains(&vs) {
                    continue;
                }
                if vs.len() + self.quotient(&vs, g).len() == total {
                    seen.insert(vs.clone());
                    queue.push_back(vs);
                }
            }
            out.push(v);
        }
        out.sort();
        out
    }

    /// All elements of length at most `radius`, in ShortLex order.
    pub fn ball(&self, radius: usize) -> Result<Vec<GroupElement>> {
        if radius > self.limits.ball_bound {
            return Err(Error::BoundExceeded {
                what: "ball radius",
                value: radius,
                bound: self.limits.ball_bound,
            });
        }
        let mut layer = vec![GroupElement::identity()];
        let mut out = layer.clone();
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for w in &layer {
                for s in 0..self.rank() {
                    if self.is_right_descent(w, s) {
                        continue;
                    }
                    // append s and keep only normal forms; w.s is reduced here
                    next.insert(self.mul_gen(w, s));
                }
            }
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        Ok(out)
    }

    /// `ℓ(uᵏ) = k ℓ(u)` for `1 ≤ k ≤ K`.
    pub fn is_straight_certificate(&self, u: &GroupElement, k_max: usize) -> bool {
        if u.is_identity() {
            return false;
        }
        (1..=k_max).all(|k| self.power(u, k).len() == k * u.len())
    }

    /// Order of `w`, searched up to `bound`.
    pub fn order_of(&self, w: &GroupElement, bound: usize) -> Option<usize> {
        let mut p = w.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = self.mul(&p, w);
        }
        None
    }
}
