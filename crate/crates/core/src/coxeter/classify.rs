//! Type classification of standard parabolic subsystems and the Moussong
//! hyperbolicity test.

use super::{CoxeterSystem, INFINITY};
use crate::error::{Error, Result};
use std::fmt;

/// Type of a standard parabolic subsystem `(W_J, J)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeClass {
    Finite,
    /// Irreducible affine.
    Affine,
    Indefinite,
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeClass::Finite => "finite",
            TypeClass::Affine => "affine",
            TypeClass::Indefinite => "indefinite",
        })
    }
}

/// Reason a system fails the hyperbolicity criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperbolicWitness {
    /// An irreducible affine `J` with `|J| ≥ 3`.
    AffineSubset(Vec<usize>),
    /// Disjoint `I`, `J` with `W_I`, `W_J` infinite and commuting.
    CommutingInfinitePair(Vec<usize>, Vec<usize>),
}

impl fmt::Display for HyperbolicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperbolicWitness::AffineSubset(j) => write!(f, "affine subset {j:?}"),
            HyperbolicWitness::CommutingInfinitePair(i, j) => {
                write!(f, "commuting infinite pair {i:?} / {j:?}")
            }
        }
    }
}

struct Diagram {
    n: usize,
    /// `label[a][b]`: Coxeter entry between local nodes, 2 meaning no edge.
    label: Vec<Vec<u32>>,
}

impl Diagram {
    fn degree(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| b != a && self.label[a][b] != 2).count()
    }

    fn neighbours(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| b != a && self.label[a][b] != 2).collect()
    }

    fn edge_count(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    /// Edge labels along a path diagram, from one leaf.
    fn path_labels(&self) -> Option<Vec<u32>> {
        if self.edge_count() != self.n - 1 || (0..self.n).any(|a| self.degree(a) > 2) {
            return None;
        }
        let start = (0..self.n).find(|&a| self.degree(a) == 1)?;
        let mut out = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            let next = self.neighbours(cur).into_iter().find(|&b| b != prev);
            match next {
                Some(b) => {
                    out.push(self.label[cur][b]);
                    prev = cur;
                    cur = b;
                }
                None => return Some(out),
            }
        }
    }

    /// Arms of a tree with exactly one branch node of degree 3: each arm as
    /// its edge labels read outwards.
    fn arms(&self, centre: usize) -> Vec<Vec<u32>> {
        let mut arms = Vec::new();
        for first in self.neighbours(centre) {
            let mut labels = vec![self.label[centre][first]];
            let (mut prev, mut cur) = (centre, first);
            while let Some(b) = self.neighbours(cur).into_iter().find(|&b| b != prev) {
                labels.push(self.label[cur][b]);
                prev = cur;
                cur = b;
            }
            arms.push(labels);
        }
        arms.sort_by_key(|a| a.len());
        arms
    }
}

fn either_way(labels: &[u32], pattern: &[u32]) -> bool {
    labels == pattern || labels.iter().rev().eq(pattern.iter())
}

fn classify_connected(d: &Diagram) -> TypeClass {
    let n = d.n;
    if n == 1 {
        return TypeClass::Finite;
    }
    if n == 2 {
        return if d.label[0][1] == INFINITY {
            TypeClass::Affine
        } else {
            TypeClass::Finite
        };
    }
    let labels: Vec<u32> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| d.label[a][b])
        .filter(|&m| m != 2)
        .collect();
    if labels.contains(&INFINITY) {
        return TypeClass::Indefinite;
    }
    let simply_laced = labels.iter().all(|&m| m == 3);
    let edges = d.edge_count();

    if edges == n {
        // a single cycle
        if simply_laced && (0..n).all(|a| d.degree(a) == 2) {
            return TypeClass::Affine;
        }
        return TypeClass::Indefinite;
    }
    if edges != n - 1 {
        return TypeClass::Indefinite;
    }

    if let Some(p) = d.path_labels() {
        let inner_simple = p.len() < 3 || p[1..p.len() - 1].iter().all(|&m| m == 3);
        if p.iter().all(|&m| m == 3) {
            return TypeClass::Finite;
        }
        let non3 = p.iter().filter(|&&m| m != 3).count();
        if non3 == 1 && (p[0] == 4 || p[p.len() - 1] == 4) {
            return TypeClass::Finite;
        }
        if n == 4 && p == [3, 4, 3] {
            return TypeClass::Finite;
        }
        if (n == 3 && either_way(&p, &[5, 3])) || (n == 4 && either_way(&p, &[5, 3, 3])) {
            return TypeClass::Finite;
        }
        if p[0] == 4 && p[p.len() - 1] == 4 && inner_simple {
            return TypeClass::Affine;
        }
        if (n == 5 && either_way(&p, &[3, 3, 4, 3])) || (n == 3 && either_way(&p, &[3, 6])) {
            return TypeClass::Affine;
        }
        return TypeClass::Indefinite;
    }

    let degrees: Vec<usize> = (0..n).map(|a| d.degree(a)).collect();
    let branch: Vec<usize> = (0..n).filter(|&a| degrees[a] >= 3).collect();
    if branch.len() == 1 && degrees[branch[0]] == 4 {
        // D̃4: a star with four leaves
        return if n == 5 && simply_laced {
            TypeClass::Affine
        } else {
            TypeClass::Indefinite
        };
    }
    if branch.len() == 1 && degrees[branch[0]] == 3 {
        let arms = d.arms(branch[0]);
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        if simply_laced {
            return match lens.as_slice() {
                [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => TypeClass::Finite,
                [2, 2, 2] | [1, 3, 3] | [1, 2, 5] => TypeClass::Affine,
                _ => TypeClass::Indefinite,
            };
        }
        // B̃: arms (1, 1, k) with a single 4 on the terminal edge of the long arm
        let non3 = labels.iter().filter(|&&m| m != 3).count();
        if lens[0] == 1 && lens[1] == 1 && non3 == 1 {
            let long = &arms[2];
            if long[long.len() - 1] == 4 {
                return TypeClass::Affine;
            }
            if lens[2] == 1 && arms.iter().any(|a| a[0] == 4) {
                return TypeClass::Affine;
            }
        }
        return TypeClass::Indefinite;
    }
    if branch.len() == 2 && simply_laced && branch.iter().all(|&b| degrees[b] == 3) {
        // D̃n: each branch node carries two leaves
        let ok = branch
            .iter()
            .all(|&b| d.neighbours(b).into_iter().filter(|&c| degrees[c] == 1).count() == 2);
        if ok {
            return TypeClass::Affine;
        }
    }
    TypeClass::Indefinite
}

impl CoxeterSystem {
    /// Classifies `(W_J, J)` by matching its diagram against the finite and
    /// affine lists. Reducible `J` is finite when all components are, and
    /// indefinite otherwise.
    pub fn classify_parabolic(&self, j: &[usize]) -> Result<TypeClass> {
        if j.is_empty() {
            return Err(Error::Unsupported("classify_parabolic needs J nonempty".into()));
        }
        for &s in j {
            self.check_letter(s)?;
        }
        let mut nodes: Vec<usize> = j.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        let comps = self.components(&nodes);
        let classes: Vec<TypeClass> = comps
            .iter()
            .map(|c| {
                let label = c
                    .iter()
                    .map(|&a| c.iter().map(|&b| self.matrix.entry(a, b)).collect())
                    .collect();
                classify_connected(&Diagram { n: c.len(), label })
            })
            .collect();
        Ok(if classes.iter().all(|&c| c == TypeClass::Finite) {
            TypeClass::Finite
        } else if classes.len() == 1 && classes[0] == TypeClass::Affine {
            TypeClass::Affine
        } else {
            TypeClass::Indefinite
        })
    }

    /// Connected components of the diagram induced on `nodes`.
    pub(crate) fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; nodes.len()];
        let mut out = Vec::new();
        for start in 0..nodes.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![nodes[start]];
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for b in 0..nodes.len() {
                    if !seen[b] && self.matrix.entry(nodes[a], nodes[b]) != 2 {
                        seen[b] = true;
                        comp.push(nodes[b]);
                        stack.push(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Moussong's criterion, checked over all subsets.
    pub fn is_hyperbolic(&self) -> Result<bool> {
        Ok(self.hyperbolicity_witness()?.is_none())
    }

    /// First failure of the hyperbolicity criterion, if any.
    pub fn hyperbolicity_witness(&self) -> Result<Option<HyperbolicWitness>> {
        let n = self.rank();
        let bound = self.limits.hyperbolic_rank_bound;
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "rank for hyperbolicity test",
                value: n,
                bound,
            });
        }
        let members = |mask: usize| -> Vec<usize> { (0..n).filter(|&i| mask >> i & 1 == 1).collect() };
        let full = 1usize << n;
        let mut infinite = vec![false; full];
        for mask in 1..full {
            let j = members(mask);
            let t = self.classify_parabolic(&j)?;
            if t == TypeClass::Affine && j.len() >= 3 {
                return Ok(Some(HyperbolicWitness::AffineSubset(j)));
            }
            infinite[mask] = t != TypeClass::Finite;
        }
        for i in 1..full {
            if !infinite[i] {
                continue;
            }
            let rest = (full - 1) & !i;
            // iterate submasks of the complement
            let mut j = rest;
            while j > 0 {
                if j > i && infinite[j] && self.commute_all(i, j) {
                    return Ok(Some(HyperbolicWitness::CommutingInfinitePair(members(i), members(j))));
                }
                j = (j - 1) & rest;
            }
        }
        Ok(None)
    }

    fn commute_all(&self, i: usize, j: usize) -> bool {
        let n = self.rank();
        (0..n).filter(|&a| i >> a & 1 == 1).all(|a| {
            (0..n)
                .filter(|&b| j >> b & 1 == 1)
                .all(|b| self.matrix.entry(a, b) == 2)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn sys(rank: usize, f: impl Fn(usize, usize) -> u32) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::from_fn(rank, f).unwrap())
    }

    fn path(labels: &[u32]) -> CoxeterSystem {
        let l = labels.to_vec();
        sys(labels.len() + 1, move |i, j| if j == i + 1 { l[i] } else { 2 })
    }

    fn all(w: &CoxeterSystem) -> TypeClass {
        w.classify_parabolic(&(0..w.rank()).collect::<Vec<_>>()).unwrap()
    }

    fn pentagon() -> CoxeterSystem {
        sys(5, |i, j| if j == i + 1 || (i == 0 && j == 4) { 2 } else { INFINITY })
    }

    fn a2_tilde() -> CoxeterSystem {
        sys(3, |_, _| 3)
    }

    #[test]
    fn finite_series() {
        assert_eq!(all(&path(&[3, 3, 3])), TypeClass::Finite);
        assert_eq!(all(&path(&[4, 3, 3])), TypeClass::Finite);
        assert_eq!(all(&path(&[3, 4, 3])), TypeClass::Finite);
        assert_eq!(all(&path(&[5, 3, 3])), TypeClass::Finite);
        assert_eq!(all(&path(&[3, 5])), TypeClass::Finite);
        assert_eq!(all(&path(&[7])), TypeClass::Finite);
        // D5: 0-1-2, 2-3, 2-4
        let d5 = sys(5, |i, j| {
            if (i, j) == (0, 1) || (i, j) == (1, 2) || (i, j) == (2, 3) || (i, j) == (2, 4) {
                3
            } else {
                2
            }
        });
        assert_eq!(all(&d5), TypeClass::Finite);
        // E8: arms 1,2,4 around node 4
        let e8 = sys(8, |i, j| {
            let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
            if edges.contains(&(i, j)) {
                3
            } else {
                2
            }
        });
        assert_eq!(all(&e8), TypeClass::Finite);
    }

    #[test]
    fn affine_series() {
        assert_eq!(all(&a2_tilde()), TypeClass::Affine);
        assert_eq!(all(&path(&[4, 4])), TypeClass::Affine);
        assert_eq!(all(&path(&[4, 3, 4])), TypeClass::Affine);
        assert_eq!(all(&path(&[3, 6])), TypeClass::Affine);
        assert_eq!(all(&path(&[3, 3, 4, 3])), TypeClass::Affine);
        assert_eq!(all(&path(&[3, 4, 3, 3])), TypeClass::Affine);
        assert_eq!(all(&path(&[INFINITY])), TypeClass::Affine);
        // B̃3: star with one 4
        let b3 = sys(4, |i, j| match (i, j) {
            (0, 1) => 4,
            (0, _) => 3,
            _ => 2,
        });
        assert_eq!(all(&b3), TypeClass::Affine);
        // D̃4
        let d4 = sys(5, |i, _| if i == 0 { 3 } else { 2 });
        assert_eq!(all(&d4), TypeClass::Affine);
        // Ẽ6: arms 2,2,2 around 0
        let e6 = sys(7, |i, j| {
            let edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)];
            if edges.contains(&(i, j)) {
                3
            } else {
                2
            }
        });
        assert_eq!(all(&e6), TypeClass::Affine);
        // D̃5: 0,1 - 2 - 3 - 4,5
        let d5 = sys(6, |i, j| {
            let edges = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)];
            if edges.contains(&(i, j)) {
                3
            } else {
                2
            }
        });
        assert_eq!(all(&d5), TypeClass::Affine);
    }

    #[test]
    fn indefinite_and_reducible() {
        assert_eq!(all(&path(&[5, 5])), TypeClass::Indefinite);
        assert_eq!(all(&path(&[3, INFINITY])), TypeClass::Indefinite);
        assert_eq!(all(&sys(3, |_, _| 4)), TypeClass::Indefinite);
        let p = pentagon();
        assert_eq!(p.classify_parabolic(&[0]).unwrap(), TypeClass::Finite);
        assert_eq!(p.classify_parabolic(&[0, 1]).unwrap(), TypeClass::Finite);
        assert_eq!(p.classify_parabolic(&[0, 2]).unwrap(), TypeClass::Affine);
        assert_eq!(p.classify_parabolic(&[0, 2, 3]).unwrap(), TypeClass::Indefinite);
        assert!(p.classify_parabolic(&[]).is_err());
    }

    #[test]
    fn hyperbolicity() {
        assert!(!a2_tilde().is_hyperbolic().unwrap());
        assert!(pentagon().is_hyperbolic().unwrap());
        assert!(path(&[INFINITY]).is_hyperbolic().unwrap());
        let dd = sys(4, |i, j| {
            if (i, j) == (0, 1) || (i, j) == (2, 3) {
                INFINITY
            } else {
                2
            }
        });
        assert_eq!(
            dd.hyperbolicity_witness().unwrap(),
            Some(HyperbolicWitness::CommutingInfinitePair(vec![0, 1], vec![2, 3]))
        );
        let big = sys(11, |_, _| INFINITY);
        assert!(big.is_hyperbolic().is_err());
    }
}
