//! Root-coordinate descent oracle used by the word problem.
//!
//! An element `w` is tracked by the matrix of `w⁻¹` acting on the simple
//! roots. `s` is a left descent of `w` exactly when `w⁻¹(α_s)` is a negative
//! root, which is a sign test on one column. When every finite entry of the
//! Coxeter matrix lies in {2, 3, 4, 6} the representation is built from an
//! integer generalized Cartan matrix and all arithmetic is exact; a matrix
//! whose entries outgrow `i128` moves to big integers.

use num_bigint::BigInt;

/// Cartan data, chosen once per system.
#[derive(Debug, Clone)]
pub(crate) enum Cartan {
    Int(Vec<i128>),
    Float(Vec<f64>),
}

const FLOAT_TOL: f64 = 1e-9;

impl Cartan {
    /// `orders[i * rank + j]` is `m(i, j)` with `0` meaning infinity.
    pub(crate) fn from_orders(rank: usize, orders: &[u32]) -> Cartan {
        let crystallographic = orders
            .iter()
            .enumerate()
            .all(|(k, &m)| k / rank == k % rank || matches!(m, 0 | 2 | 3 | 4 | 6));
        if crystallographic {
            let mut a = vec![0i128; rank * rank];
            for i in 0..rank {
                for j in 0..rank {
                    a[i * rank + j] = if i == j {
                        2
                    } else {
                        // a_ij * a_ji = 4 cos^2(pi / m); the larger factor goes below the diagonal
                        match (orders[i * rank + j], i < j) {
                            (2, _) => 0,
                            (3, _) => -1,
                            (4, true) => -1,
                            (4, false) => -2,
                            (6, true) => -1,
                            (6, false) => -3,
                            _ => -2,
                        }
                    };
                }
            }
            Cartan::Int(a)
        } else {
            let mut a = vec![0f64; rank * rank];
            for i in 0..rank {
                for j in 0..rank {
                    a[i * rank + j] = if i == j {
                        2.0
                    } else {
                        match orders[i * rank + j] {
                            0 => -2.0,
                            m => -2.0 * (std::f64::consts::PI / m as f64).cos(),
                        }
                    };
                }
            }
            Cartan::Float(a)
        }
    }
}

/// Matrix of an element acting on root coordinates; columns are images of
/// simple roots.
pub(crate) enum RootMatrix {
    Int { rank: usize, m: Vec<i128> },
    Big { rank: usize, m: Vec<BigInt> },
    Float { rank: usize, m: Vec<f64> },
}

impl RootMatrix {
    pub(crate) fn identity(cartan: &Cartan, rank: usize) -> RootMatrix {
        match cartan {
            Cartan::Int(_) => {
                let mut m = vec![0; rank * rank];
                for i in 0..rank {
                    m[i * rank + i] = 1;
                }
                RootMatrix::Int { rank, m }
            }
            Cartan::Float(_) => {
                let mut m = vec![0.0; rank * rank];
                for i in 0..rank {
                    m[i * rank + i] = 1.0;
                }
                RootMatrix::Float { rank, m }
            }
        }
    }

    /// `self <- self * s_i`. Column `j` becomes `col_j - a_ij col_i`.
    /// Entries are stored row-major: `m[row * rank + col]`.
    pub(crate) fn right_mul(&mut self, cartan: &Cartan, i: usize) {
        match (self, cartan) {
            (this @ RootMatrix::Int { .. }, Cartan::Int(a)) => {
                let RootMatrix::Int { rank, m } = &mut *this else {
                    unreachable!()
                };
                let r = *rank;
                match int_step(m, a, r, i) {
                    Some(next) => *m = next,
                    None => {
                        let big = m.iter().map(|&v| BigInt::from(v)).collect();
                        *this = RootMatrix::Big { rank: r, m: big };
                        this.right_mul(cartan, i);
                    }
                }
            }
            (RootMatrix::Big { rank, m }, Cartan::Int(a)) => {
                let r = *rank;
                let col: Vec<BigInt> = (0..r).map(|row| m[row * r + i].clone()).collect();
                for j in 0..r {
                    let aij = a[i * r + j];
                    if aij == 0 {
                        continue;
                    }
                    for row in 0..r {
                        m[row * r + j] -= &col[row] * aij;
                    }
                }
            }
            (RootMatrix::Float { rank, m }, Cartan::Float(a)) => {
                let r = *rank;
                let col: Vec<f64> = (0..r).map(|row| m[row * r + i]).collect();
                for j in 0..r {
                    let aij = a[i * r + j];
                    if aij == 0.0 {
                        continue;
                    }
                    for row in 0..r {
                        let v = col[row];
                        m[row * r + j] -= aij * v;
                    }
                }
            }
            _ => unreachable!("cartan kind mismatch"),
        }
    }

    /// Whether column `j` is a negative root.
    pub(crate) fn column_negative(&self, j: usize) -> bool {
        match self {
            RootMatrix::Int { rank, m } => {
                for row in 0..*rank {
                    let v = m[row * rank + j];
                    if v != 0 {
                        return v < 0;
                    }
                }
                false
            }
            RootMatrix::Big { rank, m } => (0..*rank)
                .map(|row| &m[row * rank + j])
                .find(|v| v.sign() != num_bigint::Sign::NoSign)
                .is_some_and(|v| v.sign() == num_bigint::Sign::Minus),
            RootMatrix::Float { rank, m } => {
                let s: f64 = (0..*rank).map(|row| m[row * rank + j]).sum();
                s < -FLOAT_TOL
            }
        }
    }
}

/// One exact `right_mul` step, or `None` on overflow.
fn int_step(m: &[i128], a: &[i128], r: usize, i: usize) -> Option<Vec<i128>> {
    let mut next = m.to_vec();
    for j in 0..r {
        let aij = a[i * r + j];
        if aij == 0 {
            continue;
        }
        for row in 0..r {
            next[row * r + j] = next[row * r + j].checked_sub(aij.checked_mul(m[row * r + i])?)?;
        }
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_words_outgrow_i128_exactly() {
        // free product of three order-2 groups: every alternating word is reduced
        let cartan = Cartan::from_orders(3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let mut m = RootMatrix::identity(&cartan, 3);
        let word: Vec<usize> = (0..300).map(|k| k % 3).collect();
        for &s in word.iter().rev() {
            m.right_mul(&cartan, s);
        }
        assert!(matches!(m, RootMatrix::Big { .. }));
        // the only left descent of w is its first letter
        let negatives: Vec<usize> = (0..3).filter(|&s| m.column_negative(s)).collect();
        assert_eq!(negatives, vec![word[0]]);
    }
}
