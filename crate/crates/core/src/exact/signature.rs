//! Signature of a rational symmetric bilinear form.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use crate::Error;

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_neutral(&self) -> bool {
        self.zero == 0 && self.positive == self.negative
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Sylvester signature via symmetric Gaussian elimination.
///
/// Every step is a congruence `M ↦ Pᵀ M P`, so the inertia is preserved. When
/// the current diagonal entry vanishes, a later nonzero diagonal entry is
/// swapped in; if the whole remaining diagonal vanishes but some off-diagonal
/// entry `(k, j)` does not, adding row and column `j` to `k` makes the pivot
/// `2 M[k][j]`.
pub fn signature(m: &Matrix<Scalar>) -> Result<Signature, Error> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric(i, j));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[(p, p)].is_zero()) {
                swap_sym(&mut a, k, p);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                add_sym(&mut a, k, j);
            } else {
                sig.zero += 1;
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        // Schur complement of the pivot; row and column k are then dropped
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor = a[(i, k)].clone() / pivot.clone();
            for j in k + 1..n {
                let v = a[(i, j)].clone() - factor.clone() * a[(k, j)].clone();
                a[(i, j)] = v;
            }
        }
        for i in k + 1..n {
            a[(i, k)] = Scalar::zero();
            a[(k, i)] = Scalar::zero();
        }
    }
    Ok(sig)
}

fn swap_sym(a: &mut Matrix<Scalar>, p: usize, q: usize) {
    a.swap_rows(p, q);
    for i in 0..a.rows() {
        let t = a[(i, p)].clone();
        a[(i, p)] = a[(i, q)].clone();
        a[(i, q)] = t;
    }
}

// row k += row j, then column k += column j
fn add_sym(a: &mut Matrix<Scalar>, k: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = a[(k, c)].clone() + a[(j, c)].clone();
        a[(k, c)] = v;
    }
    for r in 0..n {
        let v = a[(r, k)].clone() + a[(r, j)].clone();
        a[(r, k)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane() {
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let s = signature(&m).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        assert!(s.is_neutral());
    }

    #[test]
    fn degenerate_and_definite() {
        let m = Matrix::from_ints(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -3]]);
        let s = signature(&m).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 1));
    }

    #[test]
    fn hollow_block_after_elimination() {
        let m = Matrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(
            signature(&m).unwrap(),
            Signature {
                positive: 2,
                negative: 2,
                zero: 0
            }
        );
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_ints(&[&[0, 1], &[2, 0]]);
        assert!(matches!(signature(&m), Err(Error::NotSymmetric(0, 1))));
    }
}
