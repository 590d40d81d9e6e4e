//! Homology of Brieskorn-Pham links.
//!
//! The link of `x1^a1 + x2^a2 + x3^a3 + x4^a4 = 0` is a smooth 5-manifold;
//! its `H_2` is the cokernel of `I - h` where `h` is the Milnor-fiber
//! monodromy, the tensor product of the four companion matrices of
//! `1 + t + ... + t^(a-1)`.  This module computes that cokernel with exact
//! integer arithmetic and serves as an independent oracle for the Seifert
//! bundle computation of the same manifolds.

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{cokernel, FiniteAbelianGroup, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BPExponents(pub [u64; 4]);

impl BPExponents {
    pub fn new(a: [u64; 4]) -> Result<Self> {
        if a.iter().any(|&x| x < 2) {
            return Err(Error::InvalidInput(
                "Brieskorn-Pham exponents must be at least 2".into(),
            ));
        }
        Ok(BPExponents(a))
    }

    /// Milnor number of the singularity: `prod (a_i - 1)`.
    pub fn milnor_number(&self) -> u64 {
        self.0.iter().map(|&a| a - 1).product()
    }

    /// Monodromy of the Milnor fiber on `H_3`, a `mu x mu` integer matrix.
    pub fn monodromy(&self) -> IntMatrix {
        self.0
            .iter()
            .map(|&a| companion(a))
            .reduce(|a, b| kronecker(&a, &b))
            .expect("four factors")
    }

    /// `H_2` of the link: `coker(I - h)`.
    pub fn link_h2(&self) -> FiniteAbelianGroup {
        let h = self.monodromy();
        let mu = h.rows;
        let mut m = IntMatrix::identity(mu);
        for i in 0..mu {
            for j in 0..mu {
                let v = &m[(i, j)] - &h[(i, j)];
                m[(i, j)] = v;
            }
        }
        cokernel(&m)
    }

    /// `|det(I - h)|`, the order of `H_2` when it is finite, computed by
    /// fraction-free elimination independently of the Smith form.
    pub fn torsion_order_det(&self) -> BigInt {
        let h = self.monodromy();
        let mu = h.rows;
        let mut m = IntMatrix::identity(mu);
        for i in 0..mu {
            for j in 0..mu {
                let v = &m[(i, j)] - &h[(i, j)];
                m[(i, j)] = v;
            }
        }
        bareiss_det(&m).abs()
    }

    /// Are the given weights the weights of this hypersurface of degree
    /// `d`, i.e. `a_i * w_i = d` for all `i`?
    pub fn weights_match(&self, weights: [u64; 4], d: u64) -> bool {
        self.0
            .iter()
            .zip(weights)
            .all(|(&a, w)| a.checked_mul(w) == Some(d))
    }
}

/// Companion matrix of `1 + t + ... + t^(a-1)`: multiplication by `t` on
/// the quotient ring, in the power basis `1, t, ..., t^(a-2)`.
pub fn companion(a: u64) -> IntMatrix {
    let n = (a - 1) as usize;
    let mut m = IntMatrix::zero(n, n);
    for k in 0..n - 1 {
        m[(k + 1, k)] = BigInt::one();
    }
    for k in 0..n {
        m[(k, n - 1)] = BigInt::from(-1);
    }
    m
}

pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

/// Exact determinant by the Bareiss fraction-free algorithm.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Do two computations of the same manifold agree on the torsion of `H_2`?
/// (The Seifert side may carry extra known free rank, so only the torsion
/// chains are compared.)
pub fn cross_check(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> bool {
    a.torsion == b.torsion
}

/// CLI input format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkSpec {
    pub exponents: [u64; 4],
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_link() {
        // x^2 + y^2 + z^2 + t^2: mu = 1, h = (-1)^4 = 1, H_2 = Z.
        let e = BPExponents::new([2, 2, 2, 2]).unwrap();
        assert_eq!(e.milnor_number(), 1);
        let g = e.link_h2();
        assert_eq!(g.free_rank, 1);
        assert!(g.torsion.is_empty());
    }

    #[test]
    fn odd_suspension_is_sphere() {
        // x^2 + y^2 + z^2 + t^a with a odd gives a homotopy sphere.
        for a in [3, 5, 7] {
            let e = BPExponents::new([2, 2, 2, a]).unwrap();
            let g = e.link_h2();
            assert!(g.is_trivial(), "a = {a}: {g}");
            assert_eq!(e.torsion_order_det(), BigInt::one());
        }
        // While a even gives S^2 x S^3.
        let e = BPExponents::new([2, 2, 2, 6]).unwrap();
        assert_eq!(e.link_h2().to_string(), "Z");
    }

    #[test]
    fn determinant_matches_torsion_order() {
        for exps in [[2, 2, 3, 3], [2, 3, 3, 4], [3, 3, 2, 2]] {
            let e = BPExponents::new(exps).unwrap();
            let g = e.link_h2();
            if g.free_rank == 0 {
                assert_eq!(e.torsion_order_det(), g.torsion_order());
            } else {
                assert_eq!(e.torsion_order_det(), BigInt::zero());
            }
        }
    }

    #[test]
    fn bareiss_small() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, -1], vec![0, 4, 5]]);
        // det = 2*(15+4) - 0 + 1*(4-0) = 42.
        assert_eq!(bareiss_det(&m), BigInt::from(42));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(bareiss_det(&singular), BigInt::zero());
    }

    #[test]
    fn weights_check() {
        let e = BPExponents::new([6, 6, 2, 5]).unwrap();
        assert!(e.weights_match([5, 5, 15, 6], 30));
        assert!(!e.weights_match([5, 5, 15, 7], 30));
    }

    #[test]
    fn permutation_invariance() {
        let a = BPExponents::new([2, 3, 4, 5]).unwrap().link_h2();
        let b = BPExponents::new([5, 4, 3, 2]).unwrap().link_h2();
        assert_eq!(a, b);
    }
}
