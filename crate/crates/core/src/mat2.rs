//! 2×2 matrices over the Gaussian rationals.

use std::fmt;
use std::ops::Mul;

use num::{One, Zero};
use rand::Rng;

use crate::field::{format_gq, gq, sqrt_gq, Gq};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[Gq; 2]; 2]);

impl Mat2 {
    pub fn new(a: Gq, b: Gq, c: Gq, d: Gq) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(gq(a, 0), gq(b, 0), gq(c, 0), gq(d, 0))
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn diag(t: Gq) -> Self {
        let inv = Gq::one() / &t;
        Mat2::new(t, Gq::zero(), Gq::zero(), inv)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Gq {
        &self.0[i][j]
    }

    pub fn det(&self) -> Gq {
        let [[a, b], [c, d]] = &self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> Gq {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    pub fn is_scalar(&self) -> bool {
        self.0[0][1].is_zero() && self.0[1][0].is_zero() && self.0[0][0] == self.0[1][1]
    }

    pub fn is_diagonal(&self) -> bool {
        self.0[0][1].is_zero() && self.0[1][0].is_zero()
    }

    /// Inverse; panics on a singular matrix.
    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        assert!(!det.is_zero(), "singular matrix has no inverse");
        let [[a, b], [c, d]] = &self.0;
        Mat2::new(d / &det, -b / &det, -c / &det, a / &det)
    }

    pub fn scale(&self, s: &Gq) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        Mat2::new(a * s, b * s, c * s, d * s)
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = &self.0[i][j] + &other.0[i][j];
            }
        }
        out
    }

    /// `self · x · self⁻¹`
    pub fn conjugate(&self, x: &Mat2) -> Mat2 {
        &(self * x) * &self.inverse()
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
        &(&(a * b) * &a.inverse()) * &b.inverse()
    }

    pub fn entries(&self) -> [Gq; 4] {
        let [[a, b], [c, d]] = self.0.clone();
        [a, b, c, d]
    }

    /// Rescales an invertible matrix to determinant one when `det` is a
    /// square in `Q(i)`.
    pub fn to_unimodular(&self) -> Option<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let root = sqrt_gq(&det)?;
        Some(self.scale(&(Gq::one() / root)))
    }

    /// Random unimodular matrix as a product of elementary shears with small
    /// Gaussian-integer parameters.
    pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, steps: usize, complex: bool) -> Mat2 {
        let mut m = Mat2::identity();
        for k in 0..steps {
            let re = rng.gen_range(-2..=2);
            let im = if complex { rng.gen_range(-1..=1) } else { 0 };
            let s = gq(re, im);
            let e = if k % 2 == rng.gen_range(0..2) {
                Mat2::new(Gq::one(), s, Gq::zero(), Gq::one())
            } else {
                Mat2::new(Gq::one(), Gq::zero(), s, Gq::one())
            };
            m = &m * &e;
        }
        m
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &'a Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            format_gq(a),
            format_gq(b),
            format_gq(c),
            format_gq(d)
        )
    }
}

/// Traceless 2×2 matrices `[[p, q], [r, -p]]` as coordinate vectors `(p, q, r)`.
pub mod traceless {
    use super::*;

    pub fn basis() -> [Mat2; 3] {
        [
            Mat2::from_ints(1, 0, 0, -1),
            Mat2::from_ints(0, 1, 0, 0),
            Mat2::from_ints(0, 0, 1, 0),
        ]
    }

    pub fn coords(m: &Mat2) -> [Gq; 3] {
        [m.0[0][0].clone(), m.0[0][1].clone(), m.0[1][0].clone()]
    }

    /// 3×3 matrix (column-major by basis element) of `X ↦ a X a⁻¹`.
    pub fn adjoint(a: &Mat2) -> [[Gq; 3]; 3] {
        let cols = basis().map(|b| coords(&a.conjugate(&b)));
        let mut out: [[Gq; 3]; 3] = Default::default();
        for (c, col) in cols.iter().enumerate() {
            for r in 0..3 {
                out[r][c] = col[r].clone();
            }
        }
        out
    }
}

/// Basis of `{X : X·right = left·X}` as 2×2 matrices (not necessarily invertible).
pub fn intertwiners(left: &Mat2, right: &Mat2) -> Vec<Mat2> {
    // unknown X = [[x0, x1], [x2, x3]]; equation X·right − left·X = 0
    let mut rows = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let mut row = vec![Gq::zero(); 4];
            for k in 0..2 {
                row[i * 2 + k] = &row[i * 2 + k] + right.entry(k, j);
                row[k * 2 + j] = &row[k * 2 + j] - left.entry(i, k);
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(4, rows)
        .nullspace()
        .into_iter()
        .map(|v| {
            let [a, b, c, d]: [Gq; 4] = v.try_into().expect("four unknowns");
            Mat2::new(a, b, c, d)
        })
        .collect()
}
