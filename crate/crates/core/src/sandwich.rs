//! The two-sided multiplication operator algebra: sums of terms
//! `q ↦ u q v`, their composition, and the bijection with real 4x4 matrices.
//!
//! Every real-linear map on quaternions is such a sum; `from_matrix`
//! reconstructs the canonical four-term form `(p0|1) + (p1|i) + (p2|j) + (p3|k)`
//! from a matrix, and `to_matrix` goes the other way by applying the operator
//! to the basis.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use crate::quaternion::Quaternion;

/// One `q ↦ left · q · right` term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichTerm {
    pub left: Quaternion,
    pub right: Quaternion,
}

/// Ordered sum of sandwich terms; the empty sum is the zero operator.
/// Term order never affects `apply` (it is a plain sum).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SandwichOperator {
    pub terms: Vec<SandwichTerm>,
}

impl SandwichOperator {
    pub fn new(terms: Vec<SandwichTerm>) -> Self {
        Self { terms }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// The single term `(left | right)`.
    pub fn term(left: Quaternion, right: Quaternion) -> Self {
        Self {
            terms: vec![SandwichTerm { left, right }],
        }
    }

    /// `(1 | 1)`.
    pub fn identity() -> Self {
        Self::term(Quaternion::ONE, Quaternion::ONE)
    }

    pub fn push(&mut self, left: Quaternion, right: Quaternion) {
        self.terms.push(SandwichTerm { left, right });
    }

    /// `Σ leftₜ · q · rightₜ`.
    pub fn apply(&self, q: Quaternion) -> Quaternion {
        let mut out = Quaternion::ZERO;
        for t in &self.terms {
            out = out + t.left * q * t.right;
        }
        out
    }

    /// Operator composition `self ∘ f`, term by term:
    /// `(u1|v1)(u2|v2) = (u1 u2 | v2 v1)`. Returns `m·n` terms, unsimplified.
    pub fn compose(&self, f: &SandwichOperator) -> SandwichOperator {
        let mut terms = Vec::with_capacity(self.terms.len() * f.terms.len());
        for g in &self.terms {
            for h in &f.terms {
                terms.push(SandwichTerm {
                    left: g.left * h.left,
                    right: h.right * g.right,
                });
            }
        }
        SandwichOperator { terms }
    }

    /// Matrix of the operator on coordinates: column `l` is the coordinate
    /// vector of `apply(basis_l)`.
    pub fn to_matrix(&self) -> Matrix4 {
        let mut m = Matrix4::ZERO;
        for (l, &e) in Quaternion::BASIS.iter().enumerate() {
            let col = self.apply(e).to_array();
            for (r, &v) in col.iter().enumerate() {
                m.0[r][l] = v;
            }
        }
        m
    }

    /// Canonical four-term operator `(p0|1) + (p1|i) + (p2|j) + (p3|k)` with
    /// the same matrix as `m`. Inverse of `to_matrix` (as an operator action,
    /// not as a term list).
    pub fn from_matrix(m: &Matrix4) -> SandwichOperator {
        let a = &m.0;
        let p0 = Quaternion::new(
            a[0][0] + a[1][1] + a[2][2] + a[3][3],
            -a[0][1] + a[1][0] - a[2][3] + a[3][2],
            -a[0][2] + a[1][3] + a[2][0] - a[3][1],
            -a[0][3] - a[1][2] + a[2][1] + a[3][0],
        );
        let p1 = Quaternion::new(
            -a[0][1] + a[1][0] + a[2][3] - a[3][2],
            -a[0][0] - a[1][1] + a[2][2] + a[3][3],
            -a[0][3] - a[1][2] - a[2][1] - a[3][0],
            a[0][2] - a[1][3] + a[2][0] - a[3][1],
        );
        let p2 = Quaternion::new(
            -a[0][2] - a[1][3] + a[2][0] + a[3][1],
            a[0][3] - a[1][2] - a[2][1] + a[3][0],
            -a[0][0] + a[1][1] - a[2][2] + a[3][3],
            -a[0][1] - a[1][0] - a[2][3] - a[3][2],
        );
        let p3 = Quaternion::new(
            -a[0][3] + a[1][2] - a[2][1] + a[3][0],
            -a[0][2] - a[1][3] - a[2][0] - a[3][1],
            a[0][1] + a[1][0] - a[2][3] - a[3][2],
            -a[0][0] + a[1][1] + a[2][2] - a[3][3],
        );
        let quarter = 0.25;
        SandwichOperator {
            terms: Quaternion::BASIS
                .iter()
                .zip([p0, p1, p2, p3])
                .map(|(&e, p)| SandwichTerm {
                    left: p * quarter,
                    right: e,
                })
                .collect(),
        }
    }
}

/// Row-major real 4x4 matrix over the coordinate basis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Matrix4(pub [[f64; 4]; 4]);

impl Matrix4 {
    pub const ZERO: Self = Self([[0.0; 4]; 4]);
    pub const IDENTITY: Self = {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = 1.0;
        m[1][1] = 1.0;
        m[2][2] = 1.0;
        m[3][3] = 1.0;
        Self(m)
    };

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, &v) in d.iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::ZERO;
        for r in 0..4 {
            for c in 0..4 {
                t.0[c][r] = self.0[r][c];
            }
        }
        t
    }

    /// Matrix-vector product on a coordinate vector.
    pub fn apply_vec(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.0) {
            for (m, x) in row.iter().zip(v) {
                *o += m * x;
            }
        }
        out
    }

    /// The matrix acting on a quaternion through its coordinates.
    pub fn apply(&self, q: Quaternion) -> Quaternion {
        Quaternion::from_array(self.apply_vec(q.to_array()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        let mut best = 0.0f64;
        for row in &self.0 {
            for &v in row {
                best = best.max(v.abs());
            }
        }
        best
    }
}

impl Mul for Matrix4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = Self::ZERO;
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += self.0[r][k] * o.0[k][c];
                }
                m.0[r][c] = acc;
            }
        }
        m
    }
}

impl Add for Matrix4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] += o.0[r][c];
            }
        }
        m
    }
}

impl Sub for Matrix4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut m = self;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] -= o.0[r][c];
            }
        }
        m
    }
}
