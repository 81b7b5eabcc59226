//! Clifford algebra over ℝ⁴ with Euclidean signature, small and dense:
//! 16 blade coefficients indexed by bitmask, products by XOR plus a
//! popcount sign. Serves as the independent oracle for the quaternion-level
//! identities — `phi` embeds quaternions as vectors, `pi` projects back,
//! and `lift_residual` re-states a whole equation inside the algebra.
//!
//! Blade sign convention: a coefficient is relative to ascending-index
//! factor order (mask 0b0011 is e0e1, never e1e0). The pseudoscalar
//! I4 = e0e1e2e3 squares to +1; the dual is RIGHT multiplication by I4.

use core::ops::{Add, Mul, Neg, Sub};

use crate::quaternion::Quaternion;
use crate::realsys::{det4, LinearEquation};
use crate::sandwich::Matrix4;
use crate::Error;

/// Element of CL(ℝ⁴); `coeff[mask]` is the coefficient of the blade whose
/// factors are the basis vectors in `mask`, ascending.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Multivector {
    pub coeff: [f64; 16],
}

/// Sign of concatenating ascending blade `a` with ascending blade `b` and
/// re-sorting, with equal factors contracting to +1.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

const fn single(mask: usize) -> Multivector {
    let mut coeff = [0.0; 16];
    coeff[mask] = 1.0;
    Multivector { coeff }
}

impl Multivector {
    pub const ZERO: Self = Self { coeff: [0.0; 16] };
    pub const ONE: Self = single(0);
    /// Pseudoscalar e0e1e2e3.
    pub const I4: Self = single(0b1111);

    pub fn scalar(x: f64) -> Self {
        Self::ONE * x
    }

    /// Unit blade for a bitmask (bit `l` set = factor `e_l`).
    pub fn blade(mask: usize) -> Self {
        assert!(mask < 16, "blade mask out of range");
        single(mask)
    }

    /// The basis vector `e_l`.
    pub fn basis_vector(l: usize) -> Self {
        Self::blade(1 << l)
    }

    /// Geometric product.
    pub fn gp(&self, other: &Self) -> Self {
        let mut out = Self::ZERO;
        for (i, &ai) in self.coeff.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in other.coeff.iter().enumerate() {
                if bj == 0.0 {
                    continue;
                }
                out.coeff[i ^ j] += reorder_sign(i, j) * ai * bj;
            }
        }
        out
    }

    /// Outer (exterior) product: the grade-raising terms of `gp`, i.e. only
    /// blade pairs with no common factor survive.
    pub fn op(&self, other: &Self) -> Self {
        let mut out = Self::ZERO;
        for (i, &ai) in self.coeff.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in other.coeff.iter().enumerate() {
                if bj == 0.0 || i & j != 0 {
                    continue;
                }
                out.coeff[i ^ j] += reorder_sign(i, j) * ai * bj;
            }
        }
        out
    }

    /// The grade-`k` part.
    pub fn grade(&self, k: usize) -> Result<Self, Error> {
        if k > 4 {
            return Err(Error::InvalidGrade { grade: k });
        }
        let mut out = Self::ZERO;
        for (mask, &v) in self.coeff.iter().enumerate() {
            if mask.count_ones() as usize == k {
                out.coeff[mask] = v;
            }
        }
        Ok(out)
    }

    /// Reversal of factor order: grade g picks up (−1)^(g(g−1)/2).
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for (mask, v) in out.coeff.iter_mut().enumerate() {
            let g = mask.count_ones();
            if (g * (g.wrapping_sub(1)) / 2) % 2 == 1 {
                *v = -*v;
            }
        }
        out
    }

    /// Conjugation `e0 · A · e0`; on vectors it fixes e0 and negates the rest.
    pub fn cl_conj(&self) -> Self {
        let e0 = Self::basis_vector(0);
        e0.gp(&self.gp(&e0))
    }

    /// Dual `A · I4` (right multiplication by the pseudoscalar).
    pub fn dual(&self) -> Self {
        self.gp(&Self::I4)
    }

    /// True when every nonzero coefficient sits on a grade-1 blade.
    pub fn is_vector(&self) -> bool {
        self.offending_grade().is_none()
    }

    /// Grade of the first nonzero non-vector blade, if any.
    fn offending_grade(&self) -> Option<usize> {
        self.coeff
            .iter()
            .enumerate()
            .find(|&(mask, &v)| v != 0.0 && mask.count_ones() != 1)
            .map(|(mask, _)| mask.count_ones() as usize)
    }

    pub fn max_abs(&self) -> f64 {
        let mut best = 0.0f64;
        for &v in &self.coeff {
            best = best.max(v.abs());
        }
        best
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.coeff.iter_mut().zip(o.coeff) {
            *a += b;
        }
        self
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (a, b) in self.coeff.iter_mut().zip(o.coeff) {
            *a -= b;
        }
        self
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(mut self) -> Self {
        for v in self.coeff.iter_mut() {
            *v = -*v;
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        for v in self.coeff.iter_mut() {
            *v *= s;
        }
        self
    }
}

/// Embed a quaternion as the vector `w·e0 + x·e1 + y·e2 + z·e3`.
pub fn phi(q: Quaternion) -> Multivector {
    let c = q.to_array();
    let mut v = Multivector::ZERO;
    for (l, &x) in c.iter().enumerate() {
        v.coeff[1 << l] = x;
    }
    v
}

/// Inverse of `phi`; rejects anything with a nonzero non-vector coefficient.
pub fn phi_inv(v: &Multivector) -> Result<Quaternion, Error> {
    if let Some(grade) = v.offending_grade() {
        return Err(Error::InvalidGrade { grade });
    }
    Ok(Quaternion::new(
        v.coeff[0b0001],
        v.coeff[0b0010],
        v.coeff[0b0100],
        v.coeff[0b1000],
    ))
}

/// Bracket of four vectors: the dual of their 4-fold wedge, realized as the
/// determinant of their coordinates.
pub fn bracket(
    x1: &Multivector,
    x2: &Multivector,
    x3: &Multivector,
    x4: &Multivector,
) -> Result<f64, Error> {
    let mut m = Matrix4::ZERO;
    for (r, x) in [x1, x2, x3, x4].into_iter().enumerate() {
        if let Some(grade) = x.offending_grade() {
            return Err(Error::InvalidGrade { grade });
        }
        for c in 0..4 {
            m.0[r][c] = x.coeff[1 << c];
        }
    }
    Ok(det4(&m))
}

/// Project CL(ℝ⁴) onto quaternions: A ↦ (ι∘π_H)(A(1+e0)(1−I4)) where H is
/// spanned by {1, e23, e13, e12} and ι sends 1↦1, e23↦−i, e13↦j, e12↦−k.
/// Left inverse of `phi`.
pub fn pi(a: &Multivector) -> Quaternion {
    let p = a
        .gp(&(Multivector::ONE + Multivector::basis_vector(0)))
        .gp(&(Multivector::ONE - Multivector::I4));
    Quaternion::new(
        p.coeff[0],
        -p.coeff[0b1100],
        p.coeff[0b1010],
        -p.coeff[0b0110],
    )
}

/// The equation `Σ c q b = d` restated inside the algebra:
/// `(Σ φ(c)·φ(q)^conj·φ(b) − φ(d))·(1+I4)`. Zero exactly when `q` solves the
/// equation; otherwise `pi(result)/2` is the quaternion defect `Σ c q b − d`.
///
/// Panics if the equation has conjugate terms.
pub fn lift_residual(eq: &LinearEquation, q: Quaternion) -> Multivector {
    assert!(
        eq.conj_terms.is_empty(),
        "lift_residual requires a plain equation"
    );
    let qv = phi(q).cl_conj();
    let mut acc = Multivector::ZERO;
    for &(c, b) in &eq.plain_terms {
        acc = acc + phi(c).gp(&qv).gp(&phi(b));
    }
    acc = acc - phi(eq.rhs);
    acc.gp(&(Multivector::ONE + Multivector::I4))
}
