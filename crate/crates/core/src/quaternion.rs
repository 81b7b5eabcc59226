//! Quaternion value type and the derived products the closed-form solver
//! is built from: the R^4 inner product, the 4-argument bracket (a 4x4
//! coordinate determinant evaluated without coordinates), and the dual of a
//! wedge of three vectors ("tri-dual").

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::Error;

/// `w + x i + y j + z k` over f64. Hamilton convention: `i² = j² = k² = -1`,
/// `ij = k`. Plain immutable value; nothing is ever normalized implicitly.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);
    /// The four basis quaternions in coordinate order.
    pub const BASIS: [Self; 4] = [Self::ONE, Self::I, Self::J, Self::K];

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn scalar(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Conjugate: negates the i, j, k parts (exact sign flips).
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Scalar part as a real.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Pure-imaginary part, `(q - q̄)/2`.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// `q q̄ = w² + x² + y² + z²`.
    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        crate::sqrt(self.norm_sq())
    }

    /// Multiplicative inverse `q̄ / |q|²`; refuses the zero quaternion.
    pub fn inv(self) -> Result<Self, Error> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::DegenerateInput {
                delta: 0.0,
                det_a: 0.0,
                det_m: None,
            });
        }
        Ok(self.conj() / n)
    }

    /// Inner product of the coordinate vectors in R^4; equals
    /// `re(a b̄)` and the scalar part of `(a b̄ + b ā)/2`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Largest absolute coordinate (the max-norm used for residuals).
    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    /// Hamilton product.
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

/// Determinant of the 4x4 matrix whose rows are the coordinates of
/// `a1..a4`, evaluated purely through quaternion products as
/// `-1/4 · Re(a1 ā2 a3 ā4 + a4 ā3 a2 ā1 - a4 ā1 a2 ā3 - a3 ā2 a1 ā4)`.
/// Alternating in its four arguments.
pub fn bracket4(a1: Quaternion, a2: Quaternion, a3: Quaternion, a4: Quaternion) -> f64 {
    let t = a1 * a2.conj() * a3 * a4.conj() + a4 * a3.conj() * a2 * a1.conj()
        - a4 * a1.conj() * a2 * a3.conj()
        - a3 * a2.conj() * a1 * a4.conj();
    -0.25 * t.re()
}

/// `(a1 ā2 a3 - a3 ā2 a1) / 2`: the quaternion whose coordinate vector is the
/// dual `(â1 ∧ â2 ∧ â3) I4` in CL(R^4), with the pseudoscalar acting by right
/// multiplication (so `tri_dual(i, j, k) = 1`). Alternating in its arguments.
pub fn tri_dual(a1: Quaternion, a2: Quaternion, a3: Quaternion) -> Quaternion {
    (a1 * a2.conj() * a3 - a3 * a2.conj() * a1) * 0.5
}

/// The tri-dual taken over conjugated arguments; equals
/// `-conj(tri_dual(a1, a2, a3))`, which is how it is evaluated.
#[inline]
pub fn tri_dual_conj(a1: Quaternion, a2: Quaternion, a3: Quaternion) -> Quaternion {
    -tri_dual(a1, a2, a3).conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_quaternion;
    use proptest::prelude::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).max_abs() <= tol * a.max_abs().max(b.max_abs()).max(1.0)
    }

    #[test]
    fn hamilton_relations() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::I * Q::I, -Q::ONE);
        assert_eq!(Q::J * Q::J, -Q::ONE);
        assert_eq!(Q::K * Q::K, -Q::ONE);
        let q = Q::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q * Q::ONE, q);
        // (1+i)(1-i) = 2
        assert_eq!(
            Q::new(1.0, 1.0, 0.0, 0.0) * Q::new(1.0, -1.0, 0.0, 0.0),
            Q::scalar(2.0)
        );
    }

    #[test]
    fn conj_and_parts() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q.conj(), Quaternion::new(1.0, -2.0, -3.0, -4.0));
        assert_eq!(q.conj().conj(), q);
        assert_eq!(Quaternion::scalar(5.0).conj(), Quaternion::scalar(5.0));
        assert_eq!((Quaternion::I + Quaternion::J).re(), 0.0);
        assert_eq!((Quaternion::scalar(3.0) + Quaternion::I).im(), Quaternion::I);
    }

    #[test]
    fn inverse_contract() {
        assert_eq!(Quaternion::scalar(2.0).inv().unwrap(), Quaternion::scalar(0.5));
        let q = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert!(close(q.inv().unwrap() * q, Quaternion::ONE, 1e-15));
        assert!(matches!(
            Quaternion::ZERO.inv(),
            Err(Error::DegenerateInput { .. })
        ));
    }

    #[test]
    fn dot_basics() {
        assert_eq!(Quaternion::ONE.dot(Quaternion::I), 0.0);
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q.dot(q), 30.0);
    }

    #[test]
    fn bracket4_basis() {
        use Quaternion as Q;
        assert_eq!(bracket4(Q::ONE, Q::I, Q::J, Q::K), 1.0);
        assert_eq!(bracket4(Q::ONE, Q::I, Q::J, Q::J), 0.0);
    }

    #[test]
    fn tri_dual_orientation() {
        use Quaternion as Q;
        // the frozen sign convention for the whole crate
        assert_eq!(tri_dual(Q::I, Q::J, Q::K), Q::ONE);
        assert_eq!(tri_dual(Q::ONE, Q::I, Q::J), -Q::K);
        let a = Q::new(0.3, -0.7, 0.2, 0.9);
        let b = Q::new(-0.4, 0.1, 0.8, -0.2);
        assert!(tri_dual(a, a, b).max_abs() <= 1e-15);
    }

    proptest! {
        #[test]
        fn mul_conj_gives_norm_sq(q in arb_quaternion()) {
            let p = q * q.conj();
            prop_assert!((p.re() - q.norm_sq()).abs() <= 1e-14 * q.norm_sq().max(1.0));
            prop_assert!(p.im().max_abs() <= 1e-14 * q.norm_sq().max(1.0));
        }

        #[test]
        fn norm_is_multiplicative(a in arb_quaternion(), b in arb_quaternion()) {
            let lhs = (a * b).norm_sq();
            let rhs = a.norm_sq() * b.norm_sq();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn conj_is_anti_homomorphism(a in arb_quaternion(), b in arb_quaternion()) {
            prop_assert!(close((a * b).conj(), b.conj() * a.conj(), 1e-14));
        }

        #[test]
        fn dot_via_products(a in arb_quaternion(), b in arb_quaternion()) {
            let sym = (a * b.conj() + b * a.conj()) * 0.5;
            prop_assert!((sym.re() - a.dot(b)).abs() <= 1e-13);
            prop_assert!(sym.im().max_abs() <= 1e-13);
            prop_assert!((a.dot(b) - (a * b.conj()).re()).abs() <= 1e-13);
        }

        #[test]
        fn bracket4_alternates(
            a in arb_quaternion(), b in arb_quaternion(),
            c in arb_quaternion(), d in arb_quaternion(),
        ) {
            let v = bracket4(a, b, c, d);
            prop_assert!((bracket4(b, a, c, d) + v).abs() <= 1e-12 * v.abs().max(1.0));
            prop_assert!((bracket4(a, c, b, d) + v).abs() <= 1e-12 * v.abs().max(1.0));
            prop_assert!((bracket4(a, b, d, c) + v).abs() <= 1e-12 * v.abs().max(1.0));
        }

        #[test]
        fn bracket4_of_conjugates_flips_sign(
            a in arb_quaternion(), b in arb_quaternion(),
            c in arb_quaternion(), d in arb_quaternion(),
        ) {
            // conjugation is an orthogonal map of determinant -1 on R^4
            let v = bracket4(a, b, c, d);
            let w = bracket4(a.conj(), b.conj(), c.conj(), d.conj());
            prop_assert!((v + w).abs() <= 1e-12 * v.abs().max(1.0));
        }

        #[test]
        fn tri_dual_alternates(a in arb_quaternion(), b in arb_quaternion(), c in arb_quaternion()) {
            let v = tri_dual(a, b, c);
            prop_assert!(close(tri_dual(b, a, c), -v, 1e-12));
            prop_assert!(close(tri_dual(a, c, b), -v, 1e-12));
            prop_assert!(tri_dual(a, a, c).max_abs() <= 1e-13);
        }

        #[test]
        fn tri_dual_conj_is_negated_conjugate(
            a in arb_quaternion(), b in arb_quaternion(), c in arb_quaternion(),
        ) {
            prop_assert!(close(tri_dual_conj(a, b, c), -tri_dual(a, b, c).conj(), 1e-15));
        }
    }
}
