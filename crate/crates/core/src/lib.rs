//! Closed-form, basis-free solving of linear quaternionic equations
//!
//! ```text
//! c1 q b1 + c2 q b2 + ... = d        (optionally minus conjugate terms  cr q̄ br)
//! ```
//!
//! together with two independent cross-check routes:
//!
//! * the associated real 4x4 linear system (assembly, Gaussian elimination,
//!   determinant/adjugate both numerically and in closed form), and
//! * a Clifford algebra over R^4 in which the equation lifts to a one-sided
//!   identity whose residual vanishes exactly at solutions.
//!
//! The closed form produces the solution as `phi_apply(eq, d) / delta(eq)`,
//! a rational expression in the coefficients and their conjugates — no basis
//! element is ever special-cased, which is what makes the result covariant
//! under global unit-quaternion conjugation (see the solver tests).
//!
//! `no_std` builds are supported with `default-features = false` plus the
//! `libm` feature (only `sqrt` is pulled from libm).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("quatlin-core needs either the `std` or the `libm` feature for sqrt");

pub mod clifford4;
mod error;
pub mod quaternion;
pub mod realsys;
pub mod rng;
pub mod sandwich;
pub mod solver;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use quaternion::Quaternion;
pub use realsys::LinearEquation;
pub use sandwich::{Matrix4, SandwichOperator, SandwichTerm};
pub use solver::{Method, SolveReport};

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.sqrt()
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::sqrt(x)
    }
}
