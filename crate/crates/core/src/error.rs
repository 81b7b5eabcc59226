use thiserror::Error;

/// Failure cases surfaced by the solvers and oracles.
///
/// Degenerate inputs are refused, never approximated: the closed form divides
/// by `delta`, so a vanishing `delta` (or vanishing `re(Φh)` in the conjugate
/// case, reported through `det_m`) means the equation has no unique solution.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    /// The equation (or quaternion) is outside the non-degenerate domain of
    /// the closed form. Carries the scalars that tripped the threshold.
    #[error("degenerate input: delta = {delta:e}, det_a = {det_a:e}")]
    DegenerateInput {
        delta: f64,
        det_a: f64,
        det_m: Option<f64>,
    },
    /// Gaussian elimination hit a pivot below `threshold`.
    #[error("singular linear system: pivot {pivot:e} <= threshold {threshold:e}")]
    SingularSystem { pivot: f64, threshold: f64 },
    /// A grade outside 0..=4 was requested, or an operand that must be a
    /// pure grade-`grade` element was not one.
    #[error("invalid grade {grade} for this operation")]
    InvalidGrade { grade: usize },
}
