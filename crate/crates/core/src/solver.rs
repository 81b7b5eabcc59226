//! Closed-form solvers. The centerpiece: for `Σ cₚ q bₚ = d` the scalar Δ
//! and the linear operator Φ — both written purely in products, conjugates,
//! dots, brackets and tri-duals of the coefficients — satisfy
//! `Φ(Σ(cₚ|bₚ)) = Δ·(1|1)`, so `q = Φ(d)/Δ` whenever Δ ≠ 0. Equations with
//! conjugate terms reduce to that case by splitting off the real part of the
//! unknown. The 2-term and Sylvester special cases get their short forms.
//!
//! Every report recomputes its residual from the original equation, so a
//! wrong closed form can never certify itself.

use alloc::vec::Vec;

use crate::quaternion::{bracket4, tri_dual_conj, Quaternion};
use crate::realsys::{assemble_m, det4, gauss_solve, LinearEquation};
use crate::sandwich::SandwichOperator;
use crate::Error;

/// Which route produced a report.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum Method {
    ClosedForm,
    Oracle,
    Sylvester,
    TwoTerm,
}

/// Result of a solve: the solution plus the scalar invariants that certify it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveReport {
    pub q: Quaternion,
    /// Δ of the (merged) plain equation; equals −3·det of its real system.
    pub delta: f64,
    /// det of the plain real system, −Δ/3.
    pub det_a: f64,
    /// det of the full real system when conjugate terms are present.
    pub det_m: Option<f64>,
    /// Max-norm defect of the returned `q` in the original equation.
    pub residual: f64,
    pub method: Method,
}

/// How Δ and Φ are summed: the reference full index loops, or the
/// antisymmetry-reduced form (sorted brackets/tri-duals, Gram traces).
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum SumStrategy {
    Naive,
    Symmetric,
}

/// Relative degeneracy floor: Δ is compared against this times the fourth
/// power of the coefficient scale `Σ‖c‖‖b‖` (Δ is degree-4 homogeneous).
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Gram tables of the term lists: `gc[p][q] = cₚ·c_q`, same for b, and
/// their matrix product, flattened row-major.
struct Tables {
    n: usize,
    gc: Vec<f64>,
    gb: Vec<f64>,
    gg: Vec<f64>,
}

impl Tables {
    fn new(terms: &[(Quaternion, Quaternion)]) -> Self {
        let n = terms.len();
        let mut gc = alloc::vec![0.0; n * n];
        let mut gb = alloc::vec![0.0; n * n];
        for p in 0..n {
            for q in 0..n {
                gc[p * n + q] = terms[p].0.dot(terms[q].0);
                gb[p * n + q] = terms[p].1.dot(terms[q].1);
            }
        }
        let mut gg = alloc::vec![0.0; n * n];
        for p in 0..n {
            for q in 0..n {
                let mut acc = 0.0;
                for r in 0..n {
                    acc += gc[p * n + r] * gb[r * n + q];
                }
                gg[p * n + q] = acc;
            }
        }
        Self { n, gc, gb, gg }
    }

    fn trace_gg(&self) -> f64 {
        (0..self.n).map(|p| self.gg[p * self.n + p]).sum()
    }

    fn trace_gg_sq(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for p in 0..n {
            for q in 0..n {
                acc += self.gg[p * n + q] * self.gg[q * n + p];
            }
        }
        acc
    }
}

fn require_plain(eq: &LinearEquation, what: &str) {
    assert!(
        eq.conj_terms.is_empty(),
        "{what} requires a plain equation; route conjugate terms through solve_with_conjugate"
    );
}

/// Δ over the full index range:
/// `Σₚᵩᵣₛ [ĉₚĉᵩĉᵣĉₛ][b̂ₚb̂ᵩb̂ᵣb̂ₛ] + 3(ĉₚ·ĉᵩ)(ĉᵣ·ĉₛ)(b̂ₚ·b̂ᵩ)(b̂ᵣ·b̂ₛ)
///  − 6(ĉₚ·ĉᵩ)(ĉᵣ·ĉₛ)(b̂ᵩ·b̂ₛ)(b̂ₚ·b̂ᵣ)`.
pub fn delta(eq: &LinearEquation) -> f64 {
    delta_with(eq, SumStrategy::Naive)
}

pub fn delta_with(eq: &LinearEquation, strategy: SumStrategy) -> f64 {
    require_plain(eq, "delta");
    let terms = &eq.plain_terms;
    let t = Tables::new(terms);
    match strategy {
        SumStrategy::Naive => delta_naive(terms, &t),
        SumStrategy::Symmetric => delta_symmetric(terms, &t),
    }
}

fn delta_naive(terms: &[(Quaternion, Quaternion)], t: &Tables) -> f64 {
    let n = t.n;
    let mut total = 0.0;
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if n >= 4 {
                        // brackets of four columns vanish unless all differ
                        total += bracket4(terms[p].0, terms[q].0, terms[r].0, terms[s].0)
                            * bracket4(terms[p].1, terms[q].1, terms[r].1, terms[s].1);
                    }
                    let cc = t.gc[p * n + q] * t.gc[r * n + s];
                    total += 3.0 * cc * t.gb[p * n + q] * t.gb[r * n + s];
                    total -= 6.0 * cc * t.gb[q * n + s] * t.gb[p * n + r];
                }
            }
        }
    }
    total
}

fn delta_symmetric(terms: &[(Quaternion, Quaternion)], t: &Tables) -> f64 {
    let n = t.n;
    let tr = t.trace_gg();
    let mut total = 3.0 * tr * tr - 6.0 * t.trace_gg_sq();
    // each unordered quadruple contributes 4! equal ordered products
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                for s in r + 1..n {
                    total += 24.0
                        * bracket4(terms[p].0, terms[q].0, terms[r].0, terms[s].0)
                        * bracket4(terms[p].1, terms[q].1, terms[r].1, terms[s].1);
                }
            }
        }
    }
    total
}

/// Φ applied to `v`:
/// `Σₚᵩᵣ c̄ₚᵩᵣ^∼ v b̄ₚᵩᵣ^∼ + 3(ĉₚ·ĉᵣ)(b̂ₚ·b̂ᵣ) c̄ᵩ v b̄ᵩ
///  − 6(ĉₚ·ĉᵣ)(b̂ᵩ·b̂ᵣ) c̄ᵩ v b̄ₚ`.
pub fn phi_apply(eq: &LinearEquation, v: Quaternion) -> Quaternion {
    phi_apply_with(eq, v, SumStrategy::Naive)
}

pub fn phi_apply_with(eq: &LinearEquation, v: Quaternion, strategy: SumStrategy) -> Quaternion {
    require_plain(eq, "phi_apply");
    match strategy {
        SumStrategy::Naive => {
            let terms = &eq.plain_terms;
            let t = Tables::new(terms);
            let n = t.n;
            let mut out = Quaternion::ZERO;
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        if n >= 3 {
                            let cd = tri_dual_conj(terms[p].0, terms[q].0, terms[r].0);
                            let bd = tri_dual_conj(terms[p].1, terms[q].1, terms[r].1);
                            out = out + cd * v * bd;
                        }
                        let w = t.gc[p * n + r];
                        out = out
                            + terms[q].0.conj() * v * terms[q].1.conj()
                                * (3.0 * w * t.gb[p * n + r])
                            - terms[q].0.conj() * v * terms[p].1.conj()
                                * (6.0 * w * t.gb[q * n + r]);
                    }
                }
            }
            out
        }
        SumStrategy::Symmetric => phi_as_operator(eq).apply(v),
    }
}

/// Φ as an explicit sandwich-term list (the antisymmetry-reduced sum):
/// one `(6c̄ₚᵩᵣ^∼ | b̄ₚᵩᵣ^∼)` per sorted triple, `(3·tr c̄ᵩ | b̄ᵩ)` per index,
/// and `(−6(GᶜGᵇ)ₚᵩ c̄ᵩ | b̄ₚ)` per pair. Composing with `Σ(cₚ|bₚ)` gives
/// `Δ·(1|1)` as matrices.
pub fn phi_as_operator(eq: &LinearEquation) -> SandwichOperator {
    require_plain(eq, "phi_as_operator");
    let terms = &eq.plain_terms;
    let t = Tables::new(terms);
    let n = t.n;
    let mut op = SandwichOperator::zero();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                let cd = tri_dual_conj(terms[p].0, terms[q].0, terms[r].0);
                let bd = tri_dual_conj(terms[p].1, terms[q].1, terms[r].1);
                op.push(cd * 6.0, bd);
            }
        }
    }
    let tr = t.trace_gg();
    for &(c, b) in terms {
        op.push(c.conj() * (3.0 * tr), b.conj());
    }
    for p in 0..n {
        for q in 0..n {
            op.push(
                terms[q].0.conj() * (-6.0 * t.gg[p * n + q]),
                terms[p].1.conj(),
            );
        }
    }
    op
}

/// `c q b = d`, solved by `q = c⁻¹ d b⁻¹`.
pub fn solve_two_term(c: Quaternion, b: Quaternion, d: Quaternion) -> Result<SolveReport, Error> {
    let nn = c.norm_sq() * b.norm_sq();
    let det_a = nn * nn;
    let delta = -3.0 * det_a;
    if nn == 0.0 {
        return Err(Error::DegenerateInput {
            delta,
            det_a,
            det_m: None,
        });
    }
    let q = c.conj() * d * b.conj() / nn;
    let eq = LinearEquation::plain(alloc::vec![(c, b)], d);
    Ok(SolveReport {
        q,
        delta,
        det_a,
        det_m: None,
        residual: eq.residual(q),
        method: Method::TwoTerm,
    })
}

/// Rewrite `c₁ q b₁ + c₂ q b₂ = d` as the Sylvester equation
/// `s q + q t = u` with `s = c₂⁻¹c₁`, `t = b₂b₁⁻¹`, `u = c₂⁻¹ d b₁⁻¹`.
pub fn reduce_three_term(
    c1: Quaternion,
    b1: Quaternion,
    c2: Quaternion,
    b2: Quaternion,
    d: Quaternion,
) -> Result<(Quaternion, Quaternion, Quaternion), Error> {
    if c2.norm_sq() == 0.0 || b1.norm_sq() == 0.0 {
        let eq = LinearEquation::plain(alloc::vec![(c1, b1), (c2, b2)], d);
        let delta = delta(&eq);
        return Err(Error::DegenerateInput {
            delta,
            det_a: -delta / 3.0,
            det_m: None,
        });
    }
    let c2i = c2.inv().expect("nonzero by the guard above");
    let b1i = b1.inv().expect("nonzero by the guard above");
    Ok((c2i * c1, b2 * b1i, c2i * d * b1i))
}

/// `s q + q t = u` via the one-line inverse: the operator `(s|1) + (1|t)`
/// composed with `(s|1) + (1|t̄)` is plain left multiplication by
/// `s² + tt̄ + (t+t̄)s`, so `q = (s² + tt̄ + (t+t̄)s)⁻¹ (s u + u t̄)`.
pub fn solve_sylvester(
    s: Quaternion,
    t: Quaternion,
    u: Quaternion,
) -> Result<SolveReport, Error> {
    let eq = LinearEquation::plain(
        alloc::vec![(s, Quaternion::ONE), (Quaternion::ONE, t)],
        u,
    );
    let delta = delta(&eq);
    let det_a = -delta / 3.0;
    let den = s * s + t * t.conj() + (t + t.conj()) * s;
    let scale = s.norm() + t.norm();
    if den.max_abs() <= DEGENERACY_TOL * scale * scale {
        return Err(Error::DegenerateInput {
            delta,
            det_a,
            det_m: None,
        });
    }
    let q = den.inv().expect("nonzero by the gate above") * (s * u + u * t.conj());
    Ok(SolveReport {
        q,
        delta,
        det_a,
        det_m: None,
        residual: eq.residual(q),
        method: Method::Sylvester,
    })
}

/// General plain equation: `q = Φ(d)/Δ`, refusing inputs whose Δ falls
/// under `tol` times the fourth power of the coefficient scale.
pub fn solve_general(eq: &LinearEquation, tol: f64) -> Result<SolveReport, Error> {
    solve_general_with(eq, tol, SumStrategy::Naive)
}

pub fn solve_general_with(
    eq: &LinearEquation,
    tol: f64,
    strategy: SumStrategy,
) -> Result<SolveReport, Error> {
    require_plain(eq, "solve_general");
    let delta = delta_with(eq, strategy);
    let det_a = -delta / 3.0;
    let scale = eq.coefficient_scale();
    if delta.abs() <= tol * scale * scale * scale * scale {
        return Err(Error::DegenerateInput {
            delta,
            det_a,
            det_m: None,
        });
    }
    let q = phi_apply_with(eq, eq.rhs, strategy) / delta;
    Ok(SolveReport {
        q,
        delta,
        det_a,
        det_m: None,
        residual: eq.residual(q),
        method: Method::ClosedForm,
    })
}

/// Full equation `Σ cᵢ q bᵢ − Σ cᵣ q̄ bᵣ = d`. Splitting `q = x₀ + x` with
/// real `x₀` and pure-imaginary `x` turns conjugate terms into plain ones:
/// all pairs merge into one plain equation in `x` with right side `d − x₀h`,
/// `h = Σ cᵢbᵢ − Σ cᵣbᵣ`. Taking real parts fixes `x₀ = Re(Φd)/Re(Φh)`,
/// and then `q = x₀ + (Φd − x₀·Φh)/Δ`.
pub fn solve_with_conjugate(eq: &LinearEquation, tol: f64) -> Result<SolveReport, Error> {
    solve_with_conjugate_with(eq, tol, SumStrategy::Naive)
}

pub fn solve_with_conjugate_with(
    eq: &LinearEquation,
    tol: f64,
    strategy: SumStrategy,
) -> Result<SolveReport, Error> {
    if eq.conj_terms.is_empty() {
        return solve_general_with(eq, tol, strategy);
    }
    let merged = LinearEquation::plain(
        eq.plain_terms
            .iter()
            .chain(&eq.conj_terms)
            .copied()
            .collect(),
        eq.rhs,
    );
    let delta = delta_with(&merged, strategy);
    let det_a = -delta / 3.0;
    let mut h = Quaternion::ZERO;
    for &(c, b) in &eq.plain_terms {
        h = h + c * b;
    }
    for &(c, b) in &eq.conj_terms {
        h = h - c * b;
    }
    let phi_h = phi_apply_with(&merged, h, strategy);
    let det_m = -phi_h.re() / 3.0;
    let scale = eq.coefficient_scale();
    let s3 = scale * scale * scale;
    if delta.abs() <= tol * s3 * scale || phi_h.re().abs() <= tol * s3 * h.norm() {
        return Err(Error::DegenerateInput {
            delta,
            det_a,
            det_m: Some(det_m),
        });
    }
    let phi_d = phi_apply_with(&merged, eq.rhs, strategy);
    let x0 = phi_d.re() / phi_h.re();
    let x = (phi_d - phi_h * x0) / delta;
    let q = Quaternion::new(x0 + x.w, x.x, x.y, x.z);
    Ok(SolveReport {
        q,
        delta,
        det_a,
        det_m: Some(det_m),
        residual: eq.residual(q),
        method: Method::ClosedForm,
    })
}

/// The independent route: Gaussian elimination on the real 4x4 system, with
/// the same report fields so closed-form output can be compared verbatim.
pub fn solve_oracle(eq: &LinearEquation) -> Result<SolveReport, Error> {
    let m = assemble_m(eq);
    let q = gauss_solve(&m, eq.rhs)?;
    let det_m_val = det4(&m);
    let (det_a, det_m) = if eq.conj_terms.is_empty() {
        (det_m_val, None)
    } else {
        let merged = LinearEquation::plain(
            eq.plain_terms
                .iter()
                .chain(&eq.conj_terms)
                .copied()
                .collect(),
            eq.rhs,
        );
        (det4(&crate::realsys::assemble_a(&merged)), Some(det_m_val))
    };
    Ok(SolveReport {
        q,
        delta: -3.0 * det_a,
        det_a,
        det_m,
        residual: eq.residual(q),
        method: Method::Oracle,
    })
}
