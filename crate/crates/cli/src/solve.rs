//! `solve`: read an equation file, solve by the requested route(s), print
//! the solution plus its certificates, and refuse to exit cleanly when
//! routes disagree or a recorded truth is missed.

use quatlin_core::solver::{solve_oracle, solve_with_conjugate, DEGENERACY_TOL};
use quatlin_core::{Method, Quaternion, SolveReport};
use serde::Serialize;

use crate::equation_file::EquationFile;
use crate::{CliError, MethodArg, SolveArgs};

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed",
        Method::Oracle => "oracle",
        Method::Sylvester => "sylvester",
        Method::TwoTerm => "two_term",
    }
}

#[derive(Serialize)]
struct SolveOutput {
    q: [f64; 4],
    delta: f64,
    det_a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    det_m: Option<f64>,
    residual: f64,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truth_error: Option<f64>,
}

/// `-0.0` carries no information here and only confuses diffs.
fn unsigned_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl SolveOutput {
    fn new(r: &SolveReport) -> Self {
        Self {
            q: r.q.to_array().map(unsigned_zero),
            delta: unsigned_zero(r.delta),
            det_a: unsigned_zero(r.det_a),
            det_m: r.det_m.map(unsigned_zero),
            residual: r.residual,
            method: method_name(r.method),
            discrepancy: None,
            truth_error: None,
        }
    }

    fn print_text(&self) {
        let [w, x, y, z] = self.q;
        println!("q = [{w}, {x}, {y}, {z}]");
        println!("delta = {}", self.delta);
        println!("det_a = {}", self.det_a);
        if let Some(m) = self.det_m {
            println!("det_m = {m}");
        }
        println!("residual = {:.3e}", self.residual);
        println!("method = {}", self.method);
        if let Some(d) = self.discrepancy {
            println!("discrepancy = {d:.3e}");
        }
        if let Some(t) = self.truth_error {
            println!("truth_error = {t:.3e}");
        }
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)?;
    let file: EquationFile = serde_json::from_str(&text)?;
    let eq = file.to_equation()?;

    let mut oracle_q = None;
    let report = match args.method {
        MethodArg::Closed => solve_with_conjugate(&eq, DEGENERACY_TOL).map_err(CliError::Degenerate)?,
        MethodArg::Oracle => solve_oracle(&eq).map_err(CliError::Degenerate)?,
        MethodArg::Both => {
            let closed = solve_with_conjugate(&eq, DEGENERACY_TOL).map_err(CliError::Degenerate)?;
            let oracle = solve_oracle(&eq).map_err(CliError::Degenerate)?;
            oracle_q = Some(oracle.q);
            closed
        }
    };

    let mut out = SolveOutput::new(&report);
    out.discrepancy = oracle_q.map(|o| (report.q - o).max_abs());
    if args.check_truth {
        let t = file.truth.ok_or_else(|| {
            CliError::Schema("--check-truth needs a \"truth\" field in the input".into())
        })?;
        out.truth_error = Some((report.q - Quaternion::from_array(t)).max_abs());
    }

    if args.json {
        println!("{}", serde_json::to_string(&out)?);
    } else {
        out.print_text();
    }

    if let (Some(d), Some(o)) = (out.discrepancy, oracle_q) {
        let rel = d / o.max_abs().max(1.0);
        if rel > args.tol {
            return Err(CliError::Violation(format!(
                "solution routes disagree: |q_closed − q_oracle| = {d:.3e} (relative {rel:.3e} exceeds --tol {})",
                args.tol
            )));
        }
    }
    if let Some(t) = out.truth_error {
        let rel = t / report.q.max_abs().max(1.0);
        if rel > args.tol {
            return Err(CliError::Violation(format!(
                "solution misses recorded truth by {t:.3e} (relative {rel:.3e} exceeds --tol {})",
                args.tol
            )));
        }
    }
    Ok(())
}
