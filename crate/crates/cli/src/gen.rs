//! Seeded instance generation. Draw order is part of the contract (it is
//! what makes seeds portable): first the solution q, then for each plain
//! term c then b, then each conjugate pair likewise, each quaternion as four
//! uniform [−1,1) components in w, x, y, z order. The right side is computed
//! from q, so the file records its own ground truth.

use quatlin_core::rng::SplitMix64;
use quatlin_core::{LinearEquation, Quaternion};

use crate::equation_file::EquationFile;
use crate::{CliError, GenArgs};

pub fn random_instance(
    rng: &mut SplitMix64,
    n_plain: usize,
    n_conj: usize,
) -> (LinearEquation, Quaternion) {
    let q = rng.next_quaternion();
    let mut draw = |n: usize| -> Vec<(Quaternion, Quaternion)> {
        (0..n)
            .map(|_| (rng.next_quaternion(), rng.next_quaternion()))
            .collect()
    };
    let mut eq = LinearEquation::new(draw(n_plain), draw(n_conj), Quaternion::ZERO);
    eq.rhs = eq.lhs(q);
    (eq, q)
}

pub fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    if args.n + args.conj == 0 {
        return Err(CliError::Schema(
            "--n plus --conj must be at least 1".into(),
        ));
    }
    let mut rng = SplitMix64::new(args.seed);
    let (eq, truth) = random_instance(&mut rng, args.n, args.conj);
    let file = EquationFile::from_equation(&eq, Some(truth));
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    std::fs::write(&args.out, text)?;
    Ok(())
}
