//! The on-disk equation format: coefficient pairs as length-4 coordinate
//! arrays `[w, x, y, z]`, an optional conjugate block, and an optional
//! recorded ground-truth solution that solvers ignore unless asked.

use quatlin_core::{LinearEquation, Quaternion};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TermJson {
    pub c: [f64; 4],
    pub b: [f64; 4],
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct EquationFile {
    /// Plain terms `c q b`.
    pub terms: Vec<TermJson>,
    /// Conjugate terms `c q̄ b`, entering the left side with a minus sign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conj_terms: Option<Vec<TermJson>>,
    pub rhs: [f64; 4],
    /// Known solution, recorded by the generator; ignored unless requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<[f64; 4]>,
}

fn pairs(terms: &[TermJson]) -> Vec<(Quaternion, Quaternion)> {
    terms
        .iter()
        .map(|t| (Quaternion::from_array(t.c), Quaternion::from_array(t.b)))
        .collect()
}

impl EquationFile {
    pub fn to_equation(&self) -> Result<LinearEquation, CliError> {
        let conj = self.conj_terms.as_deref().unwrap_or(&[]);
        if self.terms.is_empty() && conj.is_empty() {
            return Err(CliError::Schema(
                "equation file needs at least one term in \"terms\" or \"conj_terms\"".into(),
            ));
        }
        for (name, list) in [("terms", &self.terms[..]), ("conj_terms", conj)] {
            for t in list {
                if !t.c.iter().chain(&t.b).all(|v| v.is_finite()) {
                    return Err(CliError::Schema(format!(
                        "non-finite coefficient in \"{name}\""
                    )));
                }
            }
        }
        if !self.rhs.iter().all(|v| v.is_finite()) {
            return Err(CliError::Schema("non-finite value in \"rhs\"".into()));
        }
        Ok(LinearEquation::new(
            pairs(&self.terms),
            pairs(conj),
            Quaternion::from_array(self.rhs),
        ))
    }

    pub fn from_equation(eq: &LinearEquation, truth: Option<Quaternion>) -> Self {
        let encode = |list: &[(Quaternion, Quaternion)]| {
            list.iter()
                .map(|&(c, b)| TermJson {
                    c: c.to_array(),
                    b: b.to_array(),
                })
                .collect::<Vec<_>>()
        };
        Self {
            terms: encode(&eq.plain_terms),
            conj_terms: if eq.conj_terms.is_empty() {
                None
            } else {
                Some(encode(&eq.conj_terms))
            },
            rhs: eq.rhs.to_array(),
            truth: truth.map(Quaternion::to_array),
        }
    }
}
