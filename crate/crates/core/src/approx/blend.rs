use serde::{Deserialize, Serialize};

use super::SimultaneousProblem;
use crate::element::Element;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlendEntry {
    pub lambda: f64,
    pub value: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlendReport {
    pub phi_g1: f64,
    pub phi_g2: f64,
    pub tol: f64,
    pub entries: Vec<BlendEntry>,
}

impl BlendReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    /// Whether every blend also stays within `tol` of a known optimal value.
    pub fn all_near(&self, optimal: f64, tol: f64) -> bool {
        self.entries.iter().all(|e| (e.value - optimal).abs() <= tol)
    }
}

/// Evaluates `Φ(λ g1 + (1 − λ) g2)` for each `λ` and checks it does not
/// exceed `min(Φ(g1), Φ(g2)) + tol`. Requires `|Φ(g1) − Φ(g2)| ≤ tol`.
///
/// Only the shape of `problem` is validated; `b` may lie in the span of the
/// basis, which is how flat optimal faces are built.
pub fn blend_check(
    problem: &SimultaneousProblem,
    g1: &Element,
    g2: &Element,
    lambdas: &[f64],
    tol: f64,
) -> Result<BlendReport> {
    problem.validate()?;
    problem.space.check_element("g1", g1)?;
    problem.space.check_element("g2", g2)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be > 0".into()));
    }
    if let Some(l) = lambdas.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(Error::InvalidInput(format!("lambda {l} outside [0, 1]")));
    }
    let phi_g1 = problem.phi_unchecked(g1);
    let phi_g2 = problem.phi_unchecked(g2);
    if (phi_g1 - phi_g2).abs() > tol {
        return Err(Error::HypothesisUnmet(format!(
            "Φ(g1) = {phi_g1} and Φ(g2) = {phi_g2} differ by more than {tol}"
        )));
    }
    let bound = phi_g1.min(phi_g2) + tol;
    let entries = lambdas
        .iter()
        .map(|&lambda| {
            let value = problem.phi_unchecked(&g1.blend(g2, lambda));
            BlendEntry {
                lambda,
                value,
                ok: value <= bound,
            }
        })
        .collect();
    Ok(BlendReport {
        phi_g1,
        phi_g2,
        tol,
        entries,
    })
}
