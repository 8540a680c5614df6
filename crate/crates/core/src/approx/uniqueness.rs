use serde::{Deserialize, Serialize};

use super::solver::{max_pairwise_seminorm, solve_unchecked};
use super::SimultaneousProblem;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::spaces::TwoNorm;

/// Optimizers closer than this in `‖·, b‖` belong to the same cluster.
pub const CLUSTER_THRESHOLD: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub distinct_optimizers: usize,
    pub spread: f64,
    /// Uniqueness is only asserted for the Gram 2-norm, which satisfies the
    /// parallelogram identity; otherwise the count is informational.
    pub uniqueness_claimed: bool,
    pub optimizers: Vec<Element>,
    pub values: Vec<f64>,
}

impl UniquenessReport {
    pub fn violated(&self) -> bool {
        self.uniqueness_claimed && self.distinct_optimizers != 1
    }
}

/// Solves from `restarts` starts and clusters the per-restart optimizers.
pub fn uniqueness_probe(problem: &SimultaneousProblem, restarts: usize) -> Result<UniquenessReport> {
    if restarts < 2 {
        return Err(Error::InvalidInput("uniqueness probe needs restarts >= 2".into()));
    }
    problem.validate()?;
    problem.check_direction()?;
    let mut p = problem.clone();
    p.solver.restarts = restarts;
    let report = solve_unchecked(&p);

    let optimizers: Vec<Element> = report
        .per_restart
        .iter()
        .map(|r| p.element_of(&r.coeffs))
        .collect();
    let mut representatives: Vec<&Element> = Vec::new();
    for g in &optimizers {
        let seen = representatives
            .iter()
            .any(|rep| p.space.eval(&g.sub(rep), &p.b) < CLUSTER_THRESHOLD);
        if !seen {
            representatives.push(g);
        }
    }

    Ok(UniquenessReport {
        distinct_optimizers: representatives.len(),
        spread: max_pairwise_seminorm(&p, &optimizers),
        uniqueness_claimed: p.space.is_gram(),
        values: report.per_restart.iter().map(|r| r.value).collect(),
        optimizers,
    })
}
