//! Exhaustive grid search over the coefficient box, used as ground truth.
//!
//! The box `[−radius, radius]ᵏ` is sampled at `resolution + 1` points per
//! axis. Each refinement pass then resamples the window of
//! [`REFINEMENT_HALF_WIDTH`] cells on either side of the best point at ten
//! times the current resolution.

use serde::{Deserialize, Serialize};

use super::SimultaneousProblem;
use crate::element::Element;
use crate::error::{Error, Result};

pub const MAX_ORACLE_DIM: usize = 3;
pub const MIN_RESOLUTION: usize = 10;
pub const REFINEMENT_PASSES: usize = 4;
pub const REFINEMENT_HALF_WIDTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub g: Element,
    pub coeffs: Vec<f64>,
    /// Grid spacing of the final pass.
    pub spacing: f64,
}

pub fn oracle_solve(
    problem: &SimultaneousProblem,
    radius: f64,
    resolution: usize,
) -> Result<OracleResult> {
    problem.validate()?;
    let k = problem.k();
    if k > MAX_ORACLE_DIM {
        return Err(Error::TooManyCoefficients(k));
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidInput(format!(
            "oracle resolution must be >= {MIN_RESOLUTION}"
        )));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput("oracle radius must be positive".into()));
    }
    if k == 0 {
        let g = Element::zeros(problem.space.len());
        return Ok(OracleResult {
            value: problem.phi_unchecked(&g),
            g,
            coeffs: Vec::new(),
            spacing: 0.0,
        });
    }

    let mut spacing = 2.0 * radius / resolution as f64;
    let lower = vec![-radius; k];
    let (mut best_c, mut best_v) = scan(problem, &lower, spacing, resolution + 1);
    for _ in 0..REFINEMENT_PASSES {
        let fine = spacing / 10.0;
        let half = REFINEMENT_HALF_WIDTH as f64 * spacing;
        let lower: Vec<f64> = best_c.iter().map(|c| c - half).collect();
        let (c, v) = scan(problem, &lower, fine, 20 * REFINEMENT_HALF_WIDTH + 1);
        if v < best_v {
            best_c = c;
            best_v = v;
        }
        spacing = fine;
    }

    Ok(OracleResult {
        value: best_v,
        g: problem.element_of(&best_c),
        coeffs: best_c,
        spacing,
    })
}

/// Evaluates `Φ` on the grid `lower + spacing·i`, `i ∈ {0..count}ᵏ`; first
/// minimum in lexicographic index order wins.
fn scan(
    problem: &SimultaneousProblem,
    lower: &[f64],
    spacing: f64,
    count: usize,
) -> (Vec<f64>, f64) {
    let k = lower.len();
    let mut idx = vec![0usize; k];
    let mut point = lower.to_vec();
    let mut best = (point.clone(), f64::INFINITY);
    loop {
        for (p, (&lo, &i)) in point.iter_mut().zip(lower.iter().zip(&idx)) {
            *p = lo + spacing * i as f64;
        }
        let v = problem.phi_coeffs(&point);
        if v < best.1 {
            best = (point.clone(), v);
        }
        // odometer increment
        let mut axis = k;
        loop {
            if axis == 0 {
                return best;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < count {
                break;
            }
            idx[axis] = 0;
        }
    }
}
