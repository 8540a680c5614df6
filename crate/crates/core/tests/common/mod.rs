//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use nalgebra::DMatrix;
use twonorm::rng::{self, SeededRng};
use twonorm::{Element, SimultaneousProblem, SolverConfig, Space, SubspaceBasis};

pub fn e(v: &[f64]) -> Element {
    Element::from(v)
}

pub fn project_out(x: &[f64], b: &[f64]) -> Vec<f64> {
    let bb: f64 = b.iter().map(|v| v * v).sum();
    let xb: f64 = x.iter().zip(b).map(|(p, q)| p * q).sum();
    x.iter().zip(b).map(|(p, q)| p - xb / bb * q).collect()
}

/// Smallest singular value of the `b`-projected basis, and the largest
/// projected target norm. Together they bound the optimal coefficients:
/// `|P g*| ≤ 2 max_i |P f_i|`, so `|c*| ≤ 2 max_i |P f_i| / σ_min`.
pub fn coefficient_bound(problem: &SimultaneousProblem) -> f64 {
    let b = problem.b.coords();
    let n = problem.space.len();
    let k = problem.k();
    let cols: Vec<Vec<f64>> = problem
        .g_basis
        .vectors()
        .iter()
        .map(|g| project_out(g, b))
        .collect();
    let a = DMatrix::from_fn(n, k, |i, j| cols[j][i]);
    let sigma_min = a.singular_values().min();
    let pmax = problem
        .targets
        .iter()
        .map(|f| project_out(f, b).iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0_f64, f64::max);
    2.0 * pmax / sigma_min
}

/// Gram problem with `m` targets and `k` basis vectors in dimension
/// `m + k + 1`, so that `b` is independent of targets and basis. Redraws
/// until the coefficient bound is at most `max_bound`.
pub fn random_gram_problem(
    rng: &mut SeededRng,
    m: usize,
    k: usize,
    max_bound: f64,
) -> (SimultaneousProblem, f64) {
    let n = (m + k + 1).max(3);
    loop {
        let targets = (0..m).map(|_| rng::uniform_element(rng, n)).collect();
        let basis = (0..k).map(|_| rng::uniform_element(rng, n)).collect();
        let b = rng::uniform_element(rng, n);
        let Ok(p) = SimultaneousProblem::new(
            Space::gram(n).unwrap(),
            targets,
            SubspaceBasis::new(basis),
            b,
            SolverConfig::default(),
        ) else {
            continue;
        };
        if p.check_direction().is_err() {
            continue;
        }
        let bound = if k == 0 { 0.0 } else { coefficient_bound(&p) };
        if bound.is_finite() && bound <= max_bound {
            return (p, bound);
        }
    }
}

pub fn white_space() -> Space {
    Space::white(2, vec![0.0, 0.2, 0.4, 0.6]).unwrap()
}

/// Polynomial-space problem with one basis vector; `b` redrawn until
/// independent of targets and basis.
pub fn random_white_problem(rng: &mut SeededRng, m: usize) -> SimultaneousProblem {
    let space = Space::white(3, vec![0.0, 0.15, 0.3, 0.45, 0.7, 0.9]).unwrap();
    loop {
        let targets = (0..m).map(|_| rng::uniform_element(rng, 4)).collect();
        let basis = vec![rng::uniform_element(rng, 4)];
        let b = rng::uniform_element(rng, 4);
        let p = SimultaneousProblem::new(
            space.clone(),
            targets,
            SubspaceBasis::new(basis),
            b,
            SolverConfig::default(),
        )
        .unwrap();
        if p.check_direction().is_ok() {
            return p;
        }
    }
}
