//! Multi-start subgradient descent on the coefficients of `g`.
//!
//! Each restart runs normalized subgradient steps of length `step0/√t`,
//! taking the subgradient of the active target with the largest residual
//! (lowest index on ties) and keeping the best iterate seen. The loop stops
//! once the best value has improved by less than `tol` over
//! [`STALL_WINDOW`] consecutive iterations, or at `max_iters`.
//!
//! For the Gram 2-norm, `‖r, b‖ = |b|·|P r|` with `P` the projection onto
//! `b⊥`, so `Φ` is `|b|` times the radius of a ball around `P g` enclosing the
//! projected targets. Each restart then polishes its iterate: for every
//! subset `S` of targets that are near-active there, it solves the
//! equidistance KKT system on `S` in closed form and keeps the candidate if
//! it lowers `Φ`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::linalg::{self, lstsq};
use super::SimultaneousProblem;
use crate::element::{dot, Element};
use crate::error::Result;
use crate::rng;
use crate::spaces::TwoNorm;

pub const STALL_WINDOW: usize = 50;

/// Fraction of `Φ` below the maximum within which a target counts as
/// near-active for the polish.
const NEAR_ACTIVE_FRACTION: f64 = 0.1;

/// Cap on near-active targets considered by the polish.
const NEAR_ACTIVE_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartResult {
    pub start: Vec<f64>,
    pub coeffs: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub polished: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub g_star: Element,
    pub coeffs: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub per_restart: Vec<RestartResult>,
    /// Largest `‖g_a − g_b, b‖` between restart optimizers.
    pub spread: f64,
}

pub fn solve(problem: &SimultaneousProblem) -> Result<SolveReport> {
    problem.validate()?;
    problem.check_direction()?;
    Ok(solve_unchecked(problem))
}

pub(crate) fn solve_unchecked(problem: &SimultaneousProblem) -> SolveReport {
    let k = problem.k();
    if k == 0 {
        let g = Element::zeros(problem.space.len());
        let value = problem.phi_unchecked(&g);
        return SolveReport {
            g_star: g,
            coeffs: Vec::new(),
            value,
            converged: true,
            per_restart: vec![RestartResult {
                start: Vec::new(),
                coeffs: Vec::new(),
                value,
                iterations: 0,
                converged: true,
                polished: false,
            }],
            spread: 0.0,
        };
    }

    let polish = problem.space.is_gram().then(|| GramPolish::new(problem));
    let per_restart: Vec<RestartResult> = starts(problem)
        .into_iter()
        .map(|start| {
            let mut r = descend(problem, start);
            if let Some(p) = &polish {
                if let Some((c, v)) = p.improve(problem, &r.coeffs, r.value) {
                    r.coeffs = c;
                    r.value = v;
                    r.polished = true;
                }
            }
            r
        })
        .collect();

    let best = per_restart
        .iter()
        .min_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then_with(|| lex_cmp(&a.coeffs, &b.coeffs))
        })
        .expect("at least one restart");

    let optimizers: Vec<Element> = per_restart
        .iter()
        .map(|r| problem.element_of(&r.coeffs))
        .collect();
    let spread = max_pairwise_seminorm(problem, &optimizers);

    SolveReport {
        g_star: problem.element_of(&best.coeffs),
        coeffs: best.coeffs.clone(),
        value: best.value,
        converged: best.converged || best.polished,
        per_restart,
        spread,
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

pub(crate) fn max_pairwise_seminorm(problem: &SimultaneousProblem, points: &[Element]) -> f64 {
    let mut spread = 0.0_f64;
    for (i, a) in points.iter().enumerate() {
        for c in &points[i + 1..] {
            spread = spread.max(problem.space.eval(&a.sub(c), &problem.b));
        }
    }
    spread
}

/// Origin plus `restarts − 1` Gaussian points scaled by twice the largest
/// target coordinate magnitude.
fn starts(problem: &SimultaneousProblem) -> Vec<Vec<f64>> {
    let k = problem.k();
    let cfg = &problem.solver;
    let scale = 2.0
        * problem
            .targets
            .iter()
            .map(Element::max_abs)
            .fold(0.0_f64, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut rng = rng::seeded(cfg.seed);
    let mut out = vec![vec![0.0; k]];
    for _ in 1..cfg.restarts {
        out.push(
            rng::gaussian_vec(&mut rng, k)
                .into_iter()
                .map(|v| v * scale)
                .collect(),
        );
    }
    out
}

/// A subgradient of `Φ` with respect to the coefficients, taken from the
/// active target with the largest residual.
fn coefficient_subgradient(problem: &SimultaneousProblem, coeffs: &[f64]) -> (f64, Vec<f64>) {
    let g = problem.element_of(coeffs);
    let residuals: Vec<Element> = problem.targets.iter().map(|f| f.sub(&g)).collect();
    let (active, value) = residuals
        .iter()
        .map(|r| problem.space.eval(r, &problem.b))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    let s = problem
        .space
        .subgradient_first(&residuals[active], &problem.b);
    // r = f − Σ c_j g_j, so ∂/∂c_j = −⟨s, g_j⟩
    let grad = problem
        .g_basis
        .vectors()
        .iter()
        .map(|gj| -dot(&s, gj))
        .collect();
    (value, grad)
}

fn descend(problem: &SimultaneousProblem, start: Vec<f64>) -> RestartResult {
    let cfg = &problem.solver;
    let mut c = start.clone();
    let mut best_c = c.clone();
    let mut best = problem.phi_coeffs(&c);
    let mut anchor = best;
    let mut anchor_iter = 0;
    let mut converged = false;
    let mut iterations = 0;

    for t in 1..=cfg.max_iters {
        iterations = t;
        let (_, grad) = coefficient_subgradient(problem, &c);
        let gnorm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm == 0.0 {
            // 0 ∈ ∂Φ(c)
            converged = true;
            break;
        }
        let step = cfg.step0 / (t as f64).sqrt() / gnorm;
        for (ci, gi) in c.iter_mut().zip(&grad) {
            *ci -= step * gi;
        }
        let v = problem.phi_coeffs(&c);
        if v < best {
            best = v;
            best_c.copy_from_slice(&c);
        }
        if best < anchor - cfg.tol {
            anchor = best;
            anchor_iter = t;
        } else if t - anchor_iter >= STALL_WINDOW {
            converged = true;
            break;
        }
    }

    RestartResult {
        start,
        coeffs: best_c,
        value: best,
        iterations,
        converged,
        polished: false,
    }
}

/// Closed-form candidates for the Gram 2-norm, in projected coordinates.
struct GramPolish {
    /// `P f_i`
    points: Vec<DVector<f64>>,
    /// Columns `P g_j`.
    a: DMatrix<f64>,
}

impl GramPolish {
    fn new(problem: &SimultaneousProblem) -> Self {
        let b = problem.b.coords();
        let points = problem
            .targets
            .iter()
            .map(|f| DVector::from_vec(linalg::project_out(f, b)))
            .collect();
        let projected: Vec<Vec<f64>> = problem
            .g_basis
            .vectors()
            .iter()
            .map(|g| linalg::project_out(g, b))
            .collect();
        let cols: Vec<&[f64]> = projected.iter().map(|v| v.as_slice()).collect();
        GramPolish {
            points,
            a: linalg::columns(&cols, problem.space.len()),
        }
    }

    /// Best equidistance candidate over subsets of the targets near-active at
    /// `coeffs`, if it beats `value`.
    fn improve(
        &self,
        problem: &SimultaneousProblem,
        coeffs: &[f64],
        value: f64,
    ) -> Option<(Vec<f64>, f64)> {
        let residuals = problem.residuals(&problem.element_of(coeffs));
        let mut near: Vec<usize> = (0..residuals.len())
            .filter(|&i| residuals[i] >= value * (1.0 - NEAR_ACTIVE_FRACTION) - 1e-12)
            .collect();
        near.sort_by(|&i, &j| residuals[j].total_cmp(&residuals[i]).then(i.cmp(&j)));
        near.truncate(NEAR_ACTIVE_MAX);

        let max_size = (problem.k() + 1).min(near.len());
        let mut best: Option<(Vec<f64>, f64)> = None;
        let mut best_value = value;
        for mask in 1u32..(1u32 << near.len()) {
            if mask.count_ones() as usize > max_size {
                continue;
            }
            let subset: Vec<usize> = (0..near.len())
                .filter(|bit| mask & (1 << bit) != 0)
                .map(|bit| near[bit])
                .collect();
            let c = self.equidistant_center(&subset);
            let v = problem.phi_coeffs(c.as_slice());
            if v.is_finite() && v < best_value {
                best_value = v;
                best = Some((c.as_slice().to_vec(), v));
            }
        }
        best
    }

    /// Minimizes `|p_s0 − A c|²` subject to `|p_i − A c| = |p_s0 − A c|` for
    /// every `i` in the subset, via the KKT system.
    fn equidistant_center(&self, subset: &[usize]) -> DVector<f64> {
        let k = self.a.ncols();
        let p0 = &self.points[subset[0]];
        let m = subset.len() - 1;
        let ata = self.a.transpose() * &self.a;
        let mut kkt = DMatrix::zeros(k + m, k + m);
        let mut rhs = DVector::zeros(k + m);
        kkt.view_mut((0, 0), (k, k)).copy_from(&(ata * 2.0));
        rhs.rows_mut(0, k)
            .copy_from(&(self.a.transpose() * p0 * 2.0));
        for (row, &i) in subset[1..].iter().enumerate() {
            let pi = &self.points[i];
            // |p_i − Ac|² = |p_0 − Ac|²  ⇔  2 (p_i − p_0)ᵀ A c = |p_i|² − |p_0|²
            let constraint = (self.a.transpose() * (pi - p0)) * 2.0;
            for j in 0..k {
                kkt[(k + row, j)] = constraint[j];
                kkt[(j, k + row)] = constraint[j];
            }
            rhs[k + row] = pi.norm_squared() - p0.norm_squared();
        }
        lstsq(&kkt, &rhs).rows(0, k).into_owned()
    }
}
