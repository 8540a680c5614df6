//! Browser bindings for the interactive demo in `www/`.
//!
//! Every entry point takes and returns plain strings and number arrays, so
//! the same functions are exercised natively by the tests below.

use serde::de::DeserializeOwned;
use twonorm::spaces::TwoNorm;
use twonorm::{solve, Element, SimultaneousProblem, Space};
use wasm_bindgen::prelude::*;

fn parse<T: DeserializeOwned>(what: &str, text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}

fn grid_axis(radius: f64, resolution: usize) -> impl Iterator<Item = f64> {
    let step = 2.0 * radius / (resolution.max(2) - 1) as f64;
    (0..resolution.max(2)).map(move |i| -radius + step * i as f64)
}

/// Φ over the coefficient square `[-radius, radius]²` of a problem whose
/// subspace has exactly two basis vectors. Row-major, rows indexed by the
/// second coefficient.
#[wasm_bindgen]
pub fn phi_landscape(problem_json: &str, radius: f64, resolution: usize) -> Result<Vec<f64>, String> {
    let problem: SimultaneousProblem = parse("problem", problem_json)?;
    problem.validate().map_err(|e| e.to_string())?;
    if problem.k() != 2 {
        return Err(format!("landscape needs 2 basis vectors, got {}", problem.k()));
    }
    let axis: Vec<f64> = grid_axis(radius, resolution).collect();
    let mut out = Vec::with_capacity(axis.len() * axis.len());
    for &c2 in &axis {
        for &c1 in &axis {
            let g = problem.element_of(&[c1, c2]);
            out.push(twonorm::phi(&problem, &g).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

/// Runs the solver and returns the report as JSON.
#[wasm_bindgen]
pub fn solve_problem(problem_json: &str) -> Result<String, String> {
    let problem: SimultaneousProblem = parse("problem", problem_json)?;
    let report = solve(&problem).map_err(|e| e.to_string())?;
    twonorm::json::to_string(&report).map_err(|e| e.to_string())
}

/// `p_b(s·u + t·v)` over `(s, t) ∈ [-radius, radius]²`, row-major in `t`.
/// The sublevel set `≤ 1` is the seminorm's unit ball in the plane of `u, v`.
#[wasm_bindgen]
pub fn seminorm_field(
    space_json: &str,
    b: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    radius: f64,
    resolution: usize,
) -> Result<Vec<f64>, String> {
    let space: Space = parse("space", space_json)?;
    let (b, u, v) = (Element::from(b), Element::from(u), Element::from(v));
    for (what, x) in [("b", &b), ("u", &u), ("v", &v)] {
        space.check_element(what, x).map_err(|e| format!("{what}: {e}"))?;
    }
    if b.is_zero() {
        return Err("b must be nonzero".into());
    }
    let axis: Vec<f64> = grid_axis(radius, resolution).collect();
    let mut out = Vec::with_capacity(axis.len() * axis.len());
    for &t in &axis {
        for &s in &axis {
            out.push(space.eval(&u.scale(s).add(&v.scale(t)), &b));
        }
    }
    Ok(out)
}
