use nalgebra::DVector;

use super::linalg::{self, lstsq};
use super::solver::solve_unchecked;
use super::{SimultaneousProblem, SolverConfig, SubspaceBasis, DIRECTION_INDEPENDENCE_MIN};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::spaces::{Space, TwoNorm};

fn check_inputs(space: &Space, w_basis: &SubspaceBasis, b: &Element) -> Result<()> {
    space.check_element("b", b)?;
    if b.is_zero() {
        return Err(Error::ZeroDirection);
    }
    w_basis.validate(space)?;
    let vectors: Vec<&[f64]> = w_basis.vectors().iter().map(|v| v.coords()).collect();
    if !vectors.is_empty()
        && linalg::relative_distance_to_span(&vectors, b) < DIRECTION_INDEPENDENCE_MIN
    {
        return Err(Error::DependentDirection("w_basis"));
    }
    Ok(())
}

/// `δ = inf_{w ∈ span(w_basis)} ‖x0 − w, b‖` and a minimizer `w*`.
///
/// Exact least squares on `b`-orthogonal projections for the Gram space;
/// the subgradient solver with a single target otherwise.
pub fn distance_to_subspace(
    space: &Space,
    x0: &Element,
    w_basis: &SubspaceBasis,
    b: &Element,
    cfg: &SolverConfig,
) -> Result<(f64, Element)> {
    space.check_element("x0", x0)?;
    check_inputs(space, w_basis, b)?;
    cfg.validate()?;

    if space.is_gram() {
        let w_star = gram_projection_minimizer(space, x0, w_basis, b);
        let delta = space.eval(&x0.sub(&w_star), b);
        return Ok((delta, w_star));
    }

    let problem = SimultaneousProblem {
        space: space.clone(),
        targets: vec![x0.clone()],
        g_basis: w_basis.clone(),
        b: b.clone(),
        solver: cfg.clone(),
    };
    let report = solve_unchecked(&problem);
    Ok((report.value, report.g_star))
}

/// `argmin_w |P(x0 − w)|` with `P` the projection onto `b⊥`.
pub(crate) fn gram_projection_minimizer(
    space: &Space,
    x0: &Element,
    w_basis: &SubspaceBasis,
    b: &Element,
) -> Element {
    let n = space.len();
    if w_basis.dim() == 0 {
        return Element::zeros(n);
    }
    let projected: Vec<Vec<f64>> = w_basis
        .vectors()
        .iter()
        .map(|w| linalg::project_out(w, b))
        .collect();
    let cols: Vec<&[f64]> = projected.iter().map(|v| v.as_slice()).collect();
    let a = linalg::columns(&cols, n);
    let y = DVector::from_vec(linalg::project_out(x0, b));
    let coeffs = lstsq(&a, &y);
    w_basis.combine(coeffs.as_slice(), n)
}

/// `inf_w max_{a ∈ a_set} ‖a − w, b‖` over `w ∈ span(w_basis)`.
pub fn set_distance(
    space: &Space,
    a_set: &[Element],
    w_basis: &SubspaceBasis,
    b: &Element,
    cfg: &SolverConfig,
) -> Result<f64> {
    if a_set.is_empty() {
        return Err(Error::InvalidInput("a_set must be nonempty".into()));
    }
    for a in a_set {
        space.check_element("a_set element", a)?;
    }
    check_inputs(space, w_basis, b)?;
    cfg.validate()?;
    let problem = SimultaneousProblem {
        space: space.clone(),
        targets: a_set.to_vec(),
        g_basis: w_basis.clone(),
        b: b.clone(),
        solver: cfg.clone(),
    };
    Ok(solve_unchecked(&problem).value)
}
