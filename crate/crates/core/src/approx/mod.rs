//! Distance functionals and best simultaneous approximation.
//!
//! The objective throughout is `Φ(g, b) = max_{f ∈ W} ‖f − g, b‖` for a
//! finite target set `W` and `g` ranging over the span of a basis `G`.
//! `Φ` is a maximum of seminorms, hence convex and 1-Lipschitz with respect
//! to `p_b`.

mod blend;
mod certificate;
mod distance;
pub(crate) mod linalg;
mod oracle;
mod solver;
mod uniqueness;

use serde::{Deserialize, Serialize};

use crate::element::{combine, Element};
use crate::error::{Error, Result};
use crate::spaces::{Space, TwoNorm};

pub use blend::{blend_check, BlendEntry, BlendReport};
pub use certificate::{certificate, verify_certificate, Certificate, CertificateCheck};
pub use distance::{distance_to_subspace, set_distance};
pub use oracle::{oracle_solve, OracleResult, REFINEMENT_PASSES};
pub use solver::{solve, RestartResult, SolveReport};
pub use uniqueness::{uniqueness_probe, UniquenessReport, CLUSTER_THRESHOLD};

/// Minimum normalized Gram determinant for a basis to count as independent.
pub const BASIS_DET_MIN: f64 = 1e-12;

/// Minimum relative distance from `b` to a span for `b` to count as independent.
pub const DIRECTION_INDEPENDENCE_MIN: f64 = 1e-8;

/// Basis of a finite-dimensional subspace; empty means `{0}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubspaceBasis(pub Vec<Element>);

impl SubspaceBasis {
    pub fn new(vectors: Vec<Element>) -> Self {
        SubspaceBasis(vectors)
    }

    pub fn trivial() -> Self {
        SubspaceBasis(Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn vectors(&self) -> &[Element] {
        &self.0
    }

    pub fn validate(&self, space: &Space) -> Result<()> {
        for v in &self.0 {
            space.check_element("basis vector", v)?;
        }
        let det = linalg::normalized_gram_det(&self.0);
        if !(det > BASIS_DET_MIN) {
            return Err(Error::DependentBasis(det));
        }
        Ok(())
    }

    /// `Σ coeffs[j] · basis[j]` as an element of `space`.
    pub fn combine(&self, coeffs: &[f64], len: usize) -> Element {
        combine(&self.0, coeffs, len)
    }
}

fn default_max_iters() -> usize {
    20_000
}
fn default_tol() -> f64 {
    1e-6
}
fn default_restarts() -> usize {
    8
}
fn default_step0() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_step0")]
    pub step0: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: default_max_iters(),
            tol: default_tol(),
            restarts: default_restarts(),
            seed: 0,
            step0: default_step0(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be >= 1".into()));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be >= 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig("tol must be a positive number".into()));
        }
        if !(self.step0 > 0.0 && self.step0.is_finite()) {
            return Err(Error::InvalidConfig("step0 must be a positive number".into()));
        }
        Ok(())
    }
}

/// Targets `W`, subspace `G`, direction `b` and solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimultaneousProblem {
    pub space: Space,
    pub targets: Vec<Element>,
    #[serde(default)]
    pub g_basis: SubspaceBasis,
    pub b: Element,
    #[serde(default)]
    pub solver: SolverConfig,
}

impl SimultaneousProblem {
    pub fn new(
        space: Space,
        targets: Vec<Element>,
        g_basis: SubspaceBasis,
        b: Element,
        solver: SolverConfig,
    ) -> Result<Self> {
        let problem = SimultaneousProblem {
            space,
            targets,
            g_basis,
            b,
            solver,
        };
        problem.validate()?;
        Ok(problem)
    }

    /// Shape checks: dimensions, finiteness, nonempty targets, nonzero `b`,
    /// independent basis, sane solver settings.
    pub fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::InvalidInput("targets must be nonempty".into()));
        }
        for t in &self.targets {
            self.space.check_element("target", t)?;
        }
        self.space.check_element("b", &self.b)?;
        if self.b.is_zero() {
            return Err(Error::ZeroDirection);
        }
        self.g_basis.validate(&self.space)?;
        self.solver.validate()
    }

    /// `b` must not lie in `span(targets ∪ g_basis)`, so that `b ∉ L{f, g}`
    /// for every target `f` and every `g ∈ G`.
    pub fn check_direction(&self) -> Result<()> {
        let vectors: Vec<&[f64]> = self
            .targets
            .iter()
            .chain(self.g_basis.vectors())
            .map(|v| v.coords())
            .collect();
        if linalg::relative_distance_to_span(&vectors, &self.b) < DIRECTION_INDEPENDENCE_MIN {
            return Err(Error::DependentDirection("targets and g_basis"));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.g_basis.dim()
    }

    pub fn element_of(&self, coeffs: &[f64]) -> Element {
        self.g_basis.combine(coeffs, self.space.len())
    }

    /// Residual values `‖f_i − g, b‖` for every target.
    pub(crate) fn residuals(&self, g: &[f64]) -> Vec<f64> {
        self.targets
            .iter()
            .map(|f| {
                let r: Vec<f64> = f.iter().zip(g).map(|(a, c)| a - c).collect();
                self.space.eval(&r, &self.b)
            })
            .collect()
    }

    pub(crate) fn phi_unchecked(&self, g: &[f64]) -> f64 {
        self.residuals(g).into_iter().fold(0.0, f64::max)
    }

    pub(crate) fn phi_coeffs(&self, coeffs: &[f64]) -> f64 {
        self.phi_unchecked(&self.element_of(coeffs))
    }
}

/// `Φ(g, b) = max_i ‖f_i − g, b‖`.
pub fn phi(problem: &SimultaneousProblem, g: &Element) -> Result<f64> {
    problem.space.check_element("g", g)?;
    Ok(problem.phi_unchecked(g))
}
