//! Concrete linear 2-normed spaces, the induced seminorms `p_b(x) = ‖x, b‖`,
//! and randomized axiom checking.

use serde::{Deserialize, Serialize};

use crate::element::{dot, Element};
use crate::error::{Error, Result};
use crate::rng::{self, SeededRng};

/// Anything that evaluates a 2-norm on coordinate slices of a fixed length.
///
/// Implemented by [`Space`]; the axiom checker is generic over it so that
/// deliberately broken norms can be fed through the same machinery.
pub trait TwoNorm {
    fn ambient_len(&self) -> usize;
    fn eval(&self, x: &[f64], y: &[f64]) -> f64;
}

/// Serialized description of a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    /// `ℝⁿ` with the parallelogram-area 2-norm `sqrt(|x|²|y|² − ⟨x,y⟩²)`.
    EuclideanGram { dim: usize },
    /// Real polynomials of degree ≤ n on `[0,1]` with
    /// `‖f,g‖ = Σ_k |f(x_k)g′(x_k) − f′(x_k)g(x_k)|` over 2n distinct points.
    WhitePolynomial { degree: usize, points: Vec<f64> },
}

impl SpaceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::EuclideanGram { dim } => {
                if *dim < 2 {
                    return Err(Error::InvalidSpace(format!(
                        "euclidean_gram requires dim >= 2, got {dim}"
                    )));
                }
            }
            SpaceSpec::WhitePolynomial { degree, points } => {
                if *degree < 1 {
                    return Err(Error::InvalidSpace(
                        "white_polynomial requires degree >= 1".into(),
                    ));
                }
                if points.len() != 2 * degree {
                    return Err(Error::InvalidSpace(format!(
                        "white_polynomial of degree {degree} needs {} points, got {}",
                        2 * degree,
                        points.len()
                    )));
                }
                if let Some(p) = points
                    .iter()
                    .find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0)
                {
                    return Err(Error::InvalidSpace(format!(
                        "white_polynomial point {p} outside [0, 1]"
                    )));
                }
                for (i, a) in points.iter().enumerate() {
                    if points[i + 1..].contains(a) {
                        return Err(Error::InvalidSpace(format!(
                            "white_polynomial point {a} repeated"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A validated space. Deserializes from the same JSON as [`SpaceSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceSpec", into = "SpaceSpec")]
pub struct Space {
    spec: SpaceSpec,
}

impl TryFrom<SpaceSpec> for Space {
    type Error = Error;

    fn try_from(spec: SpaceSpec) -> Result<Self> {
        Space::new(spec)
    }
}

impl From<Space> for SpaceSpec {
    fn from(space: Space) -> Self {
        space.spec
    }
}

impl Space {
    pub fn new(spec: SpaceSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Space { spec })
    }

    pub fn gram(dim: usize) -> Result<Self> {
        Space::new(SpaceSpec::EuclideanGram { dim })
    }

    pub fn white(degree: usize, points: Vec<f64>) -> Result<Self> {
        Space::new(SpaceSpec::WhitePolynomial { degree, points })
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn is_gram(&self) -> bool {
        matches!(self.spec, SpaceSpec::EuclideanGram { .. })
    }

    /// Number of coordinates of an element.
    pub fn len(&self) -> usize {
        match &self.spec {
            SpaceSpec::EuclideanGram { dim } => *dim,
            SpaceSpec::WhitePolynomial { degree, .. } => degree + 1,
        }
    }

    pub fn check_element(&self, what: &'static str, x: &Element) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::DimensionMismatch {
                what,
                expected: self.len(),
                found: x.len(),
            });
        }
        x.ensure_finite(what)
    }

    pub fn two_norm(&self, x: &Element, y: &Element) -> Result<f64> {
        self.check_element("x", x)?;
        self.check_element("y", y)?;
        Ok(self.eval(x, y))
    }

    /// `p_b(x) = ‖x, b‖`. A zero `b` is rejected: the seminorm would vanish
    /// identically.
    pub fn seminorm_b(&self, b: &Element, x: &Element) -> Result<f64> {
        self.check_element("b", b)?;
        self.check_element("x", x)?;
        if b.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(self.eval(x, b))
    }

    /// A subgradient of `x ↦ ‖x, y‖` at `x`. Zero where the map is not
    /// differentiable at its minimum (`x ∈ L{y}`).
    pub fn subgradient_first(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        match &self.spec {
            SpaceSpec::EuclideanGram { .. } => {
                let value = gram_two_norm(x, y);
                if value == 0.0 {
                    return vec![0.0; x.len()];
                }
                // ∇ sqrt(|x|²|y|² − ⟨x,y⟩²) = (|y|² x − ⟨x,y⟩ y) / value
                let yy = dot(y, y);
                let xy = dot(x, y);
                x.iter()
                    .zip(y)
                    .map(|(xi, yi)| (yy * xi - xy * yi) / value)
                    .collect()
            }
            SpaceSpec::WhitePolynomial { points, .. } => {
                let dy = derivative(y);
                let mut g = vec![0.0; x.len()];
                for &t in points {
                    let w = wronskian_at(x, y, &dy, t);
                    if w == 0.0 {
                        continue;
                    }
                    let s = w.signum();
                    let (yt, dyt) = (horner(y, t), horner(&dy, t));
                    // ∂/∂x_j [x(t) y′(t) − x′(t) y(t)] = t^j y′(t) − j t^{j−1} y(t)
                    let mut pow = 1.0;
                    let mut pow_prev = 0.0;
                    for (j, gj) in g.iter_mut().enumerate() {
                        *gj += s * (pow * dyt - j as f64 * pow_prev * yt);
                        pow_prev = pow;
                        pow *= t;
                    }
                }
                g
            }
        }
    }
}

impl TwoNorm for Space {
    fn ambient_len(&self) -> usize {
        self.len()
    }

    fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        match &self.spec {
            SpaceSpec::EuclideanGram { .. } => gram_two_norm(x, y),
            SpaceSpec::WhitePolynomial { points, .. } => white_two_norm(points, x, y),
        }
    }
}

/// Parallelogram area. `|x|²|y|² − ⟨x,y⟩²` is accumulated as the sum of
/// squared 2×2 minors `(x_i y_j − x_j y_i)²`, which equals it exactly in real
/// arithmetic but keeps dependent pairs at round-off level instead of
/// `sqrt(ε)`.
fn gram_two_norm(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let m = x[i] * y[j] - x[j] * y[i];
            acc += m * m;
        }
    }
    acc.max(0.0).sqrt()
}

fn white_two_norm(points: &[f64], f: &[f64], g: &[f64]) -> f64 {
    let dg = derivative(g);
    points
        .iter()
        .map(|&t| wronskian_at(f, g, &dg, t).abs())
        .sum()
}

fn wronskian_at(f: &[f64], g: &[f64], dg: &[f64], t: f64) -> f64 {
    let df = derivative(f);
    horner(f, t) * horner(dg, t) - horner(&df, t) * horner(g, t)
}

/// Evaluates `Σ c_j t^j`.
pub fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Exact derivative in the monomial basis: `(c_1, 2c_2, …, n c_n)`.
pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| j as f64 * c)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `‖x, αx‖ = 0` on constructed dependent pairs.
    N1Dependent,
    N2Symmetry,
    N3Homogeneity,
    N4Triangle,
    /// `‖x, y + αx‖ = ‖x, y‖`.
    ShiftInvariance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub sample: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub witness: Vec<Element>,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

pub fn check_axioms(space: &Space, samples: usize, seed: u64, tol: f64) -> Result<AxiomReport> {
    check_axioms_with(space, samples, seed, tol)
}

/// Axiom checker over an arbitrary [`TwoNorm`]. Each sample draws `x, y, z`
/// with coordinates uniform in `[-1, 1]` and a scalar `α` uniform in `[-3, 3]`.
pub fn check_axioms_with<N: TwoNorm + ?Sized>(
    norm: &N,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be > 0".into()));
    }
    let len = norm.ambient_len();
    let mut rng = rng::seeded(seed);
    let mut violations = Vec::new();

    for sample in 0..samples {
        let x = rng::uniform_element(&mut rng, len);
        let y = rng::uniform_element(&mut rng, len);
        let z = rng::uniform_element(&mut rng, len);
        let alpha = rng::uniform(&mut rng, -3.0, 3.0);
        let mut flag = |axiom, lhs, rhs, witness: Vec<&Element>, alpha| {
            violations.push(Violation {
                axiom,
                sample,
                lhs,
                rhs,
                witness: witness.into_iter().cloned().collect(),
                alpha,
            })
        };

        let xy = norm.eval(&x, &y);
        let yx = norm.eval(&y, &x);
        if xy != yx {
            flag(Axiom::N2Symmetry, xy, yx, vec![&x, &y], None);
        }

        let ax_y = norm.eval(&x.scale(alpha), &y);
        if (ax_y - alpha.abs() * xy).abs() > tol * (1.0 + xy) {
            flag(Axiom::N3Homogeneity, ax_y, alpha.abs() * xy, vec![&x, &y], Some(alpha));
        }

        let sum_z = norm.eval(&x.add(&y), &z);
        let bound = norm.eval(&x, &z) + norm.eval(&y, &z);
        if sum_z > bound + tol {
            flag(Axiom::N4Triangle, sum_z, bound, vec![&x, &y, &z], None);
        }

        let dep = norm.eval(&x, &x.scale(alpha));
        if dep > tol {
            flag(Axiom::N1Dependent, dep, 0.0, vec![&x], Some(alpha));
        }

        let shifted = norm.eval(&x, &y.add(&x.scale(alpha)));
        if (shifted - xy).abs() > tol {
            flag(Axiom::ShiftInvariance, shifted, xy, vec![&x, &y], Some(alpha));
        }
    }

    Ok(AxiomReport {
        samples,
        seed,
        tol,
        violations,
    })
}

/// Which side of the dependent-triple disjunction held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleBranch {
    /// `‖x, y+z‖ = ‖x,y‖ + ‖x,z‖`
    Sum,
    /// `‖x, y−z‖ = ‖x,y‖ + ‖x,z‖`
    Difference,
    Both,
}

/// Tests the disjunction for one triple `x, y, z` with `y, z ∈ span{x, w}`.
/// Returns `None` when neither branch holds within `tol`.
pub fn dependent_triple_branch(
    norm: &(impl TwoNorm + ?Sized),
    x: &[f64],
    y: &[f64],
    z: &[f64],
    tol: f64,
) -> Option<TripleBranch> {
    let target = norm.eval(x, y) + norm.eval(x, z);
    let plus: Vec<f64> = y.iter().zip(z).map(|(a, b)| a + b).collect();
    let minus: Vec<f64> = y.iter().zip(z).map(|(a, b)| a - b).collect();
    let sum_ok = (norm.eval(x, &plus) - target).abs() <= tol;
    let diff_ok = (norm.eval(x, &minus) - target).abs() <= tol;
    match (sum_ok, diff_ok) {
        (true, true) => Some(TripleBranch::Both),
        (true, false) => Some(TripleBranch::Sum),
        (false, true) => Some(TripleBranch::Difference),
        (false, false) => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleReport {
    pub samples: usize,
    pub sum_branch: usize,
    pub difference_branch: usize,
    pub both: usize,
    /// Sample indices where neither branch held.
    pub failures: Vec<usize>,
}

/// Draws `samples` triples `x, y = a·x + c·w, z = b·x + d·w` with `x, w`
/// independent and records which branch of the disjunction held.
pub fn check_dependent_triples(
    norm: &(impl TwoNorm + ?Sized),
    samples: usize,
    seed: u64,
    tol: f64,
) -> TripleReport {
    let len = norm.ambient_len();
    let mut rng = rng::seeded(seed);
    let mut report = TripleReport {
        samples,
        sum_branch: 0,
        difference_branch: 0,
        both: 0,
        failures: Vec::new(),
    };
    for sample in 0..samples {
        let (x, w) = independent_pair(norm, &mut rng, len);
        let [a, b, c, d] = [(); 4].map(|_| rng::uniform(&mut rng, -1.0, 1.0));
        let y = x.scale(a).add(&w.scale(c));
        let z = x.scale(b).add(&w.scale(d));
        match dependent_triple_branch(norm, &x, &y, &z, tol) {
            Some(TripleBranch::Sum) => report.sum_branch += 1,
            Some(TripleBranch::Difference) => report.difference_branch += 1,
            Some(TripleBranch::Both) => report.both += 1,
            None => report.failures.push(sample),
        }
    }
    report
}

fn independent_pair(
    norm: &(impl TwoNorm + ?Sized),
    rng: &mut SeededRng,
    len: usize,
) -> (Element, Element) {
    loop {
        let x = rng::uniform_element(rng, len);
        let w = rng::uniform_element(rng, len);
        if norm.eval(&x, &w) > 1e-6 {
            return (x, w);
        }
    }
}
