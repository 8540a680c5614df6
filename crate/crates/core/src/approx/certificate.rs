//! Dual certificates for the distance from a point to a subspace.
//!
//! For the Gram 2-norm, let `r = P(x0 − w*)` where `P` projects onto `b⊥`
//! and `w*` minimizes `|P(x0 − w)|` over the subspace `W`. The linear
//! functional `h(x) = ⟨P x, r⟩ / |r|²` vanishes on `W`, satisfies
//! `h(x0) = 1`, and the bilinear functional `F(x, βb) = β·h(x)` on
//! `X × L{b}` has norm `1/δ` with respect to `‖·,·‖`, attained at `x = r`.

use serde::{Deserialize, Serialize};

use super::distance::gram_projection_minimizer;
use super::{linalg, SolverConfig, SubspaceBasis};
use crate::element::{dot, Element};
use crate::error::{Error, Result};
use crate::rng;
use crate::spaces::{Space, TwoNorm};

/// Smallest distance for which a certificate is issued.
pub const MIN_CERTIFICATE_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Coordinates of `h`: `h(x) = ⟨h, x⟩`.
    pub h: Vec<f64>,
    pub delta: f64,
    /// `x0 − w*`, the direction at which `|F|/‖·,·‖` attains `1/δ`.
    pub witness: Element,
}

impl Certificate {
    pub fn h_at(&self, x: &[f64]) -> f64 {
        dot(&self.h, x)
    }

    /// `F(x, βb) = β·h(x)`.
    pub fn bilinear(&self, x: &[f64], beta: f64) -> f64 {
        beta * self.h_at(x)
    }
}

pub fn certificate(
    space: &Space,
    x0: &Element,
    w_basis: &SubspaceBasis,
    b: &Element,
) -> Result<Certificate> {
    if !space.is_gram() {
        return Err(Error::GramOnly);
    }
    let (delta, w_star) =
        super::distance_to_subspace(space, x0, w_basis, b, &SolverConfig::default())?;
    if !(delta > MIN_CERTIFICATE_DISTANCE) {
        return Err(Error::DegenerateDistance(delta));
    }
    debug_assert_eq!(w_star, gram_projection_minimizer(space, x0, w_basis, b));
    let witness = x0.sub(&w_star);
    let r = linalg::project_out(&witness, b);
    let rr = dot(&r, &r);
    // r ∈ b⊥, so ⟨P x, r⟩ = ⟨x, r⟩
    let h = r.iter().map(|v| v / rr).collect();
    Ok(Certificate { h, delta, witness })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub h_x0: f64,
    /// `max_j |h(w_j)|` over the basis of `W`.
    pub basis_max: f64,
    /// Largest sampled `|F(x, βb)|·δ / ‖x, βb‖`; at most `1` for a sound
    /// certificate.
    pub max_ratio: f64,
    /// The same ratio at `x = witness`, `β = 1`; should equal `1`.
    pub attained_ratio: f64,
    pub probes: usize,
}

impl CertificateCheck {
    pub fn passed(&self, ratio_tol: f64, attain_tol: f64) -> bool {
        (self.h_x0 - 1.0).abs() <= 1e-9
            && self.basis_max <= 1e-9
            && self.max_ratio <= 1.0 + ratio_tol
            && (self.attained_ratio - 1.0).abs() <= attain_tol
    }
}

/// Samples `probes` pairs `(x, β)` with `x` uniform in `[-1, 1]ⁿ` and
/// `β` uniform in `[-2, 2]`, and measures the functional against the 2-norm.
pub fn verify_certificate(
    space: &Space,
    cert: &Certificate,
    x0: &Element,
    w_basis: &SubspaceBasis,
    b: &Element,
    probes: usize,
    seed: u64,
) -> Result<CertificateCheck> {
    space.check_element("x0", x0)?;
    space.check_element("b", b)?;
    if cert.h.len() != space.len() {
        return Err(Error::DimensionMismatch {
            what: "certificate h",
            expected: space.len(),
            found: cert.h.len(),
        });
    }
    let mut rng = rng::seeded(seed);
    let ratio = |x: &[f64], beta: f64| {
        let denom = space.eval(x, &b.scale(beta));
        if denom == 0.0 {
            0.0
        } else {
            cert.bilinear(x, beta).abs() * cert.delta / denom
        }
    };
    let max_ratio = (0..probes)
        .map(|_| {
            let x = rng::uniform_element(&mut rng, space.len());
            let beta = rng::uniform(&mut rng, -2.0, 2.0);
            ratio(&x, beta)
        })
        .fold(0.0_f64, f64::max);
    Ok(CertificateCheck {
        h_x0: cert.h_at(x0),
        basis_max: w_basis
            .vectors()
            .iter()
            .map(|w| cert.h_at(w).abs())
            .fold(0.0, f64::max),
        max_ratio,
        attained_ratio: ratio(&cert.witness, 1.0),
        probes,
    })
}
