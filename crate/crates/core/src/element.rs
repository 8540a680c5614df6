//! Points of a 2-normed space in the space's canonical coordinates.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinates of a point of `X`: ambient coordinates for the Gram space,
/// monomial coefficients `1, t, …, tⁿ` for the polynomial space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Element(pub Vec<f64>);

impl Element {
    pub fn zeros(len: usize) -> Self {
        Element(vec![0.0; len])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn ensure_finite(&self, what: &'static str) -> Result<()> {
        if self.0.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, alpha: f64) -> Element {
        Element(self.0.iter().map(|a| alpha * a).collect())
    }

    /// `lambda·self + (1 − lambda)·other`, exact at the endpoints.
    pub fn blend(&self, other: &Element, lambda: f64) -> Element {
        if lambda == 1.0 {
            return self.clone();
        }
        if lambda == 0.0 {
            return other.clone();
        }
        let mu = 1.0 - lambda;
        Element(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| lambda * a + mu * b)
                .collect(),
        )
    }

    pub fn dot(&self, other: &Element) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl Deref for Element {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Element {
    fn from(v: Vec<f64>) -> Self {
        Element(v)
    }
}

impl From<&[f64]> for Element {
    fn from(v: &[f64]) -> Self {
        Element(v.to_vec())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Σ coeffs[j] · basis[j]`, or the zero vector of length `len` for an empty basis.
pub(crate) fn combine(basis: &[Element], coeffs: &[f64], len: usize) -> Element {
    let mut out = vec![0.0; len];
    for (v, &c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += c * x;
        }
    }
    Element(out)
}
