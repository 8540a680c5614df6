//! Finite-prefix diagnostics for sequences in a 2-normed space.
//!
//! Nothing here decides whether a sequence is Cauchy or convergent; the
//! functions report tail suprema and pointwise inequalities over the prefix
//! that was supplied. Indices are zero-based positions in the prefix.

use serde::{Deserialize, Serialize};

use crate::approx::linalg::normalized_gram_det;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::spaces::{Space, TwoNorm};

/// Slack for the pointwise reverse triangle inequality.
pub const REVERSE_TRIANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbePair {
    pub y: Element,
    pub z: Element,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequencePrefix {
    pub elements: Vec<Element>,
    pub probes: ProbePair,
}

impl SequencePrefix {
    pub fn validate(&self, space: &Space) -> Result<()> {
        if self.elements.len() < 2 {
            return Err(Error::InvalidInput("sequence needs at least 2 elements".into()));
        }
        for x in &self.elements {
            space.check_element("sequence element", x)?;
        }
        space.check_element("probe y", &self.probes.y)?;
        space.check_element("probe z", &self.probes.z)?;
        Ok(())
    }

    fn check_independent_probes(&self) -> Result<()> {
        let det = normalized_gram_det(&[self.probes.y.clone(), self.probes.z.clone()]);
        if !(det > 1e-12) {
            return Err(Error::InvalidInput(
                "Cauchy probes y and z must be linearly independent".into(),
            ));
        }
        Ok(())
    }
}

/// `(max_{n,m ≥ tail_from} ‖x_n − x_m, y‖, max_{n,m ≥ tail_from} ‖x_n − x_m, z‖)`.
pub fn cauchy_profile(space: &Space, seq: &SequencePrefix, tail_from: usize) -> Result<(f64, f64)> {
    seq.validate(space)?;
    seq.check_independent_probes()?;
    if tail_from + 1 >= seq.elements.len() {
        return Err(Error::InvalidInput(format!(
            "tail_from {tail_from} must be < {}",
            seq.elements.len() - 1
        )));
    }
    Ok(cauchy_series_unchecked(space, seq)[tail_from])
}

/// [`cauchy_profile`] for every admissible `tail_from`, computed in one pass.
pub fn cauchy_series(space: &Space, seq: &SequencePrefix) -> Result<Vec<(f64, f64)>> {
    seq.validate(space)?;
    seq.check_independent_probes()?;
    let mut s = cauchy_series_unchecked(space, seq);
    s.pop();
    Ok(s)
}

fn cauchy_series_unchecked(space: &Space, seq: &SequencePrefix) -> Vec<(f64, f64)> {
    let xs = &seq.elements;
    let n = xs.len();
    let mut out = vec![(0.0, 0.0); n];
    let mut acc = (0.0_f64, 0.0_f64);
    for t in (0..n).rev() {
        for m in t + 1..n {
            let d = xs[t].sub(&xs[m]);
            acc.0 = acc.0.max(space.eval(&d, &seq.probes.y));
            acc.1 = acc.1.max(space.eval(&d, &seq.probes.z));
        }
        out[t] = acc;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeProfile {
    pub probe: Element,
    /// `‖x_n − limit, z‖` for each `n`.
    pub values: Vec<f64>,
    /// `max_{m ≥ n}` of `values`.
    pub tail_max: Vec<f64>,
    /// All values vanish although `x_n ≠ limit` somewhere: the probe only
    /// sees directions in which the sequence does not move.
    pub blind: bool,
}

pub fn convergence_profile(
    space: &Space,
    seq: &SequencePrefix,
    limit: &Element,
    probe_dirs: &[Element],
) -> Result<Vec<ProbeProfile>> {
    seq.validate(space)?;
    space.check_element("limit", limit)?;
    if probe_dirs.is_empty() {
        return Err(Error::InvalidInput("probe_dirs must be nonempty".into()));
    }
    let diffs: Vec<Element> = seq.elements.iter().map(|x| x.sub(limit)).collect();
    let moves = diffs.iter().any(|d| !d.is_zero());
    probe_dirs
        .iter()
        .map(|z| {
            space.check_element("probe direction", z)?;
            let values: Vec<f64> = diffs.iter().map(|d| space.eval(d, z)).collect();
            let mut tail_max = values.clone();
            for i in (0..tail_max.len().saturating_sub(1)).rev() {
                tail_max[i] = tail_max[i].max(tail_max[i + 1]);
            }
            Ok(ProbeProfile {
                probe: z.clone(),
                blind: moves && values.iter().all(|&v| v == 0.0),
                values,
                tail_max,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormLimitReport {
    /// `| ‖x_n, y‖ − ‖limit, y‖ |`
    pub deviations: Vec<f64>,
    /// `‖x_n − limit, y‖`
    pub bounds: Vec<f64>,
    pub max_deviation: f64,
    /// Indices where the deviation exceeds the bound by more than
    /// [`REVERSE_TRIANGLE_TOL`].
    pub violations: Vec<usize>,
}

pub fn norm_limit_check(
    space: &Space,
    seq: &SequencePrefix,
    limit: &Element,
    y: &Element,
) -> Result<NormLimitReport> {
    seq.validate(space)?;
    space.check_element("limit", limit)?;
    space.check_element("y", y)?;
    let at_limit = space.eval(limit, y);
    let mut report = NormLimitReport {
        deviations: Vec::with_capacity(seq.elements.len()),
        bounds: Vec::with_capacity(seq.elements.len()),
        max_deviation: 0.0,
        violations: Vec::new(),
    };
    for (n, x) in seq.elements.iter().enumerate() {
        let dev = (space.eval(x, y) - at_limit).abs();
        let bound = space.eval(&x.sub(limit), y);
        if dev > bound + REVERSE_TRIANGLE_TOL {
            report.violations.push(n);
        }
        report.max_deviation = report.max_deviation.max(dev);
        report.deviations.push(dev);
        report.bounds.push(bound);
    }
    Ok(report)
}
