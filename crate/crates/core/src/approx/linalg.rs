//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::element::Element;

/// Relative singular-value cutoff used for rank decisions.
pub(crate) const RANK_EPS: f64 = 1e-10;

pub(crate) fn columns(vectors: &[&[f64]], len: usize) -> DMatrix<f64> {
    DMatrix::from_fn(len, vectors.len(), |i, j| vectors[j][i])
}

/// Determinant of the Gram matrix of the unit-normalized vectors. Zero if
/// any vector is zero.
pub(crate) fn normalized_gram_det(vectors: &[Element]) -> f64 {
    if vectors.is_empty() {
        return 1.0;
    }
    let len = vectors[0].len();
    let mut unit = Vec::with_capacity(vectors.len());
    for v in vectors {
        let n = v.norm();
        if n == 0.0 {
            return 0.0;
        }
        unit.push(v.scale(1.0 / n));
    }
    let cols: Vec<&[f64]> = unit.iter().map(|v| v.coords()).collect();
    let m = columns(&cols, len);
    (m.transpose() * &m).determinant()
}

/// Euclidean distance from `v / |v|` to the span of `vectors`.
pub(crate) fn relative_distance_to_span(vectors: &[&[f64]], v: &[f64]) -> f64 {
    let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if vn == 0.0 {
        return 0.0;
    }
    let unit = DVector::from_iterator(v.len(), v.iter().map(|x| x / vn));
    let nonzero: Vec<&[f64]> = vectors
        .iter()
        .copied()
        .filter(|w| w.iter().any(|x| *x != 0.0))
        .collect();
    if nonzero.is_empty() {
        return 1.0;
    }
    let normalized: Vec<Vec<f64>> = nonzero
        .iter()
        .map(|w| {
            let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            w.iter().map(|x| x / n).collect()
        })
        .collect();
    let cols: Vec<&[f64]> = normalized.iter().map(|w| w.as_slice()).collect();
    let a = columns(&cols, v.len());
    let coeffs = lstsq(&a, &unit);
    (unit - a * coeffs).norm()
}

/// Minimum-norm least-squares solution of `a x ≈ y`.
pub(crate) fn lstsq(a: &DMatrix<f64>, y: &DVector<f64>) -> DVector<f64> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    let cutoff = RANK_EPS * svd.singular_values.max().max(f64::MIN_POSITIVE);
    svd.solve(y, cutoff)
        .expect("svd computed with both factors")
}

/// Orthogonal projection of `x` onto the complement of `b`.
pub(crate) fn project_out(x: &[f64], b: &[f64]) -> Vec<f64> {
    let bb: f64 = b.iter().map(|v| v * v).sum();
    let xb: f64 = x.iter().zip(b).map(|(p, q)| p * q).sum();
    let s = xb / bb;
    x.iter().zip(b).map(|(p, q)| p - s * q).collect()
}
