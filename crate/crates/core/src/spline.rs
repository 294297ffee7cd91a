//! Splines in B-spline form: evaluation and boundary normalization.

use alloc::vec;
use alloc::vec::Vec;

use crate::knots::KnotVector;
use crate::oslo::deboor_in_place;
use crate::{Error, Result};

/// A spline `sum_j c_j B_{j,t}` of the degree carried by its knot vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline {
    knots: KnotVector,
    coefficients: Vec<f64>,
}

impl Spline {
    pub fn new(knots: KnotVector, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != knots.dim() {
            return Err(Error::CoefficientCount {
                expected: knots.dim(),
                found: coefficients.len(),
            });
        }
        if let Some((index, &value)) = coefficients.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index, value });
        }
        Ok(Self { knots, coefficients })
    }

    /// The `index`-th (0-based) B-spline of `knots` as a spline.
    pub fn basis(knots: KnotVector, index: usize) -> Result<Self> {
        let n = knots.dim();
        if index >= n {
            return Err(Error::IndexOutOfRange {
                what: "basis index",
                value: index,
                min: 0,
                max: n - 1,
            });
        }
        let mut coefficients = vec![0.0; n];
        coefficients[index] = 1.0;
        Self::new(knots, coefficients)
    }

    pub fn degree(&self) -> usize {
        self.knots.degree()
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn into_parts(self) -> (KnotVector, Vec<f64>) {
        (self.knots, self.coefficients)
    }

    /// Closed interval the spline is defined on.
    pub fn domain(&self) -> (f64, f64) {
        (self.knots.first(), self.knots.last())
    }

    /// Same function on an open knot vector.
    ///
    /// The boundary knots are repeated until they reach multiplicity
    /// `degree + 1` and the B-splines this adds get zero coefficients.
    pub fn make_open(&self) -> Spline {
        let (knots, left, right) = self.knots.opened();
        if left == 0 && right == 0 {
            return self.clone();
        }
        let mut coefficients = Vec::with_capacity(knots.dim());
        coefficients.extend(core::iter::repeat_n(0.0, left));
        coefficients.extend_from_slice(&self.coefficients);
        coefficients.extend(core::iter::repeat_n(0.0, right));
        Spline { knots, coefficients }
    }

    /// Value at `x` by the de Boor algorithm.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !self.knots.is_open() {
            return self.make_open().evaluate(x);
        }
        let p = self.degree();
        let k = self.knots.span_index(x)?;
        let mut local = self.coefficients[k - p..=k].to_vec();
        let window = &self.knots.knots()[k + 1 - p..=k + p];
        Ok(deboor_in_place(p, window, &mut local, |_| x))
    }

    /// Values on a grid; fails on the first point outside the domain.
    pub fn evaluate_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if !self.knots.is_open() {
            return self.make_open().evaluate_many(xs);
        }
        xs.iter().map(|&x| self.evaluate(x)).collect()
    }
}

/// Values of the `p + 1` B-splines that may be nonzero at `x`.
///
/// Returns the 0-based span index `k` (so the values belong to
/// `B_{k-p}, ..., B_k`) and the values in that order. The knot vector must be
/// open.
pub fn nonzero_basis(kv: &KnotVector, x: f64) -> Result<(usize, Vec<f64>)> {
    if !kv.is_open() {
        return Err(Error::NotOpen(kv.degree()));
    }
    let p = kv.degree();
    let k = kv.span_index(x)?;
    let u = kv.knots();
    let mut values = vec![0.0; p + 1];
    let mut left = vec![0.0; p + 1];
    let mut right = vec![0.0; p + 1];
    values[0] = 1.0;
    for j in 1..=p {
        left[j] = x - u[k + 1 - j];
        right[j] = u[k + j] - x;
        let mut saved = 0.0;
        for r in 0..j {
            let temp = values[r] / (right[r + 1] + left[j - r]);
            values[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        values[j] = saved;
    }
    Ok((k, values))
}
