//! Knot insertion by the Oslo algorithm.
//!
//! A refined coefficient is `b_i = R_1(t_{i+1}) R_2(t_{i+2}) ... R_p(t_{i+p}) c^k`
//! where each `R_d` is a `d x (d+1)` bidiagonal matrix built from the coarse
//! knots around the interval `[tau_k, tau_{k+1})` containing `t_i`. The
//! production path ([`deboor_kernel`], [`oslo_coefficients`]) never forms the
//! matrices; it shrinks `c^k` in place one level at a time. The explicit
//! matrices ([`insertion_matrix`], [`discrete_bspline_row`]) exist for checking
//! that kernel.

use alloc::vec;
use alloc::vec::Vec;

use crate::knots::KnotVector;
use crate::spline::Spline;
use crate::{Error, Result};

/// Convex weights of one bidiagonal row. A zero denominator makes both zero.
#[inline]
fn weights(lo: f64, hi: f64, t: f64) -> (f64, f64) {
    let denom = hi - lo;
    if denom == 0.0 {
        (0.0, 0.0)
    } else {
        ((hi - t) / denom, (t - lo) / denom)
    }
}

/// Matrix-free product `R_1(t_{i+1}) ... R_p(t_{i+p}) c^k`.
///
/// `window` holds the `2p` coarse knots `tau_{k+1-p}, ..., tau_{k+p}`,
/// `coeffs` the `p + 1` coefficients `c_{k-p}, ..., c_k` (overwritten) and
/// `fine(d)` returns `t_{i+d}` for `d = 1..=p`.
#[inline]
pub(crate) fn deboor_in_place(
    p: usize,
    window: &[f64],
    coeffs: &mut [f64],
    fine: impl Fn(usize) -> f64,
) -> f64 {
    debug_assert_eq!(window.len(), 2 * p);
    debug_assert_eq!(coeffs.len(), p + 1);
    for d in (1..=p).rev() {
        let t = fine(d);
        for l in 1..=d {
            let (a, b) = weights(window[p - 1 + l - d], window[p - 1 + l], t);
            coeffs[l - 1] = a * coeffs[l - 1] + b * coeffs[l];
        }
    }
    debug_assert!(!coeffs[0].is_nan(), "knot insertion produced NaN");
    coeffs[0]
}

/// Reciprocal denominators `1 / (tau_{k+l} - tau_{k+l-d})` of every row the
/// kernel visits, in visiting order, with 0 for empty intervals. They depend
/// only on the coarse window, so one table serves any number of fine windows.
pub(crate) fn reciprocal_table(p: usize, window: &[f64], out: &mut Vec<f64>) {
    debug_assert_eq!(window.len(), 2 * p);
    out.clear();
    for d in (1..=p).rev() {
        for l in 1..=d {
            let denom = window[p - 1 + l] - window[p - 1 + l - d];
            out.push(if denom == 0.0 { 0.0 } else { 1.0 / denom });
        }
    }
}

/// [`deboor_in_place`] with the divisions replaced by a [`reciprocal_table`].
#[inline]
pub(crate) fn deboor_with_table(
    p: usize,
    window: &[f64],
    table: &[f64],
    coeffs: &mut [f64],
    fine: impl Fn(usize) -> f64,
) -> f64 {
    debug_assert_eq!(table.len(), p * (p + 1) / 2);
    let mut r = 0;
    for d in (1..=p).rev() {
        let t = fine(d);
        for l in 1..=d {
            let (lo, hi) = (window[p - 1 + l - d], window[p - 1 + l]);
            coeffs[l - 1] = ((hi - t) * coeffs[l - 1] + (t - lo) * coeffs[l]) * table[r];
            r += 1;
        }
    }
    debug_assert!(!coeffs[0].is_nan(), "knot insertion produced NaN");
    coeffs[0]
}

/// Flops spent by one kernel call of degree `p` (two products and a sum per row).
pub fn kernel_flop_count(p: usize) -> usize {
    3 * p * (p + 1) / 2
}

/// The local data one refined coefficient depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalWindow {
    coarse_knots: Vec<f64>,
    coarse_coeffs: Vec<f64>,
    fine_knots: Vec<f64>,
}

impl LocalWindow {
    /// Validate shapes (`2p`, `p + 1`, `p` entries), ordering, and that every
    /// fine knot lies within the coarse window.
    pub fn new(coarse_knots: Vec<f64>, coarse_coeffs: Vec<f64>, fine_knots: Vec<f64>) -> Result<Self> {
        let p = fine_knots.len();
        if coarse_knots.len() != 2 * p {
            return Err(Error::InvalidWindow("coarse knots must number twice the degree"));
        }
        if coarse_coeffs.len() != p + 1 {
            return Err(Error::InvalidWindow("coarse coefficients must number degree + 1"));
        }
        let sorted = |v: &[f64]| v.windows(2).all(|w| w[0] <= w[1]);
        if !sorted(&coarse_knots) || !sorted(&fine_knots) {
            return Err(Error::InvalidWindow("knots must be nondecreasing"));
        }
        if p > 0 {
            let (lo, hi) = (coarse_knots[0], coarse_knots[2 * p - 1]);
            if fine_knots.iter().any(|&t| t < lo || t > hi) {
                return Err(Error::InvalidWindow("fine knots must lie within the coarse window"));
            }
        }
        Ok(Self {
            coarse_knots,
            coarse_coeffs,
            fine_knots,
        })
    }

    /// Window of `spline` around the 1-based span index `k` paired with `fine`.
    pub fn extract(spline: &Spline, k: usize, fine: &[f64]) -> Result<Self> {
        let p = spline.degree();
        check_span(spline.knots(), k)?;
        let k0 = k - 1;
        Self::new(
            spline.knots().knots()[k0 + 1 - p..=k0 + p].to_vec(),
            spline.coefficients()[k0 - p..=k0].to_vec(),
            fine.to_vec(),
        )
    }

    pub fn degree(&self) -> usize {
        self.fine_knots.len()
    }

    pub fn coarse_knots(&self) -> &[f64] {
        &self.coarse_knots
    }

    pub fn coarse_coeffs(&self) -> &[f64] {
        &self.coarse_coeffs
    }

    pub fn fine_knots(&self) -> &[f64] {
        &self.fine_knots
    }
}

/// One refined coefficient computed from a local window.
pub fn deboor_kernel(w: &LocalWindow, p: usize) -> Result<f64> {
    if w.degree() != p {
        return Err(Error::InvalidWindow("window shape does not match the degree"));
    }
    let mut coeffs = w.coarse_coeffs.clone();
    let fine = &w.fine_knots;
    Ok(deboor_in_place(p, &w.coarse_knots, &mut coeffs, |d| fine[d - 1]))
}

/// The `d x (d+1)` bidiagonal knot-insertion matrix `R_d^k(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertionMatrix {
    diagonal: Vec<f64>,
    superdiagonal: Vec<f64>,
}

impl InsertionMatrix {
    pub fn rows(&self) -> usize {
        self.diagonal.len()
    }

    pub fn cols(&self) -> usize {
        self.diagonal.len() + 1
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn superdiagonal(&self) -> &[f64] {
        &self.superdiagonal
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        if col == row {
            self.diagonal[row]
        } else if col == row + 1 {
            self.superdiagonal[row]
        } else {
            0.0
        }
    }

    /// `R v` for a vector of length `cols()`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                found: v.len(),
            });
        }
        Ok((0..self.rows())
            .map(|l| self.diagonal[l] * v[l] + self.superdiagonal[l] * v[l + 1])
            .collect())
    }
}

fn check_span(coarse: &KnotVector, k: usize) -> Result<()> {
    let (p, n) = (coarse.degree(), coarse.dim());
    if k < p + 1 || k > n {
        return Err(Error::IndexOutOfRange {
            what: "span index k",
            value: k,
            min: p + 1,
            max: n,
        });
    }
    Ok(())
}

/// `R_d^k(t)` for the 1-based span index `k`, `1 <= d <= p`.
pub fn insertion_matrix(coarse: &KnotVector, k: usize, d: usize, t: f64) -> Result<InsertionMatrix> {
    let p = coarse.degree();
    check_span(coarse, k)?;
    if d < 1 || d > p {
        return Err(Error::IndexOutOfRange {
            what: "level d",
            value: d,
            min: 1,
            max: p,
        });
    }
    // 1-based tau_j is knots[j - 1]
    let tau = |j: usize| coarse.knots()[j - 1];
    let (diagonal, superdiagonal) = (1..=d)
        .map(|l| weights(tau(k + l - d), tau(k + l), t))
        .unzip();
    Ok(InsertionMatrix {
        diagonal,
        superdiagonal,
    })
}

/// Row vector `alpha = R_1(t_1) R_2(t_2) ... R_p(t_p)` (discrete B-splines),
/// so that the refined coefficient is `alpha . c^k`.
pub fn discrete_bspline_row(p: usize, coarse: &KnotVector, k: usize, fine_window: &[f64]) -> Result<Vec<f64>> {
    if coarse.degree() != p || fine_window.len() != p {
        return Err(Error::InvalidWindow("window shape does not match the degree"));
    }
    let mut row = vec![1.0];
    for d in 1..=p {
        let r = insertion_matrix(coarse, k, d, fine_window[d - 1])?;
        let mut next = vec![0.0; d + 1];
        for (l, &alpha) in row.iter().enumerate() {
            next[l] += alpha * r.get(l, l);
            next[l + 1] += alpha * r.get(l, l + 1);
        }
        row = next;
    }
    Ok(row)
}

/// Coefficients of the spline `(coarse, c)` in the B-spline basis of `fine`.
///
/// `fine` must refine `coarse` on its own span, which may be a subinterval
/// of the coarse span; the result then represents the restriction. Knot
/// vectors that are not open are extended and the extra coefficients dropped.
pub fn oslo_coefficients(p: usize, coarse: &KnotVector, c: &[f64], fine: &KnotVector) -> Result<Vec<f64>> {
    if coarse.degree() != p || fine.degree() != p {
        return Err(Error::InvalidInput("degree differs from the knot vectors' degree"));
    }
    if p == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    let spline = Spline::new(coarse.clone(), c.to_vec())?.make_open();
    let coarse = spline.knots();
    check_local_refinement(coarse, fine)?;

    let (fine_open, left, right) = fine.opened();
    let t = fine_open.knots();
    let (u, cs) = (coarse.knots(), spline.coefficients());
    let mut local = vec![0.0; p + 1];
    let mut b = Vec::with_capacity(fine_open.dim());
    for i in 0..fine_open.dim() {
        let k = coarse.span_index(t[i])?;
        local.copy_from_slice(&cs[k - p..=k]);
        b.push(deboor_in_place(p, &u[k + 1 - p..=k + p], &mut local, |d| t[i + d]));
    }
    b.drain(..left);
    b.truncate(b.len() - right);
    Ok(b)
}

fn check_local_refinement(coarse: &KnotVector, fine: &KnotVector) -> Result<()> {
    let (lo, hi) = (fine.first(), fine.last());
    if lo < coarse.first() || hi > coarse.last() {
        return Err(Error::NotARefinement("fine span leaves the coarse span"));
    }
    for run in coarse.breakpoints() {
        if run.value > lo && run.value < hi && fine.multiplicity(run.value) < run.multiplicity {
            return Err(Error::NotARefinement("a coarse knot is missing from the fine vector"));
        }
    }
    Ok(())
}

impl Spline {
    /// The same function on the refined knot vector `fine`.
    pub fn refine(&self, fine: &KnotVector) -> Result<Spline> {
        let b = oslo_coefficients(self.degree(), self.knots(), self.coefficients(), fine)?;
        Spline::new(fine.clone(), b)
    }
}
