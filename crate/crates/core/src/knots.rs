//! Knot vectors, breakpoint runs and the product knot vector.

use alloc::vec::Vec;

use crate::{Error, Result};

/// A distinct knot value together with the number of times it repeats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakpointRun {
    pub value: f64,
    pub multiplicity: usize,
}

/// Nondecreasing knot sequence with an attached degree.
///
/// Every knot is finite, no value repeats more than `degree + 1` times and the
/// span `[first, last]` is nonempty, so the space has dimension
/// `n = len - degree - 1 >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    knots: Vec<f64>,
    degree: usize,
}

impl KnotVector {
    pub fn new(knots: Vec<f64>, degree: usize) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::EmptyKnots);
        }
        if knots.len() < degree + 2 {
            return Err(Error::TooFewKnots {
                degree,
                required: degree + 2,
                found: knots.len(),
            });
        }
        for (index, &value) in knots.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteKnot { index, value });
            }
            if index > 0 && value < knots[index - 1] {
                return Err(Error::DecreasingKnots { index, value });
            }
        }
        let first = knots[0];
        if first == knots[knots.len() - 1] {
            return Err(Error::EmptySpan(first));
        }
        let kv = Self { knots, degree };
        if let Some(run) = kv.breakpoints().into_iter().find(|r| r.multiplicity > degree + 1) {
            return Err(Error::MultiplicityTooHigh {
                value: run.value,
                multiplicity: run.multiplicity,
                max: degree + 1,
            });
        }
        Ok(kv)
    }

    /// Open knot vector on `[a, b]` from strictly increasing breakpoints and
    /// one multiplicity per interior breakpoint.
    pub fn from_breakpoints(
        breakpoints: &[f64],
        interior_multiplicities: &[usize],
        degree: usize,
    ) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidInput("at least two breakpoints are required"));
        }
        if interior_multiplicities.len() != breakpoints.len() - 2 {
            return Err(Error::DimensionMismatch {
                expected: breakpoints.len() - 2,
                found: interior_multiplicities.len(),
            });
        }
        let last = breakpoints.len() - 1;
        let mut knots = Vec::new();
        for (j, &value) in breakpoints.iter().enumerate() {
            let mult = if j == 0 || j == last {
                degree + 1
            } else {
                interior_multiplicities[j - 1]
            };
            knots.extend(core::iter::repeat_n(value, mult));
        }
        Self::new(knots, degree)
    }

    /// Open knot vector with `count` uniform breakpoints on `[a, b]`, every
    /// interior breakpoint repeated `interior_multiplicity` times.
    pub fn uniform(a: f64, b: f64, count: usize, interior_multiplicity: usize, degree: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidInput("at least two breakpoints are required"));
        }
        let denom = (count - 1) as f64;
        let breaks: Vec<f64> = (0..count)
            .map(|k| if k == count - 1 { b } else { a + (b - a) * (k as f64 / denom) })
            .collect();
        let mults = alloc::vec![interior_multiplicity; count - 2];
        Self::from_breakpoints(&breaks, &mults, degree)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    /// Dimension `n` of the spline space.
    pub fn dim(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    pub fn first(&self) -> f64 {
        self.knots[0]
    }

    pub fn last(&self) -> f64 {
        self.knots[self.knots.len() - 1]
    }

    /// First and last knot repeat exactly `degree + 1` times.
    pub fn is_open(&self) -> bool {
        let p = self.degree;
        let (first, last) = (self.first(), self.last());
        self.multiplicity(first) == p + 1 && self.multiplicity(last) == p + 1
    }

    /// Number of knots exactly equal to `value`.
    pub fn multiplicity(&self, value: f64) -> usize {
        let lo = self.knots.partition_point(|&u| u < value);
        let hi = self.knots.partition_point(|&u| u <= value);
        hi - lo
    }

    pub fn breakpoints(&self) -> Vec<BreakpointRun> {
        runs(&self.knots)
    }

    /// 1-based index `k` with `t_k <= x < t_{k+1}`, `p + 1 <= k <= n`.
    ///
    /// The last nonempty interval is closed on the right. A point sitting on a
    /// repeated interior knot selects the interval starting at that knot.
    pub fn find_span(&self, x: f64) -> Result<usize> {
        self.span_index(x).map(|k| k + 1)
    }

    /// 0-based variant of [`find_span`](Self::find_span).
    pub(crate) fn span_index(&self, x: f64) -> Result<usize> {
        let (lo, hi) = (self.first(), self.last());
        if !(x >= lo && x <= hi) {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        let u = &self.knots;
        let k = if x >= hi {
            u.partition_point(|&v| v < hi) - 1
        } else {
            u.partition_point(|&v| v <= x) - 1
        };
        Ok(k.clamp(self.degree, self.dim() - 1))
    }

    /// Greville abscissae `(t_{i+1} + ... + t_{i+p}) / p`, one per basis function.
    pub fn greville_abscissae(&self) -> Result<Vec<f64>> {
        let p = self.degree;
        if p == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        let inv = 1.0 / p as f64;
        Ok((0..self.dim())
            .map(|i| self.knots[i + 1..=i + p].iter().sum::<f64>() * inv)
            .collect())
    }

    /// Copy with the boundary knots repeated up to `degree + 1` times.
    /// Returns the extended vector and how many knots were added on each side.
    pub(crate) fn opened(&self) -> (KnotVector, usize, usize) {
        let p = self.degree;
        let left = p + 1 - self.multiplicity(self.first());
        let right = p + 1 - self.multiplicity(self.last());
        let mut knots = Vec::with_capacity(self.len() + left + right);
        knots.extend(core::iter::repeat_n(self.first(), left));
        knots.extend_from_slice(&self.knots);
        knots.extend(core::iter::repeat_n(self.last(), right));
        (KnotVector { knots, degree: p }, left, right)
    }
}

/// Group a nondecreasing sequence into runs of exactly equal values.
pub(crate) fn runs(values: &[f64]) -> Vec<BreakpointRun> {
    let mut out: Vec<BreakpointRun> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some(run) if run.value == v => run.multiplicity += 1,
            _ => out.push(BreakpointRun { value: v, multiplicity: 1 }),
        }
    }
    out
}

/// Knot vector of the product space of two open knot vectors on the same span.
///
/// The degree is `p1 + p2` and every breakpoint of either factor appears with
/// the multiplicity that keeps the lower of the two smoothness orders:
/// `max(p1 + mu2, p2 + mu1)` where both factors have the breakpoint,
/// `p1 + mu2` or `p2 + mu1` where only one does, and `p + 1` at the ends.
pub fn product_knot_vector(kv1: &KnotVector, kv2: &KnotVector) -> Result<KnotVector> {
    product_knot_vector_with_tolerance(kv1, kv2, 0.0)
}

/// [`product_knot_vector`] merging breakpoints closer than `tolerance`.
///
/// A merged cluster takes the value of its smallest member. With the default
/// tolerance of zero only exactly equal values merge.
pub fn product_knot_vector_with_tolerance(
    kv1: &KnotVector,
    kv2: &KnotVector,
    tolerance: f64,
) -> Result<KnotVector> {
    let (p1, p2) = (kv1.degree(), kv2.degree());
    if p1 == 0 || p2 == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    if !kv1.is_open() {
        return Err(Error::NotOpen(p1));
    }
    if !kv2.is_open() {
        return Err(Error::NotOpen(p2));
    }
    let close = |a: f64, b: f64| (a - b).abs() <= tolerance;
    if !close(kv1.first(), kv2.first()) || !close(kv1.last(), kv2.last()) {
        return Err(Error::IncompatibleDomains {
            lo1: kv1.first(),
            hi1: kv1.last(),
            lo2: kv2.first(),
            hi2: kv2.last(),
        });
    }
    let p = p1 + p2;

    // (value, mu1, mu2) merged in increasing order
    let mut merged: Vec<(f64, usize, usize)> = Vec::new();
    let (r1, r2) = (kv1.breakpoints(), kv2.breakpoints());
    let (mut a, mut b) = (0, 0);
    while a < r1.len() || b < r2.len() {
        let take1 = b >= r2.len() || (a < r1.len() && r1[a].value <= r2[b].value);
        let (value, m1, m2) = if take1 {
            a += 1;
            (r1[a - 1].value, r1[a - 1].multiplicity, 0)
        } else {
            b += 1;
            (r2[b - 1].value, 0, r2[b - 1].multiplicity)
        };
        match merged.last_mut() {
            Some(last) if last.0 == value || close(last.0, value) => {
                last.1 += m1;
                last.2 += m2;
            }
            _ => merged.push((value, m1, m2)),
        }
    }

    let count = merged.len();
    let mut knots = Vec::new();
    for (j, &(value, mu1, mu2)) in merged.iter().enumerate() {
        let mult = if j == 0 || j + 1 == count {
            p + 1
        } else if mu1 > 0 && mu2 > 0 {
            (p1 + mu2).max(p2 + mu1)
        } else if mu2 > 0 {
            p1 + mu2
        } else {
            p2 + mu1
        };
        knots.extend(core::iter::repeat_n(value, mult.min(p + 1)));
    }
    KnotVector::new(knots, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cubic_uniform() -> KnotVector {
        KnotVector::uniform(0.0, 1.0, 5, 1, 3).unwrap()
    }

    #[test]
    fn rejects_invalid_vectors() {
        assert_eq!(KnotVector::new(vec![], 1), Err(Error::EmptyKnots));
        assert!(matches!(
            KnotVector::new(vec![0.0, 1.0, 0.5], 0),
            Err(Error::DecreasingKnots { index: 2, .. })
        ));
        assert!(matches!(
            KnotVector::new(vec![0.0, 0.0, 0.0, 1.0, 1.0], 1),
            Err(Error::MultiplicityTooHigh { multiplicity: 3, .. })
        ));
        assert!(matches!(KnotVector::new(vec![0.0, 1.0], 1), Err(Error::TooFewKnots { .. })));
        assert!(matches!(KnotVector::new(vec![1.0, 1.0, 1.0], 1), Err(Error::EmptySpan(_))));
        assert!(matches!(
            KnotVector::new(vec![0.0, f64::NAN, 1.0], 1),
            Err(Error::NonFiniteKnot { index: 1, .. })
        ));
    }

    #[test]
    fn multiplicity_queries() {
        let kv = cubic_uniform();
        assert_eq!(kv.multiplicity(0.3), 0);
        assert_eq!(kv.multiplicity(0.0), 4);
        assert_eq!(kv.multiplicity(1.0), 4);
        assert_eq!(kv.multiplicity(0.5), 1);
        assert!(kv.is_open());
        assert_eq!(kv.dim(), 7);
    }

    #[test]
    fn find_span_interior_and_right_endpoint() {
        let kv = cubic_uniform();
        // knots (1-based): 0,0,0,0,.25,.5,.75,1,1,1,1 ; [0.25,0.5) is k = 5
        assert_eq!(kv.find_span(0.3), Ok(5));
        assert_eq!(kv.find_span(0.0), Ok(4));
        assert_eq!(kv.find_span(0.25), Ok(5));
        assert_eq!(kv.find_span(1.0), Ok(7));
        assert!(matches!(kv.find_span(1.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(kv.find_span(-0.1), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn find_span_on_double_knot_matches_scan() {
        let kv = KnotVector::new(vec![0.0, 0.0, 0.0, 0.0, 0.4, 0.4, 0.7, 1.0, 1.0, 1.0, 1.0], 3).unwrap();
        let x = 0.4;
        // linear scan over all intervals: last k with t_k <= x < t_{k+1}
        let u = kv.knots();
        let scan = (0..u.len() - 1).filter(|&k| u[k] <= x && x < u[k + 1]).last().unwrap() + 1;
        assert_eq!(kv.find_span(x), Ok(scan));
        assert_eq!(scan, 6);
    }

    #[test]
    fn greville_small_cases() {
        let kv = KnotVector::new(vec![0.0, 0.0, 1.0, 1.0], 1).unwrap();
        assert_eq!(kv.greville_abscissae().unwrap(), vec![0.0, 1.0]);
        let kv = KnotVector::new(vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(kv.greville_abscissae().unwrap(), vec![0.0, 0.5, 1.0]);
        let kv = KnotVector::new(vec![0.0, 1.0], 0).unwrap();
        assert_eq!(kv.greville_abscissae(), Err(Error::UnsupportedDegree(0)));
    }

    #[test]
    fn product_knots_without_interior() {
        let kv = KnotVector::new(vec![0.0, 0.0, 1.0, 1.0], 1).unwrap();
        let t = product_knot_vector(&kv, &kv).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.knots(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn product_knots_one_sided_breakpoint() {
        let kv1 = KnotVector::new(vec![0.0, 0.0, 0.5, 1.0, 1.0], 1).unwrap();
        let kv2 = KnotVector::new(vec![0.0, 0.0, 1.0, 1.0], 1).unwrap();
        let t = product_knot_vector(&kv1, &kv2).unwrap();
        assert_eq!(t.knots(), &[0.0, 0.0, 0.0, 0.5, 0.5, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn product_knots_shared_breakpoints_keep_c2() {
        let kv = cubic_uniform();
        let t = product_knot_vector(&kv, &kv).unwrap();
        assert_eq!(t.degree(), 6);
        for v in [0.25, 0.5, 0.75] {
            assert_eq!(t.multiplicity(v), 4);
        }
        assert_eq!(t.multiplicity(0.0), 7);
        assert_eq!(t.dim(), 26 - 7);
    }

    #[test]
    fn product_knots_reject_mismatched_spans() {
        let kv1 = KnotVector::new(vec![0.0, 0.0, 1.0, 1.0], 1).unwrap();
        let kv2 = KnotVector::new(vec![0.0, 0.0, 2.0, 2.0], 1).unwrap();
        assert!(matches!(
            product_knot_vector(&kv1, &kv2),
            Err(Error::IncompatibleDomains { .. })
        ));
    }

    #[test]
    fn tolerance_merges_near_coincident_breakpoints() {
        let kv1 = KnotVector::new(vec![0.0, 0.0, 0.5, 1.0, 1.0], 1).unwrap();
        let kv2 = KnotVector::new(vec![0.0, 0.0, 0.5 + 1e-14, 1.0, 1.0], 1).unwrap();
        let exact = product_knot_vector(&kv1, &kv2).unwrap();
        assert_eq!(exact.breakpoints().len(), 4);
        let merged = product_knot_vector_with_tolerance(&kv1, &kv2, 1e-12).unwrap();
        assert_eq!(merged.breakpoints().len(), 3);
        assert_eq!(merged.multiplicity(0.5), 2);
    }
}
