//! Direct B-spline coefficients of a spline product.
//!
//! For the product space knot vector `t` of degree `p = p1 + p2`, coefficient
//! `b_i` is the average over all ways of splitting the local knots
//! `t_{i+1}, ..., t_{i+p}` into `p1` knots for `f` and `p2` knots for `g` of
//! the product of the two refined coefficients:
//!
//! ```text
//! b_i = sum_P  kernel_f(t^P) * kernel_g(t^Q)  /  C(p, p1)
//! ```
//!
//! [`morken_product`] visits all `C(p, p1)` index subsets. [`improved_morken_product`]
//! visits each distinct knot selection once and weights it by how many subsets
//! produce it, which is where the saving comes from.

use alloc::vec;
use alloc::vec::Vec;

use crate::binomial::{binomial, binomial_exact};
use crate::combinations::knot_combinations;
use crate::knots::{product_knot_vector, KnotVector};
use crate::oslo::{deboor_with_table, reciprocal_table};
use crate::spline::Spline;
use crate::{Error, Result};

/// Naive products summing more terms than this per coefficient are refused
/// unless forced.
pub const NAIVE_TERM_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NaiveOptions {
    /// Run even when `C(p, p1)` exceeds [`NAIVE_TERM_LIMIT`].
    pub force: bool,
}

/// Product spline together with term-count statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductResult {
    pub product: Spline,
    /// `C(p, p1)`, the number of terms of the unfactored sum.
    pub naive_term_count: u128,
    /// Terms actually summed for each coefficient.
    pub distinct_term_counts: Vec<usize>,
    pub mean_distinct: f64,
}

impl ProductResult {
    /// Total number of terms over all coefficients.
    pub fn total_terms(&self) -> usize {
        self.distinct_term_counts.iter().sum()
    }
}

/// Mean number of terms per coefficient.
pub fn mean_distinct_terms(r: &ProductResult) -> f64 {
    let counts = &r.distinct_term_counts;
    if counts.is_empty() {
        return 0.0;
    }
    counts.iter().sum::<usize>() as f64 / counts.len() as f64
}

/// Everything needed to compute product coefficients one at a time.
///
/// Each coefficient depends only on local data, so callers may evaluate
/// [`improved_coefficient`](Self::improved_coefficient) for different indices
/// concurrently.
#[derive(Debug, Clone)]
pub struct ProductPlan {
    f: Spline,
    g: Spline,
    knots: KnotVector,
    naive_terms: u128,
    divisor: f64,
}

#[derive(Default)]
struct Scratch {
    chosen: Vec<f64>,
    rest: Vec<f64>,
    local_f: Vec<f64>,
    local_g: Vec<f64>,
    table_f: Vec<f64>,
    table_g: Vec<f64>,
}

/// Index data of one coefficient: fine window start and both span indices.
struct Site {
    k1: usize,
    k2: usize,
}

impl ProductPlan {
    pub fn new(f: &Spline, g: &Spline) -> Result<Self> {
        for s in [f, g] {
            if s.degree() == 0 {
                return Err(Error::UnsupportedDegree(0));
            }
        }
        let (f, g) = (f.make_open(), g.make_open());
        let (a1, b1) = f.domain();
        let (a2, b2) = g.domain();
        if a1 != a2 || b1 != b2 {
            return Err(Error::IncompatibleDomains {
                lo1: a1,
                hi1: b1,
                lo2: a2,
                hi2: b2,
            });
        }
        let knots = product_knot_vector(f.knots(), g.knots())?;
        let (p, p1) = (knots.degree() as u64, f.degree() as u64);
        let naive_terms = binomial_exact(p, p1).ok_or(Error::CombinationOverflow(p as usize))?;
        let divisor = binomial(p, p1)?;
        Ok(Self {
            f,
            g,
            knots,
            naive_terms,
            divisor,
        })
    }

    pub fn product_knots(&self) -> &KnotVector {
        &self.knots
    }

    /// Number of product coefficients `m`.
    pub fn dim(&self) -> usize {
        self.knots.dim()
    }

    pub fn naive_term_count(&self) -> u128 {
        self.naive_terms
    }

    fn site(&self, i: usize) -> Result<Site> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                what: "coefficient index",
                value: i,
                min: 0,
                max: self.dim() - 1,
            });
        }
        let ti = self.knots.knots()[i];
        Ok(Site {
            k1: self.f.knots().span_index(ti)?,
            k2: self.g.knots().span_index(ti)?,
        })
    }

    fn window(&self, i: usize) -> &[f64] {
        let p = self.knots.degree();
        &self.knots.knots()[i + 1..=i + p]
    }

    fn coarse_windows(&self, site: &Site) -> (&[f64], &[f64]) {
        let (p1, p2) = (self.f.degree(), self.g.degree());
        (
            &self.f.knots().knots()[site.k1 + 1 - p1..=site.k1 + p1],
            &self.g.knots().knots()[site.k2 + 1 - p2..=site.k2 + p2],
        )
    }

    /// Load the local coefficients and reciprocal tables; false when either
    /// factor vanishes there.
    fn load(&self, site: &Site, s: &mut Scratch) -> bool {
        let (p1, p2) = (self.f.degree(), self.g.degree());
        s.local_f.clear();
        s.local_f.extend_from_slice(&self.f.coefficients()[site.k1 - p1..=site.k1]);
        s.local_g.clear();
        s.local_g.extend_from_slice(&self.g.coefficients()[site.k2 - p2..=site.k2]);
        let nonzero = s.local_f.iter().any(|&c| c != 0.0) && s.local_g.iter().any(|&c| c != 0.0);
        if nonzero {
            let (u1, u2) = self.coarse_windows(site);
            reciprocal_table(p1, u1, &mut s.table_f);
            reciprocal_table(p2, u2, &mut s.table_g);
        }
        nonzero
    }

    /// `kernel_f(chosen) * kernel_g(rest)`; clobbers the local coefficients.
    fn term(&self, site: &Site, s: &mut Scratch, local_f: &[f64], local_g: &[f64]) -> f64 {
        let (p1, p2) = (self.f.degree(), self.g.degree());
        let (u1, u2) = self.coarse_windows(site);
        s.local_f.copy_from_slice(local_f);
        s.local_g.copy_from_slice(local_g);
        let (chosen, rest) = (&s.chosen, &s.rest);
        let bp = deboor_with_table(p1, u1, &s.table_f, &mut s.local_f, |d| chosen[d - 1]);
        let bq = deboor_with_table(p2, u2, &s.table_g, &mut s.local_g, |d| rest[d - 1]);
        bp * bq
    }

    fn improved_with(&self, i: usize, s: &mut Scratch) -> Result<(f64, usize)> {
        let site = self.site(i)?;
        let set = knot_combinations(self.window(i), self.f.degree())?;
        if !self.load(&site, s) {
            return Ok((0.0, set.len()));
        }
        let (cf, cg) = (s.local_f.clone(), s.local_g.clone());
        let mut acc = 0.0;
        for idx in 0..set.len() {
            set.split_into(idx, &mut s.chosen, &mut s.rest);
            let weight = set.repetition(idx) as f64;
            acc += weight * self.term(&site, s, &cf, &cg);
        }
        Ok((acc / self.divisor, set.len()))
    }

    fn naive_with(&self, i: usize, s: &mut Scratch) -> Result<f64> {
        let site = self.site(i)?;
        if !self.load(&site, s) {
            return Ok(0.0);
        }
        let (cf, cg) = (s.local_f.clone(), s.local_g.clone());
        let window = self.window(i);
        let (p, p1) = (window.len(), self.f.degree());
        let mut acc = 0.0;
        let mut subset: Vec<usize> = (0..p1).collect();
        loop {
            s.chosen.clear();
            s.rest.clear();
            let mut next = 0;
            for (j, &t) in window.iter().enumerate() {
                if next < p1 && subset[next] == j {
                    s.chosen.push(t);
                    next += 1;
                } else {
                    s.rest.push(t);
                }
            }
            acc += self.term(&site, s, &cf, &cg);
            if !next_subset(&mut subset, p) {
                break;
            }
        }
        Ok(acc / self.divisor)
    }

    /// Coefficient `b_i` (0-based) summed over distinct knot selections, with
    /// the number of selections used.
    pub fn improved_coefficient(&self, i: usize) -> Result<(f64, usize)> {
        self.improved_with(i, &mut Scratch::default())
    }

    /// Coefficient `b_i` (0-based) summed over every index subset.
    pub fn naive_coefficient(&self, i: usize) -> Result<f64> {
        self.naive_with(i, &mut Scratch::default())
    }

    /// Assemble a result from per-coefficient values and term counts.
    pub fn finish(&self, coefficients: Vec<f64>, counts: Vec<usize>) -> Result<ProductResult> {
        let product = Spline::new(self.knots.clone(), coefficients)?;
        let mut r = ProductResult {
            product,
            naive_term_count: self.naive_terms,
            distinct_term_counts: counts,
            mean_distinct: 0.0,
        };
        r.mean_distinct = mean_distinct_terms(&r);
        Ok(r)
    }

    pub fn improved(&self) -> Result<ProductResult> {
        let mut s = Scratch::default();
        let m = self.dim();
        let (mut b, mut counts) = (Vec::with_capacity(m), Vec::with_capacity(m));
        for i in 0..m {
            let (v, c) = self.improved_with(i, &mut s)?;
            b.push(v);
            counts.push(c);
        }
        self.finish(b, counts)
    }

    pub fn naive(&self, options: NaiveOptions) -> Result<ProductResult> {
        if self.naive_terms > NAIVE_TERM_LIMIT as u128 && !options.force {
            return Err(Error::NaiveInfeasible {
                terms: self.naive_terms as f64,
                limit: NAIVE_TERM_LIMIT,
            });
        }
        let mut s = Scratch::default();
        let m = self.dim();
        let b = (0..m).map(|i| self.naive_with(i, &mut s)).collect::<Result<Vec<_>>>()?;
        let per = usize::try_from(self.naive_terms).unwrap_or(usize::MAX);
        self.finish(b, vec![per; m])
    }
}

/// Advance a sorted `k`-subset of `0..n` to its lexicographic successor.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for pos in (0..k).rev() {
        if subset[pos] < n - k + pos {
            subset[pos] += 1;
            for j in pos + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Product of `f` and `g` summing all `C(p, p1)` index subsets per coefficient.
pub fn morken_product(f: &Spline, g: &Spline, options: NaiveOptions) -> Result<ProductResult> {
    ProductPlan::new(f, g)?.naive(options)
}

/// Product of `f` and `g` summing only the distinct knot selections.
pub fn improved_morken_product(f: &Spline, g: &Spline) -> Result<ProductResult> {
    ProductPlan::new(f, g)?.improved()
}
