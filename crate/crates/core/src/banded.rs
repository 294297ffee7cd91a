//! Banded matrices, LU factorization with partial pivoting and a 1-norm
//! condition estimate.
//!
//! Storage follows the LAPACK `gbtrf` layout: column `j` keeps rows
//! `j - ku - kl ..= j + kl`, the extra `kl` rows above the band receiving the
//! fill created by row interchanges.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    order: usize,
    kl: usize,
    ku: usize,
    ab: Vec<f64>,
}

impl BandedMatrix {
    /// Zero matrix of the given order with `kl` sub- and `ku` superdiagonals.
    pub fn zeros(order: usize, kl: usize, ku: usize) -> Self {
        let ld = 2 * kl + ku + 1;
        Self {
            order,
            kl,
            ku,
            ab: vec![0.0; ld * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut a = Self::zeros(order, 0, 0);
        for i in 0..order {
            a.set(i, i, 1.0);
        }
        a
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.kl
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.ku
    }

    fn ld(&self) -> usize {
        2 * self.kl + self.ku + 1
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.order && j < self.order && i + self.ku >= j && j + self.kl >= i
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.ld() + self.kl + self.ku + i - j
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.ab[self.idx(i, j)]
        } else {
            0.0
        }
    }

    /// Set an entry inside the band.
    ///
    /// # Panics
    /// If `(i, j)` lies outside the declared band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside the band");
        let k = self.idx(i, j);
        self.ab[k] = value;
    }

    fn cols_of_row(&self, i: usize) -> core::ops::RangeInclusive<usize> {
        i.saturating_sub(self.kl)..=(i + self.ku).min(self.order - 1)
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.cols_of_row(i).map(|j| self.get(i, j)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        Ok((0..self.order)
            .map(|i| self.cols_of_row(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect())
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.order)
            .map(|j| {
                let lo = j.saturating_sub(self.ku);
                let hi = (j + self.kl).min(self.order - 1);
                (lo..=hi).map(|i| self.get(i, j).abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j)).collect())
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: len,
            });
        }
        Ok(())
    }

    /// LU factorization with partial pivoting on an owned copy.
    pub fn factorize(&self) -> Result<BandedLu> {
        let n = self.order;
        let (kl, ku) = (self.kl, self.ku);
        let mut a = self.clone();
        let mut pivots = vec![0usize; n];
        // last column touched by U so far
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let mut jp = 0;
            let mut best = a.ab[a.idx(j, j)].abs();
            for r in 1..=km {
                let v = a.ab[a.idx(j + r, j)].abs();
                if v > best {
                    best = v;
                    jp = r;
                }
            }
            pivots[j] = j + jp;
            if best == 0.0 {
                return Err(Error::SingularMatrix { column: j });
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let (x, y) = (a.idx(j, c), a.idx(j + jp, c));
                    a.ab.swap(x, y);
                }
            }
            let pivot = a.ab[a.idx(j, j)];
            for r in 1..=km {
                let k = a.idx(j + r, j);
                a.ab[k] /= pivot;
            }
            for c in j + 1..=ju {
                let ujc = a.ab[a.idx(j, c)];
                if ujc == 0.0 {
                    continue;
                }
                for r in 1..=km {
                    let l = a.ab[a.idx(j + r, j)];
                    let k = a.idx(j + r, c);
                    a.ab[k] -= l * ujc;
                }
            }
        }
        Ok(BandedLu {
            lu: a,
            pivots,
            norm_one: self.norm_one(),
        })
    }
}

/// Factors `P A = L U` of a banded matrix. Immutable once built, so one
/// factorization can serve concurrent solves.
#[derive(Debug, Clone)]
pub struct BandedLu {
    lu: BandedMatrix,
    pivots: Vec<usize>,
    norm_one: f64,
}

/// Solution of a banded system with its relative residual.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSolution {
    pub solution: Vec<f64>,
    /// `||A x - rhs||_inf / ||rhs||_inf` (absolute when `rhs` is zero).
    pub relative_residual: f64,
}

impl BandedLu {
    pub fn order(&self) -> usize {
        self.lu.order
    }

    /// 1-norm of the original matrix.
    pub fn norm_one(&self) -> f64 {
        self.norm_one
    }

    /// Solve `A x = rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        self.lu.check_len(rhs.len())?;
        let a = &self.lu;
        let n = a.order;
        let (kl, ku) = (a.kl, a.ku);
        let mut x = rhs.to_vec();
        for j in 0..n {
            x.swap(j, self.pivots[j]);
            let km = kl.min(n - 1 - j);
            for r in 1..=km {
                x[j + r] -= a.ab[a.idx(j + r, j)] * x[j];
            }
        }
        for j in (0..n).rev() {
            x[j] /= a.ab[a.idx(j, j)];
            let xj = x[j];
            for i in j.saturating_sub(kl + ku)..j {
                x[i] -= a.ab[a.idx(i, j)] * xj;
            }
        }
        Ok(x)
    }

    /// Solve `A^T x = rhs`.
    pub fn solve_transpose(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        self.lu.check_len(rhs.len())?;
        let a = &self.lu;
        let n = a.order;
        let (kl, ku) = (a.kl, a.ku);
        let mut x = rhs.to_vec();
        for j in 0..n {
            let mut s = x[j];
            for i in j.saturating_sub(kl + ku)..j {
                s -= a.ab[a.idx(i, j)] * x[i];
            }
            x[j] = s / a.ab[a.idx(j, j)];
        }
        for j in (0..n).rev() {
            let km = kl.min(n - 1 - j);
            let mut s = x[j];
            for r in 1..=km {
                s -= a.ab[a.idx(j + r, j)] * x[j + r];
            }
            x[j] = s;
            x.swap(j, self.pivots[j]);
        }
        Ok(x)
    }

    /// Hager-Higham estimate of `||A^{-1}||_1` (a lower bound), at most five
    /// probes plus the alternating-sign extra vector.
    pub fn inverse_norm_one_estimate(&self) -> Result<f64> {
        let n = self.order();
        if n == 0 {
            return Ok(0.0);
        }
        let norm1 = |v: &[f64]| v.iter().map(|x| x.abs()).sum::<f64>();
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        let mut last_j = usize::MAX;
        for iter in 0..5 {
            let y = self.solve(&x)?;
            let new_est = norm1(&y);
            if iter > 0 && new_est <= est {
                break;
            }
            est = new_est;
            let sign: Vec<f64> = y.iter().map(|&v| if v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve_transpose(&sign)?;
            let (j, zmax) = z
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if iter > 0 && (zmax <= ztx || j == last_j) {
                break;
            }
            last_j = j;
            x.iter_mut().for_each(|v| *v = 0.0);
            x[j] = 1.0;
        }
        // extra probe guarding against the classic failure cases
        let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
        let alt: Vec<f64> = (0..n)
            .map(|i| {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                s * (1.0 + i as f64 / denom)
            })
            .collect();
        let alt_est = 2.0 * norm1(&self.solve(&alt)?) / (3.0 * n as f64);
        Ok(est.max(alt_est))
    }

    /// Estimate of `cond_1(A) = ||A||_1 ||A^{-1}||_1`.
    pub fn condition_estimate(&self) -> Result<f64> {
        Ok(self.norm_one * self.inverse_norm_one_estimate()?)
    }
}

/// Solve `A x = rhs` by banded LU with partial pivoting.
pub fn solve_banded(a: &BandedMatrix, rhs: &[f64]) -> Result<BandedSolution> {
    let lu = a.factorize()?;
    let solution = lu.solve(rhs)?;
    let ax = a.mul_vec(&solution)?;
    let inf = |v: &mut dyn Iterator<Item = f64>| v.fold(0.0, |m: f64, x| m.max(x.abs()));
    let res = inf(&mut ax.iter().zip(rhs).map(|(a, b)| a - b));
    let scale = inf(&mut rhs.iter().copied());
    Ok(BandedSolution {
        solution,
        relative_residual: if scale > 0.0 { res / scale } else { res },
    })
}

/// 1-norm condition estimate; singular matrices give infinity.
pub fn condition_estimate_1norm(a: &BandedMatrix) -> f64 {
    match a.factorize() {
        Ok(lu) => lu.condition_estimate().unwrap_or(f64::INFINITY),
        Err(_) => f64::INFINITY,
    }
}
