//! Spline products by interpolation at the Greville abscissae of the product
//! space. Accuracy is limited by the conditioning of the collocation matrix,
//! which grows quickly with the degree.

use alloc::vec::Vec;

use crate::banded::{BandedLu, BandedMatrix};
use crate::knots::{product_knot_vector, KnotVector};
use crate::spline::{nonzero_basis, Spline};
use crate::{Error, Result};

/// Collocation matrix `C_{ij} = B_j(x_i)` for `m` strictly increasing
/// abscissae on an open knot vector of dimension `m`.
///
/// Every diagonal entry must be positive (the Schoenberg-Whitney nesting
/// conditions); a violation is reported instead of producing a singular
/// matrix.
pub fn collocation_matrix(kv: &KnotVector, abscissae: &[f64]) -> Result<BandedMatrix> {
    let (m, p) = (kv.dim(), kv.degree());
    if abscissae.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: abscissae.len(),
        });
    }
    if abscissae.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput("abscissae must be strictly increasing"));
    }
    let mut c = BandedMatrix::zeros(m, p, p);
    for (i, &x) in abscissae.iter().enumerate() {
        let (k, values) = nonzero_basis(kv, x)?;
        for (r, v) in values.into_iter().enumerate() {
            let j = k - p + r;
            if v != 0.0 {
                if j.abs_diff(i) > p {
                    return Err(Error::SingularCollocation { row: i });
                }
                c.set(i, j, v);
            }
        }
        if !(c.get(i, i) > 0.0) {
            return Err(Error::SingularCollocation { row: i });
        }
    }
    Ok(c)
}

/// Factorized Greville collocation system for one product space, reusable
/// for any number of right-hand sides.
#[derive(Debug, Clone)]
pub struct CollocationSolver {
    knots: KnotVector,
    abscissae: Vec<f64>,
    matrix: BandedMatrix,
    lu: BandedLu,
}

impl CollocationSolver {
    pub fn new(knots: KnotVector) -> Result<Self> {
        if !knots.is_open() {
            return Err(Error::NotOpen(knots.degree()));
        }
        let abscissae = knots.greville_abscissae()?;
        let matrix = collocation_matrix(&knots, &abscissae)?;
        let lu = matrix.factorize()?;
        Ok(Self {
            knots,
            abscissae,
            matrix,
            lu,
        })
    }

    /// Solver for the product space of `f` and `g`.
    pub fn for_product(f: &Spline, g: &Spline) -> Result<Self> {
        for s in [f, g] {
            if s.degree() == 0 {
                return Err(Error::UnsupportedDegree(0));
            }
        }
        Self::new(product_knot_vector(f.make_open().knots(), g.make_open().knots())?)
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn matrix(&self) -> &BandedMatrix {
        &self.matrix
    }

    pub fn condition_estimate(&self) -> Result<f64> {
        self.lu.condition_estimate()
    }

    /// Spline on this space interpolating `values` at the abscissae.
    pub fn interpolate(&self, values: &[f64]) -> Result<Spline> {
        let b = self.lu.solve(values)?;
        Spline::new(self.knots.clone(), b)
    }

    /// Interpolant of `f * g`, which equals the product when the solve is exact.
    pub fn product(&self, f: &Spline, g: &Spline) -> Result<Spline> {
        let h = self
            .abscissae
            .iter()
            .map(|&x| Ok(f.evaluate(x)? * g.evaluate(x)?))
            .collect::<Result<Vec<f64>>>()?;
        self.interpolate(&h)
    }
}

/// Product of `f` and `g` by Greville collocation.
pub fn collocation_product(f: &Spline, g: &Spline) -> Result<Spline> {
    CollocationSolver::for_product(f, g)?.product(f, g)
}
