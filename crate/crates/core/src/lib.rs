//! Exact B-spline coefficients for the product of two univariate splines.
//!
//! The product `h = f * g` of a degree `p1` spline and a degree `p2` spline is
//! a spline of degree `p1 + p2` on a knot vector that keeps the lowest
//! smoothness of both factors at every breakpoint. Its coefficients are
//! computed directly with knot insertion (the Oslo algorithm, run matrix-free
//! through a de Boor style kernel), either summing over every index subset
//! ([`morken_product`]) or over the distinct knot selections only, weighted by
//! their repetition counts ([`improved_morken_product`]).
//!
//! An implicit baseline interpolating `f * g` at the Greville abscissae of the
//! product space is provided in [`collocation`], together with the banded LU
//! solver and the 1-norm condition estimator it needs.
//!
//! The crate is `no_std` (it needs `alloc`). Span indices (`find_span`,
//! `insertion_matrix`, `LocalWindow::extract`, ...) are 1-based, matching the
//! usual notation for knot vectors `t_1, ..., t_{n+p+1}`. Coefficient and
//! basis indices are 0-based like the vectors holding them.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod banded;
pub mod binomial;
pub mod collocation;
pub mod combinations;
mod error;
pub mod knots;
pub mod oslo;
pub mod product;
pub mod spline;

pub use banded::{condition_estimate_1norm, solve_banded, BandedLu, BandedMatrix, BandedSolution};
pub use binomial::{binomial, binomial_exact, binomial_lgamma};
pub use collocation::{collocation_matrix, collocation_product, CollocationSolver};
pub use combinations::{knot_combinations, CombinationSet};
pub use error::Error;
pub use knots::{product_knot_vector, BreakpointRun, KnotVector};
pub use oslo::{
    deboor_kernel, discrete_bspline_row, insertion_matrix, oslo_coefficients, InsertionMatrix,
    LocalWindow,
};
pub use product::{
    improved_morken_product, mean_distinct_terms, morken_product, NaiveOptions, ProductPlan,
    ProductResult, NAIVE_TERM_LIMIT,
};
pub use spline::{nonzero_basis, Spline};

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
