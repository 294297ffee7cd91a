//! Accuracy, conditioning and term-count experiments.
//!
//! Every family multiplies a degree-`p1` factor `f` by a degree-`p2` factor
//! `g` on `[0, 1]` with the direct formula and with Greville collocation, then
//! records both errors, the collocation condition estimate and the term
//! counts. Rows depend only on the seed and their parameter, so they may be
//! computed in any order.

use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use spline_product::{CollocationSolver, KnotVector, ProductPlan, Spline};

use crate::error::CliError;
use crate::rng::CoefficientRng;

/// Breakpoints of the fixed cubic factor and of the equal-degree families.
pub const BASE_BREAKPOINTS: usize = 5;
/// Uniform breakpoints of the knot vector shared by both Galerkin factors.
pub const GALERKIN_BREAKPOINTS: usize = 11;
/// Degree of the varying factor in [`Family::MeshRefineHighdeg`].
pub const HIGH_DEGREE: usize = 30;

pub const CSV_HEADER: [&str; 9] = [
    "family",
    "param",
    "e_direct",
    "e_colloc",
    "cond",
    "nu_bar",
    "naive_terms",
    "t_direct",
    "t_colloc",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    /// Middle cubic B-spline (5 breakpoints) times a random polynomial of degree 1..=50.
    SplinePoly,
    /// Random cubic spline (5 breakpoints) times a random polynomial of degree 1..=50.
    SplinePolyGeneral,
    /// B-spline products at degree 3..=50 on 11 breakpoints kept C^2.
    GalerkinP,
    /// B-spline products at degree 3..=50 on 11 breakpoints with maximal smoothness.
    GalerkinK,
    /// Two random splines of equal degree 1..=50 on the same 5 breakpoints.
    SplineSpline,
    /// Random cubic (5 breakpoints) times a random cubic on 2^n + 3 breakpoints, n = 1..=10.
    MeshRefine,
    /// Random cubic (5 breakpoints) times a random degree-30 spline on 2^n + 3 breakpoints.
    MeshRefineHighdeg,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::SplinePoly,
        Family::SplinePolyGeneral,
        Family::GalerkinP,
        Family::GalerkinK,
        Family::SplineSpline,
        Family::MeshRefine,
        Family::MeshRefineHighdeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SplinePoly => "spline_poly",
            Family::SplinePolyGeneral => "spline_poly_general",
            Family::GalerkinP => "galerkin_p",
            Family::GalerkinK => "galerkin_k",
            Family::SplineSpline => "spline_spline",
            Family::MeshRefine => "mesh_refine",
            Family::MeshRefineHighdeg => "mesh_refine_highdeg",
        }
    }

    /// Degrees or mesh levels the family is defined for.
    pub fn param_range(self) -> RangeInclusive<u32> {
        match self {
            Family::SplinePoly | Family::SplinePolyGeneral | Family::SplineSpline => 1..=50,
            Family::GalerkinP | Family::GalerkinK => 3..=50,
            Family::MeshRefine | Family::MeshRefineHighdeg => 1..=10,
        }
    }

    fn is_galerkin(self) -> bool {
        matches!(self, Family::GalerkinP | Family::GalerkinK)
    }

    /// Knot vectors of the two factors at parameter `param`.
    pub fn factor_knots(self, param: u32) -> Result<(KnotVector, KnotVector), CliError> {
        let range = self.param_range();
        if !range.contains(&param) {
            return Err(CliError::ParameterRange {
                value: param,
                min: *range.start(),
                max: *range.end(),
            });
        }
        let p = param as usize;
        let cubic = || KnotVector::uniform(0.0, 1.0, BASE_BREAKPOINTS, 1, 3);
        let poly = |p| KnotVector::uniform(0.0, 1.0, 2, 1, p);
        let mesh = |p| KnotVector::uniform(0.0, 1.0, (1 << param) + 3, 1, p);
        let pair = match self {
            Family::SplinePoly | Family::SplinePolyGeneral => (cubic()?, poly(p)?),
            Family::GalerkinP => {
                let kv = KnotVector::uniform(0.0, 1.0, GALERKIN_BREAKPOINTS, p - 2, p)?;
                (kv.clone(), kv)
            }
            Family::GalerkinK => {
                let kv = KnotVector::uniform(0.0, 1.0, GALERKIN_BREAKPOINTS, 1, p)?;
                (kv.clone(), kv)
            }
            Family::SplineSpline => {
                let kv = KnotVector::uniform(0.0, 1.0, BASE_BREAKPOINTS, 1, p)?;
                (kv.clone(), kv)
            }
            Family::MeshRefine => (cubic()?, mesh(3)?),
            Family::MeshRefineHighdeg => (cubic()?, mesh(HIGH_DEGREE)?),
        };
        Ok(pair)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub seed: u64,
    /// Number of evaluation points, both endpoints included.
    pub grid_points: usize,
    pub params: RangeInclusive<u32>,
    /// Record wall-clock times; without it the time columns are zero so the
    /// output is reproducible.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(family: Family, seed: u64) -> Self {
        Self {
            family,
            seed,
            grid_points: 201,
            params: family.param_range(),
            timing: false,
        }
    }

    pub fn with_params(mut self, params: RangeInclusive<u32>) -> Self {
        self.params = params;
        self
    }

    pub fn with_grid_points(mut self, n: usize) -> Self {
        self.grid_points = n;
        self
    }

    pub fn with_timing(mut self, timing: bool) -> Self {
        self.timing = timing;
        self
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.grid_points < 2 {
            return Err(CliError::GridPoints(self.grid_points));
        }
        let range = self.family.param_range();
        for v in [*self.params.start(), *self.params.end()] {
            if !range.contains(&v) {
                return Err(CliError::ParameterRange {
                    value: v,
                    min: *range.start(),
                    max: *range.end(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub family: Family,
    pub param: u32,
    pub e_direct: f64,
    pub e_colloc: f64,
    pub cond: f64,
    pub nu_bar: f64,
    pub naive_terms: u128,
    pub t_direct: f64,
    pub t_colloc: f64,
    /// Some error was measured in absolute terms because the reference
    /// product vanished on the grid.
    pub absolute_error: bool,
}

/// Discrete max-norm error of a computed product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorMeasure {
    pub value: f64,
    /// The reference `f * g` is zero on the whole grid, so `value` is the
    /// absolute error.
    pub absolute: bool,
}

/// `n` uniform points on `[a, b]`, both endpoints included.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| if j + 1 == n { b } else { a + (b - a) * j as f64 / (n - 1) as f64 })
        .collect()
}

/// `max |computed(x) - f(x) g(x)| / max |f(x) g(x)|` over `n` uniform points
/// of the common span.
pub fn relative_linf_error(computed: &Spline, f: &Spline, g: &Spline, n: usize) -> Result<ErrorMeasure, CliError> {
    if n < 2 {
        return Err(CliError::GridPoints(n));
    }
    let (a, b) = f.domain();
    let (a2, b2) = g.domain();
    if (a, b) != (a2, b2) || computed.domain() != (a, b) {
        return Err(spline_product::Error::IncompatibleDomains {
            lo1: a,
            hi1: b,
            lo2: a2,
            hi2: b2,
        }
        .into());
    }
    let (mut diff, mut reference) = (0.0f64, 0.0f64);
    for x in uniform_grid(a, b, n) {
        let exact = f.evaluate(x)? * g.evaluate(x)?;
        diff = diff.max((computed.evaluate(x)? - exact).abs());
        reference = reference.max(exact.abs());
    }
    Ok(if reference > 0.0 {
        ErrorMeasure {
            value: diff / reference,
            absolute: false,
        }
    } else {
        ErrorMeasure {
            value: diff,
            absolute: true,
        }
    })
}

/// Indices of the B-splines whose open supports meet that of B-spline `i`.
pub fn overlapping_basis(kv: &KnotVector, i: usize) -> Vec<usize> {
    let (u, p) = (kv.knots(), kv.degree());
    (0..kv.dim()).filter(|&j| u[i] < u[j + p + 1] && u[j] < u[i + p + 1]).collect()
}

/// All rows of the experiment, sorted by parameter.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, CliError> {
    cfg.validate()?;
    let params: Vec<u32> = cfg.params.clone().collect();
    params.into_par_iter().map(|param| run_row(cfg, param)).collect()
}

/// One row of the experiment.
pub fn run_row(cfg: &ExperimentConfig, param: u32) -> Result<ExperimentRow, CliError> {
    let family = cfg.family;
    let (k1, k2) = family.factor_knots(param)?;
    if family.is_galerkin() {
        return galerkin_row(cfg, param, k1);
    }
    let mut rng = CoefficientRng::for_row(cfg.seed, param);
    let f = match family {
        Family::SplinePoly => Spline::basis(k1.clone(), (k1.dim() - 1) / 2)?,
        _ => Spline::new(k1.clone(), rng.coefficients(k1.dim()))?,
    };
    let g = Spline::new(k2.clone(), rng.coefficients(k2.dim()))?;
    let m = measure_pair(cfg, &f, &g, None)?;
    Ok(ExperimentRow {
        family,
        param,
        e_direct: m.e_direct.value,
        e_colloc: m.e_colloc.value,
        cond: m.cond,
        nu_bar: m.nu_bar,
        naive_terms: m.naive_terms,
        t_direct: m.t_direct,
        t_colloc: m.t_colloc,
        absolute_error: m.e_direct.absolute || m.e_colloc.absolute,
    })
}

struct PairMeasure {
    e_direct: ErrorMeasure,
    e_colloc: ErrorMeasure,
    cond: f64,
    nu_bar: f64,
    naive_terms: u128,
    t_direct: f64,
    t_colloc: f64,
}

fn elapsed(cfg: &ExperimentConfig, start: Instant) -> f64 {
    if cfg.timing {
        start.elapsed().as_secs_f64()
    } else {
        0.0
    }
}

fn measure_pair(
    cfg: &ExperimentConfig,
    f: &Spline,
    g: &Spline,
    shared: Option<&CollocationSolver>,
) -> Result<PairMeasure, CliError> {
    let plan = ProductPlan::new(f, g)?;
    let start = Instant::now();
    let direct = plan.improved()?;
    let t_direct = elapsed(cfg, start);

    let start = Instant::now();
    let owned;
    let solver = match shared {
        Some(s) => s,
        None => {
            owned = CollocationSolver::for_product(f, g)?;
            &owned
        }
    };
    let colloc = solver.product(f, g)?;
    let t_colloc = elapsed(cfg, start);

    Ok(PairMeasure {
        e_direct: relative_linf_error(&direct.product, f, g, cfg.grid_points)?,
        e_colloc: relative_linf_error(&colloc, f, g, cfg.grid_points)?,
        cond: solver.condition_estimate()?,
        nu_bar: direct.mean_distinct,
        naive_terms: direct.naive_term_count,
        t_direct,
        t_colloc,
    })
}

/// Mean over all `j` overlapping the middle B-spline `i` of the products
/// `B_i * B_j`. Every product lives on the same space, so one factorized
/// collocation matrix serves all of them.
fn galerkin_row(cfg: &ExperimentConfig, param: u32, kv: KnotVector) -> Result<ExperimentRow, CliError> {
    let i = (kv.dim() - 1) / 2;
    let f = Spline::basis(kv.clone(), i)?;
    let start = Instant::now();
    let solver = CollocationSolver::for_product(&f, &f)?;
    let t_setup = elapsed(cfg, start);
    let js = overlapping_basis(&kv, i);
    let measures = js
        .par_iter()
        .map(|&j| measure_pair(cfg, &f, &Spline::basis(kv.clone(), j)?, Some(&solver)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mean = |get: fn(&PairMeasure) -> f64| measures.iter().map(get).sum::<f64>() / measures.len() as f64;
    Ok(ExperimentRow {
        family: cfg.family,
        param,
        e_direct: mean(|m| m.e_direct.value),
        e_colloc: mean(|m| m.e_colloc.value),
        cond: solver.condition_estimate()?,
        nu_bar: mean(|m| m.nu_bar),
        naive_terms: measures[0].naive_terms,
        t_direct: measures.iter().map(|m| m.t_direct).sum(),
        t_colloc: t_setup + measures.iter().map(|m| m.t_colloc).sum::<f64>(),
        absolute_error: measures.iter().any(|m| m.e_direct.absolute || m.e_colloc.absolute),
    })
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write rows as CSV with 17 significant digits per real.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.family.name().to_string(),
            r.param.to_string(),
            real(r.e_direct),
            real(r.e_colloc),
            real(r.cond),
            real(r.nu_bar),
            r.naive_terms.to_string(),
            real(r.t_direct),
            real(r.t_colloc),
        ])?;
    }
    w.flush()?;
    Ok(())
}
