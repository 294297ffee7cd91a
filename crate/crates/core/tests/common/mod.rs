#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spline_product::{KnotVector, Spline};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Cox-de Boor recursion for the 0-based B-spline `j` of degree `p`, with the
/// last nonempty interval closed on the right.
pub fn cox_de_boor(knots: &[f64], p: usize, j: usize, x: f64) -> f64 {
    if p == 0 {
        let (a, b) = (knots[j], knots[j + 1]);
        let last = *knots.last().unwrap();
        if a < b && (a <= x && x < b || (x == last && b == last)) {
            return 1.0;
        }
        return 0.0;
    }
    let mut v = 0.0;
    let d1 = knots[j + p] - knots[j];
    if d1 > 0.0 {
        v += (x - knots[j]) / d1 * cox_de_boor(knots, p - 1, j, x);
    }
    let d2 = knots[j + p + 1] - knots[j + 1];
    if d2 > 0.0 {
        v += (knots[j + p + 1] - x) / d2 * cox_de_boor(knots, p - 1, j + 1, x);
    }
    v
}

pub fn oracle_eval(s: &Spline, x: f64) -> f64 {
    let u = s.knots().knots();
    s.coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| c * cox_de_boor(u, s.degree(), j, x))
        .sum()
}

pub fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| if j == n - 1 { b } else { a + (b - a) * j as f64 / (n - 1) as f64 })
        .collect()
}

/// Open knot vector on [0, 1] with random interior breakpoints (uniform or
/// not) and random multiplicities up to `max_mult`.
pub fn random_knots(rng: &mut StdRng, p: usize, max_mult: usize) -> KnotVector {
    let interior = rng.gen_range(0..5);
    let mut breaks: Vec<f64> = if rng.gen_bool(0.5) {
        (1..=interior).map(|k| k as f64 / (interior + 1) as f64).collect()
    } else {
        let mut v: Vec<f64> = (0..interior).map(|_| rng.gen_range(0.05..0.95)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup();
        v
    };
    breaks.insert(0, 0.0);
    breaks.push(1.0);
    let mults: Vec<usize> = (0..breaks.len() - 2).map(|_| rng.gen_range(1..=max_mult)).collect();
    KnotVector::from_breakpoints(&breaks, &mults, p).unwrap()
}

pub fn random_coeffs(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn random_spline(rng: &mut StdRng, p: usize, max_mult: usize) -> Spline {
    let kv = random_knots(rng, p, max_mult);
    let c = random_coeffs(rng, kv.dim());
    Spline::new(kv, c).unwrap()
}

/// Dense Gaussian elimination with partial pivoting.
pub fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &v)| {
        let mut r = r.clone();
        r.push(v);
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()).unwrap();
        m.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..=n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

pub fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}
