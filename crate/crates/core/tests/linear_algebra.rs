mod common;

use common::*;
use rand::rngs::StdRng;
use rand::Rng;
use spline_product::{
    collocation_matrix, collocation_product, condition_estimate_1norm, solve_banded, BandedMatrix, CollocationSolver,
    KnotVector, Spline,
};

fn random_banded(r: &mut StdRng, m: usize, kl: usize, ku: usize, dominant: bool) -> BandedMatrix {
    let mut a = BandedMatrix::zeros(m, kl, ku);
    for i in 0..m {
        for j in i.saturating_sub(kl)..(i + ku + 1).min(m) {
            a.set(i, j, r.gen_range(-1.0..1.0));
        }
        if dominant {
            a.set(i, i, (kl + ku + 1) as f64 * if r.gen_bool(0.5) { 1.0 } else { -1.0 });
        }
    }
    a
}

fn dense_norm_one(a: &[Vec<f64>]) -> f64 {
    (0..a.len()).map(|j| a.iter().map(|row| row[j].abs()).sum::<f64>()).fold(0.0, f64::max)
}

fn exact_cond(a: &BandedMatrix) -> f64 {
    let d = a.to_dense();
    let m = d.len();
    let cols: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let e: Vec<f64> = (0..m).map(|i| if i == j { 1.0 } else { 0.0 }).collect();
            dense_solve(&d, &e)
        })
        .collect();
    let inv_norm = cols.iter().map(|c| c.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    dense_norm_one(&d) * inv_norm
}

#[test]
fn banded_solve_matches_dense_elimination() {
    let mut r = rng(51);
    for _ in 0..20 {
        let a = random_banded(&mut r, 50, 3, 3, true);
        let rhs = random_coeffs(&mut r, 50);
        let x = solve_banded(&a, &rhs).unwrap();
        let oracle = dense_solve(&a.to_dense(), &rhs);
        let scale = max_abs(oracle.iter().copied());
        assert!(max_abs(x.solution.iter().zip(&oracle).map(|(a, b)| a - b)) <= 1e-12 * scale);
        assert!(x.relative_residual <= 1e-14);
    }
}

#[test]
fn pivoting_handles_non_dominant_bands() {
    let mut r = rng(52);
    for _ in 0..20 {
        let a = random_banded(&mut r, 30, 2, 4, false);
        let rhs = random_coeffs(&mut r, 30);
        let lu = a.factorize().unwrap();
        let oracle = dense_solve(&a.to_dense(), &rhs);
        let x = lu.solve(&rhs).unwrap();
        let scale = max_abs(oracle.iter().copied());
        let cond = exact_cond(&a);
        assert!(max_abs(x.iter().zip(&oracle).map(|(a, b)| a - b)) <= 1e-15 * cond * scale * 30.0);

        let d = a.to_dense();
        let t: Vec<Vec<f64>> = (0..30).map(|i| (0..30).map(|j| d[j][i]).collect()).collect();
        let oracle_t = dense_solve(&t, &rhs);
        let y = lu.solve_transpose(&rhs).unwrap();
        let scale = max_abs(oracle_t.iter().copied());
        assert!(max_abs(y.iter().zip(&oracle_t).map(|(a, b)| a - b)) <= 1e-15 * cond * scale * 30.0);
    }
}

#[test]
fn condition_estimate_within_factor_three() {
    let mut r = rng(53);
    for trial in 0..60 {
        let m = r.gen_range(2..=30);
        let kl = r.gen_range(0..=3.min(m - 1));
        let ku = r.gen_range(0..=3.min(m - 1));
        let a = random_banded(&mut r, m, kl, ku, trial % 2 == 0);
        let exact = exact_cond(&a);
        let est = condition_estimate_1norm(&a);
        assert!(est <= exact * (1.0 + 1e-8), "estimate {est} above exact {exact}");
        assert!(est * 3.0 >= exact, "m={m}: estimate {est} vs exact {exact}");
    }
}

#[test]
fn condition_estimate_on_collocation_matrices() {
    for p in 1..=8 {
        let kv = KnotVector::uniform(0.0, 1.0, 5, 1, p).unwrap();
        let c = collocation_matrix(&kv, &kv.greville_abscissae().unwrap()).unwrap();
        let (exact, est) = (exact_cond(&c), condition_estimate_1norm(&c));
        assert!(est <= exact * (1.0 + 1e-8) && est * 3.0 >= exact, "p={p}: {est} vs {exact}");
    }
}

#[test]
fn collocation_entries_match_cox_de_boor() {
    let mut r = rng(54);
    for p in 1..=6 {
        let kv = random_knots(&mut r, p, p.saturating_sub(1).max(1));
        let x = kv.greville_abscissae().unwrap();
        let c = collocation_matrix(&kv, &x).unwrap();
        for (i, &xi) in x.iter().enumerate() {
            for j in 0..kv.dim() {
                let o = cox_de_boor(kv.knots(), p, j, xi);
                let v = if i.abs_diff(j) <= p { c.get(i, j) } else { 0.0 };
                assert!((v - o).abs() <= 1e-14);
            }
            assert!(c.get(i, i) > 0.0);
        }
    }
}

#[test]
fn cubic_collocation_product_is_accurate() {
    let mut r = rng(55);
    let kv = KnotVector::uniform(0.0, 1.0, 5, 1, 3).unwrap();
    for _ in 0..10 {
        let f = Spline::new(kv.clone(), random_coeffs(&mut r, kv.dim())).unwrap();
        let g = Spline::new(kv.clone(), random_coeffs(&mut r, kv.dim())).unwrap();
        let h = collocation_product(&f, &g).unwrap();
        let xs = grid(0.0, 1.0, 201);
        let exact: Vec<f64> = xs.iter().map(|&x| oracle_eval(&f, x) * oracle_eval(&g, x)).collect();
        let err = max_abs(xs.iter().zip(&exact).map(|(&x, e)| h.evaluate(x).unwrap() - e));
        assert!(err <= 1e-13 * max_abs(exact.iter().copied()));
    }
}

#[test]
fn solver_is_reused_across_right_hand_sides() {
    let mut r = rng(56);
    let kv = KnotVector::uniform(0.0, 1.0, 7, 2, 3).unwrap();
    let f = Spline::new(kv.clone(), random_coeffs(&mut r, kv.dim())).unwrap();
    let solver = CollocationSolver::for_product(&f, &f).unwrap();
    for _ in 0..5 {
        let g = Spline::new(kv.clone(), random_coeffs(&mut r, kv.dim())).unwrap();
        let h = solver.product(&f, &g).unwrap();
        for x in grid(0.0, 1.0, 51) {
            let e = oracle_eval(&f, x) * oracle_eval(&g, x);
            assert!((h.evaluate(x).unwrap() - e).abs() <= 1e-13);
        }
    }
}
