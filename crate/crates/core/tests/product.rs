mod common;

use common::*;
use rand::Rng;
use spline_product::{
    binomial_exact, improved_morken_product, morken_product, Error, KnotVector, NaiveOptions, ProductPlan, Spline,
};

fn rel_max_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = max_abs(b.iter().copied()).max(f64::MIN_POSITIVE);
    max_abs(a.iter().zip(b).map(|(x, y)| x - y)) / scale
}

fn polynomial(coeffs: Vec<f64>) -> Spline {
    let p = coeffs.len() - 1;
    let mut knots = vec![0.0; p + 1];
    knots.extend(vec![1.0; p + 1]);
    Spline::new(KnotVector::new(knots, p).unwrap(), coeffs).unwrap()
}

#[test]
fn improved_equals_naive_for_small_degrees() {
    let mut r = rng(41);
    for _ in 0..150 {
        let (p1, p2) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let f = random_spline(&mut r, p1, p1);
        let g = random_spline(&mut r, p2, p2);
        let a = improved_morken_product(&f, &g).unwrap();
        let b = morken_product(&f, &g, NaiveOptions::default()).unwrap();
        assert_eq!(a.product.knots(), b.product.knots());
        let d = rel_max_diff(a.product.coefficients(), b.product.coefficients());
        assert!(d <= 1e-13, "p1={p1} p2={p2}: {d:e}");
        assert_eq!(a.naive_term_count, binomial_exact((p1 + p2) as u64, p1 as u64).unwrap());
    }
}

#[test]
fn product_evaluates_to_pointwise_product() {
    let mut r = rng(42);
    for _ in 0..80 {
        let (p1, p2) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let f = random_spline(&mut r, p1, p1);
        let g = random_spline(&mut r, p2, p2);
        let h = improved_morken_product(&f, &g).unwrap().product;
        let xs = grid(0.0, 1.0, 201);
        let exact: Vec<f64> = xs.iter().map(|&x| oracle_eval(&f, x) * oracle_eval(&g, x)).collect();
        let got: Vec<f64> = xs.iter().map(|&x| h.evaluate(x).unwrap()).collect();
        let d = rel_max_diff(&got, &exact);
        assert!(d <= 1e-13, "p1={p1} p2={p2}: {d:e}");
    }
}

#[test]
fn product_is_symmetric() {
    let mut r = rng(43);
    for _ in 0..60 {
        let (p1, p2) = (r.gen_range(1..=7), r.gen_range(1..=7));
        let f = random_spline(&mut r, p1, p1);
        let g = random_spline(&mut r, p2, p2);
        let fg = improved_morken_product(&f, &g).unwrap().product;
        let gf = improved_morken_product(&g, &f).unwrap().product;
        assert_eq!(fg.knots(), gf.knots());
        assert!(rel_max_diff(fg.coefficients(), gf.coefficients()) <= 1e-13);
    }
}

#[test]
fn unit_factor_elevates_degree() {
    let mut r = rng(44);
    for p2 in 1..=4 {
        let f = random_spline(&mut r, 3, 2);
        let one = polynomial(vec![1.0; p2 + 1]);
        let h = improved_morken_product(&f, &one).unwrap().product;
        assert_eq!(h.degree(), 3 + p2);
        for x in grid(0.0, 1.0, 201) {
            assert!((h.evaluate(x).unwrap() - oracle_eval(&f, x)).abs() <= 1e-14);
        }
    }
}

#[test]
fn identity_squared() {
    let x = polynomial(vec![0.0, 1.0]);
    let h = improved_morken_product(&x, &x).unwrap().product;
    assert_eq!(h.knots().knots(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
    assert_eq!(h.coefficients(), &[0.0, 0.0, 1.0]);
}

#[test]
fn distinct_counts_never_exceed_naive() {
    let mut r = rng(45);
    for _ in 0..60 {
        let (p1, p2) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let f = random_spline(&mut r, p1, p1);
        let g = random_spline(&mut r, p2, p2);
        let res = improved_morken_product(&f, &g).unwrap();
        let t = res.product.knots().knots();
        let p = p1 + p2;
        for (i, &count) in res.distinct_term_counts.iter().enumerate() {
            let window = &t[i + 1..=i + p];
            let repeated = window.windows(2).any(|w| w[0] == w[1]);
            let naive = res.naive_term_count as usize;
            if repeated {
                assert!(count < naive, "window {window:?}");
            } else {
                assert_eq!(count, naive);
            }
        }
    }
}

#[test]
fn cubic_times_cubic_uses_few_terms() {
    let mut r = rng(46);
    let kv = KnotVector::uniform(0.0, 1.0, 5, 1, 3).unwrap();
    let f = Spline::new(kv.clone(), random_coeffs(&mut r, kv.dim())).unwrap();
    let g = Spline::new(kv.clone(), random_coeffs(&mut r, kv.dim())).unwrap();
    let res = improved_morken_product(&f, &g).unwrap();
    assert_eq!(res.naive_term_count, 20);
    assert!(res.mean_distinct < 20.0);
    // repeated product knots cut the count well below 20
    assert!(res.mean_distinct < 6.0, "{}", res.mean_distinct);
}

#[test]
fn plan_coefficients_match_batch() {
    let mut r = rng(47);
    let f = random_spline(&mut r, 4, 2);
    let g = random_spline(&mut r, 2, 1);
    let plan = ProductPlan::new(&f, &g).unwrap();
    let batch = plan.improved().unwrap();
    for i in 0..plan.dim() {
        let (b, c) = plan.improved_coefficient(i).unwrap();
        assert_eq!(b, batch.product.coefficients()[i]);
        assert_eq!(c, batch.distinct_term_counts[i]);
        let n = plan.naive_coefficient(i).unwrap();
        assert!((n - b).abs() <= 1e-14);
    }
    assert!(plan.improved_coefficient(plan.dim()).is_err());
}

#[test]
fn guard_refuses_large_naive_sums() {
    let f = polynomial(vec![1.0; 16]);
    let g = polynomial(vec![1.0; 16]);
    // C(30, 15) = 155117520
    assert!(matches!(
        morken_product(&f, &g, NaiveOptions::default()),
        Err(Error::NaiveInfeasible { .. })
    ));
    let f = polynomial(vec![1.0; 14]);
    let g = polynomial(vec![1.0; 14]);
    // C(26, 13) = 10400600 is allowed
    assert!(ProductPlan::new(&f, &g).unwrap().naive_term_count() < 100_000_000);
}

#[test]
fn mismatched_domains_are_rejected() {
    let f = polynomial(vec![1.0, 2.0]);
    let kv = KnotVector::new(vec![0.0, 0.0, 2.0, 2.0], 1).unwrap();
    let g = Spline::new(kv, vec![1.0, 1.0]).unwrap();
    assert!(matches!(improved_morken_product(&f, &g), Err(Error::IncompatibleDomains { .. })));
}
