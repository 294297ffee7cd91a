//! Binomial coefficients.
//!
//! The exact path multiplies incrementally, `C(n, k) = prod_{j=1}^{k} (n-k+j)/j`
//! with `k <= n - k`, reducing by a gcd at each step so every intermediate is
//! itself a binomial coefficient. When the result does not fit 128 bits the
//! log-gamma form is used instead.

use crate::{Error, Result};

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `C(n, k)` in exact integer arithmetic, `None` on overflow or `k > n`.
pub fn binomial_exact(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return None;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k as u128 {
        let factor = (n - k) as u128 + j;
        // acc * factor / j where j / g divides factor because gcd(acc/g, j/g) = 1
        let g = gcd(acc, j);
        acc = (acc / g).checked_mul(factor / (j / g))?;
    }
    Some(acc)
}

/// `exp(lnG(n+1) - lnG(k+1) - lnG(n-k+1))`.
pub fn binomial_lgamma(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidInput("binomial requires k <= n"));
    }
    let ln = |x: u64| libm::lgamma(x as f64 + 1.0);
    Ok(libm::exp(ln(n) - ln(k) - ln(n - k)))
}

/// `C(n, k)` as a float: exact when it fits 128 bits, log-gamma otherwise.
pub fn binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidInput("binomial requires k <= n"));
    }
    match binomial_exact(n, k) {
        Some(v) => Ok(v as f64),
        None => binomial_lgamma(n, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial_exact(10, 0), Some(1));
        assert_eq!(binomial_exact(0, 0), Some(1));
        assert_eq!(binomial_exact(6, 3), Some(20));
        assert_eq!(binomial_exact(33, 3), Some(5456));
        assert_eq!(binomial(33, 30).unwrap(), 5456.0);
        assert_eq!(binomial_exact(3, 4), None);
        assert!(binomial(3, 4).is_err());
        assert!(binomial_lgamma(3, 4).is_err());
    }

    #[test]
    fn overflow_switches_to_lgamma() {
        assert!(binomial_exact(200, 100).is_none());
        let v = binomial(200, 100).unwrap();
        assert!(v.is_finite() && v > 9.0e58 && v < 9.1e58);
    }

    #[test]
    fn largest_central_fitting_u128() {
        // C(130, 65) ~ 9.5e37 fits, C(132, 66) ~ 3.8e38 does not
        assert!(binomial_exact(130, 65).is_some());
        assert!(binomial_exact(132, 66).is_none());
    }
}
