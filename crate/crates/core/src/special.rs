//! Log-gamma and log-binomial evaluation in floating point.
//!
//! These back the "log-space" route for counts too large to materialize.
//! The exact route lives in [`crate::dimension`]; tests check one against
//! the other.

use crate::Scalar;

/// Arguments below this are shifted up by the recurrence before the
/// asymptotic series is applied.
const SERIES_THRESHOLD: f64 = 15.0;

/// Largest `min(k, n - k)` handled by direct summation in [`ln_binomial`].
const DIRECT_SUM_LIMIT: u32 = 16;

/// Remainder of Stirling's series for `ln Γ(z)` (equivalently `ln z!`),
/// i.e. everything after `(z - 1/2) ln z - z + ln(2π)/2`.
fn stirling_tail<F: Scalar>(z: F) -> F {
    let inv = z.recip();
    let inv2 = inv * inv;
    let c = |num: f64, den: f64| F::of(num / den);
    inv * (c(1.0, 12.0)
        + inv2
            * (c(-1.0, 360.0)
                + inv2
                    * (c(1.0, 1260.0)
                        + inv2
                            * (c(-1.0, 1680.0)
                                + inv2 * (c(1.0, 1188.0) + inv2 * c(-691.0, 360_360.0))))))
}

/// Natural log of the gamma function for `x > 0`. Returns NaN otherwise.
pub fn ln_gamma<F: Scalar>(x: F) -> F {
    if !(x > F::zero()) {
        return F::nan();
    }
    if x.is_infinite() {
        return x;
    }
    let threshold = F::of(SERIES_THRESHOLD);
    let mut z = x;
    let mut shift = F::one();
    while z < threshold {
        shift = shift * z;
        z = z + F::one();
    }
    let half = F::of(0.5);
    let ln_sqrt_2pi = half * (F::TAU()).ln();
    (z - half) * z.ln() - z + ln_sqrt_2pi + stirling_tail(z) - shift.ln()
}

/// `ln n!` for real `n ≥ 0`.
pub fn ln_factorial<F: Scalar>(n: F) -> F {
    ln_gamma(n + F::one())
}

/// `ln C(n, k)` for integral `0 ≤ k ≤ n`, both passed as floats.
///
/// Uses the difference of Stirling expansions arranged so that no large
/// terms cancel: `k ln(n/k) - (n-k) ln(1 - k/n) + ½ ln(n / 2πk(n-k))` plus
/// the series remainders. Small `min(k, n-k)` is summed directly. Returns
/// NaN for arguments outside the domain.
pub fn ln_binomial<F: Scalar>(n: F, k: F) -> F {
    if !(k >= F::zero()) || !(k <= n) {
        return F::nan();
    }
    let k = k.min(n - k);
    if k == F::zero() {
        return F::zero();
    }
    if k <= F::of(DIRECT_SUM_LIMIT) {
        let steps = k.round().to_u32().unwrap_or(0);
        let base = n - k;
        return (1..=steps)
            .map(|i| {
                let i = F::of(i);
                ((base + i) / i).ln()
            })
            .fold(F::zero(), |acc, term| acc + term);
    }
    let j = n - k;
    let half = F::of(0.5);
    k * (n / k).ln() - j * (-(k / n)).ln_1p() + half * (n / (F::TAU() * k * j)).ln()
        + stirling_tail(n)
        - stirling_tail(k)
        - stirling_tail(j)
}

/// `log2 C(n, k)`; see [`ln_binomial`].
pub fn log2_binomial<F: Scalar>(n: F, k: F) -> F {
    ln_binomial(n, k) / F::LN_2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ln_gamma_small_integers_match_factorials() {
        let mut fact = 1.0f64;
        for n in 1..=25u32 {
            // Γ(n) = (n-1)!
            let lg = ln_gamma(n as f64);
            assert!((lg - fact.ln()).abs() <= 1e-13 * fact.ln().max(1.0), "n={n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn ln_gamma_half_integer() {
        // Γ(1/2) = √π
        let expected = std::f64::consts::PI.sqrt().ln();
        assert!((ln_gamma(0.5f64) - expected).abs() < 1e-14);
        // Γ(3/2) = √π / 2
        assert!((ln_gamma(1.5f64) - (expected - 2f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0f64).is_nan());
        assert!(ln_gamma(-3.0f64).is_nan());
    }

    #[test]
    fn ln_binomial_matches_pascal() {
        // Pascal's triangle up to n=60 fits exactly in f64 only up to ~2^53,
        // so compare logs.
        let mut row = vec![1.0f64];
        for n in 1..=60usize {
            let mut next = vec![1.0f64; n + 1];
            for k in 1..n {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for (k, &c) in row.iter().enumerate() {
                let got = ln_binomial(n as f64, k as f64);
                assert!((got - c.ln()).abs() <= 1e-12 * c.ln().max(1.0), "C({n},{k})");
            }
        }
    }

    #[test]
    fn ln_binomial_stays_accurate_for_huge_n() {
        // C(2^100, 1) = 2^100 and C(2^100, 20) ≈ 2^2000 / 20! without cancellation.
        let n = 2f64.powi(100);
        assert!(rel(log2_binomial(n, 1.0), 100.0) < 1e-15);
        let expected = 2000.0 - ln_factorial(20.0f64) / std::f64::consts::LN_2;
        assert!(rel(log2_binomial(n, 20.0), expected) < 1e-13);
    }

    #[test]
    fn ln_binomial_domain() {
        assert!(ln_binomial(3.0f64, 4.0).is_nan());
        assert_eq!(ln_binomial(7.0f64, 0.0), 0.0);
        assert_eq!(ln_binomial(7.0f64, 7.0), 0.0);
    }

    #[test]
    fn single_precision_is_usable() {
        let lg = ln_gamma(10.0f32);
        assert!((lg - 362_880f32.ln()).abs() < 1e-5);
        assert!((log2_binomial(10.0f32, 5.0) - 252f32.log2()).abs() < 1e-5);
    }
}
