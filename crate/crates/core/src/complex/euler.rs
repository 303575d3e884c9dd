use num_complex::Complex64;

use super::majorant::Majorant;
use super::series::series_rounding;
use super::{abscissa, ComplexSum, EvalResult};
use crate::arith::{primes_up_to, psi_table, Sieve, TwistParameter};
use crate::error::{Error, Result};
use crate::sources::CoefficientSource;

/// Below this modulus a local polynomial value counts as a pole hit.
pub const POLE_HIT_THRESHOLD: f64 = 1e-12;

struct LocalProduct {
    value: Complex64,
    /// Relative floating-point error allowance.
    rel_rounding: f64,
    factors: usize,
}

/// `prod_{p in primes} 1 / P_p(alpha^p p^-s)`.
fn local_product(
    src: &CoefficientSource,
    t: &TwistParameter,
    s: Complex64,
    primes: &[u64],
) -> Result<LocalProduct> {
    let mut value = Complex64::new(1.0, 0.0);
    let mut rel_rounding = 0.0;
    for &p in primes {
        let factor = src.local_factor(p)?;
        let lp = (p as f64).ln();
        let x = t.power(p) * (-s * lp).exp();
        let v = factor.eval(x);
        if v.norm() < POLE_HIT_THRESHOLD {
            return Err(Error::PoleHit {
                prime: p,
                modulus: v.norm(),
            });
        }
        let spread: f64 = factor
            .coefficients
            .iter()
            .enumerate()
            .map(|(j, a)| a.norm() * x.norm().powi(j as i32))
            .sum();
        let input_error = 6.0 + s.norm() * lp + 2.0 * (p as f64).log2();
        rel_rounding += f64::EPSILON * spread / v.norm() * input_error;
        value /= v;
    }
    Ok(LocalProduct {
        value,
        rel_rounding,
        factors: primes.len(),
    })
}

/// Euler product over `p <= x_bound`, with the omitted tail bounded by
/// `|prod_{p > X}(...) - 1| <= exp(sum_{p > X} d u_p / (1 - u_p)) - 1`.
pub fn eval_euler(
    src: &CoefficientSource,
    t: &TwistParameter,
    s: Complex64,
    x_bound: u64,
) -> Result<EvalResult> {
    let sigma_a = abscissa(src, t)?;
    if s.re <= sigma_a {
        return Err(Error::DivergentRegion {
            re: s.re,
            abscissa: sigma_a,
        });
    }
    let primes = primes_up_to(x_bound);
    let product = local_product(src, t, s, &primes)?;
    let tail = Majorant::new(src, t, 2)?.tail_sum(s.re, x_bound)?;
    let modulus = product.value.norm();
    Ok(EvalResult {
        value: product.value,
        truncation_bound: modulus * (tail.exp_m1() + product.rel_rounding),
        terms_used: product.factors,
    })
}

/// Abscissa of the series restricted to `n` free of primes below `x_bound`.
pub fn split_abscissa(src: &CoefficientSource, t: &TwistParameter, x_bound: u64) -> Result<f64> {
    Ok(Majorant::new(src, t, x_bound.max(2))?.abscissa())
}

/// Finite Euler product over `p < X` times the series over `n <= N` whose
/// prime factors are all `>= X`.
///
/// The restricted series converges left of the full abscissa, so this
/// evaluates the meromorphic continuation there.
pub fn eval_split(
    src: &CoefficientSource,
    t: &TwistParameter,
    s: Complex64,
    x_bound: u64,
    n: usize,
) -> Result<EvalResult> {
    assert!(n >= 1, "need at least one term");
    let min_prime = x_bound.max(2);
    let majorant = Majorant::new(src, t, min_prime)?;
    let restricted_abscissa = majorant.abscissa();
    if s.re <= restricted_abscissa {
        return Err(Error::DivergentRegion {
            re: s.re,
            abscissa: restricted_abscissa,
        });
    }
    let small_primes = primes_up_to(min_prime - 1);
    let product = local_product(src, t, s, &small_primes)?;

    let sieve = Sieve::new(n);
    let coeffs = src.coefficients_with(&sieve)?;
    let psi = psi_table(t, &sieve.sopfr_table());
    let mut sum = ComplexSum::default();
    for k in 1..=n {
        if k > 1 && (sieve.spf(k) as u64) < min_prime {
            continue;
        }
        let w = psi[k] * coeffs[k];
        if w.norm_sqr() == 0.0 {
            continue;
        }
        sum.add(w * (-s * (k as f64).ln()).exp());
    }
    let series_error = majorant.series_tail(s.re, &majorant.log_coefficients(&sieve))
        + series_rounding(&sum, s, n);
    let series = sum.value();
    let modulus = product.value.norm();
    Ok(EvalResult {
        value: product.value * series,
        truncation_bound: modulus * series_error
            + modulus * series.norm() * product.rel_rounding,
        terms_used: n,
    })
}
