use num_complex::Complex64;

use super::majorant::Majorant;
use super::{ComplexSum, EvalResult};
use crate::arith::{psi_table, Sieve, TwistParameter};
use crate::error::Result;
use crate::sources::CoefficientSource;

/// Partial sum `sum_{n <= N} alpha^S(n) c(n) n^-s` with a rigorous bound on
/// the omitted tail. The bound is infinite when `Re(s)` does not exceed the
/// abscissa of absolute convergence.
pub fn eval_series(
    src: &CoefficientSource,
    t: &TwistParameter,
    s: Complex64,
    n: usize,
) -> Result<EvalResult> {
    assert!(n >= 1, "need at least one term");
    let sieve = Sieve::new(n);
    let coeffs = src.coefficients_with(&sieve)?;
    let psi = psi_table(t, &sieve.sopfr_table());
    let mut sum = ComplexSum::default();
    for k in 1..=n {
        let w = psi[k] * coeffs[k];
        if w.norm_sqr() == 0.0 {
            continue;
        }
        sum.add(w * (-s * (k as f64).ln()).exp());
    }
    let majorant = Majorant::new(src, t, 2)?;
    let tail = majorant.series_tail(s.re, &majorant.log_coefficients(&sieve));
    Ok(EvalResult {
        value: sum.value(),
        truncation_bound: tail + series_rounding(&sum, s, n),
        terms_used: n,
    })
}

/// Floating-point allowance for a sum of `n^-s`-weighted terms.
pub(super) fn series_rounding(sum: &ComplexSum, s: Complex64, n: usize) -> f64 {
    let ln_n = (n.max(2) as f64).ln();
    f64::EPSILON * (16.0 + 2.0 * s.norm() * ln_n) * sum.abs_sum()
}
