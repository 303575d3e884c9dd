//! Evaluation of twisted L-functions over the complex numbers.

mod bounds;
mod euler;
mod expansion;
mod gamma;
mod majorant;
mod mellin;
mod poles;
mod quadrature;
mod series;

use num_complex::Complex64;

use crate::arith::TwistParameter;
use crate::error::Result;
use crate::sources::CoefficientSource;

pub use bounds::{bounds, bounds_for, BoundsPair, LocalShape};
pub use euler::{eval_euler, eval_split, split_abscissa};
pub use expansion::alpha_expansion;
pub use gamma::gamma;
pub use mellin::{g_function, mellin_check};
pub use poles::{
    pole_families, poles, top_pole_families, verify_location, verify_pole, Pole, PoleFamily,
};
pub use quadrature::{integrate, Integral};
pub use series::eval_series;

/// A value together with a guaranteed bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    /// Upper bound on `|exact - value|`, including a floating-point term.
    pub truncation_bound: f64,
    /// Series terms or Euler factors used.
    pub terms_used: usize,
}

impl EvalResult {
    /// Whether two evaluations agree within their combined bounds.
    pub fn agrees_with(&self, other: &EvalResult) -> bool {
        (self.value - other.value).norm() <= self.truncation_bound + other.truncation_bound
    }
}

/// Abscissa of absolute convergence of the twisted series.
///
/// Good primes contribute `(p / ln p) ln|alpha| + w/2`, maximal at the
/// first good prime in the order 3, 2, 5, 7, 11, ...; bad primes with a
/// nonzero inverse root `c` contribute `(p ln|alpha| + ln|c|) / ln p`.
pub fn abscissa(src: &CoefficientSource, t: &TwistParameter) -> Result<f64> {
    let log_alpha = t.log_modulus();
    if log_alpha == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let half_weight = src.weight() as f64 / 2.0;
    let first_good = [3u64, 2]
        .into_iter()
        .chain(crate::arith::primes_from(5))
        .find(|&p| src.is_good(p))
        .expect("only finitely many primes are bad");
    let pf = first_good as f64;
    let mut best = pf / pf.ln() * log_alpha + half_weight;
    for &p in src.bad_primes() {
        let lp = (p as f64).ln();
        for r in src.root_moduli(p)? {
            if r > 0.0 {
                best = best.max((p as f64 * log_alpha + r.ln()) / lp);
            }
        }
    }
    Ok(best)
}

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
    abs: f64,
}

impl ComplexSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.abs += z.norm();
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    /// Sum of the moduli of the added terms.
    pub(crate) fn abs_sum(&self) -> f64 {
        self.abs
    }
}
