use num_complex::Complex64;

use super::gamma::gamma;
use super::majorant::Majorant;
use super::quadrature::integrate;
use crate::arith::{psi_table, Sieve, TwistParameter};
use crate::error::{Error, Result};
use crate::sources::{character_source, DirichletCharacter};

/// Smallest and largest truncation of `G` used by [`mellin_check`].
const MIN_TERMS: usize = 1 << 10;
const MAX_TERMS: usize = 1 << 21;
/// Target for the omitted series tail.
const SERIES_TOL: f64 = 1e-10;
/// Inner sums stop when the remaining mass is below this.
const INNER_TOL: f64 = 1e-17;
/// Integrand mass dropped on each side of the integration range.
const RANGE_TOL: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-10;
const QUAD_FAIL: f64 = 1e-8;
const MAX_PANELS: usize = 4000;
/// Taylor terms for `G` when `x N <= 1`.
const MOMENTS: usize = 26;

/// `G_N(x) = sum_{n <= N} b_n e^{-nx}` with `b_n = alpha^S(n) chi(n)`.
struct GSeries {
    b: Vec<Complex64>,
    /// `suffix[n] = sum_{m >= n} |b_m|`.
    suffix: Vec<f64>,
    /// `sum_n b_n (n / N)^k`.
    moments: Vec<Complex64>,
}

impl GSeries {
    fn new(chi: &DirichletCharacter, t: &TwistParameter, n: usize) -> Self {
        let sieve = Sieve::new(n);
        let psi = psi_table(t, &sieve.sopfr_table());
        let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, bk) in b.iter_mut().enumerate().skip(1) {
            *bk = psi[k] * chi.value(k as u64);
        }
        let mut suffix = vec![0.0; n + 2];
        for k in (1..=n).rev() {
            suffix[k] = suffix[k + 1] + b[k].norm();
        }
        let mut moments = vec![Complex64::new(0.0, 0.0); MOMENTS];
        for (k, &bk) in b.iter().enumerate().skip(1) {
            let r = k as f64 / n as f64;
            let mut pw = 1.0;
            for m in moments.iter_mut() {
                *m += bk * pw;
                pw *= r;
            }
        }
        GSeries { b, suffix, moments }
    }

    fn terms(&self) -> usize {
        self.b.len() - 1
    }

    fn abs_total(&self) -> f64 {
        self.suffix[1]
    }

    fn eval(&self, x: f64) -> Complex64 {
        let n = self.terms();
        let y = x * n as f64;
        if y <= 1.0 {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut c = 1.0;
            for (k, m) in self.moments.iter().enumerate() {
                acc += m * c;
                c *= -y / (k + 1) as f64;
            }
            return acc;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let step = (-x).exp();
        let mut w = step;
        for k in 1..=n {
            if k % 512 == 0 {
                w = (-(k as f64) * x).exp();
                if w * self.suffix[k] < INNER_TOL {
                    break;
                }
            }
            acc += self.b[k] * w;
            w *= step;
        }
        acc
    }
}

/// `G(x) = sum_{n <= n_max} alpha^S(n) chi(n) e^{-nx}`.
pub fn g_function(
    chi: &DirichletCharacter,
    t: &TwistParameter,
    x: f64,
    n_max: usize,
) -> Complex64 {
    GSeries::new(chi, t, n_max.max(1)).eval(x.max(0.0))
}

/// `(1 / Gamma(s)) int_0^inf G(x) x^{s-1} dx` by adaptive quadrature in
/// `u = ln x`.
///
/// `G` is truncated at `N` terms with the majorant tail of the series at
/// `Re(s)` below `1e-10` (at most `2^21` terms).
pub fn mellin_check(chi: &DirichletCharacter, t: &TwistParameter, s: Complex64) -> Result<Complex64> {
    let sigma = s.re;
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(format!("mellin check needs Re(s) > 0, got {sigma}")));
    }
    if t.modulus() >= 1.0 {
        return Err(Error::InvalidArgument("mellin check needs |alpha| < 1".into()));
    }
    let src = character_source(chi.clone());
    let majorant = Majorant::new(&src, t, 2)?;
    let mut n = MIN_TERMS;
    while n < MAX_TERMS {
        let sieve = Sieve::new(n);
        if majorant.series_tail(sigma, &majorant.log_coefficients(&sieve)) < SERIES_TOL {
            break;
        }
        n *= 2;
    }
    let g = GSeries::new(chi, t, n);
    let mass = g.abs_total().max(f64::MIN_POSITIVE);
    // |G| <= mass near 0 and |G(x)| <= mass e^{-x} for x >= 1
    let u_min = (RANGE_TOL * sigma / mass).ln() / sigma;
    let x_max = 40.0 + 4.0 * sigma + mass.ln().max(0.0);
    let u_max = x_max.ln();
    let integrand = |u: f64| g.eval(u.exp()) * (s * u).exp();
    let quad = match integrate(integrand, u_min, u_max, QUAD_TOL, MAX_PANELS) {
        Ok(q) => q,
        Err(Error::QuadratureFailure(_)) => integrate(integrand, u_min, u_max, QUAD_FAIL, MAX_PANELS)?,
        Err(e) => return Err(e),
    };
    Ok(quad.value / gamma(s))
}
