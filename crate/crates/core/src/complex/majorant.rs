//! Rigorous tail bounds through a positive majorant.
//!
//! Every twisted coefficient satisfies `|alpha^S(n) c(n)| <= b(n)` where
//! `b` is the multiplicative function with
//!
//! ```text
//! sum_n b(n) n^-sigma = prod_p prod_i (1 - u_{p,i}(sigma))^-1,
//! u_{p,i}(sigma) = |alpha|^p |c_{p,i}| p^-sigma.
//! ```
//!
//! Good primes have `|c_{p,i}| = p^(w/2)`; bad primes use the moduli of
//! their stored inverse roots. Primes beyond the explicitly summed range
//! are bounded by `g(m) = |alpha|^m m^(w/2 - sigma)` over all integers `m`,
//! which decays geometrically.

use std::collections::BTreeMap;

use crate::arith::{primes_from, Sieve, TwistParameter};
use crate::error::{Error, Result};
use crate::sources::CoefficientSource;

/// Stop summing explicit primes once the geometric remainder is below this.
const TAIL_CUTOFF: f64 = 1e-18;
/// Relative slack on the majorant product before subtracting partial sums.
const PRODUCT_SLACK: f64 = 2e-12;

#[derive(Debug, Clone)]
pub(crate) struct Majorant {
    log_alpha: f64,
    degree: usize,
    half_weight: f64,
    min_prime: u64,
    bad: BTreeMap<u64, Vec<f64>>,
}

impl Majorant {
    /// Majorant over primes `>= min_prime`.
    pub(crate) fn new(src: &CoefficientSource, t: &TwistParameter, min_prime: u64) -> Result<Self> {
        let mut bad = BTreeMap::new();
        for &p in src.bad_primes() {
            if p >= min_prime {
                bad.insert(p, src.root_moduli(p)?);
            }
        }
        Ok(Majorant {
            log_alpha: t.log_modulus(),
            degree: src.degree() as usize,
            half_weight: src.weight() as f64 / 2.0,
            min_prime,
            bad,
        })
    }

    fn is_zero_twist(&self) -> bool {
        self.log_alpha == f64::NEG_INFINITY
    }

    fn root_moduli(&self, p: u64) -> Vec<f64> {
        match self.bad.get(&p) {
            Some(r) => r.clone(),
            None => vec![(p as f64).powf(self.half_weight); self.degree],
        }
    }

    /// `(p / ln p) ln|alpha| + w/2`, the real part shared by all good-prime
    /// poles at `p`.
    fn good_line(&self, p: u64) -> f64 {
        let lp = (p as f64).ln();
        p as f64 / lp * self.log_alpha + self.half_weight
    }

    /// Abscissa of absolute convergence of the majorant series.
    pub(crate) fn abscissa(&self) -> f64 {
        if self.is_zero_twist() {
            return f64::NEG_INFINITY;
        }
        let mut best = f64::NEG_INFINITY;
        for p in primes_from(self.min_prime) {
            let lp = (p as f64).ln();
            for r in self.root_moduli(p) {
                if r > 0.0 {
                    best = best.max((p as f64 * self.log_alpha + r.ln()) / lp);
                }
            }
            // p / ln p increases for p >= 3, and bad roots never exceed p^(w/2)
            if p >= 3 && best > f64::NEG_INFINITY && self.good_line(p) < best {
                break;
            }
        }
        best
    }

    fn u(&self, p: u64, r: f64, sigma: f64) -> f64 {
        ((p as f64) * self.log_alpha + r.ln() - sigma * (p as f64).ln()).exp()
    }

    /// Bound on `sum_{m > after} d u/(1-u)` via `g(m) = |alpha|^m m^a`,
    /// `a = w/2 - sigma`; `None` while the geometric comparison is not yet valid.
    fn geometric_remainder(&self, sigma: f64, after: u64) -> Option<f64> {
        let m = (after + 1) as f64;
        let a = self.half_weight - sigma;
        let ratio = self.log_alpha.exp() * (1.0 + 1.0 / m).powf(a.max(0.0));
        let first = (m * self.log_alpha + a * m.ln()).exp();
        if ratio >= 1.0 || first >= 1.0 {
            return None;
        }
        Some(self.degree as f64 * first / ((1.0 - ratio) * (1.0 - first)))
    }

    /// Upper bound on `sum_{p > after, p >= min_prime} sum_i u/(1-u)`.
    pub(crate) fn tail_sum(&self, sigma: f64, after: u64) -> Result<f64> {
        if self.is_zero_twist() {
            return Ok(0.0);
        }
        let start = self.min_prime.max(after + 1);
        let mut total = 0.0f64;
        let mut last = after;
        for p in primes_from(start) {
            if let Some(rest) = self.geometric_remainder(sigma, last) {
                if rest <= TAIL_CUTOFF * total.max(1e-30) || rest < 1e-300 {
                    return Ok(total + rest);
                }
            }
            for r in self.root_moduli(p) {
                if r == 0.0 {
                    continue;
                }
                let u = self.u(p, r, sigma);
                if u >= 1.0 {
                    return Err(Error::BoundUndefined { prime: p, value: u });
                }
                total += u / (1.0 - u);
            }
            last = p;
        }
        unreachable!("prime iterator is unbounded")
    }

    /// Upper bound on `ln prod_{p >= min_prime} prod_i (1 - u)^-1`.
    pub(crate) fn log_product(&self, sigma: f64) -> Result<f64> {
        if self.is_zero_twist() {
            return Ok(0.0);
        }
        let mut total = 0.0f64;
        let mut last = self.min_prime.saturating_sub(1);
        for p in primes_from(self.min_prime) {
            if let Some(rest) = self.geometric_remainder(sigma, last) {
                if rest <= TAIL_CUTOFF * total.max(1e-30) || rest < 1e-300 {
                    return Ok(total + rest);
                }
            }
            for r in self.root_moduli(p) {
                if r == 0.0 {
                    continue;
                }
                let u = self.u(p, r, sigma);
                if u >= 1.0 {
                    return Err(Error::BoundUndefined { prime: p, value: u });
                }
                total -= (-u).ln_1p();
            }
            last = p;
        }
        unreachable!("prime iterator is unbounded")
    }

    /// `ln b(n)` for `n <= sieve.limit()`; `-inf` where `b(n) = 0`, including
    /// every `n` with a prime factor below `min_prime`.
    pub(crate) fn log_coefficients(&self, sieve: &Sieve) -> Vec<f64> {
        let n_max = sieve.limit();
        let mut lb = vec![f64::NEG_INFINITY; n_max + 1];
        if n_max >= 1 {
            lb[1] = 0.0;
        }
        // ln h(p^e) for the current prime, indexed by e
        let mut power_logs: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
        for n in 2..=n_max {
            let p = sieve.spf(n) as usize;
            let mut m = n / p;
            let mut e = 1usize;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if (p as u64) < self.min_prime {
                continue;
            }
            if m != 1 {
                let pe = n / m;
                lb[n] = lb[pe] + lb[m];
                continue;
            }
            let logs = power_logs
                .entry(p as u64)
                .or_insert_with(|| self.prime_power_logs(p as u64, n_max));
            lb[n] = logs[e] + (e * p) as f64 * self.log_alpha;
        }
        lb
    }

    /// `ln h_e` for `e = 0..=log_p(n_max)`, where `h_e` is the coefficient of
    /// `T^e` in `prod_i (1 - |c_{p,i}| T)^-1`.
    fn prime_power_logs(&self, p: u64, n_max: usize) -> Vec<f64> {
        let mut e_max = 0;
        let mut pe = 1usize;
        while pe <= n_max / p as usize {
            pe *= p as usize;
            e_max += 1;
        }
        let roots = self.root_moduli(p);
        let mut h = vec![0.0f64; e_max + 1];
        h[0] = 1.0;
        for &r in &roots {
            for e in 1..=e_max {
                h[e] += r * h[e - 1];
            }
        }
        h.into_iter().map(f64::ln).collect()
    }

    /// Upper bound on `sum_{n > N} b(n) n^-sigma` (Rankin's trick):
    /// `N^-delta (F(sigma - delta) - sum_{n <= N} b(n) n^-(sigma - delta))`,
    /// minimised over a grid of `delta`.
    pub(crate) fn series_tail(&self, sigma: f64, log_coeffs: &[f64]) -> f64 {
        if self.is_zero_twist() {
            return 0.0;
        }
        let n_max = log_coeffs.len() - 1;
        let gap = sigma - self.abscissa();
        if !(gap > 0.0) {
            return f64::INFINITY;
        }
        let ln_n_max = (n_max as f64).ln();
        let mut best = f64::INFINITY;
        for k in 0..=12 {
            let delta = gap * (k as f64 / 12.0).min(0.97);
            let shifted = sigma - delta;
            let Ok(log_f) = self.log_product(shifted) else {
                continue;
            };
            let full = log_f.exp();
            let mut partial = super::Neumaier::default();
            for (n, &lb) in log_coeffs.iter().enumerate().skip(1) {
                if lb > f64::NEG_INFINITY {
                    partial.add((lb - shifted * (n as f64).ln()).exp());
                }
            }
            let rest = (full - partial.value()).max(0.0) + PRODUCT_SLACK * full;
            best = best.min(rest * (-delta * ln_n_max).exp());
        }
        best
    }
}
