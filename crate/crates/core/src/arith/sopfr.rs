use num_complex::Complex64;

use super::sieve::{factorize, Sieve};
use crate::error::{Error, Result};

/// The integer logarithm `S(n)`: sum of prime factors with multiplicity.
///
/// `S(1) = 0` and `S(mn) = S(m) + S(n)`.
pub fn sopfr(n: u64) -> u64 {
    assert!(n >= 1, "sopfr is defined on positive integers");
    factorize(n).iter().map(|&(p, e)| p * e as u64).sum()
}

/// Lower bound `(x / ln x) ln n` satisfied by `S(n)` whenever every prime
/// factor of `n` is at least `x` (with `x = 3` for unrestricted `n`).
pub fn sopfr_lower_bound(n: u64, x: f64) -> f64 {
    x / x.ln() * (n as f64).ln()
}

/// `sum_{i=1}^{n} S(i)`, exact.
pub fn sopfr_partial_sum(n: u64) -> u64 {
    assert!(n >= 1);
    Sieve::new(n as usize).sopfr_table()[1..].iter().sum()
}

/// The asymptotic main term `(pi^2 / 12) n^2 / ln n` of the partial sum.
pub fn sopfr_partial_sum_main_term(n: u64) -> f64 {
    let n = n as f64;
    std::f64::consts::PI.powi(2) / 12.0 * n * n / n.ln()
}

/// Which disk the twist parameter is constrained to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistConstraint {
    /// `|alpha| < 1`, required by everything on the analytic side.
    UnitDiskOpen,
    /// `|alpha| <= 1`, enough for the ring-isomorphism identities.
    UnitCircleClosed,
}

/// The complex parameter `alpha` of the character `psi(n) = alpha^S(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistParameter {
    alpha: Complex64,
    constraint: TwistConstraint,
}

impl TwistParameter {
    pub fn new(alpha: Complex64, constraint: TwistConstraint) -> Result<Self> {
        let m = alpha.norm();
        let ok = match constraint {
            TwistConstraint::UnitDiskOpen => m < 1.0,
            TwistConstraint::UnitCircleClosed => m <= 1.0,
        };
        if !ok || !m.is_finite() {
            return Err(Error::InvalidTwist {
                modulus: m,
                constraint: match constraint {
                    TwistConstraint::UnitDiskOpen => "|alpha| < 1",
                    TwistConstraint::UnitCircleClosed => "|alpha| <= 1",
                },
            });
        }
        Ok(TwistParameter { alpha, constraint })
    }

    /// `alpha` in the open unit disk.
    pub fn open(alpha: impl Into<Complex64>) -> Result<Self> {
        Self::new(alpha.into(), TwistConstraint::UnitDiskOpen)
    }

    /// `alpha` in the closed unit disk.
    pub fn closed(alpha: impl Into<Complex64>) -> Result<Self> {
        Self::new(alpha.into(), TwistConstraint::UnitCircleClosed)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn constraint(&self) -> TwistConstraint {
        self.constraint
    }

    pub fn modulus(&self) -> f64 {
        self.alpha.norm()
    }

    /// `ln |alpha|`, `-inf` at `alpha = 0`.
    pub fn log_modulus(&self) -> f64 {
        self.alpha.norm().ln()
    }

    /// `alpha^m` by repeated squaring; `alpha^0 = 1` also at `alpha = 0`.
    pub fn power(&self, m: u64) -> Complex64 {
        complex_powu(self.alpha, m)
    }
}

pub(crate) fn complex_powu(z: Complex64, mut e: u64) -> Complex64 {
    let mut base = z;
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// The character `psi(n) = alpha^S(n)`.
pub fn psi(n: u64, t: &TwistParameter) -> Complex64 {
    t.power(sopfr(n))
}

/// `psi(n)` for all `n` in `1..=n_max`, index 0 unused.
pub(crate) fn psi_table(t: &TwistParameter, sopfr: &[u64]) -> Vec<Complex64> {
    let max_s = sopfr.iter().copied().max().unwrap_or(0) as usize;
    let mut powers = Vec::with_capacity(max_s + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=max_s {
        powers.push(acc);
        acc *= t.alpha();
    }
    let mut out: Vec<Complex64> = sopfr.iter().map(|&s| powers[s as usize]).collect();
    if !out.is_empty() {
        out[0] = Complex64::new(0.0, 0.0);
    }
    out
}
