use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::character::DirichletCharacter;
use super::elliptic::{frobenius_trace, EllipticCurve, MAX_POINT_COUNT_PRIME};
use crate::arith::{factorize, primes_up_to, Sieve};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Zeta,
    DirichletChar,
    Newform,
    EllipticCurve,
}

impl SourceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SourceKind::Zeta => "zeta",
            SourceKind::DirichletChar => "dirichlet_char",
            SourceKind::Newform => "newform",
            SourceKind::EllipticCurve => "elliptic_curve",
        }
    }
}

/// Local polynomial `P_p(T) = 1 + a_1 T + ... + a_e T^e` together with its
/// inverse roots, so that `P_p(T) = prod_i (1 - c_i T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactor {
    pub prime: u64,
    pub coefficients: Vec<Complex64>,
    pub inverse_roots: Vec<Complex64>,
}

impl EulerFactor {
    fn from_inverse_roots(prime: u64, inverse_roots: Vec<Complex64>) -> Self {
        let mut coefficients = vec![Complex64::new(1.0, 0.0)];
        for &c in &inverse_roots {
            let mut next = coefficients.clone();
            next.push(Complex64::new(0.0, 0.0));
            for (j, &a) in coefficients.iter().enumerate() {
                next[j + 1] -= c * a;
            }
            coefficients = next;
        }
        EulerFactor {
            prime,
            coefficients,
            inverse_roots,
        }
    }

    /// `1 - trace T + det T^2`, inverse roots by the quadratic formula.
    fn quadratic(prime: u64, trace: Complex64, det: Complex64) -> Self {
        let disc = (trace * trace - 4.0 * det).sqrt();
        let plus = trace + disc;
        let minus = trace - disc;
        let big = if plus.norm() >= minus.norm() { plus } else { minus } / 2.0;
        let roots = if big.norm() == 0.0 {
            vec![big, big]
        } else {
            vec![big, det / big]
        };
        EulerFactor {
            prime,
            coefficients: vec![Complex64::new(1.0, 0.0), -trace, det],
            inverse_roots: roots,
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `P_p(x)` from the stored coefficients.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
    }

    /// `prod_i (1 - c_i x)`, the factored form.
    pub fn eval_factored(&self, x: Complex64) -> Complex64 {
        self.inverse_roots
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * (1.0 - c * x))
    }

    /// Largest coefficient deviation between the stored polynomial and the
    /// product of `(1 - c_i T)`.
    pub fn reconstruction_error(&self) -> f64 {
        let rebuilt = Self::from_inverse_roots(self.prime, self.inverse_roots.clone());
        let scale = self
            .coefficients
            .iter()
            .map(|c| c.norm())
            .fold(1.0, f64::max);
        self.coefficients
            .iter()
            .zip(&rebuilt.coefficients)
            .map(|(a, b)| (a - b).norm() / scale)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
struct NewformData {
    k: u32,
    level: u64,
    nebentypus: DirichletCharacter,
    ap: BTreeMap<u64, Complex64>,
    // elliptic sources: good primes above this bound were never counted
    prime_bound: Option<u64>,
    curve: Option<EllipticCurve>,
}

#[derive(Debug, Clone)]
enum Repr {
    Zeta,
    Character(DirichletCharacter),
    Newform(NewformData),
}

/// Coefficients `c(n)` and local factors of one L-function.
#[derive(Debug, Clone)]
pub struct CoefficientSource {
    kind: SourceKind,
    degree: u32,
    weight: u32,
    bad_primes: BTreeSet<u64>,
    repr: Repr,
}

/// The Riemann zeta function: `c(n) = 1`, `P_p(T) = 1 - T`.
pub fn zeta_source() -> CoefficientSource {
    CoefficientSource {
        kind: SourceKind::Zeta,
        degree: 1,
        weight: 0,
        bad_primes: BTreeSet::new(),
        repr: Repr::Zeta,
    }
}

/// The Dirichlet L-function of `chi`: `P_p(T) = 1 - chi(p) T`.
pub fn character_source(chi: DirichletCharacter) -> CoefficientSource {
    let bad_primes = factorize(chi.modulus()).into_iter().map(|(p, _)| p).collect();
    CoefficientSource {
        kind: SourceKind::DirichletChar,
        degree: 1,
        weight: 0,
        bad_primes,
        repr: Repr::Character(chi),
    }
}

/// A newform of weight `k`, level `level` and the given nebentypus, from a
/// table of prime coefficients.
///
/// Good-prime coefficients are checked against `|a_p| <= 2 p^((k-1)/2)`.
pub fn newform_source(
    k: u32,
    level: u64,
    nebentypus: DirichletCharacter,
    ap: BTreeMap<u64, Complex64>,
) -> Result<CoefficientSource> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("newform weight {k} < 2")));
    }
    if level == 0 || level % nebentypus.modulus() != 0 {
        return Err(Error::InvalidArgument(format!(
            "nebentypus modulus {} does not divide the level {level}",
            nebentypus.modulus()
        )));
    }
    let bad_primes: BTreeSet<u64> = factorize(level).into_iter().map(|(p, _)| p).collect();
    for (&p, &a) in &ap {
        if bad_primes.contains(&p) {
            continue;
        }
        let bound = 2.0 * (p as f64).powf((k as f64 - 1.0) / 2.0);
        if a.norm() > bound * (1.0 + 1e-9) + 1e-6 {
            return Err(Error::CoefficientBound {
                prime: p,
                value: a.norm(),
                bound,
            });
        }
    }
    Ok(CoefficientSource {
        kind: SourceKind::Newform,
        degree: 2,
        weight: k - 1,
        bad_primes,
        repr: Repr::Newform(NewformData {
            k,
            level,
            nebentypus,
            ap,
            prime_bound: None,
            curve: None,
        }),
    })
}

/// The weight-2 newform attached to `curve`.
///
/// `a_p` is counted for every good prime up to `prime_bound`; primes in
/// `conductor_primes` take their coefficient from `bad_coeffs` (missing
/// entries mean 0).
pub fn elliptic_source(
    curve: EllipticCurve,
    conductor_primes: &BTreeSet<u64>,
    bad_coeffs: &BTreeMap<u64, i64>,
    prime_bound: u64,
) -> Result<CoefficientSource> {
    if prime_bound > MAX_POINT_COUNT_PRIME {
        return Err(Error::PrimeBoundExceeded {
            prime: prime_bound,
            bound: MAX_POINT_COUNT_PRIME,
        });
    }
    for (&p, &c) in bad_coeffs {
        if !conductor_primes.contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "bad coefficient given for p = {p}, which is not a conductor prime"
            )));
        }
        if !(-1..=1).contains(&c) {
            return Err(Error::InvalidArgument(format!(
                "bad coefficient a_{p} = {c} is not in {{-1, 0, 1}}"
            )));
        }
    }
    if !conductor_primes.contains(&2) {
        return Err(Error::UnsupportedPrime(2));
    }
    let mut ap = BTreeMap::new();
    for p in primes_up_to(prime_bound) {
        if conductor_primes.contains(&p) {
            continue;
        }
        ap.insert(p, Complex64::new(frobenius_trace(&curve, p)? as f64, 0.0));
    }
    for &p in conductor_primes {
        let c = bad_coeffs.get(&p).copied().unwrap_or(0);
        ap.insert(p, Complex64::new(c as f64, 0.0));
    }
    let level: u64 = conductor_primes.iter().product();
    Ok(CoefficientSource {
        kind: SourceKind::EllipticCurve,
        degree: 2,
        weight: 1,
        bad_primes: conductor_primes.clone(),
        repr: Repr::Newform(NewformData {
            k: 2,
            level,
            nebentypus: DirichletCharacter::principal(level),
            ap,
            prime_bound: Some(prime_bound),
            curve: Some(curve),
        }),
    })
}

/// Parses a prime-coefficient table with lines `p a_p` or `p re im`.
pub fn parse_ap_table(text: &str) -> Result<BTreeMap<u64, Complex64>> {
    let mut table = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: '{}'", lineno + 1, raw.trim()));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let p: u64 = fields[0].parse().map_err(|_| bad())?;
        let value = match fields.len() {
            2 => Complex64::new(fields[1].parse().map_err(|_| bad())?, 0.0),
            3 => Complex64::new(
                fields[1].parse().map_err(|_| bad())?,
                fields[2].parse().map_err(|_| bad())?,
            ),
            _ => return Err(bad()),
        };
        table.insert(p, value);
    }
    Ok(table)
}

impl CoefficientSource {
    pub fn kind(&self) -> SourceKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Motivic weight `w`; good-prime inverse roots have modulus `p^(w/2)`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn bad_primes(&self) -> &BTreeSet<u64> {
        &self.bad_primes
    }

    pub fn is_good(&self, p: u64) -> bool {
        !self.bad_primes.contains(&p)
    }

    pub fn curve(&self) -> Option<&EllipticCurve> {
        match &self.repr {
            Repr::Newform(data) => data.curve.as_ref(),
            _ => None,
        }
    }

    pub fn level(&self) -> u64 {
        match &self.repr {
            Repr::Zeta => 1,
            Repr::Character(chi) => chi.modulus(),
            Repr::Newform(data) => data.level,
        }
    }

    /// `c(p)` for a prime `p`.
    pub fn prime_coefficient(&self, p: u64) -> Result<Complex64> {
        match &self.repr {
            Repr::Zeta => Ok(Complex64::new(1.0, 0.0)),
            Repr::Character(chi) => Ok(chi.value(p)),
            Repr::Newform(data) => match data.ap.get(&p) {
                Some(&a) => Ok(a),
                None => match data.prime_bound {
                    Some(bound) => Err(Error::PrimeBoundExceeded { prime: p, bound }),
                    None => Err(Error::MissingCoefficient(p)),
                },
            },
        }
    }

    /// `c(p^e)` from `c(p)`, `c(p^(e-1))` and `c(p^(e-2))` (the latter 0 when `e = 1`).
    fn prime_power_step(
        &self,
        p: u64,
        cp: Complex64,
        prev1: Complex64,
        prev2: Complex64,
    ) -> Complex64 {
        match &self.repr {
            Repr::Newform(data) if self.is_good(p) => {
                let det = data.nebentypus.value(p) * (p as f64).powi(data.k as i32 - 1);
                cp * prev1 - det * prev2
            }
            _ => cp * prev1,
        }
    }

    /// `c(p^e)`.
    pub fn prime_power(&self, p: u64, e: u32) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        if e == 0 {
            return Ok(one);
        }
        let cp = self.prime_coefficient(p)?;
        let (mut prev2, mut prev1) = (Complex64::new(0.0, 0.0), one);
        for _ in 0..e {
            let next = self.prime_power_step(p, cp, prev1, prev2);
            prev2 = prev1;
            prev1 = next;
        }
        Ok(prev1)
    }

    /// `c(n)` for an isolated `n`.
    pub fn coefficient(&self, n: u64) -> Result<Complex64> {
        assert!(n >= 1);
        factorize(n)
            .into_iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, (p, e)| {
                Ok(acc * self.prime_power(p, e)?)
            })
    }

    /// `c(1..=n_max)` with a leading unused entry at index 0.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<Complex64>> {
        self.coefficients_with(&Sieve::new(n_max))
    }

    /// Like [`coefficients`](Self::coefficients), reusing a sieve; fills
    /// every index up to the sieve limit.
    pub fn coefficients_with(&self, sieve: &Sieve) -> Result<Vec<Complex64>> {
        let n_max = sieve.limit();
        let mut c = vec![Complex64::new(0.0, 0.0); n_max + 1];
        c[1] = Complex64::new(1.0, 0.0);
        for n in 2..=n_max {
            let p = sieve.spf(n) as usize;
            let mut m = n / p;
            let mut pe = p;
            while m % p == 0 {
                m /= p;
                pe *= p;
            }
            c[n] = if m == 1 {
                let cp = if pe == p {
                    self.prime_coefficient(p as u64)?
                } else {
                    c[p]
                };
                let prev2 = if pe == p { Complex64::new(0.0, 0.0) } else { c[pe / p / p] };
                self.prime_power_step(p as u64, cp, c[pe / p], prev2)
            } else {
                c[pe] * c[m]
            };
        }
        Ok(c)
    }

    /// The local factor at `p`. Degenerate factors drop to lower degree.
    pub fn local_factor(&self, p: u64) -> Result<EulerFactor> {
        let cp = self.prime_coefficient(p)?;
        let linear = |c: Complex64| {
            if c.norm() == 0.0 {
                EulerFactor::from_inverse_roots(p, vec![])
            } else {
                EulerFactor::from_inverse_roots(p, vec![c])
            }
        };
        Ok(match &self.repr {
            Repr::Zeta | Repr::Character(_) => linear(cp),
            Repr::Newform(data) => {
                if self.is_good(p) {
                    let det = data.nebentypus.value(p) * (p as f64).powi(data.k as i32 - 1);
                    EulerFactor::quadratic(p, cp, det)
                } else {
                    linear(cp)
                }
            }
        })
    }

    /// Moduli of the inverse roots at `p` without requiring `c(p)`: good
    /// primes give `d` copies of `p^(w/2)`, bad primes use their stored data.
    pub(crate) fn root_moduli(&self, p: u64) -> Result<Vec<f64>> {
        if self.is_good(p) {
            Ok(vec![(p as f64).powf(self.weight as f64 / 2.0); self.degree as usize])
        } else {
            Ok(self
                .local_factor(p)?
                .inverse_roots
                .iter()
                .map(|c| c.norm())
                .collect())
        }
    }
}
