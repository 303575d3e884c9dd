use num_complex::Complex64;

use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};

const ZERO_TOL: f64 = 1e-12;
const VALUE_TOL: f64 = 1e-9;

/// A Dirichlet character given by its value table on residues `0..q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Complex64>,
}

impl DirichletCharacter {
    /// Validates the table: `chi(1) = 1`, support exactly on units,
    /// multiplicativity, and values that are roots of unity of order
    /// dividing the exponent of `(Z/q)^x`.
    pub fn new(modulus: u64, values: Vec<Complex64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidCharacter("modulus must be positive".into()));
        }
        if values.len() as u64 != modulus {
            return Err(Error::InvalidCharacter(format!(
                "expected {modulus} values, got {}",
                values.len()
            )));
        }
        let q = modulus;
        let one = (1 % q) as usize;
        if (values[one] - Complex64::new(1.0, 0.0)).norm() > VALUE_TOL {
            return Err(Error::InvalidCharacter(format!("chi(1) = {} != 1", values[one])));
        }
        let exponent = carmichael(q);
        for (r, v) in values.iter().enumerate() {
            let unit = gcd(r as u64, q) == 1;
            if !unit {
                if v.norm() > ZERO_TOL {
                    return Err(Error::InvalidCharacter(format!(
                        "chi({r}) must vanish: gcd({r}, {q}) > 1"
                    )));
                }
                continue;
            }
            if (v.norm() - 1.0).abs() > VALUE_TOL {
                return Err(Error::InvalidCharacter(format!(
                    "chi({r}) = {v} is not a root of unity"
                )));
            }
            if (v.powu(exponent as u32) - 1.0).norm() > 1e-8 {
                return Err(Error::InvalidCharacter(format!(
                    "order of chi({r}) does not divide the group exponent {exponent}"
                )));
            }
        }
        let units: Vec<usize> = (0..q as usize).filter(|&r| gcd(r as u64, q) == 1).collect();
        for &a in &units {
            for &b in &units {
                let ab = (a * b) % q as usize;
                if (values[ab] - values[a] * values[b]).norm() > VALUE_TOL {
                    return Err(Error::InvalidCharacter(format!(
                        "not multiplicative: chi({a} * {b}) != chi({a}) chi({b})"
                    )));
                }
            }
        }
        Ok(DirichletCharacter { modulus, values })
    }

    /// The principal character modulo `q`.
    pub fn principal(q: u64) -> Self {
        let values = (0..q)
            .map(|r| Complex64::new(if gcd(r, q) == 1 { 1.0 } else { 0.0 }, 0.0))
            .collect();
        DirichletCharacter { modulus: q, values }
    }

    /// The nontrivial character modulo 4.
    pub fn mod4() -> Self {
        Self::from_real(4, &[0.0, 1.0, 0.0, -1.0]).expect("valid character")
    }

    /// The Legendre symbol `(a / p)` for an odd prime `p`.
    pub fn legendre(p: u64) -> Result<Self> {
        if p < 3 || factorize(p) != [(p, 1)] {
            return Err(Error::InvalidCharacter(format!("{p} is not an odd prime")));
        }
        let mut values = vec![-1.0; p as usize];
        values[0] = 0.0;
        for x in 1..p {
            values[((x * x) % p) as usize] = 1.0;
        }
        Self::from_real(p, &values)
    }

    pub fn from_real(modulus: u64, values: &[f64]) -> Result<Self> {
        Self::new(modulus, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Parses lines `r value` or `r re im`. Residues not listed are zero.
    /// The modulus comes from a `modulus q` line when present, otherwise
    /// it is one more than the largest listed residue.
    pub fn parse(text: &str) -> Result<Self> {
        let mut modulus = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: '{}'", lineno + 1, raw.trim()));
            if fields[0] == "modulus" {
                if fields.len() != 2 {
                    return Err(bad());
                }
                modulus = Some(fields[1].parse::<u64>().map_err(|_| bad())?);
                continue;
            }
            let r: u64 = fields[0].parse().map_err(|_| bad())?;
            let value = match fields.len() {
                2 => Complex64::new(fields[1].parse().map_err(|_| bad())?, 0.0),
                3 => Complex64::new(
                    fields[1].parse().map_err(|_| bad())?,
                    fields[2].parse().map_err(|_| bad())?,
                ),
                _ => return Err(bad()),
            };
            entries.push((r, value));
        }
        let q = match modulus {
            Some(q) => q,
            None => entries.iter().map(|&(r, _)| r + 1).max().ok_or_else(|| {
                Error::Parse("character file lists no residues".into())
            })?,
        };
        let mut values = vec![Complex64::new(0.0, 0.0); q as usize];
        for (r, v) in entries {
            if r >= q {
                return Err(Error::Parse(format!("residue {r} out of range for modulus {q}")));
            }
            values[r as usize] = v;
        }
        Self::new(q, values)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `chi(n mod q)`.
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < VALUE_TOL)
    }

    pub fn is_principal(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(r, v)| gcd(r as u64, self.modulus) > 1 || (v - 1.0).norm() < VALUE_TOL)
    }

    /// Multiplicative order of `chi(n)`; `None` when `chi(n) = 0`.
    pub fn value_order(&self, n: u64) -> Option<u64> {
        let v = self.value(n);
        if v.norm() < ZERO_TOL {
            return None;
        }
        let exponent = carmichael(self.modulus);
        (1..=exponent).find(|&k| exponent % k == 0 && (v.powu(k as u32) - 1.0).norm() < 1e-8)
    }
}

/// Exponent of the unit group `(Z/q)^x`.
pub(crate) fn carmichael(q: u64) -> u64 {
    factorize(q)
        .into_iter()
        .map(|(p, e)| {
            let phi = (p - 1) * p.pow(e - 1);
            if p == 2 && e >= 3 {
                phi / 2
            } else {
                phi
            }
        })
        .fold(1, |acc, x| acc / gcd(acc, x) * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod4_values() {
        let chi = DirichletCharacter::mod4();
        let got: Vec<f64> = (1..=4).map(|n| chi.value(n).re).collect();
        assert_eq!(got, vec![1.0, 0.0, -1.0, 0.0]);
        assert_eq!(chi.value(9).re, 1.0);
        assert!(chi.is_real());
        assert!(!chi.is_principal());
    }

    #[test]
    fn rejects_broken_tables() {
        // not multiplicative: chi(3)chi(3) = chi(9 mod 5 = 4) fails
        let bad = DirichletCharacter::from_real(5, &[0.0, 1.0, 1.0, -1.0, 1.0]);
        assert!(matches!(bad, Err(Error::InvalidCharacter(_))));
        let support = DirichletCharacter::from_real(4, &[0.0, 1.0, 1.0, -1.0]);
        assert!(matches!(support, Err(Error::InvalidCharacter(_))));
        let order = DirichletCharacter::new(
            3,
            vec![0.0.into(), 1.0.into(), Complex64::from_polar(1.0, 0.5)],
        );
        assert!(order.is_err());
    }

    #[test]
    fn complex_character_mod5() {
        let i = Complex64::new(0.0, 1.0);
        let chi = DirichletCharacter::new(5, vec![0.0.into(), 1.0.into(), i, -i, (-1.0).into()])
            .unwrap();
        assert_eq!(chi.value_order(2), Some(4));
        assert_eq!(chi.value_order(4), Some(2));
        assert_eq!(chi.value_order(5), None);
    }

    #[test]
    fn parse_file_format() {
        let chi = DirichletCharacter::parse("# chi mod 4\n1 1\n3 -1\n").unwrap();
        assert_eq!(chi, DirichletCharacter::mod4());
        let c5 = DirichletCharacter::parse("modulus 5\n1 1 0\n2 0 1\n3 0 -1\n4 -1 0").unwrap();
        assert_eq!(c5.value(7), Complex64::new(0.0, 1.0));
        assert!(DirichletCharacter::parse("1 1\n3 x").is_err());
    }

    #[test]
    fn legendre_and_exponents() {
        let chi = DirichletCharacter::legendre(7).unwrap();
        assert_eq!(chi.value(2).re, 1.0);
        assert_eq!(chi.value(3).re, -1.0);
        assert_eq!(carmichael(8), 2);
        assert_eq!(carmichael(15), 4);
        assert_eq!(carmichael(1), 1);
        assert!(DirichletCharacter::principal(1).value(17) == Complex64::new(1.0, 0.0));
    }
}
