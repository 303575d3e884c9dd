use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use psitwist::arith::factorize;
use psitwist::fixtures;
use psitwist::padic::{
    padic_character_source, IntegerSource, PadicCoefficientSource, PadicContext, TrivialSource,
};
use psitwist::sources::{
    character_source, elliptic_source, newform_source, parse_ap_table, zeta_source,
    CoefficientSource, DirichletCharacter, EllipticCurve, MAX_POINT_COUNT_PRIME,
};
use psitwist::Complex64;
use serde::{Deserialize, Serialize};

/// Environment variable naming the directory searched for data files.
pub const DATA_DIR_VAR: &str = "PSITWIST_DATA_DIR";

/// Complex number from `"x"`, `"x,y"` or `"x+yi"`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?));
    }
    t.parse::<Complex64>()
        .map_err(|_| anyhow!("invalid argument: cannot read {text:?} as a complex number"))
}

pub fn parse_f64(text: &str) -> Result<f64> {
    text.trim()
        .parse()
        .map_err(|_| anyhow!("invalid argument: cannot read {text:?} as a number"))
}

/// Inclusive integer range from `"a..b"` or a single value.
pub fn parse_int_range(text: &str) -> Result<(u64, u64)> {
    let bad = || anyhow!("invalid argument: malformed range {text:?}; expected a..b or n");
    let (lo, hi) = match text.trim().split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().trim_start_matches('=').parse().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Real grid from `"a:b:step"`, `"a..b"` (unit step) or a single value.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || anyhow!("invalid argument: malformed grid {text:?}; expected a:b:step, a..b or x");
    let t = text.trim();
    let (lo, hi, step) = if let Some((a, b)) = t.split_once("..") {
        (parse_f64(a)?, parse_f64(b)?, 1.0)
    } else {
        let parts: Vec<&str> = t.split(':').collect();
        match parts.as_slice() {
            [x] => (parse_f64(x)?, parse_f64(x)?, 1.0),
            [a, b, s] => (parse_f64(a)?, parse_f64(b)?, parse_f64(s)?),
            _ => return Err(bad()),
        }
    };
    if !(step > 0.0) || lo > hi {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// `path` as given if it exists, otherwise relative to `$PSITWIST_DATA_DIR`.
pub fn resolve_data_path(path: &Path) -> Result<PathBuf> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    if path.is_relative() {
        if let Some(dir) = std::env::var_os(DATA_DIR_VAR) {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                return Ok(candidate);
            }
        }
    }
    bail!("invalid argument: data file {} not found (also searched ${DATA_DIR_VAR})", path.display())
}

fn read_data(path: &Path) -> Result<String> {
    let p = resolve_data_path(path)?;
    std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))
}

/// Options selecting a coefficient source.
#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SourceArgs {
    /// zeta, chi, ec, newform, 11a, delta (complex); trivial, chi, newform,
    /// 11a, delta (p-adic)
    #[arg(long)]
    pub source: Option<String>,
    /// Character: mod4, legendre:q, principal:q, or a character file
    #[arg(long)]
    pub chi: Option<String>,
    /// Curve coefficients "a b" of y^2 = x^3 + a x + b
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Comma-separated conductor primes (default: primes dividing the discriminant)
    #[arg(long)]
    pub conductor_primes: Option<String>,
    /// Bad-prime coefficients "p:c,..." with c in {-1, 0, 1} (default 0)
    #[arg(long, allow_hyphen_values = true)]
    pub bad_coeffs: Option<String>,
    /// Newform coefficient file with lines "p a_p"
    #[arg(long)]
    pub ap_file: Option<PathBuf>,
    /// Newform weight k
    #[arg(long)]
    pub weight: Option<u32>,
    /// Newform level
    #[arg(long)]
    pub level: Option<u64>,
    /// Largest prime whose a_p is counted for curves
    #[arg(long)]
    pub prime_bound: Option<u64>,
}

pub fn character(spec: &str) -> Result<DirichletCharacter> {
    let spec = spec.trim();
    let num = |s: &str| -> Result<u64> {
        s.trim().parse().map_err(|_| anyhow!("invalid character: bad modulus in {spec:?}"))
    };
    Ok(if spec == "mod4" {
        DirichletCharacter::mod4()
    } else if spec == "trivial" {
        DirichletCharacter::principal(1)
    } else if let Some(q) = spec.strip_prefix("legendre:") {
        DirichletCharacter::legendre(num(q)?)?
    } else if let Some(q) = spec.strip_prefix("principal:") {
        DirichletCharacter::principal(num(q)?)
    } else {
        DirichletCharacter::parse(&read_data(Path::new(spec))?)?
    })
}

fn parse_primes(text: &str) -> Result<BTreeSet<u64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| anyhow!("invalid argument: bad prime {s:?} in conductor primes"))
        })
        .collect()
}

fn parse_bad_coeffs(text: &str) -> Result<BTreeMap<u64, i64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (p, c) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("invalid argument: bad coefficient {pair:?}; expected p:c"))?;
            Ok((
                p.trim().parse().map_err(|_| anyhow!("invalid argument: prime in {pair:?}"))?,
                c.trim().parse().map_err(|_| anyhow!("invalid argument: value in {pair:?}"))?,
            ))
        })
        .collect()
}

fn newform(args: &SourceArgs, name: &str) -> Result<CoefficientSource> {
    let (text, weight, level) = match name {
        "11a" => (fixtures::NEWFORM_11A.to_string(), 2, 11),
        "delta" => (fixtures::DELTA.to_string(), 12, 1),
        _ => {
            let path = args
                .ap_file
                .as_ref()
                .ok_or_else(|| anyhow!("invalid argument: --source newform needs --ap-file"))?;
            let level = args
                .level
                .ok_or_else(|| anyhow!("invalid argument: --source newform needs --level"))?;
            (read_data(path)?, args.weight.unwrap_or(2), level)
        }
    };
    Ok(newform_source(
        weight,
        level,
        DirichletCharacter::principal(1),
        parse_ap_table(&text)?,
    )?)
}

impl SourceArgs {
    fn kind(&self, default: &str) -> String {
        self.source.clone().unwrap_or_else(|| default.to_string())
    }

    /// Complex source; curves count `a_p` up to at least `needed_primes`.
    pub fn complex(&self, needed_primes: u64) -> Result<CoefficientSource> {
        let kind = self.kind("zeta");
        match kind.as_str() {
            "zeta" => Ok(zeta_source()),
            "chi" => {
                let spec = self.chi.as_deref().ok_or_else(|| anyhow!("invalid argument: --source chi needs --chi"))?;
                Ok(character_source(character(spec)?))
            }
            "ec" => {
                let text = self.curve.as_deref().ok_or_else(|| anyhow!("invalid argument: --source ec needs --curve \"a b\""))?;
                let coeffs: Vec<i64> = text
                    .split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| anyhow!("invalid argument: curve coefficient {s:?}")))
                    .collect::<Result<_>>()?;
                let [a, b] = coeffs[..] else {
                    bail!("invalid argument: --curve needs two integers, got {text:?}");
                };
                let curve = EllipticCurve::new(a, b)?;
                let conductor = match &self.conductor_primes {
                    Some(t) => parse_primes(t)?,
                    None => {
                        let disc = curve.discriminant().unsigned_abs();
                        factorize(u64::try_from(disc).map_err(|_| anyhow!("invalid argument: discriminant too large; pass --conductor-primes"))?)
                            .into_iter()
                            .map(|(p, _)| p)
                            .collect()
                    }
                };
                let bad = match &self.bad_coeffs {
                    Some(t) => parse_bad_coeffs(t)?,
                    None => BTreeMap::new(),
                };
                let bound = self
                    .prime_bound
                    .unwrap_or(0)
                    .max(needed_primes)
                    .max(1000)
                    .min(MAX_POINT_COUNT_PRIME);
                Ok(elliptic_source(curve, &conductor, &bad, bound)?)
            }
            "newform" | "11a" | "delta" => newform(self, &kind),
            other => bail!("invalid argument: unknown complex source {other:?}"),
        }
    }

    /// Source with values in `Z_p`.
    pub fn padic(&self, ctx: &PadicContext) -> Result<Box<dyn PadicCoefficientSource>> {
        let kind = self.kind("trivial");
        Ok(match kind.as_str() {
            "trivial" => Box::new(TrivialSource),
            "chi" => {
                let spec = self.chi.as_deref().ok_or_else(|| anyhow!("invalid argument: --source chi needs --chi"))?;
                Box::new(padic_character_source(&character(spec)?, ctx)?)
            }
            "newform" | "11a" | "delta" => Box::new(IntegerSource::new(newform(self, &kind)?)),
            other => bail!("invalid argument: unknown p-adic source {other:?}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_grids() {
        assert_eq!(parse_int_range("1..10").unwrap(), (1, 10));
        assert_eq!(parse_int_range("7").unwrap(), (7, 7));
        assert!(parse_int_range("10..1").is_err());
        assert!(parse_int_range("x").is_err());
        assert_eq!(parse_grid("1..3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_grid("0.01:0.99:0.01").unwrap().len(), 99);
        assert!(parse_grid("1:0:0.1").is_err());
    }

    #[test]
    fn complex_numbers() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.3,0.4").unwrap(), Complex64::new(0.3, 0.4));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn curve_defaults_to_discriminant_primes() {
        let args = SourceArgs {
            source: Some("ec".into()),
            curve: Some(" -1 0".into()),
            ..Default::default()
        };
        let src = args.complex(100).unwrap();
        assert_eq!(src.bad_primes().iter().copied().collect::<Vec<_>>(), vec![2]);
    }
}
