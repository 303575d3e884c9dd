use std::f64::consts::PI;

use super::analytic::teichmuller;
use super::scalar::{PadicContext, PadicScalar};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::sources::{CoefficientSource, DirichletCharacter};

/// Arithmetic function with values in `Z_p`.
pub trait PadicCoefficientSource {
    fn coefficient(&self, ctx: &PadicContext, n: u64) -> Result<PadicScalar>;

    fn is_multiplicative(&self) -> bool {
        true
    }

    fn is_completely_multiplicative(&self) -> bool;

    fn name(&self) -> String;
}

/// `c(n) = 1` for every `n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialSource;

impl PadicCoefficientSource for TrivialSource {
    fn coefficient(&self, ctx: &PadicContext, _n: u64) -> Result<PadicScalar> {
        Ok(ctx.one())
    }

    fn is_completely_multiplicative(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        "trivial".into()
    }
}

/// Dirichlet character with values embedded through Teichmuller lifts.
#[derive(Debug, Clone)]
pub struct PadicCharacter {
    chi: DirichletCharacter,
    /// Embedded value for each residue class; `None` where `chi = 0`.
    values: Vec<Option<PadicScalar>>,
}

impl PadicCharacter {
    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }
}

impl PadicCoefficientSource for PadicCharacter {
    fn coefficient(&self, ctx: &PadicContext, n: u64) -> Result<PadicScalar> {
        let r = (n % self.chi.modulus()) as usize;
        Ok(match &self.values[r] {
            Some(v) => {
                assert_eq!(v.context(), ctx, "character embedded in another context");
                v.clone()
            }
            None => ctx.zero(),
        })
    }

    fn is_completely_multiplicative(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        format!("character mod {}", self.chi.modulus())
    }
}

fn primitive_root(p: u64) -> u64 {
    let factors: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut base = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Embeds `chi` into `Z_p`: a value `exp(2 pi i j / d)` maps to
/// `omega(g)^(j (p-1)/d)` for a fixed primitive root `g` mod `p`.
pub fn padic_character_source(chi: &DirichletCharacter, ctx: &PadicContext) -> Result<PadicCharacter> {
    let p = ctx.prime();
    let zeta = teichmuller(ctx, primitive_root(p) as i64)?;
    let q = chi.modulus();
    let mut values = Vec::with_capacity(q as usize);
    for r in 0..q {
        let Some(order) = chi.value_order(r) else {
            values.push(None);
            continue;
        };
        if (p - 1) % order != 0 {
            return Err(Error::NotEmbeddable {
                order,
                p_minus_one: p - 1,
            });
        }
        let v = chi.value(r);
        let j = (v.arg() / (2.0 * PI) * order as f64).round().rem_euclid(order as f64) as u64;
        values.push(Some(zeta.pow(j * (p - 1) / order)));
    }
    Ok(PadicCharacter {
        chi: chi.clone(),
        values,
    })
}

/// Integer-valued complex source read as `Z_p`-valued (e.g. `tau(n)`).
#[derive(Debug, Clone)]
pub struct IntegerSource {
    src: CoefficientSource,
}

impl IntegerSource {
    pub fn new(src: CoefficientSource) -> Self {
        IntegerSource { src }
    }
}

impl PadicCoefficientSource for IntegerSource {
    fn coefficient(&self, ctx: &PadicContext, n: u64) -> Result<PadicScalar> {
        let c = self.src.coefficient(n)?;
        let r = c.re.round();
        if c.im.abs() > 1e-6 || (c.re - r).abs() > 1e-6 * r.abs().max(1.0) || r.abs() > 9.0e15 {
            return Err(Error::InvalidArgument(format!("c({n}) = {c} is not a small integer")));
        }
        Ok(ctx.from_i64(r as i64))
    }

    fn is_completely_multiplicative(&self) -> bool {
        self.src.degree() == 1
    }

    fn name(&self) -> String {
        self.src.kind().name().to_string()
    }
}

/// `alpha = p^j u` with `j >= 1` and `u` a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicTwist {
    j: u32,
    unit: PadicScalar,
}

impl PadicTwist {
    pub fn new(j: u32, unit: PadicScalar) -> Result<Self> {
        if j == 0 {
            return Err(Error::NotContractive);
        }
        if !unit.is_unit() {
            return Err(Error::NotUnit(unit.to_string()));
        }
        Ok(PadicTwist { j, unit })
    }

    /// `alpha = p`.
    pub fn p(ctx: &PadicContext) -> Self {
        PadicTwist {
            j: 1,
            unit: ctx.one(),
        }
    }

    /// Reads `"p"`, `"p^2"`, `"3p"`, `"3*p^2"`.
    pub fn parse(ctx: &PadicContext, text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("p-adic twist {text:?}; expected u*p^j"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let pos = t.find('p').ok_or_else(|| Error::NotContractive)?;
        let (head, tail) = t.split_at(pos);
        let head = head.trim_end_matches('*');
        let unit = if head.is_empty() {
            ctx.one()
        } else {
            ctx.from_i64(head.parse().map_err(|_| bad())?)
        };
        let j = match &tail[1..] {
            "" => 1,
            rest => rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
        };
        Self::new(j, unit)
    }

    /// `v_p(alpha)`.
    pub fn valuation(&self) -> u32 {
        self.j
    }

    pub fn unit(&self) -> &PadicScalar {
        &self.unit
    }

    /// `alpha^m`.
    pub fn power(&self, m: u64) -> PadicScalar {
        let ctx = self.unit.context();
        ctx.prime_power(self.j as u64 * m) * self.unit.pow(m)
    }

    /// Largest `m` with `j m < K + g`; higher powers vanish.
    pub fn max_weight(&self) -> u64 {
        (self.unit.context().working_precision() as u64 - 1) / self.j as u64
    }
}
