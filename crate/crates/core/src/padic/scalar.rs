use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    p: u64,
    k: u32,
    guard: u32,
    modulus: BigUint,
    reported: BigUint,
}

/// Prime `p`, reported precision `K` and guard digits `g`; arithmetic runs
/// modulo `p^(K+g)` and results are trusted modulo `p^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicContext(Arc<Inner>);

impl PadicContext {
    /// Context with the default guard `g = K/2 + 8`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_guard(p, k, k / 2 + 8)
    }

    pub fn with_guard(p: u64, k: u32, guard: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
        }
        if k < 2 || guard < 1 {
            return Err(Error::InvalidArgument(format!("need K >= 2 and g >= 1, got K = {k}, g = {guard}")));
        }
        let pb = BigUint::from(p);
        Ok(PadicContext(Arc::new(Inner {
            p,
            k,
            guard,
            modulus: pb.pow(k + guard),
            reported: pb.pow(k),
        })))
    }

    pub fn prime(&self) -> u64 {
        self.0.p
    }

    /// Reported precision `K`.
    pub fn precision(&self) -> u32 {
        self.0.k
    }

    pub fn guard(&self) -> u32 {
        self.0.guard
    }

    /// Working precision `K + g`.
    pub fn working_precision(&self) -> u32 {
        self.0.k + self.0.guard
    }

    /// `p^(K+g)`.
    pub fn modulus(&self) -> &BigUint {
        &self.0.modulus
    }

    /// `p^K`.
    pub fn reported_modulus(&self) -> &BigUint {
        &self.0.reported
    }

    pub fn zero(&self) -> PadicScalar {
        self.from_biguint(BigUint::zero())
    }

    pub fn one(&self) -> PadicScalar {
        self.from_biguint(BigUint::one())
    }

    pub fn from_i64(&self, n: i64) -> PadicScalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_u64(&self, n: u64) -> PadicScalar {
        self.from_biguint(BigUint::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicScalar {
        let m = BigInt::from_biguint(Sign::Plus, self.modulus().clone());
        let r = n.mod_floor(&m);
        self.from_biguint(r.to_biguint().expect("mod_floor is nonnegative"))
    }

    pub fn from_biguint(&self, n: BigUint) -> PadicScalar {
        PadicScalar {
            residue: n % self.modulus(),
            ctx: self.clone(),
        }
    }

    /// `num / den` in `Z_p`; `den` must be a unit.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<PadicScalar> {
        Ok(self.from_i64(num) * self.from_i64(den).inv()?)
    }

    /// `p^e` (zero once `e >= K + g`).
    pub fn prime_power(&self, e: u64) -> PadicScalar {
        if e >= self.working_precision() as u64 {
            return self.zero();
        }
        self.from_biguint(BigUint::from(self.prime()).pow(e as u32))
    }

    /// Reads `"a/b"`, an integer, or `"p^K : r"`.
    pub fn parse(&self, text: &str) -> Result<PadicScalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("p-adic value {text:?}"));
        if let Some((_, r)) = text.split_once(':') {
            let r: BigUint = r.trim().parse().map_err(|_| bad())?;
            return Ok(self.from_biguint(r));
        }
        if let Some((a, b)) = text.split_once('/') {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            return self.from_ratio(a, b);
        }
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(self.from_bigint(&n))
    }
}

/// Element of `Z_p` held modulo `p^(K+g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicScalar {
    residue: BigUint,
    ctx: PadicContext,
}

impl PadicScalar {
    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    /// Residue modulo `p^(K+g)`.
    pub fn working_residue(&self) -> &BigUint {
        &self.residue
    }

    /// Trusted residue modulo `p^K`.
    pub fn residue(&self) -> BigUint {
        &self.residue % self.ctx.reported_modulus()
    }

    /// Residue modulo `p^e` for `e <= K + g`.
    pub fn residue_mod_power(&self, e: u32) -> BigUint {
        &self.residue % BigUint::from(self.ctx.prime()).pow(e)
    }

    /// Whether both values agree modulo `p^K`.
    pub fn agrees(&self, other: &PadicScalar) -> bool {
        self.residue() == other.residue()
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// `v_p`, capped at `K + g` for zero.
    pub fn valuation(&self) -> u32 {
        let cap = self.ctx.working_precision();
        if self.residue.is_zero() {
            return cap;
        }
        let p = BigUint::from(self.ctx.prime());
        let mut r = self.residue.clone();
        let mut v = 0;
        while (&r % &p).is_zero() {
            r /= &p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.ctx.prime()).is_zero()
    }

    pub fn inv(&self) -> Result<PadicScalar> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.to_string()));
        }
        let m = BigInt::from_biguint(Sign::Plus, self.ctx.modulus().clone());
        let a = BigInt::from_biguint(Sign::Plus, self.residue.clone());
        let e = a.extended_gcd(&m);
        Ok(self.ctx.from_bigint(&e.x))
    }

    pub fn pow(&self, e: u64) -> PadicScalar {
        self.ctx
            .from_biguint(self.residue.modpow(&BigUint::from(e), self.ctx.modulus()))
    }

    /// Signed power; negative exponents need a unit.
    pub fn powi(&self, e: i64) -> Result<PadicScalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    fn check(&self, other: &PadicScalar) {
        assert!(
            self.ctx == other.ctx,
            "p-adic values from different contexts"
        );
    }
}

impl fmt::Display for PadicScalar {
    /// `"p^K : residue"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} : {}", self.ctx.prime(), self.ctx.precision(), self.residue())
    }
}

impl Add<&PadicScalar> for &PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: &PadicScalar) -> PadicScalar {
        self.check(rhs);
        self.ctx.from_biguint(&self.residue + &rhs.residue)
    }
}

impl Sub<&PadicScalar> for &PadicScalar {
    type Output = PadicScalar;
    fn sub(self, rhs: &PadicScalar) -> PadicScalar {
        self.check(rhs);
        self.ctx
            .from_biguint(&self.residue + self.ctx.modulus() - &rhs.residue)
    }
}

impl Mul<&PadicScalar> for &PadicScalar {
    type Output = PadicScalar;
    fn mul(self, rhs: &PadicScalar) -> PadicScalar {
        self.check(rhs);
        self.ctx.from_biguint(&self.residue * &rhs.residue)
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.ctx.from_biguint(self.ctx.modulus() - &self.residue)
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: &PadicScalar) -> PadicScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_validation() {
        assert!(PadicContext::new(2, 8).is_err());
        assert!(PadicContext::new(9, 8).is_err());
        assert!(PadicContext::new(5, 1).is_err());
        let ctx = PadicContext::new(5, 8).unwrap();
        assert_eq!(ctx.guard(), 12);
        assert_eq!(ctx.working_precision(), 20);
    }

    #[test]
    fn ring_operations() {
        let ctx = PadicContext::new(7, 4).unwrap();
        let a = ctx.from_i64(-3);
        let b = ctx.from_u64(10);
        assert_eq!((&a + &b).residue(), BigUint::from(7u32));
        assert_eq!((&a * &b + ctx.from_u64(30)).residue(), BigUint::zero());
        let half = ctx.from_ratio(1, 2).unwrap();
        assert!((half.clone() * ctx.from_u64(2)).agrees(&ctx.one()));
        assert_eq!(ctx.from_u64(98).valuation(), 2);
        assert_eq!(ctx.zero().valuation(), ctx.working_precision());
        assert_eq!(ctx.from_u64(14).inv().unwrap_err().label(), "not a unit");
        assert!((a.powi(-3).unwrap() * a.pow(3)).agrees(&ctx.one()));
    }

    #[test]
    fn display_and_parse() {
        let ctx = PadicContext::new(5, 3).unwrap();
        let x = ctx.from_u64(126);
        assert_eq!(x.to_string(), "5^3 : 1");
        assert!(ctx.parse("5^3 : 26").unwrap().agrees(&ctx.from_u64(26)));
        assert!(ctx.parse("-1").unwrap().agrees(&ctx.from_u64(124)));
        let h = ctx.parse("1/2").unwrap();
        assert_eq!(h.residue(), BigUint::from(63u32));
        assert!(ctx.parse("x").is_err());
    }
}
