use num_bigint::BigUint;
use num_traits::One;

use super::scalar::{PadicContext, PadicScalar};
use crate::error::{Error, Result};

fn unit_of(ctx: &PadicContext, a: i64) -> Result<PadicScalar> {
    let x = ctx.from_i64(a);
    if !x.is_unit() {
        return Err(Error::NotUnit(a.to_string()));
    }
    Ok(x)
}

/// `omega(x)`: the `(p-1)`-th root of unity congruent to the unit `x` mod `p`.
pub fn teichmuller_of(x: &PadicScalar) -> Result<PadicScalar> {
    if !x.is_unit() {
        return Err(Error::NotUnit(x.to_string()));
    }
    let p = x.context().prime();
    let mut cur = x.clone();
    for _ in 0..=x.context().working_precision() {
        let next = cur.pow(p);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    unreachable!("x -> x^p gains one digit per step")
}

/// Teichmuller representative `omega(a)`.
pub fn teichmuller(ctx: &PadicContext, a: i64) -> Result<PadicScalar> {
    teichmuller_of(&unit_of(ctx, a)?)
}

/// `<x> = x / omega(x)`, a principal unit.
pub fn angle_of(x: &PadicScalar) -> Result<PadicScalar> {
    let w = teichmuller_of(x)?;
    let out = x * w.inv()?;
    assert!(
        (&out - &x.context().one()).valuation() >= 1,
        "angle must be 1 mod p"
    );
    Ok(out)
}

/// `<a> = a / omega(a)`.
pub fn angle(ctx: &PadicContext, a: i64) -> Result<PadicScalar> {
    angle_of(&unit_of(ctx, a)?)
}

fn p_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `log_p(u) = sum_{n>=1} (-1)^(n+1) (u-1)^n / n` for `u = 1 mod p`.
pub fn plog(u: &PadicScalar) -> Result<PadicScalar> {
    let ctx = u.context();
    let y = u - &ctx.one();
    if y.valuation() == 0 {
        return Err(Error::LogDomain);
    }
    let p = ctx.prime();
    let big_p = BigUint::from(p);
    let prec = ctx.working_precision();
    let mut acc = ctx.zero();
    let mut n = 1u64;
    // v_p((u-1)^n / n) >= n - floor(log_p n), nondecreasing in n
    while n - (n.ilog(p) as u64) < prec as u64 {
        let v = p_valuation(n, p);
        let m = big_p.pow(prec + v);
        let yn = y.working_residue().modpow(&BigUint::from(n), &m);
        let term = ctx.from_biguint(yn / big_p.pow(v)) * ctx.from_u64(n / p.pow(v)).inv()?;
        acc = if n % 2 == 1 { acc + term } else { acc - term };
        n += 1;
    }
    Ok(acc)
}

/// `exp_p(x) = sum_n x^n / n!` for `x = 0 mod p`.
pub fn pexp(x: &PadicScalar) -> Result<PadicScalar> {
    let ctx = x.context();
    if x.valuation() == 0 {
        return Err(Error::ExpDomain);
    }
    let p = ctx.prime();
    let big_p = BigUint::from(p);
    let prec = ctx.working_precision() as u64;
    let mut acc = ctx.one();
    let mut fact_unit = ctx.one();
    let mut fact_v = 0u32;
    let mut n = 1u64;
    // v_p(x^n / n!) >= n (p-2)/(p-1) + 1/(p-1)
    while n * (p - 2) + 1 < prec * (p - 1) {
        let v = p_valuation(n, p);
        fact_v += v;
        fact_unit = fact_unit * ctx.from_u64(n / p.pow(v));
        let m = big_p.pow(prec as u32 + fact_v);
        let xn = x.working_residue().modpow(&BigUint::from(n), &m);
        acc = acc + ctx.from_biguint(xn / big_p.pow(fact_v)) * fact_unit.inv()?;
        n += 1;
    }
    Ok(acc)
}

/// `<x>^s = exp_p(s log_p <x>)` for a unit `x` and `s` in `Z_p`.
pub fn angle_pow_of(x: &PadicScalar, s: &PadicScalar) -> Result<PadicScalar> {
    let l = plog(&angle_of(x)?)?;
    pexp(&(s * &l))
}

/// `<a>^s` for an integer unit `a`.
pub fn angle_pow(ctx: &PadicContext, a: i64, s: &PadicScalar) -> Result<PadicScalar> {
    angle_pow_of(&unit_of(ctx, a)?, s)
}

/// `binom(x, n)` for `x` in `Z_p`, from an integer representative of `x`.
pub(crate) fn binomial(x: &PadicScalar, n: u64) -> PadicScalar {
    let ctx = x.context();
    let p = ctx.prime();
    let big_p = BigUint::from(p);
    let prec = ctx.working_precision();
    let mut fact_v = 0;
    let mut fact_unit = BigUint::one();
    for i in 1..=n {
        let v = p_valuation(i, p);
        fact_v += v;
        fact_unit *= BigUint::from(i / p.pow(v));
    }
    let m = big_p.pow(prec + fact_v);
    let r = x.working_residue();
    let mut num = BigUint::one() % &m;
    for i in 0..n {
        num = num * ((r + &m - BigUint::from(i) % &m) % &m) % &m;
    }
    let unit = ctx.from_biguint(fact_unit);
    ctx.from_biguint(num / big_p.pow(fact_v)) * unit.inv().expect("unit part of n!")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn teichmuller_of_two_mod_25() {
        let ctx = PadicContext::with_guard(5, 2, 1).unwrap();
        let w = teichmuller(&ctx, 2).unwrap();
        assert_eq!(w.residue(), BigUint::from(7u32));
        let ctx = PadicContext::new(5, 2).unwrap();
        assert_eq!(teichmuller(&ctx, 2).unwrap().residue(), BigUint::from(7u32));
        assert!(teichmuller(&ctx, 1).unwrap().agrees(&ctx.one()));
        assert_eq!(teichmuller(&ctx, 10).unwrap_err().label(), "not a unit");
    }

    #[test]
    fn angle_of_seven() {
        let ctx = PadicContext::new(5, 2).unwrap();
        assert!(angle(&ctx, 7).unwrap().agrees(&ctx.one()));
        assert!(angle(&ctx, 1).unwrap().agrees(&ctx.one()));
    }

    #[test]
    fn log_exp_edges() {
        let ctx = PadicContext::new(7, 6).unwrap();
        assert!(plog(&ctx.one()).unwrap().is_zero());
        assert!(pexp(&ctx.zero()).unwrap().agrees(&ctx.one()));
        assert_eq!(plog(&ctx.from_u64(3)).unwrap_err().label(), "outside logarithm domain");
        assert_eq!(pexp(&ctx.from_u64(3)).unwrap_err().label(), "outside exponential domain");
    }

    #[test]
    fn log_of_known_value() {
        // log_3(4) = sum (-1)^(n+1) 3^n / n, summed far past the precision
        let ctx = PadicContext::new(3, 10).unwrap();
        let l = plog(&ctx.from_u64(4)).unwrap();
        let big = PadicContext::with_guard(3, 10, 40).unwrap();
        let mut acc = big.zero();
        for n in 1..200u64 {
            let v = p_valuation(n, 3);
            let t = big.prime_power(n - v as u64) * big.from_u64(n / 3u64.pow(v)).inv().unwrap();
            acc = if n % 2 == 1 { acc + t } else { acc - t };
        }
        assert_eq!(l.residue(), acc.residue());
    }

    #[test]
    fn integer_powers_and_inverse() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let a2 = angle(&ctx, 2).unwrap();
        let cube = angle_pow(&ctx, 2, &ctx.from_i64(3)).unwrap();
        assert!(cube.agrees(&a2.pow(3)));
        let inv = angle_pow(&ctx, 2, &ctx.from_i64(-1)).unwrap();
        assert!((inv * &a2).agrees(&ctx.one()));
        assert!(angle_pow(&ctx, 2, &ctx.zero()).unwrap().agrees(&ctx.one()));
    }

    #[test]
    fn binomial_matches_integers() {
        let ctx = PadicContext::new(3, 6).unwrap();
        for (x, n, exact) in [(10i64, 3u64, 120i64), (-1, 5, -1), (-2, 4, 5), (7, 9, 0)] {
            assert!(binomial(&ctx.from_i64(x), n).agrees(&ctx.from_i64(exact)), "{x} {n}");
        }
        // binom(1/2, 2) = -1/8
        let half = ctx.from_ratio(1, 2).unwrap();
        assert!(binomial(&half, 2).agrees(&ctx.from_ratio(-1, 8).unwrap()));
    }

    #[test]
    fn random_units_satisfy_character_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [5u64, 7, 11] {
            let ctx = PadicContext::new(p, 8).unwrap();
            for _ in 0..50 {
                let a: i64 = rng.gen_range(1..100_000);
                let b: i64 = rng.gen_range(1..100_000);
                if a as u64 % p == 0 || b as u64 % p == 0 {
                    continue;
                }
                let (wa, wb) = (teichmuller(&ctx, a).unwrap(), teichmuller(&ctx, b).unwrap());
                assert!((&wa * &wb).agrees(&teichmuller(&ctx, a * b).unwrap()));
                let (aa, ab) = (angle(&ctx, a).unwrap(), angle(&ctx, b).unwrap());
                assert!((&aa * &ab).agrees(&angle(&ctx, a * b).unwrap()));
            }
        }
    }
}
