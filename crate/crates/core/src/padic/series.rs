use super::analytic::angle_pow;
use super::scalar::{PadicContext, PadicScalar};
use super::source::{PadicCoefficientSource, PadicTwist};
use crate::arith::{primes_up_to, sopfr_preimages, MAX_PREIMAGE_WEIGHT};
use crate::error::{Error, Result};

/// `(n, S(n))` for every `n` prime to `p` whose term survives mod `p^(K+g)`.
pub(crate) fn exact_support(ctx: &PadicContext, t: &PadicTwist) -> Result<Vec<(u64, u64)>> {
    let m_max = t.max_weight();
    if m_max > MAX_PREIMAGE_WEIGHT {
        return Err(Error::InvalidArgument(format!(
            "exact support needs S(n) up to {m_max} > {MAX_PREIMAGE_WEIGHT}; lower K or raise v_p(alpha)"
        )));
    }
    let p = ctx.prime();
    let mut out = Vec::new();
    for m in 0..=m_max {
        out.extend(
            sopfr_preimages(m)
                .into_iter()
                .filter(|n| n % p != 0)
                .map(|n| (n, m)),
        );
    }
    Ok(out)
}

/// `sum_{(n,p)=1} alpha^S(n) c(n) <n>^-s`, exact mod `p^(K+g)`: every term
/// with `j S(n) >= K + g` vanishes.
pub fn eval_padic_series(
    ctx: &PadicContext,
    src: &dyn PadicCoefficientSource,
    t: &PadicTwist,
    s: &PadicScalar,
) -> Result<PadicScalar> {
    let minus_s = -s;
    let mut acc = ctx.zero();
    for (n, m) in exact_support(ctx, t)? {
        let c = src.coefficient(ctx, n)?;
        if c.is_zero() {
            continue;
        }
        acc = acc + t.power(m) * c * angle_pow(ctx, n as i64, &minus_s)?;
    }
    Ok(acc)
}

/// Smallest admissible prime bound: the largest prime `l != p` whose
/// factor is not already `1 mod p^(K+g)`.
pub fn euler_threshold(ctx: &PadicContext, t: &PadicTwist) -> u64 {
    primes_up_to(t.max_weight())
        .into_iter()
        .filter(|&l| l != ctx.prime())
        .max()
        .unwrap_or(1)
}

/// `prod_{l <= X, l != p}` of the local factors at `l`.
///
/// Completely multiplicative sources use `(1 - alpha^l c(l) <l>^-s)^-1`;
/// otherwise the local series `sum_e c(l^e) alpha^(e l) <l>^(-e s)` is
/// summed while its terms survive.
pub fn eval_padic_euler(
    ctx: &PadicContext,
    src: &dyn PadicCoefficientSource,
    t: &PadicTwist,
    s: &PadicScalar,
    x_bound: u64,
) -> Result<PadicScalar> {
    let required = euler_threshold(ctx, t);
    if x_bound < required {
        return Err(Error::InsufficientPrimeBound {
            given: x_bound,
            required,
        });
    }
    let minus_s = -s;
    let m_max = t.max_weight();
    let mut acc = ctx.one();
    // primes beyond m_max contribute factors equal to 1 mod p^(K+g)
    for l in primes_up_to(x_bound.min(m_max)) {
        if l == ctx.prime() {
            continue;
        }
        let shift = angle_pow(ctx, l as i64, &minus_s)?;
        let factor = if src.is_completely_multiplicative() {
            let x = t.power(l) * src.coefficient(ctx, l)? * &shift;
            debug_assert!(x.valuation() >= 1);
            (ctx.one() - x).inv()?
        } else {
            let mut local = ctx.one();
            let mut e = 1u64;
            let mut le = l;
            while e * l <= m_max {
                let term = t.power(e * l) * src.coefficient(ctx, le)? * shift.pow(e);
                local = local + term;
                e += 1;
                le *= l;
            }
            local
        };
        acc = acc * factor;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::source::{padic_character_source, IntegerSource, TrivialSource};
    use crate::sources::{newform_source, parse_ap_table, DirichletCharacter};
    use num_bigint::BigUint;

    #[test]
    fn golden_values_at_zero() {
        let ctx2 = PadicContext::new(5, 2).unwrap();
        let v = eval_padic_series(&ctx2, &TrivialSource, &PadicTwist::p(&ctx2), &ctx2.zero()).unwrap();
        assert_eq!(v.residue(), BigUint::from(1u32));
        let ctx3 = PadicContext::new(5, 3).unwrap();
        let v = eval_padic_series(&ctx3, &TrivialSource, &PadicTwist::p(&ctx3), &ctx3.zero()).unwrap();
        assert_eq!(v.residue(), BigUint::from(26u32));
    }

    #[test]
    fn value_at_zero_is_the_twisted_sum() {
        // s = 0 removes <n>^-s, leaving sum alpha^S(n) c(n) over the support
        let ctx = PadicContext::new(7, 5).unwrap();
        let t = PadicTwist::p(&ctx);
        let v = eval_padic_series(&ctx, &TrivialSource, &t, &ctx.zero()).unwrap();
        let mut direct = ctx.zero();
        for n in 1..200_000u64 {
            if n % 7 == 0 {
                continue;
            }
            let m = crate::arith::sopfr(n);
            if m <= t.max_weight() {
                direct = direct + t.power(m);
            }
        }
        assert!(v.agrees(&direct));
    }

    #[test]
    fn euler_product_matches_series() {
        for (p, s) in [(5u64, 0i64), (5, 1), (7, -1)] {
            let ctx = PadicContext::new(p, 8).unwrap();
            let t = PadicTwist::p(&ctx);
            let s = ctx.from_i64(s);
            let a = eval_padic_series(&ctx, &TrivialSource, &t, &s).unwrap();
            let b = eval_padic_euler(&ctx, &TrivialSource, &t, &s, 100).unwrap();
            assert!(a.agrees(&b), "p = {p}: {a} vs {b}");
        }
    }

    #[test]
    fn insufficient_bound() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let t = PadicTwist::p(&ctx);
        assert_eq!(euler_threshold(&ctx, &t), 19);
        let err = eval_padic_euler(&ctx, &TrivialSource, &t, &ctx.zero(), 17).unwrap_err();
        assert_eq!(err.label(), "insufficient prime bound");
    }

    #[test]
    fn non_completely_multiplicative_local_series() {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/delta_weight12.txt")).unwrap();
        let delta = newform_source(12, 1, DirichletCharacter::principal(1), parse_ap_table(&text).unwrap()).unwrap();
        let src = IntegerSource::new(delta);
        let ctx = PadicContext::new(11, 6).unwrap();
        let t = PadicTwist::p(&ctx);
        for s in [0i64, 1, -2] {
            let s = ctx.from_i64(s);
            let a = eval_padic_series(&ctx, &src, &t, &s).unwrap();
            let b = eval_padic_euler(&ctx, &src, &t, &s, 50).unwrap();
            assert!(a.agrees(&b));
        }
    }

    #[test]
    fn quadratic_character_product() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let chi = padic_character_source(&DirichletCharacter::mod4(), &ctx).unwrap();
        let t = PadicTwist::parse(&ctx, "2p").unwrap();
        let s = ctx.from_ratio(1, 2).unwrap();
        let a = eval_padic_series(&ctx, &chi, &t, &s).unwrap();
        let b = eval_padic_euler(&ctx, &chi, &t, &s, 1000).unwrap();
        assert!(a.agrees(&b));
    }
}
