use super::analytic::{angle, binomial};
use super::scalar::{PadicContext, PadicScalar};
use super::series::exact_support;
use super::source::{PadicCoefficientSource, PadicTwist};
use crate::error::{Error, Result};

/// Coefficients `M_0..M_n` of `L_p(s) = sum_n M_n binom(-s, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahlerSeries {
    pub coefficients: Vec<PadicScalar>,
}

/// `M_n = sum_{(a,p)=1} alpha^S(a) c(a) (<a> - 1)^n` over the exact support.
pub fn mahler_coefficients(
    ctx: &PadicContext,
    src: &dyn PadicCoefficientSource,
    t: &PadicTwist,
    n_max: u32,
) -> Result<MahlerSeries> {
    if n_max > ctx.working_precision() {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} > K + g = {}",
            ctx.working_precision()
        )));
    }
    let mut coefficients = vec![ctx.zero(); n_max as usize + 1];
    for (a, m) in exact_support(ctx, t)? {
        let c = src.coefficient(ctx, a)?;
        if c.is_zero() {
            continue;
        }
        let mut term = t.power(m) * c;
        let shifted = angle(ctx, a as i64)? - ctx.one();
        for slot in coefficients.iter_mut() {
            *slot = &*slot + &term;
            term = term * &shifted;
        }
    }
    Ok(MahlerSeries { coefficients })
}

/// `sum_n M_n binom(-s, n)`.
pub fn eval_mahler(ms: &MahlerSeries, s: &PadicScalar) -> PadicScalar {
    let ctx = s.context();
    let minus_s = -s;
    let mut acc = ctx.zero();
    for (n, m) in ms.coefficients.iter().enumerate() {
        // v_p(M_n) >= n
        if n as u32 >= ctx.working_precision() {
            break;
        }
        acc = acc + m * binomial(&minus_s, n as u64);
    }
    acc
}
