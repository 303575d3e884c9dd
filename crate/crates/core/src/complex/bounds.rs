use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::arith::{primes_from, TwistParameter};
use crate::error::{Error, Result};
use crate::sources::CoefficientSource;

/// Prime sums stop once `u_p` falls below this and keeps decreasing.
const U_CUTOFF: f64 = 1e-18;

/// Sandwich `lower <= |L_S(s)| <= upper` on the line `Re(s) = sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsPair {
    pub lower: f64,
    pub upper: f64,
    pub sigma: f64,
    pub alpha: Complex64,
}

/// The data the bounds depend on: degree, weight and the excluded primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalShape {
    pub degree: u32,
    pub weight: u32,
    pub bad_primes: BTreeSet<u64>,
}

impl LocalShape {
    pub fn new(degree: u32, weight: u32) -> Self {
        LocalShape {
            degree,
            weight,
            bad_primes: BTreeSet::new(),
        }
    }

    pub fn of(src: &CoefficientSource) -> Self {
        LocalShape {
            degree: src.degree(),
            weight: src.weight(),
            bad_primes: src.bad_primes().clone(),
        }
    }
}

/// Bounds for the product over good primes, starting at `remove_below`
/// when given.
pub fn bounds(
    src: &CoefficientSource,
    t: &TwistParameter,
    sigma: f64,
    remove_below: Option<u64>,
) -> Result<BoundsPair> {
    bounds_for(&LocalShape::of(src), t, sigma, remove_below)
}

/// `exp(-sum d u_p) <= |L_S| <= exp(sum d u_p / (1 - u_p))` with
/// `u_p = |alpha|^p p^(w/2 - sigma)`.
pub fn bounds_for(
    shape: &LocalShape,
    t: &TwistParameter,
    sigma: f64,
    remove_below: Option<u64>,
) -> Result<BoundsPair> {
    let log_alpha = t.log_modulus();
    let d = shape.degree as f64;
    let exponent = shape.weight as f64 / 2.0 - sigma;
    let mut lower_sum = 0.0;
    let mut upper_sum = 0.0;
    if log_alpha > f64::NEG_INFINITY {
        let mut previous = f64::INFINITY;
        for p in primes_from(remove_below.unwrap_or(2).max(2)) {
            if shape.bad_primes.contains(&p) {
                continue;
            }
            let pf = p as f64;
            let u = (pf * log_alpha + exponent * pf.ln()).exp();
            if u >= 1.0 {
                return Err(Error::BoundUndefined { prime: p, value: u });
            }
            lower_sum += d * u;
            upper_sum += d * u / (1.0 - u);
            if u < U_CUTOFF && u < previous {
                break;
            }
            previous = u;
        }
    }
    Ok(BoundsPair {
        lower: (-lower_sum).exp(),
        upper: upper_sum.exp(),
        sigma,
        alpha: t.alpha(),
    })
}
