use crate::error::{Error, Result};

/// Largest prime accepted by [`count_points`].
pub const MAX_POINT_COUNT_PRIME: u64 = 100_000;

/// Short Weierstrass curve `y^2 = x^3 + a x + b` over the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticCurve {
    a: i64,
    b: i64,
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let curve = EllipticCurve { a, b };
        if curve.discriminant() == 0 {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `-16 (4 a^3 + 27 b^2)`.
    pub fn discriminant(&self) -> i128 {
        let a = self.a as i128;
        let b = self.b as i128;
        -16 * (4 * a * a * a + 27 * b * b)
    }

    pub fn has_bad_model_at(&self, p: u64) -> bool {
        self.discriminant() % p as i128 == 0
    }
}

/// `|E(F_p)|` including the point at infinity, via quadratic-residue counts.
pub fn count_points(curve: &EllipticCurve, p: u64) -> Result<u64> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if p > MAX_POINT_COUNT_PRIME {
        return Err(Error::PrimeBoundExceeded {
            prime: p,
            bound: MAX_POINT_COUNT_PRIME,
        });
    }
    if curve.has_bad_model_at(p) {
        return Err(Error::BadReduction(p));
    }
    let pu = p as usize;
    // chi[r] = 1 + legendre(r, p) = number of y with y^2 = r
    let mut roots = vec![0u8; pu];
    for y in 0..p {
        roots[((y * y) % p) as usize] += 1;
    }
    let a = curve.a.rem_euclid(p as i64) as u64;
    let b = curve.b.rem_euclid(p as i64) as u64;
    let mut count = 1u64;
    for x in 0..p {
        let rhs = ((x * x % p * x) % p + a * x % p + b) % p;
        count += roots[rhs as usize] as u64;
    }
    Ok(count)
}

/// Frobenius trace `a_p = p + 1 - |E(F_p)|`.
pub fn frobenius_trace(curve: &EllipticCurve, p: u64) -> Result<i64> {
    Ok(p as i64 + 1 - count_points(curve, p)? as i64)
}
