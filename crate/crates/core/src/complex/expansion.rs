use num_complex::Complex64;

use crate::arith::prime_partitions;
use crate::error::{Error, Result};
use crate::sources::CoefficientSource;

/// Largest order accepted by [`alpha_expansion`].
pub const MAX_EXPANSION_ORDER: u64 = 60;

/// Coefficients of the rearrangement in powers of `alpha`:
/// `A_m = sum_{S(n) = m} c(n) n^-s` for `m = 0..=M`.
pub fn alpha_expansion(
    src: &CoefficientSource,
    s: Complex64,
    m_max: u64,
) -> Result<Vec<Complex64>> {
    if m_max > MAX_EXPANSION_ORDER {
        return Err(Error::InvalidArgument(format!(
            "expansion order {m_max} > {MAX_EXPANSION_ORDER}"
        )));
    }
    (0..=m_max)
        .map(|m| {
            let mut total = Complex64::new(0.0, 0.0);
            for factorisation in prime_partitions(m) {
                let mut term = Complex64::new(1.0, 0.0);
                for (p, e) in factorisation {
                    let c = src.prime_power(p, e)?;
                    term *= c * (-s * (e as f64 * (p as f64).ln())).exp();
                }
                total += term;
            }
            Ok(total)
        })
        .collect()
}
