//! Fixed-precision p-adic arithmetic and convergent p-adic twisted series.
//!
//! With `alpha = p^j u` only the finitely many `n` with `j S(n) < K + g`
//! contribute modulo `p^(K+g)`, so series, Euler products and Mahler
//! expansions are all exact at the working precision.

mod analytic;
mod mahler;
mod scalar;
mod series;
mod source;

pub use analytic::{angle, angle_of, angle_pow, angle_pow_of, pexp, plog, teichmuller, teichmuller_of};
pub use mahler::{eval_mahler, mahler_coefficients, MahlerSeries};
pub use scalar::{PadicContext, PadicScalar};
pub use series::{eval_padic_euler, eval_padic_series, euler_threshold};
pub use source::{
    padic_character_source, IntegerSource, PadicCharacter, PadicCoefficientSource, PadicTwist,
    TrivialSource,
};

/// Default reported precision.
pub const DEFAULT_PRECISION: u32 = 8;
