//! Twisted L-functions built on the integer logarithm.
//!
//! The integer logarithm `S(n)` is the sum of the prime factors of `n`
//! counted with multiplicity. For a fixed `alpha` the map
//! `psi(n) = alpha^S(n)` is a completely multiplicative character, and
//! twisting the coefficients of an L-function by `psi` gives
//!
//! ```text
//! L(s, psi) = sum_n alpha^S(n) c(n) n^-s = prod_p 1 / P_p(alpha^p p^-s)
//! ```
//!
//! The crate is split into four layers:
//!
//! - [`arith`]: `S(n)`, `psi`, prime-partition counts and the Dirichlet
//!   convolution ring with its twist isomorphism.
//! - [`sources`]: coefficient providers for the Riemann zeta function,
//!   Dirichlet characters, newforms and elliptic curves.
//! - [`complex`]: series, Euler-product and split evaluation over the
//!   complex numbers, abscissas, pole lattices, magnitude bounds, the
//!   alpha-power expansion and a Mellin-transform cross-check.
//! - [`padic`]: fixed-precision p-adic arithmetic, the Teichmuller
//!   character, and twisted p-adic Dirichlet series with their Euler
//!   products and Mahler expansions.

pub mod arith;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod padic;
pub mod sources;

pub use error::{Error, Result};
pub use num_complex::Complex64;
