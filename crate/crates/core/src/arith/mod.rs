//! Integer logarithm, the twist character and the convolution ring.

mod dirichlet;
mod partitions;
mod sieve;
mod sopfr;

pub use dirichlet::{dirichlet_convolve, dirichlet_inverse, twist, CoefficientArray};
pub use partitions::{
    prime_partitions, sopfr_preimages, theta, theta_table, try_theta, try_theta_table,
    MAX_PREIMAGE_WEIGHT,
};
pub use sieve::{factorize, gcd, is_prime, primes_from, primes_up_to, Sieve};
pub use sopfr::{
    psi, sopfr, sopfr_lower_bound, sopfr_partial_sum, sopfr_partial_sum_main_term,
    TwistConstraint, TwistParameter,
};

pub(crate) use sopfr::psi_table;
