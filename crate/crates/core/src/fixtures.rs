//! Bundled coefficient tables.

/// `p a_p` for the weight-2 newform of level 11, primes below 20000.
pub const NEWFORM_11A: &str = include_str!("../data/11a_weight2.txt");

/// `p tau(p)` for the discriminant form of weight 12, primes below 3000.
pub const DELTA: &str = include_str!("../data/delta_weight12.txt");
