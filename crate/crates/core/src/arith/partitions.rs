//! Partitions of an integer into prime parts.
//!
//! `theta(m)` counts multisets of primes summing to `m`. Since every
//! multiset of primes is the factorisation of exactly one integer, the
//! preimage `S^{-1}(m)` has `theta(m)` elements.

use super::sieve::primes_up_to;

/// Largest `m` accepted by [`sopfr_preimages`]: `3^(m/3)` must fit in `u64`.
pub const MAX_PREIMAGE_WEIGHT: u64 = 120;

/// `theta(0..=m_max)`, or `None` if some value overflows `u128`.
pub fn try_theta_table(m_max: u64) -> Option<Vec<u128>> {
    let len = m_max as usize + 1;
    let mut ways = vec![0u128; len];
    ways[0] = 1;
    for p in primes_up_to(m_max) {
        let p = p as usize;
        for m in p..len {
            ways[m] = ways[m].checked_add(ways[m - p])?;
        }
    }
    Some(ways)
}

/// `theta(0..=m_max)` with `theta(0) = 1` and `theta(1) = 0`.
///
/// Panics when a value exceeds `u128` (around `m = 5000`).
pub fn theta_table(m_max: u64) -> Vec<u128> {
    try_theta_table(m_max).expect("prime partition count overflows u128")
}

pub fn try_theta(m: u64) -> Option<u128> {
    try_theta_table(m).map(|t| t[m as usize])
}

/// Number of partitions of `m` into prime parts.
pub fn theta(m: u64) -> u128 {
    theta_table(m)[m as usize]
}

/// All multisets of primes summing to `m`, each as a factorisation
/// `[(p, e), ...]` with increasing `p`.
pub fn prime_partitions(m: u64) -> Vec<Vec<(u64, u32)>> {
    let primes = primes_up_to(m);
    let mut out = Vec::new();
    let mut current: Vec<(u64, u32)> = Vec::new();
    collect_partitions(m, &primes, 0, &mut current, &mut out);
    out
}

fn collect_partitions(
    remaining: u64,
    primes: &[u64],
    from: usize,
    current: &mut Vec<(u64, u32)>,
    out: &mut Vec<Vec<(u64, u32)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, &p) in primes.iter().enumerate().skip(from) {
        if p > remaining {
            break;
        }
        let max_e = remaining / p;
        for e in 1..=max_e {
            current.push((p, e as u32));
            collect_partitions(remaining - e * p, primes, i + 1, current, out);
            current.pop();
        }
    }
}

/// The sorted preimage `{n : S(n) = m}`.
pub fn sopfr_preimages(m: u64) -> Vec<u64> {
    assert!(
        m <= MAX_PREIMAGE_WEIGHT,
        "preimages of m > {MAX_PREIMAGE_WEIGHT} overflow u64"
    );
    let mut ns: Vec<u64> = prime_partitions(m)
        .iter()
        .map(|f| f.iter().map(|&(p, e)| p.pow(e)).product())
        .collect();
    ns.sort_unstable();
    ns
}
