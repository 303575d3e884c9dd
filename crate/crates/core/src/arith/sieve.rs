use std::sync::OnceLock;

/// Smallest-prime-factor table over `0..=limit`, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: usize) -> Self {
        let limit = limit.max(1);
        assert!(limit < u32::MAX as usize, "sieve limit too large");
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Sieve { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Smallest prime factor of `n`; `n` must be in `2..=limit`.
    #[inline]
    pub fn spf(&self, n: usize) -> u32 {
        self.spf[n]
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// Prime factorisation as `(p, e)` pairs in increasing `p`.
    pub fn factorize(&self, mut n: usize) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    /// `S(n)` for every `n` in `0..=limit` (entry 0 is unused and set to 0).
    pub fn sopfr_table(&self) -> Vec<u64> {
        let mut s = vec![0u64; self.spf.len()];
        for n in 2..s.len() {
            let p = self.spf[n] as usize;
            s[n] = s[n / p] + p as u64;
        }
        s
    }
}

const TRIAL_LIMIT: usize = 1_000_000;
/// Below this, plain division by 2 and odd candidates beats building the table.
const DIRECT_LIMIT: u64 = 1 << 32;

fn trial_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| Sieve::new(TRIAL_LIMIT).primes)
}

/// Factorises an isolated integer by trial division.
///
/// Inputs below 2^32 use direct division. Larger ones use a shared table of
/// primes up to 10^6, so every `n <= 10^12` is handled by the table alone;
/// larger cofactors fall back to division by odd candidates.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    if n < DIRECT_LIMIT {
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            out.push((n, 1));
        }
        return out;
    }
    for &p in trial_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut d = TRIAL_LIMIT as u64 + 1;
    while n > 1 && d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Primes in `2..=limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit <= TRIAL_LIMIT as u64 {
        let table = trial_primes();
        let end = table.partition_point(|&p| p as u64 <= limit);
        table[..end].iter().map(|&p| p as u64).collect()
    } else {
        Sieve::new(limit as usize)
            .primes
            .into_iter()
            .map(u64::from)
            .collect()
    }
}

/// Iterator over primes `>= start`, in increasing order and without bound.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    let table = trial_primes();
    let first = table.partition_point(|&p| (p as u64) < start);
    let tail_start = start.max(TRIAL_LIMIT as u64 + 1);
    table[first..]
        .iter()
        .map(|&p| p as u64)
        .chain((tail_start..).filter(|&n| is_prime(n)))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = Sieve::new(5000);
        for n in 2..=5000usize {
            assert_eq!(sieve.factorize(n), factorize(n as u64), "n = {n}");
        }
        assert_eq!(sieve.primes().len(), 669);
    }

    #[test]
    fn large_isolated_factorisations() {
        // 999983 and 1000003 straddle the shared table's limit.
        assert_eq!(factorize(999_983 * 1_000_003), vec![(999_983, 1), (1_000_003, 1)]);
        assert_eq!(factorize(1 << 40), vec![(2, 40)]);
        assert_eq!(factorize(1_000_003u64 * 1_000_003), vec![(1_000_003, 2)]);
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn prime_iteration_crosses_table_limit() {
        let ps: Vec<u64> = primes_from(999_980).take(3).collect();
        assert_eq!(ps, vec![999_983, 1_000_003, 1_000_033]);
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
