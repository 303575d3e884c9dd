use num_complex::Complex64;

use super::sieve::Sieve;
use super::sopfr::{psi_table, TwistParameter};
use crate::error::{Error, Result};

/// Dense arithmetical function `c(1..=N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientArray {
    // values[0] is c(1)
    values: Vec<Complex64>,
}

impl CoefficientArray {
    pub fn new(values: Vec<Complex64>) -> Self {
        assert!(!values.is_empty(), "coefficient array must have N >= 1");
        CoefficientArray { values }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(u64) -> Complex64) -> Self {
        Self::new((1..=len as u64).map(&mut f).collect())
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// The unit `delta_1` of the convolution ring.
    pub fn delta(len: usize) -> Self {
        Self::from_fn(len, |n| Complex64::new(if n == 1 { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn ones(len: usize) -> Self {
        Self::from_fn(len, |_| Complex64::new(1.0, 0.0))
    }

    /// The Mobius function on `1..=len`.
    pub fn mobius(len: usize) -> Self {
        let sieve = Sieve::new(len);
        Self::from_fn(len, |n| {
            let f = sieve.factorize(n as usize);
            let v = if f.iter().any(|&(_, e)| e > 1) {
                0.0
            } else if f.len() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            Complex64::new(v, 0.0)
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `c(n)` for `1 <= n <= N`.
    pub fn get(&self, n: u64) -> Complex64 {
        self.values[n as usize - 1]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `(f * g)(n) = sum_{d | n} f(d) g(n/d)` for `n <= N`.
pub fn dirichlet_convolve(f: &CoefficientArray, g: &CoefficientArray) -> CoefficientArray {
    assert_eq!(f.len(), g.len(), "convolution needs equal lengths");
    let n = f.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        let fd = f.values[d - 1];
        if fd == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (k, m) in (d..=n).step_by(d).enumerate() {
            out[m - 1] += fd * g.values[k];
        }
    }
    CoefficientArray::new(out)
}

/// Inverse under Dirichlet convolution; requires `f(1) != 0`.
pub fn dirichlet_inverse(f: &CoefficientArray) -> Result<CoefficientArray> {
    let f1 = f.values[0];
    if f1.norm() == 0.0 {
        return Err(Error::NotInvertible);
    }
    let n = f.len();
    let inv_f1 = f1.inv();
    // acc[m] accumulates sum_{d | m, d < m} g(d) f(m/d) as g(d) becomes known.
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    let mut g = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        g[d - 1] = if d == 1 { inv_f1 } else { -inv_f1 * acc[d - 1] };
        let gd = g[d - 1];
        for (k, m) in (2 * d..=n).step_by(d).enumerate() {
            acc[m - 1] += gd * f.values[k + 1];
        }
    }
    Ok(CoefficientArray::new(g))
}

/// Pointwise product with `psi(n) = alpha^S(n)`.
pub fn twist(f: &CoefficientArray, t: &TwistParameter) -> CoefficientArray {
    let sieve = Sieve::new(f.len());
    let psi = psi_table(t, &sieve.sopfr_table());
    CoefficientArray::new(
        f.values
            .iter()
            .enumerate()
            .map(|(i, &c)| c * psi[i + 1])
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_divisor_counts() {
        let g = CoefficientArray::from_real(&[3.0, -1.0, 2.5, 0.0, 7.0, 1.0]);
        assert_eq!(dirichlet_convolve(&CoefficientArray::delta(6), &g), g);
        let tau = dirichlet_convolve(&CoefficientArray::ones(6), &CoefficientArray::ones(6));
        assert_eq!(tau, CoefficientArray::from_real(&[1.0, 2.0, 2.0, 3.0, 2.0, 4.0]));
    }

    #[test]
    fn mobius_inversion() {
        let n = 300;
        let prod = dirichlet_convolve(&CoefficientArray::mobius(n), &CoefficientArray::ones(n));
        assert!(prod.max_abs_diff(&CoefficientArray::delta(n)) < 1e-12);
        let inv = dirichlet_inverse(&CoefficientArray::ones(n)).unwrap();
        assert!(inv.max_abs_diff(&CoefficientArray::mobius(n)) < 1e-12);
        let d = dirichlet_inverse(&CoefficientArray::delta(n)).unwrap();
        assert_eq!(d, CoefficientArray::delta(n));
    }

    #[test]
    fn inverse_rejects_zero_constant_term() {
        let f = CoefficientArray::from_real(&[0.0, 1.0, 1.0]);
        assert_eq!(dirichlet_inverse(&f), Err(Error::NotInvertible));
    }

    #[test]
    fn twisted_inverse_of_ones_is_twisted_mobius() {
        let t = TwistParameter::closed(Complex64::new(0.3, 0.8)).unwrap();
        let n = 400;
        let lhs = dirichlet_inverse(&twist(&CoefficientArray::ones(n), &t)).unwrap();
        let rhs = twist(&CoefficientArray::mobius(n), &t);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn twist_trivial_cases() {
        let f = CoefficientArray::from_real(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(twist(&f, &TwistParameter::closed(1.0).unwrap()), f);
        let t = TwistParameter::open(0.4).unwrap();
        assert_eq!(twist(&CoefficientArray::delta(50), &t), CoefficientArray::delta(50));
    }
}
