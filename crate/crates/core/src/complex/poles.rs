use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{primes_from, TwistParameter};
use crate::error::Result;
use crate::sources::CoefficientSource;

/// One zero of a local factor `P_p(alpha^p p^-s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub prime: u64,
    /// 1-based index of the inverse root `c_{p,i}`.
    pub root_index: usize,
    pub branch: i64,
    pub location: Complex64,
}

/// All poles coming from one inverse root: `base + 2 pi i k / ln p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleFamily {
    pub prime: u64,
    pub root_index: usize,
    /// Location for branch `k = 0`.
    pub base: Complex64,
    /// Imaginary spacing `2 pi / ln p`.
    pub spacing: f64,
}

impl PoleFamily {
    pub fn real_part(&self) -> f64 {
        self.base.re
    }

    pub fn pole(&self, branch: i64) -> Pole {
        Pole {
            prime: self.prime,
            root_index: self.root_index,
            branch,
            location: self.base + Complex64::new(0.0, self.spacing * branch as f64),
        }
    }
}

fn families_at(src: &CoefficientSource, t: &TwistParameter, p: u64) -> Result<Vec<PoleFamily>> {
    let lp = (p as f64).ln();
    let log_alpha_p = t.alpha().ln() * p as f64;
    let factor = src.local_factor(p)?;
    Ok(factor
        .inverse_roots
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| PoleFamily {
            prime: p,
            root_index: i + 1,
            base: (log_alpha_p + c.ln()) / lp,
            spacing: 2.0 * PI / lp,
        })
        .collect())
}

fn good_line(src: &CoefficientSource, t: &TwistParameter, p: u64) -> f64 {
    let pf = p as f64;
    pf / pf.ln() * t.log_modulus() + src.weight() as f64 / 2.0
}

fn by_real_part(a: &PoleFamily, b: &PoleFamily) -> Ordering {
    b.real_part()
        .total_cmp(&a.real_part())
        .then(a.prime.cmp(&b.prime))
        .then(a.root_index.cmp(&b.root_index))
}

/// Pole families with real part `>= re_min`, by decreasing real part.
pub fn pole_families(
    src: &CoefficientSource,
    t: &TwistParameter,
    re_min: f64,
) -> Result<Vec<PoleFamily>> {
    if t.modulus() == 0.0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for p in primes_from(2) {
        // for p >= 3 every later prime has a smaller real part
        if p >= 3 && good_line(src, t, p) < re_min {
            break;
        }
        out.extend(
            families_at(src, t, p)?
                .into_iter()
                .filter(|f| f.real_part() >= re_min),
        );
    }
    out.sort_by(by_real_part);
    Ok(out)
}

/// The `count` pole families with the largest real parts.
pub fn top_pole_families(
    src: &CoefficientSource,
    t: &TwistParameter,
    count: usize,
) -> Result<Vec<PoleFamily>> {
    if t.modulus() == 0.0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for p in primes_from(2).take(count + 1) {
        out.extend(families_at(src, t, p)?);
    }
    // bad primes with zero roots leave gaps; keep pulling primes until full
    let mut extra = primes_from(2).skip(count + 1);
    while out.len() < count + 1 {
        out.extend(families_at(src, t, extra.next().expect("unbounded"))?);
    }
    out.sort_by(by_real_part);
    out.truncate(count);
    Ok(out)
}

/// Every pole with `re_min <= Re(s) <= re_max` and `|Im(s)| <= im_max`,
/// sorted by decreasing real part, then increasing `|Im(s)|`.
pub fn poles(
    src: &CoefficientSource,
    t: &TwistParameter,
    re_min: f64,
    re_max: f64,
    im_max: f64,
) -> Result<Vec<Pole>> {
    let mut out = Vec::new();
    for family in pole_families(src, t, re_min)? {
        if family.real_part() > re_max {
            continue;
        }
        let lo = ((-im_max - family.base.im) / family.spacing).ceil() as i64;
        let hi = ((im_max - family.base.im) / family.spacing).floor() as i64;
        out.extend((lo..=hi).map(|k| family.pole(k)));
    }
    out.sort_by(|a, b| {
        b.location
            .re
            .total_cmp(&a.location.re)
            .then(a.location.im.abs().total_cmp(&b.location.im.abs()))
            .then(a.prime.cmp(&b.prime))
            .then(a.root_index.cmp(&b.root_index))
            .then(a.branch.cmp(&b.branch))
    });
    Ok(out)
}

/// Residual `|P_p(alpha^p p^-s)|` at a pole location.
pub fn verify_pole(src: &CoefficientSource, t: &TwistParameter, pole: &Pole) -> Result<f64> {
    verify_location(src, t, pole.prime, pole.location)
}

/// `|P_p(alpha^p p^-s)|` at an arbitrary point.
pub fn verify_location(
    src: &CoefficientSource,
    t: &TwistParameter,
    p: u64,
    s: Complex64,
) -> Result<f64> {
    let factor = src.local_factor(p)?;
    let x = t.power(p) * (-s * (p as f64).ln()).exp();
    Ok(factor.eval(x).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sources::{elliptic_source, zeta_source, EllipticCurve};
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn zeta_lattice_at_one_half() {
        let t = TwistParameter::open(0.5).unwrap();
        let list = poles(&zeta_source(), &t, -3.0, 0.0, 20.0).unwrap();
        let top = list[0].location.re;
        assert!((top + 3.0 * 2f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert_eq!(list[0].prime, 3);
        let two: Vec<&Pole> = list.iter().filter(|p| p.prime == 2).collect();
        assert!(!two.is_empty());
        for p in &two {
            assert!((p.location.re + 2.0).abs() < 1e-12);
            let k = p.branch as f64;
            assert!((p.location.im - 2.0 * PI * k / 2f64.ln()).abs() < 1e-10);
        }
        for pole in list.iter().take(30) {
            assert!(verify_pole(&zeta_source(), &t, pole).unwrap() < 1e-10);
            let mut moved = *pole;
            moved.location += 0.01;
            assert!(verify_pole(&zeta_source(), &t, &moved).unwrap() > 1e-4);
        }
    }

    #[test]
    fn ordering() {
        let t = TwistParameter::open(Complex64::new(0.3, 0.4)).unwrap();
        let list = poles(&zeta_source(), &t, -6.0, 1.0, 30.0).unwrap();
        for w in list.windows(2) {
            let (a, b) = (w[0].location, w[1].location);
            assert!(a.re > b.re || (a.re == b.re && a.im.abs() <= b.im.abs()));
        }
        assert!(list.iter().all(|p| p.location.im.abs() <= 30.0));
    }

    #[test]
    fn elliptic_families_sit_on_weight_line() {
        let e = EllipticCurve::new(-1, 0).unwrap();
        let src = elliptic_source(e, &BTreeSet::from([2]), &BTreeMap::new(), 1000).unwrap();
        let t = TwistParameter::open(0.8).unwrap();
        let fams = pole_families(&src, &t, -20.0).unwrap();
        assert!(fams.iter().all(|f| f.prime != 2));
        for f in &fams {
            let p = f.prime as f64;
            assert!((f.real_part() - (p / p.ln() * 0.8f64.ln() + 0.5)).abs() < 1e-10);
        }
        // the two roots at a good prime give distinct families unless equal
        let at5: Vec<&PoleFamily> = fams.iter().filter(|f| f.prime == 5).collect();
        assert_eq!(at5.len(), 2);
        assert!((at5[0].base - at5[1].base).norm() > 1e-6);
        for f in fams.iter().take(10) {
            for k in -3..=3 {
                assert!(verify_pole(&src, &t, &f.pole(k)).unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn top_families_follow_prime_order() {
        let t = TwistParameter::open(0.5).unwrap();
        let top = top_pole_families(&zeta_source(), &t, 30).unwrap();
        let primes: Vec<u64> = top.iter().take(4).map(|f| f.prime).collect();
        assert_eq!(primes, vec![3, 2, 5, 7]);
        assert_eq!(top.len(), 30);
    }
}
