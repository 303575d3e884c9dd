use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integral value with an estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    let mut samples = [(Complex64::default(), Complex64::default()); 7];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (lo, hi) = (f(center - dx), f(center + dx));
        kron += (lo + hi) * WGK[j];
        abs += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
        *sample = (lo, hi);
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).norm() * WGK[7];
    for (j, (lo, hi)) in samples.iter().enumerate() {
        asc += ((lo - mean).norm() + (hi - mean).norm()) * WGK[j];
    }
    let (abs, asc) = (abs * half.abs(), asc * half.abs());
    let mut error = ((kron - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs);
    }
    Panel {
        a,
        b,
        value: kron * half,
        error,
    }
}

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature of a complex integrand
/// on `[a, b]`, bisecting the worst panel until the summed error estimate is
/// at most `tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    let mut panels = vec![kronrod(&f, a, b)];
    loop {
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= tol {
            let value = panels.iter().map(|p| p.value).sum();
            return Ok(Integral { value, error });
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureFailure(error));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("nonempty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::QuadratureFailure(error));
        }
        panels.push(kronrod(&f, p.a, mid));
        panels.push(kronrod(&f, mid, p.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| Complex64::new(x.powi(20), -x), 0.0, 1.0, 1e-14, 10).unwrap();
        assert!((r.value - Complex64::new(1.0 / 21.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn oscillatory_and_peaked() {
        let r = integrate(|x| Complex64::new(0.0, 30.0 * x).exp(), 0.0, PI, 1e-12, 500).unwrap();
        let exact = (Complex64::new(0.0, 30.0 * PI).exp() - 1.0) / Complex64::new(0.0, 30.0);
        assert!((r.value - exact).norm() < 1e-11);
        let r = integrate(|x| Complex64::new(1.0 / (1e-4 + x * x), 0.0), -1.0, 1.0, 1e-10, 500)
            .unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value.re - exact).abs() < 1e-8 * exact);
    }

    #[test]
    fn failure_is_reported() {
        let err = integrate(|x| Complex64::new(x.sin() / x.powi(3), 0.0), 0.0, 1.0, 1e-10, 20)
            .unwrap_err();
        assert_eq!(err.label(), "quadrature failure");
    }
}
