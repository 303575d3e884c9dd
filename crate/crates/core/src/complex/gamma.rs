use std::f64::consts::PI;

use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma function (Lanczos, `g = 7`), about 15 significant digits.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma(c(n as f64, 0.0));
            assert!((g.re - f).abs() <= 1e-13 * f, "{n}");
            assert!(g.im.abs() <= 1e-13 * f);
            f *= n as f64;
        }
    }

    #[test]
    fn half_integers_and_reflection() {
        assert!((gamma(c(0.5, 0.0)).re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)).re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn recurrence_off_axis() {
        for &z in &[c(0.3, 2.0), c(2.5, -1.7), c(-1.2, 0.4), c(7.0, 5.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "{z}");
        }
    }

    #[test]
    fn modulus_on_critical_line() {
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        for y in [0.5, 1.0, 3.0] {
            let g = gamma(c(0.5, y)).norm_sqr();
            assert!((g - PI / (PI * y).cosh()).abs() < 1e-13 * g.max(1e-3));
        }
    }
}
