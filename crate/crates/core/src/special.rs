//! Special functions: log-gamma on the complex plane (Lanczos), digamma, and
//! the upper incomplete gamma function for real arguments.

use num_complex::Complex64;

// Lanczos coefficients (g = 7, n = 9).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of log Gamma(z) for Re(z) > 0.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0, "ln_gamma_complex needs Re(z) > 0");
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// log Gamma(x) for real x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_complex(Complex64::new(x, 0.0)).re
}

/// Gamma(z)/Gamma(w) for Re(z), Re(w) > 0.
pub fn gamma_ratio(z: Complex64, w: Complex64) -> Complex64 {
    (ln_gamma_complex(z) - ln_gamma_complex(w)).exp()
}

/// Digamma function for real x > 0.
pub fn digamma(x: f64) -> f64 {
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series.
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + x.ln() - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
}

/// Regularized lower incomplete gamma P(a, x) by series (x < a + 1).
fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a + 1).
fn gamma_q_cf(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-17 {
            break;
        }
    }
    h * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Upper incomplete gamma Gamma(a, x) for a > 0, x >= 0 (not regularized).
pub fn upper_incomplete_gamma(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return ln_gamma(a).exp();
    }
    let q = if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    };
    q * ln_gamma(a).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-13);
        assert!((ln_gamma(2.0)).abs() < 1e-13);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
        // Gamma(13) = 12!.
        let g13: f64 = (1..=12).product::<u64>() as f64;
        assert!((ln_gamma(13.0) - g13.ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_gamma_complex_conjugate_symmetry_and_recurrence() {
        let z = Complex64::new(3.7, 2.1);
        let a = ln_gamma_complex(z);
        let b = ln_gamma_complex(z.conj());
        assert!((a - b.conj()).norm() < 1e-12);
        // Gamma(z+1) = z Gamma(z).
        let lhs = ln_gamma_complex(z + 1.0);
        let rhs = ln_gamma_complex(z) + z.ln();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn gamma_magnitude_on_vertical_line() {
        // |Gamma(2 + it)| = |(1+it)(it)| |Gamma(it)| and
        // |Gamma(it)|^2 = pi / (t sinh(pi t)).
        let t = 3.0f64;
        let got = ln_gamma_complex(Complex64::new(2.0, t)).re.exp();
        let gamma_it_sq = std::f64::consts::PI / (t * (std::f64::consts::PI * t).sinh());
        let expect =
            (Complex64::new(1.0, t) * Complex64::new(0.0, t)).norm() * gamma_it_sq.sqrt();
        assert!((got / expect - 1.0).abs() < 1e-11);
    }

    #[test]
    fn digamma_known_values() {
        const EULER: f64 = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + EULER).abs() < 1e-12);
        // psi(n) = -gamma + H_{n-1}.
        let h8: f64 = (1..=8).map(|k| 1.0 / k as f64).sum();
        assert!((digamma(9.0) - (h8 - EULER)).abs() < 1e-12);
    }

    #[test]
    fn incomplete_gamma_limits_and_recurrence() {
        // Gamma(a, 0) = Gamma(a).
        assert!((upper_incomplete_gamma(5.5, 0.0) - ln_gamma(5.5).exp()).abs() < 1e-9);
        // Gamma(1, x) = e^{-x}.
        for x in [0.1f64, 1.0, 5.0, 20.0] {
            assert!((upper_incomplete_gamma(1.0, x) - (-x).exp()).abs() < 1e-14);
        }
        // Recurrence Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}.
        for a in [0.7, 2.5, 6.5, 12.5] {
            for x in [0.3, 2.0, 9.0, 40.0] {
                let lhs = upper_incomplete_gamma(a + 1.0, x);
                let rhs = a * upper_incomplete_gamma(a, x) + x.powf(a) * (-x).exp();
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-280),
                    "a={a} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }
}
