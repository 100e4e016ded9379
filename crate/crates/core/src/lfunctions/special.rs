//! Gamma, incomplete gamma and Hurwitz zeta over the complex numbers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance from `z` to the nearest pole of Γ.
pub fn pole_distance(z: Complex64) -> f64 {
    let k = z.re.round().min(0.0);
    (z - Complex64::new(k, 0.0)).norm()
}

fn ln_sin_pi(z: Complex64) -> Complex64 {
    // ln sin(πz) without overflow for large |Im z|; branch is irrelevant
    // because callers exponentiate
    let w = z * PI;
    let two_i = Complex64::new(0.0, 2.0);
    let ln_two_i = two_i.ln();
    if w.im > 0.0 {
        let e = (Complex64::i() * 2.0 * w).exp();
        -Complex64::i() * w - ln_two_i + (e - 1.0).ln()
    } else {
        let e = (-Complex64::i() * 2.0 * w).exp();
        Complex64::i() * w - ln_two_i + (1.0 - e).ln()
    }
}

/// `ln Γ(z)` (some branch), Lanczos with `g = 7`; reflection for `Re z < 1/2`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x)/Γ(a)` for
/// `Re a > 0`, `x >= 0`.
pub fn gamma_q(a: Complex64, x: f64) -> Result<Complex64> {
    if a.re <= 0.0 {
        return Err(Error::Domain(format!("incomplete gamma needs Re a > 0, got {a}")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("incomplete gamma needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if x < a.re + 1.0 {
        Ok(1.0 - lower_series(a, x)?)
    } else {
        upper_fraction(a, x)
    }
}

fn lower_series(a: Complex64, x: f64) -> Result<Complex64> {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.norm() < sum.norm() * 1e-17 {
            let pref = (a * x.ln() - x - ln_gamma(a)).exp();
            return Ok(sum * pref);
        }
    }
    Err(Error::Certification(format!("incomplete gamma series did not converge at a={a}, x={x}")))
}

fn upper_fraction(a: Complex64, x: f64) -> Result<Complex64> {
    // modified Lentz on Γ(a, x) = e^{-x} x^a / (x+1-a- 1(1-a)/(x+3-a- ...))
    let tiny = 1e-300;
    let mut b = Complex64::new(x + 1.0, 0.0) - a;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            let pref = (a * x.ln() - x - ln_gamma(a)).exp();
            return Ok(h * pref);
        }
    }
    Err(Error::Certification(format!("incomplete gamma fraction did not converge at a={a}, x={x}")))
}

// B_2, B_4, ..., B_16
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz `ζ(s, x)` for `x > 0`, `s ≠ 1`, by Euler–Maclaurin with eight
/// Bernoulli corrections after shifting the argument past 20. Returns the
/// value and a bound on the remainder.
pub fn hurwitz_zeta(s: Complex64, x: f64) -> Result<(Complex64, f64)> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("Hurwitz zeta needs x > 0, got {x}")));
    }
    if (s - 1.0).norm() < 1e-8 {
        return Err(Error::GammaPole(format!("Hurwitz zeta pole at s = {s}")));
    }
    let n = (20.0 - x).ceil().max(0.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    // small terms first
    for k in (0..n).rev() {
        sum += Complex64::new(x + k as f64, 0.0).powc(-s);
    }
    let big = x + n as f64;
    let ln_big = big.ln();
    let pow = |e: Complex64| (e * ln_big).exp();
    sum += pow(1.0 - s) / (s - 1.0);
    sum += 0.5 * pow(-s);
    // rising factorial (s)_{2j-1} / (2j)!
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let k = 2 * j + 1; // current odd order 2j+1 = 2(j+1)-1
        sum += *b / fact * rising * pow(-s - k as f64);
        rising *= (s + k as f64) * (s + (k + 1) as f64);
        fact *= ((k + 2) * (k + 3)) as f64;
    }
    // remainder through the periodic B_17: |B̃_17| <= 2 ζ(17) 17!/(2π)^17
    let mut r17 = Complex64::new(1.0, 0.0);
    for k in 0..17 {
        r17 *= s + k as f64;
    }
    let sigma = s.re;
    if sigma + 16.0 <= 0.0 {
        return Err(Error::Domain(format!("Hurwitz zeta remainder not certified at s = {s}")));
    }
    let bound = 2.000_016 / (2.0 * PI).powi(17) * r17.norm() * big.powf(-sigma - 16.0) / (sigma + 16.0);
    Ok((sum, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(c(5.0, 0.0)) - c(24.0, 0.0)).norm() < 1e-12);
        assert!((gamma(c(0.5, 0.0)) - c(PI.sqrt(), 0.0)).norm() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)) - c(-2.0 * PI.sqrt(), 0.0)).norm() < 1e-13);
        // |Γ(1/2 + it)|² = π / cosh(πt)
        for t in [0.3, 2.0, 17.0] {
            let v = gamma(c(0.5, t)).norm_sqr();
            assert!((v / (PI / (PI * t).cosh()) - 1.0).abs() < 1e-12, "{t}");
        }
        // recurrence with complex argument
        // (the phase of ln Γ has size |z| ln|z|, so absolute rounding grows
        // with the height)
        for (z, tol) in [(c(0.3, 1.2), 1e-14), (c(2.7, -4.0), 1e-14), (c(-2.3, 0.7), 1e-14), (c(0.05, 30.0), 1e-12)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs / rhs - 1.0).norm() < tol, "{z}: {}", (lhs / rhs - 1.0).norm());
        }
    }

    #[test]
    fn incomplete_gamma_values() {
        // Q(1, x) = e^{-x}
        for x in [0.01, 0.7, 1.9, 2.1, 10.0, 40.0] {
            let v = gamma_q(c(1.0, 0.0), x).unwrap();
            assert!((v.re - (-x).exp()).abs() < 1e-15 * (1.0 + (-x).exp()), "{x}");
        }
        // Q(1/2, x) = erfc(√x); erfc(1) = 0.157299207050285130658779
        let v = gamma_q(c(0.5, 0.0), 1.0).unwrap();
        assert!((v.re - 0.157_299_207_050_285_13).abs() < 1e-15);
        // both branches agree near the switch, complex a
        let a = c(0.75, 0.4);
        let s = 1.0 - lower_series(a, 2.0).unwrap();
        let f = upper_fraction(a, 2.0).unwrap();
        assert!((s - f).norm() < 1e-14);
        assert_eq!(gamma_q(a, 0.0).unwrap(), c(1.0, 0.0));
        assert!(gamma_q(c(-0.5, 0.0), 1.0).is_err());
    }

    #[test]
    fn hurwitz_values() {
        // ζ(2, 1) = π²/6, ζ(1/2, 1) = ζ(1/2) = -1.4603545088095868
        let (v, e) = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14 && e < 1e-15);
        let (v, _) = hurwitz_zeta(c(0.5, 0.0), 1.0).unwrap();
        assert!((v.re + 1.460_354_508_809_586_8).abs() < 1e-14);
        // ζ(s, 1/2) = (2^s - 1) ζ(s)
        let (half, _) = hurwitz_zeta(c(0.5, 0.0), 0.5).unwrap();
        assert!((half.re - (2f64.sqrt() - 1.0) * -1.460_354_508_809_586_8).abs() < 1e-14);
        // shift relation ζ(s, x) = x^{-s} + ζ(s, x+1)
        let s = c(0.5, 3.0);
        let (a, _) = hurwitz_zeta(s, 0.3).unwrap();
        let (b, _) = hurwitz_zeta(s, 1.3).unwrap();
        assert!((a - b - c(0.3, 0.0).powc(-s)).norm() < 1e-13);
        assert!(hurwitz_zeta(c(1.0, 0.0), 0.5).is_err());
    }
}
