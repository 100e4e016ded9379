//! Smooth compactly supported test functions and their transforms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::numeric::{integrate, tanh_sinh};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// `exp(-1/((x-1)(2-x)))` on `(1, 2)`.
    Bump12,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightFunction {
    pub kind: WeightKind,
    /// `w̃(1) = ∫ w(x) dx`, via the Mellin transform.
    pub mellin_at_one: f64,
    /// `ŵ(0)`, via the Fourier transform.
    pub fourier_at_zero: f64,
}

impl WeightFunction {
    pub fn bump12() -> Self {
        let mut w = WeightFunction {
            kind: WeightKind::Bump12,
            mellin_at_one: 0.0,
            fourier_at_zero: 0.0,
        };
        w.mellin_at_one = w.mellin(Complex64::new(1.0, 0.0)).re;
        w.fourier_at_zero = w.fourier(0.0).re;
        w
    }

    pub fn id(&self) -> &'static str {
        match self.kind {
            WeightKind::Bump12 => "bump12",
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            WeightKind::Bump12 => (1.0, 2.0),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            WeightKind::Bump12 => {
                if x <= 1.0 || x >= 2.0 {
                    0.0
                } else {
                    (-1.0 / ((x - 1.0) * (2.0 - x))).exp()
                }
            }
        }
    }

    /// `w̃(s) = ∫_0^∞ w(x) x^(s-1) dx` by adaptive Gauss–Kronrod.
    pub fn mellin(&self, s: Complex64) -> Complex64 {
        let (a, b) = self.support();
        let kernel = |x: f64| Complex64::new(x, 0.0).powc(s - 1.0) * self.eval(x);
        let re = integrate(&|x| kernel(x).re, a, b, 1e-15);
        let im = integrate(&|x| kernel(x).im, a, b, 1e-15);
        Complex64::new(re, im)
    }

    /// `ŵ(ξ) = ∫ w(x) e(-xξ) dx` by tanh–sinh quadrature.
    pub fn fourier(&self, xi: f64) -> Complex64 {
        let (a, b) = self.support();
        let f = |x: f64| Complex64::from_polar(self.eval(x), -2.0 * PI * x * xi);
        tanh_sinh(&f, a, b, 1e-14)
    }
}
