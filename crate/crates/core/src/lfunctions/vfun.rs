//! Gamma factors and the smoothing functions `V_{α,j}` of the approximate
//! functional equation.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::special::{gamma_q, ln_gamma, pole_distance};
use crate::error::{Error, Result};

const POLE_GUARD: f64 = 1e-8;

/// Choice of the even test function `G(s)` in the contour integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GChoice {
    /// `G(s) = 1`
    ConstantOne,
    /// `G(s) = e^{s²}`
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureParams {
    /// target error relative to the largest integrand sample
    pub rel_tol: f64,
    pub max_halvings: u32,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        QuadratureParams {
            rel_tol: 1e-14,
            max_halvings: 10,
        }
    }
}

pub fn a_j(j: i32) -> f64 {
    ((1 - j) / 2) as f64
}

fn shift(alpha: Complex64, j: i32) -> Complex64 {
    Complex64::new(0.5 + a_j(j), 0.0) + alpha
}

/// `γ_{α,j}(s) = π^{-s/2} Γ((1/2 + a_j + α + s)/2) / Γ((1/2 + a_j + α)/2)`.
pub fn gamma_factor(alpha: Complex64, j: i32, s: Complex64) -> Result<Complex64> {
    let c0 = shift(alpha, j);
    let num = (c0 + s) / 2.0;
    let den = c0 / 2.0;
    for z in [num, den] {
        if pole_distance(z) < POLE_GUARD {
            return Err(Error::GammaPole(format!("Γ pole at {z} (α = {alpha}, s = {s})")));
        }
    }
    Ok((-s / 2.0 * PI.ln() + ln_gamma(num) - ln_gamma(den)).exp())
}

/// `X_{α,j} = (q/π)^{-α} Γ((1/2 + a_j - α)/2) / Γ((1/2 + a_j + α)/2)`;
/// exactly 1 at `α = 0`.
pub fn x_factor(alpha: Complex64, j: i32, q: u64) -> Result<Complex64> {
    if alpha == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let a = Complex64::new(0.5 + a_j(j), 0.0);
    let num = (a - alpha) / 2.0;
    let den = (a + alpha) / 2.0;
    for z in [num, den] {
        if pole_distance(z) < POLE_GUARD {
            return Err(Error::GammaPole(format!("Γ pole at {z} (α = {alpha})")));
        }
    }
    let ln_q_pi = (q as f64 / PI).ln();
    Ok((-alpha * ln_q_pi + ln_gamma(num) - ln_gamma(den)).exp())
}

/// A value with an error estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Estimate {
    pub value: Complex64,
    pub err: f64,
}

/// `V_{α,j}(x)` for `G = 1` as `Γ(a, πx²)/Γ(a)`, `a = (1/2 + a_j + α)/2`.
pub fn v_closed_form(alpha: Complex64, j: i32, x: f64) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("V needs x > 0, got {x}")));
    }
    gamma_q(shift(alpha, j) / 2.0, PI * x * x)
}

const ABS_FLOOR: f64 = 1e-30;

/// `V_{α,j}(x) = (1/2πi) ∫ G(s)/s γ_{α,j}(s) x^{-s} ds` by the trapezoidal
/// rule on a vertical line. For `x < 1` the line sits left of the pole at
/// `s = 0` (residue 1); otherwise at `Re s = 2`, or further right for large
/// `x` where the integrand is concentrated there.
pub fn v_quadrature(alpha: Complex64, j: i32, x: f64, g: GChoice, params: &QuadratureParams) -> Result<Estimate> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("V needs x > 0, got {x}")));
    }
    let c0 = shift(alpha, j);
    if c0.re <= 0.0 {
        return Err(Error::Domain(format!("V needs Re(1/2 + a_j + α) > 0, got {c0}")));
    }
    let ln_x = x.ln();
    let (sigma, residue) = if x < 1.0 {
        (-c0.re / 2.0, 1.0)
    } else {
        let saddle = match g {
            GChoice::ConstantOne => 2.0 * PI * x * x,
            GChoice::Gaussian => ln_x / 2.0,
        };
        (saddle.clamp(2.0, 200.0), 0.0)
    };
    let ln_den = ln_gamma(c0 / 2.0);
    let ln_pi = PI.ln();
    let integrand = |t: f64| -> Complex64 {
        let s = Complex64::new(sigma, t);
        let ln_g = match g {
            GChoice::ConstantOne => Complex64::new(0.0, 0.0),
            GChoice::Gaussian => s * s,
        };
        let ln = ln_g - s / 2.0 * ln_pi + ln_gamma((c0 + s) / 2.0) - ln_den - s * ln_x;
        ln.exp() / s
    };
    // trapezoid over t ∈ R with step h, extended outward until samples are
    // negligible; successive halvings reuse earlier nodes
    let mut h = 0.5_f64.min(sigma.abs());
    let mut peak = 0.0_f64;
    let sweep = |offset: f64, step: f64, peak: &mut f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut quiet = 0;
        let mut k = 0usize;
        loop {
            let t = offset + k as f64 * step;
            let mut v = integrand(t);
            if t != 0.0 {
                v += integrand(-t);
            }
            let m = v.norm();
            *peak = peak.max(m);
            acc += v;
            if t > 1.0 && m <= 1e-19 * *peak {
                quiet += 1;
                if quiet >= 8 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
            if t > 5_000.0 {
                break;
            }
        }
        acc
    };
    let mut sum = sweep(0.0, h, &mut peak);
    let mut prev = sum * h;
    let scale = 1.0 / (2.0 * PI);
    let mut diff = f64::INFINITY;
    for _ in 0..params.max_halvings {
        let fresh = sweep(h / 2.0, h, &mut peak);
        sum += fresh;
        h /= 2.0;
        let cur = sum * h;
        diff = (cur - prev).norm();
        // V is at most 1 in size; changes below the absolute floor are
        // far under any tolerance used downstream
        if diff <= params.rel_tol * peak.max(1e-300) || diff * scale <= ABS_FLOOR {
            return Ok(Estimate {
                value: cur * scale + residue,
                err: diff * scale,
            });
        }
        prev = cur;
    }
    Err(Error::Certification(format!(
        "V quadrature at x = {x} did not converge (last change {:.3e})",
        diff * scale
    )))
}

/// Bound on `|V_{α,j}(y)|` for all `y >= x`, from the line `Re s = σ`
/// (Gaussian `G`) or the incomplete-gamma envelope (`G = 1`).
pub fn v_bound(alpha: Complex64, j: i32, g: GChoice, x: f64) -> f64 {
    let c0 = shift(alpha, j);
    let rho = c0.re / 2.0;
    let ln_gamma_den = ln_gamma(c0 / 2.0).re;
    match g {
        GChoice::ConstantOne => {
            // |Γ(a, z)| <= z^{ρ-1} e^{-z} for Re a = ρ <= 1
            let z = PI * x * x;
            ((rho - 1.0) * z.ln() - z - ln_gamma_den).exp()
        }
        GChoice::Gaussian => {
            let mut best = f64::INFINITY;
            let mut sigma = 0.25;
            while sigma <= 60.0 {
                best = best.min((ln_k_gaussian(c0, ln_gamma_den, sigma) - sigma * x.ln()).exp());
                sigma += 0.25;
            }
            best
        }
    }
}

/// `ln K(σ)`, `|V(x)| <= K(σ) x^{-σ}` on the line `Re s = σ > 0` for
/// `G = e^{s²}`.
fn ln_k_gaussian(c0: Complex64, ln_gamma_den: f64, sigma: f64) -> f64 {
    let ln_gamma_num = ln_gamma(Complex64::new((c0.re + sigma) / 2.0, 0.0)).re;
    sigma * sigma - sigma / 2.0 * PI.ln() + ln_gamma_num - ln_gamma_den - sigma.ln() - (2.0 * PI.sqrt()).ln()
}

/// Bound on `Σ_{m > big_m} m^{-β} |V(m/scale)|`, `β > 0`.
pub fn sum_tail_bound(alpha: Complex64, j: i32, g: GChoice, beta: f64, scale: f64, big_m: u64) -> f64 {
    let c0 = shift(alpha, j);
    let m1 = (big_m + 1) as f64;
    match g {
        GChoice::ConstantOne => {
            // terms decrease; successive ratio <= e^{-π(2M+1)/scale²}
            let first = m1.powf(-beta) * v_bound(alpha, j, g, m1 / scale);
            let r = (-PI * (2.0 * big_m as f64 + 1.0) / (scale * scale)).exp();
            first / (1.0 - r)
        }
        GChoice::Gaussian => {
            let ln_gamma_den = ln_gamma(c0 / 2.0).re;
            let big = big_m.max(1) as f64;
            let mut best = f64::INFINITY;
            let mut sigma = 1.0 - beta + 0.25;
            while sigma <= 60.0 {
                let e = sigma + beta - 1.0;
                let ln = ln_k_gaussian(c0, ln_gamma_den, sigma) + sigma * scale.ln() - e * big.ln() - e.ln();
                best = best.min(ln.exp());
                sigma += 0.25;
            }
            best
        }
    }
}

const TABLE_LO: f64 = -8.0;
const TABLE_HI: f64 = 14.0;
const TABLE_WIDTH: f64 = 0.5;
const TABLE_DEGREE: usize = 22;

/// Piecewise Chebyshev interpolant of `V_{α,j}` in `ln x`.
pub struct VTable {
    pub alpha: Complex64,
    pub j: i32,
    pub g: GChoice,
    coeffs: Vec<[Complex64; TABLE_DEGREE + 1]>,
    real: bool,
    /// largest deviation from quadrature at interval midpoints and the
    /// quadrature error itself
    pub max_err: f64,
    params: QuadratureParams,
}

impl VTable {
    pub fn build(alpha: Complex64, j: i32, g: GChoice, params: &QuadratureParams) -> Result<VTable> {
        let pieces = ((TABLE_HI - TABLE_LO) / TABLE_WIDTH).round() as usize;
        let n = TABLE_DEGREE + 1;
        let nodes: Vec<f64> = (0..n).map(|k| (PI * (k as f64 + 0.5) / n as f64).cos()).collect();
        let mut coeffs = Vec::with_capacity(pieces);
        let mut quad_err = 0.0_f64;
        for p in 0..pieces {
            let lo = TABLE_LO + p as f64 * TABLE_WIDTH;
            let mut vals = Vec::with_capacity(n);
            for t in &nodes {
                let y = lo + (t + 1.0) * TABLE_WIDTH / 2.0;
                let e = v_quadrature(alpha, j, y.exp(), g, params)?;
                quad_err = quad_err.max(e.err);
                vals.push(e.value);
            }
            let mut c = [Complex64::new(0.0, 0.0); TABLE_DEGREE + 1];
            for (k, ck) in c.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, v) in vals.iter().enumerate() {
                    acc += v * (PI * k as f64 * (i as f64 + 0.5) / n as f64).cos();
                }
                *ck = acc * (2.0 / n as f64);
            }
            c[0] /= 2.0;
            coeffs.push(c);
        }
        let real = alpha.im == 0.0;
        let mut table = VTable {
            alpha,
            j,
            g,
            coeffs,
            real,
            max_err: 0.0,
            params: *params,
        };
        let mut dev = 0.0_f64;
        for p in 0..pieces {
            let y = TABLE_LO + (p as f64 + 0.37) * TABLE_WIDTH;
            let exact = v_quadrature(alpha, j, y.exp(), g, params)?;
            dev = dev.max((table.eval_ln(y) - exact.value).norm() + exact.err);
        }
        table.max_err = dev.max(quad_err) * 2.0;
        Ok(table)
    }

    fn eval_ln(&self, y: f64) -> Complex64 {
        let p = (((y - TABLE_LO) / TABLE_WIDTH).floor() as usize).min(self.coeffs.len() - 1);
        let lo = TABLE_LO + p as f64 * TABLE_WIDTH;
        let t = 2.0 * (y - lo) / TABLE_WIDTH - 1.0;
        let c = &self.coeffs[p];
        if self.real {
            let (mut b1, mut b2) = (0.0, 0.0);
            for k in (1..=TABLE_DEGREE).rev() {
                let b0 = 2.0 * t * b1 - b2 + c[k].re;
                b2 = b1;
                b1 = b0;
            }
            Complex64::new(t * b1 - b2 + c[0].re, 0.0)
        } else {
            let (mut b1, mut b2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for k in (1..=TABLE_DEGREE).rev() {
                let b0 = b1 * (2.0 * t) - b2 + c[k];
                b2 = b1;
                b1 = b0;
            }
            b1 * t - b2 + c[0]
        }
    }

    /// `V(x)`; falls back to quadrature outside the tabulated range.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let y = x.ln();
        if (TABLE_LO..TABLE_HI).contains(&y) {
            Ok(self.eval_ln(y))
        } else {
            Ok(v_quadrature(self.alpha, self.j, x, self.g, &self.params)?.value)
        }
    }
}

type TableKey = (u64, u64, i32, GChoice);

/// Shared table for `(α, j, G)`, built on first use.
pub fn v_table(alpha: Complex64, j: i32, g: GChoice, params: &QuadratureParams) -> Result<Arc<VTable>> {
    static TABLES: OnceLock<Mutex<HashMap<TableKey, Arc<VTable>>>> = OnceLock::new();
    let key = (alpha.re.to_bits(), alpha.im.to_bits(), j, g);
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().expect("table lock").get(&key) {
        return Ok(t.clone());
    }
    let built = Arc::new(VTable::build(alpha, j, g, params)?);
    let mut guard = tables.lock().expect("table lock");
    Ok(guard.entry(key).or_insert(built).clone())
}
