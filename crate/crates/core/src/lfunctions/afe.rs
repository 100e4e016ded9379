//! `L(1/2 + α, χ)` by the approximate functional equation, and directly
//! through Hurwitz zeta values.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::special::hurwitz_zeta;
use super::vfun::{sum_tail_bound, v_closed_form, v_table, x_factor, GChoice, QuadratureParams, VTable};
use crate::characters::QuarticCharacter;
use crate::error::{Error, Result};
use crate::gauss_sums::dirichlet_gauss_sum;
use crate::numeric::KahanSum;
use crate::symbols::QuarticValue;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AfeConfig {
    pub g_choice: GChoice,
    /// `A = split_scale · √q`, `B = q / A`
    pub split_scale: f64,
    /// certified bound on the two discarded tails together
    pub truncation_eps: f64,
    pub quadrature: QuadratureParams,
    /// largest number of terms allowed in either sum
    pub term_budget: u64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        AfeConfig {
            g_choice: GChoice::ConstantOne,
            split_scale: 1.0,
            truncation_eps: 1e-9,
            quadrature: QuadratureParams::default(),
            term_budget: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Afe,
    Direct,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Afe => "afe",
            Method::Direct => "direct",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "afe" => Ok(Method::Afe),
            "direct" => Ok(Method::Direct),
            _ => Err(Error::Domain(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LValueRecord {
    pub q: u64,
    pub a: i64,
    pub b: i64,
    pub value: Complex64,
    pub method: Method,
    pub err: f64,
}

/// `ε(χ) = i^{-a_{χ(-1)}} q^{-1/2} τ(χ)`.
pub fn epsilon_factor(chi: &QuarticCharacter) -> Complex64 {
    epsilon_from_tau(chi, dirichlet_gauss_sum(chi))
}

pub fn epsilon_from_tau(chi: &QuarticCharacter, tau: Complex64) -> Complex64 {
    let rot = if chi.parity() == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, -1.0)
    };
    rot * tau / (chi.conductor() as f64).sqrt()
}

enum VSource {
    Closed(Complex64, i32),
    Table(Arc<VTable>),
}

impl VSource {
    fn new(alpha: Complex64, j: i32, config: &AfeConfig) -> Result<VSource> {
        Ok(match config.g_choice {
            GChoice::ConstantOne => VSource::Closed(alpha, j),
            GChoice::Gaussian => VSource::Table(v_table(alpha, j, GChoice::Gaussian, &config.quadrature)?),
        })
    }

    fn eval(&self, x: f64) -> Result<Complex64> {
        match self {
            VSource::Closed(alpha, j) => v_closed_form(*alpha, *j, x),
            VSource::Table(t) => t.eval(x),
        }
    }

    fn abs_err(&self) -> f64 {
        match self {
            // agreement with quadrature is checked at 1e-10; the evaluation
            // itself is accurate to a few ulps of 1
            VSource::Closed(..) => 1e-15,
            VSource::Table(t) => t.max_err,
        }
    }
}

/// Smallest `M` with `Σ_{m>M} m^{-β}|V(m/scale)| <= target`.
fn cutoff(alpha: Complex64, j: i32, g: GChoice, beta: f64, scale: f64, target: f64, budget: u64) -> Result<u64> {
    let tail = |m: u64| sum_tail_bound(alpha, j, g, beta, scale, m);
    let mut hi = 1u64;
    while tail(hi) > target {
        if hi > budget {
            return Err(Error::Certification(format!(
                "AFE tail above {target:.1e} after {budget} terms (scale {scale:.3})"
            )));
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi.min(budget))
}

struct PartialSum {
    value: Complex64,
    tail: f64,
    weight: f64,
}

/// `Σ_{m <= M} c(m) m^{-1/2-α} V(m/scale)` with `c = χ` or `χ̄`.
fn smoothed_sum(
    table: &[QuarticValue],
    conj: bool,
    alpha: Complex64,
    j: i32,
    scale: f64,
    target: f64,
    config: &AfeConfig,
) -> Result<(PartialSum, f64)> {
    let q = table.len() as u64;
    let beta = 0.5 + alpha.re;
    let big_m = cutoff(alpha, j, config.g_choice, beta, scale, target, config.term_budget)?;
    let tail = sum_tail_bound(alpha, j, config.g_choice, beta, scale, big_m);
    let v = VSource::new(alpha, j, config)?;
    let zero_alpha = alpha == Complex64::new(0.0, 0.0);
    let mut acc = KahanSum::new();
    let mut weight = 0.0;
    for m in 1..=big_m {
        let c = table[(m % q) as usize];
        if c.is_zero() {
            continue;
        }
        let c = if conj { c.conj() } else { c };
        let mf = m as f64;
        let pow = if zero_alpha {
            Complex64::new(1.0 / mf.sqrt(), 0.0)
        } else {
            (-(0.5 + alpha) * mf.ln()).exp()
        };
        weight += pow.norm();
        acc.add(c.to_complex() * pow * v.eval(mf / scale)?);
    }
    Ok((
        PartialSum {
            value: acc.value(),
            tail,
            weight,
        },
        v.abs_err(),
    ))
}

/// `L(1/2 + α, χ)` by the approximate functional equation with `AB = q`.
pub fn lvalue_afe(chi: &QuarticCharacter, alpha: Complex64, config: &AfeConfig) -> Result<LValueRecord> {
    let tau = dirichlet_gauss_sum(chi);
    lvalue_afe_with_tau(chi, tau, alpha, config)
}

pub fn lvalue_afe_with_tau(
    chi: &QuarticCharacter,
    tau: Complex64,
    alpha: Complex64,
    config: &AfeConfig,
) -> Result<LValueRecord> {
    if alpha.re.abs() >= 0.5 {
        return Err(Error::Domain(format!("AFE needs |Re α| < 1/2, got {alpha}")));
    }
    if !(config.split_scale > 0.0) || !(config.truncation_eps > 0.0) {
        return Err(Error::Domain("split scale and truncation eps must be positive".into()));
    }
    let q = chi.conductor();
    let j = chi.parity();
    let table = chi.table();
    let eps = epsilon_from_tau(chi, tau);
    let xf = x_factor(alpha, j, q)?;
    let dual = eps * xf;
    let a = config.split_scale * (q as f64).sqrt();
    let b = q as f64 / a;
    let half = config.truncation_eps / 2.0;
    let (first, e1) = smoothed_sum(&table, false, alpha, j, a, half, config)?;
    let (second, e2) = smoothed_sum(&table, true, -alpha, j, b, half / dual.norm().max(1e-300), config)?;
    let value = first.value + dual * second.value;
    let err = first.tail + dual.norm() * second.tail + e1 * first.weight + e2 * dual.norm() * second.weight;
    let n = chi.generator();
    Ok(LValueRecord {
        q,
        a: n.a,
        b: n.b,
        value,
        method: Method::Afe,
        err,
    })
}

/// `L(s, χ) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)`.
pub fn lvalue_direct(chi: &QuarticCharacter, s: Complex64) -> Result<LValueRecord> {
    let q = chi.conductor();
    let table = chi.table();
    let mut acc = KahanSum::new();
    let mut err = 0.0;
    for (a, c) in table.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let (z, e) = hurwitz_zeta(s, a as f64 / q as f64)?;
        acc.add(c.to_complex() * z);
        err += e;
    }
    let scale = (-s * (q as f64).ln()).exp();
    let value = acc.value() * scale;
    // remainders plus rounding in the (at most √q-sized) summands
    let err = err * scale.norm() + 1e-15 * (q as f64).sqrt() * value.norm().max(1.0);
    if err > 1e-10 {
        return Err(Error::Certification(format!("direct L-value remainder {err:.2e} above 1e-10")));
    }
    let n = chi.generator();
    Ok(LValueRecord {
        q,
        a: n.a,
        b: n.b,
        value,
        method: Method::Direct,
        err,
    })
}

/// `L(1/2, χ)` directly, the counterpart of `lvalue_afe` at `α = 0`.
pub fn lvalue_direct_central(chi: &QuarticCharacter) -> Result<LValueRecord> {
    lvalue_direct(chi, Complex64::new(0.5, 0.0))
}
