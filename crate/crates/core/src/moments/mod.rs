//! Moments of central L-values over quartic characters, and the large
//! sieve experiments.
//!
//! Character sets are enumerated in `(q, a, b)` order; L-values are computed
//! in parallel, collected in that order, and reduced sequentially with
//! compensated summation, so reports do not depend on the thread count.

mod sieve;
mod weight;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use sieve::{sieve_ratio_quadratic, sieve_ratio_quartic, SieveReport};
pub use weight::{WeightFunction, WeightKind};

use crate::characters::{enumerate_range, QuarticCharacter};
use crate::error::Result;
use crate::lfunctions::{constants, lvalue_afe, lvalue_direct, AfeConfig, LValueRecord, Method};
use crate::numeric::{kahan_real, ls_slope, KahanSum};

/// `L(1/2 + α, χ)` for every character with conductor in `(lo, hi]`, in
/// enumeration order.
pub fn central_values(lo: u64, hi: u64, alpha: Complex64, method: Method, config: &AfeConfig) -> Result<Vec<LValueRecord>> {
    let chars: Vec<QuarticCharacter> = enumerate_range(hi).into_iter().filter(|c| c.conductor() > lo).collect();
    chars
        .par_iter()
        .map(|chi| match method {
            Method::Afe => lvalue_afe(chi, alpha, config),
            Method::Direct => lvalue_direct(chi, alpha + 0.5),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PerConductor {
    pub q: u64,
    pub characters: usize,
    /// `w(q/Q) Σ_χ L(1/2, χ)`
    pub partial: Complex64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    #[serde(rename = "Q")]
    pub q_param: u64,
    pub weight: &'static str,
    pub method: Method,
    pub moment: Complex64,
    /// `C · Q · w̃(1)`
    pub predicted: f64,
    pub ratio: f64,
    pub constant: f64,
    pub w_tilde_one: f64,
    pub character_count: usize,
    /// sum of the certified L-value errors, weighted
    pub err: f64,
    pub per_q: Vec<PerConductor>,
}

/// Conductors `(lo, hi]` covered by `w(q/Q)`.
pub fn moment_range(q_param: u64, w: &WeightFunction) -> (u64, u64) {
    let (lo, hi) = w.support();
    let qf = q_param as f64;
    ((lo * qf).floor() as u64, (hi * qf).ceil() as u64)
}

/// `M(Q) = Σ_q Σ_χ L(1/2, χ) w(q/Q)` against `C · Q · w̃(1)`.
pub fn first_moment(q_param: u64, w: &WeightFunction, method: Method, config: &AfeConfig) -> Result<MomentReport> {
    if q_param < 10 {
        return Err(crate::Error::Domain(format!("Q must be at least 10, got {q_param}")));
    }
    let (lo, hi) = moment_range(q_param, w);
    let values = central_values(lo, hi, Complex64::new(0.0, 0.0), method, config)?;
    first_moment_from_values(q_param, w, method, &values)
}

/// [`first_moment`] from precomputed central values in enumeration order;
/// records outside [`moment_range`] are ignored.
pub fn first_moment_from_values(q_param: u64, w: &WeightFunction, method: Method, values: &[LValueRecord]) -> Result<MomentReport> {
    if q_param < 10 {
        return Err(crate::Error::Domain(format!("Q must be at least 10, got {q_param}")));
    }
    let (lo, hi) = moment_range(q_param, w);
    let qf = q_param as f64;
    let values: Vec<&LValueRecord> = values.iter().filter(|r| r.q > lo && r.q <= hi).collect();
    let mut per_q: Vec<PerConductor> = Vec::new();
    let mut total = KahanSum::new();
    let mut err = 0.0;
    let mut current = KahanSum::new();
    let mut count = 0;
    for (k, r) in values.iter().enumerate() {
        let weight = w.eval(r.q as f64 / qf);
        current.add(r.value * weight);
        err += r.err * weight;
        count += 1;
        let last = k + 1 == values.len() || values[k + 1].q != r.q;
        if last {
            let partial = current.value();
            total.add(partial);
            per_q.push(PerConductor {
                q: r.q,
                characters: count,
                partial,
            });
            current = KahanSum::new();
            count = 0;
        }
    }
    let c = constants().c;
    let predicted = c * qf * w.mellin_at_one;
    let moment = total.value();
    Ok(MomentReport {
        q_param,
        weight: w.id(),
        method,
        moment,
        predicted,
        ratio: moment.re / predicted,
        constant: c,
        w_tilde_one: w.mellin_at_one,
        character_count: values.len(),
        err,
        per_q,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingReport {
    #[serde(rename = "Q")]
    pub q_param: u64,
    pub threshold: f64,
    pub count: usize,
    pub total: usize,
    pub proportion: f64,
    pub min_abs: f64,
}

/// Characters with conductor `<= Q` and `|L(1/2, χ)| > threshold`.
pub fn nonvanishing_count(q_param: u64, threshold: f64, config: &AfeConfig) -> Result<NonvanishingReport> {
    if q_param < 10 || !(threshold > 0.0) {
        return Err(crate::Error::Domain("needs Q >= 10 and a positive threshold".into()));
    }
    let values = central_values(0, q_param, Complex64::new(0.0, 0.0), Method::Afe, config)?;
    nonvanishing_from_values(q_param, threshold, &values)
}

/// [`nonvanishing_count`] from precomputed central values; records with
/// conductor above `Q` are ignored.
pub fn nonvanishing_from_values(q_param: u64, threshold: f64, values: &[LValueRecord]) -> Result<NonvanishingReport> {
    if q_param < 10 || !(threshold > 0.0) {
        return Err(crate::Error::Domain("needs Q >= 10 and a positive threshold".into()));
    }
    let values: Vec<&LValueRecord> = values.iter().filter(|r| r.q <= q_param).collect();
    let count = values.iter().filter(|r| r.value.norm() > threshold).count();
    let total = values.len();
    let min_abs = values.iter().map(|r| r.value.norm()).fold(f64::INFINITY, f64::min);
    Ok(NonvanishingReport {
        q_param,
        threshold,
        count,
        total,
        proportion: if total == 0 { 0.0 } else { count as f64 / total as f64 },
        min_abs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthPoint {
    #[serde(rename = "Q")]
    pub q_param: u64,
    pub sum: f64,
    pub characters: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondMomentReport {
    #[serde(rename = "Q")]
    pub q_param: u64,
    pub t: f64,
    pub sum: f64,
    pub character_count: usize,
    /// `Q, Q/2, ...` down to at least four points, ascending
    pub growth: Vec<GrowthPoint>,
    /// least-squares slope of `ln sum` against `ln Q`
    pub exponent: f64,
    pub bound_exponent: f64,
    /// `max sum / (Q^{7/6+0.1} (1+|t|)^{0.6})` over the growth table
    pub bound_constant: f64,
}

pub const SECOND_MOMENT_BOUND_EXPONENT: f64 = 7.0 / 6.0 + 0.1;

/// `Σ_{q <= Q} Σ_χ |L(1/2 + it, χ)|²` with its growth over halvings of `Q`.
pub fn second_moment(q_param: u64, t: f64, config: &AfeConfig) -> Result<SecondMomentReport> {
    if q_param < 10 {
        return Err(crate::Error::Domain(format!("Q must be at least 10, got {q_param}")));
    }
    let values = central_values(0, q_param, Complex64::new(0.0, t), Method::Afe, config)?;
    let mut points = vec![q_param];
    while points.len() < 5 && points.last().copied().unwrap_or(0) / 2 >= 10 {
        let next = points.last().copied().unwrap_or(0) / 2;
        points.push(next);
    }
    points.reverse();
    let shape = (1.0 + t.abs()).powf(0.6);
    let growth: Vec<GrowthPoint> = points
        .iter()
        .map(|&qp| {
            let sel: Vec<f64> = values.iter().filter(|r| r.q <= qp).map(|r| r.value.norm_sqr()).collect();
            GrowthPoint {
                q_param: qp,
                sum: kahan_real(sel.iter().copied()),
                characters: sel.len(),
            }
        })
        .collect();
    let xs: Vec<f64> = growth.iter().map(|g| (g.q_param as f64).ln()).collect();
    let ys: Vec<f64> = growth.iter().map(|g| g.sum.ln()).collect();
    let exponent = if growth.len() >= 2 { ls_slope(&xs, &ys) } else { f64::NAN };
    let bound_constant = growth
        .iter()
        .map(|g| g.sum / ((g.q_param as f64).powf(SECOND_MOMENT_BOUND_EXPONENT) * shape))
        .fold(0.0, f64::max);
    let last = growth.last().expect("at least one point");
    Ok(SecondMomentReport {
        q_param,
        t,
        sum: last.sum,
        character_count: last.characters,
        growth,
        exponent,
        bound_exponent: SECOND_MOMENT_BOUND_EXPONENT,
        bound_constant,
    })
}
