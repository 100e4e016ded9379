//! Exhaustive consistency suites over bounded ranges. Each compares a fast
//! or closed-form path against an independent slow one.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{enumerate_range, verify_correspondence};
use crate::error::{Error, Result};
use crate::gauss_sums::{dirichlet_gauss_sum, gauss_sum, tau_closed_form};
use crate::gaussint::{coprime, factor, primary_elements, GaussInt};
use crate::lfunctions::epsilon_from_tau;
use crate::symbols::{
    quartic_symbol, quartic_symbol_fast, reciprocity_sign, supplement_i, supplement_one_plus_i,
};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub bound: u64,
    pub checked: usize,
    pub failures: usize,
    /// largest deviation seen, for the numerical suites
    pub max_error: f64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// Per-item outcome: `(error, failed, description)`.
type Check = (f64, bool, String);

fn collect(suite: &'static str, bound: u64, checks: Vec<Check>) -> SuiteReport {
    let failures = checks.iter().filter(|c| c.1).count();
    SuiteReport {
        suite,
        bound,
        checked: checks.len(),
        failures,
        max_error: checks.iter().map(|c| c.0).fold(0.0, f64::max),
        first_failure: checks.into_iter().find(|c| c.1).map(|c| c.2),
    }
}

pub const SUITES: [&str; 6] = ["reciprocity", "supplements", "correspondence", "gauss-magnitude", "root-number", "epsilon"];

/// Runs the named suite up to `bound` (a norm or a conductor, depending on
/// the suite).
pub fn run_suite(name: &str, bound: u64) -> Result<SuiteReport> {
    match name {
        "reciprocity" => reciprocity(bound),
        "supplements" => supplements(bound),
        "correspondence" => correspondence(bound),
        "gauss-magnitude" => gauss_magnitude(bound),
        "root-number" => root_number(bound),
        "epsilon" => epsilon_magnitude(bound),
        other => Err(Error::Domain(format!("unknown suite {other}; expected one of {}", SUITES.join(", ")))),
    }
}

/// Quartic reciprocity for all coprime primary pairs with both norms
/// `<= max_norm`, each side by the Euler criterion; the descent is checked
/// against the same values.
pub fn reciprocity(max_norm: u64) -> Result<SuiteReport> {
    let elems: Vec<GaussInt> = primary_elements(max_norm).into_iter().filter(|z| !z.is_unit()).collect();
    let rows: Vec<Vec<Check>> = elems
        .par_iter()
        .map(|m| {
            let mut out = Vec::new();
            for n in &elems {
                if !coprime(m, n) {
                    continue;
                }
                let mn = quartic_symbol(m, n)?;
                let nm = quartic_symbol(n, m)?;
                let fast = quartic_symbol_fast(m, n)?;
                let bad = mn != reciprocity_sign(m, n) * nm || fast != mn;
                out.push((0.0, bad, format!("({m}/{n}) = {mn}, ({n}/{m}) = {nm}, descent {fast}")));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(collect("reciprocity", max_norm, rows.into_iter().flatten().collect()))
}

/// Supplement laws for `i` and `1+i` against the Euler criterion.
pub fn supplements(max_norm: u64) -> Result<SuiteReport> {
    let i = GaussInt::new(0, 1);
    let one_plus_i = GaussInt::new(1, 1);
    let checks = primary_elements(max_norm)
        .par_iter()
        .map(|n| {
            let (si, euler_i) = (supplement_i(n)?, quartic_symbol(&i, n)?);
            let (s1, euler_1) = (supplement_one_plus_i(n)?, quartic_symbol(&one_plus_i, n)?);
            Ok((0.0, si != euler_i || s1 != euler_1, format!("n = {n}: i -> {si} vs {euler_i}, 1+i -> {s1} vs {euler_1}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect("supplements", max_norm, checks))
}

/// Generator enumeration against brute force for every odd `q <= max_q`.
pub fn correspondence(max_q: u64) -> Result<SuiteReport> {
    let qs: Vec<u64> = (3..=max_q).step_by(2).collect();
    let checks = qs
        .par_iter()
        .map(|&q| {
            let r = verify_correspondence(q)?;
            Ok((0.0, !r.passed(), format!("q = {q}: {} brute force, {} generators, bijection {}", r.brute_force_count, r.generator_count, r.bijection)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect("correspondence", max_q, checks))
}

/// `|g(n)|^2 = N(n)` for square-free primary `n`, `0` otherwise; relative
/// tolerance `1e-6`.
pub fn gauss_magnitude(max_norm: u64) -> Result<SuiteReport> {
    let checks = primary_elements(max_norm)
        .par_iter()
        .filter(|n| !n.is_unit())
        .map(|n| {
            let g = gauss_sum(n)?;
            let norm = n.norm() as f64;
            let expected = if factor(n)?.is_squarefree() { norm } else { 0.0 };
            let err = (g.norm_sqr() - expected).abs() / norm;
            Ok((err, !(err <= 1e-6), format!("n = {n}: |g|^2 = {}, expected {expected}", g.norm_sqr())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect("gauss-magnitude", max_norm, checks))
}

/// Closed-form root number against the Dirichlet Gauss sum for every
/// enumerated character with `q <= max_q`; absolute tolerance `1e-9`.
pub fn root_number(max_q: u64) -> Result<SuiteReport> {
    let checks = enumerate_range(max_q)
        .par_iter()
        .map(|chi| {
            let closed = tau_closed_form(&chi.generator())?;
            let direct = dirichlet_gauss_sum(chi);
            let err = (closed - direct).norm();
            Ok((err, !(err <= 1e-9), format!("n = {}: closed {closed}, direct {direct}", chi.generator())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect("root-number", max_q, checks))
}

/// `|ε(χ)| = 1` to `1e-9` for every enumerated character with `q <= max_q`.
pub fn epsilon_magnitude(max_q: u64) -> Result<SuiteReport> {
    let checks: Vec<Check> = enumerate_range(max_q)
        .par_iter()
        .map(|chi| {
            let eps: Complex64 = epsilon_from_tau(chi, dirichlet_gauss_sum(chi));
            let err = (eps.norm() - 1.0).abs();
            (err, !(err <= 1e-9), format!("n = {}: |ε| = {}", chi.generator(), eps.norm()))
        })
        .collect();
    Ok(collect("epsilon", max_q, checks))
}
