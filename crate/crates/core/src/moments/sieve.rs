//! Empirical large sieve ratios with random `±1` coefficients.
//!
//! Trial `k` draws its coefficients from a ChaCha stream keyed by the master
//! seed with stream id `k`, so the trials are independent of scheduling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_squarefree;
use crate::characters::enumerate_range;
use crate::error::{Error, Result};
use crate::gaussint::{factor, primary_elements, GaussInt};
use crate::numeric::{kahan_real, KahanSum};
use crate::symbols::quadratic_symbol_fast;

#[derive(Clone, Debug, Serialize)]
pub struct SieveReport {
    pub kind: &'static str,
    /// `Q` for the quartic family, `M` for the quadratic one
    pub x: u64,
    /// `M` for the quartic family, `N` for the quadratic one
    pub y: u64,
    pub trials: usize,
    pub seed: u64,
    /// outer sum size: characters, or moduli
    pub family_size: usize,
    /// number of coefficients
    pub length: usize,
    /// bound expression, without the coefficient norm
    pub bound: f64,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
}

fn trial_signs(seed: u64, trial: usize, len: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    (0..len).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect()
}

/// `Σ_rows |Σ_j a_j row_j|² / (bound · Σ a_j²)` for each trial.
fn ratios(rows: &[Vec<Complex64>], len: usize, bound: f64, trials: usize, seed: u64) -> Vec<f64> {
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let a = trial_signs(seed, k, len);
            let lhs = kahan_real(rows.iter().map(|row| {
                let mut s = KahanSum::new();
                for (x, c) in row.iter().zip(&a) {
                    s.add(*x * *c);
                }
                s.value().norm_sqr()
            }));
            let norm = kahan_real(a.iter().map(|c| c * c));
            lhs / (bound * norm)
        })
        .collect()
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// The four candidate bounds for the quartic family, minimized.
pub fn quartic_sieve_bound(q: f64, m: f64) -> f64 {
    [
        q.powf(1.5) + m,
        q.powf(1.25) + q.sqrt() * m,
        q.powf(7.0 / 6.0) + q.powf(2.0 / 3.0) * m,
        q + q.powf(1.0 / 3.0) * m.powf(5.0 / 3.0) + m.powf(7.0 / 3.0),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// `Σ_{Q<q<=2Q} Σ_χ |Σ_{M<m<=2M} a_m χ(m)|²` over square-free `m`, against
/// the minimum of the quartic bounds.
pub fn sieve_ratio_quartic(q_param: u64, m_param: u64, trials: usize, seed: u64) -> Result<SieveReport> {
    if trials == 0 || q_param == 0 || m_param == 0 {
        return Err(Error::Domain("sieve needs Q, M, trials >= 1".into()));
    }
    let ms: Vec<u64> = (m_param + 1..=2 * m_param).filter(|&m| is_squarefree(m)).collect();
    let rows: Vec<Vec<Complex64>> = enumerate_range(2 * q_param)
        .into_iter()
        .filter(|c| c.conductor() > q_param)
        .map(|chi| ms.iter().map(|&m| chi.eval(m as i64).to_complex()).collect())
        .collect();
    let bound = quartic_sieve_bound(q_param as f64, m_param as f64);
    let ratios = ratios(&rows, ms.len(), bound, trials, seed);
    Ok(SieveReport {
        kind: "quartic",
        x: q_param,
        y: m_param,
        trials,
        seed,
        family_size: rows.len(),
        length: ms.len(),
        bound,
        max_ratio: max_of(&ratios),
        ratios,
    })
}

/// Square-free primary elements of norm `<= max_norm`.
fn squarefree_primary(max_norm: u64) -> Result<Vec<GaussInt>> {
    let mut out = Vec::new();
    for z in primary_elements(max_norm) {
        if factor(&z)?.is_squarefree() {
            out.push(z);
        }
    }
    Ok(out)
}

/// `Σ_{N(m)<=M} |Σ_{N(n)<=N} a_n (n/m)|²` over square-free primary `m, n`,
/// against `M + N`.
pub fn sieve_ratio_quadratic(m_param: u64, n_param: u64, trials: usize, seed: u64) -> Result<SieveReport> {
    if trials == 0 || m_param == 0 || n_param == 0 {
        return Err(Error::Domain("sieve needs M, N, trials >= 1".into()));
    }
    let ms = squarefree_primary(m_param)?;
    let ns = squarefree_primary(n_param)?;
    let rows = ms
        .iter()
        .map(|m| ns.iter().map(|n| Ok(quadratic_symbol_fast(n, m)?.to_complex())).collect())
        .collect::<Result<Vec<Vec<Complex64>>>>()?;
    let bound = (m_param + n_param) as f64;
    let ratios = ratios(&rows, ns.len(), bound, trials, seed);
    Ok(SieveReport {
        kind: "quadratic",
        x: m_param,
        y: n_param,
        trials,
        seed,
        family_size: rows.len(),
        length: ns.len(),
        bound,
        max_ratio: max_of(&ratios),
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_positive_and_seeded() {
        let a = sieve_ratio_quartic(32, 32, 5, 7).unwrap();
        let b = sieve_ratio_quartic(32, 32, 5, 7).unwrap();
        assert_eq!(a.ratios, b.ratios);
        assert!(a.ratios.iter().all(|r| r.is_finite() && *r > 0.0));
        let c = sieve_ratio_quartic(32, 32, 5, 8).unwrap();
        assert_ne!(a.ratios, c.ratios);
        let q = sieve_ratio_quadratic(64, 32, 5, 7).unwrap();
        assert!(q.max_ratio > 0.0 && q.max_ratio.is_finite());
    }

    #[test]
    fn single_coefficient_is_diagonal() {
        // one coefficient: each row contributes at most 1, so LHS <= #moduli <= M
        let ms = squarefree_primary(100).unwrap();
        let n = GaussInt::new(3, 2);
        let lhs: f64 = ms.iter().map(|m| quadratic_symbol_fast(&n, m).unwrap().to_complex().norm_sqr()).sum();
        assert!(lhs <= 100.0);
    }

    #[test]
    fn bound_is_minimum() {
        let b = quartic_sieve_bound(64.0, 64.0);
        assert!(b <= 64f64.powf(1.5) + 64.0);
        assert!(b > 0.0);
    }

    #[test]
    fn rejects_zero_trials() {
        assert!(sieve_ratio_quartic(32, 32, 0, 1).is_err());
        assert!(sieve_ratio_quadratic(32, 32, 0, 1).is_err());
    }
}
