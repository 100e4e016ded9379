//! The constant `C = C0 · C1 · Z(2) / ζ_{Q(i)}(2)` of the first-moment main
//! term, each factor with a bound on its truncation error.
//!
//! Writing `h(p) = Π_{ϖ | p} (1 + N(ϖ)^{-1})^{-1}` for odd rational primes
//! (`(1 + 1/p)^{-2}` for `p ≡ 1 mod 4`, `(1 + p^{-2})^{-1}` for `p ≡ 3 mod 4`):
//!
//! * `C1 = Σ_{d ≡ 1 mod 4} μ(|d|) d^{-2} h(d) = Π_{p odd} (1 - p^{-2} h(p))`,
//!   the sum running over both signs of `d`, so every odd square-free `|d|`
//!   appears exactly once;
//! * `Z(2) = (2/3) Σ_m m^{-2} Π_{p | m, p odd} h(p) / (1 - p^{-2} h(p))`.
//!
//! Both Euler products are divided by `Π_{p odd} (1 - p^{-2}) = 8/π²`, which
//! leaves factors `1 + O(p^{-3})`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::primes_up_to;
use crate::numeric::kahan_real;

/// Catalan's constant `L(2, χ_{-4})`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_11;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConstantsConfig {
    /// primes used in the `C1` and `Z(2)` products
    pub prime_bound: u64,
    /// rational primes under the Gaussian-prime Euler product of `ζ_{Q(i)}(2)`
    pub gaussian_prime_bound: u64,
    /// terms of the Dirichlet series for `Z(2)`
    pub dirichlet_terms: u64,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        ConstantsConfig {
            prime_bound: 1_000_000,
            gaussian_prime_bound: 100_000_000,
            dirichlet_terms: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Constants {
    pub c0: f64,
    pub c1: f64,
    pub c1_err: f64,
    /// `ζ(2) · L(2, χ_{-4})`
    pub zeta_qi_2: f64,
    /// Euler product over Gaussian primes
    pub zeta_qi_2_euler: f64,
    pub zeta_qi_2_euler_err: f64,
    /// Euler product
    pub z2: f64,
    pub z2_err: f64,
    /// truncated Dirichlet series
    pub z2_dirichlet: f64,
    pub z2_dirichlet_err: f64,
    pub c: f64,
    pub c_err: f64,
    pub config: ConstantsConfig,
}

fn h(p: u64) -> f64 {
    let pf = p as f64;
    if p % 4 == 1 {
        let t = 1.0 + 1.0 / pf;
        1.0 / (t * t)
    } else {
        1.0 / (1.0 + 1.0 / (pf * pf))
    }
}

pub fn zeta_qi_2() -> f64 {
    PI * PI / 6.0 * CATALAN
}

/// `(C1, err)`.
pub fn c1(prime_bound: u64) -> (f64, f64) {
    let logs = primes_up_to(prime_bound as usize).into_iter().skip(1).map(|p| {
        let inv2 = 1.0 / (p as f64 * p as f64);
        ((1.0 - inv2 * h(p)) / (1.0 - inv2)).ln()
    });
    let value = 8.0 / (PI * PI) * kahan_real(logs).exp();
    // each remaining log is at most 2.01 p^{-3}
    let tail = 1.01 / (prime_bound as f64).powi(2);
    (value, value * tail.exp_m1())
}

/// `(Z(2), err)` from the Euler product.
pub fn z2(prime_bound: u64) -> (f64, f64) {
    let logs = primes_up_to(prime_bound as usize).into_iter().skip(1).map(|p| {
        let inv2 = 1.0 / (p as f64 * p as f64);
        let hp = h(p);
        let local = 1.0 + hp / (1.0 - inv2 * hp) * inv2 / (1.0 - inv2);
        (local * (1.0 - inv2)).ln()
    });
    let value = 2.0 / 3.0 * 4.0 / 3.0 * PI * PI / 8.0 * kahan_real(logs).exp();
    let tail = 1.1 / (prime_bound as f64).powi(2);
    (value, value * tail.exp_m1())
}

/// `(Z(2), err)` from `terms` terms of its Dirichlet series.
pub fn z2_dirichlet(terms: u64) -> (f64, f64) {
    let n = terms as usize;
    // multiplicative weight: Π over odd primes dividing m
    let mut weight = vec![1.0_f64; n + 1];
    for p in primes_up_to(n).into_iter().skip(1) {
        let inv2 = 1.0 / (p as f64 * p as f64);
        let w = h(p) / (1.0 - inv2 * h(p));
        let mut k = p as usize;
        while k <= n {
            weight[k] *= w;
            k += p as usize;
        }
    }
    let value = 2.0 / 3.0 * kahan_real((1..=n).rev().map(|m| weight[m] / (m as f64 * m as f64)));
    // weights are at most 1
    (value, 2.0 / 3.0 / terms as f64)
}

/// Odd primes up to `limit` in increasing order, by a segmented sieve.
fn for_each_odd_prime(limit: u64, mut f: impl FnMut(u64)) {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u64> = primes_up_to(root as usize).into_iter().skip(1).collect();
    const SEG: u64 = 1 << 18;
    let mut lo = 3u64;
    let mut composite = vec![false; SEG as usize];
    while lo <= limit {
        let hi = (lo + 2 * SEG).min(limit + 1);
        // slot k stands for lo + 2k
        let slots = (hi - lo).div_ceil(2) as usize;
        composite[..slots].iter_mut().for_each(|c| *c = false);
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut k = start;
            while k < hi {
                composite[((k - lo) / 2) as usize] = true;
                k += 2 * p;
            }
        }
        for (k, c) in composite[..slots].iter().enumerate() {
            let v = lo + 2 * k as u64;
            if !c && v < hi {
                f(v);
            }
        }
        lo = hi + hi.is_multiple_of(2) as u64;
    }
}

/// `(ζ_{Q(i)}(2), err)` as `(1 - 1/4)^{-1} Π_{p≡1} (1 - p^{-2})^{-2} Π_{p≡3} (1 - p^{-4})^{-1}`.
pub fn zeta_qi_2_euler(prime_bound: u64) -> (f64, f64) {
    let mut logs = Vec::new();
    for_each_odd_prime(prime_bound, |p| {
        let inv2 = 1.0 / (p as f64 * p as f64);
        logs.push(if p % 4 == 1 {
            -2.0 * (-inv2).ln_1p()
        } else {
            -(-inv2 * inv2).ln_1p()
        });
    });
    // smallest terms first
    let value = 4.0 / 3.0 * kahan_real(logs.into_iter().rev()).exp();
    // Σ_{p>P} p^{-2} <= 2.51/(P ln P) from π(t) <= 1.25506 t / ln t
    let pb = prime_bound as f64;
    let tail = 2.0 * 1.0001 * 2.51 / (pb * pb.ln());
    (value, value * tail.exp_m1())
}

pub fn constants_with(config: ConstantsConfig) -> Constants {
    let (c1v, c1_err) = c1(config.prime_bound);
    let (z2v, z2_err) = z2(config.prime_bound);
    let (z2d, z2d_err) = z2_dirichlet(config.dirichlet_terms);
    let (ze, ze_err) = zeta_qi_2_euler(config.gaussian_prime_bound);
    let zk = zeta_qi_2();
    let c0 = PI / 4.0;
    let c = c0 * c1v * z2v / zk;
    let c_err = c * (c1_err / c1v + z2_err / z2v + 1e-15);
    Constants {
        c0,
        c1: c1v,
        c1_err,
        zeta_qi_2: zk,
        zeta_qi_2_euler: ze,
        zeta_qi_2_euler_err: ze_err,
        z2: z2v,
        z2_err,
        z2_dirichlet: z2d,
        z2_dirichlet_err: z2d_err,
        c,
        c_err,
        config,
    }
}

pub fn constants() -> Constants {
    constants_with(ConstantsConfig::default())
}
