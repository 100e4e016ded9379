//! Primitive quartic Dirichlet characters with primitive square.
//!
//! Every such character of odd conductor `q` is `m ↦ (m/n)_4` for a primary,
//! square-free `n` free of rational prime divisors with `N(n) = q`. For such
//! `n`, `Z[i]/(n) ≅ Z/q`, and the character factors over the split primes
//! `ϖ | n`; each local factor is evaluated in `Z/p` through the integer that
//! `i` reduces to modulo `ϖ`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{self, pow_mod};
use crate::error::{Error, Result};
use crate::gaussint::{self, GaussInt};
use crate::symbols::{quartic_symbol_fast, QuarticValue};

#[derive(Clone, Debug, PartialEq, Eq)]
struct LocalPrime {
    p: u64,
    /// integer congruent to `i` modulo the prime above `p` dividing the generator
    root: u64,
}

impl LocalPrime {
    fn symbol(&self, m: u64) -> QuarticValue {
        let r = m % self.p;
        if r == 0 {
            return QuarticValue::Zero;
        }
        let t = pow_mod(r, (self.p - 1) / 4, self.p);
        let p = self.p;
        if t == 1 {
            QuarticValue::ONE
        } else if t == self.root {
            QuarticValue::I
        } else if t == p - 1 {
            QuarticValue::MINUS_ONE
        } else {
            debug_assert_eq!(t, p - self.root);
            QuarticValue::MINUS_I
        }
    }
}

/// `χ_n : m ↦ (m/n)_4` with conductor `q = N(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCharacter {
    conductor: u64,
    generator: GaussInt,
    locals: Vec<LocalPrime>,
}

impl QuarticCharacter {
    /// Validates that `n` is primary, square-free, free of rational prime
    /// divisors and not a unit.
    pub fn new(n: GaussInt) -> Result<Self> {
        let invalid = || Error::InvalidGenerator(n);
        if !n.is_odd() || !n.is_primary() || n.is_unit() {
            return Err(invalid());
        }
        if arith::gcd(n.a.unsigned_abs(), n.b.unsigned_abs()) != 1 {
            return Err(invalid());
        }
        let q = u64::try_from(n.norm()).map_err(|_| invalid())?;
        let mut locals = Vec::new();
        for (p, e) in arith::factor_u64(q) {
            if e != 1 || p % 4 != 1 {
                return Err(invalid());
            }
            let pi = gaussint::gcd(&n, &GaussInt::from_int(p as i64))?;
            debug_assert_eq!(pi.norm(), p as u128);
            // c + d i ≡ 0 (mod ϖ)  =>  i ≡ -c/d
            let c = pi.a.rem_euclid(p as i64) as u64;
            let d = pi.b.rem_euclid(p as i64) as u64;
            let dinv = arith::inv_mod(d, p).expect("p does not divide the imaginary part");
            let root = arith::mul_mod(p - c, dinv, p) % p;
            debug_assert_eq!(arith::mul_mod(root, root, p), p - 1);
            locals.push(LocalPrime { p, root });
        }
        Ok(QuarticCharacter {
            conductor: q,
            generator: n,
            locals,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn generator(&self) -> GaussInt {
        self.generator
    }

    pub fn eval(&self, m: i64) -> QuarticValue {
        let m = m.rem_euclid(self.conductor as i64) as u64;
        self.locals
            .iter()
            .fold(QuarticValue::ONE, |acc, l| acc * l.symbol(m))
    }

    /// `χ(-1) = (-1)^((q-1)/4)` as `+1` or `-1`.
    pub fn parity(&self) -> i32 {
        if ((self.conductor - 1) / 4).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The character attached to the primary associate of `conj(n)`, which
    /// is the complex conjugate character.
    pub fn conjugate(&self) -> QuarticCharacter {
        let n = self
            .generator
            .conj()
            .primary_associate()
            .expect("odd generator");
        QuarticCharacter::new(n).expect("conjugate of a valid generator is valid")
    }

    /// Values `χ(0), ..., χ(q-1)`, built from discrete logarithms in each
    /// local factor.
    pub fn table(&self) -> Vec<QuarticValue> {
        let q = self.conductor as usize;
        let mut exps = vec![0u8; q];
        let mut zero = vec![false; q];
        for l in &self.locals {
            let p = l.p as usize;
            let g = arith::primitive_root(l.p, 1);
            let chi_g = l.symbol(g).exponent().expect("unit");
            let mut local = vec![None; p];
            let mut x = 1u64;
            for j in 0..p - 1 {
                local[x as usize] = Some(((chi_g as usize * j) % 4) as u8);
                x = x * g % l.p;
            }
            for m in 0..q {
                match local[m % p] {
                    Some(k) => exps[m] = (exps[m] + k) % 4,
                    None => zero[m] = true,
                }
            }
        }
        exps.into_iter()
            .zip(zero)
            .map(|(k, z)| if z { QuarticValue::Zero } else { QuarticValue::Unit(k) })
            .collect()
    }
}

/// All valid generators of norm `q`, sorted by `(a, b)`.
pub fn enumerate_generators(q: u64) -> Result<Vec<GaussInt>> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenConductor(q));
    }
    if q <= 1 {
        return Ok(Vec::new());
    }
    let fac = arith::factor_u64(q);
    if fac.iter().any(|&(p, e)| e > 1 || p % 4 != 1) {
        return Ok(Vec::new());
    }
    let mut gens = vec![GaussInt::ONE];
    for (p, _) in fac {
        let pi = gaussint::split_prime(p);
        let pi_bar = pi.conj().primary_associate()?;
        gens = gens
            .into_iter()
            .flat_map(|g| [g * pi, g * pi_bar])
            .collect();
    }
    gens.sort_by_key(|z| (z.a, z.b));
    Ok(gens)
}

/// Every character with odd conductor `q <= max_q`, ordered by
/// `(q, a, b)`. Generated by scanning primary lattice points.
pub fn enumerate_range(max_q: u64) -> Vec<QuarticCharacter> {
    let sf = arith::squarefree_sieve(max_q as usize);
    let r = (max_q as f64).sqrt() as i64 + 1;
    let mut gens = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let n = GaussInt::new(a, b);
            let q = n.norm();
            if q <= 1 || q > max_q as u128 || !n.is_primary() {
                continue;
            }
            if arith::gcd(a.unsigned_abs(), b.unsigned_abs()) != 1 || !sf[q as usize] {
                continue;
            }
            gens.push(n);
        }
    }
    gens.sort_by_key(|z| (z.norm(), z.a, z.b));
    gens.into_iter()
        .map(|n| QuarticCharacter::new(n).expect("sieve admits only valid generators"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub q: u64,
    /// characters mod `q` that are primitive, of order 4, with primitive square
    pub brute_force_count: usize,
    pub generator_count: usize,
    /// every `χ_n` matches exactly one brute-force character and no two coincide
    pub bijection: bool,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.bijection && self.brute_force_count == self.generator_count
    }
}

/// Default upper bound on `q` for [`verify_correspondence`].
pub const CORRESPONDENCE_BOUND: u64 = 2000;

/// Builds all characters mod `q` with `χ^4` principal from their prime-power
/// components, filters by brute-force primitivity tests on value tables and
/// compares with [`enumerate_generators`].
pub fn verify_correspondence(q: u64) -> Result<CorrespondenceReport> {
    verify_correspondence_bounded(q, CORRESPONDENCE_BOUND)
}

pub fn verify_correspondence_bounded(q: u64, bound: u64) -> Result<CorrespondenceReport> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenConductor(q));
    }
    if q > bound {
        return Err(Error::Domain(format!("q = {q} exceeds the brute-force bound {bound}")));
    }
    let brute = brute_force_quartic_tables(q);
    let gens = enumerate_generators(q)?;
    let index: HashMap<&Vec<QuarticValue>, usize> =
        brute.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut hit = vec![false; brute.len()];
    let mut bijection = true;
    for n in &gens {
        let chi = QuarticCharacter::new(*n)?;
        let table: Vec<QuarticValue> = (0..q as i64).map(|m| chi.eval(m)).collect();
        match index.get(&table) {
            Some(&i) if !hit[i] => hit[i] = true,
            _ => bijection = false,
        }
    }
    Ok(CorrespondenceReport {
        q,
        brute_force_count: brute.len(),
        generator_count: gens.len(),
        bijection,
    })
}

// Value tables (indexed 0..q) of the primitive order-4 characters mod q
// whose square is primitive.
fn brute_force_quartic_tables(q: u64) -> Vec<Vec<QuarticValue>> {
    if q == 1 {
        return Vec::new();
    }
    let qs = q as usize;
    // per prime power: modulus, discrete-log table, admissible exponents t with χ(g) = i^t
    let mut comps = Vec::new();
    for (p, k) in arith::factor_u64(q) {
        let pk = p.pow(k);
        let phi = pk / p * (p - 1);
        let g = arith::primitive_root(p, k);
        let mut dlog = vec![None; pk as usize];
        let mut x = 1u64;
        for j in 0..phi {
            dlog[x as usize] = Some(j);
            x = x * g % pk;
        }
        let ts: Vec<u64> = (0..4).filter(|t| (t * phi) % 4 == 0).collect();
        comps.push((pk, dlog, ts));
    }
    let mut choices: Vec<Vec<u64>> = vec![Vec::new()];
    for (_, _, ts) in &comps {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                ts.iter().map(move |&t| {
                    let mut c = c.clone();
                    c.push(t);
                    c
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for choice in choices {
        let table: Vec<QuarticValue> = (0..qs)
            .map(|x| {
                let mut e = 0u64;
                for ((pk, dlog, _), t) in comps.iter().zip(&choice) {
                    match dlog[x % *pk as usize] {
                        Some(j) => e += t * j,
                        None => return QuarticValue::Zero,
                    }
                }
                QuarticValue::Unit((e % 4) as u8)
            })
            .collect();
        let square: Vec<QuarticValue> = table.iter().map(|v| v.pow(2)).collect();
        let order_four = square.contains(&QuarticValue::MINUS_ONE);
        if order_four && is_primitive(&table, q) && is_primitive(&square, q) {
            out.push(table);
        }
    }
    out
}

/// A character mod `q` is induced from modulus `q/p` iff it is trivial on
/// units `x ≡ 1 (mod q/p)`.
pub fn is_primitive(table: &[QuarticValue], q: u64) -> bool {
    arith::factor_u64(q).iter().all(|&(p, _)| {
        let d = (q / p) as usize;
        (1..q as usize)
            .step_by(d)
            .any(|x| !table[x].is_zero() && table[x] != QuarticValue::ONE)
    })
}

/// `ψ_m(n) = (m/n)_4` on primary `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeCharacter {
    pub twist: i64,
}

impl HeckeCharacter {
    pub fn new(twist: i64) -> Self {
        HeckeCharacter { twist }
    }

    pub fn eval(&self, n: &GaussInt) -> Result<QuarticValue> {
        quartic_symbol_fast(&GaussInt::from_int(self.twist), n)
    }
}
