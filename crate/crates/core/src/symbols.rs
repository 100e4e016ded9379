//! Quartic and quadratic residue symbols over `Z[i]`.
//!
//! [`quartic_symbol`] is the reference path: it factors the modulus and
//! applies the Euler criterion at each prime. The criterion is a
//! congruence modulo the prime ideal, so non-primary moduli are fine.
//! [`quartic_symbol_fast`] never factors anything; it runs a Euclid-style
//! descent driven by quartic reciprocity and the supplement laws for `i`
//! and `1+i`, and requires a primary modulus.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaussint::{factor, GaussInt};

/// A value in `{0, 1, i, -1, -i}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QuarticValue {
    Zero,
    /// `i^k`, `k` in `0..4`.
    Unit(u8),
}

impl QuarticValue {
    pub const ONE: QuarticValue = QuarticValue::Unit(0);
    pub const I: QuarticValue = QuarticValue::Unit(1);
    pub const MINUS_ONE: QuarticValue = QuarticValue::Unit(2);
    pub const MINUS_I: QuarticValue = QuarticValue::Unit(3);

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> QuarticValue {
        QuarticValue::Unit(k.rem_euclid(4) as u8)
    }

    pub fn conj(self) -> QuarticValue {
        match self {
            QuarticValue::Zero => QuarticValue::Zero,
            QuarticValue::Unit(k) => QuarticValue::Unit((4 - k) % 4),
        }
    }

    pub fn pow(self, e: u32) -> QuarticValue {
        match self {
            QuarticValue::Zero if e == 0 => QuarticValue::ONE,
            QuarticValue::Zero => QuarticValue::Zero,
            QuarticValue::Unit(k) => QuarticValue::Unit(((k as u64 * e as u64) % 4) as u8),
        }
    }

    pub fn is_zero(self) -> bool {
        self == QuarticValue::Zero
    }

    pub fn exponent(self) -> Option<u8> {
        match self {
            QuarticValue::Zero => None,
            QuarticValue::Unit(k) => Some(k),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            QuarticValue::Zero => Complex64::new(0.0, 0.0),
            QuarticValue::Unit(0) => Complex64::new(1.0, 0.0),
            QuarticValue::Unit(1) => Complex64::new(0.0, 1.0),
            QuarticValue::Unit(2) => Complex64::new(-1.0, 0.0),
            QuarticValue::Unit(_) => Complex64::new(0.0, -1.0),
        }
    }

    pub fn to_gauss(self) -> GaussInt {
        match self {
            QuarticValue::Zero => GaussInt::ZERO,
            QuarticValue::Unit(k) => GaussInt::UNITS[k as usize],
        }
    }
}

impl Mul for QuarticValue {
    type Output = QuarticValue;
    fn mul(self, o: QuarticValue) -> QuarticValue {
        match (self, o) {
            (QuarticValue::Unit(j), QuarticValue::Unit(k)) => QuarticValue::Unit((j + k) % 4),
            _ => QuarticValue::Zero,
        }
    }
}

impl fmt::Display for QuarticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuarticValue::Zero => "0",
            QuarticValue::Unit(0) => "1",
            QuarticValue::Unit(1) => "i",
            QuarticValue::Unit(2) => "-1",
            QuarticValue::Unit(_) => "-i",
        };
        f.write_str(s)
    }
}

impl Serialize for QuarticValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Euler criterion at a single odd prime `p`: the fourth root of unity
/// congruent to `a^((N(p)-1)/4)`.
pub fn euler_criterion(a: &GaussInt, p: &GaussInt) -> QuarticValue {
    let r = a.rem(p);
    if r.is_zero() {
        return QuarticValue::Zero;
    }
    let e = (p.norm() - 1) / 4;
    let t = r.pow_mod(e, p);
    for (k, u) in GaussInt::UNITS.iter().enumerate() {
        if t.congruent(u, p) {
            return QuarticValue::Unit(k as u8);
        }
    }
    unreachable!("{p} is not prime: {a}^{e} is not a fourth root of unity")
}

/// `(a/n)_4` via factorization of `n` and the Euler criterion.
pub fn quartic_symbol(a: &GaussInt, n: &GaussInt) -> Result<QuarticValue> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    if !n.is_odd() {
        return Err(Error::EvenNorm(*n));
    }
    if n.is_unit() {
        return Ok(QuarticValue::ONE);
    }
    let f = factor(n)?;
    let mut acc = QuarticValue::ONE;
    for (p, e) in &f.factors {
        acc = acc * euler_criterion(a, p).pow(*e);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn require_primary(n: &GaussInt) -> Result<()> {
    if !n.is_odd() {
        return Err(Error::EvenNorm(*n));
    }
    if !n.is_primary() {
        return Err(Error::NotPrimary(*n));
    }
    Ok(())
}

// (i/n)_4 exponent for primary n = a + bi: (1 - a)/2
fn i_exponent(n: &GaussInt) -> i64 {
    (1 - n.a).div_euclid(2)
}

// ((1+i)/n)_4 exponent for primary n: (a - b - 1 - b^2)/4
fn one_plus_i_exponent(n: &GaussInt) -> i64 {
    let (a, b) = (n.a as i128, n.b as i128);
    ((a - b - 1 - b * b) / 4).rem_euclid(4) as i64
}

/// `(i/n)_4 = i^((1-a)/2)` for primary `n = a + bi`.
pub fn supplement_i(n: &GaussInt) -> Result<QuarticValue> {
    require_primary(n)?;
    Ok(QuarticValue::i_pow(i_exponent(n)))
}

/// `((1+i)/n)_4 = i^((a-b-1-b^2)/4)` for primary `n = a + bi`.
pub fn supplement_one_plus_i(n: &GaussInt) -> Result<QuarticValue> {
    require_primary(n)?;
    Ok(QuarticValue::i_pow(one_plus_i_exponent(n)))
}

/// `(-1)^(((N(m)-1)/4)((N(n)-1)/4))`, the reciprocity sign for primary `m, n`.
pub fn reciprocity_sign(m: &GaussInt, n: &GaussInt) -> QuarticValue {
    let e = ((m.norm() - 1) / 4) % 2 * (((n.norm() - 1) / 4) % 2);
    if e == 1 {
        QuarticValue::MINUS_ONE
    } else {
        QuarticValue::ONE
    }
}

/// `(a/n)_4` for primary `n`, by reciprocity descent.
pub fn quartic_symbol_fast(a: &GaussInt, n: &GaussInt) -> Result<QuarticValue> {
    require_primary(n)?;
    let mut num = *a;
    let mut den = *n;
    let mut acc: i64 = 0;
    loop {
        if den.is_unit() {
            return Ok(QuarticValue::i_pow(acc));
        }
        num = num.rem(&den);
        if num.is_zero() {
            return Ok(QuarticValue::Zero);
        }
        while let Some(q) = num.div_exact(&GaussInt::ONE_PLUS_I) {
            num = q;
            acc += one_plus_i_exponent(&den);
        }
        let u = num.primary_unit().expect("odd after stripping 1+i");
        acc += u as i64 * i_exponent(&den);
        num = num.primary_associate().expect("odd");
        if reciprocity_sign(&num, &den) == QuarticValue::MINUS_ONE {
            acc += 2;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

/// `(a/n) = (a/n)_4^2`, valued in `{0, 1, -1}`.
pub fn quadratic_symbol(a: &GaussInt, n: &GaussInt) -> Result<QuarticValue> {
    Ok(quartic_symbol(a, n)?.pow(2))
}

/// Same as [`quadratic_symbol`] for primary `n`, using the descent.
pub fn quadratic_symbol_fast(a: &GaussInt, n: &GaussInt) -> Result<QuarticValue> {
    Ok(quartic_symbol_fast(a, n)?.pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussint::{coprime, primary_elements, residues_mod};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn examples() {
        assert!(g(2, 0).congruent(&GaussInt::I, &g(-1, -2)));
        assert_eq!(quartic_symbol(&g(2, 0), &g(-1, -2)).unwrap(), QuarticValue::I);
        assert_eq!(quartic_symbol(&g(5, 0), &g(-1, -2)).unwrap(), QuarticValue::Zero);
        assert_eq!(quartic_symbol(&GaussInt::I, &g(3, 2)).unwrap(), QuarticValue::MINUS_I);
        assert_eq!(quartic_symbol(&g(7, 3), &GaussInt::I).unwrap(), QuarticValue::ONE);
        assert_eq!(quartic_symbol(&g(1, 0), &g(1, 1)), Err(Error::EvenNorm(g(1, 1))));
        assert_eq!(quadratic_symbol(&g(2, 0), &g(-1, -2)).unwrap(), QuarticValue::MINUS_ONE);
    }

    #[test]
    fn supplement_examples() {
        assert_eq!(supplement_i(&g(3, 2)).unwrap(), QuarticValue::MINUS_I);
        assert_eq!(supplement_one_plus_i(&g(3, 2)).unwrap(), QuarticValue::MINUS_I);
        assert_eq!(supplement_i(&g(5, 0)).unwrap(), QuarticValue::MINUS_ONE);
        assert_eq!(supplement_i(&g(1, 2)), Err(Error::NotPrimary(g(1, 2))));
    }

    #[test]
    fn supplements_match_euler_criterion() {
        for n in primary_elements(2_000) {
            assert_eq!(supplement_i(&n).unwrap(), quartic_symbol(&GaussInt::I, &n).unwrap(), "{n}");
            assert_eq!(
                supplement_one_plus_i(&n).unwrap(),
                quartic_symbol(&GaussInt::ONE_PLUS_I, &n).unwrap(),
                "{n}"
            );
        }
    }

    #[test]
    fn fast_agrees_with_euler_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 10_000 {
            let n = g(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
            if n.norm().is_multiple_of(2) || n.norm() > 1_000_000 {
                continue;
            }
            let n = n.primary_associate().unwrap();
            let a = g(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
            if a.norm() > 1_000_000 {
                continue;
            }
            assert_eq!(
                quartic_symbol_fast(&a, &n).unwrap(),
                quartic_symbol(&a, &n).unwrap(),
                "({a}/{n})"
            );
            checked += 1;
        }
    }

    #[test]
    fn fast_identity_numerator_and_errors() {
        for n in primary_elements(500) {
            assert_eq!(quartic_symbol_fast(&GaussInt::ONE, &n).unwrap(), QuarticValue::ONE);
        }
        assert_eq!(quartic_symbol_fast(&g(2, 0), &g(1, 2)), Err(Error::NotPrimary(g(1, 2))));
        assert_eq!(quartic_symbol_fast(&g(2, 0), &g(2, 0)), Err(Error::EvenNorm(g(2, 0))));
    }

    #[test]
    fn numerator_multiplicativity() {
        for n in primary_elements(500).into_iter().filter(|n| n.norm() > 1) {
            let rs = residues_mod(&n).unwrap();
            let vals: Vec<_> = rs.iter().map(|x| quartic_symbol_fast(x, &n).unwrap()).collect();
            for (i, x) in rs.iter().enumerate() {
                for (j, y) in rs.iter().enumerate().skip(i) {
                    let xy = quartic_symbol_fast(&(*x * *y), &n).unwrap();
                    assert_eq!(xy, vals[i] * vals[j], "{x}*{y} mod {n}");
                }
            }
        }
    }

    #[test]
    fn denominator_multiplicativity_and_periodicity() {
        let ns = primary_elements(150);
        for a in [g(2, 0), g(3, 1), g(-5, 7), GaussInt::I, g(11, 0)] {
            for n1 in &ns {
                for n2 in &ns {
                    if !coprime(n1, n2) {
                        continue;
                    }
                    let lhs = quartic_symbol(&a, &(*n1 * *n2)).unwrap();
                    let rhs = quartic_symbol(&a, n1).unwrap() * quartic_symbol(&a, n2).unwrap();
                    assert_eq!(lhs, rhs);
                }
                let shifted = a + *n1 * g(3, -2);
                assert_eq!(
                    quartic_symbol(&shifted, n1).unwrap(),
                    quartic_symbol(&a, n1).unwrap()
                );
            }
        }
    }

    #[test]
    fn non_primary_modulus_uses_the_ideal() {
        for n in primary_elements(300) {
            for u in GaussInt::UNITS {
                let a = g(4, 7);
                assert_eq!(quartic_symbol(&a, &(u * n)).unwrap(), quartic_symbol(&a, &n).unwrap());
            }
        }
    }

    #[test]
    fn sixteen_congruent_to_one() {
        for n in primary_elements(20_000) {
            if (n.a - 1).rem_euclid(16) == 0 && n.b.rem_euclid(16) == 0 {
                assert_eq!(supplement_i(&n).unwrap(), QuarticValue::ONE);
                assert_eq!(supplement_one_plus_i(&n).unwrap(), QuarticValue::ONE);
            }
        }
    }

    #[test]
    fn rational_numerator_law() {
        for a in (-151i64..=151).filter(|a| a % 2 != 0) {
            let an = GaussInt::from_int(a);
            if !an.is_primary() {
                continue;
            }
            for b in -60i64..=60 {
                if b == 0 || crate::arith::gcd(a.unsigned_abs(), 2 * b.unsigned_abs()) != 1 {
                    continue;
                }
                assert_eq!(quartic_symbol(&GaussInt::from_int(b), &an).unwrap(), QuarticValue::ONE);
            }
        }
    }

    #[test]
    fn minus_one_parity() {
        for n in primary_elements(5_000).into_iter().filter(|n| n.norm() > 1) {
            let expected = if ((n.norm() - 1) / 4) % 2 == 0 {
                QuarticValue::ONE
            } else {
                QuarticValue::MINUS_ONE
            };
            assert_eq!(quartic_symbol(&g(-1, 0), &n).unwrap(), expected);
        }
    }

    #[test]
    fn value_algebra() {
        assert_eq!(QuarticValue::I * QuarticValue::I, QuarticValue::MINUS_ONE);
        assert_eq!(QuarticValue::I.conj(), QuarticValue::MINUS_I);
        assert_eq!(QuarticValue::Zero * QuarticValue::I, QuarticValue::Zero);
        assert_eq!(QuarticValue::MINUS_I.pow(3), QuarticValue::I);
        assert_eq!(QuarticValue::i_pow(-1), QuarticValue::MINUS_I);
        assert_eq!(QuarticValue::MINUS_I.to_string(), "-i");
    }
}
