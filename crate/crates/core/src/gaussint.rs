//! Exact arithmetic in the Gaussian integers.
//!
//! Parts are stored as `i64`; every product goes through `i128` and is
//! narrowed with a checked conversion, so overflow panics instead of
//! wrapping. Factoring refuses norms above a configurable bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Largest norm `factor` accepts unless told otherwise.
pub const DEFAULT_FACTOR_BOUND: u128 = 1_000_000_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussInt {
    pub a: i64,
    pub b: i64,
}

#[inline]
fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("Gaussian integer part overflowed i64")
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { a: 0, b: 0 };
    pub const ONE: GaussInt = GaussInt { a: 1, b: 0 };
    pub const I: GaussInt = GaussInt { a: 0, b: 1 };
    pub const ONE_PLUS_I: GaussInt = GaussInt { a: 1, b: 1 };
    /// `1, i, -1, -i` in exponent order.
    pub const UNITS: [GaussInt; 4] = [
        GaussInt { a: 1, b: 0 },
        GaussInt { a: 0, b: 1 },
        GaussInt { a: -1, b: 0 },
        GaussInt { a: 0, b: -1 },
    ];

    pub const fn new(a: i64, b: i64) -> Self {
        GaussInt { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        GaussInt { a, b: 0 }
    }

    pub fn norm(&self) -> u128 {
        let (a, b) = (self.a as i128, self.b as i128);
        (a * a + b * b) as u128
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.a, -self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Exponent `k` with `self = i^k`, if `self` is a unit.
    pub fn unit_exponent(&self) -> Option<u8> {
        GaussInt::UNITS.iter().position(|u| u == self).map(|k| k as u8)
    }

    pub fn is_odd(&self) -> bool {
        self.norm() % 2 == 1
    }

    /// `a ≡ 1, b ≡ 0 (mod 4)` or `a ≡ 3, b ≡ 2 (mod 4)`.
    pub fn is_primary(&self) -> bool {
        matches!(
            (self.a.rem_euclid(4), self.b.rem_euclid(4)),
            (1, 0) | (3, 2)
        )
    }

    /// The unique associate congruent to 1 modulo `(1+i)^3`.
    pub fn primary_associate(&self) -> Result<GaussInt> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        if !self.is_odd() {
            return Err(Error::EvenNorm(*self));
        }
        Ok(GaussInt::UNITS
            .iter()
            .map(|&u| u * *self)
            .find(GaussInt::is_primary)
            .expect("odd elements have exactly one primary associate"))
    }

    /// Unit `u` with `self = u * primary_associate(self)`.
    pub fn primary_unit(&self) -> Result<u8> {
        let p = self.primary_associate()?;
        Ok(GaussInt::UNITS
            .iter()
            .position(|&u| u * p == *self)
            .expect("associate") as u8)
    }

    /// Canonical associate for even or odd elements: primary when odd,
    /// otherwise the associate with `a > 0, b >= 0`.
    pub fn normalize(&self) -> GaussInt {
        if self.is_zero() {
            return *self;
        }
        if let Ok(p) = self.primary_associate() {
            return p;
        }
        GaussInt::UNITS
            .iter()
            .map(|&u| u * *self)
            .find(|z| z.a > 0 && z.b >= 0)
            .expect("one associate lies in the first quadrant")
    }

    /// Quotient rounded to the nearest Gaussian integer.
    pub fn div_round(&self, d: &GaussInt) -> GaussInt {
        assert!(!d.is_zero(), "division by zero");
        let n = d.norm() as i128;
        let (x, y) = (self.a as i128, self.b as i128);
        let (c, e) = (d.a as i128, d.b as i128);
        // self * conj(d) = (xc + ye) + (yc - xe) i
        let re = x * c + y * e;
        let im = y * c - x * e;
        let round = |t: i128| (2 * t + n).div_euclid(2 * n);
        GaussInt::new(narrow(round(re)), narrow(round(im)))
    }

    /// Remainder of nearest-rounding division; its norm is at most `N(d)/2`.
    pub fn rem(&self, d: &GaussInt) -> GaussInt {
        *self - self.div_round(d) * *d
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm() as i128;
        let (x, y) = (self.a as i128, self.b as i128);
        let (c, e) = (d.a as i128, d.b as i128);
        let re = x * c + y * e;
        let im = y * c - x * e;
        if re % n != 0 || im % n != 0 {
            return None;
        }
        Some(GaussInt::new(narrow(re / n), narrow(im / n)))
    }

    pub fn divides(&self, other: &GaussInt) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn pow(&self, mut e: u32) -> GaussInt {
        let mut base = *self;
        let mut acc = GaussInt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// `self^e mod m` with nearest-rounding reduction at each step.
    pub fn pow_mod(&self, mut e: u128, m: &GaussInt) -> GaussInt {
        let mut base = self.rem(m);
        let mut acc = GaussInt::ONE.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc * base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (base * base).rem(m);
            }
        }
        acc
    }

    /// `self ≡ other (mod m)`.
    pub fn congruent(&self, other: &GaussInt, m: &GaussInt) -> bool {
        m.divides(&(*self - *other))
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(
            self.a.checked_add(o.a).expect("overflow"),
            self.b.checked_add(o.b).expect("overflow"),
        )
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt::new(
            self.a.checked_sub(o.a).expect("overflow"),
            self.b.checked_sub(o.b).expect("overflow"),
        )
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.a, -self.b)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        GaussInt::new(narrow(a * c - b * d), narrow(a * d + b * c))
    }
}

impl From<i64> for GaussInt {
    fn from(a: i64) -> Self {
        GaussInt::from_int(a)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, b: i64, lead: bool| match (b, lead) {
            (1, true) => write!(f, "i"),
            (-1, true) => write!(f, "-i"),
            (1, false) => write!(f, "+i"),
            (-1, false) => write!(f, "-i"),
            (b, true) => write!(f, "{b}i"),
            (b, false) if b > 0 => write!(f, "+{b}i"),
            (b, false) => write!(f, "{b}i"),
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => imag(f, b, true),
            (a, b) => {
                write!(f, "{a}")?;
                imag(f, b, false)
            }
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussInt {
    type Err = Error;

    /// Accepts forms like `5`, `-3`, `i`, `-2i`, `3+2i`, `-1-2i`.
    fn from_str(s: &str) -> Result<GaussInt> {
        let bad = || Error::Domain(format!("cannot parse Gaussian integer {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return t.parse::<i64>().map(GaussInt::from_int).map_err(|_| bad());
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1,
            "-" => -1,
            x => x.parse::<i64>().map_err(|_| bad())?,
        };
        let re = re.parse::<i64>().map_err(|_| bad())?;
        Ok(GaussInt::new(re, im))
    }
}

/// `unit * Π prime^exponent`. Odd primes are primary; the ramified prime
/// appears as `1+i`. Sorted by `(norm, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussFactorization {
    pub unit: GaussInt,
    pub factors: Vec<(GaussInt, u32)>,
}

impl GaussFactorization {
    pub fn product(&self) -> GaussInt {
        self.factors
            .iter()
            .fold(self.unit, |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

pub fn factor(n: &GaussInt) -> Result<GaussFactorization> {
    factor_with_bound(n, DEFAULT_FACTOR_BOUND)
}

pub fn factor_with_bound(n: &GaussInt, bound: u128) -> Result<GaussFactorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let norm = n.norm();
    if norm > bound {
        return Err(Error::FactorBound { norm, bound });
    }
    let mut rest = *n;
    let mut factors = Vec::new();
    let mut strip = |p: GaussInt, rest: &mut GaussInt| {
        let mut k = 0;
        while let Some(q) = rest.div_exact(&p) {
            *rest = q;
            k += 1;
        }
        if k > 0 {
            factors.push((p, k));
        }
    };
    for (p, _) in arith::factor_u64(norm as u64) {
        match p % 4 {
            2 => strip(GaussInt::ONE_PLUS_I, &mut rest),
            3 => strip(GaussInt::from_int(-(p as i64)), &mut rest),
            _ => {
                let pi = split_prime(p);
                strip(pi, &mut rest);
                strip(pi.conj().primary_associate()?, &mut rest);
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by_key(|(p, _)| (p.norm(), p.a, p.b));
    Ok(GaussFactorization {
        unit: rest,
        factors,
    })
}

/// A primary Gaussian prime above the rational prime `p ≡ 1 (mod 4)`.
pub fn split_prime(p: u64) -> GaussInt {
    let x = arith::sqrt_minus_one(p);
    let g = gcd(&GaussInt::from_int(p as i64), &GaussInt::new(x as i64, 1))
        .expect("nonzero arguments");
    debug_assert_eq!(g.norm(), p as u128);
    g
}

/// Greatest common divisor, normalized to be primary (or 1). Even-norm
/// results use the first-quadrant associate.
pub fn gcd(m: &GaussInt, n: &GaussInt) -> Result<GaussInt> {
    if m.is_zero() && n.is_zero() {
        return Err(Error::Zero);
    }
    let (mut x, mut y) = (*m, *n);
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    Ok(x.normalize())
}

pub fn coprime(m: &GaussInt, n: &GaussInt) -> bool {
    matches!(gcd(m, n), Ok(g) if g.is_unit())
}

/// Complete residue system modulo `n`: `{x + yi : 0 <= x < N/g, 0 <= y < g}`
/// with `g = gcd(a, b)`, ordered by `y` then `x`.
pub fn residues_mod(n: &GaussInt) -> Result<Vec<GaussInt>> {
    let (rows, cols) = residue_shape(n)?;
    let mut out = Vec::with_capacity((rows * cols) as usize);
    for y in 0..rows {
        for x in 0..cols {
            out.push(GaussInt::new(x, y));
        }
    }
    Ok(out)
}

// (g, N/g)
fn residue_shape(n: &GaussInt) -> Result<(i64, i64)> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let g = arith::gcd(n.a.unsigned_abs(), n.b.unsigned_abs()) as i64;
    let norm = i64::try_from(n.norm()).map_err(|_| Error::Domain("modulus too large".into()))?;
    Ok((g, norm / g))
}

/// Canonical representative of `x` in the residue system of `residues_mod(n)`.
pub fn reduce_mod(x: &GaussInt, n: &GaussInt) -> Result<GaussInt> {
    let (g, width) = residue_shape(n)?;
    // lattice element with imaginary part exactly g: n * (u + v i) with b u + a v = g
    let (_, u, v) = ext_gcd(n.b as i128, n.a as i128);
    let lift = *n * GaussInt::new(narrow(u), narrow(v));
    debug_assert_eq!(lift.b, g);
    let k = x.b.div_euclid(g);
    let z = *x - lift * GaussInt::from_int(k);
    Ok(GaussInt::new(z.a.rem_euclid(width), z.b))
}

// (d, u, v) with a u + b v = d = gcd(a, b) >= 0
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// All primary elements with norm `<= max_norm`, sorted by `(norm, a, b)`.
pub fn primary_elements(max_norm: u64) -> Vec<GaussInt> {
    let r = (max_norm as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let z = GaussInt::new(a, b);
            if z.is_primary() && z.norm() <= max_norm as u128 {
                out.push(z);
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.a, z.b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn norms() {
        assert_eq!(g(3, 2).norm(), 13);
        assert_eq!(GaussInt::ONE.norm(), 1);
        assert_eq!(g(-1, -2).norm(), 5);
    }

    #[test]
    fn primary_examples() {
        assert!(g(3, 2).is_primary());
        assert!(!g(1, 2).is_primary());
        assert!(g(5, 0).is_primary());
        assert_eq!(g(1, 2).primary_associate().unwrap(), g(-1, -2));
        assert_eq!(GaussInt::ONE.primary_associate().unwrap(), GaussInt::ONE);
        assert_eq!(g(2, 1).primary_associate().unwrap(), g(-1, 2));
        assert_eq!(g(1, 1).primary_associate(), Err(Error::EvenNorm(g(1, 1))));
        assert_eq!(GaussInt::ZERO.primary_associate(), Err(Error::Zero));
    }

    #[test]
    fn exactly_one_primary_associate() {
        for a in -30..=30 {
            for b in -30..=30 {
                let z = g(a, b);
                if z.norm() % 2 == 1 {
                    let count = GaussInt::UNITS.iter().filter(|&&u| (u * z).is_primary()).count();
                    assert_eq!(count, 1, "{z}");
                    assert!(z.primary_associate().unwrap().is_primary());
                }
            }
        }
    }

    #[test]
    fn primary_congruences_follow_norm() {
        for z in primary_elements(100_000) {
            let s = if ((z.norm() - 1) / 4) % 2 == 0 { 1 } else { -1 };
            assert_eq!(z.a.rem_euclid(4), (s as i64).rem_euclid(4), "{z}");
            assert_eq!(z.b.rem_euclid(4), (1 - s as i64).rem_euclid(4), "{z}");
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor(&g(5, 0)).unwrap();
        assert_eq!(f.unit, GaussInt::ONE);
        assert_eq!(f.factors, vec![(g(-1, -2), 1), (g(-1, 2), 1)]);
        let f = factor(&g(3, 2)).unwrap();
        assert_eq!(f.factors, vec![(g(3, 2), 1)]);
        // 3 is inert; its primary associate is -3
        let f = factor(&g(9, 0)).unwrap();
        assert_eq!(f.unit, GaussInt::ONE);
        assert_eq!(f.factors, vec![(g(-3, 0), 2)]);
        let f = factor(&g(2, 0)).unwrap();
        assert_eq!(f.product(), g(2, 0));
        assert_eq!(factor(&GaussInt::ZERO), Err(Error::Zero));
        assert!(matches!(
            factor(&g(2_000_000, 0)),
            Err(Error::FactorBound { .. })
        ));
    }

    #[test]
    fn factor_reconstructs_exhaustively() {
        let r = 1000i64;
        for a in -r..=r {
            let bmax = ((r * r - a * a) as f64).sqrt() as i64;
            for b in -bmax..=bmax {
                let z = g(a, b);
                if z.is_zero() || z.norm() > 1_000_000 {
                    continue;
                }
                let f = factor(&z).unwrap();
                assert_eq!(f.product(), z);
                assert!(f.unit.is_unit());
                for w in f.factors.windows(2) {
                    assert!((w[0].0.norm(), w[0].0.a, w[0].0.b) < (w[1].0.norm(), w[1].0.a, w[1].0.b));
                }
                for (p, _) in &f.factors {
                    assert!(p.is_primary() || *p == GaussInt::ONE_PLUS_I);
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&g(5, 0), &g(-1, -2)).unwrap(), g(-1, -2));
        assert_eq!(gcd(&g(3, 2), &g(7, 0)).unwrap(), GaussInt::ONE);
        assert_eq!(gcd(&g(2, 1), &GaussInt::ZERO).unwrap(), g(-1, 2));
        assert_eq!(gcd(&GaussInt::ZERO, &GaussInt::ZERO), Err(Error::Zero));
        assert_eq!(gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 1));
    }

    #[test]
    fn residue_systems() {
        assert_eq!(residues_mod(&g(1, 1)).unwrap().len(), 2);
        assert_eq!(residues_mod(&g(3, 0)).unwrap().len(), 9);
        for n in [g(-1, -2), g(3, 0), g(3, 2), g(2, 2), g(-3, 6)] {
            let rs = residues_mod(&n).unwrap();
            assert_eq!(rs.len() as u128, n.norm());
            for (i, x) in rs.iter().enumerate() {
                for y in &rs[..i] {
                    assert!(!x.congruent(y, &n), "{x} ≡ {y} mod {n}");
                }
                assert_eq!(reduce_mod(x, &n).unwrap(), *x);
            }
        }
        assert_eq!(residues_mod(&GaussInt::ZERO), Err(Error::Zero));
    }

    #[test]
    fn reduce_is_canonical() {
        let n = g(-3, 6);
        let rs: std::collections::HashSet<_> = residues_mod(&n).unwrap().into_iter().collect();
        for a in -40..40 {
            for b in -40..40 {
                let x = g(a, b);
                let r = reduce_mod(&x, &n).unwrap();
                assert!(rs.contains(&r));
                assert!(r.congruent(&x, &n));
            }
        }
    }

    #[test]
    fn display_and_parse() {
        for (s, z) in [
            ("3+2i", g(3, 2)),
            ("-1-2i", g(-1, -2)),
            ("i", g(0, 1)),
            ("-i", g(0, -1)),
            ("5", g(5, 0)),
            ("-2i", g(0, -2)),
            ("4-i", g(4, -1)),
            ("0", g(0, 0)),
        ] {
            assert_eq!(s.parse::<GaussInt>().unwrap(), z);
            assert_eq!(z.to_string(), s);
        }
        assert!("3+".parse::<GaussInt>().is_err());
        assert!("x".parse::<GaussInt>().is_err());
    }
}
