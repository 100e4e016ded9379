//! Quartic Gauss sums over `Z[i]`, the Dirichlet Gauss sum of a quartic
//! character, and series and averages built from them.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::QuarticCharacter;
use crate::error::{Error, Result};
use crate::gaussint::{self, factor, GaussInt};
use crate::moments::WeightFunction;
use crate::numeric::{e_frac, KahanSum};
use crate::symbols::{quartic_symbol_fast, supplement_i, supplement_one_plus_i, QuarticValue};

/// `ẽ(x/n) = e(Im(x/n))`, from the exact numerator `Im(x·conj(n))`.
pub fn additive_char(x: &GaussInt, n: &GaussInt) -> Result<Complex64> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let im = (x.b as i128) * (n.a as i128) - (x.a as i128) * (n.b as i128);
    Ok(e_frac(im, n.norm() as i128))
}

fn odd_modulus(n: &GaussInt) -> Result<GaussInt> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    if !n.is_odd() {
        return Err(Error::EvenNorm(*n));
    }
    n.primary_associate()
}

/// `g(n) = Σ_{x mod n} (x/n)_4 ẽ(x/n)`; `g(unit) = 1`.
pub fn gauss_sum(n: &GaussInt) -> Result<Complex64> {
    gauss_sum_twisted(&GaussInt::ONE, n)
}

/// `g(k, n) = Σ_{x mod n} (x/n)_4 ẽ(kx/n)`.
pub fn gauss_sum_twisted(k: &GaussInt, n: &GaussInt) -> Result<Complex64> {
    let primary = odd_modulus(n)?;
    if n.is_unit() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut acc = KahanSum::new();
    for x in gaussint::residues_mod(n)? {
        let chi = quartic_symbol_fast(&x, &primary)?;
        if chi.is_zero() {
            continue;
        }
        acc.add(chi.to_complex() * additive_char(&(*k * x), n)?);
    }
    Ok(acc.value())
}

/// `τ(χ) = Σ_{x=1}^{q} χ(x) e(x/q)`.
pub fn dirichlet_gauss_sum(chi: &QuarticCharacter) -> Complex64 {
    let q = chi.conductor() as i128;
    let table = chi.table();
    let mut acc = KahanSum::new();
    for (x, v) in table.iter().enumerate() {
        if !v.is_zero() {
            acc.add(v.to_complex() * e_frac(x as i128, q));
        }
    }
    acc.value()
}

/// `(n̄/n)_4` through the supplement-law evaluation:
/// `conj(((-2i)^3/n)_4)`, times `i^{-1}` when `(-1/n)_4 = -1`.
pub fn nbar_over_n(n: &GaussInt) -> Result<QuarticValue> {
    let chi = QuarticCharacter::new(*n)?;
    let minus_two_i_cubed = GaussInt::new(0, -2).pow(3);
    let twist = quartic_symbol_fast(&minus_two_i_cubed, n)?.conj();
    Ok(if chi.parity() == 1 {
        twist
    } else {
        twist * QuarticValue::MINUS_I
    })
}

/// `τ(χ_n) = (n̄/n)_4 · g_tr(n)`, where `g_tr(n) = Σ (x/n)_4 e(Tr(x/n))` is
/// the Gauss sum for the trace character; `Tr(z) = Im(2iz)`, so
/// `g_tr(n) = g(2i, n)`.
pub fn tau_closed_form(n: &GaussInt) -> Result<Complex64> {
    let root = nbar_over_n(n)?;
    Ok(root.to_complex() * gauss_sum_twisted(&GaussInt::new(0, 2), n)?)
}

/// Memoized `g(n)` for primary `n`, assembled from prime Gauss sums with
/// `g(n1 n2) = (n2/n1)_4 (n1/n2)_4 g(n1) g(n2)`.
#[derive(Default)]
pub struct GaussSumTable {
    primes: HashMap<GaussInt, Complex64>,
}

impl GaussSumTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: &GaussInt) -> Result<Complex64> {
        if !n.is_primary() {
            return Err(Error::NotPrimary(*n));
        }
        if n.is_unit() {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let f = factor(n)?;
        if !f.is_squarefree() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut acc_n = GaussInt::ONE;
        let mut acc = Complex64::new(1.0, 0.0);
        for (p, _) in &f.factors {
            let gp = match self.primes.get(p) {
                Some(v) => *v,
                None => {
                    let v = gauss_sum(p)?;
                    self.primes.insert(*p, v);
                    v
                }
            };
            let twist = quartic_symbol_fast(p, &acc_n)? * quartic_symbol_fast(&acc_n, p)?;
            acc = acc * gp * twist.to_complex();
            acc_n = acc_n * *p;
        }
        Ok(acc)
    }
}

/// A Hecke character mod 16 of trivial infinite type:
/// `n ↦ (i/n)_4^i_power · ((1+i)/n)_4^one_plus_i_power`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Chi16 {
    pub i_power: u8,
    pub one_plus_i_power: u8,
}

impl Chi16 {
    pub const TRIVIAL: Chi16 = Chi16 {
        i_power: 0,
        one_plus_i_power: 0,
    };

    pub fn eval(&self, n: &GaussInt) -> Result<QuarticValue> {
        Ok(supplement_i(n)?.pow(self.i_power as u32)
            * supplement_one_plus_i(n)?.pow(self.one_plus_i_power as u32))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    /// bound on the omitted terms `N(n) > cutoff`
    pub tail_bound: f64,
    pub terms: usize,
}

/// Bound on `Σ_{n primary, N(n) > x} N(n)^{-kappa}` for `kappa > 1`, from
/// `#{n primary : N(n) <= t} <= 0.3927 t + 2.23 √t + 3.15`.
// 0.3927 is π/8 rounded up, which keeps the count an upper bound
#[allow(clippy::approx_constant)]
pub fn primary_tail_bound(x: f64, kappa: f64) -> f64 {
    debug_assert!(kappa > 1.0);
    kappa
        * (0.3927 * x.powf(1.0 - kappa) / (kappa - 1.0)
            + 2.23 * x.powf(0.5 - kappa) / (kappa - 0.5)
            + 3.15 * x.powf(-kappa) / kappa)
}

/// Truncation of `h(r, s; χ) = Σ_{(n,r)=1, n primary} χ(n) g(r,n) N(n)^{-s}`
/// to `N(n) <= cutoff`. Only `Re(s) >= 2` is accepted.
pub fn h_series(r: &GaussInt, s: Complex64, chi: Chi16, cutoff: u64) -> Result<SeriesValue> {
    if s.re < 2.0 {
        return Err(Error::Domain(format!("h(r, s) needs Re(s) >= 2, got {s}")));
    }
    if cutoff < 1000 {
        return Err(Error::Domain(format!("cutoff {cutoff} below 1000")));
    }
    if r.is_zero() {
        return Err(Error::Zero);
    }
    let mut table = GaussSumTable::new();
    let mut acc = KahanSum::new();
    let mut terms = 0;
    for n in gaussint::primary_elements(cutoff) {
        if !gaussint::coprime(&n, r) {
            continue;
        }
        let g = table.get(&n)?;
        if g == Complex64::new(0.0, 0.0) {
            continue;
        }
        // g(r, n) = conj((r/n)_4) g(n) for (r, n) = 1
        let twist = quartic_symbol_fast(r, &n)?.conj() * chi.eval(&n)?;
        let norm = n.norm() as f64;
        acc.add(twist.to_complex() * g * Complex64::new(norm, 0.0).powc(-s));
        terms += 1;
    }
    // |g(r, n)| <= N(n)^{1/2} for (n, r) = 1
    let tail_bound = primary_tail_bound(cutoff as f64, s.re - 0.5);
    Ok(SeriesValue {
        value: acc.value(),
        tail_bound,
        terms,
    })
}

/// `H(l, X) = Σ_{n primary} conj(χ_n(l)) g(n) N(n)^{-1/2} w(N(n)/X)`.
/// With `restricted`, only square-free `n` free of rational prime divisors
/// are summed.
pub fn gauss_average(l: &GaussInt, x: f64, w: &WeightFunction, restricted: bool) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("X must be positive, got {x}")));
    }
    let (lo, hi) = w.support();
    let max_norm = (hi * x).floor() as u64;
    let mut table = GaussSumTable::new();
    let mut acc = KahanSum::new();
    for n in gaussint::primary_elements(max_norm) {
        let norm = n.norm() as f64;
        let weight = w.eval(norm / x);
        if norm <= lo * x || weight == 0.0 {
            continue;
        }
        if restricted && (crate::arith::gcd(n.a.unsigned_abs(), n.b.unsigned_abs()) != 1) {
            continue;
        }
        let g = table.get(&n)?;
        if g == Complex64::new(0.0, 0.0) {
            continue;
        }
        let chi = quartic_symbol_fast(l, &n)?.conj();
        acc.add(chi.to_complex() * g * (weight / norm.sqrt()));
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_range;
    use crate::gaussint::{coprime, primary_elements};
    use crate::symbols::quartic_symbol;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn additive_character_examples() {
        assert!(close(additive_char(&GaussInt::ZERO, &g(3, 2)).unwrap(), Complex64::new(1.0, 0.0), 1e-15));
        // 1/(2i) has imaginary part -1/2
        assert!(close(additive_char(&GaussInt::ONE, &g(0, 2)).unwrap(), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(close(additive_char(&g(7, 0), &g(3, 0)).unwrap(), Complex64::new(1.0, 0.0), 1e-15));
        assert_eq!(additive_char(&GaussInt::ONE, &GaussInt::ZERO), Err(Error::Zero));
    }

    #[test]
    fn gauss_sum_examples() {
        let v = gauss_sum(&g(-1, -2)).unwrap();
        assert!((v.norm_sqr() - 5.0).abs() < 1e-9);
        let v = gauss_sum(&g(-1, -2).pow(2)).unwrap();
        assert!(v.norm() < 1e-9);
        assert_eq!(gauss_sum(&GaussInt::ONE).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(gauss_sum(&g(1, 1)), Err(Error::EvenNorm(g(1, 1))));
    }

    #[test]
    fn magnitudes() {
        for n in primary_elements(600).into_iter().filter(|n| n.norm() > 1) {
            let v = gauss_sum(&n).unwrap();
            let sf = factor(&n).unwrap().is_squarefree();
            let expected = if sf { n.norm() as f64 } else { 0.0 };
            assert!((v.norm_sqr() - expected).abs() <= 1e-6 * expected.max(1.0), "{n}: {v}");
        }
    }

    #[test]
    fn twisted_identities() {
        let n = g(-1, -2);
        assert!(close(gauss_sum_twisted(&GaussInt::ONE, &n).unwrap(), gauss_sum(&n).unwrap(), 1e-12));
        let lhs = gauss_sum_twisted(&g(2, 0), &n).unwrap();
        let rhs = quartic_symbol(&g(2, 0), &n).unwrap().conj().to_complex() * gauss_sum(&n).unwrap();
        assert!(close(lhs, rhs, 1e-9));
        let (n1, n2) = (g(-1, -2), g(3, 2));
        let lhs = gauss_sum(&(n1 * n2)).unwrap();
        let twist = quartic_symbol(&n2, &n1).unwrap() * quartic_symbol(&n1, &n2).unwrap();
        let rhs = twist.to_complex() * gauss_sum(&n1).unwrap() * gauss_sum(&n2).unwrap();
        assert!(close(lhs, rhs, 1e-9));
    }

    #[test]
    fn random_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ns = primary_elements(120);
        let mut done = 0;
        while done < 1000 {
            let n1 = ns[rng.gen_range(0..ns.len())];
            let n2 = ns[rng.gen_range(0..ns.len())];
            let r = g(rng.gen_range(-20..20), rng.gen_range(-20..20));
            let s = g(rng.gen_range(-20..20), rng.gen_range(-20..20));
            if !coprime(&n1, &n2) || s.is_zero() || !coprime(&s, &n1) {
                continue;
            }
            let lhs = gauss_sum_twisted(&(r * s), &n1).unwrap();
            let rhs = quartic_symbol(&s, &n1).unwrap().conj().to_complex() * gauss_sum_twisted(&r, &n1).unwrap();
            assert!(close(lhs, rhs, 1e-9));
            let lhs = gauss_sum_twisted(&r, &(n1 * n2)).unwrap();
            let twist = quartic_symbol(&n2, &n1).unwrap() * quartic_symbol(&n1, &n2).unwrap();
            let rhs = twist.to_complex()
                * gauss_sum_twisted(&r, &n1).unwrap()
                * gauss_sum_twisted(&r, &n2).unwrap();
            assert!(close(lhs, rhs, 1e-9), "{r} {n1} {n2}");
            done += 1;
        }
    }

    #[test]
    fn rational_factor_splitting() {
        // g(dn) = conj(χ_n(d^2)) g(d) g(n), d primary rational square-free, (d, n) = 1
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ds = [-3i64, 5, -7, -11, 13, 17, 21, -15];
        let chars = enumerate_range(150);
        for _ in 0..40 {
            let d = GaussInt::from_int(ds[rng.gen_range(0..ds.len())]);
            let chi = &chars[rng.gen_range(0..chars.len())];
            let n = chi.generator();
            if !coprime(&d, &n) {
                continue;
            }
            let lhs = gauss_sum(&(d * n)).unwrap();
            let rhs = chi.eval(d.a * d.a).conj().to_complex() * gauss_sum(&d).unwrap() * gauss_sum(&n).unwrap();
            assert!(close(lhs, rhs, 1e-9), "d={d} n={n}");
        }
    }

    #[test]
    fn tau_examples() {
        for n in [g(-1, 2), g(3, 2), g(1, 4)] {
            let chi = QuarticCharacter::new(n).unwrap();
            let direct = dirichlet_gauss_sum(&chi);
            let closed = tau_closed_form(&n).unwrap();
            assert!(close(direct, closed, 1e-9), "{n}: {direct} vs {closed}");
        }
        assert_eq!(QuarticCharacter::new(g(1, 4)).unwrap().parity(), 1);
        assert!(tau_closed_form(&g(5, 0)).is_err());
    }

    #[test]
    fn nbar_chain() {
        for chi in enumerate_range(2000) {
            let n = chi.generator();
            assert_eq!(nbar_over_n(&n).unwrap(), quartic_symbol(&n.conj(), &n).unwrap(), "{n}");
        }
    }

    #[test]
    fn tau_against_imaginary_part_convention() {
        // with ẽ(z) = e(Im z) and rational residues, τ(χ_n) = χ_n(-b) g(n)
        for chi in enumerate_range(300) {
            let n = chi.generator();
            let lhs = dirichlet_gauss_sum(&chi);
            let rhs = chi.eval(-n.b).to_complex() * gauss_sum(&n).unwrap();
            assert!(close(lhs, rhs, 1e-9), "{n}");
        }
    }

    #[test]
    fn tau_identities() {
        for chi in enumerate_range(400) {
            let q = chi.conductor() as f64;
            let t = dirichlet_gauss_sum(&chi);
            assert!((t.norm_sqr() - q).abs() < 1e-8 * q);
            let tbar = dirichlet_gauss_sum(&chi.conjugate());
            let expected = Complex64::new(chi.parity() as f64 * q, 0.0);
            assert!(close(t * tbar, expected, 1e-8 * q));
        }
    }

    #[test]
    fn table_matches_direct_sums() {
        let mut table = GaussSumTable::new();
        for n in primary_elements(800) {
            assert!(close(table.get(&n).unwrap(), gauss_sum(&n).unwrap(), 1e-9), "{n}");
        }
    }

    #[test]
    fn h_series_behaviour() {
        let s = Complex64::new(3.0, 0.0);
        let a = h_series(&GaussInt::ONE, s, Chi16::TRIVIAL, 1000).unwrap();
        let b = h_series(&GaussInt::ONE, s, Chi16::TRIVIAL, 10_000).unwrap();
        assert!((a.value - b.value).norm() <= a.tail_bound);
        assert!(b.tail_bound < a.tail_bound);
        // non-square-free n contribute nothing
        let sf_count = primary_elements(1000)
            .iter()
            .filter(|n| factor(n).map(|f| f.is_squarefree()).unwrap_or(true))
            .count();
        assert_eq!(a.terms, sf_count);
        assert!(h_series(&GaussInt::ONE, Complex64::new(1.9, 0.0), Chi16::TRIVIAL, 1000).is_err());
        // trivial bound at s = 4
        let s4 = Complex64::new(4.0, 0.0);
        let bound: f64 = primary_elements(2000).iter().map(|n| (n.norm() as f64).powi(-3)).sum();
        for r in [g(1, 0), g(2, 1), g(-3, 0)] {
            for chi in [Chi16::TRIVIAL, Chi16 { i_power: 1, one_plus_i_power: 3 }] {
                let h = h_series(&r, s4, chi, 2000).unwrap();
                assert!(h.value.norm() <= bound);
            }
        }
    }

    #[test]
    fn averages() {
        let w = WeightFunction::bump12();
        // l = 0: every non-unit term vanishes, and the support excludes n = 1
        assert_eq!(gauss_average(&GaussInt::ZERO, 50.0, &w, false).unwrap(), Complex64::new(0.0, 0.0));
        // only norms in (X, 2X) contribute
        let x = 200.0;
        let full = gauss_average(&GaussInt::ONE, x, &w, false).unwrap();
        let mut manual = KahanSum::new();
        for n in primary_elements(400) {
            let nn = n.norm() as f64;
            if nn > x && nn < 2.0 * x {
                manual.add(gauss_sum(&n).unwrap() * (w.eval(nn / x) / nn.sqrt()));
            }
        }
        assert!(close(full, manual.value(), 1e-10));
        let restricted = gauss_average(&GaussInt::ONE, 1000.0, &w, true).unwrap();
        assert!(restricted.re.is_finite() && restricted.im.is_finite());
        assert!(gauss_average(&GaussInt::ONE, 0.0, &w, true).is_err());
    }
}
