//! `L(s, ψ_m) = Σ_{n primary} (m/n)_4 N(n)^{-s}` for `Re s > 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauss_sums::{primary_tail_bound, SeriesValue};
use crate::gaussint::{factor, primary_elements, GaussInt};
use crate::numeric::KahanSum;
use crate::symbols::quartic_symbol_fast;

/// Truncation of `L(s, ψ_m)` to `N(n) <= cutoff`; needs `Re s >= 1.1`.
pub fn hecke_l_series(m: i64, s: Complex64, cutoff: u64) -> Result<SeriesValue> {
    if s.re < 1.1 {
        return Err(Error::Domain(format!("Hecke series needs Re(s) >= 1.1, got {s}")));
    }
    let num = GaussInt::from_int(m);
    let mut acc = KahanSum::new();
    let mut terms = 0;
    for n in primary_elements(cutoff) {
        let v = quartic_symbol_fast(&num, &n)?;
        if v.is_zero() {
            continue;
        }
        acc.add(v.to_complex() * Complex64::new(n.norm() as f64, 0.0).powc(-s));
        terms += 1;
    }
    Ok(SeriesValue {
        value: acc.value(),
        tail_bound: primary_tail_bound(cutoff as f64, s.re),
        terms,
    })
}

/// `ζ_{Q(i)}(2) Π_{ϖ | 2m} (1 - N(ϖ)^{-2})`, the value of `L(2, ψ_m)` when
/// `m` is a fourth power.
pub fn principal_value_at_2(m: i64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Zero);
    }
    let f = factor(&GaussInt::from_int(2 * m))?;
    let euler: f64 = f
        .factors
        .iter()
        .map(|(p, _)| 1.0 - (p.norm() as f64).powi(-2))
        .product();
    Ok(super::constants::zeta_qi_2() * euler)
}
