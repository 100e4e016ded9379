use proptest::prelude::*;
use quartic_core::gaussint::{coprime, factor};
use quartic_core::symbols::{quartic_symbol, quartic_symbol_fast, reciprocity_sign};
use quartic_core::{GaussInt, QuarticValue};

fn primary() -> impl Strategy<Value = GaussInt> {
    (-3000i64..3000, -3000i64..3000).prop_filter_map("odd", |(a, b)| {
        let z = GaussInt::new(a, b);
        if z.is_zero() || !z.is_odd() || z.is_unit() {
            None
        } else {
            z.primary_associate().ok()
        }
    })
}

fn any_gauss() -> impl Strategy<Value = GaussInt> {
    (-100_000i64..100_000, -100_000i64..100_000).prop_map(|(a, b)| GaussInt::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn descent_matches_euler_criterion(a in any_gauss(), n in primary()) {
        prop_assert_eq!(quartic_symbol_fast(&a, &n).unwrap(), quartic_symbol(&a, &n).unwrap());
    }

    #[test]
    fn multiplicative_in_numerator(a in any_gauss(), b in any_gauss(), n in primary()) {
        let lhs = quartic_symbol_fast(&(a * b), &n).unwrap();
        let rhs = quartic_symbol_fast(&a, &n).unwrap() * quartic_symbol_fast(&b, &n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicative_in_modulus(a in any_gauss(), m in primary(), n in primary()) {
        let lhs = quartic_symbol_fast(&a, &(m * n)).unwrap();
        let rhs = quartic_symbol_fast(&a, &m).unwrap() * quartic_symbol_fast(&a, &n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reciprocity(m in primary(), n in primary()) {
        prop_assume!(coprime(&m, &n));
        let mn = quartic_symbol_fast(&m, &n).unwrap();
        let nm = quartic_symbol_fast(&n, &m).unwrap();
        prop_assert_eq!(mn, reciprocity_sign(&m, &n) * nm);
    }

    #[test]
    fn fourth_powers_are_residues(a in any_gauss(), n in primary()) {
        prop_assume!(coprime(&a, &n));
        prop_assert_eq!(quartic_symbol_fast(&a.rem(&n).pow(4), &n).unwrap(), QuarticValue::ONE);
    }

    #[test]
    fn factorization_roundtrips(n in any_gauss()) {
        prop_assume!(!n.is_zero());
        prop_assert_eq!(factor(&n).unwrap().product(), n);
    }
}
