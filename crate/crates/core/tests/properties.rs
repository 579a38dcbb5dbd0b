use deforma_core::deformations::{
    classify_infinitesimal, gauge_apply, gauge_equivalent, gauge_exp, gauge_log, GaugeElement,
    GaugeSearch, TruncatedDeformation,
};
use deforma_core::hochschild::{
    bracket_square_test, cocycles_and_coboundaries, gerstenhaber_bracket, hochschild_differential,
    AlgebraStructure, Cochain,
};
use deforma_core::homotopy::fixtures::lie_bracket;
use deforma_core::homotopy::{
    check_l_infinity, lift_to_coderivation, lower_from_coderivation, Flavor, LInfinityStructure,
};
use deforma_core::{RatMatrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| Rational::new(n, d))
}

fn cochain(arity: usize, dim: usize) -> impl Strategy<Value = Cochain> {
    prop::collection::vec(rational(), dim.pow(arity as u32 + 1))
        .prop_map(move |v| Cochain::from_coefficients(arity, dim, v).unwrap())
}

fn fixtures() -> Vec<AlgebraStructure> {
    vec![
        AlgebraStructure::zero(1),
        AlgebraStructure::truncated_polynomial(1),
        AlgebraStructure::dual_numbers(),
        AlgebraStructure::left_unit_extension(),
        AlgebraStructure::split_pair(),
        AlgebraStructure::truncated_polynomial(3),
        AlgebraStructure::upper_triangular(),
    ]
}

/// A fixture in a random basis.
fn associative() -> impl Strategy<Value = AlgebraStructure> {
    (0..fixtures().len()).prop_flat_map(|i| {
        let a = fixtures().swap_remove(i);
        let d = a.dim();
        prop::collection::vec(-2i64..=2, d * d).prop_filter_map(
            "singular change of basis",
            move |entries| {
                let rows: Vec<Vec<Rational>> = entries
                    .chunks(d)
                    .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                    .collect();
                a.change_basis(&RatMatrix::from_rows(rows))
            },
        )
    })
}

fn table() -> impl Strategy<Value = AlgebraStructure> {
    (1usize..=3).prop_flat_map(|d| {
        prop::collection::vec(-1i64..=1, d * d * d).prop_map(move |g| {
            AlgebraStructure::new(d, g.into_iter().map(Rational::from_integer).collect()).unwrap()
        })
    })
}

fn with_cochain(
    arities: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (AlgebraStructure, Cochain)> {
    (associative(), arities).prop_flat_map(|(a, n)| {
        let d = a.dim();
        (Just(a), cochain(n, d))
    })
}

fn sign(e: i64) -> Rational {
    Rational::from_sign(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn commutator_lie(a: &AlgebraStructure) -> LInfinityStructure {
    let d = a.dim();
    let e = |k: usize| -> Vec<Rational> {
        (0..d)
            .map(|i| Rational::from_integer((i == k) as i64))
            .collect()
    };
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let (x, y) = (a.multiply(&e(i), &e(j)), a.multiply(&e(j), &e(i)));
            rows.push((i, j, x.iter().zip(&y).map(|(p, s)| p - s).collect()));
        }
    }
    let l2 = lie_bracket(d, &["u", "v", "w"][..d], &rows);
    LInfinityStructure::new(l2.domain().clone(), vec![l2]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_squares_to_zero((a, f) in with_cochain(0..=2)) {
        let df = hochschild_differential(&a, &f).unwrap();
        prop_assert!(hochschild_differential(&a, &df).unwrap().is_zero());
    }

    #[test]
    fn delta_is_bracket_with_mu((a, f) in with_cochain(0..=2)) {
        prop_assert_eq!(
            hochschild_differential(&a, &f).unwrap(),
            gerstenhaber_bracket(&a.multiplication(), &f).unwrap()
        );
    }

    #[test]
    fn bracket_is_graded_antisymmetric(
        (f, g) in (1usize..=2, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(d, m, n)| (cochain(m, d), cochain(n, d)))
    ) {
        let e = (f.arity() as i64 - 1) * (g.arity() as i64 - 1);
        let fg = gerstenhaber_bracket(&f, &g).unwrap();
        let gf = gerstenhaber_bracket(&g, &f).unwrap();
        prop_assert_eq!(fg, -&gf.scaled(&sign(e)));
    }

    #[test]
    fn square_zero_iff_associative(a in table()) {
        prop_assert_eq!(bracket_square_test(&a.multiplication()).unwrap(), a.is_associative());
    }

    #[test]
    fn random_bases_stay_associative(a in associative()) {
        prop_assert!(a.is_associative());
    }

    #[test]
    fn exp_then_log_is_identity(
        x in (1usize..=3).prop_flat_map(|d| prop::collection::vec(cochain(1, d), 4)
            .prop_map(move |t| GaugeElement::new(d, t).unwrap()))
    ) {
        prop_assert_eq!(gauge_log(&gauge_exp(&x, 4)), x);
    }

    #[test]
    fn coboundary_shift_keeps_the_class(
        (a, phi, coeffs) in associative().prop_flat_map(|a| {
            let d = a.dim();
            (Just(a), cochain(1, d), prop::collection::vec(rational(), 16))
        })
    ) {
        let d = a.dim();
        let (z2, _) = cocycles_and_coboundaries(&a, 2);
        let mut mu = Cochain::zero(2, d);
        for (v, c) in z2.vectors().iter().zip(&coeffs) {
            mu.add_scaled(&Cochain::from_coefficients(2, d, v.clone()).unwrap(), c);
        }
        let shifted = &mu + &hochschild_differential(&a, &phi).unwrap();
        prop_assert_eq!(
            classify_infinitesimal(&a, &mu).unwrap(),
            classify_infinitesimal(&a, &shifted).unwrap()
        );
        let d1 = TruncatedDeformation::new(a.clone(), vec![mu]).unwrap();
        let d2 = TruncatedDeformation::new(a.clone(), vec![shifted]).unwrap();
        match gauge_equivalent(&d1, &d2).unwrap() {
            GaugeSearch::Equivalent(x) => prop_assert_eq!(gauge_apply(&x, &d1).unwrap(), d2),
            GaugeSearch::Inconsistent { order } => prop_assert!(false, "no gauge at order {}", order),
        }
    }

    #[test]
    fn gauge_images_of_trivial_deformations_validate(
        (a, x) in associative().prop_flat_map(|a| {
            let d = a.dim();
            (Just(a), prop::collection::vec(cochain(1, d), 3)
                .prop_map(move |t| GaugeElement::new(d, t).unwrap()))
        })
    ) {
        let d = TruncatedDeformation::trivial(a, 3);
        prop_assert!(gauge_apply(&x, &d).unwrap().is_valid());
    }

    #[test]
    fn commutators_of_associative_algebras_are_lie(a in associative()) {
        prop_assert!(check_l_infinity(&commutator_lie(&a), 4).is_none());
    }

    #[test]
    fn lowering_inverts_lifting(a in table()) {
        let l = commutator_lie(&a);
        let ops: Vec<_> = l.ops().map(|(_, m)| m.clone()).collect();
        prop_assume!(!ops.is_empty());
        let lift = lift_to_coderivation(&ops, Flavor::Symmetric, 3).unwrap();
        let back = lower_from_coderivation(&lift.theta).unwrap();
        prop_assert_eq!(&back[1], &ops[0]);
        prop_assert!(back[0].is_zero() && back[2].is_zero());
    }
}
