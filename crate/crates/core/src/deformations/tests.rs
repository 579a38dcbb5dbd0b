use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gauge::gauge_apply_unchecked;
use super::*;
use crate::hochschild::testing::*;
use crate::hochschild::{cocycles_and_coboundaries, gerstenhaber_bracket, unit, CohomologyReport};
use crate::linalg::SubspaceBasis;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn random_gauge<R: Rng>(rng: &mut R, dim: usize, order: usize) -> GaugeElement {
    GaugeElement::new(
        dim,
        (0..order).map(|_| random_cochain(rng, 1, dim)).collect(),
    )
    .unwrap()
}

fn random_cocycle<R: Rng>(rng: &mut R, a: &AlgebraStructure, n: usize) -> Cochain {
    let (z, _) = cocycles_and_coboundaries(a, n);
    combination(rng, &z, n, a.dim())
}

fn combination<R: Rng>(rng: &mut R, z: &SubspaceBasis, n: usize, dim: usize) -> Cochain {
    let mut c = Cochain::zero(n, dim);
    for v in z.vectors() {
        let coeff = small_rational(rng);
        c.add_scaled(
            &Cochain::from_coefficients(n, dim, v.clone()).unwrap(),
            &coeff,
        );
    }
    c
}

/// An algebra with `Z²` and `H³` computed once.
struct Prepared {
    algebra: AlgebraStructure,
    z2: SubspaceBasis,
    h3: CohomologyReport,
}

impl Prepared {
    fn new(algebra: AlgebraStructure) -> Self {
        let (z2, _) = cocycles_and_coboundaries(&algebra, 2);
        let h3 = cohomology(&algebra, 3).unwrap();
        Prepared { algebra, z2, h3 }
    }
}

/// The fixtures plus `size` of them in random bases.
struct Pool {
    entries: Vec<Prepared>,
}

impl Pool {
    fn new<R: Rng>(rng: &mut R, size: usize) -> Self {
        let mut entries: Vec<Prepared> = associative_fixtures()
            .into_iter()
            .map(Prepared::new)
            .collect();
        for _ in 0..size {
            entries.push(Prepared::new(random_associative(rng, 3)));
        }
        Pool { entries }
    }

    fn pick<R: Rng>(&self, rng: &mut R) -> &Prepared {
        &self.entries[rng.gen_range(0..self.entries.len())]
    }
}

/// Builds order by order: canonical extension plus a random cocycle, then a
/// random gauge transformation. `None` if an obstruction is hit.
fn random_valid_deformation<R: Rng>(
    rng: &mut R,
    a: &AlgebraStructure,
    order: usize,
) -> Option<TruncatedDeformation> {
    random_valid_deformation_with(rng, &Prepared::new(a.clone()), order)
}

fn random_valid_deformation_with<R: Rng>(
    rng: &mut R,
    p: &Prepared,
    order: usize,
) -> Option<TruncatedDeformation> {
    let a = &p.algebra;
    let mut d = TruncatedDeformation::trivial(a.clone(), 0);
    for _ in 0..order {
        let mut next = extend_with(&d, &p.h3).unwrap()?;
        let k = next.order();
        let bump = combination(rng, &p.z2, 2, a.dim());
        next.terms[k - 1].add_scaled(&bump, &Rational::one());
        d = next;
    }
    let x = random_gauge(rng, a.dim(), order);
    Some(gauge_apply(&x, &d).unwrap())
}

fn non_cocycle(a: &AlgebraStructure) -> Cochain {
    (0..a.dim().pow(3))
        .map(|i| Cochain::basis(2, a.dim(), i))
        .find(|c| !hochschild_differential(a, c).unwrap().is_zero())
        .expect("some basis cochain is not a cocycle")
}

fn random_candidate<R: Rng>(rng: &mut R, pool: &Pool, order: usize) -> TruncatedDeformation {
    let p = pool.pick(rng);
    let a = &p.algebra;
    if rng.gen_bool(0.5) {
        if let Some(d) = random_valid_deformation_with(rng, p, order) {
            return d;
        }
    }
    let terms = (0..order)
        .map(|_| random_cochain(rng, 2, a.dim()))
        .collect();
    TruncatedDeformation::new(a.clone(), terms).unwrap()
}

#[test]
fn trivial_and_cocycle_deformations_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in associative_fixtures() {
        assert_eq!(
            TruncatedDeformation::trivial(a.clone(), 3).validate(),
            Ok(None)
        );
        let mu1 = random_cocycle(&mut rng, &a, 2);
        let d = TruncatedDeformation::new(a.clone(), vec![mu1]).unwrap();
        assert_eq!(d.validate(), Ok(None));
        let x = random_gauge(&mut rng, a.dim(), 3);
        let g = gauge_apply(&x, &TruncatedDeformation::trivial(a.clone(), 3)).unwrap();
        assert_eq!(g.validate(), Ok(None));
    }
}

#[test]
fn validate_reports_first_failure() {
    let a = AlgebraStructure::dual_numbers();
    let bad = Cochain::basis(2, 2, 0);
    let d = TruncatedDeformation::new(a.clone(), vec![Cochain::zero(2, 2), bad]).unwrap();
    let f = d.validate().unwrap().unwrap();
    assert_eq!(f.order, 2);
    let res = d.equation_residual(2).unwrap();
    let [x, y, z] = f.triple;
    assert!(res.value(&[x, y, z]).iter().any(|c| !c.is_zero()));
    let nonassoc = AlgebraStructure::from_fn(2, |i, j, l| {
        q(matches!((i, j, l), (1, 1, 0) | (0, 1, 1)) as i64)
    });
    assert!(matches!(
        TruncatedDeformation::trivial(nonassoc, 1).validate(),
        Err(Error::NotAssociative { .. })
    ));
}

#[test]
fn residual_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut seen = [0usize; 2];
    let pool = Pool::new(&mut rng, 6);
    for _ in 0..200 {
        let order = rng.gen_range(1..=3);
        let d = random_candidate(&mut rng, &pool, order);
        for k in 0..=order {
            assert_eq!(
                maurer_cartan_residual(&d, k).unwrap(),
                d.equation_residual(k).unwrap()
            );
        }
        let all_zero = (1..=order).all(|k| maurer_cartan_residual(&d, k).unwrap().is_zero());
        assert_eq!(all_zero, d.is_valid());
        seen[all_zero as usize] += 1;
    }
    assert!(seen[0] > 20 && seen[1] > 20);
    let d = TruncatedDeformation::trivial(AlgebraStructure::dual_numbers(), 1);
    assert_eq!(
        maurer_cartan_residual(&d, 2),
        Err(Error::BadOrder {
            requested: 2,
            available: 1
        })
    );
}

#[test]
fn first_residual_is_differential() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = AlgebraStructure::truncated_polynomial(3);
    let mu1 = random_cochain(&mut rng, 2, 3);
    let d = TruncatedDeformation::new(a.clone(), vec![mu1.clone()]).unwrap();
    assert_eq!(
        maurer_cartan_residual(&d, 1).unwrap(),
        hochschild_differential(&a, &mu1).unwrap()
    );
}

#[test]
fn first_obstruction_by_hand() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for a in associative_fixtures() {
        let dim = a.dim();
        let mu1 = random_cocycle(&mut rng, &a, 2);
        let d = TruncatedDeformation::new(a.clone(), vec![mu1.clone()]).unwrap();
        let obs = obstruction(&d).unwrap();
        assert!(obs.is_cocycle);
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let l = mu1
                        .evaluate(&[unit(dim, x), mu1.value(&[y, z]).to_vec()])
                        .unwrap();
                    let r = mu1
                        .evaluate(&[mu1.value(&[x, y]).to_vec(), unit(dim, z)])
                        .unwrap();
                    let expect: Vec<Rational> = l.iter().zip(&r).map(|(p, s)| p - s).collect();
                    assert_eq!(obs.cochain.value(&[x, y, z]), &expect[..]);
                }
            }
        }
        if let Some(mu2) = &obs.extension_term {
            assert_eq!(&hochschild_differential(&a, mu2).unwrap(), &obs.cochain);
        }
    }
}

#[test]
fn trivial_deformation_extends_by_zero() {
    for a in associative_fixtures() {
        let d = TruncatedDeformation::trivial(a.clone(), 2);
        let obs = obstruction(&d).unwrap();
        assert!(obs.cochain.is_zero());
        assert!(obs.vanishes_in_cohomology);
        let e = extend(&d).unwrap().unwrap();
        assert_eq!(e.order(), 3);
        assert!(e.mu(3).is_zero());
    }
}

#[test]
fn obstructions_are_cocycles_and_extensions_revalidate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut algebras = associative_fixtures();
    algebras.push(AlgebraStructure::matrix_algebra(2));
    for a in &algebras {
        let p = Prepared::new(a.clone());
        for order in 1..=3 {
            for _ in 0..3 {
                let Some(d) = random_valid_deformation_with(&mut rng, &p, order) else {
                    continue;
                };
                let obs = obstruction(&d).unwrap();
                assert!(obs.is_cocycle);
                if let Some(e) = extend(&d).unwrap() {
                    assert_eq!(e.validate(), Ok(None));
                    assert_eq!(e.truncate(order), d);
                } else {
                    assert!(!obs.vanishes_in_cohomology);
                    assert!(rigidity_report(a).unwrap().betti3 > 0);
                }
            }
        }
    }
    let invalid = TruncatedDeformation::new(
        AlgebraStructure::dual_numbers(),
        vec![non_cocycle(&AlgebraStructure::dual_numbers())],
    )
    .unwrap();
    assert!(matches!(
        obstruction(&invalid),
        Err(Error::InvalidDeformation { order: 1, .. })
    ));
}

#[test]
fn classification_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for a in associative_fixtures() {
        let dim = a.dim();
        let phi = random_cochain(&mut rng, 1, dim);
        let b = hochschild_differential(&a, &phi).unwrap();
        assert!(classify_infinitesimal(&a, &b)
            .unwrap()
            .iter()
            .all(Rational::is_zero));
        let mu1 = random_cocycle(&mut rng, &a, 2);
        assert_eq!(
            classify_infinitesimal(&a, &mu1).unwrap(),
            classify_infinitesimal(&a, &(&mu1 + &b)).unwrap()
        );
        let reps = cohomology(&a, 2).unwrap().representatives;
        let coords: Vec<Vec<Rational>> = reps
            .iter()
            .map(|r| classify_infinitesimal(&a, r).unwrap())
            .collect();
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                assert_ne!(coords[i], coords[j]);
            }
        }
    }
    let a = AlgebraStructure::dual_numbers();
    let not_cocycle = non_cocycle(&a);
    assert_eq!(
        classify_infinitesimal(&a, &not_cocycle),
        Err(Error::NotACocycle)
    );
}

#[test]
fn rigidity_examples() {
    let m2 = rigidity_report(&AlgebraStructure::matrix_algebra(2)).unwrap();
    assert_eq!((m2.betti2, m2.betti3), (0, 0));
    assert!(m2.infinitesimally_rigid && m2.unobstructed && m2.witness.is_none());

    let dual = rigidity_report(&AlgebraStructure::dual_numbers()).unwrap();
    assert!(!dual.infinitesimally_rigid);
    let w = dual.witness.unwrap();
    assert!(
        hochschild_differential(&AlgebraStructure::dual_numbers(), &w)
            .unwrap()
            .is_zero()
    );

    let zero = rigidity_report(&AlgebraStructure::zero(1)).unwrap();
    // all differentials vanish, so H² = C² = Lin(A⊗A, A)
    assert_eq!(zero.betti2, 1);
    assert_eq!(zero.betti3, 1);
}

#[test]
fn exp_log_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zero = GaugeElement::zero(3, 3);
    assert_eq!(gauge_exp(&zero, 3), FormalAutomorphism::identity(3, 3));
    assert!(gauge_log(&FormalAutomorphism::identity(2, 4)).is_zero());

    let x1 = random_cochain(&mut rng, 1, 3);
    let x = GaugeElement::new(3, vec![x1.clone()]).unwrap();
    let u = gauge_exp(&x, 2);
    let sq = circ_i(&x1, &x1, 1).unwrap();
    assert_eq!(u.terms(), &[x1.clone(), sq.scaled(&Rational::new(1, 2))]);

    let phi = FormalAutomorphism::new(3, vec![x1.clone(), Cochain::zero(1, 3)]).unwrap();
    let l = gauge_log(&phi);
    assert_eq!(l.terms(), &[x1.clone(), sq.scaled(&Rational::new(-1, 2))]);

    assert_eq!(
        FormalAutomorphism::from_series(vec![Cochain::zero(1, 2)]),
        Err(Error::BadConstantTerm)
    );
    assert_eq!(
        FormalAutomorphism::from_series(vec![]),
        Err(Error::BadConstantTerm)
    );
}

#[test]
fn exp_log_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let dim = rng.gen_range(1..=3);
        let order = rng.gen_range(1..=4);
        let x = random_gauge(&mut rng, dim, order);
        assert_eq!(gauge_log(&gauge_exp(&x, order)), x);
    }
}

#[test]
fn gauge_apply_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = AlgebraStructure::truncated_polynomial(3);
    let d = random_valid_deformation(&mut rng, &a, 3).unwrap();
    assert_eq!(gauge_apply(&GaugeElement::zero(3, 3), &d).unwrap(), d);

    let x = random_gauge(&mut rng, 3, 3);
    let there = gauge_apply(&x, &d).unwrap();
    assert_eq!(gauge_apply(&x.negated(), &there).unwrap(), d);

    // μ″₁ = μ′₁ − δx₁
    let first = there.mu(1);
    let expect = d.mu(1) - &hochschild_differential(&a, &x.terms()[0]).unwrap();
    assert_eq!(first, &expect);

    let invalid = TruncatedDeformation::new(a.clone(), vec![non_cocycle(&a)]).unwrap();
    assert!(matches!(
        gauge_apply(&GaugeElement::zero(3, 1), &invalid),
        Err(Error::InvalidDeformation { .. })
    ));
}

#[test]
fn gauge_action_preserves_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pool = Pool::new(&mut rng, 4);
    for _ in 0..30 {
        let p = pool.pick(&mut rng);
        let a = p.algebra.clone();
        let order = rng.gen_range(1..=3);
        let Some(d) = random_valid_deformation_with(&mut rng, p, order) else {
            continue;
        };
        let x = random_gauge(&mut rng, a.dim(), order);
        assert_eq!(gauge_apply(&x, &d).unwrap().validate(), Ok(None));
    }
}

/// `Σ_m ad_x^m(μ)/m!` with `ad_x g = [x, g]`, all in `𝐤[t]/(t^{n+1})`.
fn bracket_form(x: &GaugeElement, d: &TruncatedDeformation) -> Vec<Cochain> {
    let n = d.order();
    let dim = d.base().dim();
    let mut term: Vec<Cochain> = (0..=n).map(|k| d.mu(k).clone()).collect();
    let mut total = term.clone();
    for m in 1..=n {
        let mut next = vec![Cochain::zero(2, dim); n + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            for i in 1..=k {
                let b = gerstenhaber_bracket(&x.terms()[i - 1], &term[k - i]).unwrap();
                slot.add_scaled(&b, &Rational::unit_fraction(m as u64));
            }
        }
        term = next;
        for (t, s) in total.iter_mut().zip(&term) {
            t.add_scaled(s, &Rational::one());
        }
    }
    total
}

#[test]
fn composition_form_matches_bracket_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pool = Pool::new(&mut rng, 2);
    for _ in 0..10 {
        let d = random_candidate(&mut rng, &pool, 3);
        let a = d.base().clone();
        let x = random_gauge(&mut rng, a.dim(), 3);
        let comp = gauge_apply_unchecked(&x, &d);
        let br = bracket_form(&x, &d);
        assert_eq!(&br[0], d.mu(0));
        for (k, b) in br.iter().enumerate().skip(1) {
            assert_eq!(comp.mu(k), b);
        }
    }
}

#[test]
fn equivalence_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let pool = Pool::new(&mut rng, 4);
    for _ in 0..15 {
        let p = pool.pick(&mut rng);
        let a = p.algebra.clone();
        let order = rng.gen_range(1..=3);
        let Some(d) = random_valid_deformation_with(&mut rng, p, order) else {
            continue;
        };
        match gauge_equivalent(&d, &d).unwrap() {
            GaugeSearch::Equivalent(x) => assert!(x.is_zero()),
            other => panic!("reflexivity failed: {other:?}"),
        }
        let x0 = random_gauge(&mut rng, a.dim(), order);
        let d2 = gauge_apply(&x0, &d).unwrap();
        let GaugeSearch::Equivalent(x) = gauge_equivalent(&d, &d2).unwrap() else {
            panic!("round trip failed")
        };
        assert_eq!(gauge_apply(&x, &d).unwrap(), d2);
        // symmetry through the inverse element
        assert_eq!(gauge_apply(&x.negated(), &d2).unwrap(), d);
        let GaugeSearch::Equivalent(y) = gauge_equivalent(&d2, &d).unwrap() else {
            panic!("symmetry failed")
        };
        assert_eq!(gauge_apply(&y, &d2).unwrap(), d);
    }
}

#[test]
fn inequivalent_deformations_are_reported() {
    let a = AlgebraStructure::dual_numbers();
    let rep = cohomology(&a, 2).unwrap().representatives[0].clone();
    let d1 = TruncatedDeformation::trivial(a.clone(), 1);
    let d2 = TruncatedDeformation::new(a.clone(), vec![rep]).unwrap();
    assert_eq!(
        gauge_equivalent(&d1, &d2).unwrap(),
        GaugeSearch::Inconsistent { order: 1 }
    );
    assert_eq!(
        gauge_equivalent(&d1, &TruncatedDeformation::trivial(a.clone(), 2)),
        Err(Error::OrderMismatch { left: 1, right: 2 })
    );
    assert_eq!(
        gauge_equivalent(
            &d1,
            &TruncatedDeformation::trivial(AlgebraStructure::split_pair(), 1)
        ),
        Err(Error::BaseMismatch)
    );
}

#[test]
fn rigid_base_makes_everything_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = Prepared::new(AlgebraStructure::matrix_algebra(2));
    for order in 1..=3 {
        let d1 = random_valid_deformation_with(&mut rng, &p, order).unwrap();
        let d2 = random_valid_deformation_with(&mut rng, &p, order).unwrap();
        let GaugeSearch::Equivalent(x) = gauge_equivalent(&d1, &d2).unwrap() else {
            panic!("M2 deformations must be equivalent")
        };
        assert_eq!(gauge_apply(&x, &d1).unwrap(), d2);
    }
}

#[test]
fn order_one_classification_matches_gauge_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for a in associative_fixtures() {
        for _ in 0..4 {
            let m1 = random_cocycle(&mut rng, &a, 2);
            let m2 = if rng.gen_bool(0.5) {
                &m1 + &hochschild_differential(&a, &random_cochain(&mut rng, 1, a.dim())).unwrap()
            } else {
                random_cocycle(&mut rng, &a, 2)
            };
            let same = classify_infinitesimal(&a, &m1).unwrap()
                == classify_infinitesimal(&a, &m2).unwrap();
            let d1 = TruncatedDeformation::new(a.clone(), vec![m1]).unwrap();
            let d2 = TruncatedDeformation::new(a.clone(), vec![m2]).unwrap();
            let found = matches!(
                gauge_equivalent(&d1, &d2).unwrap(),
                GaugeSearch::Equivalent(_)
            );
            assert_eq!(same, found);
        }
    }
}

#[test]
fn poisson_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let commutative: Vec<AlgebraStructure> = associative_fixtures()
        .into_iter()
        .filter(AlgebraStructure::is_commutative)
        .collect();
    for a in &commutative {
        let t = poisson_limit(&TruncatedDeformation::trivial(a.clone(), 2)).unwrap();
        assert!(t.bracket.is_zero() && t.all_ok());
        let p = Prepared::new(a.clone());
        for _ in 0..3 {
            let Some(d) = random_valid_deformation_with(&mut rng, &p, 2) else {
                continue;
            };
            let r = poisson_limit(&d).unwrap();
            assert!(r.all_ok(), "{r:?}");
        }
    }
    assert_eq!(
        poisson_limit(&TruncatedDeformation::trivial(
            AlgebraStructure::left_unit_extension(),
            2
        )),
        Err(Error::BaseNotCommutative { pair: [0, 1] })
    );
    assert_eq!(
        poisson_limit(&TruncatedDeformation::trivial(
            AlgebraStructure::dual_numbers(),
            1
        )),
        Err(Error::OrderTooLow {
            required: 2,
            found: 1
        })
    );
    // μ₁(x, x) = 1·… is not a cocycle on ℚ[x]/(x³); its bracket breaks Leibniz
    let a = AlgebraStructure::truncated_polynomial(3);
    let mu1 = Cochain::from_fn(2, 3, |i, j| q(((i[0], i[1], j) == (1, 2, 0)) as i64));
    assert!(!hochschild_differential(&a, &mu1).unwrap().is_zero());
    let d = TruncatedDeformation::new(a, vec![mu1, Cochain::zero(2, 3)]).unwrap();
    let r = poisson_limit(&d).unwrap();
    assert!(r.antisymmetry_ok);
    assert!(!r.leibniz_ok);
    assert!(r.leibniz_witness.is_some());
}
