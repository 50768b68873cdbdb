use std::f64::consts::PI;

use maslov_core::indices::mu;
use maslov_core::jordan::{Algebra, ElementJ};
use maslov_core::random::{
    random_element, random_mixed_word, random_point, random_unitary_word, rng,
};
use maslov_core::selftest::algebras;
use maslov_core::shilov::{
    cayley_c, cayley_p, principal_angle, shilov_spectral, ElementC, Generator, GroupWord,
    LiftedPoint, ShilovPoint, WordMode,
};
use maslov_core::Tolerances;
use num_complex::Complex64;
use proptest::prelude::*;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn sorted_mod_2pi(a: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = a.iter().map(|x| principal_angle(*x)).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn same_angles(a: &[f64], b: &[f64], tol: f64) -> bool {
    let (a, b) = (sorted_mod_2pi(a), sorted_mod_2pi(b));
    a.len() == b.len()
        && a.iter().zip(&b).all(|(x, y)| {
            let d = (x - y).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d) < tol
        })
}

fn minus_i_eps(alg: Algebra, k: usize) -> ShilovPoint {
    let eps = ElementJ::epq(alg, k, alg.rank() - k).unwrap();
    ShilovPoint::new(ElementC::from_real(&eps).scale(-I), 1e-12).unwrap()
}

#[test]
fn complex_determinant_and_trace() {
    let mut g = rng(1);
    for alg in algebras() {
        assert!((ElementC::unit(alg).cdet() - 1.0).norm() < 1e-14);
        let s = random_point(alg, &mut g);
        let r = alg.rank() as i32;
        let lhs = s.value().scale(I).cdet();
        assert!((lhs - I.powi(r) * s.det()).norm() < 1e-12);
        let z = ElementC::from_parts(&random_element(alg, &mut g), &random_element(alg, &mut g))
            .unwrap();
        let tr = z.cjmul(&z.conj()).unwrap().ctrace();
        let h = z.hermitian_inner(&z).unwrap();
        assert!((tr - h).norm() < 1e-11 * (1.0 + h.norm()));
        assert!(tr.im.abs() < 1e-11 * (1.0 + h.norm()) && tr.re > 0.0);
    }
}

#[test]
fn unit_spectrum_examples() {
    let tol = Tolerances::default();
    let mut g = rng(2);
    for alg in algebras() {
        let sp = shilov_spectral(&ShilovPoint::unit(alg), tol.shilov).unwrap();
        assert!(sp.angles.iter().all(|a| a.abs() < 1e-14));
        let r = alg.rank();
        for k in 0..=r {
            let sp = minus_i_eps(alg, k).spectral(tol.shilov).unwrap();
            let want: Vec<f64> = (0..r)
                .map(|j| if j < k { -PI / 2.0 } else { PI / 2.0 })
                .collect();
            assert!(same_angles(&sp.angles, &want, 1e-10));
        }
        for _ in 0..10 {
            let x = random_element(alg, &mut g).scale(2.0);
            let s = ShilovPoint::exp_i(&x).unwrap();
            let sp = s.spectral(tol.shilov).unwrap();
            assert!(sp.angles.iter().all(|a| *a > -PI && *a <= PI));
            assert!(same_angles(
                &sp.angles,
                &x.spectral().unwrap().eigenvalues,
                1e-8
            ));
            assert!(sp.point().value().distance(s.value()) < 1e-9);
        }
    }
}

#[test]
fn exp_log_and_sqrt() {
    let tol = Tolerances::default();
    let mut g = rng(3);
    let alg = Algebra::sym_r(2);
    let x = ElementJ::new(alg, vec![PI / 3.0, -PI / 4.0, 0.0]).unwrap();
    let sp = ShilovPoint::exp_i(&x)
        .unwrap()
        .spectral(tol.shilov)
        .unwrap();
    assert!(same_angles(&sp.angles, &[PI / 3.0, -PI / 4.0], 1e-12));
    for alg in algebras() {
        let e = ShilovPoint::unit(alg);
        assert!(e.log(tol.transverse, tol.shilov).unwrap().norm() < 1e-14);
        for _ in 0..10 {
            let s = random_point(alg, &mut g);
            let Ok(l) = s.log(1e-3, tol.shilov) else {
                continue;
            };
            let linv = s.inverse().log(1e-3, tol.shilov).unwrap();
            assert!((&l + &linv).norm() < 1e-9);
            assert!((l.ctrace().exp() - s.det()).norm() < 1e-9);
            let back = ShilovPoint::exp_i(&l.im()).unwrap();
            assert!(back.value().distance(s.value()) < 1e-9);
            let r = alg.rank();
            for flip in [vec![false; r], (0..r).map(|j| j % 2 == 0).collect()] {
                let root = s.sqrt(Some(&flip), tol.shilov).unwrap();
                let sq = root.value().cjmul(root.value()).unwrap();
                assert!(sq.distance(s.value()) < 1e-9);
            }
        }
        assert!(e.neg().log(tol.transverse, tol.shilov).is_err());
    }
}

#[test]
fn cayley_examples() {
    let mut g = rng(4);
    for alg in algebras() {
        let zero = ElementC::zero(alg);
        let e = ElementC::unit(alg);
        assert!(cayley_p(&zero).unwrap().distance(&(-&e)) < 1e-14);
        assert!(cayley_p(&e.scale(I)).unwrap().norm() < 1e-14);
        for _ in 0..15 {
            let x = ElementC::from_real(&random_element(alg, &mut g));
            let s = cayley_p(&x).unwrap();
            let p = ShilovPoint::new(s.clone(), 1e-9).unwrap();
            assert!((&e - p.value()).cdet().norm() > 1e-12);
            assert!(cayley_c(&s).unwrap().distance(&x) < 1e-9 * (1.0 + x.norm()));
        }
        assert!(cayley_c(&e).is_err());
    }
    // The 100-sample round trip on real elements.
    let alg = Algebra::herm_c(2);
    for _ in 0..100 {
        let x = ElementC::from_real(&random_element(alg, &mut g).scale(3.0));
        assert!(cayley_c(&cayley_p(&x).unwrap()).unwrap().distance(&x) < 1e-9 * (1.0 + x.norm()));
    }
}

fn interior_point(alg: Algebra, g: &mut maslov_core::random::Rand) -> ElementC {
    random_point(alg, g).value().scale(Complex64::new(0.6, 0.0))
}

#[test]
fn word_examples() {
    let tol = Tolerances::default();
    let mut g = rng(5);
    for alg in algebras() {
        let id = GroupWord::identity(alg);
        let inv2 = GroupWord::new(
            alg,
            WordMode::Tube,
            vec![Generator::Inversion, Generator::Inversion],
            None,
        )
        .unwrap();
        for _ in 0..5 {
            let z = interior_point(alg, &mut g);
            assert!(id.apply(&z).unwrap().distance(&z) < 1e-15);
            assert!((id.cocycle(&z).unwrap() - 1.0).norm() < 1e-15);
            assert_eq!(id.determination(&z).unwrap(), 0.0);
            let s = random_point(alg, &mut g);
            assert!(inv2.apply(s.value()).unwrap().distance(s.value()) < 1e-9);
        }
        let u = GroupWord::new(
            alg,
            WordMode::Tube,
            vec![Generator::Translate(random_element(alg, &mut g))],
            None,
        )
        .unwrap();
        for _ in 0..5 {
            let (a, b) = (random_point(alg, &mut g), random_point(alg, &mut g));
            let (ga, gb) = (
                u.apply_point(&a, 1e-7).unwrap(),
                u.apply_point(&b, 1e-7).unwrap(),
            );
            assert_eq!(mu(&ga, &gb, &tol).unwrap(), mu(&a, &b, &tol).unwrap());
        }
        // Translations fix e, the image of the point at infinity.
        let near_e = ShilovPoint::unit(alg).rotate(1e-3);
        let moved = u.apply_point(&near_e, 1e-6).unwrap();
        assert!(moved.value().distance(ShilovPoint::unit(alg).value()) < 1e-2);
    }
}

#[test]
fn cocycle_examples() {
    let mut g = rng(6);
    for alg in algebras() {
        let u = random_unitary_word(alg, 3, &mut g);
        let chi = u.chi().unwrap();
        assert!((chi.norm() - 1.0).abs() < 1e-10);
        for _ in 0..5 {
            let z = interior_point(alg, &mut g);
            assert!((u.cocycle(&z).unwrap() - chi).norm() < 1e-10);
        }
        let w = random_mixed_word(alg, 3, &mut g);
        for _ in 0..5 {
            let s = random_point(alg, &mut g);
            let Ok(img) = w.apply_point(&s, 1e-7) else {
                continue;
            };
            let j = w.cocycle(s.value()).unwrap();
            assert!((img.det() - j / j.norm() * s.det()).norm() < 1e-8);
        }
    }
}

#[test]
fn chain_rule_and_determinations() {
    let mut g = rng(7);
    for alg in algebras() {
        let a = random_mixed_word(alg, 2, &mut g);
        let b = random_mixed_word(alg, 2, &mut g);
        let ab = a.compose(&b).unwrap();
        for _ in 0..5 {
            let z = interior_point(alg, &mut g);
            let bz = b.apply(&z).unwrap();
            let lhs = ab.differential(&z).unwrap();
            let rhs = a.differential(&bz).unwrap() * b.differential(&z).unwrap();
            assert!((&lhs - &rhs).norm() < 1e-8 * (1.0 + lhs.norm()));
            let j = ab.cocycle(&z).unwrap();
            assert!(
                (j - a.cocycle(&bz).unwrap() * b.cocycle(&z).unwrap()).norm()
                    < 1e-8 * (1.0 + j.norm())
            );

            let phi = ab.determination(&z).unwrap();
            assert!((Complex64::from_polar(1.0, phi) - j / j.norm()).norm() < 1e-8);
            let k =
                (phi - a.determination(&bz).unwrap() - b.determination(&z).unwrap()) / (2.0 * PI);
            assert!((k - k.round()).abs() < 1e-8);
        }
    }
}

#[test]
fn scalar_phase_determination_is_r_phi() {
    let mut g = rng(8);
    for alg in algebras() {
        let u = GroupWord::scalar_phase(alg, 0.7);
        let r = alg.rank() as f64;
        for _ in 0..5 {
            let s = random_point(alg, &mut g);
            let phi = u.determination(s.value()).unwrap();
            assert!((phi - principal_angle(0.7 * r)).abs() < 1e-10);
        }
    }
}

#[test]
fn lift_examples() {
    for alg in algebras() {
        let r = alg.rank();
        let e = LiftedPoint::lift(ShilovPoint::unit(alg), 0);
        assert_eq!(e.theta(), 0.0);
        let shifted = e.t_shift(1);
        assert!((shifted.theta() - 2.0 * PI / r as f64).abs() < 1e-15);
        let me = LiftedPoint::lift(ShilovPoint::unit(alg).neg(), 0);
        let want = if r % 2 == 0 { 0.0 } else { PI / r as f64 };
        assert!((me.theta() - want).abs() < 1e-14, "{alg}: {}", me.theta());
        assert!(LiftedPoint::new(ShilovPoint::unit(alg).neg(), PI, 1e-12).is_ok());
        assert!(LiftedPoint::new(ShilovPoint::unit(alg), 0.1, 1e-9).is_err());
    }
}

#[test]
fn lifted_action_is_compatible_with_composition_up_to_deck_shifts() {
    let tol = Tolerances::default();
    let mut g = rng(9);
    for alg in algebras() {
        let a = random_unitary_word(alg, 2, &mut g);
        let b = random_mixed_word(alg, 2, &mut g);
        let ab = a.compose(&b).unwrap();
        let s = LiftedPoint::lift(random_point(alg, &mut g), 1);
        let (Ok(one), Ok(two)) = (
            ab.act_lift(&s, tol.shilov),
            b.act_lift(&s, tol.shilov)
                .and_then(|x| a.act_lift(&x, tol.shilov)),
        ) else {
            continue;
        };
        assert!(one.point().value().distance(two.point().value()) < 1e-8);
        let k = (one.theta() - two.theta()) * alg.rank() as f64 / (2.0 * PI);
        assert!((k - k.round()).abs() < 1e-8);
    }
}

fn arb_case() -> impl Strategy<Value = (Algebra, u64)> {
    (0..algebras().len(), any::<u64>()).prop_map(|(i, s)| (algebras()[i], s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn words_keep_points_on_s((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let w = random_mixed_word(alg, 3, &mut g);
        let s = random_point(alg, &mut g);
        if let Ok(img) = w.apply(s.value()) {
            prop_assert!(ShilovPoint::residual(&img) <= 1e-7);
        }
    }

    #[test]
    fn unitary_words_preserve_the_hermitian_norm((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let u = random_unitary_word(alg, 3, &mut g);
        let z = ElementC::from_parts(&random_element(alg, &mut g), &random_element(alg, &mut g)).unwrap();
        let n0 = z.hermitian_inner(&z).unwrap().re;
        let n1 = { let w = u.apply(&z).unwrap(); w.hermitian_inner(&w).unwrap().re };
        prop_assert!((n0 - n1).abs() <= 1e-9 * (1.0 + n0));
    }

    #[test]
    fn spectral_inverts_exponential((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = random_element(alg, &mut g).scale(1.5);
        let sp = ShilovPoint::exp_i(&x).unwrap().spectral(1e-7).unwrap();
        prop_assert!(same_angles(&sp.angles, &x.spectral().unwrap().eigenvalues, 1e-8));
    }

    #[test]
    fn cayley_images_avoid_the_unit_direction((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = ElementC::from_real(&random_element(alg, &mut g).scale(4.0));
        let s = cayley_p(&x).unwrap();
        prop_assert!(ShilovPoint::residual(&s) <= 1e-9);
        prop_assert!((&ElementC::unit(alg) - &s).cdet().norm() > 1e-12);
    }
}
