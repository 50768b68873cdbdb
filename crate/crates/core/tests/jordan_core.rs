use maslov_core::jordan::{
    box_operator, frobenius_apply, peirce_decompose, spectral_decompose_real, standard_frame,
    Algebra, AlgebraKind, ElementJ,
};
use maslov_core::linalg::{expm, jacobi_symmetric, singular_values, to_complex};
use maslov_core::random::{random_element, random_frame, rng, Rand};
use maslov_core::selftest::algebras;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn close(a: &ElementJ, b: &ElementJ, tol: f64) -> bool {
    a.distance(b) <= tol * (1.0 + a.norm().max(b.norm()))
}

/// Real symmetric matrix of a sym-r element, built directly from the basis
/// `E_ii`, then `(E_ij + E_ji)/sqrt 2` for `i < j` row-major.
fn sym_matrix(x: &ElementJ) -> DMatrix<f64> {
    let m = x.algebra().param();
    let c = x.coords();
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = c[i];
    }
    let mut k = m;
    for i in 0..m {
        for j in i + 1..m {
            a[(i, j)] = c[k] / 2f64.sqrt();
            a[(j, i)] = c[k] / 2f64.sqrt();
            k += 1;
        }
    }
    a
}

fn from_sym_matrix(alg: Algebra, a: &DMatrix<f64>) -> ElementJ {
    let m = alg.param();
    let mut c: Vec<f64> = (0..m).map(|i| a[(i, i)]).collect();
    for i in 0..m {
        for j in i + 1..m {
            c.push(a[(i, j)] * 2f64.sqrt());
        }
    }
    ElementJ::new(alg, c).unwrap()
}

fn spin(x: &[f64]) -> ElementJ {
    ElementJ::new(Algebra::spin(x.len()), x.to_vec()).unwrap()
}

#[test]
fn unit_is_neutral_for_the_product() {
    let mut g = rng(1);
    for alg in algebras() {
        let x = random_element(alg, &mut g);
        assert!(close(&ElementJ::unit(alg).jmul(&x).unwrap(), &x, 1e-13));
    }
}

#[test]
fn spin_product_by_hand() {
    let x = spin(&[2.0, 1.0, 0.0]);
    assert_eq!(x.jmul(&x).unwrap().coords(), &[5.0, 4.0, 0.0]);
}

#[test]
fn diagonal_idempotents_are_orthogonal() {
    let alg = Algebra::sym_r(2);
    let p = ElementJ::diagonal_unit(alg, 0)
        .jmul(&ElementJ::diagonal_unit(alg, 1))
        .unwrap();
    assert!(p.norm() < 1e-15);
}

#[test]
fn trace_and_determinant_of_unit() {
    for alg in algebras() {
        let e = ElementJ::unit(alg);
        assert!((e.det_real() - 1.0).abs() < 1e-14);
        assert!((e.trace() - alg.rank() as f64).abs() < 1e-14);
    }
}

#[test]
fn spin_determinant_is_the_lorentz_form() {
    let mut g = rng(2);
    for q in [3, 4, 5] {
        let x = random_element(Algebra::spin(q), &mut g);
        let c = x.coords();
        let want = c[0] * c[0] - c[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((x.det_real() - want).abs() < 1e-12 * (1.0 + want.abs()));
    }
}

#[test]
fn sym_determinant_matches_matrix_determinant() {
    let mut g = rng(3);
    for i in 0..100 {
        let alg = Algebra::sym_r(1 + i % 3);
        let x = random_element(alg, &mut g);
        let want = sym_matrix(&x).determinant();
        assert!((x.det_real() - want).abs() < 1e-10 * (1.0 + want.abs()));
        let sp = x.spectral().unwrap();
        assert!((sp.eigenvalues.iter().product::<f64>() - want).abs() < 1e-10 * (1.0 + want.abs()));
        assert!((sp.eigenvalues.iter().sum::<f64>() - x.trace()).abs() < 1e-10);
    }
}

#[test]
fn multiplication_operator_facts() {
    let mut g = rng(4);
    for alg in algebras() {
        let n = alg.dim();
        let l = ElementJ::unit(alg).lmul_operator();
        assert!((l - DMatrix::<f64>::identity(n, n)).norm() < 1e-14);

        let x = random_element(alg, &mut g);
        let lx = x.lmul_operator();
        let ratio = n as f64 / alg.rank() as f64;
        assert!((lx.trace() - ratio * x.trace()).abs() < 1e-10 * (1.0 + x.norm()));
        // L(x) is symmetric for the trace form, whose Gram matrix is a multiple of I.
        assert!((&lx - lx.transpose()).norm() < 1e-12 * (1.0 + x.norm()));
        let y = random_element(alg, &mut g);
        let ly = &lx * nalgebra::DVector::from_column_slice(y.coords());
        let xy = x.jmul(&y).unwrap();
        assert!(ly
            .iter()
            .zip(xy.coords())
            .all(|(a, b)| (a - b).abs() < 1e-12 * (1.0 + xy.norm())));

        let frame = random_frame(alg, &mut g);
        let lc = frame[0].lmul_operator();
        let (eig, _) = jacobi_symmetric(&(&lc * &lc)).unwrap();
        for v in eig {
            assert!(
                [0.0, 0.25, 1.0].iter().any(|t| (v - t).abs() < 1e-10),
                "{alg}: {v}"
            );
        }
    }
}

#[test]
fn quadratic_representation_facts() {
    let mut g = rng(5);
    for alg in algebras() {
        let x = random_element(alg, &mut g);
        let y = random_element(alg, &mut g);
        let e = ElementJ::unit(alg);
        assert!(close(&e.quad_rep_apply(&y).unwrap(), &y, 1e-13));
        assert!(close(&x.quad_rep_apply(&e).unwrap(), &x.square(), 1e-13));
        let op = nalgebra::DVector::from_column_slice(y.coords());
        let via_op = &x.quad_operator() * op;
        let direct = x.quad_rep_apply(&y).unwrap();
        assert!(via_op
            .iter()
            .zip(direct.coords())
            .all(|(a, b)| (a - b).abs() < 1e-10 * (1.0 + direct.norm())));
    }
    for i in 0..100 {
        let alg = Algebra::sym_r(1 + i % 3);
        let x = random_element(alg, &mut g);
        let y = random_element(alg, &mut g);
        let (a, b) = (sym_matrix(&x), sym_matrix(&y));
        let want = from_sym_matrix(alg, &(&a * &b * &a));
        assert!(close(&x.quad_rep_apply(&y).unwrap(), &want, 1e-12));
    }
}

#[test]
fn spectral_examples() {
    for alg in algebras() {
        let sp = spectral_decompose_real(&ElementJ::unit(alg)).unwrap();
        assert!(sp.eigenvalues.iter().all(|l| (l - 1.0).abs() < 1e-14));
    }
    let alg = Algebra::sym_r(2);
    let x = ElementJ::new(alg, vec![3.0, -1.0, 0.0]).unwrap();
    let sp = x.spectral().unwrap();
    assert_eq!(sp.eigenvalues, vec![3.0, -1.0]);
    assert!(close(&sp.frame[0], &ElementJ::diagonal_unit(alg, 0), 1e-14));
    assert!(close(&sp.frame[1], &ElementJ::diagonal_unit(alg, 1), 1e-14));

    let sp = spin(&[2.0, 1.0, 0.0, 0.0]).spectral().unwrap();
    assert!((sp.eigenvalues[0] - 3.0).abs() < 1e-14 && (sp.eigenvalues[1] - 1.0).abs() < 1e-14);
    assert!(close(&sp.frame[0], &spin(&[0.5, 0.5, 0.0, 0.0]), 1e-14));
    assert!(close(&sp.frame[1], &spin(&[0.5, -0.5, 0.0, 0.0]), 1e-14));
}

#[test]
fn spectra_are_sorted_descending() {
    let mut g = rng(6);
    for alg in algebras() {
        for _ in 0..20 {
            let sp = random_element(alg, &mut g).spectral().unwrap();
            assert!(sp.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}

#[test]
fn rank_inverse_and_cone() {
    for alg in algebras() {
        let r = alg.rank();
        for p in 0..=r {
            for q in 0..=r - p {
                let x = ElementJ::epq(alg, p, q).unwrap();
                assert_eq!(x.rank_real(1e-9).unwrap(), p + q);
                assert_eq!(x.det_real().abs() < 1e-12, p + q < r);
            }
        }
        assert!(close(
            &ElementJ::epq(alg, r, 0).unwrap(),
            &ElementJ::unit(alg),
            1e-14
        ));
        assert!(close(
            &ElementJ::epq(alg, 0, r).unwrap(),
            &ElementJ::unit(alg).scale(-1.0),
            1e-14
        ));
        assert!(ElementJ::epq(alg, r, 1).is_err());
        assert_eq!(ElementJ::zero(alg).rank_real(1e-9).unwrap(), 0);
        assert!(ElementJ::unit(alg).in_cone(1e-9).unwrap());
        assert!(!ElementJ::unit(alg).scale(-1.0).in_cone(1e-9).unwrap());
        assert!(ElementJ::zero(alg).inverse_real(1e-9).is_err());
    }
    // Elements of known rank: orthogonal conjugates of diagonal matrices with k zeros.
    let mut g = rng(7);
    for i in 0..100 {
        let alg = Algebra::sym_r(1 + i % 3);
        let r = alg.rank();
        let k = g.random_range(0..=r);
        let frame = random_frame(alg, &mut g);
        let values: Vec<f64> = (0..r)
            .map(|j| {
                if j < k {
                    0.0
                } else {
                    g.random_range(0.5..3.0) * if g.random_bool(0.5) { 1.0 } else { -1.0 }
                }
            })
            .collect();
        let x = ElementJ::from_frame(&frame, &values);
        assert_eq!(x.rank_real(1e-9).unwrap(), r - k);
        let sv = singular_values(&to_complex(&sym_matrix(&x)));
        assert_eq!(
            sv.iter().filter(|s| **s > 1e-9 * sv[0].max(1.0)).count(),
            r - k
        );
    }
    let mut g = rng(8);
    for alg in algebras() {
        let x = random_element(alg, &mut g);
        let inv = x.inverse_real(1e-12).unwrap();
        assert!(close(&x.jmul(&inv).unwrap(), &ElementJ::unit(alg), 1e-9));
    }
}

#[test]
fn peirce_examples_and_dimensions() {
    let mut g = rng(9);
    for alg in algebras() {
        let x = random_element(alg, &mut g);
        let e = ElementJ::unit(alg);
        let s = peirce_decompose(&e, &x, 1e-9).unwrap();
        assert!(close(&s.x1, &x, 1e-13) && s.xhalf.norm() < 1e-12 && s.x0.norm() < 1e-12);
        let c = random_frame(alg, &mut g)[0].clone();
        let s = peirce_decompose(&c, &c, 1e-9).unwrap();
        assert!(close(&s.x1, &c, 1e-12) && s.xhalf.norm() < 1e-12 && s.x0.norm() < 1e-12);

        // dim J(c, 0) = k + k(k-1)d/2 for c of rank r - k.
        let r = alg.rank();
        let d = alg.peirce_d();
        let frame = random_frame(alg, &mut g);
        for k in 0..=r {
            let mut c = ElementJ::zero(alg);
            for f in &frame[..r - k] {
                c = &c + f;
            }
            let mut cols = Vec::new();
            for i in 0..alg.dim() {
                cols.push(
                    peirce_decompose(&c, &ElementJ::basis(alg, i), 1e-9)
                        .unwrap()
                        .x0
                        .into_coords(),
                );
            }
            let proj = DMatrix::from_fn(alg.dim(), alg.dim(), |i, j| cols[j][i]);
            let sv = singular_values(&to_complex(&proj));
            let dim0 = sv.iter().filter(|s| **s > 1e-8).count();
            assert_eq!(dim0, k + k * k.saturating_sub(1) * d / 2, "{alg} k={k}");
            assert_eq!(
                alg.dim() - dim0 - alg.peirce_one_dim(r - k),
                (r - k) * k * d,
                "{alg} k={k}"
            );
        }
    }
}

fn half_space_element(c: &ElementJ, g: &mut Rand) -> ElementJ {
    let z = random_element(c.algebra(), g);
    peirce_decompose(c, &z, 1e-9).unwrap().xhalf
}

#[test]
fn frobenius_examples() {
    let mut g = rng(10);
    for alg in algebras() {
        let frame = random_frame(alg, &mut g);
        let c = frame[0].clone();
        let x = random_element(alg, &mut g);
        let zero = ElementJ::zero(alg);
        assert!(close(
            &frobenius_apply(&c, &zero, &x, 1e-9).unwrap(),
            &x,
            1e-13
        ));

        let z = half_space_element(&c, &mut g);
        let y = frobenius_apply(&c, &z, &x, 1e-9).unwrap();
        let xs = peirce_decompose(&c, &x, 1e-9).unwrap();
        let ys = peirce_decompose(&c, &y, 1e-9).unwrap();
        assert!(close(&ys.x1, &xs.x1, 1e-11));

        // Operator exponential of 2 (z [] c), applied to x.
        let op = to_complex(&(box_operator(&z, &c) * 2.0));
        let v = expm(&op)
            * nalgebra::DVector::from_iterator(alg.dim(), x.coords().iter().map(|v| (*v).into()));
        let want = ElementJ::new(alg, v.iter().map(|z| z.re).collect()).unwrap();
        assert!(close(&y, &want, 1e-10), "{alg}: {}", y.distance(&want));
    }
}

#[test]
fn frobenius_rejects_other_directions() {
    let alg = Algebra::sym_r(2);
    let c = ElementJ::diagonal_unit(alg, 0);
    assert!(frobenius_apply(&c, &c, &ElementJ::unit(alg), 1e-9).is_err());
}

#[test]
fn standard_and_random_frames_are_jordan_frames() {
    let mut g = rng(11);
    for alg in algebras() {
        for frame in [standard_frame(alg), random_frame(alg, &mut g)] {
            assert_eq!(frame.len(), alg.rank());
            let mut sum = ElementJ::zero(alg);
            for (i, a) in frame.iter().enumerate() {
                sum = &sum + a;
                assert!((a.trace() - 1.0).abs() < 1e-12);
                for (j, b) in frame.iter().enumerate() {
                    let p = a.jmul(b).unwrap();
                    if i == j {
                        assert!(close(&p, a, 1e-12));
                    } else {
                        assert!(p.norm() < 1e-12);
                    }
                }
            }
            assert!(close(&sum, &ElementJ::unit(alg), 1e-12));
        }
    }
    assert_eq!(
        Algebra::new(AlgebraKind::Spin, 3).unwrap(),
        Algebra::spin(3)
    );
}

fn arb_case() -> impl Strategy<Value = (Algebra, u64)> {
    (0..algebras().len(), any::<u64>()).prop_map(|(i, s)| (algebras()[i], s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn jordan_identity((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = random_element(alg, &mut g);
        let y = random_element(alg, &mut g);
        let x2 = x.square();
        let lhs = x.jmul(&x2.jmul(&y).unwrap()).unwrap();
        let rhs = x2.jmul(&x.jmul(&y).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-10 * (1.0 + x.norm()).powi(3) * (1.0 + y.norm()));
    }

    #[test]
    fn power_associativity((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = random_element(alg, &mut g);
        let x2 = x.square();
        let x3 = x2.jmul(&x).unwrap();
        let a = x2.jmul(&x2).unwrap();
        let b = x3.jmul(&x).unwrap();
        prop_assert!(a.distance(&b) <= 1e-10 * (1.0 + x.norm()).powi(4));
    }

    #[test]
    fn commutativity_and_inner_product((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = random_element(alg, &mut g);
        let y = random_element(alg, &mut g);
        prop_assert!(x.jmul(&y).unwrap().distance(&y.jmul(&x).unwrap()) < 1e-12 * (1.0 + x.norm() * y.norm()));
        prop_assert!((x.inner(&y).unwrap() - y.inner(&x).unwrap()).abs() < 1e-12 * (1.0 + x.norm() * y.norm()));
        prop_assert!((x.inner(&y).unwrap() - x.jmul(&y).unwrap().trace()).abs() < 1e-10 * (1.0 + x.norm() * y.norm()));
        prop_assert!(x.inner(&x).unwrap() > 0.0);
    }

    #[test]
    fn determinant_is_multiplicative_under_p((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = random_element(alg, &mut g);
        let y = random_element(alg, &mut g);
        let lhs = x.quad_rep_apply(&y).unwrap().det_real();
        let rhs = x.det_real().powi(2) * y.det_real();
        let r = alg.rank() as i32;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + x.norm()).powi(2 * r) * (1.0 + y.norm()).powi(r));
    }

    #[test]
    fn spectral_round_trip((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let x = random_element(alg, &mut g);
        let sp = x.spectral().unwrap();
        prop_assert!(sp.reconstruct().distance(&x) <= 1e-10 * (1.0 + x.norm()));
        let prod: f64 = sp.eigenvalues.iter().product();
        prop_assert!((prod - x.det_real()).abs() <= 1e-10 * (1.0 + x.norm()).powi(alg.rank() as i32));
    }

    #[test]
    fn peirce_components_are_complete_and_eigen((alg, seed) in arb_case()) {
        let mut g = rng(seed);
        let frame = random_frame(alg, &mut g);
        let k = g.random_range(1..=alg.rank());
        let mut c = ElementJ::zero(alg);
        for f in &frame[..k] {
            c = &c + f;
        }
        let x = random_element(alg, &mut g);
        let s = peirce_decompose(&c, &x, 1e-9).unwrap();
        let sum = &(&s.x1 + &s.xhalf) + &s.x0;
        let tol = 1e-10 * (1.0 + x.norm());
        prop_assert!(sum.distance(&x) < tol);
        prop_assert!(c.jmul(&s.x1).unwrap().distance(&s.x1) < tol);
        prop_assert!(c.jmul(&s.xhalf).unwrap().distance(&s.xhalf.scale(0.5)) < tol);
        prop_assert!(c.jmul(&s.x0).unwrap().norm() < tol);
    }
}
