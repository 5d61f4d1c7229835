mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use radiipol::genbench::{generate_center, generate_test_matrix, radius_sweep, GeneratorSpec};
use radiipol::interval::{ArithOp, ComplexInterval, RealInterval};
use radiipol::io::MatrixDocument;
use radiipol::matrix::{approx_eigendecomposition, CandidateEigenpair, ComplexMatrix, IntervalMatrix};
use radiipol::method::Method;
use radiipol::verifier::{
    verify_candidates, verify_eigendecomposition, verify_eigenpair, RadiiBounds, VerificationProblem, VerifyOptions,
};

use common::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        (-16i32..=16).prop_map(f64::from),
        (1.0f64..2.0, -80i32..80, any::<bool>()).prop_map(|(m, e, neg)| if neg { -m } else { m } * 2f64.powi(e)),
    ]
}

fn interval() -> impl Strategy<Value = RealInterval> {
    (finite(), finite()).prop_map(|(a, b)| RealInterval::new(a.min(b), a.max(b)).unwrap())
}

fn weight() -> impl Strategy<Value = u32> {
    0u32..=64
}

fn member(iv: &RealInterval, w: u32) -> num_rational::BigRational {
    let t = num_rational::BigRational::new(w.into(), 64.into());
    rat(iv.lo()) + (rat(iv.hi()) - rat(iv.lo())) * t
}

proptest! {
    #[test]
    fn real_ops_enclose_exact_results(x in interval(), y in interval(), wx in weight(), wy in weight()) {
        let (a, b) = (member(&x, wx), member(&y, wy));
        for op in ArithOp::ALL {
            let Ok(z) = x.apply(op, &y) else {
                prop_assert!(op == ArithOp::Div && y.contains_zero());
                continue;
            };
            let exact = match op {
                ArithOp::Add => &a + &b,
                ArithOp::Sub => &a - &b,
                ArithOp::Mul => &a * &b,
                ArithOp::Div => &a / &b,
            };
            prop_assert!(interval_holds(&z, &exact), "{} {:?} {} = {}", x, op, y, z);
        }
        let sq = x.sqr();
        prop_assert!(interval_holds(&sq, &(&a * &a)));
        prop_assert!(sq.lo() >= 0.0);
    }

    #[test]
    fn complex_ops_enclose_exact_results(
        xr in interval(), xi in interval(), yr in interval(), yi in interval(),
        w in (weight(), weight(), weight(), weight()),
    ) {
        let x = ComplexInterval::new(xr, xi);
        let y = ComplexInterval::new(yr, yi);
        let a = ExactComplex { re: member(&xr, w.0), im: member(&xi, w.1) };
        let b = ExactComplex { re: member(&yr, w.2), im: member(&yi, w.3) };
        for op in ArithOp::ALL {
            let Ok(z) = x.apply(op, &y) else { continue };
            let exact = match op {
                ArithOp::Add => a.add(&b),
                ArithOp::Sub => a.sub(&b),
                ArithOp::Mul => a.mul(&b),
                ArithOp::Div => match a.div(&b) { Some(q) => q, None => continue },
            };
            prop_assert!(complex_holds(&z, &exact), "{} {:?} {} = {}", x, op, y, z);
        }
        // |z| <= mag_sup for every member
        let m = rat(x.mag_sup());
        prop_assert!(a.abs_sqr() <= &m * &m);
        prop_assert!(interval_holds(&x.abs_sqr(), &a.abs_sqr()));
    }

    #[test]
    fn conjugation_commutes_with_multiplication(xr in interval(), xi in interval(), yr in interval(), yi in interval()) {
        let x = ComplexInterval::new(xr, xi);
        let y = ComplexInterval::new(yr, yi);
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
    }

    #[test]
    fn radius_selection_is_rigorous(
        y in prop::collection::vec(0.0f64..1e-3, 1..6),
        z0 in 0.0f64..0.9,
        z1 in 0.0f64..10.0,
    ) {
        let n = y.len();
        let b = RadiiBounds { y, z0: vec![z0; n], z1: vec![z1; n] };
        if let Ok(iv) = b.solve() {
            if let Some((re, ru)) = b.select_radii(iv) {
                prop_assert!(re <= ru);
                for k in 0..n {
                    prop_assert!(polynomial_negative_exact(b.y[k], b.z0[k], b.z1[k], re));
                    prop_assert!(polynomial_negative_exact(b.y[k], b.z0[k], b.z1[k], ru));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shrinking_entries_keeps_certificates(seed in any::<u64>(), n in 2usize..6, e_small in 9i32..13, gap in 1i32..4) {
        let center = generate_center(n, seed).unwrap();
        let small = 10f64.powi(-e_small - gap);
        let large = 10f64.powi(-e_small);
        let cands = approx_eigendecomposition(&center).unwrap();
        let wide = IntervalMatrix::from_midrad(&center, large, large).unwrap();
        let narrow = IntervalMatrix::from_midrad(&center, small, small).unwrap();
        let w = verify_candidates(&wide, &cands, false).unwrap();
        let s = verify_candidates(&narrow, &cands, false).unwrap();
        for (ew, es) in w.iter().zip(&s) {
            if let Some(rw) = ew.r_exist() {
                let rs = es.r_exist();
                prop_assert!(rs.is_some(), "verified at {large:e} but not at {small:e}");
                prop_assert!(rs.unwrap() <= rw);
            }
        }
    }

    #[test]
    fn sweep_failures_are_monotone(seed in any::<u64>(), n in 2usize..6) {
        let base = GeneratorSpec::new(n, seed, 0.0).unwrap();
        let schedule = [1e-8, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1];
        let rep = radius_sweep(&base, &schedule, Method::Radiipol, &VerifyOptions::default()).unwrap();
        prop_assert!(rep.failures_are_monotone());
        prop_assert_eq!(rep.rows.len(), schedule.len());
    }

    #[test]
    fn conjugate_candidates_give_matching_bounds(entries in prop::collection::vec(-4i32..=4, 9)) {
        let rows: Vec<Vec<f64>> = entries.chunks(3).map(|r| r.iter().map(|&v| f64::from(v)).collect()).collect();
        let center = ComplexMatrix::from_real_rows(&rows).unwrap();
        let a = IntervalMatrix::from_point(&center);
        for cand in approx_eigendecomposition(&center).unwrap() {
            let e = verify_eigenpair(&a, &cand).unwrap();
            let c = verify_eigenpair(&a, &cand.conj()).unwrap();
            prop_assert_eq!(e.status, c.status);
            if let (Some(p), Some(q)) = (
                VerificationProblem::assemble(&a, &cand).ok(),
                VerificationProblem::assemble(&a, &cand.conj()).ok(),
            ) {
                let (bp, bq) = (p.bounds().unwrap(), q.bounds().unwrap());
                for (u, v) in [(&bp.y, &bq.y), (&bp.z0, &bq.z0), (&bp.z1, &bq.z1)] {
                    for (s, t) in u.iter().zip(v.iter()) {
                        prop_assert!((s - t).abs() <= f64::EPSILON * s.abs().max(t.abs()), "{s} vs {t}");
                    }
                }
            }
            if let (Some(r), Some(s)) = (e.r_exist(), c.r_exist()) {
                prop_assert!((r - s).abs() <= 4.0 * f64::EPSILON * r.max(s));
            }
        }
    }

    #[test]
    fn complex_input_is_never_real(seed in any::<u64>(), n in 1usize..5) {
        let m = generate_test_matrix(&GeneratorSpec::new(n, seed, 1e-12).unwrap()).unwrap();
        for e in verify_eigendecomposition(&m, &VerifyOptions::default()).unwrap() {
            prop_assert!(!e.is_real);
        }
    }

    #[test]
    fn real_input_flags_only_real_centers(entries in prop::collection::vec(-4i32..=4, 9), rad in 0.0f64..1e-6) {
        let rows: Vec<Vec<f64>> = entries.chunks(3).map(|r| r.iter().map(|&v| f64::from(v)).collect()).collect();
        let a = IntervalMatrix::from_midrad(&ComplexMatrix::from_real_rows(&rows).unwrap(), rad, 0.0).unwrap();
        for e in verify_eigendecomposition(&a, &VerifyOptions::default()).unwrap() {
            if e.is_real {
                prop_assert!(e.is_verified());
                prop_assert_eq!(e.lambda_center.im, 0.0);
                prop_assert!(e.vector_center.iter().all(|z| z.im == 0.0));
            }
        }
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), n in 1usize..8, rad in 0.0f64..1e-3) {
        let spec = GeneratorSpec::new(n, seed, rad).unwrap();
        prop_assert_eq!(generate_test_matrix(&spec).unwrap(), generate_test_matrix(&spec).unwrap());
    }

    #[test]
    fn matrix_documents_roundtrip(seed in any::<u64>(), n in 1usize..6, rad in 0.0f64..1.0) {
        let center = generate_center(n, seed).unwrap();
        let doc = MatrixDocument::from_midrad(&center, rad, rad / 3.0);
        let back = MatrixDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(back.to_interval_matrix().unwrap(), doc.to_interval_matrix().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generated_midpoints_have_small_residuals(seed in any::<u64>(), n in 1usize..=50) {
        let center = generate_center(n, seed).unwrap();
        let norm = center.max_abs() * (n + 1) as f64;
        for c in approx_eigendecomposition(&center).unwrap() {
            let av = center.matvec(&c.vector).unwrap();
            let res = av
                .iter()
                .zip(&c.vector)
                .map(|(&x, &v)| (x - c.lambda * v).norm())
                .fold(0.0, f64::max);
            prop_assert!(res <= 1e-8 * norm, "residual {res:e} for N = {n}");
        }
    }
}

#[test]
fn known_spectra_small_sample() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for n in 1..=4 {
        let (a, lambdas) = known_spectrum_matrix(&mut rng, n, n % 2 == 0);
        let m = IntervalMatrix::from_point(&a);
        for e in verify_eigendecomposition(&m, &VerifyOptions::default()).unwrap() {
            let r = e.r_exist().expect("simple integer spectrum verifies");
            assert!(lambdas.iter().any(|&(re, im)| {
                within_disk(&ExactComplex { re: rat_int(re), im: rat_int(im) }, e.lambda_center, r)
            }));
        }
    }
}

#[test]
fn unimodular_inverse_is_exact() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for n in 1..=5 {
        let (p, inv) = unimodular(&mut rng, n);
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| p[i][k] * inv[k][j]).sum();
                assert_eq!(s, (i == j) as i64);
            }
        }
    }
}

#[test]
fn candidate_conjugate_is_involutive() {
    let c = CandidateEigenpair::new(Complex64::new(1.0, 2.0), vec![Complex64::new(1.0, -1.0), Complex64::new(0.5, 0.0)]).unwrap();
    assert_eq!(c.conj().conj(), c);
}
