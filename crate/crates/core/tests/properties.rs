use std::f64::consts::TAU;

use hstab::analyzer::{hyperbola_matrix_analysis, hyperbola_q_matrix, torus_mode_value, ModeVector};
use hstab::catalog::{flat_chart_ids, lookup, make_torus, tube_ids};
use hstab::geometry::Sign;
use hstab::quadrature::GridSpec;
use hstab::testfn::{random, TestFunction};
use hstab::variation::{second_variation, MainTheoremFunctional, QuadraticFunctional};
use hstab::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sign(b: bool) -> Sign {
    if b {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torus_modes_match_closed_form(
        r1 in 0.4f64..3.0,
        r2 in 0.4f64..3.0,
        p in 0usize..=2,
        k1 in -3i64..=3,
        k2 in -3i64..=3,
    ) {
        prop_assume!(k1 != 0 || k2 != 0);
        let radii = [r1, r2];
        let f = MainTheoremFunctional::new(make_torus(&radii, p).unwrap());
        let u = TestFunction::fourier_mode(f.domains(), &[k1, k2]).unwrap();
        let quad = second_variation(&f, &u, &GridSpec::default_for(2)).unwrap();
        // (Vol/2)[(Σε m²)² + (Σε m/r)² − 2Σ m²/r²], m = k/r
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for (j, (r, k)) in radii.iter().zip([k1, k2]).enumerate() {
            let e = if j < p { -1.0 } else { 1.0 };
            let m = k as f64 / r;
            a += e * m * m;
            b += e * m / r;
            c += m * m / (r * r);
        }
        let oracle = TAU * r1 * TAU * r2 / 2.0 * (a * a + b * b - 2.0 * c);
        let closed = torus_mode_value(&radii, p, &ModeVector::new(vec![k1, k2]).unwrap()).unwrap();
        let scale = oracle.abs().max(1.0);
        prop_assert!((quad - oracle).abs() <= 1e-9 * scale, "quadrature {quad} vs {oracle}");
        prop_assert!((closed - oracle).abs() <= 1e-12 * scale, "closed form {closed} vs {oracle}");
    }

    #[test]
    fn second_variation_is_quadratic(seed in 0u64..1000, c in -3.0f64..3.0) {
        let f = MainTheoremFunctional::new(make_torus(&[1.0, 2.0], 1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random::trig_polynomial(&mut rng, f.domains(), 2, 3).unwrap();
        let v = random::trig_polynomial(&mut rng, f.domains(), 2, 3).unwrap();
        let g = GridSpec::default_for(2);
        let q = |w: &TestFunction| second_variation(&f, w, &g).unwrap();
        let (qu, qv) = (q(&u), q(&v));
        let scale = qu.abs() + qv.abs() + 1.0;
        prop_assert!((q(&u.scale(c)) - c * c * qu).abs() <= 1e-9 * scale * (1.0 + c * c));
        // parallelogram law
        let plus = q(&u.add_scaled(1.0, &v).unwrap());
        let minus = q(&u.add_scaled(-1.0, &v).unwrap());
        prop_assert!((plus + minus - 2.0 * (qu + qv)).abs() <= 1e-9 * scale * 4.0);
    }

    #[test]
    fn q_matrix_is_symmetric_with_fixed_w_value(
        radii in prop::collection::vec(0.2f64..5.0, 2..=4),
        bits in prop::collection::vec(any::<bool>(), 4),
    ) {
        let n = radii.len();
        let branches: Vec<Sign> = bits[..n].iter().map(|&b| sign(b)).collect();
        let m = hyperbola_q_matrix(&radii, &branches).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m[i][j], m[j][i]);
            }
        }
        let a = hyperbola_matrix_analysis(&radii, &branches).unwrap();
        let nf = n as f64;
        prop_assert!((a.w_value - (2.0 * nf - nf * nf)).abs() <= 1e-10 * nf * nf);
        prop_assert!((a.e1_value - 1.0 / (radii[0] * radii[0])).abs() <= 1e-12 / (radii[0] * radii[0]));
        prop_assert_eq!(a.inertia.positive + a.inertia.negative + a.inertia.zero, n);
    }

    #[test]
    fn garbage_ids_are_rejected(s in "[a-z:=,0-9.]{0,24}") {
        match lookup(&s) {
            Ok(entry) => prop_assert!(!entry.id.is_empty()),
            Err(e) => prop_assert!(
                matches!(e, Error::UnknownCatalogId(_) | Error::MalformedCatalogId { .. } | Error::InvalidArgument(_)),
                "{e:?}"
            ),
        }
    }
}

#[test]
fn catalog_ids_resolve() {
    for id in flat_chart_ids().into_iter().map(String::from).chain(tube_ids()) {
        let entry = lookup(&id).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(entry.id, id);
    }
    assert_eq!(tube_ids().len(), 16);
}
