use dlct::{
    box_from_parallelogram, min_rate_basic, min_rate_recoverable, min_samples, parallelogram_reduce, plan_box,
    plan_refined, random_params, LctError, LctParams, ParallelogramSpec, TimeFreqBox,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = LctParams> {
    any::<u64>().prop_map(random_params)
}

fn close(x: &LctParams, y: &LctParams, tol: f64) -> bool {
    x.as_array().iter().zip(y.as_array()).all(|(p, q)| (p - q).abs() <= tol * (1.0 + q.abs()))
}

#[test]
fn invalid_matrix_reports_determinant() {
    match LctParams::new(2.0, 0.0, 1.0, 0.4) {
        Err(LctError::Determinant { det, .. }) => assert!((det - 0.8).abs() < 1e-12),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn user_decimals_are_accepted() {
    assert!(LctParams::new(0.44, -0.08, 4.8, 1.4).is_ok());
}

proptest! {
    #[test]
    fn inverse_composes_to_identity(m in params()) {
        prop_assert!(close(&m.compose(&m.inverse()), &LctParams::IDENTITY, 1e-12));
        prop_assert!(close(&m.inverse().compose(&m), &LctParams::IDENTITY, 1e-12));
        prop_assert_eq!(m.inverse().inverse(), m);
    }

    #[test]
    fn composition_keeps_unit_determinant(m1 in params(), m2 in params()) {
        let p = m1.compose(&m2);
        prop_assert!((p.determinant() - 1.0).abs() <= 1e-9);
        prop_assert!(LctParams::new(p.a(), p.b(), p.c(), p.d()).is_ok());
    }

    #[test]
    fn composition_is_associative(m1 in params(), m2 in params(), m3 in params()) {
        let left = m1.compose(&m2).compose(&m3);
        let right = m1.compose(&m2.compose(&m3));
        prop_assert!(close(&left, &right, 1e-10));
    }

    #[test]
    fn chirp_rates_rebuild_the_matrix(m in params()) {
        let (x1, x2, x3) = m.chirp_rates().unwrap();
        let back = LctParams::from_chirp_rates(x1, x2, x3).unwrap();
        prop_assert!(close(&back, &m, 1e-9));
    }

    #[test]
    fn to_discrete_at_unit_grid_is_identity(m in params(), n in 1usize..5000) {
        let d = m.to_discrete(n, (1.0 / n as f64).sqrt()).unwrap();
        prop_assert!(close(&d, &m, 1e-12));
    }

    #[test]
    fn rates_are_monotone(m in params(), t in 0.1f64..50.0, f in 0.1f64..50.0, dt in 0.0f64..10.0, df in 0.0f64..10.0) {
        let small = TimeFreqBox::new(t, f).unwrap();
        let big = TimeFreqBox::new(t + dt, f + df).unwrap();
        let basic = min_rate_basic(&small, &m).unwrap();
        let recov = min_rate_recoverable(&small, &m).unwrap();
        prop_assert!(basic >= 0.0);
        prop_assert!(recov >= basic);
        prop_assert!(min_rate_basic(&big, &m).unwrap() >= basic);
        prop_assert!(min_rate_recoverable(&big, &m).unwrap() >= recov);
        let delta = 1.0 / recov;
        prop_assert!(min_samples(delta, &big, &m).unwrap() >= min_samples(delta, &small, &m).unwrap());
    }

    #[test]
    fn reduced_box_contains_rectangle(t1 in 0.5f64..5.0, t2 in -5.0f64..0.0, f1 in 0.5f64..5.0, f2 in -1.0f64..5.0) {
        let spec = ParallelogramSpec { p1: (t1, f1), p2: (t2, f2) };
        if let Ok(r) = parallelogram_reduce(&spec) {
            let b = box_from_parallelogram(&spec).unwrap();
            prop_assert!(b.duration() >= r.t0);
            prop_assert!(b.bandwidth() >= r.c0.abs() * r.t0);
            prop_assert!((r.m0().determinant() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rectangle_plans_agree(half_t in 0.1f64..20.0, half_f in 0.1f64..20.0, m in params(), recoverable in any::<bool>()) {
        let spec = ParallelogramSpec { p1: (half_t, half_f), p2: (-half_t, half_f) };
        let bx = TimeFreqBox::new(2.0 * half_t, 2.0 * half_f).unwrap();
        prop_assert_eq!(plan_refined(&spec, &m, recoverable).unwrap(), plan_box(&bx, &m, recoverable).unwrap());
    }

    #[test]
    fn recoverable_plans_are_finer(t in 0.1f64..20.0, f in 0.1f64..20.0, m in params()) {
        let bx = TimeFreqBox::new(t, f).unwrap();
        let loose = plan_box(&bx, &m, false).unwrap();
        let strict = plan_box(&bx, &m, true).unwrap();
        prop_assert!(strict.delta_max <= loose.delta_max);
        prop_assert!(strict.n_min >= loose.n_min);
        prop_assert!(loose.n_min >= 1 && loose.delta_max > 0.0);
    }
}
