use hsd_core::analysis::l1_distance;
use hsd_core::front_tracking::*;
use hsd_core::riemann::solve_boundary;
use hsd_core::semigroup::*;
use hsd_core::wave_curves::*;

fn three_waves(x: f64) -> Profile {
    Profile::new(
        x,
        vec![-1.5, -1.0, -0.5],
        vec![State::new(1.0, 0.0), State::new(1.15, -0.05), State::new(0.9, 0.1), State::new(1.0, 0.0)],
    )
    .unwrap()
}

#[test]
fn transform_examples() {
    let u = Profile::new(2.0, vec![-1.0], vec![State::new(1.0, 0.0), State::new(1.2, 0.3)]).unwrap();
    let t0 = to_transformed(&u, 0.0);
    assert_eq!((t0.breakpoints.clone(), t0.values.clone()), (u.breakpoints.clone(), u.values.clone()));
    let c = Profile::constant(2.0, State::new(1.3, 0.05));
    let tc = to_transformed(&c, -0.1);
    assert!((tc.values[0].v - 0.15).abs() < 1e-16);
    let t = to_transformed(&u, -0.1);
    assert!((t.breakpoints[0] - (-0.8)).abs() < 1e-15);
    let back = from_transformed(&t);
    assert!((back.breakpoints[0] - u.breakpoints[0]).abs() < 1e-15);
    assert!(back.values.iter().zip(&u.values).all(|(a, b)| a.dist_inf(b) < 1e-15));
}

#[test]
fn zero_step_is_identity() {
    let p = ModelParams::limit(1.0, -0.05).unwrap();
    let u = three_waves(1.0);
    assert_eq!(semigroup_apply(&u, 0.0, &p, 10).unwrap(), u);
}

#[test]
fn boundary_datum_matches_boundary_fan() {
    let p = ModelParams::limit(1.0, -0.1).unwrap();
    let ul = State::new(1.0, 0.1);
    let fan = solve_boundary(ul, &p).unwrap();
    let out = semigroup_apply(&Profile::constant(1.0, ul), 1.0, &p, 10).unwrap();
    // a lone shock: the corner at (1, -0.1) sends it along xi = sigma
    let sigma = fan.waves[0].xi_lo;
    assert_eq!(out.values.len(), 2);
    assert!((out.breakpoints[0] - (-0.1 + sigma)).abs() < 1e-12);
    assert!(out.values[1].dist_inf(&fan.right_state()) < 1e-12);
}

#[test]
fn transformed_run_matches_direct_tracking() {
    let b0 = -0.08;
    let p = ModelParams::limit(1.0, b0).unwrap();
    let u = three_waves(0.0);
    let s = semigroup_apply(&u, 1.0, &p, 9).unwrap();
    let (direct, _) = evolve(&u, 1.0, &p, &SchemeParams::new(9, &p)).unwrap();
    let d = l1_distance(&s, &direct, (f64::NEG_INFINITY, b0)).unwrap();
    assert!(d < 1e-3, "{d}");
}

#[test]
fn semigroup_defect_shrinks_with_resolution() {
    let p = ModelParams::limit(1.0, 0.0).unwrap();
    let u = three_waves(0.0);
    let d: Vec<f64> = [6u32, 9, 12].iter().map(|&n| semigroup_defect(&u, 0.37, 0.41, &p, n).unwrap()).collect();
    assert!(d[2] < d[0], "{d:?}");
}

#[test]
fn lipschitz_ratio_is_stable() {
    let p = ModelParams::limit(1.0, 0.0).unwrap();
    let a = three_waves(0.0);
    let mut b = a.clone();
    b.values[2] = State::new(0.92, 0.08);
    b.breakpoints[1] = -0.95;
    let r1 = lipschitz_ratio(&a, &b, 1.0, &p, 10).unwrap();
    let r2 = lipschitz_ratio(&a, &b, 1.0, &p, 12).unwrap();
    assert!(r1.is_finite() && r1 > 0.0 && r1 < 10.0);
    assert!((r1 / r2 - 1.0).abs() < 0.2, "{r1} {r2}");
}

#[test]
fn error_functional_of_limit_trajectory_is_small() {
    let pl = ModelParams::limit(1.0, 0.0).unwrap();
    let pf = ModelParams::new(1.0, 4e-3, 4e-3, 0.0).unwrap();
    let u = three_waves(0.0);
    // V run at the reference resolution is the semigroup trajectory itself
    let lim = error_functional(&u, &pl, &SchemeParams::new(12, &pl), 1.0, 1e-4, 16, 12, 1.0).unwrap();
    let full = error_functional(&u, &pf, &SchemeParams::new(12, &pf), 1.0, 1e-4, 16, 12, 1.0).unwrap();
    assert_eq!(lim.trace.len(), 16);
    assert!(lim.integral < 0.05 * full.integral, "{} {}", lim.integral, full.integral);
    assert!(full.trace_csv().starts_with("s,integrand,h,warnings\n"));
    // the functional dominates the measured error of the trajectory
    let mut t = FrontTracker::new(&u, &pf, &SchemeParams::new(12, &pf)).unwrap();
    t.advance(1.0).unwrap();
    let reference = semigroup_apply(&u, 1.0, &pf, 12).unwrap();
    let direct = l1_distance(&t.profile(), &reference, (f64::NEG_INFINITY, 0.0)).unwrap();
    let lip = lipschitz_ratio(&three_waves(0.0), &Profile::constant(0.0, State::new(1.0, 0.0)), 1.0, &pf, 12).unwrap();
    assert!(full.integral >= direct / (1.5 * lip.max(1.0)), "{} {direct}", full.integral);
    // more panels barely move a converged estimate
    let fine = error_functional(&u, &pf, &SchemeParams::new(12, &pf), 1.0, 1e-4, 32, 12, 1.0).unwrap();
    assert!((fine.integral / full.integral - 1.0).abs() < 0.05);
}

#[test]
fn local_probe_ratios() {
    let pf = ModelParams::new(1.0, 1e-3, 0.0, 0.0).unwrap();
    let ul = State::new(1.0, 0.1);
    let ur = wave_state(Family::One, 1.2, ul, &pf).unwrap();
    let prof = Profile::new(0.0, vec![-1.0], vec![ul, ur]).unwrap();
    let t = FrontTracker::new(&prof, &pf, &SchemeParams::new(8, &pf)).unwrap();
    let r1 = local_error_probe(&t, 1e-3, 12).unwrap();
    let r2 = local_error_probe(&t, 5e-4, 12).unwrap();
    let (a, b) = (r1[0].ratio, r2[0].ratio);
    assert_eq!(r1[0].site, ProbeSite::Interior);
    assert!(a.is_finite() && a > 0.0 && (a / b - 1.0).abs() < 0.25, "{a} {b}");
    // limit system: the tracked front is the reference front
    let pl = pf.to_limit();
    let ur0 = wave_state(Family::One, 1.2, ul, &pl).unwrap();
    let t0 = FrontTracker::new(&Profile::new(0.0, vec![-1.0], vec![ul, ur0]).unwrap(), &pl, &SchemeParams::new(8, &pl)).unwrap();
    let r0 = local_error_probe(&t0, 1e-3, 12).unwrap();
    assert!(r0[0].ratio < 1e-6 * a.max(1.0), "{}", r0[0].ratio);
}

#[test]
fn nonphysical_probe_is_bounded_by_its_size() {
    let p = ModelParams::limit(1.0, 0.0).unwrap();
    let sp = SchemeParams::new(8, &p);
    let u0 = State::new(1.0, 0.0);
    let u1 = State::new(1.0 + 1e-4, 2e-5);
    let np = Front {
        id: 0,
        family: FrontFamily::NonPhysical,
        kind: FrontKind::NonPhysical,
        strength: u0.dist_inf(&u1),
        x0: 0.0,
        y0: -1.0,
        speed: sp.lambda_hat,
        left: u0,
        right: u1,
    };
    // a profile with this jump probed with the tracked front replaced by the
    // non-physical one: the difference is bounded by C alpha_NP h
    let prof = Profile::new(0.0, vec![-1.0], vec![u0, u1]).unwrap();
    let t = FrontTracker::new(&prof, &p, &sp).unwrap();
    let h = 1e-3;
    let s = semigroup_apply(&prof, h, &p, 12).unwrap();
    let moved = Profile::new(h, vec![np.y_at(h)], vec![u0, u1]).unwrap();
    let value = l1_distance(&s, &moved, (-2.0, -0.5)).unwrap();
    assert!(value <= 2.0 * (sp.lambda_hat + 2.0) * np.strength * h, "{value}");
    assert!(value > 0.0);
    assert!(!t.fronts().is_empty());
}
