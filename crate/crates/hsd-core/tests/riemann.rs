use hsd_core::riemann::*;
use hsd_core::wave_curves::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lim(a: f64) -> ModelParams {
    ModelParams::limit(a, 0.0).unwrap()
}

fn rel_sup(a: State, b: State) -> f64 {
    a.dist_inf(&b) / b.rho.abs().max(b.v.abs()).max(1.0)
}

#[test]
fn identity_problem_has_no_waves() {
    let u = State::new(1.2, 0.1);
    let fan = solve_interior(u, u, &ModelParams::new(1.0, 1e-3, 1e-3, 0.0).unwrap()).unwrap();
    assert!(fan.waves.is_empty());
    assert_eq!(fan.constant_states, vec![u]);
}

#[test]
fn symmetric_collision_gives_two_shocks() {
    let fan = solve_interior(State::new(1.0, 0.2), State::new(1.0, -0.2), &lim(1.0)).unwrap();
    assert_eq!(fan.waves.len(), 2);
    let (a1, a2) = (fan.waves[0].wave.alpha, fan.waves[1].wave.alpha);
    assert!(fan.waves.iter().all(|w| w.wave.kind == WaveKind::Shock));
    // 30-digit reference for phi1(a) + phi2(1/a) = -0.4
    assert!((a1 - 1.221_810_707_761_102_4).abs() < 1e-13);
    assert!((a1 * a2 - 1.0).abs() < 1e-14);
}

#[test]
fn data_on_one_curve() {
    for p in [lim(1.0), ModelParams::new(1.0, 2e-3, 3e-3, 0.0).unwrap()] {
        let ul = State::new(1.0, 0.0);
        let ur = wave_state(Family::One, 1.2, ul, &p).unwrap();
        let (a1, a2) = solve_strengths(ul, ur, &p).unwrap();
        assert!((a1 - 1.2).abs() < 1e-12 && (a2 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn random_pairs_recompose() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let mu: f64 = rng.gen_range(0.0..1e-2);
        let split: f64 = rng.gen();
        let p = ModelParams::new(rng.gen_range(0.7..2.0), mu * split, mu * (1.0 - split), 0.0).unwrap();
        let ul = State::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        let ur = State::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        let fan = solve_interior(ul, ur, &p).unwrap();
        let (a1, a2) = solve_strengths(ul, ur, &p).unwrap();
        let back = wave_map_phi(a1, a2, ul, &p).unwrap();
        assert!(rel_sup(back, ur) < 1e-10);
        assert!(fan_is_admissible(&fan, &p).unwrap());
    }
}

#[test]
fn boundary_examples() {
    let p = ModelParams::limit(1.0, -0.2).unwrap();
    let fan = solve_boundary(State::new(1.3, -0.2), &p).unwrap();
    assert!(fan.waves.is_empty());
    let ul = State::new(1.3, -0.5);
    let a = boundary_strength(ul, &p).unwrap();
    assert!((a - (-0.3f64).exp()).abs() < 1e-15);
    let fan = solve_boundary(ul, &p).unwrap();
    assert_eq!(fan.waves[0].wave.kind, WaveKind::Rarefaction);
    assert!(boundary_residual(fan.right_state(), &p).unwrap().abs() < 1e-12);
    // rate example: alpha1 = 1 + a delta + O(delta^2)
    let p = lim(1.0);
    let mut prev = f64::NAN;
    for k in 0..4 {
        let d = 1e-3 / 2f64.powi(k);
        let a = boundary_strength(State::new(1.0, d), &p).unwrap();
        let q = (a - 1.0 - d) / (d * d);
        assert!(q.is_finite() && q.abs() < 2.0);
        if k > 0 {
            assert!((q - prev).abs() < 0.01);
        }
        prev = q;
    }
}

#[test]
fn boundary_traces_full_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let p = ModelParams::new(1.0, rng.gen_range(0.0..5e-3), rng.gen_range(0.0..5e-3), rng.gen_range(-0.3..0.0))
            .unwrap();
        let ul = State::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        let fan = solve_boundary(ul, &p).unwrap();
        let ub = fan.right_state();
        assert!(boundary_residual(ub, &p).unwrap().abs() < 1e-12);
        let shock = fan.waves.first().map(|w| w.wave.kind == WaveKind::Shock);
        let expect_shock = ul.v > p.b0 * sqrt_factor(ul, &p).unwrap();
        if let Some(s) = shock {
            assert_eq!(s, expect_shock);
        }
        assert!(fan_is_admissible(&fan, &p).unwrap());
    }
}

#[test]
fn sampling_conventions() {
    let p = lim(1.0);
    let ul = State::new(1.0, 0.3);
    let ur = State::new(1.4, 0.1);
    let fan = solve_interior(ul, ur, &p).unwrap();
    assert_eq!(sample_fan(&fan, -10.0, &p).unwrap(), ul);
    assert_eq!(sample_fan(&fan, 10.0, &p).unwrap(), ur);
    for w in &fan.waves {
        if w.wave.kind == WaveKind::Shock {
            let at = sample_fan(&fan, w.xi_lo, &p).unwrap();
            let after = sample_fan(&fan, w.xi_lo + 1e-9, &p).unwrap();
            assert_eq!(at, after);
        } else {
            let mid = 0.5 * (w.xi_lo + w.xi_hi);
            let u = sample_fan(&fan, mid, &p).unwrap();
            assert!((eigenvalue(w.wave.family, u, &p).unwrap() - mid).abs() < 1e-13);
            // continuity at the sector edges
            let lo_in = sample_fan(&fan, w.xi_lo + 1e-10, &p).unwrap();
            let lo_out = sample_fan(&fan, w.xi_lo - 1e-10, &p).unwrap();
            assert!(lo_in.dist_inf(&lo_out) < 1e-8);
        }
    }
}

#[test]
fn boundary_fan_rejects_rays_beyond_wall() {
    let p = ModelParams::limit(1.0, -0.1).unwrap();
    let fan = solve_boundary(State::new(1.0, 0.2), &p).unwrap();
    assert!(sample_fan(&fan, 0.0, &p).is_err());
    assert!(sample_fan(&fan, -0.1, &p).is_ok());
}

#[test]
fn comparison_report() {
    let ul = State::new(1.0, 0.0);
    let ur = State::new(1.3, -0.2);
    let r = compare_strengths(ul, ur, &lim(1.0)).unwrap();
    assert!(r.exact_match);
    assert_eq!(r.ratio, (None, None));
    // beta2 - 1 shrinks linearly under eps halving for data on the full 1-shock curve
    let mut gaps = vec![];
    for k in 0..3 {
        let eps = 1e-3 / 2f64.powi(k);
        let p = ModelParams::new(1.0, eps, 0.0, 0.0).unwrap();
        let ur = wave_state(Family::One, 1.5, ul, &p).unwrap();
        let rep = compare_strengths(ul, ur, &p).unwrap();
        assert!((rep.full.1 - 1.0).abs() < 1e-12);
        gaps.push((rep.limit.1 - 1.0).abs());
        assert!(rep.ratio.0.unwrap().is_finite());
    }
    for w in gaps.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 2.0).abs() < 0.05, "{ratio}");
    }
}

#[test]
fn self_similarity_along_rays() {
    let p = ModelParams::new(1.0, 4e-3, 2e-3, 0.0).unwrap();
    let fan = solve_interior(State::new(0.8, 0.4), State::new(1.5, 0.3), &p).unwrap();
    for xi in [-1.3, -0.9, -0.2, 0.4, 1.1, 1.5] {
        let states: Vec<State> = [0.5, 1.0, 2.0].iter().map(|&x| sample_fan(&fan, (xi * x) / x, &p).unwrap()).collect();
        assert!(states.windows(2).all(|w| w[0] == w[1]));
    }
}
