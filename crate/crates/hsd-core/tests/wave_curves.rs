use hsd_core::wave_curves::*;
use hsd_core::Error;

fn lim(a: f64) -> ModelParams {
    ModelParams::limit(a, 0.0).unwrap()
}

fn full(a: f64, eps: f64, tau2: f64) -> ModelParams {
    ModelParams::new(a, eps, tau2, 0.0).unwrap()
}

// Plain bisection on the H_S form, kept separate from the library's solver.
fn bisect_hs(alpha: f64, ul: State, p: &ModelParams) -> f64 {
    let mut lo = -3.0;
    let mut hi = -1e-300;
    let flo = hugoniot_hs(lo, alpha, ul, p).unwrap();
    assert!(flo > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hugoniot_hs(mid, alpha, ul, p).unwrap() > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

// Fixed-step RK4 on the rarefaction ODE, written from the eigenvector.
fn rk4_raref(family: Family, alpha: f64, ul: State, p: &ModelParams, n: usize) -> f64 {
    let a2 = p.a_inf * p.a_inf;
    let f = |t: f64, w: f64| {
        let rho = ul.rho * t.exp();
        let v = ul.v + w;
        let b = 2.0 * ((rho.powf(p.epsilon) - 1.0) / p.epsilon) / a2 + v * v;
        let s = (1.0 - p.tau2 * b).sqrt();
        let re = rho.powf(p.epsilon);
        let disc = a2 - p.tau2 * ((p.epsilon + 2.0) * re - 2.0) / p.epsilon;
        let den = a2 * (1.0 - p.tau2 * (b + re / a2));
        let lam = (a2 * v * s + family.sign() * rho.powf(p.epsilon / 2.0) * disc.sqrt()) / den;
        re / (a2 * (s * lam - v))
    };
    let t1 = alpha.ln();
    let h = t1 / n as f64;
    let mut w = 0.0;
    for i in 0..n {
        let t = i as f64 * h;
        let k1 = f(t, w);
        let k2 = f(t + 0.5 * h, w + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, w + 0.5 * h * k2);
        let k4 = f(t + h, w + h * k3);
        w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    w
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli_b(State::new(1.0, 0.0), &full(1.3, 0.2, 0.1)).unwrap(), 0.0);
    let e = std::f64::consts::E;
    assert!((bernoulli_b(State::new(e, 0.0), &lim(1.0)).unwrap() - 2.0).abs() < 1e-15);
    // 30-digit reference: 0.608867312681465821065031625116
    let p = full(2.0, 0.1, 0.0);
    let b = bernoulli_b(State::new(2.0, 0.5), &p).unwrap();
    assert!((b - 0.608_867_312_681_465_8).abs() < 1e-15);
    assert!(matches!(bernoulli_b(State::new(0.0, 0.0), &p), Err(Error::Domain(_))));
}

#[test]
fn u_recovery() {
    assert_eq!(u_from_state(State::new(1.0, 0.0), &full(1.0, 0.1, 0.1)).unwrap(), 0.0);
    let e = std::f64::consts::E;
    assert!((u_from_state(State::new(e, 0.0), &lim(1.0)).unwrap() + 1.0).abs() < 1e-15);
    // (sqrt(1 - 1e-4) - 1) / 1e-2 = -0.00500012500625039065...
    let u = u_from_state(State::new(1.0, 0.1), &full(1.0, 0.0, 0.01)).unwrap();
    assert!((u + 0.005_000_125_006_250_391).abs() < 1e-17);
    // limit system: u = -v^2/2 - ln(rho)/a^2
    let s = State::new(1.7, -0.3);
    let u = u_from_state(s, &lim(1.5)).unwrap();
    assert!((u - (-0.045 - 1.7f64.ln() / 2.25)).abs() < 1e-15);
    let cav = u_from_state(State::new(1.0, 20.0), &full(1.0, 0.0, 0.01));
    assert!(matches!(cav, Err(Error::Cavitation { .. })));
}

#[test]
fn eigenvalues_limit_exact() {
    assert_eq!(eigenvalues(State::new(1.0, 0.0), &lim(1.0)).unwrap(), (-1.0, 1.0));
    assert_eq!(eigenvalues(State::new(2.3, 0.3), &lim(2.0)).unwrap(), (0.3 - 0.5, 0.3 + 0.5));
}

#[test]
fn eigenvalues_solve_characteristic_polynomial() {
    let p = full(1.0, 0.05, 0.01);
    let s = State::new(1.5, 0.2);
    let (l1, l2) = eigenvalues(s, &p).unwrap();
    assert!(l1 < l2);
    for l in [l1, l2] {
        assert!(characteristic_residual(s, &p, l).unwrap().abs() < 1e-12);
    }
    // 40-digit reference for a=1.3, eps=0.05, tau2=0.02 at (1.5, 0.2)
    let p = full(1.3, 0.05, 0.02);
    let (l1, l2) = eigenvalues(s, &p).unwrap();
    assert!((l1 + 0.582_768_503_183_120_2).abs() < 1e-14);
    assert!((l2 - 0.989_852_487_546_542_3).abs() < 1e-14);
}

#[test]
fn eigenvectors_are_eigenvectors() {
    // (DG - lambda DW) r = 0 with Jacobians from central differences
    let p = full(1.2, 0.03, 0.02);
    let s = State::new(1.3, -0.15);
    let (l1, l2) = eigenvalues(s, &p).unwrap();
    let [r1, r2] = eigenvectors(s, &p).unwrap();
    let h = 1e-6;
    let d = |f: &dyn Fn(State) -> f64, i: usize| {
        let (sp, sm) = if i == 0 {
            (State::new(s.rho + h, s.v), State::new(s.rho - h, s.v))
        } else {
            (State::new(s.rho, s.v + h), State::new(s.rho, s.v - h))
        };
        (f(sp) - f(sm)) / (2.0 * h)
    };
    let w1 = |u: State| conserved(u, &p).unwrap().0;
    let g2 = |u: State| flux(u, &p).unwrap().1;
    for (l, r) in [(l1, r1), (l2, r2)] {
        let row1 = (s.v - l * d(&w1, 0)) * r.0 + (s.rho - l * d(&w1, 1)) * r.1;
        let row2 = d(&g2, 0) * r.0 + (d(&g2, 1) - l) * r.1;
        assert!(row1.abs() < 1e-8 && row2.abs() < 1e-8, "{row1} {row2}");
    }
}

#[test]
fn hyperbolicity_loss_is_reported() {
    let p = full(0.1, 0.5, 0.5);
    let r = eigenvalues(State::new(1.9, 0.0), &p);
    assert!(matches!(r, Err(Error::Degeneracy { .. }) | Err(Error::Cavitation { .. })));
}

#[test]
fn shock_offset_limit_closed_forms() {
    let ul = State::new(1.0, 0.0);
    assert_eq!(shock_offset(1.0, Family::One, ul, &lim(1.0)).unwrap(), 0.0);
    let want = -(2f64.sqrt()) * (2f64.ln() / 3.0).sqrt();
    assert!((shock_offset(2.0, Family::One, ul, &lim(1.0)).unwrap() - want).abs() < 1e-15);
    // the general solver reproduces the closed forms at mu = 0
    for &al in &[1.0001, 1.3, 2.0, 5.0, 15.0] {
        let rh = shock_offset_rh(al, ul, &lim(1.7)).unwrap();
        assert!((rh - phi_limit(Family::One, al, 1.7)).abs() < 1e-13, "{al}");
        let rh = shock_offset_rh(1.0 / al, ul, &lim(1.7)).unwrap();
        assert!((rh - phi_limit(Family::Two, 1.0 / al, 1.7)).abs() < 1e-13, "{al}");
    }
}

#[test]
fn shock_offset_full_matches_references() {
    // 30-digit references from a direct solve of the H_S equation
    let cases = [
        (1.0, 1e-3, 1e-3, State::new(1.0, 0.0), Family::One, 2.0, -0.679_266_941_203_822_2),
        (1.3, 0.02, 0.01, State::new(1.2, 0.1), Family::Two, 0.6, -0.387_565_774_010_819_9),
        (0.8, 0.05, 0.02, State::new(0.9, -0.2), Family::One, 3.0, -1.260_873_577_999_329_4),
    ];
    for (a, e, t, ul, fam, al, want) in cases {
        let p = full(a, e, t);
        let got = shock_offset(al, fam, ul, &p).unwrap();
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        assert!(hugoniot_hs(got, al, ul, &p).unwrap().abs() < 1e-12);
        assert!((got - bisect_hs(al, ul, &p)).abs() < 1e-13);
    }
}

#[test]
fn shock_offset_close_to_limit() {
    let ul = State::new(1.0, 0.0);
    let p = full(1.0, 1e-3, 1e-3);
    let gap = (shock_offset(2.0, Family::One, ul, &p).unwrap() - phi_limit(Family::One, 2.0, 1.0)).abs();
    let c = gap / p.mu_norm();
    assert!(c > 0.0 && c < 1.0, "measured constant {c}");
}

#[test]
fn weak_shocks_keep_relative_precision() {
    let ul = State::new(1.1, 0.05);
    let p = full(1.0, 5e-3, 5e-3);
    let (l1, _) = eigenvalues(ul, &p).unwrap();
    for k in 3..12 {
        let d = 10f64.powi(-k);
        let w = shock_offset(1.0 + d, Family::One, ul, &p).unwrap();
        // the offset itself stays relatively accurate: Dv / d -> -1 / (a * sqrt-ish factor)
        let w_lim = phi_limit(Family::One, 1.0 + d, 1.0);
        assert!((w / w_lim - 1.0).abs() < 0.05, "{k}");
        let um = State::new(ul.rho * (1.0 + d), ul.v + w);
        let sig = shock_speed(WaveDescriptor::classify(Family::One, 1.0 + d), ul, um, &p).unwrap();
        // the stored density carries an absolute rounding error of ~1e-16,
        // so the attainable relative residual is ~1e-16 / d
        assert!(rh_residual(ul, um, sig, &p).unwrap() < 1e-10f64.max(1e-14 / d), "{k}");
        let (_, sig) = shock_state_and_speed(Family::One, 1.0 + d, ul, &p).unwrap();
        assert!((sig - l1).abs() < 0.6 * d, "{k}");
    }
}

#[test]
fn rarefaction_offsets() {
    let ul = State::new(1.0, 0.0);
    assert_eq!(rarefaction_offset(1.0, Family::Two, ul, &full(1.0, 0.1, 0.1)).unwrap(), 0.0);
    let e = std::f64::consts::E;
    assert!((rarefaction_offset(1.0 / e, Family::One, ul, &lim(1.0)).unwrap() - 1.0).abs() < 1e-15);
    // tau2 = 0 closed form: 2 (rho^(eps/2) - rho_L^(eps/2)) / (a eps)
    let p = full(1.0, 1e-3, 0.0);
    let got = rarefaction_offset(1.2, Family::Two, ul, &p).unwrap();
    let exact = 2.0 * (1.2f64.powf(5e-4) - 1.0) / 1e-3;
    assert!((got - exact).abs() < 1e-10);
    assert!((got - rk4_raref(Family::Two, 1.2, ul, &p, 2000)).abs() < 1e-10);
    // tau2 > 0, 30-digit ODE references
    let p = full(1.2, 0.02, 0.01);
    let ul = State::new(1.3, 0.1);
    let got = rarefaction_offset(0.7, Family::One, ul, &p).unwrap();
    assert!((got - 0.296_955_607_755_605_9).abs() < 1e-10);
    assert!((got - rk4_raref(Family::One, 0.7, ul, &p, 2000)).abs() < 1e-10);
    let p = full(1.0, 0.01, 0.03);
    let got = rarefaction_offset(1.8, Family::Two, State::new(0.8, -0.3), &p).unwrap();
    assert!((got - 0.578_955_593_714_953).abs() < 1e-10);
}

#[test]
fn orientation_is_enforced() {
    let ul = State::new(1.0, 0.0);
    let p = lim(1.0);
    assert!(matches!(shock_offset(0.5, Family::One, ul, &p), Err(Error::CurveDomain(_))));
    assert!(matches!(rarefaction_offset(0.5, Family::Two, ul, &p), Err(Error::CurveDomain(_))));
}

#[test]
fn phi_examples_and_c1_at_unity() {
    let ul = State::new(1.0, 0.0);
    assert_eq!(phi(WaveDescriptor::classify(Family::One, 1.0), ul, &lim(1.0)).unwrap(), 0.0);
    let v = phi(WaveDescriptor::classify(Family::Two, 3.0), ul, &lim(1.0)).unwrap();
    assert!((v - 3f64.ln()).abs() < 1e-15);
    let p = lim(2.0);
    let h = 1e-6;
    for (fam, want) in [(Family::One, -0.5), (Family::Two, 0.5)] {
        let right = phi_k(fam, 1.0 + h, ul, &p).unwrap() / h;
        let left = -phi_k(fam, 1.0 - h, ul, &p).unwrap() / h;
        assert!((right - want).abs() < 1e-5 && (left - want).abs() < 1e-5);
    }
    let p = full(1.0, 4e-3, 4e-3);
    for fam in [Family::One, Family::Two] {
        let right = phi_k(fam, 1.0 + h, ul, &p).unwrap() / h;
        let left = -phi_k(fam, 1.0 - h, ul, &p).unwrap() / h;
        assert!((right - left).abs() < 1e-5);
    }
}

#[test]
fn phi_monotone_and_mu_continuous() {
    let grid: Vec<f64> = (0..80).map(|i| 0.3 * (40.0f64).powf(i as f64 / 79.0) / 1.2).collect();
    let mut worst: f64 = 0.0;
    for ul in [State::new(1.0, 0.0), State::new(0.7, 0.3), State::new(1.6, -0.4)] {
        for mu in [1e-3, 4e-3] {
            let p = full(1.1, 0.5 * mu, 0.5 * mu);
            for fam in [Family::One, Family::Two] {
                let vals: Vec<f64> = grid.iter().map(|&a| phi_k(fam, a, ul, &p).unwrap()).collect();
                for w in vals.windows(2) {
                    match fam {
                        Family::One => assert!(w[1] <= w[0]),
                        Family::Two => assert!(w[1] >= w[0]),
                    }
                }
                for (&a, &v) in grid.iter().zip(&vals) {
                    if a != 1.0 {
                        let c = (v - phi_limit(fam, a, 1.1)).abs() / ((a - 1.0).abs() * mu);
                        worst = worst.max(c);
                    }
                }
            }
        }
    }
    assert!(worst.is_finite() && worst < 10.0, "continuity constant {worst}");
}

#[test]
fn wave_map_examples() {
    let ul = State::new(1.3, 0.2);
    assert_eq!(wave_map_phi(1.0, 1.0, ul, &full(1.0, 0.01, 0.01)).unwrap(), ul);
    let u = wave_map_phi(2.0, 1.0, State::new(1.0, 0.0), &lim(1.0)).unwrap();
    assert_eq!(u.rho, 2.0);
    assert!((u.v + 2f64.sqrt() * (2f64.ln() / 3.0).sqrt()).abs() < 1e-15);
}

#[test]
fn shock_speed_examples() {
    let p = lim(1.0);
    let ul = State::new(1.0, 0.0);
    let ur = wave_state(Family::One, 1.5, ul, &p).unwrap();
    let wd = WaveDescriptor::classify(Family::One, 1.5);
    let s = shock_speed(wd, ul, ur, &p).unwrap();
    assert!((s + 1.208_169_851_134_099_3).abs() < 1e-14);
    assert!(lax_ok(Family::One, ul, ur, s, &p).unwrap());
    // boundary shock of the rate example tends to -1/a as delta -> 0
    let ul = State::new(1.0, 1e-6);
    let ur = State::new(1.0 + 1e-6, 0.0);
    let s = (ur.rho * ur.v - ul.rho * ul.v) / (ur.rho - ul.rho);
    assert!((s + 1.0).abs() < 1e-5);
    // a wrong right state is rejected
    let bad = State::new(1.5, 0.3);
    assert!(matches!(shock_speed(wd, State::new(1.0, 0.0), bad, &p), Err(Error::InvalidShock { .. })));
}

#[test]
fn full_shocks_pass_lax_and_both_jump_conditions() {
    let p = full(1.0, 0.006, 0.004);
    for ul in [State::new(1.0, 0.0), State::new(0.6, 0.4), State::new(1.9, -0.45)] {
        for (fam, al) in [(Family::One, 1.01), (Family::One, 2.5), (Family::Two, 0.99), (Family::Two, 0.4)] {
            let ur = wave_state(fam, al, ul, &p).unwrap();
            let wd = WaveDescriptor::classify(fam, al);
            let s = shock_speed(wd, ul, ur, &p).unwrap();
            assert!(rh_residual(ul, ur, s, &p).unwrap() < 1e-10);
            assert!(lax_ok(fam, ul, ur, s, &p).unwrap(), "{fam:?} {al}");
            // orientation: density up and velocity down for 1-shocks
            if fam == Family::One {
                assert!(ur.rho > ul.rho && ur.v < ul.v);
            }
        }
    }
}

#[test]
fn genuine_nonlinearity() {
    let (g1, g2) = genuine_nonlinearity_probe(State::new(1.0, 0.0), &lim(1.0), 1e-5).unwrap();
    assert!((g1 - 1.0).abs() < 1e-8 && (g2 - 1.0).abs() < 1e-8);
    let (g1, g2) = genuine_nonlinearity_probe(State::new(1.0, 0.0), &lim(4.0), 1e-5).unwrap();
    assert!((g1 - 0.25).abs() < 1e-8 && (g2 - 0.25).abs() < 1e-8);
    let (g1, g2) = genuine_nonlinearity_probe(State::new(1.8, 0.4), &full(1.0, 0.02, 0.02), 1e-5).unwrap();
    assert!(g1 > 0.0 && g2 > 0.0);
}

#[test]
fn rarefaction_sampling_hits_requested_speed() {
    for p in [lim(1.0), full(1.0, 0.01, 0.01)] {
        let ul = State::new(1.0, 0.0);
        let end = wave_state(Family::Two, 1.6, ul, &p).unwrap();
        let lo = eigenvalue(Family::Two, ul, &p).unwrap();
        let hi = eigenvalue(Family::Two, end, &p).unwrap();
        let xi = 0.5 * (lo + hi);
        let u = rarefaction_state_at_speed(Family::Two, ul, 1.6, xi, &p).unwrap();
        assert!((eigenvalue(Family::Two, u, &p).unwrap() - xi).abs() < 1e-12);
    }
}
