//! Exact interior and boundary Riemann solvers.

use crate::error::{Error, Result};
use crate::numerics::{brent, RootError};
use crate::wave_curves::{
    eigenvalue, lax_ok, phi_limit, rarefaction_state_at_speed, shock_state_and_speed, sqrt_factor, wave_state,
    Family, ModelParams, State, WaveDescriptor, WaveKind,
};

/// Waves with `|ln alpha|` below this are dropped from fans.
pub const NULL_LOG_STRENGTH: f64 = 1e-14;
const NEWTON_TOL: f64 = 1e-14;
const MAX_HALVINGS: usize = 60;
const FD_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanWave {
    pub wave: WaveDescriptor,
    pub xi_lo: f64,
    pub xi_hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiemannFan {
    pub left_state: State,
    pub waves: Vec<FanWave>,
    /// `waves.len() + 1` states, the first one being `left_state`.
    pub constant_states: Vec<State>,
    pub boundary_attached: bool,
}

impl RiemannFan {
    pub fn right_state(&self) -> State {
        *self.constant_states.last().expect("fan has at least one state")
    }
}

/// Builds the fan entry for a wave from `ul` of the given strength and
/// returns it together with the state behind it.
fn fan_wave(family: Family, alpha: f64, ul: State, p: &ModelParams) -> Result<(FanWave, State)> {
    let wave = WaveDescriptor::classify(family, alpha);
    match wave.kind {
        WaveKind::Shock => {
            let (ur, sigma) = shock_state_and_speed(family, alpha, ul, p)?;
            Ok((FanWave { wave, xi_lo: sigma, xi_hi: sigma }, ur))
        }
        WaveKind::Rarefaction => {
            let ur = wave_state(family, alpha, ul, p)?;
            let lo = eigenvalue(family, ul, p)?;
            let hi = eigenvalue(family, ur, p)?;
            Ok((FanWave { wave, xi_lo: lo, xi_hi: hi }, ur))
        }
    }
}

fn is_null(alpha: f64) -> bool {
    (alpha - 1.0).ln_1p().abs() <= NULL_LOG_STRENGTH
}

fn root_err(e: RootError<Error>, what: &str) -> Error {
    match e {
        RootError::Eval(e) => e,
        RootError::NoBracket { flo, fhi } => Error::CurveDomain(format!("{what}: no bracket ({flo:e}, {fhi:e})")),
        RootError::MaxIter { x, fx } => Error::CurveDomain(format!("{what}: no convergence at {x} (f = {fx:e})")),
    }
}

/// Limit-system strengths for the interior problem by a monotone scalar
/// root find on `ln alpha1` (the density row fixes `alpha1 * alpha2`).
pub fn limit_strengths(ul: State, ur: State, p: &ModelParams) -> Result<(f64, f64)> {
    let big_l = (ur.rho / ul.rho).ln();
    let dv = ur.v - ul.v;
    let (lo_w, hi_w) = p.strength_window();
    let (ln_lo, ln_hi) = (lo_w.ln(), hi_w.ln());
    let lo = ln_lo.max(big_l - ln_hi);
    let hi = ln_hi.min(big_l - ln_lo);
    if lo >= hi {
        return Err(Error::Strength { alpha: (ur.rho / ul.rho), lo: lo_w, hi: hi_w });
    }
    let a = p.a_inf;
    let g = |l1: f64| -> Result<f64> {
        Ok(phi_limit(Family::One, l1.exp(), a) + phi_limit(Family::Two, (big_l - l1).exp(), a) - dv)
    };
    let l1 = brent(g, lo, hi, 1e-16, 300).map_err(|e| match e {
        RootError::NoBracket { .. } => Error::Strength { alpha: f64::NAN, lo: lo_w, hi: hi_w },
        e => root_err(e, "limit inversion"),
    })?;
    Ok((l1.exp(), (big_l - l1).exp()))
}

/// Strengths `(alpha1, alpha2)` with `Phi(alpha; U_L) = U_R`.
pub fn solve_strengths(ul: State, ur: State, p: &ModelParams) -> Result<(f64, f64)> {
    if ul == ur {
        return Ok((1.0, 1.0));
    }
    let (a1, a2) = limit_strengths(ul, ur, p)?;
    if p.is_limit() {
        return Ok((a1, a2));
    }
    let big_l = (ur.rho / ul.rho).ln();
    let vr = |x: (f64, f64)| -> Result<f64> { Ok(crate::wave_curves::wave_map_phi(x.0.exp(), x.1.exp(), ul, p)?.v) };
    let resid = |x: (f64, f64)| -> Result<(f64, f64)> { Ok((x.0 + x.1 - big_l, vr(x)? - ur.v)) };
    let norm = |r: (f64, f64)| r.0.abs().max(r.1.abs());
    let mut x = (a1.ln(), a2.ln());
    let mut r = resid(x)?;
    for _ in 0..60 {
        if norm(r) < NEWTON_TOL * (1.0 + ur.v.abs()) {
            return Ok((x.0.exp(), x.1.exp()));
        }
        let h = FD_STEP;
        let j21 = (vr((x.0 + h, x.1))? - vr((x.0 - h, x.1))?) / (2.0 * h);
        let j22 = (vr((x.0, x.1 + h))? - vr((x.0, x.1 - h))?) / (2.0 * h);
        // [1 1; j21 j22] dx = -r
        let det = j22 - j21;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Solver { last: (x.0.exp(), x.1.exp()), residual: norm(r) });
        }
        let dx0 = (-r.0 * j22 + r.1) / det;
        let dx1 = (r.0 * j21 - r.1) / det;
        let mut lam = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial = (x.0 + lam * dx0, x.1 + lam * dx1);
            if let Ok(rt) = resid(trial) {
                if norm(rt) < norm(r) || norm(rt) < NEWTON_TOL {
                    x = trial;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if !accepted {
            if norm(r) < 1e-12 {
                return Ok((x.0.exp(), x.1.exp()));
            }
            return Err(Error::Solver { last: (x.0.exp(), x.1.exp()), residual: norm(r) });
        }
    }
    Err(Error::Solver { last: (x.0.exp(), x.1.exp()), residual: norm(r) })
}

pub fn solve_interior(ul: State, ur: State, p: &ModelParams) -> Result<RiemannFan> {
    let (a1, a2) = solve_strengths(ul, ur, p)?;
    let mut waves = Vec::with_capacity(2);
    let mut states = vec![ul];
    let mut cur = ul;
    for (fam, al) in [(Family::One, a1), (Family::Two, a2)] {
        if is_null(al) {
            continue;
        }
        let (fw, next) = fan_wave(fam, al, cur, p)?;
        waves.push(fw);
        states.push(next);
        cur = next;
    }
    // the last state is the prescribed one; the gap is the Newton residual
    if states.len() > 1 {
        *states.last_mut().unwrap() = ur;
    }
    Ok(RiemannFan { left_state: ul, waves, constant_states: states, boundary_attached: false })
}

/// Residual of the boundary condition at `u`: `v - b0 s(u)` (full system)
/// or `v - b0` (limit system).
pub fn boundary_residual(u: State, p: &ModelParams) -> Result<f64> {
    if p.is_limit() {
        Ok(u.v - p.b0)
    } else {
        Ok(u.v - p.b0 * sqrt_factor(u, p)?)
    }
}

/// Strength of the single 1-wave joining `ul` to the boundary.
pub fn boundary_strength(ul: State, p: &ModelParams) -> Result<f64> {
    let f0 = boundary_residual(ul, p)?;
    if f0 == 0.0 {
        return Ok(1.0);
    }
    if p.is_limit() && f0 < 0.0 {
        return Ok((p.a_inf * (ul.v - p.b0)).exp());
    }
    let (lo_w, hi_w) = p.strength_window();
    let f = |l: f64| -> Result<f64> { boundary_residual(wave_state(Family::One, l.exp(), ul, p)?, p) };
    let (lo, hi) = if f0 > 0.0 { (0.0, hi_w.ln() * (1.0 - 1e-12)) } else { (lo_w.ln() * (1.0 - 1e-12), 0.0) };
    let l = brent(f, lo, hi, 1e-16, 300).map_err(|e| match e {
        RootError::Eval(e) => e,
        e => Error::Boundary(format!("{e:?}")),
    })?;
    Ok(l.exp())
}

pub fn solve_boundary(ul: State, p: &ModelParams) -> Result<RiemannFan> {
    let a1 = boundary_strength(ul, p)?;
    let mut fan = RiemannFan { left_state: ul, waves: vec![], constant_states: vec![ul], boundary_attached: true };
    if is_null(a1) {
        return Ok(fan);
    }
    let (fw, ub) = fan_wave(Family::One, a1, ul, p)?;
    fan.waves.push(fw);
    fan.constant_states.push(ub);
    Ok(fan)
}

/// The state of the fan along the ray `xi = (y - y0) / (x - x0)`. At a
/// shock the right state is returned.
pub fn sample_fan(fan: &RiemannFan, xi: f64, p: &ModelParams) -> Result<State> {
    if fan.boundary_attached && xi > p.b0 + 1e-14 {
        return Err(Error::OutOfDomain(format!("xi = {xi} beyond the wall slope {}", p.b0)));
    }
    for (i, w) in fan.waves.iter().enumerate() {
        if xi < w.xi_lo {
            return Ok(fan.constant_states[i]);
        }
        if w.wave.kind == WaveKind::Rarefaction && xi < w.xi_hi {
            return rarefaction_state_at_speed(w.wave.family, fan.constant_states[i], w.wave.alpha, xi, p);
        }
    }
    Ok(fan.right_state())
}

/// True when every shock passes the strict Lax test and every rarefaction
/// has increasing characteristic speed across it.
pub fn fan_is_admissible(fan: &RiemannFan, p: &ModelParams) -> Result<bool> {
    for (i, w) in fan.waves.iter().enumerate() {
        let (l, r) = (fan.constant_states[i], fan.constant_states[i + 1]);
        let ok = match w.wave.kind {
            WaveKind::Shock => lax_ok(w.wave.family, l, r, w.xi_lo, p)?,
            WaveKind::Rarefaction => eigenvalue(w.wave.family, l, p)? < eigenvalue(w.wave.family, r, p)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// Strengths in the full system.
    pub full: (f64, f64),
    /// Strengths in the limit system.
    pub limit: (f64, f64),
    /// `full - limit`, per family.
    pub diff: (f64, f64),
    /// `|full_k - limit_k| / (|full_k - 1| * |mu|)`; `None` when the
    /// denominator vanishes.
    pub ratio: (Option<f64>, Option<f64>),
    pub exact_match: bool,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    if den > 0.0 {
        Some(num.abs() / den)
    } else {
        None
    }
}

pub fn compare_strengths(ul: State, ur: State, p_full: &ModelParams) -> Result<ComparisonReport> {
    let full = solve_strengths(ul, ur, p_full)?;
    let limit = solve_strengths(ul, ur, &p_full.to_limit())?;
    let mu = p_full.mu_norm();
    let diff = (full.0 - limit.0, full.1 - limit.1);
    Ok(ComparisonReport {
        full,
        limit,
        diff,
        ratio: (ratio(diff.0, (full.0 - 1.0).abs() * mu), ratio(diff.1, (full.1 - 1.0).abs() * mu)),
        exact_match: diff == (0.0, 0.0),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryComparison {
    pub full: f64,
    pub limit: f64,
    pub diff: f64,
    /// `|full - limit| / ((1 + |full - 1|) * |mu|)`.
    pub ratio: Option<f64>,
    pub exact_match: bool,
}

pub fn compare_boundary_strengths(ul: State, p_full: &ModelParams) -> Result<BoundaryComparison> {
    let full = boundary_strength(ul, p_full)?;
    let limit = boundary_strength(ul, &p_full.to_limit())?;
    let diff = full - limit;
    Ok(BoundaryComparison {
        full,
        limit,
        diff,
        ratio: ratio(diff, (1.0 + (full - 1.0).abs()) * p_full.mu_norm()),
        exact_match: diff == 0.0,
    })
}
