//! Bernoulli closure, eigenstructure and elementary wave curves.
//!
//! The full system reads
//!
//! ```text
//! (rho * s)_x + (rho * v)_y = 0
//!  v_x        + Psi_y       = 0
//! ```
//!
//! with `B = 2 (rho^eps - 1) / (a^2 eps) + v^2`, `s = sqrt(1 - tau2 * B)` and
//! `Psi = B / (1 + s)`. At `eps = tau2 = 0` it reduces to the isothermal
//! limit system, for which closed forms are used throughout.

use crate::error::{Error, Result};
use crate::numerics::{brent, dopri5, newton_bisect, RootError};

/// Below this value of `eps * |ln rho|` the two-term series replaces `expm1`.
pub const EPS_SWITCH: f64 = 1e-12;
pub const DEFAULT_DELTA0: f64 = 0.05;
const ODE_RTOL: f64 = 1e-11;
const ODE_ATOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainBounds {
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub v_max: f64,
}

impl Default for DomainBounds {
    fn default() -> Self {
        DomainBounds { rho_lo: 0.05, rho_hi: 20.0, v_max: 3.0 }
    }
}

impl DomainBounds {
    pub fn new(rho_lo: f64, rho_hi: f64, v_max: f64) -> Result<Self> {
        if !(rho_lo > 0.0 && rho_lo < rho_hi && v_max > 0.0) {
            return Err(Error::Parameter(format!("bad domain bounds ({rho_lo}, {rho_hi}, {v_max})")));
        }
        Ok(DomainBounds { rho_lo, rho_hi, v_max })
    }

    pub fn contains(&self, s: State) -> bool {
        s.rho >= self.rho_lo && s.rho <= self.rho_hi && s.v.abs() <= self.v_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub a_inf: f64,
    pub epsilon: f64,
    pub tau2: f64,
    pub b0: f64,
    pub bounds: DomainBounds,
    /// Strengths are accepted in `(delta0, 1 / delta0)`.
    pub delta0: f64,
}

impl ModelParams {
    pub fn new(a_inf: f64, epsilon: f64, tau2: f64, b0: f64) -> Result<Self> {
        let p = ModelParams { a_inf, epsilon, tau2, b0, bounds: DomainBounds::default(), delta0: DEFAULT_DELTA0 };
        p.validate()?;
        Ok(p)
    }

    pub fn limit(a_inf: f64, b0: f64) -> Result<Self> {
        Self::new(a_inf, 0.0, 0.0, b0)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.a_inf > 0.0
            && self.a_inf.is_finite()
            && self.epsilon >= 0.0
            && self.tau2 >= 0.0
            && self.b0 <= 0.0
            && self.b0.is_finite()
            && self.delta0 > 0.0
            && self.delta0 < 0.5;
        if !ok {
            return Err(Error::Parameter(format!(
                "a_inf={} epsilon={} tau2={} b0={} delta0={}",
                self.a_inf, self.epsilon, self.tau2, self.b0, self.delta0
            )));
        }
        Ok(())
    }

    pub fn with_bounds(mut self, bounds: DomainBounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn with_delta0(mut self, delta0: f64) -> Result<Self> {
        self.delta0 = delta0;
        self.validate()?;
        Ok(self)
    }

    pub fn mu_norm(&self) -> f64 {
        self.epsilon + self.tau2
    }

    pub fn is_limit(&self) -> bool {
        self.epsilon == 0.0 && self.tau2 == 0.0
    }

    /// Same `a_inf`, `b0`, bounds and window with `mu = 0`.
    pub fn to_limit(&self) -> Self {
        ModelParams { epsilon: 0.0, tau2: 0.0, ..*self }
    }

    pub fn strength_window(&self) -> (f64, f64) {
        (self.delta0, 1.0 / self.delta0)
    }

    pub fn check_strength(&self, alpha: f64) -> Result<()> {
        let (lo, hi) = self.strength_window();
        if alpha > lo && alpha < hi {
            Ok(())
        } else {
            Err(Error::Strength { alpha, lo, hi })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub rho: f64,
    pub v: f64,
}

impl State {
    pub const fn new(rho: f64, v: f64) -> Self {
        State { rho, v }
    }

    /// Sup-norm distance.
    pub fn dist_inf(&self, o: &State) -> f64 {
        (self.rho - o.rho).abs().max((self.v - o.v).abs())
    }

    /// Sum of component distances.
    pub fn dist_l1(&self, o: &State) -> f64 {
        (self.rho - o.rho).abs() + (self.v - o.v).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    One,
    Two,
}

impl Family {
    /// `(-1)^k`.
    pub fn sign(self) -> f64 {
        match self {
            Family::One => -1.0,
            Family::Two => 1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveDescriptor {
    pub family: Family,
    pub kind: WaveKind,
    pub alpha: f64,
}

impl WaveDescriptor {
    /// Picks the kind from the side of 1 the strength lies on.
    pub fn classify(family: Family, alpha: f64) -> Self {
        let kind = match family {
            Family::One if alpha > 1.0 => WaveKind::Shock,
            Family::Two if alpha < 1.0 => WaveKind::Shock,
            _ => WaveKind::Rarefaction,
        };
        WaveDescriptor { family, kind, alpha }
    }

    pub fn is_consistent(&self) -> bool {
        match (self.family, self.kind) {
            (Family::One, WaveKind::Shock) | (Family::Two, WaveKind::Rarefaction) => self.alpha >= 1.0,
            (Family::One, WaveKind::Rarefaction) | (Family::Two, WaveKind::Shock) => self.alpha <= 1.0,
        }
    }
}

/// `(x^eps - 1) / eps` given `l = ln x`; equals `l` at `eps = 0`.
pub fn em1_log(l: f64, eps: f64) -> f64 {
    let z = eps * l;
    if z.abs() < EPS_SWITCH {
        l * (1.0 + 0.5 * z)
    } else {
        z.exp_m1() / eps
    }
}

/// `(x^eps - 1) / eps`, with the `ln x` limit at `eps = 0`.
pub fn em1(x: f64, eps: f64) -> f64 {
    em1_log(x.ln(), eps)
}

fn check_rho(s: State) -> Result<()> {
    if s.rho > 0.0 && s.rho.is_finite() && s.v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("state ({}, {}) has non-positive or non-finite entries", s.rho, s.v)))
    }
}

pub fn bernoulli_b(s: State, p: &ModelParams) -> Result<f64> {
    check_rho(s)?;
    Ok(2.0 * em1(s.rho, p.epsilon) / (p.a_inf * p.a_inf) + s.v * s.v)
}

/// `sqrt(1 - tau2 * B)`, erroring when the radicand is not positive.
pub fn sqrt_factor(s: State, p: &ModelParams) -> Result<f64> {
    let b = bernoulli_b(s, p)?;
    sqrt_factor_from_b(b, p)
}

fn sqrt_factor_from_b(b: f64, p: &ModelParams) -> Result<f64> {
    let arg = 1.0 - p.tau2 * b;
    if arg > 0.0 {
        Ok(arg.sqrt())
    } else {
        Err(Error::Cavitation { value: arg })
    }
}

/// Recovers `u` from the Bernoulli relation: `(s - 1) / tau2`, written as
/// `-B / (1 + s)` so that `tau2 = 0` needs no special case.
pub fn u_from_state(s: State, p: &ModelParams) -> Result<f64> {
    let b = bernoulli_b(s, p)?;
    let sf = sqrt_factor_from_b(b, p)?;
    Ok(-b / (1.0 + sf))
}

/// `Psi = B / (1 + s)`, the second flux component.
pub fn psi_flux(s: State, p: &ModelParams) -> Result<f64> {
    let b = bernoulli_b(s, p)?;
    let sf = sqrt_factor_from_b(b, p)?;
    Ok(b / (1.0 + sf))
}

/// Conserved variables `(rho * s, v)`.
pub fn conserved(s: State, p: &ModelParams) -> Result<(f64, f64)> {
    Ok((s.rho * sqrt_factor(s, p)?, s.v))
}

/// Fluxes `(rho * v, Psi)`.
pub fn flux(s: State, p: &ModelParams) -> Result<(f64, f64)> {
    Ok((s.rho * s.v, psi_flux(s, p)?))
}

pub fn eigenvalues(s: State, p: &ModelParams) -> Result<(f64, f64)> {
    check_rho(s)?;
    if p.is_limit() {
        let inv = 1.0 / p.a_inf;
        return Ok((s.v - inv, s.v + inv));
    }
    let a2 = p.a_inf * p.a_inf;
    let l = s.rho.ln();
    let em = em1_log(l, p.epsilon);
    let re = (p.epsilon * l).exp();
    let b = 2.0 * em / a2 + s.v * s.v;
    let sf = sqrt_factor_from_b(b, p)?;
    let disc = a2 - p.tau2 * (re + 2.0 * em);
    let denom = a2 - p.tau2 * (a2 * b + re);
    if !(disc > 0.0 && denom > 0.0) {
        return Err(Error::Degeneracy { disc, denom });
    }
    let root = (0.5 * p.epsilon * l).exp() * disc.sqrt();
    let c = a2 * s.v * sf;
    Ok(((c - root) / denom, (c + root) / denom))
}

pub fn eigenvalue(family: Family, s: State, p: &ModelParams) -> Result<f64> {
    let (l1, l2) = eigenvalues(s, p)?;
    Ok(match family {
        Family::One => l1,
        Family::Two => l2,
    })
}

/// Residual of the characteristic polynomial
/// `(1 - tau2 (B + rho^eps / a^2)) l^2 - 2 v s l + v^2 - rho^eps / a^2`.
pub fn characteristic_residual(s: State, p: &ModelParams, lambda: f64) -> Result<f64> {
    let a2 = p.a_inf * p.a_inf;
    let b = bernoulli_b(s, p)?;
    let sf = sqrt_factor_from_b(b, p)?;
    let re = s.rho.powf(p.epsilon);
    Ok((1.0 - p.tau2 * (b + re / a2)) * lambda * lambda - 2.0 * s.v * sf * lambda + s.v * s.v - re / a2)
}

/// Right eigenvectors `(-1)^j (rho, rho^eps / (a^2 (s lambda_j - v)))`.
pub fn eigenvectors(s: State, p: &ModelParams) -> Result<[(f64, f64); 2]> {
    let (l1, l2) = eigenvalues(s, p)?;
    let sf = sqrt_factor(s, p)?;
    let re = s.rho.powf(p.epsilon);
    let a2 = p.a_inf * p.a_inf;
    let r = |sign: f64, l: f64| (sign * s.rho, sign * re / (a2 * (sf * l - s.v)));
    Ok([r(-1.0, l1), r(1.0, l2)])
}

/// `(grad lambda_1 . r_1, grad lambda_2 . r_2)` by central differences with
/// relative step `h` in `rho` and absolute step `h` in `v`.
pub fn genuine_nonlinearity_probe(s: State, p: &ModelParams, h: f64) -> Result<(f64, f64)> {
    let [r1, r2] = eigenvectors(s, p)?;
    let hr = h * s.rho;
    let (lrp1, lrp2) = eigenvalues(State::new(s.rho + hr, s.v), p)?;
    let (lrm1, lrm2) = eigenvalues(State::new(s.rho - hr, s.v), p)?;
    let (lvp1, lvp2) = eigenvalues(State::new(s.rho, s.v + h), p)?;
    let (lvm1, lvm2) = eigenvalues(State::new(s.rho, s.v - h), p)?;
    let g1 = ((lrp1 - lrm1) / (2.0 * hr), (lvp1 - lvm1) / (2.0 * h));
    let g2 = ((lrp2 - lrm2) / (2.0 * hr), (lvp2 - lvm2) / (2.0 * h));
    Ok((g1.0 * r1.0 + g1.1 * r1.1, g2.0 * r2.0 + g2.1 * r2.1))
}

/// Jumps of conserved quantities and fluxes across a discontinuity from
/// `ul` to `ur`, formed as differences so that weak jumps keep full
/// relative precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jumps {
    pub dw1: f64,
    pub dw2: f64,
    pub dg1: f64,
    pub dg2: f64,
}

pub fn jumps(ul: State, ur: State, p: &ModelParams) -> Result<Jumps> {
    check_rho(ur)?;
    jumps_rel(ul, (ur.rho - ul.rho) / ul.rho, ur.v - ul.v, p)
}

/// Jumps given the relative density increment `d = rho_R / rho_L - 1` and
/// `w = v_R - v_L` directly.
fn jumps_rel(ul: State, d: f64, w: f64, p: &ModelParams) -> Result<Jumps> {
    check_rho(ul)?;
    let a2 = p.a_inf * p.a_inf;
    let drho = ul.rho * d;
    let em = em1_log(d.ln_1p(), p.epsilon);
    let db = 2.0 * ul.rho.powf(p.epsilon) * em / a2 + w * (2.0 * ul.v + w);
    let bl = bernoulli_b(ul, p)?;
    let sl = sqrt_factor_from_b(bl, p)?;
    let sr = sqrt_factor_from_b(bl + db, p)?;
    let ds = -p.tau2 * db / (sr + sl);
    Ok(Jumps {
        dw1: drho * sr + ul.rho * ds,
        dw2: w,
        dg1: drho * ul.v + (ul.rho + drho) * w,
        dg2: db / (1.0 + sr) - bl * ds / ((1.0 + sr) * (1.0 + sl)),
    })
}

/// Relative residual of the two jump conditions at speed `sigma`.
pub fn rh_residual(ul: State, ur: State, sigma: f64, p: &ModelParams) -> Result<f64> {
    let j = jumps(ul, ur, p)?;
    let r1 = (j.dg1 - sigma * j.dw1).abs() / (j.dg1.abs().max((sigma * j.dw1).abs()).max(f64::MIN_POSITIVE));
    let r2 = (j.dg2 - sigma * j.dw2).abs() / (j.dg2.abs().max((sigma * j.dw2).abs()).max(f64::MIN_POSITIVE));
    Ok(r1.max(r2))
}

/// Shock speed from the first jump condition, with the second one checked.
pub fn shock_speed(wd: WaveDescriptor, ul: State, ur: State, p: &ModelParams) -> Result<f64> {
    if wd.kind != WaveKind::Shock {
        return Err(Error::CurveDomain("shock_speed called on a rarefaction".into()));
    }
    let j = jumps(ul, ur, p)?;
    if j.dw1 == 0.0 {
        return eigenvalue(wd.family, ul, p);
    }
    let sigma = j.dg1 / j.dw1;
    let scale = j.dg2.abs().max((sigma * j.dw2).abs());
    let res = (j.dg2 - sigma * j.dw2).abs();
    if res > 1e-8 * scale + 1e-14 {
        return Err(Error::InvalidShock { residual: res / scale.max(f64::MIN_POSITIVE) });
    }
    Ok(sigma)
}

/// The right state of a `family` shock of strength `alpha` from `ul` and its
/// speed, with the jumps taken from the strength itself rather than from
/// rounded states (this matters for very weak shocks).
pub fn shock_state_and_speed(family: Family, alpha: f64, ul: State, p: &ModelParams) -> Result<(State, f64)> {
    let w = shock_offset(alpha, family, ul, p)?;
    let ur = State::new(ul.rho * alpha, ul.v + w);
    if alpha == 1.0 {
        return Ok((ur, eigenvalue(family, ul, p)?));
    }
    let j = jumps_rel(ul, alpha - 1.0, w, p)?;
    Ok((ur, j.dg1 / j.dw1))
}

/// Strict Lax inequalities `lambda_k(U_R) < sigma < lambda_k(U_L)`.
pub fn lax_ok(family: Family, ul: State, ur: State, sigma: f64, p: &ModelParams) -> Result<bool> {
    let ll = eigenvalue(family, ul, p)?;
    let lr = eigenvalue(family, ur, p)?;
    Ok(lr < sigma && sigma < ll)
}

/// The shock-curve equation written in the variables `Dv = v - v_L` and
/// `alpha = rho / rho_L`; zero on the Hugoniot locus.
pub fn hugoniot_hs(dv: f64, alpha: f64, ul: State, p: &ModelParams) -> Result<f64> {
    let a2 = p.a_inf * p.a_inf;
    let eps = p.epsilon;
    let rho = ul.rho * alpha;
    let v = ul.v + dv;
    let bl = bernoulli_b(ul, p)?;
    let br = bernoulli_b(State::new(rho, v), p)?;
    let sl = sqrt_factor_from_b(bl, p)?;
    let sr = sqrt_factor_from_b(br, p)?;
    let prod = sl * sl * sr * sr;
    let root_m1 = (prod - 1.0) / (sl * sr + 1.0);
    let k = 2.0 * (alpha * em1(rho, eps) + em1(ul.rho, eps)) / (a2 * (alpha + 1.0));
    let t2 = 2.0 * ul.rho.powf(eps) * em1_log((alpha - 1.0).ln_1p(), eps) * (alpha - 1.0) / (a2 * (alpha + 1.0));
    Ok(dv * dv - t2 - p.tau2 * bl * br - root_m1 * (ul.v * v + k))
}

/// Closed-form limit-system offsets.
pub fn phi_limit(family: Family, alpha: f64, a_inf: f64) -> f64 {
    let l = (alpha - 1.0).ln_1p();
    let shock = |alpha: f64| -(std::f64::consts::SQRT_2 / a_inf) * ((alpha - 1.0) * l / (alpha + 1.0)).sqrt();
    match family {
        Family::One if alpha <= 1.0 => -l / a_inf,
        Family::One => shock(alpha),
        Family::Two if alpha >= 1.0 => l / a_inf,
        Family::Two => shock(alpha),
    }
}

fn check_orientation(family: Family, kind: WaveKind, alpha: f64) -> Result<()> {
    let wd = WaveDescriptor { family, kind, alpha };
    if wd.is_consistent() {
        Ok(())
    } else {
        Err(Error::CurveDomain(format!("{kind:?} of family {} cannot have strength {alpha}", family.index())))
    }
}

/// `Dv = phi_S(alpha)` along the admissible branch `Dv < 0` of the shock curve.
pub fn shock_offset(alpha: f64, family: Family, ul: State, p: &ModelParams) -> Result<f64> {
    p.check_strength(alpha)?;
    check_orientation(family, WaveKind::Shock, alpha)?;
    check_rho(ul)?;
    if alpha == 1.0 {
        return Ok(0.0);
    }
    if p.is_limit() {
        return Ok(phi_limit(family, alpha, p.a_inf));
    }
    shock_offset_rh(alpha, ul, p)
}

/// Root of the jump-condition residual `dG2 dW1 - dG1 Dv` on `Dv < 0`,
/// in the scaled unknown `z = -Dv / |alpha - 1|`. Works for any `mu`.
pub fn shock_offset_rh(alpha: f64, ul: State, p: &ModelParams) -> Result<f64> {
    let d = alpha - 1.0;
    if d == 0.0 {
        return Ok(0.0);
    }
    let ad = d.abs();
    let a2 = p.a_inf * p.a_inf;
    let tau2 = p.tau2;
    let rho = ul.rho * alpha;
    let base = 2.0 * ul.rho.powf(p.epsilon) * em1_log(d.ln_1p(), p.epsilon) / a2;
    let bl = bernoulli_b(ul, p)?;
    let sl = sqrt_factor_from_b(bl, p)?;
    let vl = ul.v;
    let f = |z: f64| -> Result<(f64, f64)> {
        let w = -ad * z;
        let v = vl + w;
        let db = base + w * (2.0 * vl + w);
        let sr = sqrt_factor_from_b(bl + db, p)?;
        let ds = -tau2 * db / (sr + sl);
        let dw1 = ul.rho * (d * sr + ds);
        let dg1 = ul.rho * (d * vl + alpha * w);
        let dg2 = db / (1.0 + sr) - bl * ds / ((1.0 + sr) * (1.0 + sl));
        let r = dg2 * dw1 - dg1 * w;
        let dr = (v / sr) * dw1 - dg2 * rho * tau2 * v / sr - rho * w - dg1;
        Ok((r / (d * d), -dr / ad))
    };
    let family = if d > 0.0 { Family::One } else { Family::Two };
    let z0 = -phi_limit(family, alpha, p.a_inf) / ad;
    let v_span = 4.0 * p.bounds.v_max + 2.0 * z0 * ad;
    let (f0, _) = f(0.0)?;
    if f0 <= 0.0 {
        return Err(Error::CurveDomain(format!("no sign change at Dv = 0 for alpha = {alpha}")));
    }
    let mut hi = 1.5 * z0 + 0.5 / p.a_inf;
    loop {
        match f(hi) {
            Ok((fh, _)) if fh < 0.0 => break,
            Ok(_) if hi * ad < v_span => hi *= 1.5,
            Err(Error::Cavitation { .. }) if hi > z0 => hi = 0.5 * (hi + z0),
            Ok(_) | Err(_) => {
                return Err(Error::CurveDomain(format!("shock curve bracket failed at alpha = {alpha}")));
            }
        }
    }
    let xtol = 1e-15 * z0.max(1.0);
    let z = newton_bisect(f, 0.0, hi, xtol, 200).map_err(|e| root_err(e, "shock curve"))?;
    Ok(-ad * z)
}

fn root_err(e: RootError<Error>, what: &str) -> Error {
    match e {
        RootError::Eval(e) => e,
        RootError::NoBracket { flo, fhi } => Error::CurveDomain(format!("{what}: no bracket ({flo:e}, {fhi:e})")),
        RootError::MaxIter { x, fx } => Error::CurveDomain(format!("{what}: no convergence at {x} (f = {fx:e})")),
    }
}

/// `Dv = phi_R(alpha) >= 0` along the rarefaction curve, integrating
/// `dv/dt = rho^eps / (a^2 (s lambda_k - v))` in `t = ln(rho / rho_L)`.
pub fn rarefaction_offset(alpha: f64, family: Family, ul: State, p: &ModelParams) -> Result<f64> {
    p.check_strength(alpha)?;
    check_orientation(family, WaveKind::Rarefaction, alpha)?;
    check_rho(ul)?;
    if alpha == 1.0 {
        return Ok(0.0);
    }
    let t1 = (alpha - 1.0).ln_1p();
    if p.is_limit() {
        return Ok(family.sign() * t1 / p.a_inf);
    }
    let a2 = p.a_inf * p.a_inf;
    let lrho_l = ul.rho.ln();
    let rhs = |t: f64, w: f64| -> Result<f64> {
        let u = State::new(ul.rho * t.exp(), ul.v + w);
        let lam = eigenvalue(family, u, p)?;
        let sf = sqrt_factor(u, p)?;
        let re = (p.epsilon * (lrho_l + t)).exp();
        Ok(re / (a2 * (sf * lam - u.v)))
    };
    let (w, _) = dopri5(rhs, 0.0, 0.0, t1, ODE_RTOL, ODE_ATOL).map_err(Error::Integration)?;
    Ok(w)
}

/// Composite offset `phi_k(alpha; U_L)`: shock or rarefaction by the side of 1.
pub fn phi_k(family: Family, alpha: f64, ul: State, p: &ModelParams) -> Result<f64> {
    let wd = WaveDescriptor::classify(family, alpha);
    match wd.kind {
        WaveKind::Shock => shock_offset(alpha, family, ul, p),
        WaveKind::Rarefaction => rarefaction_offset(alpha, family, ul, p),
    }
}

pub fn phi(wd: WaveDescriptor, ul: State, p: &ModelParams) -> Result<f64> {
    check_orientation(wd.family, wd.kind, wd.alpha)?;
    phi_k(wd.family, wd.alpha, ul, p)
}

/// The state reached from `ul` along the `family` curve with strength `alpha`.
pub fn wave_state(family: Family, alpha: f64, ul: State, p: &ModelParams) -> Result<State> {
    Ok(State::new(ul.rho * alpha, ul.v + phi_k(family, alpha, ul, p)?))
}

/// `Phi(alpha1, alpha2; U_L)`: a 1-wave followed by a 2-wave.
pub fn wave_map_phi(alpha1: f64, alpha2: f64, ul: State, p: &ModelParams) -> Result<State> {
    let um = wave_state(Family::One, alpha1, ul, p)?;
    wave_state(Family::Two, alpha2, um, p)
}

/// Inverts the `family` rarefaction curve from `ul` for the state whose
/// characteristic speed equals `xi`. `alpha_end` bounds the search.
pub fn rarefaction_state_at_speed(family: Family, ul: State, alpha_end: f64, xi: f64, p: &ModelParams) -> Result<State> {
    if p.is_limit() {
        // lambda_k = v_L + phi(alpha) + sign / a with phi = sign * ln(alpha) / a
        let sgn = family.sign();
        let la = (xi - ul.v - sgn / p.a_inf) * p.a_inf * sgn;
        let la = la.clamp(alpha_end.ln().min(0.0), alpha_end.ln().max(0.0));
        return Ok(State::new(ul.rho * la.exp(), ul.v + sgn * la / p.a_inf));
    }
    let g = |la: f64| -> Result<f64> {
        let u = wave_state(family, la.exp(), ul, p)?;
        Ok(eigenvalue(family, u, p)? - xi)
    };
    let end = alpha_end.ln();
    let la = match brent(g, 0.0, end, 1e-15, 200) {
        Ok(x) => x,
        Err(RootError::NoBracket { flo, .. }) => {
            if flo >= 0.0 {
                0.0
            } else {
                end
            }
        }
        Err(e) => return Err(root_err(e, "rarefaction sampling")),
    };
    wave_state(family, la.exp(), ul, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn em1_switches_smoothly() {
        let x = 1.7f64;
        assert_eq!(em1(x, 0.0), x.ln());
        let a = em1(x, 1e-13);
        let b = em1(x, 1e-11);
        assert!((a - x.ln()).abs() < 1e-12 && (b - x.ln()).abs() < 1e-11);
    }

    #[test]
    fn classification_respects_orientation() {
        assert_eq!(WaveDescriptor::classify(Family::One, 1.5).kind, WaveKind::Shock);
        assert_eq!(WaveDescriptor::classify(Family::One, 0.5).kind, WaveKind::Rarefaction);
        assert_eq!(WaveDescriptor::classify(Family::Two, 0.5).kind, WaveKind::Shock);
        assert_eq!(WaveDescriptor::classify(Family::Two, 1.5).kind, WaveKind::Rarefaction);
    }

    #[test]
    fn window_rejects_extreme_strengths() {
        let p = ModelParams::limit(1.0, 0.0).unwrap();
        assert!(matches!(shock_offset(25.0, Family::One, State::new(1.0, 0.0), &p), Err(Error::Strength { .. })));
    }
}
