//! The limit-system reference semigroup, computed by front tracking in
//! coordinates where the wall is fixed, and the error functional that
//! compares an approximate trajectory against it.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::analysis::l1_distance;
use crate::error::{Error, Result};
use crate::front_tracking::{FrontKind, FrontTracker, Profile, SchemeParams};
use crate::riemann::boundary_strength;
use crate::wave_curves::ModelParams;

/// Profile in `(x, y - b0 x)` with velocity `v - b0`; the wall is `y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedProfile {
    pub x: f64,
    pub breakpoints: Vec<f64>,
    pub values: Vec<crate::State>,
    pub b0: f64,
}

pub fn to_transformed(prof: &Profile, b0: f64) -> TransformedProfile {
    let shift = b0 * prof.x;
    TransformedProfile {
        x: prof.x,
        breakpoints: prof.breakpoints.iter().map(|y| y - shift).collect(),
        values: prof.values.iter().map(|u| crate::State::new(u.rho, u.v - b0)).collect(),
        b0,
    }
}

pub fn from_transformed(tp: &TransformedProfile) -> Profile {
    let shift = tp.b0 * tp.x;
    Profile {
        x: tp.x,
        breakpoints: tp.breakpoints.iter().map(|y| y + shift).collect(),
        values: tp.values.iter().map(|u| crate::State::new(u.rho, u.v + tp.b0)).collect(),
    }
}

/// `S_dx u0` for the limit system with `p.a_inf`, `p.b0`, tracked at
/// resolution `nu_ref`. The result sits at `u0.x + dx`.
pub fn semigroup_apply(u0: &Profile, dx: f64, p: &ModelParams, nu_ref: u32) -> Result<Profile> {
    if !(dx >= 0.0) {
        return Err(Error::Input(format!("negative step {dx}")));
    }
    if dx == 0.0 {
        return Ok(u0.clone());
    }
    let tp = to_transformed(u0, p.b0);
    let pl = ModelParams { b0: 0.0, ..p.to_limit() };
    let sp = SchemeParams::new(nu_ref, &pl);
    // the transformed problem is autonomous in x, so start it at 0
    let start = Profile::new(0.0, tp.breakpoints, tp.values)?;
    let mut t = FrontTracker::new(&start, &pl, &sp)?;
    t.advance(dx)?;
    let out = t.profile();
    Ok(from_transformed(&TransformedProfile {
        x: u0.x + dx,
        breakpoints: out.breakpoints,
        values: out.values,
        b0: p.b0,
    }))
}

/// `|S_dx a - S_dx b| / |a - b|`, both norms over `(-inf, b0 x)`.
pub fn lipschitz_ratio(a: &Profile, b: &Profile, dx: f64, p: &ModelParams, nu_ref: u32) -> Result<f64> {
    let d0 = l1_distance(a, b, (f64::NEG_INFINITY, p.b0 * a.x))?;
    if d0 == 0.0 {
        return Err(Error::Input("profiles coincide".into()));
    }
    let sa = semigroup_apply(a, dx, p, nu_ref)?;
    let sb = semigroup_apply(b, dx, p, nu_ref)?;
    Ok(l1_distance(&sa, &sb, (f64::NEG_INFINITY, p.b0 * sa.x))? / d0)
}

/// `|S_(x1+x2) u - S_x2 S_x1 u|`.
pub fn semigroup_defect(u: &Profile, x1: f64, x2: f64, p: &ModelParams, nu_ref: u32) -> Result<f64> {
    let direct = semigroup_apply(u, x1 + x2, p, nu_ref)?;
    let composed = semigroup_apply(&semigroup_apply(u, x1, p, nu_ref)?, x2, p, nu_ref)?;
    l1_distance(&direct, &composed, (f64::NEG_INFINITY, p.b0 * direct.x))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelSample {
    pub s: f64,
    /// `|S_h V(s) - V(s + h)| / h`.
    pub integrand: f64,
    pub h: f64,
    /// An interaction of `V` fell inside `(s, s + h]`.
    pub warning: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorFunctional {
    /// Midpoint-rule value of `int |S_h V(s) - V(s + h)| / h ds`.
    pub integral: f64,
    pub lipschitz: f64,
    /// `1.5 * lipschitz * integral`.
    pub bound: f64,
    pub trace: Vec<PanelSample>,
}

impl ErrorFunctional {
    pub fn warnings(&self) -> usize {
        self.trace.iter().filter(|p| p.warning).count()
    }

    /// CSV with columns `s,integrand,h,warnings`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("s,integrand,h,warnings\n");
        for p in &self.trace {
            let _ = writeln!(out, "{:.12e},{:.12e},{:.6e},{}", p.s, p.integrand, p.h, u8::from(p.warning));
        }
        out
    }
}

/// Evaluates the error functional of the full-system front-tracking
/// trajectory `V` started from `u0` up to `x`, with `samples` midpoint
/// panels and step `h`. `lipschitz` is the measured constant of the
/// reference semigroup.
pub fn error_functional(
    u0: &Profile,
    p_full: &ModelParams,
    sp: &SchemeParams,
    x: f64,
    h: f64,
    samples: usize,
    nu_ref: u32,
    lipschitz: f64,
) -> Result<ErrorFunctional> {
    let len = x - u0.x;
    if samples == 0 || !(len > 0.0) || !(h > 0.0) || h >= len / samples as f64 {
        return Err(Error::Input(format!("need samples >= 1, x > x0 and h < panel width (h = {h})")));
    }
    let panel = len / samples as f64;
    let mut t = FrontTracker::new(u0, p_full, sp)?;
    let mut pairs = Vec::with_capacity(samples);
    for k in 0..samples {
        let s = u0.x + (k as f64 + 0.5) * panel;
        t.advance(s)?;
        let before = t.stats().events;
        let vs = t.profile();
        t.advance(s + h)?;
        let warning = t.stats().events > before;
        pairs.push((s, vs, t.profile(), warning));
    }
    let trace = pairs
        .par_iter()
        .map(|(s, vs, vsh, warning)| -> Result<PanelSample> {
            let sh = semigroup_apply(vs, h, p_full, nu_ref)?;
            let d = l1_distance(&sh, vsh, (f64::NEG_INFINITY, p_full.b0 * vsh.x))?;
            Ok(PanelSample { s: *s, integrand: d / h, h, warning: *warning })
        })
        .collect::<Result<Vec<_>>>()?;
    let integral = trace.iter().map(|p| p.integrand).sum::<f64>() * panel;
    Ok(ErrorFunctional { integral, lipschitz, bound: 1.5 * lipschitz * integral, trace })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeSite {
    Interior,
    NonPhysical,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeReport {
    pub site: ProbeSite,
    /// Position of the probed fronts at the probe start, or the wall.
    pub y: f64,
    /// Fronts sharing this position (a fan emitted from one point).
    pub fronts: usize,
    /// `sum |alpha - 1|` over the physical fronts plus the non-physical
    /// sizes; for the wall, the strength of its 1-wave.
    pub strength: f64,
    /// `|S_h U - V(x + h)|` on `[y - eta, y + eta]`.
    pub value: f64,
    /// `value / (h strength)`, or `value / (h (|alpha - 1| + 1))` at the wall.
    pub ratio: f64,
    pub eta: f64,
    /// The window was shrunk to avoid a neighbour, or `V` interacted
    /// within the step.
    pub warning: bool,
}

/// Per-front comparison of one step `h` of the reference semigroup with
/// one step of the tracked trajectory, starting from the tracker's
/// current state. Fronts at a common position are probed together, and
/// fronts on the wall belong to the wall probe.
pub fn local_error_probe(tracker: &FrontTracker, h: f64, nu_ref: u32) -> Result<Vec<ProbeReport>> {
    if !(h > 0.0) {
        return Err(Error::Input(format!("bad probe step {h}")));
    }
    let (p, sp) = tracker.params();
    let x = tracker.x();
    let prof = tracker.profile();
    let mut v = tracker.clone();
    let events = v.stats().events;
    v.advance(x + h)?;
    let interacted = v.stats().events > events;
    let vh = v.profile();
    let sh = semigroup_apply(&prof, h, p, nu_ref)?;
    let wall0 = p.b0 * x;
    let wall = p.b0 * (x + h);
    let eta0 = 1.05 * sp.lambda_hat * h;
    let tol = 1e-12 * (1.0 + wall0.abs());

    // (y, count, scale, all non-physical)
    let mut clusters: Vec<(f64, usize, f64, bool)> = vec![];
    let mut on_wall = 0usize;
    for f in tracker.fronts() {
        let y = f.y_at(x);
        let size = match f.kind {
            FrontKind::NonPhysical => f.strength,
            _ => (f.strength - 1.0).abs(),
        };
        let np = f.kind == FrontKind::NonPhysical;
        if y >= wall0 - tol {
            on_wall += 1;
            continue;
        }
        match clusters.last_mut() {
            Some(c) if y - c.0 <= tol => {
                c.1 += 1;
                c.2 += size;
                c.3 &= np;
            }
            _ => clusters.push((y, 1, size, np)),
        }
    }
    let mut out = vec![];
    for (i, &(y, count, scale, np)) in clusters.iter().enumerate() {
        let gap_l = if i > 0 { y - clusters[i - 1].0 } else { f64::INFINITY };
        let gap_r = clusters.get(i + 1).map_or(wall0 - y, |c| c.0 - y);
        let eta = eta0.min(0.5 * gap_l).min(0.5 * gap_r);
        let hi = (y + eta).min(wall);
        let value = l1_distance(&sh, &vh, (y - eta, hi))?;
        out.push(ProbeReport {
            site: if np { ProbeSite::NonPhysical } else { ProbeSite::Interior },
            y,
            fronts: count,
            strength: scale,
            value,
            ratio: value / (h * scale),
            eta,
            warning: interacted || eta < eta0,
        });
    }
    let gap = clusters.last().map_or(f64::INFINITY, |c| wall0 - c.0);
    let eta = eta0.min(0.5 * gap);
    let value = l1_distance(&sh, &vh, (wall - eta, wall))?;
    let fronts = tracker.fronts();
    let wall_left = if on_wall > 0 { fronts[fronts.len() - on_wall].left } else { prof.boundary_value() };
    let alpha_b = boundary_strength(wall_left, &p.to_limit())?;
    out.push(ProbeReport {
        site: ProbeSite::Boundary,
        y: wall0,
        fronts: on_wall,
        strength: alpha_b,
        value,
        ratio: value / (h * ((alpha_b - 1.0).abs() + 1.0)),
        eta,
        warning: interacted || eta < eta0,
    });
    Ok(out)
}
