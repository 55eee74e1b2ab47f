//! Exact norms of piecewise-constant profiles, rate fits and the
//! convergence experiments built on them.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::front_tracking::{FrontTracker, Profile, SchemeParams};
use crate::riemann::{boundary_strength, solve_boundary};
use crate::semigroup::semigroup_apply;
use crate::wave_curves::{bernoulli_b, em1, phi_k, psi_flux, u_from_state, Family, ModelParams, State};

/// Pointwise norm used inside the L1 integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PointNorm {
    /// `|d rho| + |d v|`.
    #[default]
    ComponentSum,
    Euclidean,
}

impl PointNorm {
    fn eval(self, a: State, b: State) -> f64 {
        match self {
            PointNorm::ComponentSum => a.dist_l1(&b),
            PointNorm::Euclidean => (a.rho - b.rho).hypot(a.v - b.v),
        }
    }
}

/// Integrates `f(a(y), b(y))` over `[lo, hi]` by sweeping the merged
/// breakpoints. `lo = -inf` is accepted when `f` vanishes on the left tails.
pub fn sweep_integral(a: &Profile, b: &Profile, lo: f64, hi: f64, f: impl Fn(State, State) -> Result<f64>) -> Result<f64> {
    if !(lo < hi) || hi.is_infinite() {
        return Err(Error::Input(format!("bad interval ({lo}, {hi})")));
    }
    let mut cuts: Vec<f64> = a.breakpoints.iter().chain(&b.breakpoints).copied().filter(|&y| y > lo && y < hi).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let start = if lo.is_finite() {
        lo
    } else {
        if f(a.values[0], b.values[0])? != 0.0 {
            return Err(Error::DivergentIntegral);
        }
        match cuts.first() {
            Some(&c) => c,
            None => return Ok(0.0),
        }
    };
    let mut total = 0.0;
    let mut left = start;
    for &c in cuts.iter().chain(std::iter::once(&hi)) {
        if c > left {
            let mid = 0.5 * (left + c);
            total += f(a.value_at(mid), b.value_at(mid))? * (c - left);
            left = c;
        }
    }
    Ok(total)
}

pub fn l1_distance_with(a: &Profile, b: &Profile, interval: (f64, f64), norm: PointNorm) -> Result<f64> {
    sweep_integral(a, b, interval.0, interval.1, |u, w| Ok(norm.eval(u, w)))
}

/// `int |rho_a - rho_b| + |v_a - v_b| dy` over `interval`.
pub fn l1_distance(a: &Profile, b: &Profile, interval: (f64, f64)) -> Result<f64> {
    l1_distance_with(a, b, interval, PointNorm::ComponentSum)
}

/// L1 distance over `(-inf, b0 x)`.
pub fn l1_to_wall(a: &Profile, b: &Profile, b0: f64) -> Result<f64> {
    l1_distance(a, b, (f64::NEG_INFINITY, b0 * a.x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub abscissae: Vec<f64>,
    pub errors: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// `error / abscissa` at the smallest abscissa.
    pub leading_coefficient: f64,
}

impl RateFit {
    /// Log-log least squares over the 3 smallest abscissae.
    pub fn fit(abscissae: &[f64], errors: &[f64]) -> Result<Self> {
        Self::fit_window(abscissae, errors, 3)
    }

    pub fn fit_window(abscissae: &[f64], errors: &[f64], window: usize) -> Result<Self> {
        if abscissae.len() != errors.len() || abscissae.len() < 2 || window < 2 {
            return Err(Error::Input("rate fit needs at least two matching points".into()));
        }
        let mut pts: Vec<(f64, f64)> = abscissae.iter().copied().zip(errors.iter().copied()).collect();
        if pts.iter().any(|&(h, e)| !(h > 0.0 && e > 0.0 && h.is_finite() && e.is_finite())) {
            return Err(Error::Input("rate fit needs positive finite data".into()));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let used = &pts[..window.min(pts.len())];
        let n = used.len() as f64;
        let xs: Vec<f64> = used.iter().map(|p| p.0.ln()).collect();
        let ys: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
        if sxx == 0.0 {
            return Err(Error::Input("rate fit needs distinct abscissae".into()));
        }
        let slope = sxy / sxx;
        let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
        Ok(RateFit {
            abscissae: pts.iter().map(|p| p.0).collect(),
            errors: pts.iter().map(|p| p.1).collect(),
            slope,
            intercept: my - slope * mx,
            r2,
            leading_coefficient: pts[0].1 / pts[0].0,
        })
    }

    /// `slope,intercept,r2,leading_coefficient` header and one value line.
    pub fn summary(&self) -> String {
        format!(
            "slope,intercept,r2,leading_coefficient\n{:.12e},{:.12e},{:.12e},{:.12e}\n",
            self.slope, self.intercept, self.r2, self.leading_coefficient
        )
    }
}

/// `Psi(U, mu)`; at `mu = 0` this is `v^2 / 2 + ln(rho) / a^2`.
pub fn psi(s: State, p: &ModelParams) -> Result<f64> {
    psi_flux(s, p)
}

/// `int |u_full - u_limit| dy` over `interval`, `u` recovered per piece.
pub fn u_error(full: &Profile, limit: &Profile, p: &ModelParams, interval: (f64, f64)) -> Result<f64> {
    let pl = p.to_limit();
    sweep_integral(full, limit, interval.0, interval.1, |a, b| Ok((u_from_state(a, p)? - u_from_state(b, &pl)?).abs()))
}

/// The boundary problem with left state `(1, delta)` and `b0 = 0`, solved
/// in one system: `(shock speed, wall state)`.
fn wall_shock(delta: f64, p: &ModelParams) -> Result<(f64, State)> {
    let ul = State::new(1.0, delta);
    let fan = solve_boundary(ul, p)?;
    match fan.waves.first() {
        Some(w) if w.wave.kind == crate::WaveKind::Shock => Ok((w.xi_lo, fan.right_state())),
        _ => Err(Error::Boundary(format!("no single 1-shock for delta = {delta}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalRateRow {
    pub epsilon: f64,
    pub tau2: f64,
    /// Exact two-term error.
    pub l1_error: f64,
    /// The same error through `l1_distance` on the two sampled solutions.
    pub l1_sweep: f64,
    pub u_error: f64,
    /// `l1_error / (parameter * delta * x)`.
    pub coefficient: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalRateReport {
    pub a_inf: f64,
    pub delta: f64,
    pub x: f64,
    pub eps_rows: Vec<OptimalRateRow>,
    pub tau2_rows: Vec<OptimalRateRow>,
    /// Fit of `error / (delta x)` against `epsilon`.
    pub eps_fit: Option<RateFit>,
    pub tau2_fit: Option<RateFit>,
}

/// Solution of the wall problem as a profile at `x`.
fn wall_profile(x: f64, sigma: f64, ul: State, ub: State) -> Profile {
    Profile { x, breakpoints: vec![sigma * x], values: vec![ul, ub] }
}

fn optimal_row(a_inf: f64, delta: f64, eps: f64, tau2: f64, x: f64) -> Result<OptimalRateRow> {
    let pf = ModelParams::new(a_inf, eps, tau2, 0.0)?;
    let pl = pf.to_limit();
    let ul = State::new(1.0, delta);
    let (s0, u0) = wall_shock(delta, &pl)?;
    let (s1, u1) = wall_shock(delta, &pf)?;
    // between the two shocks one solution still has ul; behind both the wall states differ
    let (lo, hi, gap_state) = if s1 < s0 { (s1, s0, u1) } else { (s0, s1, u0) };
    let l1_error = ul.dist_l1(&gap_state) * (hi - lo) * x + u0.dist_l1(&u1) * (-hi) * x;
    let a = wall_profile(x, s1, ul, u1);
    let b = wall_profile(x, s0, ul, u0);
    let l1_sweep = l1_distance(&a, &b, (f64::NEG_INFINITY, 0.0))?;
    // u differs on the left state itself, so the window stops at twice the shock distance
    let u_err = u_error(&a, &b, &pf, (2.0 * s0.min(s1) * x, 0.0))?;
    let param = if eps > 0.0 { eps } else { tau2 };
    let coefficient = if param > 0.0 { l1_error / (param * delta * x) } else { 0.0 };
    Ok(OptimalRateRow { epsilon: eps, tau2, l1_error, l1_sweep, u_error: u_err, coefficient })
}

fn fit_rows(rows: &[OptimalRateRow], key: impl Fn(&OptimalRateRow) -> f64, scale: f64) -> Option<RateFit> {
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| key(r) > 0.0 && r.l1_error > 0.0).map(|r| (key(r), r.l1_error / scale)).collect();
    let (h, e): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    RateFit::fit(&h, &e).ok()
}

/// Wall problem with `rho_l = 1`, `v_l = delta`, `b0 = 0`: exact L1 error
/// between the full and limit solutions along an `epsilon` sweep (`tau = 0`)
/// and a `tau2` sweep (`epsilon = 0`).
pub fn optimal_rate_experiment(a_inf: f64, delta: f64, eps_list: &[f64], tau2_list: &[f64], x: f64) -> Result<OptimalRateReport> {
    let eps_rows = eps_list.iter().map(|&e| optimal_row(a_inf, delta, e, 0.0, x)).collect::<Result<Vec<_>>>()?;
    let tau2_rows = tau2_list.iter().map(|&t| optimal_row(a_inf, delta, 0.0, t, x)).collect::<Result<Vec<_>>>()?;
    let scale = delta * x;
    Ok(OptimalRateReport {
        a_inf,
        delta,
        x,
        eps_fit: fit_rows(&eps_rows, |r| r.epsilon, scale),
        tau2_fit: fit_rows(&tau2_rows, |r| r.tau2, scale),
        eps_rows,
        tau2_rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalRow {
    pub params: ModelParams,
    pub nu: u32,
    pub x: f64,
    pub l1_error: f64,
    pub u_error: f64,
    pub tv: f64,
    pub np_strength: f64,
    /// Within 10x of the error of the `mu = 0` cell at the same `x`.
    pub at_floor: bool,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalRateReport {
    pub rows: Vec<GlobalRow>,
    /// L1 error against `|mu|`, one fit per `x` in `x_list` order.
    pub mu_fits: Vec<(f64, Option<RateFit>)>,
    pub u_fits: Vec<(f64, Option<RateFit>)>,
    /// Error against `x` per nonzero `|mu|`.
    pub x_fits: Vec<(f64, Option<RateFit>)>,
}

/// Full-system front tracking at resolution `sp.nu` against the reference
/// semigroup at `nu_ref` on the cells `p_grid x x_list`; cells run in
/// parallel on the current rayon pool.
pub fn global_rate_experiment(
    u0: &Profile,
    p_grid: &[ModelParams],
    x_list: &[f64],
    sp_nu: u32,
    nu_ref: u32,
) -> Result<GlobalRateReport> {
    let Some(p0) = p_grid.first() else {
        return Err(Error::Input("empty parameter grid".into()));
    };
    if x_list.is_empty() {
        return Err(Error::Input("empty x list".into()));
    }
    let refs: Vec<Profile> = x_list
        .par_iter()
        .map(|&x| semigroup_apply(u0, x - u0.x, p0, nu_ref))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..p_grid.len()).flat_map(|i| (0..x_list.len()).map(move |j| (i, j))).collect();
    let mut rows: Vec<GlobalRow> = cells
        .par_iter()
        .map(|&(i, j)| -> Result<GlobalRow> {
            let start = Instant::now();
            let p = p_grid[i];
            let x = x_list[j];
            let sp = SchemeParams::new(sp_nu, &p);
            let mut t = FrontTracker::new(u0, &p, &sp)?;
            t.advance(x)?;
            let v = t.profile();
            let wall = p.b0 * x;
            let l1 = l1_distance(&v, &refs[j], (f64::NEG_INFINITY, wall))?;
            let ue = u_error(&v, &refs[j], &p, (f64::NEG_INFINITY, wall))?;
            let d = t.diagnostics();
            Ok(GlobalRow {
                params: p,
                nu: sp_nu,
                x,
                l1_error: l1,
                u_error: ue,
                tv: d.tv,
                np_strength: d.np_total_strength,
                at_floor: false,
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for &x in x_list {
        let floor = rows.iter().find(|r| r.x == x && r.params.is_limit()).map(|r| r.l1_error);
        if let Some(f) = floor {
            for r in rows.iter_mut().filter(|r| r.x == x && !r.params.is_limit()) {
                r.at_floor = r.l1_error < 10.0 * f;
            }
        }
    }
    let mut mu_fits = vec![];
    let mut u_fits = vec![];
    for &x in x_list {
        let sel: Vec<&GlobalRow> = rows.iter().filter(|r| r.x == x && !r.params.is_limit()).collect();
        let h: Vec<f64> = sel.iter().map(|r| r.params.mu_norm()).collect();
        let e: Vec<f64> = sel.iter().map(|r| r.l1_error).collect();
        let ue: Vec<f64> = sel.iter().map(|r| r.u_error).collect();
        mu_fits.push((x, RateFit::fit(&h, &e).ok()));
        u_fits.push((x, RateFit::fit(&h, &ue).ok()));
    }
    let mut x_fits = vec![];
    for p in p_grid.iter().filter(|p| !p.is_limit()) {
        let sel: Vec<&GlobalRow> = rows.iter().filter(|r| r.params == *p).collect();
        let h: Vec<f64> = sel.iter().map(|r| r.x).collect();
        let e: Vec<f64> = sel.iter().map(|r| r.l1_error).collect();
        x_fits.push((p.mu_norm(), RateFit::fit_window(&h, &e, h.len().max(2)).ok()));
    }
    Ok(GlobalRateReport { rows, mu_fits, u_fits, x_fits })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRow {
    pub h: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub tau2: f64,
    pub beta1: f64,
    /// `((beta1^eps - 1) / eps - a delta) / delta`.
    pub d_beta: f64,
    /// `(B(beta1, 0) - 2 delta / a) / delta`.
    pub d_bernoulli: f64,
    /// `(phi1 + delta) / delta` evaluated literally.
    pub d_phi_raw: f64,
    /// `(delta - (beta1 - 1) / a) / delta`.
    pub d_phi_lin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub a_inf: f64,
    pub rows: Vec<AsymptoticRow>,
    pub beta_fit: Option<RateFit>,
    pub bernoulli_fit: Option<RateFit>,
    pub phi_fit: Option<RateFit>,
}

/// Defects of the wall problem `rho_l = 1`, `v_l = delta`, `b0 = 0` along
/// the ladder `delta = h`, `epsilon = h * eps_ratio`, `tau2 = h * tau_ratio`.
pub fn asymptotic_checks(a_inf: f64, ladder: &[f64], eps_ratio: f64, tau_ratio: f64) -> Result<AsymptoticReport> {
    let mut rows = vec![];
    for &h in ladder {
        let (delta, eps, tau2) = (h, h * eps_ratio, h * tau_ratio);
        let p = ModelParams::new(a_inf, eps, tau2, 0.0)?;
        let ul = State::new(1.0, delta);
        let beta1 = boundary_strength(ul, &p)?;
        let ub = State::new(beta1, 0.0);
        let b = bernoulli_b(ub, &ModelParams { tau2: 0.0, ..p })?;
        let phi1 = phi_k(Family::One, beta1, ul, &p)?;
        rows.push(AsymptoticRow {
            h,
            delta,
            epsilon: eps,
            tau2,
            beta1,
            d_beta: (em1(beta1, eps) - a_inf * delta) / delta,
            d_bernoulli: (b - 2.0 * delta / a_inf) / delta,
            d_phi_raw: (phi1 + delta) / delta,
            d_phi_lin: (delta - (beta1 - 1.0) / a_inf) / delta,
        });
    }
    let fit = |f: fn(&AsymptoticRow) -> f64| {
        let h: Vec<f64> = rows.iter().map(|r| r.h).collect();
        let e: Vec<f64> = rows.iter().map(|r| f(r).abs()).collect();
        RateFit::fit(&h, &e).ok()
    };
    Ok(AsymptoticReport {
        a_inf,
        beta_fit: fit(|r| r.d_beta),
        bernoulli_fit: fit(|r| r.d_bernoulli),
        phi_fit: fit(|r| r.d_phi_lin),
        rows,
    })
}
