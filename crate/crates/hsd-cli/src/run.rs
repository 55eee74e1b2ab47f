//! Experiment orchestration. Cells are evaluated on the current rayon pool
//! and return their results in memory; only [`write_outcome`] touches disk.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use hsd_core::analysis::{global_rate_experiment, optimal_rate_experiment, psi, u_error, asymptotic_checks, l1_distance, RateFit};
use hsd_core::front_tracking::{wave_diagram_text, FrontFamily, FrontKind, FrontTracker, Profile, SchemeParams, Segment};
use hsd_core::riemann::{solve_boundary, solve_interior, sample_fan, RiemannFan};
use hsd_core::semigroup::{error_functional, lipschitz_ratio, semigroup_apply, semigroup_defect};
use hsd_core::{ModelParams, State, WaveKind};
use rayon::prelude::*;

use crate::config::{AcceptanceConfig, Experiment, ExperimentConfig, InitialDataSpec};
use crate::data::{builtin_initial_data, FREE_STREAM};
use crate::error::{CliError, ConfigError};

pub const RESULTS_HEADER: &str = "a_inf,epsilon,tau2,b0,delta,nu,x,l1_error,u_error,tv,np_strength,runtime_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct Measured {
    pub l1_error: Option<f64>,
    pub u_error: Option<f64>,
    pub tv: f64,
    pub np_strength: f64,
}

/// One line of `results.csv`; `measured == None` marks a skipped cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub a_inf: f64,
    pub epsilon: f64,
    pub tau2: f64,
    pub b0: f64,
    pub delta: Option<f64>,
    pub nu: Option<u32>,
    pub x: Option<f64>,
    pub measured: Option<Measured>,
    pub runtime_ms: Option<f64>,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

impl ResultRow {
    fn for_params(p: &ModelParams) -> Self {
        ResultRow {
            a_inf: p.a_inf,
            epsilon: p.epsilon,
            tau2: p.tau2,
            b0: p.b0,
            delta: None,
            nu: None,
            x: None,
            measured: None,
            runtime_ms: None,
        }
    }

    pub fn to_csv(&self) -> String {
        let tail = match &self.measured {
            Some(m) => format!("{},{},{},{}", opt(m.l1_error.map(num)), opt(m.u_error.map(num)), num(m.tv), num(m.np_strength)),
            None => "skipped,skipped,skipped,skipped".to_string(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            num(self.a_inf),
            num(self.epsilon),
            num(self.tau2),
            num(self.b0),
            opt(self.delta.map(num)),
            opt(self.nu),
            opt(self.x.map(num)),
            tail,
            opt(self.runtime_ms.map(|t| format!("{t:.3}")))
        )
    }

    pub fn is_skipped(&self) -> bool {
        self.measured.is_none()
    }
}

pub fn results_csv(rows: &[ResultRow]) -> String {
    let mut out = format!("{RESULTS_HEADER}\n");
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// A threshold evaluated after a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value >= self.lo && self.value <= self.hi
    }
}

pub fn checks_text(checks: &[Check]) -> String {
    let mut out = String::from("check,value,lo,hi,status\n");
    for c in checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{},{},{},{},{status}", c.name, num(c.value), num(c.lo), num(c.hi));
    }
    out
}

/// Everything a run produces, still in memory.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub rows: Vec<ResultRow>,
    /// Extra files (name, contents) besides `results.csv`.
    pub files: Vec<(String, String)>,
    pub fits: Vec<(String, RateFit)>,
    pub checks: Vec<Check>,
    /// Skipped cells and other remarks, echoed in the manifest.
    pub notes: Vec<String>,
}

impl Outcome {
    fn ratefit_text(&self) -> Option<String> {
        if self.fits.is_empty() {
            return None;
        }
        let mut out = String::new();
        for (label, fit) in &self.fits {
            let _ = write!(out, "[{label}]\n{}\n", fit.summary());
        }
        Some(out)
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

fn model(cfg: &ExperimentConfig, a_inf: f64, epsilon: f64, tau2: f64) -> Result<ModelParams, ConfigError> {
    ModelParams::new(a_inf, epsilon, tau2, cfg.model.b0).map_err(|e| ConfigError::new("model", e.to_string()))
}

fn scheme(cfg: &ExperimentConfig, nu: u32, p: &ModelParams) -> SchemeParams {
    let mut sp = SchemeParams::new(nu, p);
    sp.kappa = cfg.scheme.kappa;
    sp.max_fronts = cfg.scheme.max_fronts;
    if let Some(r) = cfg.scheme.varrho {
        sp.varrho = r;
    }
    sp
}

fn elapsed(cfg: &ExperimentConfig, start: Instant) -> Option<f64> {
    cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3)
}

fn range_check(out: &mut Vec<Check>, name: String, value: f64, range: Option<(f64, f64)>) {
    if let Some((lo, hi)) = range {
        out.push(Check { name, value, lo, hi });
    }
}

fn coefficient_check(out: &mut Vec<Check>, name: &str, fit: Option<&RateFit>, target: Option<f64>, acc: &AcceptanceConfig) {
    if let Some(t) = target {
        let value = fit.map_or(f64::NAN, |f| f.leading_coefficient);
        out.push(Check { name: name.to_string(), value, lo: t * (1.0 - acc.rel_tol), hi: t * (1.0 + acc.rel_tol) });
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    match cfg.experiment {
        Experiment::OptimalRate => optimal_rate(cfg),
        Experiment::GlobalRate => global_rate(cfg),
        Experiment::RiemannSingle => riemann_single(cfg),
        Experiment::FrontTrackingRun => front_tracking_run(cfg),
        Experiment::AsymptoticChecks => asymptotic(cfg),
        Experiment::SemigroupCheck => semigroup_check(cfg),
    }
}

fn initial_profile(cfg: &ExperimentConfig, p: &ModelParams) -> Result<Profile, CliError> {
    let spec = cfg.initial_data.as_ref().ok_or_else(|| ConfigError::new("initial_data", "missing"))?;
    Ok(builtin_initial_data(spec, cfg.seed, p)?)
}

fn optimal_rate(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let a = cfg.model.a_inf;
    let delta = cfg.model.delta;
    let mut cells = vec![];
    for &x in &cfg.sweep.x {
        cells.extend(cfg.sweep.epsilon.iter().map(|&e| (x, e, 0.0, true)));
        cells.extend(cfg.sweep.tau2.iter().map(|&t| (x, 0.0, t, false)));
    }
    for &(_, e, t, _) in &cells {
        model(cfg, a, e, t)?;
    }
    let results: Vec<(ResultRow, Option<String>)> = cells
        .par_iter()
        .map(|&(x, e, t, eps_sweep)| {
            let start = Instant::now();
            let p = ModelParams::new(a, e, t, 0.0).expect("validated above");
            let mut row = ResultRow { delta: Some(delta), x: Some(x), ..ResultRow::for_params(&p) };
            let (el, tl): (&[f64], &[f64]) = if eps_sweep { (&[e], &[]) } else { (&[], &[t]) };
            let solved = optimal_rate_experiment(a, delta, el, tl, x).and_then(|r| {
                let r0 = if eps_sweep { r.eps_rows[0].clone() } else { r.tau2_rows[0].clone() };
                let ul = State::new(1.0, delta);
                let ub = solve_boundary(ul, &p)?.right_state();
                Ok((r0, ul.dist_l1(&ub)))
            });
            match solved {
                Ok((r0, tv)) => {
                    row.measured = Some(Measured { l1_error: Some(r0.l1_error), u_error: Some(r0.u_error), tv, np_strength: 0.0 });
                    row.runtime_ms = elapsed(cfg, start);
                    (row, None)
                }
                // the wall problem has no single-shock solution here: outside the admissible range
                Err(err) => (row, Some(format!("skipped epsilon={e} tau2={t} x={x}: {err}"))),
            }
        })
        .collect();
    let mut out = Outcome::default();
    for (row, note) in results {
        out.rows.push(row);
        out.notes.extend(note);
    }
    for &x in &cfg.sweep.x {
        let scale = delta * x;
        for (label, eps_sweep) in [("epsilon", true), ("tau2", false)] {
            let pts: Vec<(f64, f64, f64)> = out
                .rows
                .iter()
                .filter(|r| r.x == Some(x))
                .filter_map(|r| {
                    let param = if eps_sweep { r.epsilon } else { r.tau2 };
                    let other = if eps_sweep { r.tau2 } else { r.epsilon };
                    let m = r.measured.as_ref()?;
                    (param > 0.0 && other == 0.0).then(|| (param, m.l1_error.unwrap_or(0.0) / scale, m.u_error.unwrap_or(0.0)))
                })
                .collect();
            let h: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let e: Vec<f64> = pts.iter().map(|p| p.1).collect();
            let ue: Vec<f64> = pts.iter().map(|p| p.2).collect();
            let fit = RateFit::fit(&h, &e).ok();
            let ufit = RateFit::fit(&h, &ue).ok();
            if let Some(acc) = &cfg.acceptance {
                let target = if eps_sweep { acc.eps_coefficient } else { acc.tau2_coefficient };
                coefficient_check(&mut out.checks, &format!("{label}_coefficient a_inf={a} x={x}"), fit.as_ref(), target, acc);
                range_check(&mut out.checks, format!("{label}_slope a_inf={a} x={x}"), fit.as_ref().map_or(f64::NAN, |f| f.slope), acc.slope);
                range_check(
                    &mut out.checks,
                    format!("{label}_u_slope a_inf={a} x={x}"),
                    ufit.as_ref().map_or(f64::NAN, |f| f.slope),
                    acc.u_slope,
                );
            }
            if let Some(f) = fit {
                out.fits.push((format!("{label} sweep: error/(delta x), a_inf={a}, x={x}"), f));
            }
            if let Some(f) = ufit {
                out.fits.push((format!("{label} sweep: u error, a_inf={a}, x={x}"), f));
            }
        }
    }
    Ok(out)
}

fn global_rate(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let a = cfg.model.a_inf;
    let p0 = model(cfg, a, 0.0, 0.0)?;
    let u0 = initial_profile(cfg, &p0)?;
    let tv0 = u0.tv();
    let mut grid = vec![p0];
    let mut out = Outcome::default();
    for &mu in &cfg.sweep.mu {
        let p = model(cfg, a, 0.5 * mu, 0.5 * mu)?;
        if mu * (tv0 + cfg.model.b0.abs()) >= cfg.model.budget {
            out.notes.push(format!("skipped |mu|={mu}: |mu| (TV + |b0|) exceeds the budget {}", cfg.model.budget));
            for &x in &cfg.sweep.x {
                out.rows.push(ResultRow { nu: Some(cfg.scheme.nu), x: Some(x), ..ResultRow::for_params(&p) });
            }
        } else if !grid.contains(&p) {
            grid.push(p);
        }
    }
    let report = global_rate_experiment(&u0, &grid, &cfg.sweep.x, cfg.scheme.nu, cfg.scheme.nu_ref)
        .map_err(|e| CliError::solver("global_rate", e))?;
    let computed: Vec<ResultRow> = report
        .rows
        .iter()
        .map(|r| ResultRow {
            nu: Some(r.nu),
            x: Some(r.x),
            measured: Some(Measured { l1_error: Some(r.l1_error), u_error: Some(r.u_error), tv: r.tv, np_strength: r.np_strength }),
            runtime_ms: cfg.timing.then_some(r.runtime_ms),
            ..ResultRow::for_params(&r.params)
        })
        .collect();
    out.rows.splice(0..0, computed);
    let floored = report.rows.iter().filter(|r| r.at_floor).count();
    if floored > 0 {
        out.notes.push(format!("{floored} cell(s) within 10x of the mu = 0 resolution floor"));
    }
    let acc = cfg.acceptance.as_ref();
    for (x, fit) in &report.mu_fits {
        if let Some(acc) = acc {
            range_check(&mut out.checks, format!("mu_slope x={x}"), fit.as_ref().map_or(f64::NAN, |f| f.slope), acc.slope);
        }
        if let Some(f) = fit {
            out.fits.push((format!("L1 error vs |mu|, x={x}"), f.clone()));
        }
    }
    for (x, fit) in &report.u_fits {
        if let Some(acc) = acc {
            range_check(&mut out.checks, format!("u_slope x={x}"), fit.as_ref().map_or(f64::NAN, |f| f.slope), acc.u_slope);
        }
        if let Some(f) = fit {
            out.fits.push((format!("u error vs |mu|, x={x}"), f.clone()));
        }
    }
    for (mu, fit) in &report.x_fits {
        if let Some(max) = acc.and_then(|a| a.x_slope_max) {
            range_check(&mut out.checks, format!("x_slope |mu|={mu}"), fit.as_ref().map_or(f64::NAN, |f| f.slope), Some((f64::NEG_INFINITY, max)));
        }
        if let Some(f) = fit {
            out.fits.push((format!("L1 error vs x, |mu|={mu}"), f.clone()));
        }
    }
    Ok(out)
}

/// Per-piece integral of `f(full, limit)` over `[lo, hi]` in the similarity
/// variable, cut at every wave edge of both fans so each piece is smooth.
fn fan_integral(
    full: &RiemannFan,
    limit: &RiemannFan,
    pf: &ModelParams,
    pl: &ModelParams,
    f: impl Fn(State, State) -> hsd_core::Result<f64>,
) -> hsd_core::Result<f64> {
    let edges: Vec<f64> = full.waves.iter().chain(&limit.waves).flat_map(|w| [w.xi_lo, w.xi_hi]).collect();
    if edges.is_empty() {
        return f(full.left_state, limit.left_state).map(|_| 0.0);
    }
    let mut cuts = edges.clone();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let smooth = full.waves.iter().chain(&limit.waves).any(|fw| fw.wave.kind == WaveKind::Rarefaction && fw.xi_lo < hi && fw.xi_hi > lo);
        let n = if smooth { 256 } else { 1 };
        let h = (hi - lo) / n as f64;
        for k in 0..n {
            let xi = lo + (k as f64 + 0.5) * h;
            total += f(sample_fan(full, xi, pf)?, sample_fan(limit, xi, pl)?)? * h;
        }
    }
    Ok(total)
}

fn fan_segments(fan: &RiemannFan, y0: f64, x: f64) -> Vec<Segment> {
    let mut segs = vec![];
    for w in &fan.waves {
        let (family, kind) = match w.wave.kind {
            WaveKind::Shock => (FrontFamily::from(w.wave.family), FrontKind::Shock),
            WaveKind::Rarefaction => (FrontFamily::from(w.wave.family), FrontKind::RarefactionFan),
        };
        let mut speeds = vec![w.xi_lo];
        if w.xi_hi != w.xi_lo {
            speeds.push(w.xi_hi);
        }
        for xi in speeds {
            segs.push(Segment { x0: 0.0, y0, x1: x, y1: y0 + xi * x, family, kind, strength: w.wave.alpha });
        }
    }
    segs
}

fn fan_table(out: &mut String, system: &str, fan: &RiemannFan) {
    for (i, w) in fan.waves.iter().enumerate() {
        let (l, r) = (fan.constant_states[i], fan.constant_states[i + 1]);
        let kind = if w.wave.kind == WaveKind::Shock { "shock" } else { "rarefaction" };
        let _ = writeln!(
            out,
            "{system},{},{kind},{},{},{},{},{},{},{}",
            FrontFamily::from(w.wave.family).label(),
            num(w.wave.alpha),
            num(w.xi_lo),
            num(w.xi_hi),
            num(l.rho),
            num(l.v),
            num(r.rho),
            num(r.v)
        );
    }
}

fn riemann_single(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let pf = model(cfg, cfg.model.a_inf, cfg.model.epsilon, cfg.model.tau2)?;
    let pl = pf.to_limit();
    let u0 = initial_profile(cfg, &pf)?;
    let boundary = matches!(cfg.initial_data, Some(InitialDataSpec::BoundaryRiemann { .. }));
    let solve = |p: &ModelParams| {
        if boundary {
            solve_boundary(u0.values[0], p)
        } else {
            solve_interior(u0.values[0], u0.values[1], p)
        }
    };
    let start = Instant::now();
    let cell = "riemann_single";
    let full = solve(&pf).map_err(|e| CliError::solver(cell, e))?;
    let limit = solve(&pl).map_err(|e| CliError::solver(cell, e))?;
    let dist = fan_integral(&full, &limit, &pf, &pl, |a, b| Ok(a.dist_l1(&b))).map_err(|e| CliError::solver(cell, e))?;
    let udist = fan_integral(&full, &limit, &pf, &pl, |a, b| Ok((psi(a, &pf)? - psi(b, &pl)?).abs()))
        .map_err(|e| CliError::solver(cell, e))?;
    let tv: f64 = full.constant_states.windows(2).map(|w| w[0].dist_l1(&w[1])).sum();
    let runtime = elapsed(cfg, start);
    let y0 = if boundary { 0.0 } else { u0.breakpoints[0] };
    let mut out = Outcome::default();
    for &x in &cfg.sweep.x {
        out.rows.push(ResultRow {
            x: Some(x),
            measured: Some(Measured { l1_error: Some(dist * x), u_error: Some(udist * x), tv, np_strength: 0.0 }),
            runtime_ms: runtime,
            ..ResultRow::for_params(&pf)
        });
    }
    let x_max = cfg.sweep.x.iter().copied().fold(0.0, f64::max);
    out.files.push(("wavediagram.txt".into(), wave_diagram_text(&fan_segments(&full, y0, x_max))));
    let mut table = String::from("system,family,kind,alpha,xi_lo,xi_hi,rho_left,v_left,rho_right,v_right\n");
    fan_table(&mut table, "full", &full);
    fan_table(&mut table, "limit", &limit);
    out.files.push(("fan.csv".into(), table));
    Ok(out)
}

fn run_stats_line(nu: u32, t: &FrontTracker) -> String {
    let s = t.stats();
    format!(
        "{nu},{},{},{},{},{},{},{}\n",
        num(s.tv0),
        num(s.max_tv),
        num(s.max_raref_strength),
        num(s.max_np_total),
        s.max_fronts,
        s.events,
        num(s.np_absorbed)
    )
}

fn front_tracking_run(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = model(cfg, cfg.model.a_inf, cfg.model.epsilon, cfg.model.tau2)?;
    let u0 = initial_profile(cfg, &p)?;
    let mut xs = cfg.sweep.x.clone();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let nus = if cfg.sweep.nu.is_empty() { vec![cfg.scheme.nu] } else { cfg.sweep.nu.clone() };
    let refs: Vec<Option<Profile>> = xs
        .par_iter()
        .map(|&x| {
            (cfg.scheme.nu_ref > 0)
                .then(|| semigroup_apply(&u0, x, &p, cfg.scheme.nu_ref))
                .transpose()
                .map_err(|e| CliError::solver(format!("reference at x={x}"), e))
        })
        .collect::<Result<_, _>>()?;
    let runs: Vec<(Vec<ResultRow>, FrontTracker)> = nus
        .par_iter()
        .map(|&nu| -> Result<_, CliError> {
            let cell = |x: f64| format!("front_tracking_run nu={nu} x={x}");
            let start = Instant::now();
            let mut t = FrontTracker::new(&u0, &p, &scheme(cfg, nu, &p)).map_err(|e| CliError::solver(cell(0.0), e))?;
            let mut rows = vec![];
            for (&x, r) in xs.iter().zip(&refs) {
                t.advance(x).map_err(|e| CliError::solver(cell(x), e))?;
                let v = t.profile();
                let d = t.diagnostics();
                let wall = (f64::NEG_INFINITY, p.b0 * x);
                let (l1, ue) = match r {
                    Some(r) => (
                        Some(l1_distance(&v, r, wall).map_err(|e| CliError::solver(cell(x), e))?),
                        Some(u_error(&v, r, &p, wall).map_err(|e| CliError::solver(cell(x), e))?),
                    ),
                    None => (None, None),
                };
                rows.push(ResultRow {
                    nu: Some(nu),
                    x: Some(x),
                    measured: Some(Measured { l1_error: l1, u_error: ue, tv: d.tv, np_strength: d.np_total_strength }),
                    runtime_ms: elapsed(cfg, start),
                    ..ResultRow::for_params(&p)
                });
            }
            Ok((rows, t))
        })
        .collect::<Result<_, _>>()?;
    let mut out = Outcome::default();
    let mut stats = String::from("nu,tv0,max_tv,max_raref_strength,max_np_total,max_fronts,events,np_absorbed\n");
    for (rows, t) in &runs {
        out.rows.extend(rows.iter().cloned());
        stats.push_str(&run_stats_line(t.params().1.nu, t));
    }
    let (_, last) = runs.last().expect("at least one resolution");
    out.files.push(("events.log".into(), last.log().to_text()));
    out.files.push(("wavediagram.txt".into(), wave_diagram_text(&last.wave_diagram())));
    out.files.push(("run_stats.csv".into(), stats));
    Ok(out)
}

fn asymptotic(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let a_list = if cfg.sweep.a_inf.is_empty() { vec![cfg.model.a_inf] } else { cfg.sweep.a_inf.clone() };
    let ladder = &cfg.sweep.delta;
    let reports = a_list
        .par_iter()
        .map(|&a| {
            asymptotic_checks(a, ladder, cfg.sweep.eps_ratio, cfg.sweep.tau_ratio)
                .map_err(|e| CliError::solver(format!("asymptotic_checks a_inf={a}"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Outcome::default();
    let mut defects = String::from("a_inf,h,delta,epsilon,tau2,beta1,d_beta,d_bernoulli,d_phi_raw,d_phi_lin\n");
    for r in &reports {
        for row in &r.rows {
            let _ = writeln!(
                defects,
                "{},{},{},{},{},{},{},{},{},{}",
                num(r.a_inf),
                num(row.h),
                num(row.delta),
                num(row.epsilon),
                num(row.tau2),
                num(row.beta1),
                num(row.d_beta),
                num(row.d_bernoulli),
                num(row.d_phi_raw),
                num(row.d_phi_lin)
            );
            let p = ModelParams::new(r.a_inf, row.epsilon, row.tau2, 0.0).map_err(|e| ConfigError::new("sweep", e.to_string()))?;
            out.rows.push(ResultRow {
                delta: Some(row.delta),
                measured: Some(Measured { l1_error: None, u_error: None, tv: (row.beta1 - 1.0).abs() + row.delta.abs(), np_strength: 0.0 }),
                ..ResultRow::for_params(&p)
            });
        }
        for (label, fit) in [("beta", &r.beta_fit), ("bernoulli", &r.bernoulli_fit), ("phi", &r.phi_fit)] {
            if let Some(acc) = &cfg.acceptance {
                range_check(&mut out.checks, format!("{label}_defect_slope a_inf={}", r.a_inf), fit.as_ref().map_or(f64::NAN, |f| f.slope), acc.slope);
            }
            if let Some(f) = fit {
                out.fits.push((format!("{label} defect vs h, a_inf={}", r.a_inf), f.clone()));
            }
        }
    }
    out.files.push(("defects.csv".into(), defects));
    Ok(out)
}

fn semigroup_check(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let p = model(cfg, cfg.model.a_inf, cfg.model.epsilon, cfg.model.tau2)?;
    let u0 = initial_profile(cfg, &p)?;
    let mut xs = cfg.sweep.x.clone();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let x_end = xs[xs.len() - 1];
    let sp = scheme(cfg, cfg.scheme.nu, &p);
    let mut t = FrontTracker::new(&u0, &p, &sp).map_err(|e| CliError::solver("semigroup_check tracking", e))?;
    let mut tracked = vec![];
    for &x in &xs {
        t.advance(x).map_err(|e| CliError::solver(format!("semigroup_check tracking x={x}"), e))?;
        tracked.push((x, t.profile(), t.diagnostics()));
    }
    let flat = Profile::constant(u0.x, FREE_STREAM);
    let per_ref = cfg
        .sweep
        .nu
        .par_iter()
        .map(|&nu_ref| -> Result<_, CliError> {
            let cell = format!("semigroup_check nu_ref={nu_ref}");
            let err = |e| CliError::solver(cell.clone(), e);
            let mut rows = vec![];
            for (x, v, d) in &tracked {
                let r = semigroup_apply(&u0, *x, &p, nu_ref).map_err(err)?;
                let wall = (f64::NEG_INFINITY, p.b0 * x);
                rows.push(ResultRow {
                    nu: Some(nu_ref),
                    x: Some(*x),
                    measured: Some(Measured {
                        l1_error: Some(l1_distance(v, &r, wall).map_err(err)?),
                        u_error: Some(u_error(v, &r, &p, wall).map_err(err)?),
                        tv: d.tv,
                        np_strength: d.np_total_strength,
                    }),
                    ..ResultRow::for_params(&p)
                });
            }
            let lip = if u0 == flat { f64::NAN } else { lipschitz_ratio(&u0, &flat, x_end, &p, nu_ref).map_err(err)? };
            let defect = semigroup_defect(&u0, 0.4 * x_end, 0.6 * x_end, &p, nu_ref).map_err(err)?;
            Ok((rows, lip, defect))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Outcome::default();
    let mut summary = String::from("nu_ref,lipschitz,defect\n");
    let mut lip_max: f64 = 0.0;
    for ((rows, lip, defect), nu_ref) in per_ref.iter().zip(&cfg.sweep.nu) {
        out.rows.extend(rows.iter().cloned());
        let _ = writeln!(summary, "{nu_ref},{},{}", num(*lip), num(*defect));
        if lip.is_finite() {
            lip_max = lip_max.max(*lip);
        }
    }
    let nu_ref = *cfg.sweep.nu.iter().max().expect("validated non-empty");
    let lip = if lip_max > 0.0 { lip_max } else { 1.0 };
    let ef = error_functional(&u0, &p, &sp, x_end, cfg.scheme.functional_h, cfg.scheme.functional_samples, nu_ref, lip)
        .map_err(|e| CliError::solver("error_functional", e))?;
    let _ = write!(
        summary,
        "\nintegral,lipschitz,bound,warnings\n{},{},{},{}\n",
        num(ef.integral),
        num(ef.lipschitz),
        num(ef.bound),
        ef.warnings()
    );
    out.files.push(("integrand.csv".into(), ef.trace_csv()));
    out.files.push(("semigroup.txt".into(), summary));
    out.files.push(("events.log".into(), t.log().to_text()));
    out.files.push(("wavediagram.txt".into(), wave_diagram_text(&t.wave_diagram())));
    Ok(out)
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })
}

/// Writes `results.csv`, `ratefit.txt`, the extra files, `acceptance.txt`
/// when thresholds were configured, and `manifest.txt`.
pub fn write_outcome(dir: &Path, cfg: &ExperimentConfig, outcome: &Outcome) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let mut written = vec!["results.csv".to_string()];
    write(dir, "results.csv", &results_csv(&outcome.rows))?;
    if let Some(text) = outcome.ratefit_text() {
        write(dir, "ratefit.txt", &text)?;
        written.push("ratefit.txt".into());
    }
    for (name, text) in &outcome.files {
        write(dir, name, text)?;
        written.push(name.clone());
    }
    if cfg.acceptance.is_some() {
        write(dir, "acceptance.txt", &checks_text(&outcome.checks))?;
        written.push("acceptance.txt".into());
    }
    let mut manifest = format!("# hsd-core {}\n# files: {}\n", hsd_core::VERSION, written.join(" "));
    for n in &outcome.notes {
        let _ = writeln!(manifest, "# note: {n}");
    }
    manifest.push_str(&cfg.to_text());
    write(dir, "manifest.txt", &manifest)
}
