//! Experiment configuration: flat `key = value` files with `[section]`
//! headers (a TOML subset, no nested tables).

use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use toml::{Table, Value};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    OptimalRate,
    GlobalRate,
    RiemannSingle,
    FrontTrackingRun,
    AsymptoticChecks,
    SemigroupCheck,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::OptimalRate,
        Experiment::GlobalRate,
        Experiment::RiemannSingle,
        Experiment::FrontTrackingRun,
        Experiment::AsymptoticChecks,
        Experiment::SemigroupCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::OptimalRate => "optimal_rate",
            Experiment::GlobalRate => "global_rate",
            Experiment::RiemannSingle => "riemann_single",
            Experiment::FrontTrackingRun => "front_tracking_run",
            Experiment::AsymptoticChecks => "asymptotic_checks",
            Experiment::SemigroupCheck => "semigroup_check",
        }
    }

    fn needs_initial_data(self) -> bool {
        matches!(
            self,
            Experiment::GlobalRate | Experiment::RiemannSingle | Experiment::FrontTrackingRun | Experiment::SemigroupCheck
        )
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown experiment '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub a_inf: f64,
    pub epsilon: f64,
    pub tau2: f64,
    pub b0: f64,
    /// Wall-problem inflow velocity for the boundary experiments.
    pub delta: f64,
    /// Cells with `|mu| (TV + |b0|) >= budget` are skipped.
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub nu: u32,
    /// Resolution of the reference semigroup; 0 disables reference runs.
    pub nu_ref: u32,
    pub kappa: f64,
    /// Overrides the default `2^-nu` threshold.
    pub varrho: Option<f64>,
    pub max_fronts: usize,
    /// Step of the error functional.
    pub functional_h: f64,
    pub functional_samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialDataSpec {
    Riemann { left: (f64, f64), right: (f64, f64), y0: f64 },
    BoundaryRiemann { state: (f64, f64) },
    NWave { amplitude: f64, pieces: usize, y_lo: f64, y_hi: f64 },
    RandomBv { tv: f64, pieces: usize, seed: Option<u64>, y_lo: f64, y_hi: f64 },
    /// CSV `breakpoint,rho,v`; the first row carries `-inf` and the left tail.
    Table(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepConfig {
    pub epsilon: Vec<f64>,
    pub tau2: Vec<f64>,
    /// `|mu|` values, split evenly between `epsilon` and `tau2`.
    pub mu: Vec<f64>,
    pub x: Vec<f64>,
    pub nu: Vec<u32>,
    pub a_inf: Vec<f64>,
    pub delta: Vec<f64>,
    pub eps_ratio: f64,
    pub tau_ratio: f64,
}

/// Thresholds checked after a run; any failure maps to exit status 4.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AcceptanceConfig {
    pub eps_coefficient: Option<f64>,
    pub tau2_coefficient: Option<f64>,
    pub rel_tol: f64,
    pub slope: Option<(f64, f64)>,
    pub u_slope: Option<(f64, f64)>,
    pub x_slope_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    /// Record wall-clock runtimes; off by default so outputs are reproducible.
    pub timing: bool,
    pub model: ModelConfig,
    pub scheme: SchemeConfig,
    pub initial_data: Option<InitialDataSpec>,
    pub sweep: SweepConfig,
    pub acceptance: Option<AcceptanceConfig>,
}

const SECTIONS: [(&str, &[&str]); 6] = [
    ("", &["experiment", "seed", "output_dir", "timing"]),
    ("model", &["a_inf", "epsilon", "tau2", "b0", "delta", "budget"]),
    ("scheme", &["nu", "nu_ref", "kappa", "varrho", "max_fronts", "functional_h", "functional_samples"]),
    (
        "initial_data",
        &["name", "rho_l", "v_l", "rho_r", "v_r", "y0", "amplitude", "pieces", "tv", "seed", "y_lo", "y_hi", "path"],
    ),
    ("sweep", &["epsilon", "tau2", "mu", "x", "nu", "a_inf", "delta", "eps_ratio", "tau_ratio"]),
    ("acceptance", &["eps_coefficient", "tau2_coefficient", "rel_tol", "slope", "u_slope", "x_slope_max"]),
];

/// Parsed but untyped configuration; overrides are applied at this level.
#[derive(Debug, Clone, PartialEq)]
pub struct RawConfig {
    table: Table,
    /// Relative paths resolve against this directory.
    base: Option<PathBuf>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| ConfigError::new("<file>", e.message()))?;
        for (key, value) in &table {
            match value {
                Value::Table(inner) => {
                    let Some((_, keys)) = SECTIONS.iter().find(|(s, _)| s == key) else {
                        return Err(ConfigError::new(key, "unknown section"));
                    };
                    for (k, v) in inner {
                        if !keys.contains(&k.as_str()) {
                            return Err(ConfigError::new(format!("{key}.{k}"), "unknown key"));
                        }
                        if matches!(v, Value::Table(_)) {
                            return Err(ConfigError::new(format!("{key}.{k}"), "nested sections are not supported"));
                        }
                    }
                }
                _ if SECTIONS[0].1.contains(&key.as_str()) => {}
                _ => return Err(ConfigError::new(key, "unknown key")),
            }
        }
        Ok(RawConfig { table, base: None })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("<file>", format!("cannot read {}: {e}", path.display())))?;
        let mut raw = Self::parse(&text)?;
        raw.base = path.parent().map(Path::to_path_buf);
        Ok(raw)
    }

    /// Applies `section.key=value` (or `key=value` for top-level keys).
    pub fn apply_override(&mut self, spec: &str) -> Result<(), ConfigError> {
        let (path, value) = spec.split_once('=').ok_or_else(|| ConfigError::new(spec, "override must be key=value"))?;
        let path = path.trim();
        let (section, key) = path.split_once('.').unwrap_or(("", path));
        let parsed = parse_override_value(value.trim());
        // validate by round-tripping through the key check in `parse`
        let mut probe = Table::new();
        if section.is_empty() {
            probe.insert(key.to_string(), parsed.clone());
        } else {
            let mut inner = Table::new();
            inner.insert(key.to_string(), parsed.clone());
            probe.insert(section.to_string(), Value::Table(inner));
        }
        RawConfig::parse(&probe.to_string()).map_err(|e| ConfigError::new(path, e.message))?;
        if section.is_empty() {
            self.table.insert(key.to_string(), parsed);
        } else {
            let entry = self.table.entry(section.to_string()).or_insert_with(|| Value::Table(Table::new()));
            if let Value::Table(t) = entry {
                t.insert(key.to_string(), parsed);
            }
        }
        Ok(())
    }

    fn get(&self, section: &str, key: &str) -> Option<&Value> {
        if section.is_empty() {
            self.table.get(key)
        } else {
            self.table.get(section)?.as_table()?.get(key)
        }
    }

    fn has_section(&self, section: &str) -> bool {
        self.table.get(section).is_some()
    }
}

/// Override values may omit TOML quoting: `2`, `1e-3,2e-3`, `random_bv`.
fn parse_override_value(s: &str) -> Value {
    let as_toml = |t: &str| -> Option<Value> {
        let table: Table = format!("v = {t}").parse().ok()?;
        table.get("v").cloned()
    };
    if let Some(v) = as_toml(s) {
        return v;
    }
    if s.contains(',') {
        if let Some(v) = as_toml(&format!("[{s}]")) {
            return v;
        }
    }
    Value::String(s.to_string())
}

struct Reader<'a> {
    raw: &'a RawConfig,
    section: &'static str,
}

impl Reader<'_> {
    fn path(&self, key: &str) -> String {
        if self.section.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.section)
        }
    }

    fn value(&self, key: &str) -> Option<&Value> {
        self.raw.get(self.section, key)
    }

    fn float_opt(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.value(key).map(|v| as_f64(v).ok_or_else(|| self.err(key, "expected a number"))).transpose()
    }

    fn float(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.float_opt(key)?.unwrap_or(default))
    }

    fn uint_opt(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        self.value(key)
            .map(|v| match v {
                Value::Integer(i) if *i >= 0 => Ok(*i as u64),
                _ => Err(self.err(key, "expected a non-negative integer")),
            })
            .transpose()
    }

    fn uint(&self, key: &str, default: u64) -> Result<u64, ConfigError> {
        Ok(self.uint_opt(key)?.unwrap_or(default))
    }

    fn string(&self, key: &str) -> Result<Option<String>, ConfigError> {
        self.value(key)
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| self.err(key, "expected a string")))
            .transpose()
    }

    fn boolean(&self, key: &str, default: bool) -> Result<bool, ConfigError> {
        self.value(key)
            .map(|v| v.as_bool().ok_or_else(|| self.err(key, "expected true or false")))
            .transpose()
            .map(|b| b.unwrap_or(default))
    }

    fn floats(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        match self.value(key) {
            None => Ok(vec![]),
            Some(Value::Array(items)) => {
                items.iter().map(|v| as_f64(v).ok_or_else(|| self.err(key, "expected a list of numbers"))).collect()
            }
            Some(v) => as_f64(v).map(|f| vec![f]).ok_or_else(|| self.err(key, "expected a list of numbers")),
        }
    }

    fn range(&self, key: &str) -> Result<Option<(f64, f64)>, ConfigError> {
        if self.value(key).is_none() {
            return Ok(None);
        }
        match self.floats(key)?.as_slice() {
            &[lo, hi] if lo <= hi => Ok(Some((lo, hi))),
            _ => Err(self.err(key, "expected [lo, hi] with lo <= hi")),
        }
    }

    fn err(&self, key: &str, msg: impl Into<String>) -> ConfigError {
        ConfigError::new(self.path(key), msg)
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Float(f) => Some(*f),
        Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

impl ExperimentConfig {
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        Self::from_raw(&RawConfig::parse(text)?)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        let top = Reader { raw, section: "" };
        let experiment = top
            .string("experiment")?
            .ok_or_else(|| ConfigError::new("experiment", "missing"))?
            .parse::<Experiment>()
            .map_err(|e| ConfigError::new("experiment", e))?;
        let seed = top.uint("seed", 0)?;
        let output_dir = top.string("output_dir")?.map(PathBuf::from);
        let timing = top.boolean("timing", false)?;

        let m = Reader { raw, section: "model" };
        let model = ModelConfig {
            a_inf: m.float("a_inf", 1.0)?,
            epsilon: m.float("epsilon", 0.0)?,
            tau2: m.float("tau2", 0.0)?,
            b0: m.float("b0", 0.0)?,
            delta: m.float("delta", 1e-3)?,
            budget: m.float("budget", 0.05)?,
        };
        if !(model.a_inf > 0.0 && model.a_inf.is_finite()) {
            return Err(m.err("a_inf", "must be positive"));
        }
        for (key, val) in [("epsilon", model.epsilon), ("tau2", model.tau2), ("budget", model.budget)] {
            if !(val >= 0.0 && val.is_finite()) {
                return Err(m.err(key, "must be non-negative"));
            }
        }
        if !(model.b0 <= 0.0 && model.b0.is_finite()) {
            return Err(m.err("b0", "the wall slope must be non-positive"));
        }
        if !(model.delta.abs() < 1.0) {
            return Err(m.err("delta", "must lie in (-1, 1)"));
        }

        let s = Reader { raw, section: "scheme" };
        let nu = s.uint("nu", 10)?;
        let nu_ref = s.uint("nu_ref", 0)?;
        for (key, val) in [("nu", nu), ("nu_ref", nu_ref)] {
            if val > 40 {
                return Err(s.err(key, "must be at most 40"));
            }
        }
        if nu == 0 {
            return Err(s.err("nu", "must be positive"));
        }
        let scheme = SchemeConfig {
            nu: nu as u32,
            nu_ref: nu_ref as u32,
            kappa: s.float("kappa", 1.0)?,
            varrho: s.float_opt("varrho")?,
            max_fronts: s.uint("max_fronts", 200_000)? as usize,
            functional_h: s.float("functional_h", 1e-3)?,
            functional_samples: s.uint("functional_samples", 16)? as usize,
        };
        if !(scheme.kappa > 0.0) {
            return Err(s.err("kappa", "must be positive"));
        }
        if scheme.varrho.is_some_and(|r| !(r > 0.0)) {
            return Err(s.err("varrho", "must be positive"));
        }
        if !(scheme.functional_h > 0.0) || scheme.functional_samples == 0 {
            return Err(s.err("functional_h", "step and sample count must be positive"));
        }

        let initial_data = if raw.has_section("initial_data") { Some(read_initial_data(raw)?) } else { None };

        let w = Reader { raw, section: "sweep" };
        let sweep = SweepConfig {
            epsilon: w.floats("epsilon")?,
            tau2: w.floats("tau2")?,
            mu: w.floats("mu")?,
            x: w.floats("x")?,
            nu: w
                .floats("nu")?
                .into_iter()
                .map(|n| if (1.0..=40.0).contains(&n) && n.fract() == 0.0 { Ok(n as u32) } else { Err(w.err("nu", "expected integers in 1..=40")) })
                .collect::<Result<_, _>>()?,
            a_inf: w.floats("a_inf")?,
            delta: w.floats("delta")?,
            eps_ratio: w.float("eps_ratio", 1.0)?,
            tau_ratio: w.float("tau_ratio", 0.5)?,
        };
        for (key, list) in [("epsilon", &sweep.epsilon), ("tau2", &sweep.tau2), ("mu", &sweep.mu), ("delta", &sweep.delta)] {
            if list.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(w.err(key, "entries must be non-negative"));
            }
        }
        if sweep.x.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(w.err("x", "entries must be positive"));
        }
        if sweep.a_inf.iter().any(|v| !(*v > 0.0)) {
            return Err(w.err("a_inf", "entries must be positive"));
        }

        let acceptance = if raw.has_section("acceptance") {
            let a = Reader { raw, section: "acceptance" };
            Some(AcceptanceConfig {
                eps_coefficient: a.float_opt("eps_coefficient")?,
                tau2_coefficient: a.float_opt("tau2_coefficient")?,
                rel_tol: a.float("rel_tol", 0.1)?,
                slope: a.range("slope")?,
                u_slope: a.range("u_slope")?,
                x_slope_max: a.float_opt("x_slope_max")?,
            })
        } else {
            None
        };

        let cfg = ExperimentConfig { experiment, seed, output_dir, timing, model, scheme, initial_data, sweep, acceptance };
        cfg.check_requirements()?;
        Ok(cfg)
    }

    fn check_requirements(&self) -> Result<(), ConfigError> {
        let need = |cond: bool, field: &str, msg: &str| if cond { Ok(()) } else { Err(ConfigError::new(field, msg)) };
        if self.experiment.needs_initial_data() {
            need(self.initial_data.is_some(), "initial_data", "required by this experiment")?;
        }
        let sw = &self.sweep;
        match self.experiment {
            Experiment::OptimalRate => {
                need(!sw.epsilon.is_empty() || !sw.tau2.is_empty(), "sweep.epsilon", "an epsilon or tau2 sweep is required")?;
                need(!sw.x.is_empty(), "sweep.x", "list must be non-empty")?;
                need(self.model.b0 == 0.0, "model.b0", "the optimal-rate problem uses a flat wall")?;
            }
            Experiment::GlobalRate => {
                need(!sw.mu.is_empty(), "sweep.mu", "list must be non-empty")?;
                need(!sw.x.is_empty(), "sweep.x", "list must be non-empty")?;
                need(self.scheme.nu_ref > 0, "scheme.nu_ref", "a reference resolution is required")?;
            }
            Experiment::FrontTrackingRun => need(!sw.x.is_empty(), "sweep.x", "list must be non-empty")?,
            Experiment::RiemannSingle => {
                need(!sw.x.is_empty(), "sweep.x", "list must be non-empty")?;
                need(
                    matches!(
                        self.initial_data,
                        Some(InitialDataSpec::Riemann { .. } | InitialDataSpec::BoundaryRiemann { .. })
                    ),
                    "initial_data.name",
                    "riemann_single takes riemann or boundary_riemann data",
                )?;
            }
            Experiment::AsymptoticChecks => {
                need(sw.delta.len() >= 2, "sweep.delta", "a ladder of at least two values is required")?;
                need(sw.delta.iter().all(|&d| d > 0.0), "sweep.delta", "entries must be positive")?;
            }
            Experiment::SemigroupCheck => {
                need(!sw.x.is_empty(), "sweep.x", "list must be non-empty")?;
                need(!sw.nu.is_empty(), "sweep.nu", "list of reference resolutions must be non-empty")?;
            }
        }
        Ok(())
    }

    /// The resolved configuration in the input format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |v: &[f64]| format!("[{}]", v.iter().map(|x| fmt_f(*x)).collect::<Vec<_>>().join(", "));
        let _ = writeln!(out, "experiment = \"{}\"", self.experiment);
        let _ = writeln!(out, "seed = {}", self.seed);
        if let Some(d) = &self.output_dir {
            let _ = writeln!(out, "output_dir = {:?}", d.display().to_string());
        }
        let _ = writeln!(out, "timing = {}", self.timing);
        let m = &self.model;
        let _ = writeln!(out, "\n[model]");
        for (k, v) in [("a_inf", m.a_inf), ("epsilon", m.epsilon), ("tau2", m.tau2), ("b0", m.b0), ("delta", m.delta), ("budget", m.budget)] {
            let _ = writeln!(out, "{k} = {}", fmt_f(v));
        }
        let s = &self.scheme;
        let _ = writeln!(out, "\n[scheme]\nnu = {}\nnu_ref = {}\nkappa = {}", s.nu, s.nu_ref, fmt_f(s.kappa));
        if let Some(r) = s.varrho {
            let _ = writeln!(out, "varrho = {}", fmt_f(r));
        }
        let _ = writeln!(
            out,
            "max_fronts = {}\nfunctional_h = {}\nfunctional_samples = {}",
            s.max_fronts,
            fmt_f(s.functional_h),
            s.functional_samples
        );
        if let Some(d) = &self.initial_data {
            let _ = writeln!(out, "\n[initial_data]");
            match d {
                InitialDataSpec::Riemann { left, right, y0 } => {
                    let _ = writeln!(
                        out,
                        "name = \"riemann\"\nrho_l = {}\nv_l = {}\nrho_r = {}\nv_r = {}\ny0 = {}",
                        fmt_f(left.0),
                        fmt_f(left.1),
                        fmt_f(right.0),
                        fmt_f(right.1),
                        fmt_f(*y0)
                    );
                }
                InitialDataSpec::BoundaryRiemann { state } => {
                    let _ = writeln!(out, "name = \"boundary_riemann\"\nrho_l = {}\nv_l = {}", fmt_f(state.0), fmt_f(state.1));
                }
                InitialDataSpec::NWave { amplitude, pieces, y_lo, y_hi } => {
                    let _ = writeln!(
                        out,
                        "name = \"n_wave\"\namplitude = {}\npieces = {pieces}\ny_lo = {}\ny_hi = {}",
                        fmt_f(*amplitude),
                        fmt_f(*y_lo),
                        fmt_f(*y_hi)
                    );
                }
                InitialDataSpec::RandomBv { tv, pieces, seed, y_lo, y_hi } => {
                    let _ = writeln!(out, "name = \"random_bv\"\ntv = {}\npieces = {pieces}", fmt_f(*tv));
                    if let Some(sd) = seed {
                        let _ = writeln!(out, "seed = {sd}");
                    }
                    let _ = writeln!(out, "y_lo = {}\ny_hi = {}", fmt_f(*y_lo), fmt_f(*y_hi));
                }
                InitialDataSpec::Table(p) => {
                    let _ = writeln!(out, "path = {:?}", p.display().to_string());
                }
            }
        }
        let w = &self.sweep;
        let _ = writeln!(out, "\n[sweep]");
        for (k, v) in [("epsilon", &w.epsilon), ("tau2", &w.tau2), ("mu", &w.mu), ("x", &w.x), ("a_inf", &w.a_inf), ("delta", &w.delta)] {
            if !v.is_empty() {
                let _ = writeln!(out, "{k} = {}", list(v));
            }
        }
        if !w.nu.is_empty() {
            let nus: Vec<String> = w.nu.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "nu = [{}]", nus.join(", "));
        }
        let _ = writeln!(out, "eps_ratio = {}\ntau_ratio = {}", fmt_f(w.eps_ratio), fmt_f(w.tau_ratio));
        if let Some(a) = &self.acceptance {
            let _ = writeln!(out, "\n[acceptance]\nrel_tol = {}", fmt_f(a.rel_tol));
            for (k, v) in [("eps_coefficient", a.eps_coefficient), ("tau2_coefficient", a.tau2_coefficient), ("x_slope_max", a.x_slope_max)] {
                if let Some(v) = v {
                    let _ = writeln!(out, "{k} = {}", fmt_f(v));
                }
            }
            for (k, v) in [("slope", a.slope), ("u_slope", a.u_slope)] {
                if let Some((lo, hi)) = v {
                    let _ = writeln!(out, "{k} = [{}, {}]", fmt_f(lo), fmt_f(hi));
                }
            }
        }
        out
    }
}

/// Shortest round-trip form that still reads back as a TOML float.
pub fn fmt_f(x: f64) -> String {
    let s = format!("{x:?}");
    if s.contains(['.', 'e', 'i', 'N']) {
        s
    } else {
        format!("{s}.0")
    }
}

fn read_initial_data(raw: &RawConfig) -> Result<InitialDataSpec, ConfigError> {
    let r = Reader { raw, section: "initial_data" };
    if let Some(path) = r.string("path")? {
        let mut p = PathBuf::from(&path);
        if p.is_relative() {
            if let Some(base) = &raw.base {
                p = base.join(p);
            }
        }
        if !p.is_file() {
            return Err(r.err("path", format!("file not found: {}", p.display())));
        }
        return Ok(InitialDataSpec::Table(p));
    }
    let name = r.string("name")?.ok_or_else(|| r.err("name", "missing (or give a path)"))?;
    let pieces = |default: u64| -> Result<usize, ConfigError> {
        match r.uint("pieces", default)? {
            0 => Err(r.err("pieces", "must be positive")),
            n if n > 100_000 => Err(r.err("pieces", "too many pieces")),
            n => Ok(n as usize),
        }
    };
    let window = |lo: f64, hi: f64| -> Result<(f64, f64), ConfigError> {
        let (lo, hi) = (r.float("y_lo", lo)?, r.float("y_hi", hi)?);
        if lo < hi && hi.is_finite() && lo.is_finite() {
            Ok((lo, hi))
        } else {
            Err(r.err("y_lo", "need y_lo < y_hi"))
        }
    };
    match name.as_str() {
        "riemann" => Ok(InitialDataSpec::Riemann {
            left: (r.float("rho_l", 1.0)?, r.float("v_l", 0.0)?),
            right: (r.float("rho_r", 1.0)?, r.float("v_r", 0.0)?),
            y0: r.float("y0", -1.0)?,
        }),
        "boundary_riemann" => Ok(InitialDataSpec::BoundaryRiemann { state: (r.float("rho_l", 1.0)?, r.float("v_l", 0.0)?) }),
        "n_wave" => {
            let (y_lo, y_hi) = window(-1.5, -0.5)?;
            Ok(InitialDataSpec::NWave { amplitude: r.float("amplitude", 0.1)?, pieces: pieces(8)?, y_lo, y_hi })
        }
        "random_bv" => {
            let tv = r.float("tv", 0.5)?;
            if !(tv > 0.0 && tv.is_finite()) {
                return Err(r.err("tv", "must be positive"));
            }
            let (y_lo, y_hi) = window(-2.0, -0.5)?;
            Ok(InitialDataSpec::RandomBv { tv, pieces: pieces(20)?, seed: r.uint_opt("seed")?, y_lo, y_hi })
        }
        other => Err(r.err("name", format!("unknown initial data '{other}'"))),
    }
}
