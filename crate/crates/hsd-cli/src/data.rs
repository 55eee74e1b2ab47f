//! Built-in initial data and breakpoint tables.

use std::path::Path;

use hsd_core::front_tracking::Profile;
use hsd_core::{ModelParams, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::InitialDataSpec;
use crate::error::ConfigError;

/// Far-field state shared by every generator.
pub const FREE_STREAM: State = State { rho: 1.0, v: 0.0 };

fn admissible(field: &str, values: &[State], p: &ModelParams) -> Result<(), ConfigError> {
    match values.iter().find(|u| !(u.rho > 0.0 && p.bounds.contains(**u))) {
        Some(u) => Err(ConfigError::new(field, format!("state ({}, {}) leaves the admissible domain", u.rho, u.v))),
        None => Ok(()),
    }
}

/// Two states split at `y0`.
pub fn riemann(left: State, right: State, y0: f64) -> Profile {
    Profile { x: 0.0, breakpoints: vec![y0], values: vec![left, right] }
}

/// `rho = 1` with alternating `v = +amplitude, -amplitude, ...` on `pieces`
/// equal cells of `[y_lo, y_hi]`, free stream outside.
pub fn n_wave(amplitude: f64, pieces: usize, y_lo: f64, y_hi: f64) -> Profile {
    let breakpoints = (0..=pieces).map(|i| y_lo + (y_hi - y_lo) * i as f64 / pieces as f64).collect();
    let mut values = vec![FREE_STREAM];
    values.extend((0..pieces).map(|k| State::new(1.0, if k % 2 == 0 { amplitude } else { -amplitude })));
    values.push(FREE_STREAM);
    Profile { x: 0.0, breakpoints, values }
}

/// Seeded datum with `pieces` interior cells on `[y_lo, y_hi]` and total
/// variation `tv`. The `pieces + 1` jumps are drawn uniformly, centred so
/// that they sum to zero (both tails are the free stream) and scaled to the
/// budget.
pub fn random_bv(tv: f64, pieces: usize, seed: u64, y_lo: f64, y_hi: f64) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jumps: Vec<(f64, f64)> = (0..=pieces).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let n = jumps.len() as f64;
    let (mr, mv) = jumps.iter().fold((0.0, 0.0), |acc, j| (acc.0 + j.0, acc.1 + j.1));
    for j in &mut jumps {
        j.0 -= mr / n;
        j.1 -= mv / n;
    }
    let raw: f64 = jumps.iter().map(|j| j.0.abs() + j.1.abs()).sum();
    let scale = tv / raw;
    let mut values = vec![FREE_STREAM];
    for j in &jumps[..pieces] {
        let last = values[values.len() - 1];
        values.push(State::new(last.rho + j.0 * scale, last.v + j.1 * scale));
    }
    values.push(FREE_STREAM);
    let breakpoints = (0..=pieces).map(|i| y_lo + (y_hi - y_lo) * i as f64 / pieces as f64).collect();
    Profile { x: 0.0, breakpoints, values }
}

/// Reads `breakpoint,rho,v` rows (header optional); the first row gives the
/// left tail and its breakpoint must be `-inf`.
pub fn read_table(path: &Path) -> Result<Profile, ConfigError> {
    let field = "initial_data.path";
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new(field, format!("{}: {e}", path.display())))?;
    let mut breakpoints = vec![];
    let mut values = vec![];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("breakpoint") {
            continue;
        }
        let cols: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ConfigError::new(field, format!("line {}: expected three numbers", i + 1)))?;
        let &[y, rho, v] = cols.as_slice() else {
            return Err(ConfigError::new(field, format!("line {}: expected three columns", i + 1)));
        };
        if values.is_empty() {
            if y != f64::NEG_INFINITY {
                return Err(ConfigError::new(field, "the first row must have breakpoint -inf"));
            }
        } else {
            breakpoints.push(y);
        }
        values.push(State::new(rho, v));
    }
    if values.is_empty() {
        return Err(ConfigError::new(field, "empty table"));
    }
    Profile::new(0.0, breakpoints, values).map_err(|e| ConfigError::new(field, e.to_string()))
}

/// Builds the initial profile at `x = 0`. `seed` is used by `random_bv`
/// when the data section does not fix its own.
pub fn builtin_initial_data(spec: &InitialDataSpec, seed: u64, p: &ModelParams) -> Result<Profile, ConfigError> {
    let prof = match spec {
        InitialDataSpec::Riemann { left, right, y0 } => {
            let wall = 0.0;
            if *y0 >= wall {
                return Err(ConfigError::new("initial_data.y0", "the jump must lie left of the wall"));
            }
            riemann(State::new(left.0, left.1), State::new(right.0, right.1), *y0)
        }
        InitialDataSpec::BoundaryRiemann { state } => Profile::constant(0.0, State::new(state.0, state.1)),
        InitialDataSpec::NWave { amplitude, pieces, y_lo, y_hi } => {
            if *y_hi >= 0.0 {
                return Err(ConfigError::new("initial_data.y_hi", "support must lie left of the wall"));
            }
            n_wave(*amplitude, *pieces, *y_lo, *y_hi)
        }
        InitialDataSpec::RandomBv { tv, pieces, seed: own, y_lo, y_hi } => {
            if *y_hi >= 0.0 {
                return Err(ConfigError::new("initial_data.y_hi", "support must lie left of the wall"));
            }
            let prof = random_bv(*tv, *pieces, own.unwrap_or(seed), *y_lo, *y_hi);
            admissible("initial_data.tv", &prof.values, p).map_err(|e| {
                ConfigError::new(e.field, format!("budget {tv} is incompatible with the domain: {}", e.message))
            })?;
            prof
        }
        InitialDataSpec::Table(path) => read_table(path)?,
    };
    admissible("initial_data", &prof.values, p)?;
    Ok(prof)
}
