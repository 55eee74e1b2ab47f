//! Event-driven wave-front tracking on the wedge `y < b0 * x`.
//!
//! Fronts are straight segments in the `(x, y)` plane. Interactions are
//! resolved with the accurate solver (exact Riemann solve, rarefactions
//! split into fans) or the simplified solver (waves cross unchanged and the
//! mismatch travels as a non-physical front at speed `lambda_hat`).

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::riemann::{solve_boundary, solve_strengths, NULL_LOG_STRENGTH};
use crate::wave_curves::{
    eigenvalue, shock_state_and_speed, wave_state, Family, ModelParams, State, WaveDescriptor, WaveKind,
};

/// Non-physical fronts smaller than this are dropped.
pub const NP_ELIDE: f64 = 1e-14;
const MAX_EVENTS: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub nu: u32,
    /// Simplified solver threshold on `|alpha - 1| |beta - 1|`.
    pub varrho: f64,
    pub lambda_hat: f64,
    /// Cap on speed perturbations, `2^-nu`.
    pub speed_perturb: f64,
    pub max_fronts: usize,
    /// Fan splitting constant.
    pub kappa: f64,
}

impl SchemeParams {
    /// Defaults: `varrho = 2^-nu`, `kappa = 1` and `lambda_hat` above every
    /// characteristic and wall speed over the model's domain bounds.
    pub fn new(nu: u32, p: &ModelParams) -> Self {
        let two_nu = 0.5f64.powi(nu as i32);
        let lambda_hat = p.bounds.v_max + (1.0 + 10.0 * p.mu_norm()) / p.a_inf + 1.0 + p.b0.abs();
        SchemeParams { nu, varrho: two_nu, lambda_hat, speed_perturb: two_nu, max_fronts: 200_000, kappa: 1.0 }
    }

    fn nudge(&self, id: u64) -> f64 {
        (id % 1024) as f64 * 0.5f64.powi(self.nu as i32 + 20)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrontFamily {
    One,
    Two,
    NonPhysical,
}

impl From<Family> for FrontFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::One => FrontFamily::One,
            Family::Two => FrontFamily::Two,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrontKind {
    Shock,
    RarefactionFan,
    NonPhysical,
}

impl FrontKind {
    pub fn label(self) -> &'static str {
        match self {
            FrontKind::Shock => "shock",
            FrontKind::RarefactionFan => "rarefaction",
            FrontKind::NonPhysical => "nonphysical",
        }
    }
}

impl FrontFamily {
    pub fn label(self) -> &'static str {
        match self {
            FrontFamily::One => "1",
            FrontFamily::Two => "2",
            FrontFamily::NonPhysical => "np",
        }
    }

    fn physical(self) -> Option<Family> {
        match self {
            FrontFamily::One => Some(Family::One),
            FrontFamily::Two => Some(Family::Two),
            FrontFamily::NonPhysical => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Front {
    pub id: u64,
    pub family: FrontFamily,
    pub kind: FrontKind,
    /// Density ratio for physical fronts, sup-norm jump for non-physical ones.
    pub strength: f64,
    pub x0: f64,
    pub y0: f64,
    pub speed: f64,
    pub left: State,
    pub right: State,
}

impl Front {
    pub fn y_at(&self, x: f64) -> f64 {
        self.y0 + self.speed * (x - self.x0)
    }

    pub fn is_physical(&self) -> bool {
        self.family != FrontFamily::NonPhysical
    }
}

/// Piecewise-constant function of `y` at fixed `x`; `values[0]` extends to
/// `-inf` and the last value reaches the wall.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub x: f64,
    pub breakpoints: Vec<f64>,
    pub values: Vec<State>,
}

impl Profile {
    pub fn constant(x: f64, u: State) -> Self {
        Profile { x, breakpoints: vec![], values: vec![u] }
    }

    pub fn new(x: f64, breakpoints: Vec<f64>, values: Vec<State>) -> Result<Self> {
        let p = Profile { x, breakpoints, values };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.breakpoints.len() + 1 {
            return Err(Error::Input(format!(
                "{} values for {} breakpoints",
                self.values.len(),
                self.breakpoints.len()
            )));
        }
        if self.breakpoints.windows(2).any(|w| !(w[0] < w[1])) || self.breakpoints.iter().any(|y| !y.is_finite()) {
            return Err(Error::Input("breakpoints must be finite and strictly increasing".into()));
        }
        if self.values.iter().any(|u| !(u.rho > 0.0 && u.rho.is_finite() && u.v.is_finite())) {
            return Err(Error::Input("profile values must have finite positive density".into()));
        }
        Ok(())
    }

    pub fn value_at(&self, y: f64) -> State {
        // right-continuous: a breakpoint belongs to the piece on its right
        let i = self.breakpoints.partition_point(|&b| b <= y);
        self.values[i]
    }

    /// Total variation, summing both components.
    pub fn tv(&self) -> f64 {
        self.values.windows(2).map(|w| w[0].dist_l1(&w[1])).sum()
    }

    /// `max |rho|, |v|` over all pieces.
    pub fn linf(&self) -> f64 {
        self.values.iter().map(|u| u.rho.abs().max(u.v.abs())).fold(0.0, f64::max)
    }

    pub fn boundary_value(&self) -> State {
        *self.values.last().unwrap()
    }

    /// Shifts every breakpoint by `dy`.
    pub fn shifted(&self, dy: f64) -> Profile {
        Profile { x: self.x, breakpoints: self.breakpoints.iter().map(|b| b + dy).collect(), values: self.values.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Initial,
    InitialBoundary,
    Accurate,
    Simplified,
    NonPhysicalCrossing,
    Boundary,
    BoundaryNonPhysical,
}

impl EventKind {
    pub fn label(self) -> &'static str {
        match self {
            EventKind::Initial => "initial",
            EventKind::InitialBoundary => "initial_boundary",
            EventKind::Accurate => "ars",
            EventKind::Simplified => "srs",
            EventKind::NonPhysicalCrossing => "np_cross",
            EventKind::Boundary => "boundary",
            EventKind::BoundaryNonPhysical => "boundary_np",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub x: f64,
    pub y: f64,
    pub kind: EventKind,
    pub in_strengths: Vec<f64>,
    pub out_strengths: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventLog {
    pub events: Vec<Event>,
}

fn join(v: &[f64]) -> String {
    v.iter().map(|s| format!("{s:e}")).collect::<Vec<_>>().join(";")
}

impl EventLog {
    /// One `x,y,event_type,in_strengths,out_strengths` record per line;
    /// strength lists are `;`-separated.
    pub fn to_text(&self) -> String {
        let mut out = String::from("x,y,event_type,in_strengths,out_strengths\n");
        for e in &self.events {
            let _ = writeln!(out, "{:e},{:e},{},{},{}", e.x, e.y, e.kind.label(), join(&e.in_strengths), join(&e.out_strengths));
        }
        out
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
    pub family: FrontFamily,
    pub kind: FrontKind,
    pub strength: f64,
}

pub fn wave_diagram_text(segments: &[Segment]) -> String {
    let mut out = String::from("x0,y0,x1,y1,family,kind,strength\n");
    for s in segments {
        let _ = writeln!(
            out,
            "{:e},{:e},{:e},{:e},{},{},{:e}",
            s.x0,
            s.y0,
            s.x1,
            s.y1,
            s.family.label(),
            s.kind.label(),
            s.strength
        );
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FrontCounts {
    pub shocks: usize,
    pub rarefactions: usize,
    pub nonphysical: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub tv: f64,
    pub linf: f64,
    pub counts: FrontCounts,
    pub np_total_strength: f64,
    /// Largest `|alpha - 1|` over rarefaction fronts.
    pub max_raref_strength: f64,
}

/// Diagnostics of a profile together with the fronts that carry it.
pub fn diagnostics(prof: &Profile, fronts: &[Front]) -> Diagnostics {
    let mut counts = FrontCounts::default();
    let mut np = 0.0;
    let mut raref: f64 = 0.0;
    for f in fronts {
        match f.kind {
            FrontKind::Shock => counts.shocks += 1,
            FrontKind::RarefactionFan => {
                counts.rarefactions += 1;
                raref = raref.max((f.strength - 1.0).abs());
            }
            FrontKind::NonPhysical => {
                counts.nonphysical += 1;
                np += f.strength;
            }
        }
    }
    Diagnostics { tv: prof.tv(), linf: prof.linf(), counts, np_total_strength: np, max_raref_strength: raref }
}

/// Running maxima over every event of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub tv0: f64,
    pub max_tv: f64,
    pub max_raref_strength: f64,
    pub max_np_total: f64,
    pub max_fronts: usize,
    pub events: usize,
    /// Total size of non-physical fronts absorbed by the wall.
    pub np_absorbed: f64,
}

/// Builds fronts from a point; owns the id counter.
struct Emitter<'a> {
    p: &'a ModelParams,
    sp: &'a SchemeParams,
    next_id: u64,
    nudge: bool,
}

impl Emitter<'_> {
    fn id(&mut self) -> u64 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn physical(&mut self, family: Family, kind: FrontKind, strength: f64, speed: f64, l: State, r: State, at: (f64, f64)) -> Front {
        let id = self.id();
        let speed = if self.nudge { speed + self.sp.nudge(id) } else { speed };
        Front { id, family: family.into(), kind, strength, x0: at.0, y0: at.1, speed, left: l, right: r }
    }

    /// Fronts for one elementary wave; rarefactions are split so that every
    /// piece has `|alpha_piece - 1| < 1 / nu`.
    fn wave(&mut self, family: Family, alpha: f64, ul: State, at: (f64, f64), out: &mut Vec<Front>) -> Result<State> {
        let la = (alpha - 1.0).ln_1p();
        if la.abs() <= NULL_LOG_STRENGTH {
            return Ok(ul);
        }
        match WaveDescriptor::classify(family, alpha).kind {
            WaveKind::Shock => {
                let (ur, sigma) = shock_state_and_speed(family, alpha, ul, self.p)?;
                let f = self.physical(family, FrontKind::Shock, alpha, sigma, ul, ur, at);
                out.push(f);
                Ok(ur)
            }
            WaveKind::Rarefaction => {
                let nu = self.sp.nu as f64;
                let mut m = ((la.abs() * nu * self.sp.kappa).ceil() as usize).max(1);
                while (la / m as f64).exp_m1().abs() >= 1.0 / nu {
                    m += 1;
                }
                let piece = (la / m as f64).exp();
                let mut cur = ul;
                for _ in 0..m {
                    let next = wave_state(family, piece, cur, self.p)?;
                    let speed = eigenvalue(family, next, self.p)?;
                    let f = self.physical(family, FrontKind::RarefactionFan, piece, speed, cur, next, at);
                    out.push(f);
                    cur = next;
                }
                Ok(cur)
            }
        }
    }

    fn nonphysical(&mut self, l: State, r: State, at: (f64, f64), out: &mut Vec<Front>) {
        let size = l.dist_inf(&r);
        if size < NP_ELIDE {
            return;
        }
        let id = self.id();
        out.push(Front {
            id,
            family: FrontFamily::NonPhysical,
            kind: FrontKind::NonPhysical,
            strength: size,
            x0: at.0,
            y0: at.1,
            speed: self.sp.lambda_hat,
            left: l,
            right: r,
        });
    }

    /// Accurate solver for the interior problem `(ul, ur)`.
    fn accurate(&mut self, ul: State, ur: State, at: (f64, f64)) -> Result<Vec<Front>> {
        let mut out = vec![];
        if ul == ur {
            return Ok(out);
        }
        let (a1, a2) = solve_strengths(ul, ur, self.p)?;
        let um = self.wave(Family::One, a1, ul, at, &mut out)?;
        self.wave(Family::Two, a2, um, at, &mut out)?;
        close_to(&mut out, ur);
        Ok(out)
    }

    fn boundary(&mut self, ul: State, at: (f64, f64)) -> Result<Vec<Front>> {
        let fan = solve_boundary(ul, self.p)?;
        let mut out = vec![];
        if let Some(w) = fan.waves.first() {
            self.wave(Family::One, w.wave.alpha, ul, at, &mut out)?;
        }
        Ok(out)
    }

    /// Simplified solver: the incoming physical fronts `a` (left) and `b`
    /// (right) keep their strengths; the mismatch with `b.right` becomes
    /// one non-physical front.
    fn simplified(&mut self, a: &Front, b: &Front, at: (f64, f64)) -> Result<Vec<Front>> {
        let (fa, fb) = (a.family.physical().unwrap(), b.family.physical().unwrap());
        let mut out = vec![];
        let end = if fa == fb {
            let merged = a.strength * b.strength;
            self.wave(fa, merged, a.left, at, &mut out)?
        } else {
            // the left one is the faster 2-front; after crossing the order is 1 then 2
            let (first, second) = if fa == Family::Two { (b, a) } else { (a, b) };
            let um = self.re_anchor(first, a.left, at, &mut out)?;
            self.re_anchor(second, um, at, &mut out)?
        };
        self.nonphysical(end, b.right, at, &mut out);
        close_to(&mut out, b.right);
        Ok(out)
    }

    /// A copy of the physical front `f` with unchanged strength issued from `ul`.
    fn re_anchor(&mut self, f: &Front, ul: State, at: (f64, f64), out: &mut Vec<Front>) -> Result<State> {
        let family = f.family.physical().unwrap();
        let ur = wave_state(family, f.strength, ul, self.p)?;
        let speed = match f.kind {
            FrontKind::Shock => shock_state_and_speed(family, f.strength, ul, self.p)?.1,
            _ => eigenvalue(family, ur, self.p)?,
        };
        let kind = f.kind;
        out.push(self.physical(family, kind, f.strength, speed, ul, ur, at));
        Ok(ur)
    }

    /// Non-physical front `a` meeting the physical front `b` on its right.
    fn np_crossing(&mut self, a: &Front, b: &Front, at: (f64, f64)) -> Result<Vec<Front>> {
        let mut out = vec![];
        let end = self.re_anchor(b, a.left, at, &mut out)?;
        self.nonphysical(end, b.right, at, &mut out);
        close_to(&mut out, b.right);
        Ok(out)
    }
}

/// Makes the last emitted front end exactly on `ur`.
fn close_to(out: &mut [Front], ur: State) {
    if let Some(last) = out.last_mut() {
        last.right = ur;
    }
}

pub fn accurate_solver(ul: State, ur: State, p: &ModelParams, sp: &SchemeParams) -> Result<Vec<Front>> {
    Emitter { p, sp, next_id: 0, nudge: false }.accurate(ul, ur, (0.0, 0.0))
}

/// Simplified solver for the incoming pair `(left, right)` meeting at the origin.
pub fn simplified_solver(left: &Front, right: &Front, p: &ModelParams, sp: &SchemeParams) -> Result<Vec<Front>> {
    let mut em = Emitter { p, sp, next_id: 0, nudge: false };
    match (left.is_physical(), right.is_physical()) {
        (true, true) => em.simplified(left, right, (0.0, 0.0)),
        (false, true) => em.np_crossing(left, right, (0.0, 0.0)),
        _ => Err(Error::Input("simplified solver needs a physical front on the right".into())),
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    x: f64,
    y: f64,
    id: u64,
    /// Index of the left front; `None` for a wall hit by the last front.
    pair: Option<usize>,
}

fn cmp_candidates(a: &Candidate, b: &Candidate) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)).then(a.id.cmp(&b.id))
}

/// Owns the fronts of one run.
#[derive(Debug, Clone)]
pub struct FrontTracker {
    p: ModelParams,
    sp: SchemeParams,
    x: f64,
    left_state: State,
    fronts: Vec<Front>,
    next_id: u64,
    log: EventLog,
    segments: Vec<Segment>,
    stats: RunStats,
}

impl FrontTracker {
    /// Resolves every jump of `prof` and the wall corner at `x = prof.x`.
    pub fn new(prof: &Profile, p: &ModelParams, sp: &SchemeParams) -> Result<Self> {
        prof.validate()?;
        let wall = p.b0 * prof.x;
        if prof.breakpoints.last().is_some_and(|&b| b >= wall) {
            return Err(Error::Input(format!("breakpoint beyond the wall y = {wall}")));
        }
        let mut t = FrontTracker {
            p: *p,
            sp: *sp,
            x: prof.x,
            left_state: prof.values[0],
            fronts: vec![],
            next_id: 0,
            log: EventLog::default(),
            segments: vec![],
            stats: RunStats::default(),
        };
        let mut fronts = vec![];
        for (i, &y) in prof.breakpoints.iter().enumerate() {
            let (ul, ur) = (prof.values[i], prof.values[i + 1]);
            if ul == ur {
                continue;
            }
            let out = t.emitter(false, |em| em.accurate(ul, ur, (prof.x, y)))?;
            t.log_event(prof.x, y, EventKind::Initial, vec![], &out);
            fronts.extend(out);
        }
        let out = t.emitter(false, |em| em.boundary(prof.boundary_value(), (prof.x, wall)))?;
        t.log_event(prof.x, wall, EventKind::InitialBoundary, vec![], &out);
        fronts.extend(out);
        t.fronts = fronts;
        t.stats.tv0 = prof.tv();
        t.update_stats();
        Ok(t)
    }

    fn emitter<T>(&mut self, nudge: bool, f: impl FnOnce(&mut Emitter) -> Result<T>) -> Result<T> {
        let mut em = Emitter { p: &self.p, sp: &self.sp, next_id: self.next_id, nudge };
        let r = f(&mut em);
        self.next_id = em.next_id;
        r
    }

    fn log_event(&mut self, x: f64, y: f64, kind: EventKind, ins: Vec<f64>, outs: &[Front]) {
        self.log.events.push(Event { x, y, kind, in_strengths: ins, out_strengths: outs.iter().map(|f| f.strength).collect() });
    }

    fn update_stats(&mut self) {
        let mut tv = 0.0;
        let mut np = 0.0;
        for f in &self.fronts {
            tv += f.left.dist_l1(&f.right);
            match f.kind {
                FrontKind::RarefactionFan => {
                    self.stats.max_raref_strength = self.stats.max_raref_strength.max((f.strength - 1.0).abs());
                }
                FrontKind::NonPhysical => np += f.strength,
                FrontKind::Shock => {}
            }
        }
        self.stats.max_tv = self.stats.max_tv.max(tv);
        self.stats.max_np_total = self.stats.max_np_total.max(np);
        self.stats.max_fronts = self.stats.max_fronts.max(self.fronts.len());
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn fronts(&self) -> &[Front] {
        &self.fronts
    }

    pub fn log(&self) -> &EventLog {
        &self.log
    }

    pub fn stats(&self) -> RunStats {
        self.stats
    }

    pub fn params(&self) -> (&ModelParams, &SchemeParams) {
        (&self.p, &self.sp)
    }

    fn next_event(&self) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        let mut consider = |c: Candidate| {
            if best.as_ref().is_none_or(|b| cmp_candidates(&c, b) == Ordering::Less) {
                best = Some(c);
            }
        };
        for (i, w) in self.fronts.windows(2).enumerate() {
            let (a, b) = (&w[0], &w[1]);
            if a.speed <= b.speed {
                continue;
            }
            let xc = (b.y0 - a.y0 + a.speed * a.x0 - b.speed * b.x0) / (a.speed - b.speed);
            let xc = xc.max(self.x);
            consider(Candidate { x: xc, y: a.y_at(xc), id: a.id, pair: Some(i) });
        }
        if let Some(last) = self.fronts.last() {
            let b0 = self.p.b0;
            if last.speed > b0 {
                let xc = ((last.y0 - last.speed * last.x0) / (b0 - last.speed)).max(self.x);
                consider(Candidate { x: xc, y: b0 * xc, id: last.id, pair: None });
            }
        }
        best
    }

    fn close_segment(&mut self, f: &Front, x: f64) {
        self.segments.push(Segment {
            x0: f.x0,
            y0: f.y0,
            x1: x,
            y1: f.y_at(x),
            family: f.family,
            kind: f.kind,
            strength: f.strength,
        });
    }

    fn resolve(&mut self, c: Candidate) -> Result<()> {
        let at = (c.x, c.y);
        match c.pair {
            Some(i) => {
                let (a, b) = (self.fronts[i], self.fronts[i + 1]);
                let ins = vec![a.strength, b.strength];
                let (kind, out) = if !a.is_physical() {
                    (EventKind::NonPhysicalCrossing, self.emitter(true, |em| em.np_crossing(&a, &b, at))?)
                } else if !b.is_physical() {
                    return Err(Error::Scheduling(format!("physical front {} overtakes a non-physical one", a.id)));
                } else {
                    let product = (a.strength - 1.0).abs() * (b.strength - 1.0).abs();
                    let diverging_pair = a.family == FrontFamily::One && b.family == FrontFamily::Two;
                    let same_raref = a.family == b.family && a.kind == FrontKind::RarefactionFan && b.kind == FrontKind::RarefactionFan;
                    if product > self.sp.varrho || diverging_pair || same_raref {
                        (EventKind::Accurate, self.emitter(true, |em| em.accurate(a.left, b.right, at))?)
                    } else {
                        (EventKind::Simplified, self.emitter(true, |em| em.simplified(&a, &b, at))?)
                    }
                };
                self.close_segment(&a, c.x);
                self.close_segment(&b, c.x);
                self.log_event(c.x, c.y, kind, ins, &out);
                if out.is_empty() {
                    if let Some(next) = self.fronts.get_mut(i + 2) {
                        next.left = a.left;
                    }
                }
                self.fronts.splice(i..i + 2, out);
            }
            None => {
                let i = self.fronts.len() - 1;
                let f = self.fronts[i];
                // a non-physical front is absorbed by the wall without reflection
                let (kind, out) = if f.is_physical() {
                    (EventKind::Boundary, self.emitter(true, |em| em.boundary(f.left, at))?)
                } else {
                    self.stats.np_absorbed += f.strength;
                    (EventKind::BoundaryNonPhysical, vec![])
                };
                self.close_segment(&f, c.x);
                self.log_event(c.x, c.y, kind, vec![f.strength], &out);
                self.fronts.splice(i..i + 1, out);
            }
        }
        if self.fronts.len() > self.sp.max_fronts {
            return Err(Error::Blowup { count: self.fronts.len(), x: c.x });
        }
        self.stats.events += 1;
        self.update_stats();
        Ok(())
    }

    /// Advances to `x_target`, resolving every interaction strictly before it.
    pub fn advance(&mut self, x_target: f64) -> Result<()> {
        if x_target < self.x {
            return Err(Error::Input(format!("cannot go back from x = {} to {x_target}", self.x)));
        }
        let mut guard = 0usize;
        while let Some(c) = self.next_event() {
            if c.x >= x_target {
                break;
            }
            self.x = c.x;
            self.resolve(c)?;
            guard += 1;
            if guard > MAX_EVENTS {
                return Err(Error::Scheduling(format!("event budget exhausted at x = {}", self.x)));
            }
        }
        self.x = x_target;
        Ok(())
    }

    /// The trace at the current `x`.
    pub fn profile(&self) -> Profile {
        let x = self.x;
        let wall = self.p.b0 * x;
        let tol = 1e-13 * (1.0 + wall.abs());
        let mut bps: Vec<f64> = vec![];
        let mut vals = vec![self.left_state];
        for f in &self.fronts {
            let y = f.y_at(x);
            if y >= wall - tol {
                // a front sitting on the wall bounds an empty piece
                break;
            }
            match bps.last() {
                Some(&last) if y <= last + tol => {
                    *vals.last_mut().unwrap() = f.right;
                }
                _ => {
                    bps.push(y);
                    vals.push(f.right);
                }
            }
        }
        // drop breakpoints whose two sides coincide after merging
        let mut out_b = vec![];
        let mut out_v = vec![vals[0]];
        for (i, &b) in bps.iter().enumerate() {
            if vals[i + 1] != *out_v.last().unwrap() {
                out_b.push(b);
                out_v.push(vals[i + 1]);
            }
        }
        Profile { x, breakpoints: out_b, values: out_v }
    }

    pub fn diagnostics(&self) -> Diagnostics {
        diagnostics(&self.profile(), &self.fronts)
    }

    /// Finished segments plus the live fronts cut at the current `x`.
    pub fn wave_diagram(&self) -> Vec<Segment> {
        let mut segs = self.segments.clone();
        for f in &self.fronts {
            segs.push(Segment {
                x0: f.x0,
                y0: f.y0,
                x1: self.x,
                y1: f.y_at(self.x),
                family: f.family,
                kind: f.kind,
                strength: f.strength,
            });
        }
        segs
    }
}

/// Evolves `prof` to `x_target` and returns the trace and the event log.
pub fn evolve(prof: &Profile, x_target: f64, p: &ModelParams, sp: &SchemeParams) -> Result<(Profile, EventLog)> {
    let mut t = FrontTracker::new(prof, p, sp)?;
    t.advance(x_target)?;
    Ok((t.profile(), t.log.clone()))
}

/// Piecewise-constant approximation of `u0` on `[y_lo, y_hi]` (constant
/// outside) with L1 error at most `2^-nu`: midpoint sampling on a uniform
/// grid sized from a total-variation estimate, then merging of equal
/// neighbours. States are clamped into the domain bounds.
pub fn discretize_initial(
    u0: &dyn Fn(f64) -> State,
    y_lo: f64,
    y_hi: f64,
    x: f64,
    p: &ModelParams,
    sp: &SchemeParams,
) -> Result<Profile> {
    if !(y_lo < y_hi) || y_hi > p.b0 * x {
        return Err(Error::Input(format!("bad sampling interval [{y_lo}, {y_hi}]")));
    }
    let probe = 1 << 14;
    let dy = (y_hi - y_lo) / probe as f64;
    let mut tv = 0.0;
    let mut prev = u0(y_lo);
    for i in 1..=probe {
        let u = u0(y_lo + i as f64 * dy);
        tv += prev.dist_l1(&u);
        prev = u;
    }
    if !tv.is_finite() {
        return Err(Error::Input("total variation of the initial datum is not finite".into()));
    }
    let budget = 0.5f64.powi(sp.nu as i32);
    let n = if tv == 0.0 { 1 } else { ((y_hi - y_lo) * 2.0 * tv / budget).ceil().max(1.0) as usize };
    if n > 50_000_000 {
        return Err(Error::Input(format!("{n} cells needed for the L1 budget")));
    }
    let h = (y_hi - y_lo) / n as f64;
    let b = p.bounds;
    let clamp = |u: State| State::new(u.rho.clamp(b.rho_lo, b.rho_hi), u.v.clamp(-b.v_max, b.v_max));
    let mut bps = vec![];
    let mut vals = vec![clamp(u0(y_lo - 1.0))];
    for i in 0..n {
        let u = clamp(u0(y_lo + (i as f64 + 0.5) * h));
        if u != *vals.last().unwrap() {
            bps.push(y_lo + i as f64 * h);
            vals.push(u);
        }
    }
    let tail = clamp(u0(y_hi));
    if tail != *vals.last().unwrap() && y_hi < p.b0 * x {
        bps.push(y_hi);
        vals.push(tail);
    }
    Profile::new(x, bps, vals)
}
