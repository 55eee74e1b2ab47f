//! Pass/fail bookkeeping for the acceptance run. Each criterion is a list
//! of sub-checks and passes when all of them do.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub detail: String,
    pub passed: bool,
}

impl Check {
    pub fn flag(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { label: label.into(), detail: detail.into(), passed }
    }

    /// `lo <= value <= hi`; NaN fails.
    pub fn within(label: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self::flag(label, value >= lo && value <= hi, format!("{value:.6} in [{lo}, {hi}]"))
    }

    pub fn below(label: impl Into<String>, value: f64, max: f64) -> Self {
        Self::flag(label, value < max, format!("{value:.3e} < {max:.1e}"))
    }

    pub fn at_least(label: impl Into<String>, value: f64, min: f64) -> Self {
        Self::flag(label, value >= min, format!("{value:.6} >= {min}"))
    }

    /// `|value / target - 1| <= rel`.
    pub fn relative(label: impl Into<String>, value: f64, target: f64, rel: f64) -> Self {
        let dev = (value / target - 1.0).abs();
        Self::flag(label, dev <= rel, format!("{value:.6e} vs {target} (rel. dev. {dev:.3e}, tol {rel})"))
    }
}

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// One status line followed by an indented line per sub-check.
    pub fn render(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let mut out = format!("criterion {:>2} {status}  {} ({} checks, {failed} failed)\n", self.id, self.title, self.checks.len());
        for c in &self.checks {
            let _ = writeln!(out, "    [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.label, c.detail);
        }
        out
    }
}

#[derive(Debug, Default)]
pub struct Report {
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn push(&mut self, c: Criterion) {
        self.criteria.push(c);
    }

    pub fn failed(&self) -> Vec<u32> {
        self.criteria.iter().filter(|c| !c.passed()).map(|c| c.id).collect()
    }

    pub fn summary(&self) -> String {
        let failed = self.failed();
        let passed = self.criteria.len() - failed.len();
        if failed.is_empty() {
            format!("acceptance: {passed}/{} criteria passed", self.criteria.len())
        } else {
            format!("acceptance: {passed}/{} criteria passed; failed: {failed:?}", self.criteria.len())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_or_nan_criteria_fail() {
        let c = Criterion { id: 1, title: "t".into(), checks: vec![] };
        assert!(!c.passed());
        assert!(!Check::within("x", f64::NAN, 0.0, 1.0).passed);
        assert!(Check::relative("r", 1.05, 1.0, 0.1).passed);
        assert!(!Check::relative("r", 1.2, 1.0, 0.1).passed);
    }

    #[test]
    fn report_lists_failures() {
        let mut r = Report::default();
        r.push(Criterion { id: 1, title: "a".into(), checks: vec![Check::flag("x", true, "")] });
        r.push(Criterion { id: 2, title: "b".into(), checks: vec![Check::below("y", 2.0, 1.0)] });
        assert_eq!(r.failed(), vec![2]);
        assert!(r.criteria[1].render().starts_with("criterion  2 FAIL"));
    }
}
