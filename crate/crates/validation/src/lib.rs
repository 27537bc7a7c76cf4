//! Helpers for the acceptance run: verdict lines, epsilon ladders and
//! reproducible random Riemann data.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use riemann_limit::{Epsilon64, RiemannData64};

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{tag}] {}: {}", self.id, self.title, self.detail)
    }
}

/// Accumulates named sub-checks of a criterion; the criterion passes only if
/// every check does.
#[derive(Debug, Default)]
pub struct Checks {
    items: Vec<(bool, String)>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, ok: bool, detail: impl Into<String>) -> bool {
        self.items.push((ok, detail.into()));
        ok
    }

    pub fn pass(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|(ok, _)| *ok)
    }

    /// Failed checks first, each marked, joined by `; `.
    pub fn summary(&self) -> String {
        let mut parts: Vec<String> = self
            .items
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, d)| format!("NOT {d}"))
            .collect();
        parts.extend(self.items.iter().filter(|(ok, _)| *ok).map(|(_, d)| d.clone()));
        parts.join("; ")
    }
}

/// Runs `body` and turns panics or errors into a failing verdict.
pub fn evaluate<F>(id: u8, title: &'static str, body: F) -> Verdict
where
    F: FnOnce() -> Result<Checks, String>,
{
    let (pass, detail) = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(checks)) => (checks.pass(), checks.summary()),
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            (false, format!("panic: {msg}"))
        }
    };
    Verdict {
        id,
        title,
        pass,
        detail,
    }
}

/// `10^from, 10^(from-1), …, 10^to` for `from > to`.
pub fn eps_decades(from: i32, to: i32) -> Vec<Epsilon64> {
    (to..=from)
        .rev()
        .map(|k| Epsilon64::new(10f64.powi(k)).expect("positive"))
        .collect()
}

pub fn eps_values(v: &[f64]) -> Vec<Epsilon64> {
    v.iter().map(|&e| Epsilon64::new(e).expect("positive")).collect()
}

pub fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Seeded source of random Riemann data and pressure scales.
pub struct CaseGenerator {
    rng: StdRng,
}

impl CaseGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    /// Data with `u_l > u_r`, velocities in `[-2, 2]`, densities in `[0.2, 3]`.
    pub fn compressive(&mut self) -> RiemannData64 {
        let ul = self.rng.gen_range(-2.0..2.0);
        let jump = self.rng.gen_range(0.05..3.0);
        RiemannData64::from_values(ul, self.density(), ul - jump, self.density()).expect("positive densities")
    }

    /// Unrestricted data.
    pub fn any(&mut self) -> RiemannData64 {
        let ul = self.rng.gen_range(-3.0..3.0);
        let ur = self.rng.gen_range(-3.0..3.0);
        RiemannData64::from_values(ul, self.density(), ur, self.density()).expect("positive densities")
    }

    fn density(&mut self) -> f64 {
        self.rng.gen_range(0.2..3.0)
    }

    /// Log-uniform in `[1e-4, 0.3]`.
    pub fn eps(&mut self) -> Epsilon64 {
        let e: f64 = self.rng.gen_range(-4.0..0.3f64.log10());
        Epsilon64::new(10f64.powf(e)).expect("positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decades_are_ordered() {
        let v: Vec<f64> = eps_decades(-1, -3).iter().map(|e| e.value()).collect();
        assert_eq!(v, vec![0.1, 0.01, 0.001]);
    }

    #[test]
    fn failed_checks_lead_the_summary() {
        let mut c = Checks::new();
        c.check(true, "a");
        c.check(false, "b");
        assert!(!c.pass());
        assert_eq!(c.summary(), "NOT b; a");
    }

    #[test]
    fn panics_become_failures() {
        let v = evaluate(1, "t", || panic!("boom"));
        assert!(!v.pass);
        assert!(v.to_string().contains("[FAIL]"));
    }

    #[test]
    fn generator_is_reproducible() {
        let (mut a, mut b) = (CaseGenerator::new(7), CaseGenerator::new(7));
        for _ in 0..10 {
            assert_eq!(a.compressive(), b.compressive());
            assert_eq!(a.eps().value(), b.eps().value());
        }
    }
}
