use std::fmt;
use std::time::Duration;

use qftqr::numerics::format_real;

#[derive(Debug, Clone)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Metric {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

/// Parameters, metrics and verdict of one subcommand run.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub subcommand: String,
    pub params: Vec<(String, String)>,
    pub metrics: Vec<Metric>,
    pub notes: Vec<(String, String)>,
    pub elapsed: Option<Duration>,
}

impl RunReport {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.to_owned(),
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_owned(), value.to_string()));
    }

    pub fn metric(&mut self, name: &str, value: f64, tolerance: f64) {
        self.metrics.push(Metric {
            name: name.to_owned(),
            value,
            tolerance,
        });
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_owned(), value.to_string()));
    }

    /// Pass iff every metric is within its tolerance. NaN never passes.
    pub fn passed(&self) -> bool {
        self.metrics.iter().all(Metric::passed)
    }

    pub fn max_error(&self) -> f64 {
        self.metrics.iter().map(|m| m.value).fold(0.0, f64::max)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subcommand: {}", self.subcommand)?;
        for (k, v) in &self.params {
            writeln!(f, "param {k}: {v}")?;
        }
        for m in &self.metrics {
            writeln!(
                f,
                "metric {}: {} <= {} {}",
                m.name,
                format_real(m.value),
                format_real(m.tolerance),
                if m.passed() { "pass" } else { "FAIL" }
            )?;
        }
        for (k, v) in &self.notes {
            writeln!(f, "{k}: {v}")?;
        }
        if !self.metrics.is_empty() {
            writeln!(f, "max_error: {}", format_real(self.max_error()))?;
        }
        if let Some(e) = self.elapsed {
            writeln!(f, "elapsed_ms: {:.3}", e.as_secs_f64() * 1e3)?;
        }
        writeln!(
            f,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}
