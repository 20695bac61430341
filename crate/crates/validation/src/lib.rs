//! Reporting harness for the acceptance target: one PASS/FAIL line per
//! criterion, with the reasons for every failed check listed beneath it.

use std::fmt::Display;
use std::time::{Duration, Instant};

#[derive(Debug)]
pub struct Criterion {
    id: String,
    title: String,
    started: Instant,
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    pub fn new(id: impl Display, title: &str) -> Self {
        Self {
            id: id.to_string(),
            title: title.to_string(),
            started: Instant::now(),
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one check; `detail` is only rendered when it fails.
    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
        ok
    }

    /// Records a computation error as a failed check.
    pub fn ok<T, E: Display>(&mut self, what: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => {
                self.checks += 1;
                Some(v)
            }
            Err(e) => {
                self.check(false, || format!("{what}: {e}"));
                None
            }
        }
    }

    /// Informational line that does not affect the verdict.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    /// Fails the criterion if it has run longer than `limit`.
    pub fn within(&mut self, what: &str, limit: Duration) {
        let t = self.elapsed();
        self.check(t <= limit, || {
            format!(
                "{what} took {:.2} s, limit {:.2} s",
                t.as_secs_f64(),
                limit.as_secs_f64()
            )
        });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    /// Prints the verdict line and details; returns whether it passed.
    pub fn finish(self) -> bool {
        let passed = self.passed();
        println!(
            "{} {:>3}  {}  [{} checks, {:.2} s]",
            if passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks,
            self.elapsed().as_secs_f64()
        );
        if self.checks == 0 {
            println!("          no checks ran");
        }
        for f in &self.failures {
            println!("          x {f}");
        }
        for n in &self.notes {
            println!("          - {n}");
        }
        passed
    }
}

/// Collects criterion verdicts and turns them into an exit code.
#[derive(Debug, Default)]
pub struct Suite {
    passed: Vec<String>,
    failed: Vec<String>,
}

impl Suite {
    pub fn record(&mut self, c: Criterion) {
        let id = c.id.clone();
        if c.finish() {
            self.passed.push(id);
        } else {
            self.failed.push(id);
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} passed, {} failed{}",
            self.passed.len(),
            self.failed.len(),
            if self.failed.is_empty() {
                String::new()
            } else {
                format!(" ({})", self.failed.join(", "))
            }
        )
    }

    pub fn all_passed(&self) -> bool {
        self.failed.is_empty()
    }
}
