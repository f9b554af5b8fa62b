//! Verification results with counterexample witnesses, and their JSON form.

use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Counterexamples kept per check unless overridden.
pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub instances: u64,
    /// Total failing instances; `counterexamples` holds at most the cap.
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub ms: u64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn skipped(id: impl Into<String>, note: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: Status::Skipped,
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
            note: Some(note.into()),
            ms: 0,
        }
    }
}

/// Accumulates instances of one identity.
pub struct CheckBuilder {
    id: String,
    cap: usize,
    instances: u64,
    failures: u64,
    counterexamples: Vec<Counterexample>,
    note: Option<String>,
    started: Instant,
}

impl CheckBuilder {
    pub fn new(id: impl Into<String>, cap: usize) -> Self {
        CheckBuilder {
            id: id.into(),
            cap: cap.max(1),
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
            note: None,
            started: Instant::now(),
        }
    }

    /// Records one instance. The witness closure only runs on failure.
    pub fn record<F>(&mut self, ok: bool, witness: F)
    where
        F: FnOnce() -> Counterexample,
    {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < self.cap {
                self.counterexamples.push(witness());
            }
        }
    }

    /// Records an equality between two values rendered by `render`.
    pub fn expect_eq<T, R, I>(&mut self, lhs: T, rhs: T, render: R, inputs: I)
    where
        T: PartialEq + Copy,
        R: Fn(T) -> String,
        I: FnOnce() -> String,
    {
        let ok = lhs == rhs;
        self.record(ok, || Counterexample {
            inputs: inputs(),
            lhs: render(lhs),
            rhs: render(rhs),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    pub fn finish(self) -> Check {
        Check {
            id: self.id,
            status: if self.counterexamples.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            instances: self.instances,
            failures: self.failures,
            counterexamples: self.counterexamples,
            note: self.note,
            ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub spec: String,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub group: GroupInfo,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, spec: impl Into<String>, order: usize) -> Self {
        VerificationReport {
            subject: subject.into(),
            group: GroupInfo {
                spec: spec.into(),
                order,
            },
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Copy with every timing field zeroed.
    pub fn canonical(&self) -> VerificationReport {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.ms = 0;
        }
        out
    }

    /// One summary line followed by one line per failing check.
    pub fn render_text(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let instances: u64 = self.checks.iter().map(|c| c.instances).sum();
        let mut out = format!(
            "{verdict} {} [{} checks, {instances} instances]\n",
            self.subject,
            self.checks.len()
        );
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        for c in self.failed_checks() {
            out.push_str(&format!(
                "  fail {}: {}/{} instances\n",
                c.id, c.failures, c.instances
            ));
            for w in &c.counterexamples {
                out.push_str(&format!("    {}: {} != {}\n", w.inputs, w.lhs, w.rhs));
            }
        }
        out
    }

    /// Every check on its own line.
    pub fn render_detailed(&self) -> String {
        let mut out = self.render_text();
        out.push_str("  checks:\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("    {status:4} {:40} {:>8}", c.id, c.instances));
            if let Some(note) = &c.note {
                out.push_str(&format!("  ({note})"));
            }
            out.push('\n');
        }
        out
    }
}

/// Canonical JSON for a batch of reports: timings zeroed, pretty-printed.
pub fn canonical_json(reports: &[VerificationReport]) -> String {
    let canon: Vec<VerificationReport> =
        reports.iter().map(VerificationReport::canonical).collect();
    serde_json::to_string_pretty(&canon).expect("reports serialize")
}
