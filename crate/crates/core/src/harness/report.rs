use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Counterexamples kept per check; the rest are only counted.
pub const MAX_WITNESSES_PER_CHECK: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

/// One (group, subgroup) instance of a suite.
#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub group: String,
    pub order: usize,
    pub subgroup: Vec<usize>,
    pub core_free: bool,
    pub mode: Mode,
    pub verdict: Verdict,
    pub counts: BTreeMap<&'static str, u64>,
}

/// A replayable failure: the group table in `.cay` form, the subgroup and
/// the transversal representatives, plus the check that broke.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub group: String,
    pub group_table: String,
    pub subgroup: Vec<usize>,
    pub reps: Option<Vec<usize>>,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub max_order: usize,
    pub max_transversals: u128,
    pub sample: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool_version: &'static str,
    pub experiment: String,
    /// Whether counterexamples fail the suite.
    pub asserted: bool,
    pub passed: bool,
    pub config: RunConfig,
    /// Seed actually used, present when some instance was sampled.
    pub sampling_seed: Option<u64>,
    pub totals: BTreeMap<&'static str, u64>,
    pub instances: Vec<Instance>,
    /// Number of failures per check, including those without a stored witness.
    pub failures: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(experiment: &str, config: RunConfig) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            experiment: experiment.into(),
            asserted: true,
            passed: true,
            config,
            sampling_seed: None,
            totals: BTreeMap::new(),
            instances: Vec::new(),
            failures: BTreeMap::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, instance: Instance, counterexamples: Vec<Counterexample>) {
        for (k, v) in &instance.counts {
            *self.totals.entry(k).or_default() += v;
        }
        if instance.mode == Mode::Sampled {
            self.sampling_seed = Some(self.config.seed);
        }
        self.instances.push(instance);
        for cx in counterexamples {
            self.add_counterexample(cx);
        }
    }

    pub fn add_counterexample(&mut self, cx: Counterexample) {
        let seen = self.failures.entry(cx.check.clone()).or_default();
        *seen += 1;
        if *seen <= MAX_WITNESSES_PER_CHECK {
            self.counterexamples.push(cx);
        }
    }

    /// Sets `passed` from the failure counts.
    pub fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty();
        self
    }

    pub fn total(&self, key: &str) -> u64 {
        self.totals.get(key).copied().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "== {} ({} instances, {} failures): {}",
            self.experiment,
            self.instances.len(),
            self.failures.values().sum::<u64>(),
            if self.passed { "PASS" } else { "FAIL" }
        );
        for inst in &self.instances {
            let counts: Vec<String> = inst
                .counts
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(
                out,
                "  {:<10} |G|={:<3} |H|={:<3} core_free={:<5} {:<10} {:<7} {}",
                inst.group,
                inst.order,
                if inst.subgroup.is_empty() {
                    "-".to_string()
                } else {
                    inst.subgroup.len().to_string()
                },
                inst.core_free,
                format!("{:?}", inst.mode).to_lowercase(),
                format!("{:?}", inst.verdict).to_lowercase(),
                counts.join(" ")
            );
        }
        if !self.totals.is_empty() {
            let totals: Vec<String> = self
                .totals
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(out, "  totals: {}", totals.join(" "));
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        for (check, n) in &self.failures {
            let _ = writeln!(out, "  failed {n}x: {check}");
        }
        for cx in &self.counterexamples {
            let _ = writeln!(
                out,
                "  COUNTEREXAMPLE {} H={:?} reps={:?}: {}: {}",
                cx.group, cx.subgroup, cx.reps, cx.check, cx.detail
            );
        }
        out
    }
}

/// Several suites run together.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub schema: u32,
    pub tool_version: &'static str,
    pub passed: bool,
    pub suites: Vec<VerificationReport>,
}

impl ReportBundle {
    pub fn new(suites: Vec<VerificationReport>) -> Self {
        ReportBundle {
            schema: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            passed: suites.iter().all(|s| s.passed || !s.asserted),
            suites,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&s.to_text());
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{:<18} {:>9} {:>9}  verdict",
            "suite", "instances", "failures"
        );
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<18} {:>9} {:>9}  {}",
                s.experiment,
                s.instances.len(),
                s.failures.values().sum::<u64>(),
                if s.passed { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.passed { "PASS" } else { "FAIL" }
        );
        out
    }
}
