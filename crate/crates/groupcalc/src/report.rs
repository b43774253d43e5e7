//! Machine-readable run report.

use serde::Serialize;

use crate::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub seed: u64,
    pub mode: String,
    pub tolerances: Tolerances,
    pub suites: Vec<String>,
    pub scenarios: Vec<String>,
    /// Excluded from the determinism contract.
    pub wall_time_s: f64,
}

/// Values of the Heisenberg witness at the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub gamma_eta: f64,
    pub eta_gamma: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub suite: String,
    pub scenario: String,
    pub samples: usize,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub pass: bool,
    pub seed: u64,
    pub mode: String,
    /// Threshold applied to `max_abs_dev`, or to `max_rel_dev` for the oracle suite.
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub metadata: Metadata,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn entry(&self, suite: &str, scenario: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.suite == suite && e.scenario == scenario)
    }
}

impl Entry {
    /// One human-readable line.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<4} {:<10} {:<22} {:<5} n={:<4} abs={:.3e} rel={:.3e} tol={:.0e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.scenario,
            self.mode,
            self.samples,
            self.max_abs_dev,
            self.max_rel_dev,
            self.tolerance
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!(" [at e: DgDh={} DhDg={} defect={}]", w.gamma_eta, w.eta_gamma, w.defect));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!(" error: {e}"));
        }
        s
    }
}
