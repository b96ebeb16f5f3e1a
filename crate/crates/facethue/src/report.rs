//! Run reports.

use std::fmt::Write as _;

use facethue_core::Status;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Completed,
    Exhausted,
}

impl From<Status> for RunStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Completed => RunStatus::Completed,
            Status::Exhausted => RunStatus::Exhausted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub uncoloured: usize,
    pub list_violations: usize,
    pub repetitions: usize,
}

/// Summary of one `color` run, written as `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub graph: String,
    pub summary: GraphSummary,
    pub lists: String,
    pub k: usize,
    pub seed: u64,
    pub max_steps: Option<usize>,
    pub status: RunStatus,
    pub steps_used: usize,
    /// Steps that cancelled a repetition.
    pub repetitions: usize,
    /// Absent when the run did not complete.
    pub verification: Option<Verification>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn human(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph       {} (V={}, E={}, F={})",
            self.graph, s.vertices, s.edges, s.faces
        );
        let _ = writeln!(out, "lists       {} (k={})", self.lists, self.k);
        let _ = writeln!(out, "seed        {}", self.seed);
        if let Some(t) = self.max_steps {
            let _ = writeln!(out, "max steps   {t}");
        }
        let status = match self.status {
            RunStatus::Completed => "completed",
            RunStatus::Exhausted => "exhausted",
        };
        let _ = writeln!(out, "status      {status}");
        let _ = writeln!(out, "steps       {}", self.steps_used);
        let _ = writeln!(out, "repetitions {}", self.repetitions);
        let verified = match &self.verification {
            None => "not run".to_string(),
            Some(v) if v.valid => "yes".to_string(),
            Some(v) => format!(
                "NO ({} uncoloured, {} off-list, {} repetitive paths)",
                v.uncoloured, v.list_violations, v.repetitions
            ),
        };
        let _ = writeln!(out, "verified    {verified}");
        let _ = writeln!(out, "time        {:.3} ms", self.wall_time_ms);
        out
    }
}
