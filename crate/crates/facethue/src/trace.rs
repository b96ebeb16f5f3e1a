//! Step traces.
//!
//! One line per step, `i j colour record`, where `j` is the 1-based edge
//! coloured in step `i` and `record` is `h,q,a,o` or `null`. Lines starting
//! with `#` are comments. The trace ends with `final c_1 ... c_m`, the
//! colouring after the last step (0 = uncoloured).
//!
//! ```text
//! # graph path:3
//! 1 1 3 null
//! 2 2 3 1,2,1,1
//! 3 2 4 null
//! final 3 4
//! ```

use std::fmt::Write as _;

use facethue_core::coloring::{Die, StepEvent};
use facethue_core::facial::PathDescriptor;
use facethue_core::plane_graph::EdgeId;
use facethue_core::replay::{invert_log, reconstruct_uncolored_sets, ReplayError};
use facethue_core::{
    run_deterministic, Colorer, Coloring, ColoringError, InputVector, ListAssignment, Outcome,
    PlaneGraph, Record,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("trace has no `final` line")]
    MissingFinal,
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("trace disagrees with its own replay: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// Comment lines without the leading `# `.
    pub header: Vec<String>,
    pub steps: Vec<StepEvent>,
    pub final_coloring: Coloring,
}

impl Trace {
    pub fn record(&self) -> Record {
        Record::from_entries(self.steps.iter().map(|s| s.repetition).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "# {h}");
        }
        for s in &self.steps {
            let rec = match s.repetition {
                Some(d) => d.to_string(),
                None => "null".into(),
            };
            let _ = writeln!(out, "{} {} {} {}", s.step, s.edge.label(), s.colour, rec);
        }
        out.push_str("final");
        for c in self.final_coloring.as_slice() {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Trace, TraceError> {
        let mut header = Vec::new();
        let mut steps = Vec::new();
        let mut final_coloring = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let bad = |reason: String| TraceError::Syntax { line, reason };
            let l = raw.trim();
            if l.is_empty() {
                continue;
            }
            if let Some(c) = l.strip_prefix('#') {
                header.push(c.trim().to_string());
                continue;
            }
            if final_coloring.is_some() {
                return Err(bad("content after the `final` line".into()));
            }
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields[0] == "final" {
                let colours = fields[1..]
                    .iter()
                    .map(|f| {
                        f.parse::<u32>()
                            .map_err(|_| bad(format!("bad colour `{f}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                final_coloring = Some(Coloring::from_vec(colours));
                continue;
            }
            if fields.len() != 4 {
                return Err(bad(format!("expected 4 fields, found {}", fields.len())));
            }
            let num = |f: &str| {
                f.parse::<u32>()
                    .map_err(|_| bad(format!("bad number `{f}`")))
            };
            let step = num(fields[0])? as usize;
            if step != steps.len() + 1 {
                return Err(bad(format!("step {step} out of sequence")));
            }
            let edge = EdgeId::from_label(num(fields[1])?).ok_or_else(|| bad("edge 0".into()))?;
            let colour = num(fields[2])?;
            let repetition = parse_descriptor(fields[3]).map_err(bad)?;
            steps.push(StepEvent {
                step,
                edge,
                colour,
                repetition,
            });
        }
        Ok(Trace {
            header,
            steps,
            final_coloring: final_coloring.ok_or(TraceError::MissingFinal)?,
        })
    }
}

fn parse_descriptor(s: &str) -> Result<Option<PathDescriptor>, String> {
    if s == "null" {
        return Ok(None);
    }
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad record `{s}`"))?;
    let [h, q, a, o] = parts[..] else {
        return Err(format!("record `{s}` needs four fields"));
    };
    if a > 2 || o > 2 {
        return Err(format!("record `{s}`: a and o are 1 or 2"));
    }
    PathDescriptor::from_raw(h, q, a as u8, o as u8)
        .map(Some)
        .map_err(|e| e.to_string())
}

/// A randomized run that keeps every step event.
#[derive(Debug, Clone)]
pub struct TracedRun {
    pub outcome: Outcome,
    pub input: InputVector,
    pub trace: Trace,
}

/// Same draws and result as [`facethue_core::run_randomized`], plus the trace.
pub fn traced_run(
    g: &PlaneGraph,
    lists: &ListAssignment,
    seed: u64,
    max_steps: Option<usize>,
    header: Vec<String>,
) -> Result<TracedRun, ColoringError> {
    if max_steps == Some(0) {
        return Err(ColoringError::EmptyInput);
    }
    let mut colorer = Colorer::new(g, lists)?;
    let mut die = Die::new(seed, lists.k());
    let mut consumed = Vec::new();
    let mut steps = Vec::new();
    while !colorer.is_complete() && max_steps.is_none_or(|t| consumed.len() < t) {
        let p = die.throw();
        consumed.push(p);
        steps.extend(colorer.step(p));
    }
    let outcome = colorer.into_outcome();
    let input = InputVector::new(consumed, lists.k())?;
    let trace = Trace {
        header,
        steps,
        final_coloring: outcome.coloring.clone(),
    };
    Ok(TracedRun {
        outcome,
        input,
        trace,
    })
}

/// Recovers the input behind a trace and checks that re-running it
/// reproduces every line.
pub fn replay_trace(
    g: &PlaneGraph,
    lists: &ListAssignment,
    trace: &Trace,
) -> Result<InputVector, TraceError> {
    let t = trace.steps.len();
    let record = trace.record();
    if trace.final_coloring.len() != g.edge_count() {
        return Err(TraceError::Mismatch(format!(
            "final colouring has {} entries for {} edges",
            trace.final_coloring.len(),
            g.edge_count()
        )));
    }
    let traj = reconstruct_uncolored_sets(g, &record, t)?;
    for (i, s) in trace.steps.iter().enumerate() {
        if traj.edge_at(i + 1) != s.edge {
            return Err(ReplayError::CorruptRecord {
                step: i + 1,
                reason: "edge column disagrees with the record",
            }
            .into());
        }
    }
    let input = invert_log(g, lists, &trace.final_coloring, &record, t)?;
    let rerun =
        run_deterministic(g, lists, &input).map_err(|e| TraceError::Mismatch(e.to_string()))?;
    if rerun.coloring != trace.final_coloring || rerun.record != record {
        return Err(TraceError::Mismatch("re-run differs from the trace".into()));
    }
    for (s, &p) in trace.steps.iter().zip(input.entries()) {
        if lists.colour_at(s.edge, p) != s.colour {
            return Err(TraceError::Mismatch(format!(
                "step {}: colour column disagrees with the recovered input",
                s.step
            )));
        }
    }
    Ok(input)
}
