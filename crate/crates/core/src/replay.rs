//! Recovering the input of a colouring run from its log.
//!
//! A log is the final colouring plus the record. The record alone fixes the
//! uncoloured set at the start of every step (forward pass). Walking the steps
//! backwards then restores the colouring before each step, and with it the
//! list position that must have been thrown.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::coloring::{Coloring, InputVector, ListAssignment, Record};
use crate::facial::{decode_path, FacialPath};
use crate::plane_graph::{EdgeId, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("corrupt record at step {step}: {reason}")]
    CorruptRecord { step: usize, reason: &'static str },
    #[error("inconsistent log at step {step}: {reason}")]
    InconsistentLog { step: usize, reason: &'static str },
}

/// The sets `J_1, ..., J_{t+1}`: `J_i` is the set of uncoloured edge
/// indices at the start of step `i`, and `J_{t+1}` the final one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoloredTrajectory {
    sets: Vec<BTreeSet<EdgeId>>,
    // decoded path of each step with a non-empty record entry
    paths: Vec<Option<FacialPath>>,
}

impl UncoloredTrajectory {
    /// `J_i` for 1-based `i` in `1..=t+1`.
    pub fn at(&self, i: usize) -> &BTreeSet<EdgeId> {
        &self.sets[i - 1]
    }

    pub fn sets(&self) -> &[BTreeSet<EdgeId>] {
        &self.sets
    }

    /// Edge examined at step `i` (1-based).
    pub fn edge_at(&self, i: usize) -> EdgeId {
        *self.sets[i - 1].first().expect("validated non-empty")
    }
}

/// Forward pass over the first `t` record entries.
pub fn reconstruct_uncolored_sets(
    g: &PlaneGraph,
    record: &Record,
    t: usize,
) -> Result<UncoloredTrajectory, ReplayError> {
    if t > record.len() {
        return Err(ReplayError::CorruptRecord {
            step: record.len() + 1,
            reason: "record is shorter than the requested number of steps",
        });
    }
    let mut j: BTreeSet<EdgeId> = g.edges().collect();
    let mut sets = Vec::with_capacity(t + 1);
    let mut paths = Vec::with_capacity(t);
    for (i, entry) in record.entries()[..t].iter().enumerate() {
        let step = i + 1;
        let Some(&edge) = j.first() else {
            return Err(ReplayError::CorruptRecord {
                step,
                reason: "every edge was already coloured",
            });
        };
        sets.push(j.clone());
        match entry {
            None => {
                j.remove(&edge);
                paths.push(None);
            }
            Some(d) => {
                let path = decode_path(g, edge, *d).map_err(|_| ReplayError::CorruptRecord {
                    step,
                    reason: "descriptor does not decode to a facial path",
                })?;
                for x in path.second_half() {
                    if *x != edge && j.contains(x) {
                        return Err(ReplayError::CorruptRecord {
                            step,
                            reason: "cancelled path contains an uncoloured edge",
                        });
                    }
                    j.insert(*x);
                }
                if path.edges[..path.len() / 2].iter().any(|x| j.contains(x)) {
                    return Err(ReplayError::CorruptRecord {
                        step,
                        reason: "cancelled path contains an uncoloured edge",
                    });
                }
                paths.push(Some(path));
            }
        }
    }
    sets.push(j);
    Ok(UncoloredTrajectory { sets, paths })
}

/// Recovers the unique input vector that produced `(coloring, record)`.
///
/// `t` must equal the number of executed steps; a record longer than `t`
/// is truncated first.
pub fn invert_log(
    g: &PlaneGraph,
    lists: &ListAssignment,
    coloring: &Coloring,
    record: &Record,
    t: usize,
) -> Result<InputVector, ReplayError> {
    if t == 0 {
        return Err(ReplayError::CorruptRecord {
            step: 0,
            reason: "a log covers at least one step",
        });
    }
    if coloring.len() != g.edge_count() {
        return Err(ReplayError::InconsistentLog {
            step: t,
            reason: "colouring does not cover every edge",
        });
    }
    let traj = reconstruct_uncolored_sets(g, record, t)?;
    let final_set = traj.at(t + 1);
    for e in g.edges() {
        if final_set.contains(&e) != (coloring.get(e) == 0) {
            return Err(ReplayError::InconsistentLog {
                step: t,
                reason: "final colouring disagrees with the uncoloured set implied by the record",
            });
        }
    }

    let mut c = coloring.clone();
    let mut p = vec![0u32; t];
    for i in (1..=t).rev() {
        let edge = traj.edge_at(i);
        let colour = match &traj.paths[i - 1] {
            None => {
                let col = c.get(edge);
                c.set(edge, 0);
                col
            }
            Some(path) => {
                let h = path.len() / 2;
                let q = path
                    .edges
                    .iter()
                    .position(|&x| x == edge)
                    .expect("decoded path contains its edge");
                for l in 0..h {
                    if c.get(path.edges[h + l]) != 0 || c.get(path.edges[l]) == 0 {
                        return Err(ReplayError::InconsistentLog {
                            step: i,
                            reason: "colours around the cancelled path do not fit",
                        });
                    }
                }
                let mirror = c.get(path.edges[q - h]);
                for l in 0..h {
                    if h + l != q {
                        c.set(path.edges[h + l], c.get(path.edges[l]));
                    }
                }
                mirror
            }
        };
        p[i - 1] = lists
            .position_of(edge, colour)
            .ok_or(ReplayError::InconsistentLog {
                step: i,
                reason: "restored colour is not in the edge's list",
            })?;
    }
    if c.coloured_count() != 0 {
        return Err(ReplayError::InconsistentLog {
            step: 1,
            reason: "colours remain before the first step",
        });
    }
    Ok(InputVector::new(p, lists.k()).expect("positions come from the lists"))
}
