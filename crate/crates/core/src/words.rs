//! Nonrepetitive words.

use alloc::vec::Vec;

use crate::coloring::{run_randomized, ColoringError, ListAssignment, Outcome};
use crate::families::{generate, Family};
use crate::plane_graph::PlaneGraph;

/// First square `w[s..s+h] == w[s+h..s+2h]`, ordered by offset then by `h`.
///
/// Plain quadratic scan; this is the reference oracle for repetition logic.
pub fn is_nonrepetitive(w: &[u32]) -> Option<(usize, usize)> {
    let n = w.len();
    for s in 0..n {
        for h in 1..=(n - s) / 2 {
            if (0..h).all(|i| w[s + i] == w[s + h + i]) {
                return Some((s, h));
            }
        }
    }
    None
}

/// First `n` symbols of the fixed point of `1 -> 123, 2 -> 13, 3 -> 2`.
pub fn thue_ternary(n: usize) -> Vec<u32> {
    let mut w: Vec<u32> = Vec::with_capacity(n + 3);
    w.extend_from_slice(&[1, 2, 3]);
    // invariant: w is the image of w[..i]
    let mut i = 1;
    while w.len() < n {
        match w[i] {
            1 => w.extend_from_slice(&[1, 2, 3]),
            2 => w.extend_from_slice(&[1, 3]),
            _ => w.push(2),
        }
        i += 1;
    }
    w.truncate(n);
    w
}

/// Result of choosing one symbol per list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceOutcome {
    /// Chosen symbols; 0 where the run ended before a choice stuck.
    pub word: Vec<u32>,
    pub outcome: Outcome,
}

/// Picks a symbol from each list by running the colourer on a path with one
/// edge per list.
pub fn sequence_from_lists(
    lists: Vec<Vec<u32>>,
    seed: u64,
    max_steps: Option<usize>,
) -> Result<SequenceOutcome, ColoringError> {
    if lists.is_empty() {
        return Err(ColoringError::EmptyInput);
    }
    let n = lists.len() as u32;
    let lists = ListAssignment::new(lists)?;
    let g = PlaneGraph::build(generate(Family::Path(n + 1)).expect("n + 1 >= 2"))
        .expect("paths are plane graphs");
    let (outcome, _) = run_randomized(&g, &lists, seed, max_steps)?;
    Ok(SequenceOutcome {
        word: outcome.coloring.as_slice().to_vec(),
        outcome,
    })
}
