//! The resampling colourer.
//!
//! [`Colorer`] is the deterministic core: it is fed one list position per
//! step and keeps the colouring, the set `J` of uncoloured edge indices and
//! the record. [`run_deterministic`] drives it from a fixed input vector and
//! [`run_randomized`] from a seeded die.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::facial::{PathDescriptor, RepetitionFinder};
use crate::plane_graph::{EdgeId, PlaneGraph};

/// Default list size.
pub const DEFAULT_K: usize = 12;
/// Largest supported list size.
pub const MAX_K: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("input vector is empty")]
    EmptyInput,
    #[error("list assignment covers {found} edges, graph has {expected}")]
    ListSizeMismatch { expected: usize, found: usize },
    #[error("list size k = {0} is outside 1..=64")]
    InvalidK(usize),
    #[error("list of {edge} is malformed: {reason}")]
    InvalidList { edge: EdgeId, reason: &'static str },
    #[error("input entry {index} = {value} is outside [1, {k}]")]
    PositionOutOfRange { index: usize, value: u32, k: usize },
}

/// Per-edge ordered lists of `k` distinct positive colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    k: usize,
    lists: Vec<Vec<u32>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self, ColoringError> {
        let k = lists.first().map_or(DEFAULT_K, Vec::len);
        if k == 0 || k > MAX_K {
            return Err(ColoringError::InvalidK(k));
        }
        for (i, list) in lists.iter().enumerate() {
            let edge = EdgeId(i as u32);
            if list.len() != k {
                return Err(ColoringError::InvalidList {
                    edge,
                    reason: "lists must all have the same size",
                });
            }
            if list.contains(&0) {
                return Err(ColoringError::InvalidList {
                    edge,
                    reason: "colour 0 is reserved for uncoloured edges",
                });
            }
            let distinct: BTreeSet<u32> = list.iter().copied().collect();
            if distinct.len() != k {
                return Err(ColoringError::InvalidList {
                    edge,
                    reason: "colours in a list must be distinct",
                });
            }
        }
        Ok(ListAssignment { k, lists })
    }

    /// `m` identical lists `1, 2, ..., k`.
    pub fn uniform(m: usize, k: usize) -> Result<Self, ColoringError> {
        if k == 0 || k > MAX_K {
            return Err(ColoringError::InvalidK(k));
        }
        Ok(ListAssignment {
            k,
            lists: vec![(1..=k as u32).collect(); m],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, e: EdgeId) -> &[u32] {
        &self.lists[e.index()]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    /// The `position`-th colour (1-based) of `L(e)`.
    pub fn colour_at(&self, e: EdgeId, position: u32) -> u32 {
        self.lists[e.index()][position as usize - 1]
    }

    /// 1-based position of `colour` in `L(e)`.
    pub fn position_of(&self, e: EdgeId, colour: u32) -> Option<u32> {
        self.lists[e.index()]
            .iter()
            .position(|&c| c == colour)
            .map(|p| p as u32 + 1)
    }
}

/// Edge colours; 0 means uncoloured.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<u32>);

impl Coloring {
    pub fn uncoloured(m: usize) -> Self {
        Coloring(vec![0; m])
    }

    pub fn from_vec(colours: Vec<u32>) -> Self {
        Coloring(colours)
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> u32 {
        self.0[e.index()]
    }

    #[inline]
    pub fn set(&mut self, e: EdgeId, colour: u32) {
        self.0[e.index()] = colour;
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coloured_count(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }
}

/// The die throws `(p_1, ..., p_t)`, each a 1-based list position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InputVector(Vec<u32>);

impl InputVector {
    pub fn new(entries: Vec<u32>, k: usize) -> Result<Self, ColoringError> {
        if entries.is_empty() {
            return Err(ColoringError::EmptyInput);
        }
        if let Some((index, &value)) = entries
            .iter()
            .enumerate()
            .find(|&(_, &p)| p == 0 || p as usize > k)
        {
            return Err(ColoringError::PositionOutOfRange { index, value, k });
        }
        Ok(InputVector(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One entry per executed step: the cancelled path's descriptor, or `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Record(Vec<Option<PathDescriptor>>);

impl Record {
    pub fn from_entries(entries: Vec<Option<PathDescriptor>>) -> Self {
        Record(entries)
    }

    pub fn entries(&self) -> &[Option<PathDescriptor>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The record over `[1, t]`, with empty entries after the executed steps.
    pub fn padded(&self, t: usize) -> Vec<Option<PathDescriptor>> {
        let mut v = self.0.clone();
        v.resize(t.max(v.len()), None);
        v
    }

    pub fn truncated(&self, steps: usize) -> Record {
        Record(self.0[..steps.min(self.0.len())].to_vec())
    }

    pub fn repetition_count(&self) -> usize {
        self.0.iter().filter(|r| r.is_some()).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Completed,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub coloring: Coloring,
    pub record: Record,
    pub steps_used: usize,
    /// Final `J`, in increasing order.
    pub uncoloured: Vec<EdgeId>,
}

/// What happened in one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepEvent {
    /// 1-based step index.
    pub step: usize,
    pub edge: EdgeId,
    pub colour: u32,
    pub repetition: Option<PathDescriptor>,
}

/// State of one execution of the colouring loop.
#[derive(Debug, Clone)]
pub struct Colorer<'a> {
    graph: &'a PlaneGraph,
    lists: &'a ListAssignment,
    finder: RepetitionFinder,
    coloring: Coloring,
    pending: BTreeSet<EdgeId>,
    record: Vec<Option<PathDescriptor>>,
}

impl<'a> Colorer<'a> {
    pub fn new(graph: &'a PlaneGraph, lists: &'a ListAssignment) -> Result<Self, ColoringError> {
        if lists.len() != graph.edge_count() {
            return Err(ColoringError::ListSizeMismatch {
                expected: graph.edge_count(),
                found: lists.len(),
            });
        }
        Ok(Colorer {
            graph,
            lists,
            finder: RepetitionFinder::new(graph),
            coloring: Coloring::uncoloured(graph.edge_count()),
            pending: graph.edges().collect(),
            record: Vec::new(),
        })
    }

    pub fn is_complete(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn steps(&self) -> usize {
        self.record.len()
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn pending(&self) -> &BTreeSet<EdgeId> {
        &self.pending
    }

    /// The edge the next step will colour (`min J`).
    pub fn next_edge(&self) -> Option<EdgeId> {
        self.pending.first().copied()
    }

    /// Colours `min J` with the `position`-th colour of its list and cancels
    /// the second half of the preferred repetition, if one appears.
    ///
    /// Returns `None` once every edge is coloured.
    pub fn step(&mut self, position: u32) -> Option<StepEvent> {
        let edge = self.next_edge()?;
        let colour = self.lists.colour_at(edge, position);
        self.coloring.set(edge, colour);
        let repetition = self.finder.find(self.graph, &self.coloring, edge);
        match repetition {
            Some(d) => {
                let path = crate::facial::decode_path(self.graph, edge, d)
                    .expect("found descriptors always decode");
                for &x in path.second_half() {
                    self.coloring.set(x, 0);
                    self.pending.insert(x);
                }
            }
            None => {
                self.pending.remove(&edge);
            }
        }
        self.record.push(repetition);
        Some(StepEvent {
            step: self.record.len(),
            edge,
            colour,
            repetition,
        })
    }

    pub fn into_outcome(self) -> Outcome {
        Outcome {
            status: if self.pending.is_empty() {
                Status::Completed
            } else {
                Status::Exhausted
            },
            steps_used: self.record.len(),
            coloring: self.coloring,
            record: Record(self.record),
            uncoloured: self.pending.into_iter().collect(),
        }
    }
}

/// Runs the colouring loop on a fixed input vector, stopping early once
/// every edge is coloured.
pub fn run_deterministic(
    graph: &PlaneGraph,
    lists: &ListAssignment,
    input: &InputVector,
) -> Result<Outcome, ColoringError> {
    if input.is_empty() {
        return Err(ColoringError::EmptyInput);
    }
    if let Some((index, &value)) = input
        .entries()
        .iter()
        .enumerate()
        .find(|&(_, &p)| p as usize > lists.k())
    {
        return Err(ColoringError::PositionOutOfRange {
            index,
            value,
            k: lists.k(),
        });
    }
    let mut colorer = Colorer::new(graph, lists)?;
    for &p in input.entries() {
        if colorer.step(p).is_none() {
            break;
        }
    }
    Ok(colorer.into_outcome())
}

/// Seeded uniform source of list positions.
///
/// ChaCha8 seeded with `seed_from_u64(seed)`; each throw takes 32-bit words
/// and rejects those above the largest multiple of `k`, then maps `x` to
/// `x % k + 1`.
#[derive(Debug, Clone)]
pub struct Die {
    rng: ChaCha8Rng,
    k: u32,
    zone: u32,
}

impl Die {
    pub fn new(seed: u64, k: usize) -> Self {
        let k = k as u32;
        Die {
            rng: ChaCha8Rng::seed_from_u64(seed),
            k,
            zone: (u32::MAX / k) * k,
        }
    }

    pub fn throw(&mut self) -> u32 {
        loop {
            let x = self.rng.next_u32();
            if x < self.zone {
                return x % self.k + 1;
            }
        }
    }
}

/// Runs the colouring loop on lazily drawn die throws.
///
/// `max_steps = None` runs until every edge is coloured. Returns the outcome
/// and the throws actually consumed.
pub fn run_randomized(
    graph: &PlaneGraph,
    lists: &ListAssignment,
    seed: u64,
    max_steps: Option<usize>,
) -> Result<(Outcome, InputVector), ColoringError> {
    if max_steps == Some(0) {
        return Err(ColoringError::EmptyInput);
    }
    let mut colorer = Colorer::new(graph, lists)?;
    let mut die = Die::new(seed, lists.k());
    let mut consumed = Vec::new();
    while !colorer.is_complete() && max_steps.is_none_or(|t| consumed.len() < t) {
        let p = die.throw();
        consumed.push(p);
        colorer.step(p);
    }
    Ok((colorer.into_outcome(), InputVector(consumed)))
}
