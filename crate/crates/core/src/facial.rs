//! Facial paths and the `(h, q, a, o)` descriptors that name them.
//!
//! A descriptor locates an even facial path relative to one of its edges `e`:
//! `h` is the half-length, `q in [h+1, 2h]` the position of `e` once the path
//! is oriented so that `e` lies in the second half, `a` the appearance of `e`
//! whose face walk carries the path, and `o` whether the path reads along
//! (`Forward`) or against (`Reverse`) that walk.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::coloring::{Coloring, ListAssignment};
use crate::plane_graph::{Appearance, Dart, EdgeId, FaceWalk, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward = 1,
    Reverse = 2,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Forward, Orientation::Reverse];

    pub fn from_label(label: u8) -> Option<Self> {
        match label {
            1 => Some(Orientation::Forward),
            2 => Some(Orientation::Reverse),
            _ => None,
        }
    }

    pub fn label(self) -> u8 {
        self as u8
    }
}

/// The record alphabet. Ordering is lexicographic on `(h, q, a, o)`, which is
/// also the preference order used when several repetitions appear at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathDescriptor {
    h: u32,
    q: u32,
    a: Appearance,
    o: Orientation,
}

impl PathDescriptor {
    pub fn new(h: u32, q: u32, a: Appearance, o: Orientation) -> Result<Self, FacialError> {
        if h == 0 || q <= h || q > 2 * h {
            return Err(FacialError::MalformedDescriptor { h, q });
        }
        Ok(PathDescriptor { h, q, a, o })
    }

    /// Builds a descriptor from its four integer components.
    pub fn from_raw(h: u32, q: u32, a: u8, o: u8) -> Result<Self, FacialError> {
        let bad = || FacialError::MalformedDescriptor { h, q };
        let a = Appearance::from_label(a).ok_or_else(bad)?;
        let o = Orientation::from_label(o).ok_or_else(bad)?;
        Self::new(h, q, a, o)
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn appearance(&self) -> Appearance {
        self.a
    }

    pub fn orientation(&self) -> Orientation {
        self.o
    }

    pub fn to_raw(&self) -> [u32; 4] {
        [self.h, self.q, self.a.label() as u32, self.o.label() as u32]
    }

    /// All `4h` descriptors with half-length `h`, in preference order.
    pub fn all_with_half_length(h: u32) -> impl Iterator<Item = PathDescriptor> {
        (h + 1..=2 * h).flat_map(move |q| {
            Appearance::BOTH.into_iter().flat_map(move |a| {
                Orientation::BOTH
                    .into_iter()
                    .map(move |o| PathDescriptor { h, q, a, o })
            })
        })
    }
}

impl fmt::Display for PathDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [h, q, a, o] = self.to_raw();
        write!(f, "{h},{q},{a},{o}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FacialError {
    #[error(
        "descriptor (h={h}, q={q}) is malformed: need h >= 1, h+1 <= q <= 2h and a, o in {{1,2}}"
    )]
    MalformedDescriptor { h: u32, q: u32 },
    #[error("descriptor {descriptor} names no facial path through {edge}")]
    InvalidDescriptor {
        edge: EdgeId,
        descriptor: PathDescriptor,
    },
    #[error("path has odd length {0}")]
    OddLength(usize),
    #[error("{0} is not on the path")]
    EdgeNotOnPath(EdgeId),
    #[error("edge sequence is not a facial path")]
    NotFacial,
    #[error("{0} is uncoloured")]
    UncolouredEdge(EdgeId),
}

/// Where a facial path was read: the window of `len` darts starting at
/// `start` in face `face`, taken forward or reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub face: usize,
    pub start: usize,
    pub direction: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialPath {
    pub edges: Vec<EdgeId>,
    pub witness: Witness,
}

impl FacialPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The `h` edges of the second half.
    pub fn second_half(&self) -> &[EdgeId] {
        &self.edges[self.edges.len() / 2..]
    }
}

fn window_start(pos: usize, len: usize, h: u32, q: u32, o: Orientation) -> usize {
    let back = match o {
        Orientation::Forward => q - 1,
        Orientation::Reverse => 2 * h - q,
    } as usize;
    (pos + len - back % len) % len
}

fn window_is_simple(g: &PlaneGraph, walk: &FaceWalk, start: usize, len: usize) -> bool {
    let mut seen = BTreeSet::new();
    seen.insert(g.tail(walk.dart_at(start as isize)));
    (0..len).all(|i| seen.insert(g.head(walk.dart_at((start + i) as isize))))
}

/// Reconstructs the unique facial path `P` with `v(e, P) = d`.
pub fn decode_path(
    g: &PlaneGraph,
    e: EdgeId,
    d: PathDescriptor,
) -> Result<FacialPath, FacialError> {
    let slot = g.appearance(e, d.a);
    let walk = g.face(slot.face);
    let len = 2 * d.h as usize;
    let invalid = FacialError::InvalidDescriptor {
        edge: e,
        descriptor: d,
    };
    if len > walk.len() {
        return Err(invalid);
    }
    let start = window_start(slot.position, walk.len(), d.h, d.q, d.o);
    if !window_is_simple(g, walk, start, len) {
        return Err(invalid);
    }
    let mut edges: Vec<EdgeId> = (0..len)
        .map(|i| walk.dart_at((start + i) as isize).edge())
        .collect();
    if d.o == Orientation::Reverse {
        edges.reverse();
    }
    debug_assert_eq!(edges[d.q as usize - 1], e);
    Ok(FacialPath {
        edges,
        witness: Witness {
            face: slot.face,
            start,
            direction: d.o,
        },
    })
}

/// Canonical descriptor of an even facial path relative to one of its edges:
/// the smallest `(h, q, a, o)` that decodes back to it.
pub fn encode_path(
    g: &PlaneGraph,
    e: EdgeId,
    path: &[EdgeId],
) -> Result<PathDescriptor, FacialError> {
    if !path.len().is_multiple_of(2) {
        return Err(FacialError::OddLength(path.len()));
    }
    let idx = path
        .iter()
        .position(|&x| x == e)
        .ok_or(FacialError::EdgeNotOnPath(e))?;
    let h = (path.len() / 2) as u32;
    let mut oriented = path.to_vec();
    let mut q = idx as u32 + 1;
    if q <= h {
        oriented.reverse();
        q = 2 * h + 1 - q;
    }
    for a in Appearance::BOTH {
        for o in Orientation::BOTH {
            let d = PathDescriptor { h, q, a, o };
            if let Ok(p) = decode_path(g, e, d) {
                if p.edges == oriented {
                    return Ok(d);
                }
            }
        }
    }
    Err(FacialError::NotFacial)
}

/// Every facial path with at most `max_len` edges, once each up to reversal.
///
/// Each path is reported in the orientation whose edge sequence is
/// lexicographically smaller; output is sorted by length, then edges.
pub fn enumerate_facial_paths(g: &PlaneGraph, max_len: usize) -> Vec<FacialPath> {
    let mut found: BTreeMap<(usize, Vec<EdgeId>), Witness> = BTreeMap::new();
    for walk in g.faces() {
        let l = walk.len();
        for start in 0..l {
            let mut visited = BTreeSet::new();
            visited.insert(g.tail(walk.darts[start]));
            let mut edges = Vec::new();
            for i in 0..l.min(max_len) {
                let d = walk.dart_at((start + i) as isize);
                if !visited.insert(g.head(d)) {
                    break;
                }
                edges.push(d.edge());
                let mut rev = edges.clone();
                rev.reverse();
                let (key, direction) = if rev < edges {
                    (rev, Orientation::Reverse)
                } else {
                    (edges.clone(), Orientation::Forward)
                };
                found.entry((key.len(), key)).or_insert(Witness {
                    face: walk.index,
                    start,
                    direction,
                });
            }
        }
    }
    found
        .into_iter()
        .map(|((_, edges), witness)| FacialPath { edges, witness })
        .collect()
}

/// Scans for a repetitively coloured even facial path through `e`.
///
/// Holds scratch space so the colouring loop can reuse it between steps.
#[derive(Debug, Clone)]
pub struct RepetitionFinder {
    stamp: Vec<u32>,
    epoch: u32,
}

#[derive(Clone, Copy)]
struct Reading<'g> {
    walk: &'g FaceWalk,
    pos: isize,
    dir: isize,
    a: Appearance,
    o: Orientation,
}

impl Reading<'_> {
    #[inline]
    fn dart(&self, delta: isize) -> Dart {
        self.walk.dart_at(self.pos + self.dir * delta)
    }
}

impl RepetitionFinder {
    pub fn new(g: &PlaneGraph) -> Self {
        RepetitionFinder {
            stamp: vec![0; g.vertex_count()],
            epoch: 0,
        }
    }

    fn simple(&mut self, g: &PlaneGraph, walk: &FaceWalk, start: isize, len: usize) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let first = g.tail(walk.dart_at(start)).index();
        self.stamp[first] = self.epoch;
        for i in 0..len as isize {
            let v = g.head(walk.dart_at(start + i)).index();
            if self.stamp[v] == self.epoch {
                return false;
            }
            self.stamp[v] = self.epoch;
        }
        true
    }

    /// Smallest descriptor `(h, q, a, o)` relative to `e` naming a fully
    /// coloured facial path whose colour sequence is a repetition.
    ///
    /// Assumes no repetition avoids `e`, which holds inside the colouring loop.
    pub fn find(&mut self, g: &PlaneGraph, colors: &Coloring, e: EdgeId) -> Option<PathDescriptor> {
        let c = |d: Dart| colors.get(d.edge());
        if c(Dart(e.0 * 2)) == 0 {
            return None;
        }
        let mut readings: [Option<Reading<'_>>; 4] = [None; 4];
        let mut max_h = 0;
        for (i, (a, o)) in Appearance::BOTH
            .into_iter()
            .flat_map(|a| Orientation::BOTH.into_iter().map(move |o| (a, o)))
            .enumerate()
        {
            let slot = g.appearance(e, a);
            let walk = g.face(slot.face);
            max_h = max_h.max(walk.len() / 2);
            readings[i] = Some(Reading {
                walk,
                pos: slot.position as isize,
                dir: if o == Orientation::Forward { 1 } else { -1 },
                a,
                o,
            });
        }

        for h in 1..=max_h as isize {
            // admissible q range per reading, from the run of positions whose
            // colour equals the colour h steps earlier
            let mut ranges: [Option<(isize, isize)>; 4] = [None; 4];
            let mut lo_all = isize::MAX;
            let mut hi_all = isize::MIN;
            for (slot, r) in ranges.iter_mut().zip(readings.iter()) {
                let r = r.as_ref().unwrap();
                if 2 * h > r.walk.len() as isize {
                    continue;
                }
                let matches = |delta: isize| {
                    let x = c(r.dart(delta));
                    x != 0 && x == c(r.dart(delta - h))
                };
                if !matches(0) {
                    continue;
                }
                let left = (1..h).take_while(|&k| matches(-k)).count() as isize;
                let right = (1..h).take_while(|&k| matches(k)).count() as isize;
                let lo = (h + 1).max(2 * h - right);
                let hi = (2 * h).min(h + 1 + left);
                if lo <= hi {
                    *slot = Some((lo, hi));
                    lo_all = lo_all.min(lo);
                    hi_all = hi_all.max(hi);
                }
            }
            for q in lo_all..=hi_all {
                for (range, r) in ranges.iter().zip(readings.iter()) {
                    let (Some((lo, hi)), Some(r)) = (range, r) else {
                        continue;
                    };
                    if q < *lo || q > *hi {
                        continue;
                    }
                    let start = match r.o {
                        Orientation::Forward => r.pos - (q - 1),
                        Orientation::Reverse => r.pos - (2 * h - q),
                    };
                    if self.simple(g, r.walk, start, 2 * h as usize) {
                        return Some(PathDescriptor {
                            h: h as u32,
                            q: q as u32,
                            a: r.a,
                            o: r.o,
                        });
                    }
                }
            }
        }
        None
    }
}

/// Finds the preferred repetitively coloured facial path through `e`, if any.
pub fn find_repetition(
    g: &PlaneGraph,
    colors: &Coloring,
    e: EdgeId,
) -> Result<Option<(FacialPath, PathDescriptor)>, FacialError> {
    if colors.get(e) == 0 {
        return Err(FacialError::UncolouredEdge(e));
    }
    let mut finder = RepetitionFinder::new(g);
    Ok(finder.find(g, colors, e).map(|d| {
        let p = decode_path(g, e, d).expect("found descriptors always decode");
        (p, d)
    }))
}

/// Result of checking a colouring against brute-force facial path enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub uncoloured: Vec<EdgeId>,
    pub list_violations: Vec<EdgeId>,
    pub repetitions: Vec<FacialPath>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.uncoloured.is_empty() && self.list_violations.is_empty() && self.repetitions.is_empty()
    }
}

/// Independent check of a facial nonrepetitive list colouring.
///
/// Enumerates every facial path and compares the two halves of each fully
/// coloured even one directly; shares nothing with [`RepetitionFinder`].
pub fn verify_coloring(g: &PlaneGraph, lists: &ListAssignment, c: &Coloring) -> VerifyReport {
    let mut report = VerifyReport::default();
    for e in g.edges() {
        let col = c.get(e);
        if col == 0 {
            report.uncoloured.push(e);
        } else if !lists.list(e).contains(&col) {
            report.list_violations.push(e);
        }
    }
    for p in enumerate_facial_paths(g, g.max_face_len()) {
        if p.len() % 2 != 0 {
            continue;
        }
        let colours: Vec<u32> = p.edges.iter().map(|&e| c.get(e)).collect();
        if colours.contains(&0) {
            continue;
        }
        let (first, second) = colours.split_at(colours.len() / 2);
        if first == second {
            report.repetitions.push(p);
        }
    }
    report
}
