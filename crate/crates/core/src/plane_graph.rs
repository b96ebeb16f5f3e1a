//! Plane graphs given by rotation systems.
//!
//! A [`RotationSystem`] fixes, for every vertex, the cyclic order of its
//! incident edges. Faces are not supplied by the caller: they are traced as
//! orbits of the dart permutation `next(d) = successor of twin(d) at head(d)`,
//! and Euler's formula is then checked to certify a genus-0 embedding.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Edge identifier, 0-based. Displayed (and serialized) 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based label used by every external format.
    #[inline]
    pub fn label(self) -> u32 {
        self.0 + 1
    }

    pub fn from_label(label: u32) -> Option<Self> {
        label.checked_sub(1).map(EdgeId)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.label())
    }
}

/// Vertex identifier, 0-based. Displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn label(self) -> u32 {
        self.0 + 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.label())
    }
}

/// One of the two traversal directions of an edge.
///
/// Dart `2e` runs from the first listed endpoint of `e` to the second; dart
/// `2e + 1` is its twin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }

    #[inline]
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    fn of(edge: EdgeId, reversed: bool) -> Dart {
        Dart(edge.0 * 2 + reversed as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge {edge} references vertex {vertex}, but there are only {vertex_count} vertices")]
    VertexOutOfRange {
        edge: EdgeId,
        vertex: u32,
        vertex_count: u32,
    },
    #[error("edge {0} is a loop")]
    HasLoop(EdgeId),
    #[error("edge {second} duplicates edge {first} (parallel edges are not supported)")]
    HasParallelEdge { first: EdgeId, second: EdgeId },
    #[error("expected {expected} rotations, found {found}")]
    RotationCount { expected: usize, found: usize },
    #[error("rotation of {vertex} lists {edge}, which is not incident to it")]
    ForeignEdgeInRotation { vertex: VertexId, edge: u32 },
    #[error("rotation of {vertex} lists {edge} {count} times (expected exactly once)")]
    RotationMultiplicity {
        vertex: VertexId,
        edge: EdgeId,
        count: usize,
    },
    #[error("graph is not connected: {0} is unreachable from v1")]
    NotConnected(VertexId),
    #[error("rotation system is not planar: V - E + F = {vertices} - {edges} + {faces} != 2")]
    EulerViolation {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

/// Vertex count, edge list and per-vertex cyclic edge orders.
///
/// Constructed only through [`RotationSystem::new`], which checks every
/// structural invariant except planarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    vertex_count: u32,
    edges: Vec<(VertexId, VertexId)>,
    rotations: Vec<Vec<EdgeId>>,
}

impl RotationSystem {
    pub fn new(
        vertex_count: u32,
        edges: Vec<(VertexId, VertexId)>,
        rotations: Vec<Vec<EdgeId>>,
    ) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let mut seen: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            let e = EdgeId(i as u32);
            for w in [u, v] {
                if w.0 >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        edge: e,
                        vertex: w.label(),
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::HasLoop(e));
            }
            let key = if u < v { (u, v) } else { (v, u) };
            if let Some(&first) = seen.get(&key) {
                return Err(GraphError::HasParallelEdge { first, second: e });
            }
            seen.insert(key, e);
        }
        if rotations.len() != vertex_count as usize {
            return Err(GraphError::RotationCount {
                expected: vertex_count as usize,
                found: rotations.len(),
            });
        }

        let m = edges.len();
        let mut count = vec![0usize; m];
        for (vi, rot) in rotations.iter().enumerate() {
            let vertex = VertexId(vi as u32);
            for &e in rot {
                let incident = edges
                    .get(e.index())
                    .is_some_and(|&(a, b)| a == vertex || b == vertex);
                if !incident {
                    return Err(GraphError::ForeignEdgeInRotation {
                        vertex,
                        edge: e.label(),
                    });
                }
                count[e.index()] += 1;
            }
            for &e in rot {
                if count[e.index()] != 1 {
                    return Err(GraphError::RotationMultiplicity {
                        vertex,
                        edge: e,
                        count: count[e.index()],
                    });
                }
            }
            for &e in rot {
                count[e.index()] = 0;
            }
        }
        // Every incident edge must be listed at each endpoint.
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if !rotations[w.index()].contains(&EdgeId(i as u32)) {
                    return Err(GraphError::RotationMultiplicity {
                        vertex: w,
                        edge: EdgeId(i as u32),
                        count: 0,
                    });
                }
            }
        }

        let rs = RotationSystem {
            vertex_count,
            edges,
            rotations,
        };
        rs.check_connected()?;
        Ok(rs)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let n = self.vertex_count as usize;
        let mut reached = vec![false; n];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.rotations[v] {
                let w = self.other_end(e, VertexId(v as u32)).index();
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        match reached.iter().position(|r| !r) {
            Some(v) => Err(GraphError::NotConnected(VertexId(v as u32))),
            None => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotations
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.index()];
        if a == v {
            b
        } else {
            a
        }
    }
}

/// A traced face boundary walk; its dart order is the face's fixed orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub index: usize,
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Dart at a cyclic position (any integer offset).
    #[inline]
    pub fn dart_at(&self, pos: isize) -> Dart {
        let l = self.darts.len() as isize;
        self.darts[pos.rem_euclid(l) as usize]
    }

    pub fn edge_sequence(&self) -> Vec<EdgeId> {
        self.darts.iter().map(|d| d.edge()).collect()
    }
}

/// Position of one appearance of an edge: face index and position in its walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub face: usize,
    pub position: usize,
}

/// Appearance label of an edge occurrence in the face walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Appearance {
    First = 1,
    Second = 2,
}

impl Appearance {
    pub const BOTH: [Appearance; 2] = [Appearance::First, Appearance::Second];

    pub fn from_label(label: u8) -> Option<Self> {
        match label {
            1 => Some(Appearance::First),
            2 => Some(Appearance::Second),
            _ => None,
        }
    }

    pub fn label(self) -> u8 {
        self as u8
    }
}

/// A connected simple plane graph with its traced faces and appearance labels.
///
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotation: RotationSystem,
    faces: Vec<FaceWalk>,
    // [edge][label - 1]
    appearance: Vec<[Slot; 2]>,
}

impl PlaneGraph {
    pub fn build(rotation: RotationSystem) -> Result<Self, GraphError> {
        let m = rotation.edge_count();
        let n = rotation.vertex_count();

        // rot_pos[dart] = index of dart's edge in the rotation at tail(dart)
        let mut rot_pos = vec![0usize; 2 * m];
        for (v, rot) in rotation.rotations.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let (a, _) = rotation.edges[e.index()];
                let reversed = a.index() != v;
                rot_pos[Dart::of(e, reversed).index()] = i;
            }
        }

        let tail = |d: Dart| -> VertexId {
            let (a, b) = rotation.edges[d.edge().index()];
            if d.0 & 1 == 0 {
                a
            } else {
                b
            }
        };
        let next = |d: Dart| -> Dart {
            let twin = d.twin();
            let at = tail(twin);
            let rot = &rotation.rotations[at.index()];
            let e = rot[(rot_pos[twin.index()] + 1) % rot.len()];
            let (a, _) = rotation.edges[e.index()];
            Dart::of(e, a != at)
        };

        let mut face_of = vec![usize::MAX; 2 * m];
        let mut faces: Vec<FaceWalk> = Vec::new();
        for start in 0..2 * m {
            if face_of[start] != usize::MAX {
                continue;
            }
            let index = faces.len();
            let mut darts = Vec::new();
            let mut d = Dart(start as u32);
            loop {
                face_of[d.index()] = index;
                darts.push(d);
                d = next(d);
                if d.index() == start {
                    break;
                }
            }
            faces.push(FaceWalk { index, darts });
        }

        if n + faces.len() != m + 2 {
            return Err(GraphError::EulerViolation {
                vertices: n,
                edges: m,
                faces: faces.len(),
            });
        }

        let mut slots: Vec<Vec<Slot>> = vec![Vec::with_capacity(2); m];
        for f in &faces {
            for (position, d) in f.darts.iter().enumerate() {
                slots[d.edge().index()].push(Slot {
                    face: f.index,
                    position,
                });
            }
        }
        let appearance = slots
            .into_iter()
            .map(|mut s| {
                debug_assert_eq!(s.len(), 2);
                s.sort();
                [s[0], s[1]]
            })
            .collect();

        Ok(PlaneGraph {
            rotation,
            faces,
            appearance,
        })
    }

    pub fn rotation_system(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn face(&self, index: usize) -> &FaceWalk {
        &self.faces[index]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    pub fn appearance(&self, e: EdgeId, a: Appearance) -> Slot {
        self.appearance[e.index()][a as usize - 1]
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> VertexId {
        let (a, b) = self.rotation.edges[d.edge().index()];
        if d.0 & 1 == 0 {
            a
        } else {
            b
        }
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.twin())
    }

    pub fn max_face_len(&self) -> usize {
        self.faces.iter().map(FaceWalk::len).max().unwrap_or(0)
    }
}
