//! Standard plane graph families with canonical counter-clockwise rotations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::plane_graph::{EdgeId, RotationSystem, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Path on `n >= 2` vertices.
    Path(u32),
    /// Cycle on `n >= 3` vertices.
    Cycle(u32),
    /// Hub joined to a rim cycle of `n >= 3` vertices.
    Wheel(u32),
    /// `rows x cols` grid, both at least 2.
    Grid(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(alloc::string::String),
    #[error("parameter out of range for {family}: {detail}")]
    ParamOutOfRange {
        family: &'static str,
        detail: &'static str,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Wheel(_) => "wheel",
            Family::Grid(..) => "grid",
        }
    }

    /// Closed-form `(V, E, F)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        match *self {
            Family::Path(n) => (n as usize, n as usize - 1, 1),
            Family::Cycle(n) => (n as usize, n as usize, 2),
            Family::Wheel(n) => (n as usize + 1, 2 * n as usize, n as usize + 1),
            Family::Grid(a, b) => {
                let (a, b) = (a as usize, b as usize);
                (a * b, a * (b - 1) + b * (a - 1), (a - 1) * (b - 1) + 1)
            }
        }
    }

    /// Parses the `name:params` shorthand (`path:10`, `grid:4x4`, ...).
    pub fn parse(s: &str) -> Result<Self, FamilyError> {
        let unknown = || FamilyError::UnknownFamily(s.into());
        let (name, params) = s.split_once(':').ok_or_else(unknown)?;
        let num = |p: &str| p.trim().parse::<u32>().map_err(|_| unknown());
        let fam = match name.trim() {
            "path" => Family::Path(num(params)?),
            "cycle" => Family::Cycle(num(params)?),
            "wheel" => Family::Wheel(num(params)?),
            "grid" => {
                let (a, b) = params.split_once(['x', 'X']).ok_or_else(unknown)?;
                Family::Grid(num(a)?, num(b)?)
            }
            _ => return Err(unknown()),
        };
        fam.check()?;
        Ok(fam)
    }

    fn check(&self) -> Result<(), FamilyError> {
        let bad = |family, detail| Err(FamilyError::ParamOutOfRange { family, detail });
        match *self {
            Family::Path(n) if n < 2 => bad("path", "need n >= 2"),
            Family::Cycle(n) if n < 3 => bad("cycle", "need n >= 3"),
            Family::Wheel(n) if n < 3 => bad("wheel", "need n >= 3"),
            Family::Grid(a, b) if a < 2 || b < 2 => bad("grid", "need rows, cols >= 2"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Wheel(n) => write!(f, "wheel:{n}"),
            Family::Grid(a, b) => write!(f, "grid:{a}x{b}"),
        }
    }
}

struct Builder {
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn edge(&mut self, u: u32, v: u32) -> EdgeId {
        self.edges.push((VertexId(u), VertexId(v)));
        EdgeId(self.edges.len() as u32 - 1)
    }
}

/// Builds the rotation system of a family member.
pub fn generate(family: Family) -> Result<RotationSystem, FamilyError> {
    family.check()?;
    let mut b = Builder { edges: Vec::new() };
    let (n, rotations) = match family {
        Family::Path(n) => {
            let es: Vec<EdgeId> = (0..n - 1).map(|i| b.edge(i, i + 1)).collect();
            let mut rot = vec![Vec::new(); n as usize];
            for (i, &e) in es.iter().enumerate() {
                rot[i].push(e);
                rot[i + 1].push(e);
            }
            (n, rot)
        }
        Family::Cycle(n) => {
            let es: Vec<EdgeId> = (0..n).map(|i| b.edge(i, (i + 1) % n)).collect();
            let rot = (0..n as usize)
                .map(|i| vec![es[(i + n as usize - 1) % n as usize], es[i]])
                .collect();
            (n, rot)
        }
        Family::Wheel(n) => {
            // hub 0, rim vertex i + 1 at angle 2*pi*i/n
            let spokes: Vec<EdgeId> = (0..n).map(|i| b.edge(0, i + 1)).collect();
            let rim: Vec<EdgeId> = (0..n).map(|i| b.edge(i + 1, (i + 1) % n + 1)).collect();
            let nu = n as usize;
            let mut rot = vec![spokes.clone()];
            for i in 0..nu {
                // counter-clockwise from the outward normal: next rim vertex, hub, previous rim vertex
                rot.push(vec![rim[i], spokes[i], rim[(i + nu - 1) % nu]]);
            }
            (n + 1, rot)
        }
        Family::Grid(rows, cols) => {
            let id = |r: u32, c: u32| r * cols + c;
            let mut east = vec![None; (rows * cols) as usize];
            let mut north = vec![None; (rows * cols) as usize];
            for r in 0..rows {
                for c in 0..cols - 1 {
                    east[id(r, c) as usize] = Some(b.edge(id(r, c), id(r, c + 1)));
                }
            }
            for r in 0..rows - 1 {
                for c in 0..cols {
                    north[id(r, c) as usize] = Some(b.edge(id(r, c), id(r + 1, c)));
                }
            }
            let mut rot = Vec::with_capacity((rows * cols) as usize);
            for r in 0..rows {
                for c in 0..cols {
                    let here = id(r, c) as usize;
                    let west = (c > 0).then(|| east[id(r, c - 1) as usize]).flatten();
                    let south = (r > 0).then(|| north[id(r - 1, c) as usize]).flatten();
                    rot.push(
                        [east[here], north[here], west, south]
                            .into_iter()
                            .flatten()
                            .collect(),
                    );
                }
            }
            (rows * cols, rot)
        }
    };
    Ok(RotationSystem::new(n, b.edges, rotations)
        .expect("family generators produce valid rotation systems"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::PlaneGraph;
    use alloc::string::ToString;

    fn counts(f: Family) -> (usize, usize, usize) {
        let g = PlaneGraph::build(generate(f).unwrap()).unwrap();
        (g.vertex_count(), g.edge_count(), g.face_count())
    }

    #[test]
    fn wheel_five() {
        assert_eq!(counts(Family::Wheel(5)), (6, 10, 6));
    }

    #[test]
    fn grid_three_by_three() {
        assert_eq!(counts(Family::Grid(3, 3)), (9, 12, 5));
    }

    #[test]
    fn path_two_is_a_single_edge() {
        let g = PlaneGraph::build(generate(Family::Path(2)).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.face(0).edge_sequence(), vec![EdgeId(0), EdgeId(0)]);
    }

    #[test]
    fn closed_forms_hold_across_sizes() {
        let mut fams = Vec::new();
        for n in 2..30 {
            fams.push(Family::Path(n));
        }
        for n in 3..30 {
            fams.push(Family::Cycle(n));
            fams.push(Family::Wheel(n));
        }
        for a in 2..7 {
            for b in 2..7 {
                fams.push(Family::Grid(a, b));
            }
        }
        for f in fams {
            assert_eq!(counts(f), f.counts(), "{f}");
        }
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!(Family::parse("wheel:10"), Ok(Family::Wheel(10)));
        assert_eq!(Family::parse("grid:4x3"), Ok(Family::Grid(4, 3)));
        assert!(matches!(
            Family::parse("torus:3"),
            Err(FamilyError::UnknownFamily(_))
        ));
        assert!(matches!(
            Family::parse("cycle:2"),
            Err(FamilyError::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            Family::parse("path:1"),
            Err(FamilyError::ParamOutOfRange { .. })
        ));
        assert_eq!(Family::Grid(4, 3).to_string(), "grid:4x3");
    }
}
