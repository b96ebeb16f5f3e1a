//! Facial nonrepetitive list edge colouring of plane graphs.
//!
//! The colourer is a resampling procedure: edges are coloured in index order
//! from their lists, and whenever a facial path becomes repetitively coloured
//! the half of it containing the newly coloured edge is uncoloured again. Each
//! cancellation is logged as a four-integer descriptor, and the final
//! colouring together with that record determines the random input uniquely
//! (see [`replay`]). The [`analysis`] module reproduces the counting that turns
//! this invertibility into a termination argument for lists of size 12.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod coloring;
pub mod facial;
pub mod families;
pub mod plane_graph;
pub mod replay;
pub mod words;

pub use coloring::{
    run_deterministic, run_randomized, Colorer, Coloring, ColoringError, InputVector,
    ListAssignment, Outcome, Record, Status,
};
pub use facial::{
    decode_path, encode_path, enumerate_facial_paths, find_repetition, verify_coloring, FacialPath,
    PathDescriptor, VerifyReport,
};
pub use families::{generate, Family};
pub use plane_graph::{EdgeId, GraphError, PlaneGraph, RotationSystem, VertexId};
