//! Graph documents, step traces and the `facethue` command line on top of
//! [`facethue_core`].

pub mod cli;
pub mod document;
pub mod report;
pub mod sources;
pub mod trace;
