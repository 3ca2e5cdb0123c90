//! Std companion of `ufgraph-core`: graph6 and JSON formats, sparse matrix
//! text, CSV cell export, the `ufgraph` command line front end and the
//! acceptance suites it runs.

pub mod cli;
pub mod formats;
pub mod graph6;
pub mod io;
pub mod verify;
