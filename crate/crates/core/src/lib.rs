//! Homology of graph configuration spaces, computed exactly.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure algorithms:
//!
//! * [`graph`] holds finite simple graphs, subdivisions, paths, standard
//!   families, homeomorphism types and a small isomorphism census.
//! * [`morphism`] validates, composes and enumerates topological minor
//!   morphisms, embeddings and full embeddings.
//! * [`abrams`] builds the discretized configuration space `D_n(G)` as an
//!   integer cubical chain complex.
//! * [`swiatkowski`] enumerates the cell sets `A_{i,n}(G)` and their support
//!   subgraphs.
//! * [`homology`] computes integer homology via Smith normal form, induced
//!   maps and subgroup spans.
//! * [`generation`] decides, for one fixed graph, whether `H_i` is generated by
//!   topological subgraphs of prescribed homeomorphism types, and computes the
//!   Betti and Robertson stages.
//! * [`cograph`] recognizes cographs and converts between cographs and cotrees.
//!
//! File formats, the command line front end and the verification suites live
//! in the `ufgraph` companion crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abrams;
pub mod cograph;
pub mod error;
pub mod generation;
pub mod graph;
pub mod homology;
pub mod morphism;
pub mod swiatkowski;

pub use error::{Error, Result};
pub use graph::{Path, SimpleGraph, SubdivisionRecord, VertexId};
