//! Exact lattice and cycle algorithms for resolution (plumbing) graphs of
//! normal surface singularities.
//!
//! The crate is `no_std` (it needs `alloc`). All arithmetic on the
//! intersection lattice is exact: integers for integral cycles and
//! arbitrary-precision rationals for the dual lattice.
//!
//! - [`graph`]: plumbing graphs, validation, blow-ups, full subgraphs.
//! - [`lattice`]: intersection matrix, duals `E*_v`, canonical cycle, `χ`.
//! - [`search`]: Artin's minimal cycle and certified minimization of `χ`.
//! - [`invariants`]: classification and topological bounds.
//! - [`fixtures`]: built-in example graphs.

#![no_std]

extern crate alloc;

pub mod cycle;
pub mod fixtures;
pub mod graph;
pub mod invariants;
pub mod lattice;
pub mod search;

pub use cycle::{Cycle, RatCycle};
pub use graph::{BlowupKind, BlowupRecord, GraphBuilder, GraphError, PlumbingGraph, Pullback, VertexData, VertexId};
pub use invariants::{classify, ClassificationReport, InvariantsError, Verdict};
pub use lattice::{build_intersection, IntersectionData, LatticeError};
pub use search::{min_chi, min_chi_oracle, MinChiRegion, MinChiResult, SearchError};
