//! Workbench for combinatorial trisection diagrams of 4-manifolds.
//!
//! Diagrams are exact dart-based cell maps carrying curve systems, arcs,
//! boundary circles, and marked points. On top of the map layer sit the
//! diagram kinds and their validation, the elementary move calculus,
//! boundary gluing with annular monodromy, diagrammatic surgery on 2-knots,
//! exact algebraic invariants, and bounded rewriting search. All arithmetic
//! is exact; every operation is deterministic.

pub mod builder;
pub mod cellmap;
pub mod diagram;
pub mod error;
pub mod gluing;
pub mod homology;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod pieces;
pub mod render;
pub mod search;
pub mod snf;
pub mod surgery;

pub use cellmap::{CellMap, Dart, EdgeLabel, Family, Sign};
pub use diagram::{Diagram, DiagramKind, TrisectionType, ValidationLevel};
pub use error::{Error, Result};
