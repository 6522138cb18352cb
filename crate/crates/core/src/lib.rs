//! Toric ideals of graphs: circuits, Graver basis, universal Gröbner basis and
//! universal Markov basis, computed from the combinatorics of primitive walks,
//! together with robustness and generalized-robustness decisions.
//!
//! Every graph-level result can be cross-checked against [`oracle`], a
//! brute-force fiber machinery that works on arbitrary nonnegative integer
//! matrices and knows nothing about walks.
//!
//! Indices are 0-based throughout the library. Reports and text output label
//! edges `e1..em`, variables `x1..xm` and vertices by their input labels.

pub mod bases;
pub mod basis_set;
pub mod binomial;
pub mod blocks;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod random;
pub mod report;
pub mod robustness;
pub mod suite;
pub mod walk;
pub mod walk_analysis;

pub use bases::{GraphBases, PrimitiveElement};
pub use basis_set::{BasisElement, BasisKind, BasisSet, ElementTags};
pub use binomial::{Binomial, DegreeVector, Monomial};
pub use blocks::{block_decomposition, Block, BlockDecomposition};
pub use error::{Error, GraphError, OracleError, WalkError};
pub use graph::{EdgeSet, Graph};
pub use oracle::ToricConfig;
pub use robustness::RobustnessVerdict;
pub use walk::ClosedEvenWalk;
pub use walk_analysis::{ChordKind, ChordReport, F4Record, MinimalityCondition, WalkAnalysis};

pub type Result<T, E = Error> = std::result::Result<T, E>;
