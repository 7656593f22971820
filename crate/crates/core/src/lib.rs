//! Multicolored Clique → Maximum Induced Forest on graphs of bounded linear
//! mim-width, with exact width evaluation and brute-force certification.

mod bitset;
mod dsu;
pub mod error;
pub mod export;
pub mod generate;
pub mod graph;
pub mod hgraph;
pub mod matching;
pub mod names;
pub mod oracles;
pub mod reduction;
pub mod verification;
pub mod widths;

pub use error::{Error, Result};
pub use generate::InstanceSpec;
pub use graph::{BipartiteCutGraph, Cut, Graph};
pub use hgraph::{HRepresentation, MultiGraph, Violation};
pub use oracles::{CliqueWitness, ForestWitness, Outcome};
pub use reduction::{MccInstance, ReductionOutput, VertexClass};
pub use verification::{CheckReport, Status};
pub use widths::{BranchDecomposition, LinearOrder};
