//! Cycle packings of complete multigraphs `lambda K_v`.
//!
//! The crate answers three questions about a list of cycle lengths
//! `(m_1, ..., m_tau)`: whether a packing with those lengths exists
//! ([`feasibility`]), how to build one ([`constructor`]), and whether a
//! brute-force search agrees ([`decomposer`]).

pub mod constructor;
pub mod cycle;
pub mod decomposer;
pub mod error;
pub mod feasibility;
pub mod instance;
pub mod multigraph;
pub mod packing;
pub mod structure;
pub mod surplus;
pub mod switching;
pub mod trace;

/// Vertices are `0..v`.
pub type Vertex = usize;

pub use cycle::{Cycle, Lasso, Path};
pub use decomposer::{
    brute_force_pack, decompose, one_factor, Decomposition, SearchConfig, SearchOutcome,
};
pub use error::{Error, Result};
pub use feasibility::{
    check_decomposition_feasibility, check_packing_feasibility, delta_of, Condition,
    FeasibilityVerdict,
};
pub use instance::Instance;
pub use multigraph::Multigraph;
pub use packing::{leave_of, validate_packing, Packing, Verdict, Violation};
pub use switching::{perform_switch, SwitchRequest, SwitchResult};
pub use constructor::{build_packing, build_packing_with, select_m, DecompositionProvider, SearchProvider};
pub use surplus::{compute_surplus_list_even, compute_surplus_list_odd, SurplusList};
pub use trace::{BuildTrace, TraceStep};
