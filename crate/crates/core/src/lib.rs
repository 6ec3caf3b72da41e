//! Build entanglement graphs on a line of quantum nodes by entanglement
//! swapping, and account exactly for the local links they consume.
//!
//! - [`network`]: links, Schmidt coefficients, the network state and its ledger.
//! - [`swap`]: Bell-measurement outcomes, a state-vector oracle, and the swap mutation.
//! - [`planner`]: allocation and swap schedules for ring, lattice, complete,
//!   random and hierarchical targets.
//! - [`accounting`]: reference cost formulas and comparison reports.
//! - [`analysis`]: graph metrics and random link pruning.

pub mod accounting;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod network;
pub mod planner;
pub mod swap;

pub use error::{Error, Result};
pub use network::{CostLedger, EgraphSpec, EntLink, LinkId, NetworkState, NodeId, SchmidtPair};
pub use planner::{execute_plan, Execution, LatticeEmbedding, Plan, Topology};
pub use swap::{BellLabel, BellOutcome, SwapMode};
