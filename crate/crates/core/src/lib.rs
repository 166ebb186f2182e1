//! Single-source optimal paths by layered partition and label correction.
//!
//! The pipeline starts with [`partition::hda`], a breadth-first layering
//! that also relaxes every node from the layer directly above it. Its
//! labels are optimal among minimum-hop paths. Two families of optimisers
//! then drive the labels to the true shortest-path fixpoint:
//!
//! * [`eom`]: repeated pull sweeps over the partition order.
//! * [`monarchy`]: origin classification followed by a push-based worklist
//!   scheduler (`hrp`, `fr` or `ht`), plus the multi-source variant that
//!   tags each node with its winning source.
//!
//! [`oracle`] holds independent reference solvers and invariant audits,
//! [`generators`] the seeded grid and random instances, and [`bench`] the
//! CSV metrics used by the command-line harness.

pub mod algebra;
pub mod bench;
pub mod eom;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod monarchy;
pub mod oracle;
pub mod partition;
pub mod pipeline;
pub mod state;

pub use algebra::{min_plus_algebra, CostAlgebra, CostTriple, MinPlus};
pub use error::{GenError, GraphError, ParseError, SolveError};
pub use graph::{Arc, Cost, Graph, NodeId, Weight};
pub use monarchy::{SchedulerKind, StatusMap};
pub use pipeline::Algorithm;
pub use state::{comp_pull, comp_push, NoProbe, Probe, Regions, SolverState};
