//! Digon graph, its double cover along the transversal, and the checks
//! built on top of them.

pub mod conditions;
pub mod drawing;
pub mod graph;
pub mod parity;
pub mod planarity;
pub mod verify;

pub use drawing::{decision_table, simulate_annulus_drawing, Decision, DecisionTable};
pub use graph::{digon_graph, double_cover, CoverEdge, CoverVertex, DigonGraph, DoubleCoverGraph};
pub use parity::{classify_order, pair_parity, table_against_drawing, OrderCase, Parity, ParitySource, ParityVerdict, TableCheck};
pub use conditions::{check_conditions, ConditionReport};
pub use planarity::{planarity_test, Planarity, SimpleGraph};
pub use verify::{pipeline, pipeline_for, split_transversal, verify_bound, verify_bound_with, Pipeline, Status, VerificationReport};
