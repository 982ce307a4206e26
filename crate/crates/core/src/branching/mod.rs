//! Branching points, forced walks and the cardinality of expansion sets.

mod classify;
mod oracle;
mod tree;
mod walk;

pub use classify::{
    branching_tree, classify_sigma, cycle_certificate_check, default_depth, is_null_infinite, BranchGraph,
    CardinalityVerdict, Certificate, ChildOutcome, CycleCheck, CycleWitness, GraphNode, NotNullWitness, NullInfinite,
    SigmaClass, DEFAULT_DEPTH, NODE_CAP, STEP_LIMIT,
};
pub use oracle::{feasible_prefixes, prefix_count_oracle, tree_paths};
pub use tree::{tree_ascii, tree_json};
pub use walk::{minimal_to_switch, SwitchOutcome};
