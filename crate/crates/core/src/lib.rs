//! Twin-width toolkit: trigraph contraction semantics, sequence verification,
//! exact desk-scale solvers for twin-width and tree-width, generators for
//! walls, cubic meshes and a sparse twin-width-3 family, and executable
//! versions of the witness arguments that bound the tree-width of sparse
//! twin-width-2 graphs.

pub mod corpus;
pub mod graph;
pub mod lab;
pub mod partition;
pub mod sequence;
pub mod solver;
pub mod structure;
pub mod trigraph;

pub use graph::{are_twins, Graph, GraphError, ParseError, Vertex};
pub use partition::{quotient, PartId, PartitionError, PartitionedTrigraph, VertexPartition};
pub use sequence::{
    apply_prefix, invert, verify_width, ContractionSequence, ContractionStep, Replay, SequenceError,
    UncontractionSequence, WidthReport,
};
pub use solver::{
    decide_twinwidth_at_most, greedy_sequence, twinwidth_exact, twinwidth_zero, Decision, ExactTwinWidth, SolverError,
    DEFAULT_BUDGET,
};
pub use trigraph::{Color, Trigraph, TrigraphError};
