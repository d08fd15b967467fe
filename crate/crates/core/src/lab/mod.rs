//! Proof machinery: black-neighbourhood checks, four-part witnesses and
//! their maintenance under splits, the first-witness search in meshes, and
//! the certify-or-refute pipeline.

pub mod advance;
pub mod pipeline;
pub mod step1;
pub mod witness;

pub use advance::{advance_in, advance_witness, audit_sequence, AuditVerdict, Case, InvariantReport, Verdict};
pub use pipeline::{pipeline_certify, sequence_from_decomposition, width_bound, PipelineError, PipelineOutcome};
pub use step1::{find_step1_witness, Lines, Step1Case, Step1Error, Step1Outcome, Step1Witness};
pub use witness::{
    black_neighborhood_weight, check_obs_red_edge, check_path_layout, check_witness, check_witness_in, witness_paths,
    WitnessError, WitnessState,
};
