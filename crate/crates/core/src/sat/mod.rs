//! Monotone NAE-3SAT formulas and their reductions to perfect matching cut.

mod cnf;
mod reduction;
mod verify;

pub use cnf::{CnfError, CnfFormula};
pub use reduction::{
    extensions, extract_assignment, girth_parameter, girth_vertex_count, lift_assignment, reduce_basic,
    reduce_girth, ClauseGadget, ReductionError, ReductionMap, VariableGadget, Variant,
};
pub use verify::{verify_reduced_graph, verify_reduction, Claim, ClaimStatus, ReductionReport};
