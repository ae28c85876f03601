//! Polynomial-time solvers for restricted graph classes.

mod caterpillar;
mod deg2;
mod pseudo_chordal;
mod tfree;

pub use caterpillar::caterpillar_criterion;
pub use deg2::solve_max_deg2;
pub use pseudo_chordal::{is_pseudo_chordal, solve_pseudo_chordal, SupernodeTree};
pub use tfree::{is_t_free, solve_t_free, stuck_state_analysis, Stuck, TWitness};
