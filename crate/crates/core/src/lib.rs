//! Perfect matching cuts.
//!
//! A perfect matching cut of a graph is a bipartition `(X, Y)` of its
//! vertices in which every vertex has exactly one neighbour on the other
//! side. Deciding whether one exists is NP-complete; this crate provides
//!
//! * an exhaustive [`oracle`] for small graphs,
//! * the exact branch-and-reduce solver in [`branch`],
//! * polynomial algorithms for special classes in [`poly`],
//! * the NAE-3SAT reductions in [`sat`],
//! * and [`solve_with`], which dispatches between them.
//!
//! ```
//! use pmcut::{generate, branch::solve_pmc, cut::is_perfect_matching_cut};
//!
//! let cube = generate::cube();
//! let r = solve_pmc(&cube);
//! assert!(r.has_pmc);
//! assert!(is_perfect_matching_cut(&cube, r.certificate.as_ref().unwrap()));
//! assert!(!solve_pmc(&generate::cycle(6)).has_pmc);
//! ```

pub mod branch;
pub mod cut;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod sat;
pub mod solve;
pub mod structure;

pub use cut::{classify_cut, Cut, CutClass, Side};
pub use graph::{Graph, GraphError};
pub use solve::{solve_with, Algorithm, SolveError, SolveResult, SolveStats};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }
    chapter!(Introduction, "introduction.md");
    chapter!(Graphs, "graphs.md");
    chapter!(Oracle, "oracle.md");
    chapter!(Branch, "branch.md");
    chapter!(Factors, "factors.md");
    chapter!(Classes, "classes.md");
    chapter!(Reductions, "reductions.md");
}
