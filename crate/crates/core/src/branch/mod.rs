//! Exact branch-and-reduce search for a perfect matching cut.
//!
//! For every seed edge `ab` of a connected graph the search starts from
//! `A = {a}`, `B = {b}` and alternates exhaustive reduction with branching
//! until every vertex is fixed or the state is infeasible.

mod factor;
mod reduce;
mod rules;
mod state;

use std::convert::Infallible;

use rayon::prelude::*;
use thiserror::Error;

pub use factor::{branching_factor, rule_minimum_vector, rule_worst_factor, BranchVector, FactorError};
pub use reduce::{
    apply_reductions, exhausted_facts, next_reduction, stop_reason, Infeasible, Move, Reduction,
    ReductionOptions, StopReason,
};
pub use rules::{select_branch, BranchChoice};
pub use state::{Label, SolverState};

use crate::cut::{classify_cut, Cut, CutClass, Side};
use crate::graph::Graph;
use crate::solve::{assert_certificate, by_components, BranchRecord, Rule, SolveError, SolveResult, SolveStats};
use crate::structure::connected_components;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Also apply R10 during reduction.
    pub enable_r10: bool,
    /// Record every branching node in [`SolveStats::audit`].
    pub audit: bool,
    /// Seed edges searched concurrently; results are identical for any value.
    pub threads: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { enable_r10: false, audit: false, threads: 1 }
    }
}

impl SolverOptions {
    fn reduction(&self) -> ReductionOptions {
        ReductionOptions { enable_r10: self.enable_r10 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0} vertices are still free")]
pub struct NotTerminal(pub usize);

/// With `F` empty, `(A, B)` itself is the only candidate.
pub fn terminal_check(s: &SolverState) -> Result<Option<Cut>, NotTerminal> {
    let cut = s.to_cut().ok_or(NotTerminal(s.free_count()))?;
    Ok((classify_cut(s.graph(), &cut) == Ok(CutClass::PerfectMatchingCut)).then_some(cut))
}

pub fn solve_pmc(g: &Graph) -> SolveResult {
    solve_pmc_with(g, &SolverOptions::default())
}

pub fn solve_pmc_with(g: &Graph, opts: &SolverOptions) -> SolveResult {
    let r = by_components(g, |c| Ok::<_, Infallible>(solve_connected(c, opts)));
    match r {
        Ok(r) => r,
        Err(e) => match e {},
    }
}

/// Decides whether a perfect matching cut puts `a` in X and `b` in Y.
pub fn solve_from_seed(g: &Graph, a: usize, b: usize) -> Result<SolveResult, SolveError> {
    solve_from_seed_with(g, a, b, &SolverOptions::default())
}

pub fn solve_from_seed_with(
    g: &Graph,
    a: usize,
    b: usize,
    opts: &SolverOptions,
) -> Result<SolveResult, SolveError> {
    if a >= g.n() || b >= g.n() || !g.has_edge(a, b) {
        return Err(SolveError::NotAnEdge(a, b));
    }
    let comps = connected_components(g);
    let home = comps.iter().position(|c| c.binary_search(&a).is_ok()).unwrap();
    let (sub, map) = g.induced_subgraph(&comps[home]);
    let local = |v: usize| map.iter().position(|&w| w == v).unwrap();
    let (found, mut stats) = search(&sub, local(a), local(b), opts);
    stats.seed_edge = stats.seed_edge.map(|(x, y)| (map[x], map[y]));
    let Some(cut) = found else { return Ok(SolveResult::no(stats)) };

    let mut sides = vec![Side::X; g.n()];
    for (i, &v) in map.iter().enumerate() {
        sides[v] = cut.side(i);
    }
    // The remaining components only need some perfect matching cut.
    let rest: Vec<usize> = comps.iter().enumerate().filter(|&(i, _)| i != home).flat_map(|(_, c)| c.clone()).collect();
    if !rest.is_empty() {
        let (others, omap) = g.induced_subgraph(&rest);
        let r = solve_pmc_with(&others, opts);
        stats.nodes += r.stats.nodes;
        stats.rule_counts.add(&r.stats.rule_counts);
        stats.depth = stats.depth.max(r.stats.depth);
        stats.audit.extend(r.stats.audit);
        let Some(oc) = r.certificate else { return Ok(SolveResult::no(stats)) };
        for (i, &v) in omap.iter().enumerate() {
            sides[v] = oc.side(i);
        }
    }
    let cut = Cut::new(sides);
    assert_certificate(g, &cut);
    Ok(SolveResult::yes(cut, stats))
}

/// Tries every edge of a connected graph as seed, in ascending edge order.
/// With several threads the seeds are searched in batches and the lowest
/// successful seed wins, so the answer never depends on scheduling.
fn solve_connected(g: &Graph, opts: &SolverOptions) -> SolveResult {
    let seeds: Vec<(usize, usize)> = g.edges().collect();
    let mut stats = SolveStats::default();
    let threads = opts.threads.max(1);
    let pool = (threads > 1).then(|| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
    });
    for batch in seeds.chunks(threads) {
        let results: Vec<(Option<Cut>, SolveStats)> = match &pool {
            Some(p) => p.install(|| batch.par_iter().map(|&(a, b)| search(g, a, b, opts)).collect()),
            None => batch.iter().map(|&(a, b)| search(g, a, b, opts)).collect(),
        };
        for (found, st) in results {
            stats.absorb(st);
            if let Some(cut) = found {
                return SolveResult::yes(cut, stats);
            }
        }
    }
    stats.seed_edge = None;
    SolveResult::no(stats)
}

fn count_trace(stats: &mut SolveStats, trace: &[Rule]) {
    for &r in trace {
        if !r.is_branching() {
            stats.rule_counts.bump(r);
        }
    }
}

/// Depth-first search from one seed edge of a connected graph.
pub(crate) fn search(g: &Graph, a: usize, b: usize, opts: &SolverOptions) -> (Option<Cut>, SolveStats) {
    let mut stats = SolveStats::default();
    let ropts = opts.reduction();
    let mut stack = vec![SolverState::seeded(g, a, b)];
    while let Some(s) = stack.pop() {
        stats.nodes += 1;
        stats.depth = stats.depth.max(s.depth());
        let s = match apply_reductions(s, &ropts) {
            Reduction::Infeasible(inf) => {
                count_trace(&mut stats, &inf.trace);
                stats.rule_counts.bump(Rule::R1);
                continue;
            }
            Reduction::Reduced(s) | Reduction::Exhausted(s) => {
                count_trace(&mut stats, s.trace());
                s
            }
        };
        if s.free_count() == 0 {
            if let Some(cut) = terminal_check(&s).expect("no free vertices") {
                stats.seed_edge = Some((a, b));
                return (Some(cut), stats);
            }
            continue;
        }
        let br = select_branch(&s).expect("connected graph: some fixed vertex has a free neighbour");
        stats.rule_counts.bump(br.rule);
        if opts.audit {
            stats.audit.push(BranchRecord {
                rule: br.rule,
                decreases: br.vector.decreases().to_vec(),
                minimums: br.minimums.clone(),
            });
        }
        // Reverse so the first child is explored first.
        stack.extend(br.children.into_iter().rev().flatten());
    }
    (None, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::oracle::{enumerate_pmcs, has_pmc_oracle, OracleLimits};

    #[test]
    fn named_graphs() {
        assert!(solve_pmc(&generate::cube()).has_pmc);
        assert!(!solve_pmc(&generate::cycle(6)).has_pmc);
        assert!(solve_pmc(&generate::cycle(8)).has_pmc);
        assert!(!solve_pmc(&generate::complete(4)).has_pmc);
        // The spokes separate the outer and the inner 5-cycle.
        assert!(solve_pmc(&generate::petersen()).has_pmc);
        assert!(solve_pmc(&generate::path(2)).has_pmc);
        assert!(!solve_pmc(&generate::path(3)).has_pmc);
        assert!(!solve_pmc(&Graph::empty(0)).has_pmc);
    }

    #[test]
    fn cube_certificate_is_one_of_the_three() {
        let cube = generate::cube();
        let r = solve_pmc(&cube);
        let all = enumerate_pmcs(&cube, &OracleLimits::default()).unwrap();
        assert!(all.contains(&r.certificate.unwrap().canonical()));
    }

    #[test]
    fn seeded_examples() {
        let c4 = generate::cycle(4);
        let r = solve_from_seed(&c4, 0, 1).unwrap();
        let cut = r.certificate.unwrap();
        assert_eq!((cut.side(0), cut.side(1)), (Side::X, Side::Y));

        let k4 = generate::complete(4);
        for (a, b) in k4.edges() {
            assert!(!solve_from_seed(&k4, a, b).unwrap().has_pmc);
        }
        // P4's unique cut is {a, d} against {b, c}: the end edges cross,
        // the middle one does not.
        let p4 = generate::path(4);
        assert!(solve_from_seed(&p4, 0, 1).unwrap().has_pmc);
        assert!(solve_from_seed(&p4, 3, 2).unwrap().has_pmc);
        assert!(!solve_from_seed(&p4, 1, 2).unwrap().has_pmc);
        assert_eq!(solve_from_seed(&p4, 0, 2), Err(SolveError::NotAnEdge(0, 2)));
    }

    #[test]
    fn seeded_on_disconnected_input() {
        let g = generate::path(4).disjoint_union(&generate::cycle(4));
        let r = solve_from_seed(&g, 0, 1).unwrap();
        assert!(r.has_pmc);
        assert_eq!(r.certificate.unwrap().side(0), Side::X);
        let g = generate::path(4).disjoint_union(&generate::cycle(6));
        assert!(!solve_from_seed(&g, 0, 1).unwrap().has_pmc);
    }

    #[test]
    fn terminal_examples() {
        let cube = generate::cube();
        let s = SolverState::from_sets(&cube, &[0, 2, 3, 5], &[1, 4, 6, 7]);
        assert!(terminal_check(&s).unwrap().is_some());
        let p3 = generate::path(4);
        let s = SolverState::from_sets(&p3, &[1], &[0, 2, 3]);
        assert_eq!(terminal_check(&s), Ok(None));
        let k2 = generate::path(2);
        assert!(terminal_check(&SolverState::seeded(&k2, 0, 1)).unwrap().is_some());
        assert_eq!(terminal_check(&SolverState::seeded(&p3, 1, 2)), Err(NotTerminal(2)));
    }

    #[test]
    fn threads_do_not_change_the_answer() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = generate::random_connected(14, 22, &mut rng);
            let one = solve_pmc(&g);
            let four = solve_pmc_with(&g, &SolverOptions { threads: 4, ..Default::default() });
            assert_eq!(one.has_pmc, four.has_pmc);
            assert_eq!(one.certificate, four.certificate);
            assert_eq!(one.stats.seed_edge, four.stats.seed_edge);
        }
    }

    #[test]
    fn agrees_with_oracle_on_random_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let lim = OracleLimits::default();
        for i in 0..300 {
            let n = 2 + i % 11;
            let m = n - 1 + (i * 7) % (n + 3);
            let g = generate::random_connected(n, m, &mut rng);
            let expect = has_pmc_oracle(&g, &lim).unwrap().is_some();
            let r = solve_pmc_with(&g, &SolverOptions { audit: true, ..Default::default() });
            assert_eq!(r.has_pmc, expect, "{g:?}");
            let r10 = solve_pmc_with(&g, &SolverOptions { enable_r10: true, ..Default::default() });
            assert_eq!(r10.has_pmc, expect, "R10 on {g:?}");
        }
    }
}
