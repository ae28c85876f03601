//! Result types shared by every solver, the component-wise driver, and
//! algorithm dispatch.

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::branch::{self, SolverOptions};
use crate::cut::{classify_cut, Cut, CutClass, Side};
use crate::graph::Graph;
use crate::oracle::{self, OracleError, OracleLimits};
use crate::poly::{self, TWitness};
use crate::structure::connected_components;

/// Reduction (`R*`) and branching (`B*`) rules of the branch-and-reduce
/// solver, in preference order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R10,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7, Rule::R8,
        Rule::R10, Rule::B1, Rule::B2, Rule::B3, Rule::B4, Rule::B5, Rule::B6, Rule::B7,
    ];

    pub const BRANCHING: [Rule; 7] =
        [Rule::B1, Rule::B2, Rule::B3, Rule::B4, Rule::B5, Rule::B6, Rule::B7];

    pub fn name(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R10 => "R10",
            Rule::B1 => "B1",
            Rule::B2 => "B2",
            Rule::B3 => "B3",
            Rule::B4 => "B4",
            Rule::B5 => "B5",
            Rule::B6 => "B6",
            Rule::B7 => "B7",
        }
    }

    pub fn is_branching(self) -> bool {
        self >= Rule::B1
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Firing counts per rule. Serialises as a JSON object keyed `"R1"`..`"B7"`;
/// `"R10"` only appears when it fired.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleCounts([u64; 16]);

impl RuleCounts {
    pub fn bump(&mut self, r: Rule) {
        self.0[r as usize] += 1;
    }

    pub fn get(&self, r: Rule) -> u64 {
        self.0[r as usize]
    }

    pub fn add(&mut self, other: &RuleCounts) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

impl Serialize for RuleCounts {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let shown = Rule::ALL.iter().filter(|&&r| r != Rule::R10 || self.get(r) > 0);
        let mut map = s.serialize_map(None)?;
        for &r in shown {
            map.serialize_entry(r.name(), &self.get(r))?;
        }
        map.end()
    }
}

/// One branching node as seen by the measure audit: the actual number of
/// free vertices each child fixes, next to the rule's proven lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchRecord {
    pub rule: Rule,
    pub decreases: Vec<usize>,
    pub minimums: Vec<usize>,
}

impl BranchRecord {
    pub fn meets_bound(&self) -> bool {
        self.decreases.len() == self.minimums.len()
            && self.decreases.len() >= 2
            && self.decreases.iter().zip(&self.minimums).all(|(d, m)| d >= m)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub rule_counts: RuleCounts,
    pub depth: usize,
    /// The seed edge whose search produced the certificate (0-based ids).
    pub seed_edge: Option<(usize, usize)>,
    /// Filled only when the audit option is on.
    #[serde(skip)]
    pub audit: Vec<BranchRecord>,
}

impl SolveStats {
    pub fn absorb(&mut self, other: SolveStats) {
        self.nodes += other.nodes;
        self.rule_counts.add(&other.rule_counts);
        self.depth = self.depth.max(other.depth);
        if self.seed_edge.is_none() {
            self.seed_edge = other.seed_edge;
        }
        self.audit.extend(other.audit);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub has_pmc: bool,
    pub certificate: Option<Cut>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn no(stats: SolveStats) -> Self {
        SolveResult { has_pmc: false, certificate: None, stats }
    }

    pub fn yes(cut: Cut, stats: SolveStats) -> Self {
        SolveResult { has_pmc: true, certificate: Some(cut), stats }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("maximum degree {0} exceeds 2")]
    DegreeTooLarge(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("input is not pseudo-chordal: edge {0}-{1} of a non-trivial block lies on no triangle")]
    NotPseudoChordal(usize, usize),
    #[error("input contains the subdivided claw as an induced subgraph: {0}")]
    NotTFree(TWitness),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Splits `g` into connected components, solves each with `solve`, and
/// merges the per-component certificates. Stops at the first component
/// without a perfect matching cut; odd components are rejected outright.
pub(crate) fn by_components<E>(
    g: &Graph,
    mut solve: impl FnMut(&Graph) -> Result<SolveResult, E>,
) -> Result<SolveResult, E> {
    let mut stats = SolveStats::default();
    if g.n() == 0 {
        return Ok(SolveResult::no(stats));
    }
    let mut sides = vec![Side::X; g.n()];
    for comp in connected_components(g) {
        if comp.len() % 2 == 1 {
            return Ok(SolveResult::no(stats));
        }
        let (sub, map) = g.induced_subgraph(&comp);
        let mut r = solve(&sub)?;
        if let Some((a, b)) = r.stats.seed_edge.take() {
            r.stats.seed_edge = Some((map[a], map[b]));
        }
        stats.absorb(r.stats);
        let Some(cut) = r.certificate.filter(|_| r.has_pmc) else {
            return Ok(SolveResult::no(stats));
        };
        for (i, &v) in map.iter().enumerate() {
            sides[v] = cut.side(i);
        }
    }
    let cut = Cut::new(sides);
    assert_certificate(g, &cut);
    Ok(SolveResult::yes(cut, stats))
}

/// Every certificate leaving a solver goes through here.
pub(crate) fn assert_certificate(g: &Graph, cut: &Cut) {
    assert_eq!(
        classify_cut(g, cut),
        Ok(CutClass::PerfectMatchingCut),
        "solver produced an invalid certificate"
    );
}

/// Solver selector. `Auto` tries the specialised algorithms first:
/// max-degree-2, then pseudo-chordal, then T-free, then branch-and-reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Auto,
    Oracle,
    Branch,
    Tfree,
    Pseudochordal,
    Deg2,
}

impl Algorithm {
    pub const CONCRETE: [Algorithm; 5] = [
        Algorithm::Deg2,
        Algorithm::Pseudochordal,
        Algorithm::Tfree,
        Algorithm::Branch,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::Branch => "branch",
            Algorithm::Tfree => "tfree",
            Algorithm::Pseudochordal => "pseudochordal",
            Algorithm::Deg2 => "deg2",
        }
    }

    /// Whether the algorithm's input contract holds for `g`.
    pub fn applicable(self, g: &Graph, limits: &OracleLimits) -> bool {
        match self {
            Algorithm::Auto | Algorithm::Branch => true,
            Algorithm::Oracle => g.n() <= limits.max_vertices_pmc,
            Algorithm::Deg2 => crate::structure::max_degree(g) <= 2,
            Algorithm::Pseudochordal => poly::is_pseudo_chordal(g).is_ok(),
            Algorithm::Tfree => poly::is_t_free(g).is_ok(),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Algorithm::Auto]
            .into_iter()
            .chain(Algorithm::CONCRETE)
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Runs `algo` on `g` and reports which concrete algorithm ran.
pub fn solve_with(
    algo: Algorithm,
    g: &Graph,
    opts: &SolverOptions,
    limits: &OracleLimits,
) -> Result<(Algorithm, SolveResult), SolveError> {
    let concrete = match algo {
        Algorithm::Auto => [Algorithm::Deg2, Algorithm::Pseudochordal, Algorithm::Tfree]
            .into_iter()
            .find(|a| a.applicable(g, limits))
            .unwrap_or(Algorithm::Branch),
        a => a,
    };
    let result = match concrete {
        Algorithm::Deg2 => poly::solve_max_deg2(g)?,
        Algorithm::Pseudochordal => poly::solve_pseudo_chordal(g)?,
        Algorithm::Tfree => poly::solve_t_free(g)?,
        Algorithm::Branch | Algorithm::Auto => branch::solve_pmc_with(g, opts),
        Algorithm::Oracle => {
            let cut = oracle::has_pmc_oracle(g, limits)?;
            match cut {
                Some(c) => SolveResult::yes(c, SolveStats::default()),
                None => SolveResult::no(SolveStats::default()),
            }
        }
    };
    if let Some(cut) = &result.certificate {
        assert_certificate(g, cut);
    }
    Ok((concrete, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn rule_counts_serialise_in_rule_order() {
        let mut c = RuleCounts::default();
        c.bump(Rule::B3);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.starts_with(r#"{"R1":0,"R2":0"#));
        assert!(json.contains(r#""B3":1"#));
        assert!(!json.contains("R10"));
        c.bump(Rule::R10);
        assert!(serde_json::to_string(&c).unwrap().contains(r#""R10":1"#));
    }

    #[test]
    fn auto_dispatch_order() {
        let lim = OracleLimits::default();
        let opts = SolverOptions::default();
        let (a, r) = solve_with(Algorithm::Auto, &generate::cycle(8), &opts, &lim).unwrap();
        assert_eq!(a, Algorithm::Deg2);
        assert!(r.has_pmc);
        let (a, _) = solve_with(Algorithm::Auto, &generate::complete(4), &opts, &lim).unwrap();
        assert_eq!(a, Algorithm::Pseudochordal);
        let (a, r) = solve_with(Algorithm::Auto, &generate::cube(), &opts, &lim).unwrap();
        assert_eq!(a, Algorithm::Tfree);
        assert!(r.has_pmc);
        let (a, _) = solve_with(Algorithm::Auto, &generate::petersen(), &opts, &lim).unwrap();
        assert_eq!(a, Algorithm::Branch);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::CONCRETE {
            assert_eq!(a.name().parse::<Algorithm>(), Ok(a));
        }
        assert!("quantum".parse::<Algorithm>().is_err());
    }

    #[test]
    fn by_components_rejects_odd_and_merges() {
        let g = generate::cycle(4).disjoint_union(&generate::path(2));
        let r = by_components(&g, |sub| -> Result<_, ()> {
            let cut = oracle::has_pmc_oracle(sub, &OracleLimits::default()).unwrap().unwrap();
            Ok(SolveResult::yes(cut, SolveStats::default()))
        })
        .unwrap();
        assert!(r.has_pmc);
        let odd = generate::path(3).disjoint_union(&generate::cycle(4));
        let r = by_components(&odd, |_| -> Result<SolveResult, ()> { unreachable!() }).unwrap();
        assert!(!r.has_pmc);
    }
}
