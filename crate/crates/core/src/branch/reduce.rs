//! Reduction rules R1 to R8 (and the optional R10), applied in preference
//! order until none fires.

use std::collections::HashMap;
use std::fmt;

use super::state::{Label, SolverState};
use crate::solve::Rule;

/// Which STOP condition of R1 fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// A fixed vertex has two neighbours on the other side.
    TwoCrossNeighbours { v: usize },
    /// A free vertex has two A-neighbours and two B-neighbours.
    FreeVertexTorn { v: usize },
    /// An A-B edge whose ends share a free neighbour.
    CrossEdgeWithCommonFree { x: usize, y: usize },
    ThreeCommonFree { x: usize, y: usize },
    /// A fixed vertex with no neighbour left that could be its mate.
    NoPossibleMate { v: usize },
    /// `x ∈ A` and `y ∈ B`, neither matched yet, both relying on the same
    /// single free vertex `v`.
    SharedLoneFree { x: usize, y: usize, v: usize },
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StopReason::TwoCrossNeighbours { v } => write!(f, "vertex {v} has two neighbours across"),
            StopReason::FreeVertexTorn { v } => write!(f, "free vertex {v} has two neighbours on each side"),
            StopReason::CrossEdgeWithCommonFree { x, y } => {
                write!(f, "edge {x}-{y} crosses and its ends share a free neighbour")
            }
            StopReason::ThreeCommonFree { x, y } => write!(f, "{x} and {y} share three free neighbours"),
            StopReason::NoPossibleMate { v } => write!(f, "vertex {v} has no possible mate"),
            StopReason::SharedLoneFree { x, y, v } => {
                write!(f, "{x} and {y} both depend on the single free vertex {v}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasible {
    pub reason: StopReason,
    /// Rules applied before the stop, oldest first.
    pub trace: Vec<Rule>,
}

#[derive(Clone, Debug)]
pub enum Reduction<'g> {
    Reduced(SolverState<'g>),
    Infeasible(Infeasible),
    Exhausted(SolverState<'g>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionOptions {
    pub enable_r10: bool,
}

/// One rule application: the free vertices it moves to `A` and to `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub rule: Rule,
    pub to_a: Vec<usize>,
    pub to_b: Vec<usize>,
}

impl Move {
    fn to(rule: Rule, side: Label, mut vs: Vec<usize>) -> Move {
        vs.sort_unstable();
        vs.dedup();
        match side {
            Label::A => Move { rule, to_a: vs, to_b: Vec::new() },
            _ => Move { rule, to_a: Vec::new(), to_b: vs },
        }
    }
}

const SIDES: [Label; 2] = [Label::A, Label::B];

/// Applies the first applicable rule repeatedly, restarting from R1 after
/// every application.
pub fn apply_reductions<'g>(mut s: SolverState<'g>, opts: &ReductionOptions) -> Reduction<'g> {
    let mut applied = false;
    loop {
        if let Some(reason) = stop_reason(&s) {
            return Reduction::Infeasible(Infeasible { reason, trace: s.trace().to_vec() });
        }
        let Some(mv) = next_reduction(&s, opts) else { break };
        for &v in &mv.to_a {
            s.assign(v, Label::A);
        }
        for &v in &mv.to_b {
            s.assign(v, Label::B);
        }
        s.record(mv.rule);
        applied = true;
    }
    debug_assert_eq!(exhausted_facts(&s), Ok(()));
    if applied {
        Reduction::Reduced(s)
    } else {
        Reduction::Exhausted(s)
    }
}

/// The first STOP condition of R1 that holds, if any.
pub fn stop_reason(s: &SolverState) -> Option<StopReason> {
    let g = s.graph();
    for v in g.vertices() {
        let l = s.label(v);
        if l != Label::Free && s.count(v, l.opposite()) >= 2 {
            return Some(StopReason::TwoCrossNeighbours { v });
        }
    }
    for v in g.vertices() {
        if s.is_free(v) && s.count(v, Label::A) >= 2 && s.count(v, Label::B) >= 2 {
            return Some(StopReason::FreeVertexTorn { v });
        }
    }
    let a_set = s.a_set();
    for &x in &a_set {
        for y in s.nbrs_with(x, Label::B) {
            if !s.common_free(x, y).is_empty() {
                return Some(StopReason::CrossEdgeWithCommonFree { x, y });
            }
        }
    }
    for &x in &a_set {
        if let Some(&(y, _)) = s.second_counts(x, Label::B).iter().find(|&&(_, c)| c >= 3) {
            return Some(StopReason::ThreeCommonFree { x, y });
        }
    }
    for v in g.vertices() {
        let l = s.label(v);
        if l != Label::Free && s.count(v, l.opposite()) + s.count(v, Label::Free) == 0 {
            return Some(StopReason::NoPossibleMate { v });
        }
    }
    // Both ends must still be unmatched: if x already has its B-neighbour,
    // v simply joins A and serves y.
    for &x in &a_set {
        if s.count(x, Label::Free) != 1 || s.count(x, Label::B) != 0 {
            continue;
        }
        let v = s.nbr_with(x, Label::Free).unwrap();
        for y in s.nbrs_with(v, Label::B) {
            if s.count(y, Label::Free) == 1 && s.count(y, Label::A) == 0 {
                return Some(StopReason::SharedLoneFree { x, y, v });
            }
        }
    }
    None
}

/// The first applicable rule among R2..R8 (then R10 if enabled) and what it
/// would move. Within a rule the A-side variant is tried first and
/// candidates are scanned in ascending order.
pub fn next_reduction(s: &SolverState, opts: &ReductionOptions) -> Option<Move> {
    r2(s)
        .or_else(|| r3(s))
        .or_else(|| r4(s))
        .or_else(|| r5(s))
        .or_else(|| r6(s))
        .or_else(|| r7(s))
        .or_else(|| r8(s))
        .or_else(|| if opts.enable_r10 { r10(s) } else { None })
}

fn r2(s: &SolverState) -> Option<Move> {
    let g = s.graph();
    for side in SIDES {
        if let Some(v) = g.vertices().find(|&v| s.is_free(v) && s.count(v, side) >= 2) {
            return Some(Move::to(Rule::R2, side, vec![v]));
        }
    }
    for side in SIDES {
        for z in s.members(side) {
            if s.count(z, Label::Free) < 3 {
                continue;
            }
            let hit = s.second_counts(z, Label::Free).into_iter().find(|&(_, c)| c >= 3);
            if let Some((v, _)) = hit {
                let mut vs = s.common_free(v, z);
                vs.push(v);
                return Some(Move::to(Rule::R2, side, vs));
            }
        }
    }
    None
}

fn r3(s: &SolverState) -> Option<Move> {
    let g = s.graph();
    for side in SIDES {
        for z in s.members(side) {
            let w = s.free_nbrs(z);
            for (i, &u) in w.iter().enumerate() {
                if let Some(&v) = w[i + 1..].iter().find(|&&v| g.has_edge(u, v)) {
                    return Some(Move::to(Rule::R3, side, vec![u, v]));
                }
            }
        }
    }
    None
}

fn r4(s: &SolverState) -> Option<Move> {
    for x in s.a_set() {
        for y in s.nbrs_with(x, Label::B) {
            let (to_a, to_b) = (s.free_nbrs(x), s.free_nbrs(y));
            if !to_a.is_empty() || !to_b.is_empty() {
                return Some(Move { rule: Rule::R4, to_a, to_b });
            }
        }
    }
    None
}

fn r5(s: &SolverState) -> Option<Move> {
    let g = s.graph();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for u in g.vertices() {
        if !s.is_free(u) || g.degree(u) != 2 || s.count(u, Label::A) != 1 || s.count(u, Label::B) != 1 {
            continue;
        }
        let key = (s.nbr_with(u, Label::A).unwrap(), s.nbr_with(u, Label::B).unwrap());
        if let Some(&first) = seen.get(&key) {
            return Some(Move { rule: Rule::R5, to_a: vec![first], to_b: vec![u] });
        }
        seen.insert(key, u);
    }
    None
}

fn r6(s: &SolverState) -> Option<Move> {
    for side in SIDES {
        for z in s.members(side) {
            if s.count(z, Label::Free) == 1 && s.count(z, side.opposite()) == 0 {
                let v = s.nbr_with(z, Label::Free).unwrap();
                return Some(Move::to(Rule::R6, side.opposite(), vec![v]));
            }
        }
    }
    None
}

fn r7(s: &SolverState) -> Option<Move> {
    let g = s.graph();
    for side in SIDES {
        for z in s.members(side) {
            for v in s.nbrs_with(z, Label::Free) {
                let target = match g.degree(v) {
                    1 => Some(v),
                    2 => g.neighbors(v).iter().copied().find(|&w| w != z).filter(|&w| s.is_free(w)),
                    _ => None,
                };
                if let Some(t) = target {
                    return Some(Move::to(Rule::R7, side.opposite(), vec![t]));
                }
            }
        }
    }
    None
}

fn r8(s: &SolverState) -> Option<Move> {
    for x in s.a_set() {
        if s.count(x, Label::Free) < 2 {
            continue;
        }
        for (y, c) in s.second_counts(x, Label::B) {
            if c != 2 || (s.count(x, Label::Free) < 3 && s.count(y, Label::Free) < 3) {
                continue;
            }
            let g = s.graph();
            let to_a: Vec<usize> = s.nbrs_with(x, Label::Free).filter(|&w| !g.has_edge(w, y)).collect();
            let to_b: Vec<usize> = s.nbrs_with(y, Label::Free).filter(|&w| !g.has_edge(w, x)).collect();
            return Some(Move { rule: Rule::R8, to_a, to_b });
        }
    }
    None
}

/// Two free neighbours of a fixed vertex with two common free neighbours
/// must land on the fixed vertex's side (only safe as a perfect matching
/// cut rule).
fn r10(s: &SolverState) -> Option<Move> {
    for side in SIDES {
        for z in s.members(side) {
            let w = s.free_nbrs(z);
            for (i, &u) in w.iter().enumerate() {
                for &v in &w[i + 1..] {
                    if s.common_free(u, v).len() >= 2 {
                        return Some(Move::to(Rule::R10, side, vec![u, v]));
                    }
                }
            }
        }
    }
    None
}

/// The four properties that hold once no rule among R1..R4 applies.
pub fn exhausted_facts(s: &SolverState) -> Result<(), String> {
    let g = s.graph();
    for x in s.a_set() {
        if s.count(x, Label::B) > 1 {
            return Err(format!("{x} has two B-neighbours"));
        }
        if let Some((y, _)) = s.second_counts(x, Label::B).into_iter().find(|&(_, c)| c > 2) {
            return Err(format!("{x} and {y} share more than two free neighbours"));
        }
    }
    for v in g.vertices() {
        match s.label(v) {
            Label::Free => {
                if s.count(v, Label::A) > 1 || s.count(v, Label::B) > 1 {
                    return Err(format!("free vertex {v} has two neighbours on one side"));
                }
            }
            l => {
                if s.count(v, l.opposite()) > 1 {
                    return Err(format!("{v} has two neighbours across"));
                }
                let w = s.free_nbrs(v);
                for (i, &a) in w.iter().enumerate() {
                    if w[i + 1..].iter().any(|&b| g.has_edge(a, b)) {
                        return Err(format!("free neighbours of {v} are not independent"));
                    }
                }
                if s.count(v, l.opposite()) > 0 && !w.is_empty() {
                    return Err(format!("{v} is matched across but still has free neighbours"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn first_move(g: &Graph, a: &[usize], b: &[usize]) -> Option<Move> {
        next_reduction(&SolverState::from_sets(g, a, b), &ReductionOptions::default())
    }

    #[test]
    fn r6_sends_lone_free_neighbour_across() {
        // x=0 in A with the single free neighbour 1.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let s = SolverState::from_sets(&g, &[0], &[]);
        assert_eq!(r6(&s), Some(Move { rule: Rule::R6, to_a: vec![], to_b: vec![1] }));
    }

    #[test]
    fn r1_cross_edge_with_common_free_neighbour() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let s = SolverState::from_sets(&g, &[0], &[1]);
        assert_eq!(stop_reason(&s), Some(StopReason::CrossEdgeWithCommonFree { x: 0, y: 1 }));
        assert!(matches!(
            apply_reductions(s, &ReductionOptions::default()),
            Reduction::Infeasible(Infeasible { reason: StopReason::CrossEdgeWithCommonFree { .. }, .. })
        ));
    }

    #[test]
    fn r2_pulls_vertex_with_two_a_neighbours() {
        // 2 is adjacent to 0 and 1, both in A.
        let g = Graph::from_edges(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let m = first_move(&g, &[0, 1], &[]).unwrap();
        assert_eq!((m.rule, m.to_a), (Rule::R2, vec![2]));
    }

    #[test]
    fn r2_second_bullet() {
        // z=0 in A with free neighbours 1,2,3, all adjacent to 4.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let m = first_move(&g, &[0], &[]).unwrap();
        assert_eq!((m.rule, m.to_a), (Rule::R2, vec![1, 2, 3, 4]));
    }

    #[test]
    fn r3_adjacent_free_neighbours() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let m = first_move(&g, &[0], &[]).unwrap();
        assert_eq!((m.rule, m.to_a), (Rule::R3, vec![1, 2]));
    }

    #[test]
    fn r4_fills_both_sides_of_a_cross_edge() {
        // Path 2-0-1-3 with 0 in A and 1 in B.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let m = first_move(&g, &[0], &[1]).unwrap();
        assert_eq!(m, Move { rule: Rule::R4, to_a: vec![2], to_b: vec![3] });
    }

    #[test]
    fn r5_twins_split() {
        // 2 and 3 both adjacent to exactly 0 (A) and 1 (B).
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let m = first_move(&g, &[0], &[1]).unwrap();
        assert_eq!(m, Move { rule: Rule::R5, to_a: vec![2], to_b: vec![3] });
    }

    #[test]
    fn r7_pendant_and_degree_two() {
        // 0 in A with free neighbours 1 (pendant) and 2 (degree 2, other neighbour 3).
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        let m = first_move(&g, &[0], &[]).unwrap();
        assert_eq!((m.rule, m.to_b), (Rule::R7, vec![1]));
    }

    #[test]
    fn r8_splits_private_neighbourhoods() {
        // x=0 in A with free 2,3,4; y=1 in B with free 2,3,5.
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5), (4, 5)]).unwrap();
        let s = SolverState::from_sets(&g, &[0], &[1]);
        assert_eq!(r8(&s), Some(Move { rule: Rule::R8, to_a: vec![4], to_b: vec![5] }));
    }

    #[test]
    fn lone_free_stop_needs_unmatched_ends() {
        // y'-x-v-y: x already matched to y', so v can join A and serve y.
        let g = Graph::from_edges(4, &[(3, 0), (0, 1), (1, 2)]).unwrap();
        let s = SolverState::from_sets(&g, &[0], &[2, 3]);
        assert_eq!(stop_reason(&s), None);
        // Without y' the stop is correct.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let s = SolverState::from_sets(&g, &[0], &[2]);
        assert_eq!(stop_reason(&s), Some(StopReason::SharedLoneFree { x: 0, y: 2, v: 1 }));
    }

    #[test]
    fn r10_is_opt_in() {
        // 0 in A; free 1,2 with common free neighbours 3,4; 1,2 non-adjacent.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        let s = SolverState::from_sets(&g, &[0], &[]);
        assert_eq!(r10(&s).map(|m| m.to_a), Some(vec![1, 2]));
        let on = ReductionOptions { enable_r10: true };
        assert!(next_reduction(&s, &on).is_some());
    }
}
