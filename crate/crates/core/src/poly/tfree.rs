use std::fmt;

use serde::Serialize;

use crate::branch::{apply_reductions, terminal_check, Label, Reduction, ReductionOptions, SolverState};
use crate::graph::Graph;
use crate::solve::{by_components, Rule, SolveError, SolveResult, SolveStats};

/// Six vertices inducing the subdivided claw: the path
/// `far[0] - near[0] - center - near[1] - far[1]` plus the edge
/// `center - leaf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TWitness {
    pub center: usize,
    pub leaf: usize,
    pub near: [usize; 2],
    pub far: [usize; 2],
}

impl TWitness {
    pub fn vertices(&self) -> [usize; 6] {
        [self.far[0], self.near[0], self.center, self.near[1], self.far[1], self.leaf]
    }

    /// True iff the six vertices are distinct and induce exactly the five
    /// edges of the tree.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let vs = self.vertices();
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut sorted = vs;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        // Positions: 0-1-2-3-4 is the path, 5 hangs off 2.
        let tree = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)];
        (0..6).all(|i| {
            (i + 1..6).all(|j| g.has_edge(vs[i], vs[j]) == tree.contains(&(i, j)))
        })
    }
}

impl fmt::Display for TWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "path {}-{}-{}-{}-{} with leaf {} at {}",
            self.far[0], self.near[0], self.center, self.near[1], self.far[1], self.leaf, self.center
        )
    }
}

/// `Err` carries an induced copy of the subdivided claw.
pub fn is_t_free(g: &Graph) -> Result<(), TWitness> {
    for c in g.vertices().filter(|&c| g.degree(c) >= 3) {
        let nb = g.neighbors(c);
        for (i, &p) in nb.iter().enumerate() {
            for (j, &q) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(p, q) {
                    continue;
                }
                for &r in &nb[j + 1..] {
                    if g.has_edge(p, r) || g.has_edge(q, r) {
                        continue;
                    }
                    // Any of the three may be the leaf.
                    for (leaf, b, d) in [(r, p, q), (q, p, r), (p, q, r)] {
                        if let Some(w) = extend_arms(g, c, leaf, b, d) {
                            return Err(w);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn extend_arms(g: &Graph, c: usize, leaf: usize, b: usize, d: usize) -> Option<TWitness> {
    let clean = |v: usize, avoid: &[usize]| v != c && !g.has_edge(v, c) && avoid.iter().all(|&a| a != v && !g.has_edge(v, a));
    for &a in g.neighbors(b) {
        if !clean(a, &[d, leaf]) {
            continue;
        }
        for &e in g.neighbors(d) {
            if clean(e, &[b, leaf, a]) {
                return Some(TWitness { center: c, leaf, near: [b, d], far: [a, e] });
            }
        }
    }
    None
}

/// What the case analysis concludes about a reduced state with free
/// vertices left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stuck {
    /// No perfect matching cut separates `A` and `B`.
    NoCut,
    Witness(TWitness),
    /// None of the cases produced a valid witness.
    Inconclusive,
}

/// Follows the case analysis for a state on which R1..R8 and R10 are
/// exhausted and `F` is non-empty.
pub fn stuck_state_analysis(s: &SolverState) -> Stuck {
    [Label::A, Label::B].into_iter().find_map(|l| analyse_side(s, l)).unwrap_or(Stuck::Inconclusive)
}

fn analyse_side(s: &SolverState, l: Label) -> Option<Stuck> {
    let g = s.graph();
    let o = l.opposite();
    let starred = |v: usize| s.count(v, s.label(v).opposite()) > 0;
    // x unmatched on side l, next to a matched x*.
    let (x, xs) = s
        .members(l)
        .into_iter()
        .filter(|&x| !starred(x))
        .find_map(|x| s.nbrs_with(x, l).find(|&w| starred(w)).map(|w| (x, w)))?;
    let ys = s.nbr_with(xs, o)?;
    let check = |w: TWitness| Some(if w.is_valid(g) { Stuck::Witness(w) } else { Stuck::Inconclusive });
    let fx = s.free_nbrs(x);

    // Some y on the other side shares two free neighbours with x.
    if let Some((y, _)) = s.second_counts(x, o).into_iter().find(|&(_, c)| c >= 2) {
        let c = s.common_free(x, y);
        let (u, v) = (c[0], c[1]);
        if !s.common_free(u, v).is_empty() {
            return Some(Stuck::NoCut);
        }
        let w = s.nbrs_with(u, Label::Free).find(|&w| !g.has_edge(w, v))?;
        return check(TWitness { center: x, leaf: v, near: [u, xs], far: [w, ys] });
    }
    // Unmatched vertices on the other side next to N(x) must see y*.
    for &u in &fx {
        for z in s.nbrs_with(u, o).filter(|&z| !starred(z)) {
            if !g.has_edge(z, ys) {
                let v = *fx.iter().find(|&&v| v != u)?;
                return check(TWitness { center: x, leaf: v, near: [u, xs], far: [z, ys] });
            }
        }
    }
    let (u, v) = (*fx.first()?, *fx.get(1)?);
    for (p, q) in [(u, v), (v, u)] {
        if s.count(p, o) == 0 {
            let w = s.nbrs_with(p, Label::Free).find(|&w| !g.has_edge(w, q))?;
            return check(TWitness { center: x, leaf: q, near: [p, xs], far: [w, ys] });
        }
    }
    let (y1, y2) = (s.nbr_with(u, o)?, s.nbr_with(v, o)?);
    if !g.has_edge(y1, y2) {
        return check(TWitness { center: ys, leaf: xs, near: [y1, y2], far: [u, v] });
    }
    let u2 = s.nbrs_with(y1, Label::Free).find(|&w| w != u)?;
    let v2 = s.nbrs_with(y2, Label::Free).find(|&w| w != v)?;
    let w = if g.has_edge(u, v2) {
        TWitness { center: x, leaf: v, near: [u, xs], far: [v2, ys] }
    } else if !g.has_edge(u2, v2) {
        TWitness { center: y1, leaf: u2, near: [y2, u], far: [v2, x] }
    } else {
        TWitness { center: y2, leaf: v, near: [v2, ys], far: [u2, xs] }
    };
    check(w)
}

/// Polynomial-time solver for graphs without an induced subdivided claw:
/// per seed edge, reductions alone (R1..R8 and R10) either fix every vertex
/// or show that the seed admits no cut.
pub fn solve_t_free(g: &Graph) -> Result<SolveResult, SolveError> {
    is_t_free(g).map_err(SolveError::NotTFree)?;
    by_components(g, solve_connected)
}

fn solve_connected(g: &Graph) -> Result<SolveResult, SolveError> {
    let opts = ReductionOptions { enable_r10: true };
    let mut stats = SolveStats::default();
    for (a, b) in g.edges() {
        stats.nodes += 1;
        let s = match apply_reductions(SolverState::seeded(g, a, b), &opts) {
            Reduction::Infeasible(inf) => {
                inf.trace.iter().for_each(|&r| stats.rule_counts.bump(r));
                stats.rule_counts.bump(Rule::R1);
                continue;
            }
            Reduction::Reduced(s) | Reduction::Exhausted(s) => s,
        };
        s.trace().iter().for_each(|&r| stats.rule_counts.bump(r));
        if s.free_count() > 0 {
            if let Stuck::Witness(w) = stuck_state_analysis(&s) {
                return Err(SolveError::NotTFree(w));
            }
            continue;
        }
        if let Some(cut) = terminal_check(&s).expect("no free vertices") {
            stats.seed_edge = Some((a, b));
            return Ok(SolveResult::yes(cut, stats));
        }
    }
    Ok(SolveResult::no(stats))
}
