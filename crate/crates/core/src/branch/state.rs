use crate::cut::{Cut, Side};
use crate::graph::Graph;
use crate::solve::Rule;

/// Where a vertex currently sits: in `A` (destined for X), in `B` (destined
/// for Y) or still free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    A,
    B,
    Free,
}

impl Label {
    /// Swaps `A` and `B`; `Free` stays `Free`.
    #[inline]
    pub fn opposite(self) -> Label {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
            Label::Free => Label::Free,
        }
    }

    #[inline]
    fn idx(self) -> usize {
        self as usize
    }
}

/// The triple `(A, B, F)` over a fixed graph, with per-vertex counts of
/// A-, B- and F-neighbours kept up to date as vertices leave `F`.
#[derive(Clone, Debug)]
pub struct SolverState<'g> {
    g: &'g Graph,
    labels: Vec<Label>,
    counts: Vec<[u32; 3]>,
    free: usize,
    depth: usize,
    trace: Vec<Rule>,
}

impl<'g> SolverState<'g> {
    /// Every vertex free.
    pub fn new(g: &'g Graph) -> Self {
        let counts = g.vertices().map(|v| [0, 0, g.degree(v) as u32]).collect();
        SolverState { g, labels: vec![Label::Free; g.n()], counts, free: g.n(), depth: 0, trace: Vec::new() }
    }

    /// `A = {a}`, `B = {b}`.
    pub fn seeded(g: &'g Graph, a: usize, b: usize) -> Self {
        Self::from_sets(g, &[a], &[b])
    }

    /// Panics if `a` and `b` overlap or name a vertex outside the graph.
    pub fn from_sets(g: &'g Graph, a: &[usize], b: &[usize]) -> Self {
        let mut s = Self::new(g);
        for &v in a {
            s.assign(v, Label::A);
        }
        for &v in b {
            s.assign(v, Label::B);
        }
        s
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    #[inline]
    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    #[inline]
    pub fn is_free(&self, v: usize) -> bool {
        self.labels[v] == Label::Free
    }

    /// Number of neighbours of `v` carrying label `l`.
    #[inline]
    pub fn count(&self, v: usize, l: Label) -> usize {
        self.counts[v][l.idx()] as usize
    }

    pub fn free_count(&self) -> usize {
        self.free
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Rules applied since this state was created by seeding or branching.
    pub fn trace(&self) -> &[Rule] {
        &self.trace
    }

    pub fn members(&self, l: Label) -> Vec<usize> {
        self.g.vertices().filter(|&v| self.labels[v] == l).collect()
    }

    pub fn a_set(&self) -> Vec<usize> {
        self.members(Label::A)
    }

    pub fn b_set(&self) -> Vec<usize> {
        self.members(Label::B)
    }

    pub fn f_set(&self) -> Vec<usize> {
        self.members(Label::Free)
    }

    /// Neighbours of `v` with label `l`, ascending.
    pub fn nbrs_with(&self, v: usize, l: Label) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).iter().copied().filter(move |&w| self.labels[w] == l)
    }

    pub fn free_nbrs(&self, v: usize) -> Vec<usize> {
        self.nbrs_with(v, Label::Free).collect()
    }

    /// The first neighbour of `v` with label `l`.
    pub fn nbr_with(&self, v: usize, l: Label) -> Option<usize> {
        self.nbrs_with(v, l).next()
    }

    /// `N(x) ∩ N(y) ∩ F`, ascending.
    pub fn common_free(&self, x: usize, y: usize) -> Vec<usize> {
        let (a, b) = (self.g.neighbors(x), self.g.neighbors(y));
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if self.is_free(a[i]) {
                        out.push(a[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// For every vertex `w` labelled `target`, the number of free neighbours
    /// of `z` adjacent to `w`; only non-zero entries, ascending by `w`.
    pub fn second_counts(&self, z: usize, target: Label) -> Vec<(usize, usize)> {
        let mut hits: Vec<usize> = Vec::new();
        for u in self.nbrs_with(z, Label::Free) {
            hits.extend(self.nbrs_with(u, target).filter(|&w| w != z));
        }
        hits.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for w in hits {
            match out.last_mut() {
                Some((last, c)) if *last == w => *c += 1,
                _ => out.push((w, 1)),
            }
        }
        out
    }

    /// Moves a free vertex into `A` or `B`.
    pub(crate) fn assign(&mut self, v: usize, l: Label) {
        assert!(l != Label::Free, "cannot free a vertex");
        assert!(self.is_free(v), "vertex {v} is already fixed");
        self.labels[v] = l;
        self.free -= 1;
        for &w in self.g.neighbors(v) {
            self.counts[w][Label::Free.idx()] -= 1;
            self.counts[w][l.idx()] += 1;
        }
    }

    pub(crate) fn record(&mut self, r: Rule) {
        self.trace.push(r);
    }

    pub(crate) fn into_child(mut self, rule: Rule) -> Self {
        self.depth += 1;
        self.trace.clear();
        self.trace.push(rule);
        self
    }

    /// `(A, B)` as a cut with `A` on side X; `None` while vertices are free.
    pub fn to_cut(&self) -> Option<Cut> {
        if self.free > 0 {
            return None;
        }
        let sides = self.labels.iter().map(|&l| if l == Label::A { Side::X } else { Side::Y }).collect();
        Some(Cut::new(sides))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn counts_follow_assignments() {
        let g = generate::cycle(6);
        let s = SolverState::seeded(&g, 0, 1);
        assert_eq!(s.free_count(), 4);
        assert_eq!(s.count(0, Label::B), 1);
        assert_eq!(s.count(0, Label::Free), 1);
        assert_eq!(s.count(5, Label::A), 1);
        assert_eq!(s.count(2, Label::B), 1);
        assert_eq!(s.f_set(), vec![2, 3, 4, 5]);
        assert_eq!(s.to_cut(), None);
    }

    #[test]
    fn common_and_second_neighbourhoods() {
        let g = generate::complete(4);
        let s = SolverState::from_sets(&g, &[0], &[1]);
        assert_eq!(s.common_free(0, 1), vec![2, 3]);
        assert_eq!(s.second_counts(0, Label::B), vec![(1, 2)]);
    }

    #[test]
    #[should_panic]
    fn double_assignment_panics() {
        let g = generate::path(2);
        SolverState::from_sets(&g, &[0], &[0]);
    }
}
