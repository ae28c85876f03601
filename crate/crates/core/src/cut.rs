//! Cuts `(X, Y)` and the matching / perfect-matching cut classifiers.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    #[inline]
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A labelling of every vertex with a side. Whether it is actually a cut
/// (both sides non-empty) is decided by [`classify_cut`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    sides: Vec<Side>,
}

impl Cut {
    pub fn new(sides: Vec<Side>) -> Self {
        Cut { sides }
    }

    /// Puts exactly the vertices of `x` on side X.
    pub fn from_x_set(n: usize, x: &[usize]) -> Self {
        let mut sides = vec![Side::Y; n];
        for &v in x {
            sides[v] = Side::X;
        }
        Cut { sides }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    #[inline]
    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn x(&self) -> Vec<usize> {
        self.members(Side::X)
    }

    pub fn y(&self) -> Vec<usize> {
        self.members(Side::Y)
    }

    fn members(&self, s: Side) -> Vec<usize> {
        (0..self.sides.len()).filter(|&v| self.sides[v] == s).collect()
    }

    pub fn flipped(&self) -> Cut {
        Cut { sides: self.sides.iter().map(|s| s.other()).collect() }
    }

    /// The representative of `{self, self.flipped()}` with vertex 0 in X.
    pub fn canonical(self) -> Cut {
        match self.sides.first() {
            Some(Side::Y) => self.flipped(),
            _ => self,
        }
    }

    /// Crossing edges `E(X, Y)` as `(u, v)` with `u < v`.
    pub fn edge_cut(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges().filter(|&(u, v)| self.sides[u] != self.sides[v]).collect()
    }
}

/// Strictly nested: `PerfectMatchingCut ⇒ MatchingCut ⇒ Cut`, reflected in
/// the ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutClass {
    NotACut,
    Cut,
    MatchingCut,
    PerfectMatchingCut,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("cut labels {got} vertices but the graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
}

/// Classifies a bipartition by its number of crossing neighbours per vertex.
pub fn classify_cut(g: &Graph, cut: &Cut) -> Result<CutClass, CutError> {
    if cut.len() != g.n() {
        return Err(CutError::LengthMismatch { expected: g.n(), got: cut.len() });
    }
    let has_x = cut.sides.contains(&Side::X);
    let has_y = cut.sides.contains(&Side::Y);
    if !has_x || !has_y {
        return Ok(CutClass::NotACut);
    }
    let mut all_one = true;
    for v in g.vertices() {
        let cross = g.neighbors(v).iter().filter(|&&w| cut.side(w) != cut.side(v)).count();
        if cross > 1 {
            return Ok(CutClass::Cut);
        }
        all_one &= cross == 1;
    }
    Ok(if all_one { CutClass::PerfectMatchingCut } else { CutClass::MatchingCut })
}

pub fn is_perfect_matching_cut(g: &Graph, cut: &Cut) -> bool {
    classify_cut(g, cut) == Ok(CutClass::PerfectMatchingCut)
}

/// True iff `matching` is a perfect matching of `g` whose removal leaves a
/// disconnected graph.
pub fn is_disconnected_perfect_matching(
    g: &Graph,
    matching: &[(usize, usize)],
) -> Result<bool, CutError> {
    let n = g.n();
    let mut mate = vec![usize::MAX; n];
    let mut valid = true;
    for &(u, v) in matching {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(CutError::NotAnEdge(u, v));
        }
        if mate[u] != usize::MAX || mate[v] != usize::MAX {
            valid = false;
        }
        mate[u] = v;
        mate[v] = u;
    }
    if !valid || mate.contains(&usize::MAX) || n == 0 {
        return Ok(false);
    }
    // BFS in G - M from vertex 0.
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w != mate[v] && !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    Ok(reached < n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn c4_half_is_perfect() {
        let c4 = generate::cycle(4);
        let cut = Cut::from_x_set(4, &[0, 1]);
        assert_eq!(classify_cut(&c4, &cut), Ok(CutClass::PerfectMatchingCut));
        assert_eq!(cut.edge_cut(&c4), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn cube_first_figure_cut_is_perfect() {
        // Template ids: 0=c, 1..=3 = c1..c3, 4=c', 5..=7 = c1'..c3'.
        let cut = Cut::from_x_set(8, &[0, 2, 3, 5]);
        assert_eq!(classify_cut(&generate::cube(), &cut), Ok(CutClass::PerfectMatchingCut));
    }

    #[test]
    fn claw_never_perfect() {
        // Enumerate all 2^4 labelings directly.
        let claw = generate::star(3);
        let mut best = CutClass::NotACut;
        for mask in 0u32..16 {
            let x: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
            let class = classify_cut(&claw, &Cut::from_x_set(4, &x)).unwrap();
            best = best.max(class);
        }
        assert_eq!(best, CutClass::MatchingCut);
    }

    #[test]
    fn degenerate_cuts() {
        let g = generate::path(3);
        assert_eq!(classify_cut(&g, &Cut::from_x_set(3, &[0, 1, 2])), Ok(CutClass::NotACut));
        assert_eq!(
            classify_cut(&g, &Cut::from_x_set(2, &[0])),
            Err(CutError::LengthMismatch { expected: 3, got: 2 })
        );
        // Empty edge cut on a disconnected graph.
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(classify_cut(&two, &Cut::from_x_set(4, &[0, 1])), Ok(CutClass::MatchingCut));
        // Centre of P3 against both ends.
        assert_eq!(classify_cut(&g, &Cut::from_x_set(3, &[1])), Ok(CutClass::Cut));
    }

    #[test]
    fn disconnected_perfect_matchings_of_c6() {
        let c6 = generate::cycle(6);
        assert_eq!(is_disconnected_perfect_matching(&c6, &[(0, 1), (2, 3), (4, 5)]), Ok(true));
        assert_eq!(is_disconnected_perfect_matching(&c6, &[(1, 2), (3, 4), (0, 5)]), Ok(true));
        assert_eq!(is_disconnected_perfect_matching(&c6, &[(0, 1), (1, 2), (4, 5)]), Ok(false));
        assert_eq!(is_disconnected_perfect_matching(&c6, &[(0, 1)]), Ok(false));
        assert_eq!(is_disconnected_perfect_matching(&c6, &[(0, 2)]), Err(CutError::NotAnEdge(0, 2)));
    }

    #[test]
    fn single_edge_matching_disconnects() {
        let k2 = generate::path(2);
        assert_eq!(is_disconnected_perfect_matching(&k2, &[(0, 1)]), Ok(true));
    }

    #[test]
    fn perfect_matching_of_k4_stays_connected() {
        let k4 = generate::complete(4);
        assert_eq!(is_disconnected_perfect_matching(&k4, &[(0, 1), (2, 3)]), Ok(false));
    }
}
