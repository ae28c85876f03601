use std::collections::VecDeque;

use crate::cut::{Cut, Side};
use crate::graph::Graph;
use crate::solve::{by_components, SolveError, SolveResult, SolveStats};
use crate::structure::{biconnected_blocks, triangle_saturated_components};

/// `Err((u, v))` names an edge of a non-trivial block that lies on no
/// triangle.
pub fn is_pseudo_chordal(g: &Graph) -> Result<(), (usize, usize)> {
    for b in biconnected_blocks(g).blocks.iter().filter(|b| b.is_nontrivial()) {
        for &(u, v) in &b.edges {
            if !g.neighbors(u).iter().any(|&w| g.has_edge(v, w)) {
                return Err((u, v));
            }
        }
    }
    Ok(())
}

/// The tree obtained from a connected graph by contracting every connected
/// component of the non-trivial-block edges into a supernode. All edges
/// between distinct nodes are bridges.
#[derive(Clone, Debug)]
pub struct SupernodeTree {
    /// Vertex set of every node, ascending.
    pub nodes: Vec<Vec<usize>>,
    pub node_of: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// For a non-root node `S`: `(r(S), its neighbour in the parent)`.
    pub attach: Vec<Option<(usize, usize)>>,
    /// Nodes in breadth-first order from the root (node 0).
    pub order: Vec<usize>,
    pub pmc: Vec<bool>,
    pub m: Vec<bool>,
    /// Per node, per vertex of the node (same order as `nodes`), the index
    /// into `children` of the mate child chosen by the tables.
    mate_pmc: Vec<Vec<Option<usize>>>,
    mate_m: Vec<Vec<Option<usize>>>,
}

impl SupernodeTree {
    /// Builds the tree of a connected graph and fills both tables.
    pub fn build(g: &Graph) -> Self {
        let n = g.n();
        let (_, comps) = triangle_saturated_components(g);
        let mut node_of = vec![usize::MAX; n];
        let mut nodes: Vec<Vec<usize>> = Vec::new();
        for c in comps {
            for &v in &c {
                node_of[v] = nodes.len();
            }
            nodes.push(c);
        }
        for v in 0..n {
            if node_of[v] == usize::MAX {
                node_of[v] = nodes.len();
                nodes.push(vec![v]);
            }
        }
        // Renumber nodes in BFS order from the node holding vertex 0.
        let k = nodes.len();
        let mut new_id = vec![usize::MAX; k];
        let mut order_old = Vec::with_capacity(k);
        let mut parent_old = vec![None; k];
        let mut attach_old = vec![None; k];
        let mut queue = VecDeque::new();
        if n > 0 {
            new_id[node_of[0]] = 0;
            order_old.push(node_of[0]);
            queue.push_back(node_of[0]);
        }
        while let Some(s) = queue.pop_front() {
            for &v in &nodes[s] {
                for &w in g.neighbors(v) {
                    let t = node_of[w];
                    if t == s || Some(t) == parent_old[s] {
                        continue;
                    }
                    assert_eq!(new_id[t], usize::MAX, "contracted graph is not a tree");
                    new_id[t] = order_old.len();
                    order_old.push(t);
                    parent_old[t] = Some(s);
                    attach_old[t] = Some((w, v));
                    queue.push_back(t);
                }
            }
        }
        assert_eq!(order_old.len(), k, "graph is not connected");

        let nodes: Vec<Vec<usize>> = order_old.iter().map(|&o| nodes[o].clone()).collect();
        let node_of: Vec<usize> = node_of.iter().map(|&o| new_id[o]).collect();
        let parent: Vec<Option<usize>> = order_old.iter().map(|&o| parent_old[o].map(|p| new_id[p])).collect();
        let attach: Vec<Option<(usize, usize)>> = order_old.iter().map(|&o| attach_old[o]).collect();
        let mut children = vec![Vec::new(); k];
        for (t, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(t);
            }
        }
        let mut tree = SupernodeTree {
            nodes,
            node_of,
            parent,
            children,
            attach,
            order: (0..k).collect(),
            pmc: vec![false; k],
            m: vec![false; k],
            mate_pmc: vec![Vec::new(); k],
            mate_m: vec![Vec::new(); k],
        };
        tree.fill_tables();
        tree
    }

    pub fn root(&self) -> usize {
        0
    }

    /// `r(S)`, the vertex of `S` adjacent to the parent node.
    pub fn r(&self, s: usize) -> Option<usize> {
        self.attach[s].map(|(r, _)| r)
    }

    /// Children of `s` attached at vertex `v` of `s`, as indices into
    /// `children[s]`.
    fn c_of(&self, s: usize, v: usize) -> Vec<usize> {
        (0..self.children[s].len()).filter(|&i| self.attach[self.children[s][i]].unwrap().1 == v).collect()
    }

    /// The mate child of `v`: one child with `m` and all others with `pmc`.
    fn pick_mate(&self, s: usize, v: usize) -> Option<usize> {
        let cs = self.c_of(s, v);
        let ok = |i: usize| self.pmc[self.children[s][i]];
        cs.iter().copied().find(|&i| self.m[self.children[s][i]] && cs.iter().all(|&j| j == i || ok(j)))
    }

    fn fill_tables(&mut self) {
        for s in (0..self.nodes.len()).rev() {
            let mates: Vec<Option<usize>> = self.nodes[s].iter().map(|&v| self.pick_mate(s, v)).collect();
            self.pmc[s] = mates.iter().all(Option::is_some);
            self.m[s] = match self.r(s) {
                None => false,
                Some(r) => {
                    let rest = self.nodes[s].iter().zip(&mates).all(|(&v, mt)| v == r || mt.is_some());
                    let r_kids = self.c_of(s, r).iter().all(|&i| self.pmc[self.children[s][i]]);
                    rest && r_kids
                }
            };
            self.mate_m[s] = self.nodes[s].iter().zip(&mates).map(|(&v, &mt)| if Some(v) == self.r(s) { None } else { mt }).collect();
            self.mate_pmc[s] = mates;
        }
    }

    /// All vertices in the subtree of `s`, ascending.
    pub fn subtree_vertices(&self, s: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![s];
        while let Some(t) = stack.pop() {
            out.extend(&self.nodes[t]);
            stack.extend(&self.children[t]);
        }
        out.sort_unstable();
        out
    }

    /// Side assignment for the subtree of `s` realising `pmc(s)` (or `m(s)`
    /// when `mate_mode`), with the vertices of `s` on `side`.
    pub fn certificate(&self, s: usize, mate_mode: bool, sides: &mut [Side], side: Side) {
        let table = if mate_mode { &self.m } else { &self.pmc };
        assert!(table[s], "table entry is false");
        let mut stack = vec![(s, mate_mode, side)];
        while let Some((t, mode, sd)) = stack.pop() {
            for &v in &self.nodes[t] {
                sides[v] = sd;
            }
            let mates = if mode { &self.mate_m[t] } else { &self.mate_pmc[t] };
            for (idx, &v) in self.nodes[t].iter().enumerate() {
                let mate = mates[idx];
                for i in self.c_of(t, v) {
                    let c = self.children[t][i];
                    if Some(i) == mate {
                        stack.push((c, true, sd.other()));
                    } else {
                        stack.push((c, false, sd));
                    }
                }
            }
        }
    }
}

/// Dynamic programming over the supernode tree; every supernode ends up on
/// one side.
pub fn solve_pseudo_chordal(g: &Graph) -> Result<SolveResult, SolveError> {
    if let Err((u, v)) = is_pseudo_chordal(g) {
        return Err(SolveError::NotPseudoChordal(u, v));
    }
    by_components(g, |c| {
        let tree = SupernodeTree::build(c);
        if !tree.pmc[0] {
            return Ok(SolveResult::no(SolveStats::default()));
        }
        let mut sides = vec![Side::X; c.n()];
        tree.certificate(0, false, &mut sides, Side::X);
        Ok(SolveResult::yes(Cut::new(sides), SolveStats::default()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn recognition() {
        assert_eq!(is_pseudo_chordal(&generate::complete(4)), Ok(()));
        assert!(is_pseudo_chordal(&generate::cycle(5)).is_err());
        assert_eq!(is_pseudo_chordal(&generate::decorated_cycle(6)), Ok(()));
        assert_eq!(is_pseudo_chordal(&generate::path(5)), Ok(()));
    }

    #[test]
    fn triangle_with_pendants() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let r = solve_pseudo_chordal(&g).unwrap();
        let cut = r.certificate.unwrap();
        assert_eq!(cut.canonical().x(), vec![0, 1, 2]);
        assert!(!solve_pseudo_chordal(&generate::complete(3)).unwrap().has_pmc);
    }

    #[test]
    fn tree_shape() {
        let g = generate::decorated_cycle(4).disjoint_union(&Graph::empty(0));
        let t = SupernodeTree::build(&g);
        assert_eq!(t.nodes.len(), 1);
        let p = generate::path(4);
        let t = SupernodeTree::build(&p);
        assert_eq!(t.nodes.len(), 4);
        assert_eq!(t.r(1), Some(1));
        assert!(t.pmc[0]);
    }

    #[test]
    fn rejects_non_pseudo_chordal() {
        assert!(matches!(solve_pseudo_chordal(&generate::cycle(8)), Err(SolveError::NotPseudoChordal(..))));
    }
}
