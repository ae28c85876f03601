//! Branching rules B1 to B7.

use super::factor::{rule_minimum_vector, BranchVector};
use super::state::{Label, SolverState};
use crate::solve::Rule;

/// A branching step. `children[i]` is `None` when child `i` would have to
/// put a vertex on both sides and is pruned on the spot; its decrease still
/// appears in `vector`.
#[derive(Clone, Debug)]
pub struct BranchChoice<'g> {
    pub rule: Rule,
    pub children: Vec<Option<SolverState<'g>>>,
    pub vector: BranchVector,
    /// The rule's proven lower bound on each child's decrease.
    pub minimums: Vec<usize>,
}

struct Builder<'a, 'g> {
    s: &'a SolverState<'g>,
    rule: Rule,
    children: Vec<Option<SolverState<'g>>>,
    decreases: Vec<usize>,
}

impl<'a, 'g> Builder<'a, 'g> {
    fn new(s: &'a SolverState<'g>, rule: Rule) -> Self {
        Builder { s, rule, children: Vec::new(), decreases: Vec::new() }
    }

    /// Adds a child putting `same` on `side` and `across` on the other side.
    fn child(&mut self, side: Label, same: Vec<usize>, across: Vec<usize>) {
        let (mut same, mut across) = (same, across);
        same.sort_unstable();
        same.dedup();
        across.sort_unstable();
        across.dedup();
        debug_assert!(same.iter().chain(&across).all(|&v| self.s.is_free(v)));
        let clash = same.iter().any(|v| across.binary_search(v).is_ok());
        let mut union = same.clone();
        union.extend(&across);
        union.sort_unstable();
        union.dedup();
        self.decreases.push(union.len());
        if clash {
            self.children.push(None);
            return;
        }
        let mut c = self.s.clone().into_child(self.rule);
        for v in same {
            c.assign(v, side);
        }
        for v in across {
            c.assign(v, side.opposite());
        }
        self.children.push(Some(c));
    }

    fn finish(self, params: &[usize]) -> BranchChoice<'g> {
        let minimums = rule_minimum_vector(self.rule, params).expect("rule parameters in range");
        assert_eq!(minimums.len(), self.decreases.len());
        BranchChoice {
            rule: self.rule,
            children: self.children,
            vector: BranchVector::new(self.decreases).expect("every child fixes a vertex"),
            minimums,
        }
    }
}

/// `N[v] ∩ F` for a free `v`.
fn closed_free(s: &SolverState, v: usize) -> Vec<usize> {
    let mut out = s.free_nbrs(v);
    out.push(v);
    out
}

fn without(v: &[usize], drop: &[usize]) -> Vec<usize> {
    v.iter().copied().filter(|w| !drop.contains(w)).collect()
}

/// `N(z) ∩ F` split by whether each vertex has a neighbour across: the
/// ones without (`us`) and the ones with, paired with that neighbour.
struct Shape {
    side: Label,
    w: Vec<usize>,
    us: Vec<usize>,
    vs: Vec<(usize, usize)>,
}

fn shape(s: &SolverState, z: usize) -> Shape {
    let side = s.label(z);
    let w = s.free_nbrs(z);
    let (mut us, mut vs) = (Vec::new(), Vec::new());
    for &u in &w {
        match s.nbr_with(u, side.opposite()) {
            Some(y) => vs.push((u, y)),
            None => us.push(u),
        }
    }
    Shape { side, w, us, vs }
}

fn candidates(s: &SolverState) -> Vec<usize> {
    let mut c = s.a_set();
    c.extend(s.b_set());
    c.retain(|&z| s.count(z, Label::Free) >= 2);
    c
}

/// The first applicable branching rule. Expects a state on which no
/// reduction rule applies; returns `None` iff no fixed vertex has a free
/// neighbour.
pub fn select_branch<'g>(s: &SolverState<'g>) -> Option<BranchChoice<'g>> {
    let zs = candidates(s);
    if zs.is_empty() {
        return None;
    }
    let shapes: Vec<Shape> = zs.iter().map(|&z| shape(s, z)).collect();
    b1(s)
        .or_else(|| shapes.iter().find_map(|sh| b2(s, sh)))
        .or_else(|| shapes.iter().find_map(|sh| b3(s, sh)))
        .or_else(|| shapes.iter().find_map(|sh| b4(s, sh)))
        .or_else(|| shapes.iter().find_map(|sh| b5(s, sh)))
        .or_else(|| shapes.iter().find_map(|sh| b6(s, sh)))
        .or_else(|| shapes.iter().find_map(|sh| b7(s, sh)))
        .or_else(|| panic!("no branching rule applies although fixed vertices have free neighbours"))
}

fn b1<'g>(s: &SolverState<'g>) -> Option<BranchChoice<'g>> {
    for x in s.a_set() {
        if let Some((y, _)) = s.second_counts(x, Label::B).into_iter().find(|&(_, c)| c == 2) {
            let common = s.common_free(x, y);
            let (nu, nv) = (closed_free(s, common[0]), closed_free(s, common[1]));
            let mut b = Builder::new(s, Rule::B1);
            b.child(Label::A, nu.clone(), nv.clone());
            b.child(Label::B, nu, nv);
            return Some(b.finish(&[]));
        }
    }
    None
}

fn b2<'g>(s: &SolverState<'g>, sh: &Shape) -> Option<BranchChoice<'g>> {
    let [(u, y1), (v, y2)] = sh.vs[..] else { return None };
    if sh.w.len() != 2 || y1 == y2 {
        return None;
    }
    let n1 = without(&s.free_nbrs(y1), &[u]);
    let n2 = without(&s.free_nbrs(y2), &[v]);
    let mut b = Builder::new(s, Rule::B2);
    b.child(sh.side, vec![v], [vec![u], n2].concat());
    b.child(sh.side, vec![u], [vec![v], n1].concat());
    Some(b.finish(&[]))
}

fn b3<'g>(s: &SolverState<'g>, sh: &Shape) -> Option<BranchChoice<'g>> {
    if sh.w.len() != 2 || sh.vs.len() != 1 {
        return None;
    }
    let (u, (v, _)) = (sh.us[0], sh.vs[0]);
    let mut b = Builder::new(s, Rule::B3);
    b.child(sh.side, vec![v], [vec![u], s.free_nbrs(u)].concat());
    b.child(sh.side, vec![u], vec![v]);
    Some(b.finish(&[]))
}

fn b4<'g>(s: &SolverState<'g>, sh: &Shape) -> Option<BranchChoice<'g>> {
    if !sh.vs.is_empty() {
        return None;
    }
    let mut b = Builder::new(s, Rule::B4);
    for &u in &sh.us {
        b.child(sh.side, without(&sh.w, &[u]), [vec![u], s.free_nbrs(u)].concat());
    }
    Some(b.finish(&[sh.w.len()]))
}

fn b5<'g>(s: &SolverState<'g>, sh: &Shape) -> Option<BranchChoice<'g>> {
    if sh.w.len() < 3 || sh.vs.len() < 2 {
        return None;
    }
    let ns: Vec<Vec<usize>> = sh.vs.iter().map(|&(v, y)| without(&s.free_nbrs(y), &[v])).collect();
    let mut b = Builder::new(s, Rule::B5);
    for &u in &sh.us {
        let across = std::iter::once(u).chain(ns.iter().flatten().copied()).collect();
        b.child(sh.side, without(&sh.w, &[u]), across);
    }
    for (j, &(v, _)) in sh.vs.iter().enumerate() {
        let others = ns.iter().enumerate().filter(|&(k, _)| k != j).flat_map(|(_, n)| n.iter().copied());
        b.child(sh.side, without(&sh.w, &[v]), std::iter::once(v).chain(others).collect());
    }
    Some(b.finish(&[sh.us.len(), sh.vs.len()]))
}

/// The `(v, y, {v_1..v_s})` part shared by B6 and B7.
fn single_across(s: &SolverState, sh: &Shape) -> Option<(usize, Vec<usize>)> {
    if sh.vs.len() != 1 || sh.us.len() < 2 {
        return None;
    }
    let (v, y) = sh.vs[0];
    Some((v, without(&s.free_nbrs(y), &[v])))
}

fn b6<'g>(s: &SolverState<'g>, sh: &Shape) -> Option<BranchChoice<'g>> {
    let (v, vset) = single_across(s, sh)?;
    let g = s.graph();
    let &ui = sh.us.iter().find(|&&u| vset.iter().filter(|&&w| g.has_edge(u, w)).count() >= 2)?;
    let mut b = Builder::new(s, Rule::B6);
    let mut same = without(&sh.us, &[ui]);
    same.push(v);
    b.child(sh.side, same, [vset.clone(), vec![ui]].concat());
    b.child(sh.side, sh.us.clone(), vec![v]);
    Some(b.finish(&[sh.us.len(), vset.len()]))
}

fn b7<'g>(s: &SolverState<'g>, sh: &Shape) -> Option<BranchChoice<'g>> {
    let (v, vset) = single_across(s, sh)?;
    let mut b = Builder::new(s, Rule::B7);
    for &u in &sh.us {
        let mut same = without(&sh.us, &[u]);
        same.push(v);
        b.child(sh.side, same, [vec![u], s.free_nbrs(u), vset.clone()].concat());
    }
    for &vj in &vset {
        let mut across = without(&vset, &[vj]);
        across.push(v);
        b.child(sh.side, [vec![vj], s.free_nbrs(vj), sh.us.clone()].concat(), across);
    }
    Some(b.finish(&[sh.us.len(), vset.len()]))
}
