//! The two reductions from monotone NAE-3SAT: cube clause gadgets joined to
//! variable vertices with pendant dummies, and the bipartite, max-degree-3,
//! large-girth variant built from subdivided cubes and variable cycles.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cnf::CnfFormula;
use crate::cut::{classify_cut, Cut, CutClass, Side};
use crate::generate::CUBE_EDGES;
use crate::graph::Graph;
use crate::oracle::is_nae_assignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Basic,
    Girth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseGadget {
    /// All vertices of the gadget: the 8 cube corners in template order,
    /// then (girth variant) the subdivision vertices edge by edge.
    pub vertices: Vec<usize>,
    /// `c_j1, c_j2, c_j3`; `c_jk` is wired to the `k`-th variable of the
    /// clause.
    pub clause_vertices: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableGadget {
    pub vertices: Vec<usize>,
    /// Basic: `[x_i]`. Girth: `x_i^1 .. x_i^m`, one per clause.
    pub variable_vertices: Vec<usize>,
    /// The pendant `x_i'` of the basic variant.
    pub dummy: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMap {
    pub variant: Variant,
    pub num_vertices: usize,
    /// Subdivision parameter (girth variant only).
    pub h: Option<usize>,
    /// Requested girth (girth variant only, absent when `h` was forced).
    pub g: Option<usize>,
    pub clause_gadgets: Vec<ClauseGadget>,
    pub variable_gadgets: Vec<VariableGadget>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("the formula has no clauses")]
    NoClauses,
    #[error("the girth variant needs at least 3 clauses, got {0}")]
    TooFewClauses(usize),
    #[error("target girth must be at least 3, got {0}")]
    BadGirth(usize),
    #[error("map and formula disagree: {0}")]
    MapMismatch(String),
    #[error("assignment has {got} values for {expected} variables")]
    WrongLength { expected: usize, got: usize },
    #[error("assignment leaves some clause monochromatic")]
    NotNae,
    #[error("cut is not a perfect matching cut of the reduced graph")]
    NotAPmc,
    #[error("copies of variable {0} lie on different sides")]
    Inconsistent(usize),
    #[error("no perfect matching cut extends the assignment")]
    NoExtension,
}

/// Cube gadgets for the clauses, then `x_i, x_i'` per variable.
pub fn reduce_basic(f: &CnfFormula) -> Result<(Graph, ReductionMap), ReductionError> {
    let m = f.num_clauses();
    if m == 0 {
        return Err(ReductionError::NoClauses);
    }
    let n_total = 8 * m + 2 * f.num_vars();
    let mut edges = Vec::new();
    let mut clause_gadgets = Vec::with_capacity(m);
    for j in 0..m {
        let base = 8 * j;
        edges.extend(CUBE_EDGES.iter().map(|&(a, b)| (base + a, base + b)));
        clause_gadgets.push(ClauseGadget {
            vertices: (base..base + 8).collect(),
            clause_vertices: [base + 1, base + 2, base + 3],
        });
    }
    let mut variable_gadgets = Vec::with_capacity(f.num_vars());
    for i in 0..f.num_vars() {
        let x = 8 * m + 2 * i;
        edges.push((x, x + 1));
        variable_gadgets.push(VariableGadget { vertices: vec![x, x + 1], variable_vertices: vec![x], dummy: Some(x + 1) });
    }
    for (j, c) in f.clauses().iter().enumerate() {
        for (k, &var) in c.iter().enumerate() {
            edges.push((variable_gadgets[var - 1].variable_vertices[0], clause_gadgets[j].clause_vertices[k]));
        }
    }
    let g = Graph::from_edges(n_total, &edges).expect("reduction builds a simple graph");
    let map = ReductionMap { variant: Variant::Basic, num_vertices: n_total, h: None, g: None, clause_gadgets, variable_gadgets };
    Ok((g, map))
}

/// Smallest `h >= 0` with `h >= g/(4m) - 1` and `h >= g/8 - 2`.
pub fn girth_parameter(g: usize, m: usize) -> usize {
    let a = g.div_ceil(4 * m) as i64 - 1;
    let b = g.div_ceil(8) as i64 - 2;
    a.max(b).max(0) as usize
}

/// `m (8 + 12 (4h + 4)) + 4 n m (h + 1)`.
pub fn girth_vertex_count(n: usize, m: usize, h: usize) -> usize {
    m * (8 + 12 * (4 * h + 4)) + 4 * n * m * (h + 1)
}

/// Subdivided cubes and variable cycles. `h_override` replaces the
/// parameter derived from `g`.
pub fn reduce_girth(
    f: &CnfFormula,
    g: usize,
    h_override: Option<usize>,
) -> Result<(Graph, ReductionMap), ReductionError> {
    let m = f.num_clauses();
    if m < 3 {
        return Err(ReductionError::TooFewClauses(m));
    }
    if g < 3 {
        return Err(ReductionError::BadGirth(g));
    }
    let h = h_override.unwrap_or_else(|| girth_parameter(g, m));
    let sub = 4 * h + 4;
    let block = 8 + 12 * sub;
    let cyc = m * sub;
    let n_total = girth_vertex_count(f.num_vars(), m, h);
    let mut edges = Vec::new();

    let mut clause_gadgets = Vec::with_capacity(m);
    for j in 0..m {
        let base = j * block;
        for (e, &(a, b)) in CUBE_EDGES.iter().enumerate() {
            let s0 = base + 8 + e * sub;
            edges.push((base + a, s0));
            edges.extend((1..sub).map(|t| (s0 + t - 1, s0 + t)));
            edges.push((s0 + sub - 1, base + b));
        }
        // CUBE_EDGES starts with (0,1), (0,2), (0,3): the clause vertices
        // are the first subdivision vertices next to corner 0.
        clause_gadgets.push(ClauseGadget {
            vertices: (base..base + block).collect(),
            clause_vertices: [base + 8, base + 8 + sub, base + 8 + 2 * sub],
        });
    }
    let vbase = m * block;
    let mut variable_gadgets = Vec::with_capacity(f.num_vars());
    for i in 0..f.num_vars() {
        let base = vbase + i * cyc;
        edges.extend((0..cyc).map(|p| (base + p, base + (p + 1) % cyc)));
        variable_gadgets.push(VariableGadget {
            vertices: (base..base + cyc).collect(),
            variable_vertices: (0..m).map(|j| base + j * sub).collect(),
            dummy: None,
        });
    }
    for (j, c) in f.clauses().iter().enumerate() {
        for (k, &var) in c.iter().enumerate() {
            edges.push((variable_gadgets[var - 1].variable_vertices[j], clause_gadgets[j].clause_vertices[k]));
        }
    }
    let graph = Graph::from_edges(n_total, &edges).expect("reduction builds a simple graph");
    let map = ReductionMap {
        variant: Variant::Girth,
        num_vertices: n_total,
        h: Some(h),
        g: h_override.is_none().then_some(g),
        clause_gadgets,
        variable_gadgets,
    };
    Ok((graph, map))
}

fn check_map(f: &CnfFormula, map: &ReductionMap) -> Result<(), ReductionError> {
    if map.variable_gadgets.len() != f.num_vars() || map.clause_gadgets.len() != f.num_clauses() {
        return Err(ReductionError::MapMismatch(format!(
            "{} variable and {} clause gadgets for {} variables and {} clauses",
            map.variable_gadgets.len(),
            map.clause_gadgets.len(),
            f.num_vars(),
            f.num_clauses()
        )));
    }
    Ok(())
}

/// Puts true variable vertices in X and false ones in Y, then extends to a
/// perfect matching cut by propagating forced sides.
pub fn lift_assignment(
    f: &CnfFormula,
    graph: &Graph,
    map: &ReductionMap,
    assignment: &[bool],
) -> Result<Cut, ReductionError> {
    check_map(f, map)?;
    if assignment.len() != f.num_vars() {
        return Err(ReductionError::WrongLength { expected: f.num_vars(), got: assignment.len() });
    }
    if !is_nae_assignment(f, assignment) {
        return Err(ReductionError::NotNae);
    }
    let side = |b: bool| if b { Side::X } else { Side::Y };
    let mut partial = vec![None; graph.n()];
    for (i, vg) in map.variable_gadgets.iter().enumerate() {
        for &x in &vg.variable_vertices {
            partial[x] = Some(side(assignment[i]));
        }
        if let Some(d) = vg.dummy {
            partial[d] = Some(side(!assignment[i]));
        }
    }
    for (j, c) in f.clauses().iter().enumerate() {
        for (k, &var) in c.iter().enumerate() {
            partial[map.clause_gadgets[j].clause_vertices[k]] = Some(side(assignment[var - 1]));
        }
    }
    let cut = extensions(graph, partial, 1).into_iter().next().ok_or(ReductionError::NoExtension)?;
    debug_assert_eq!(classify_cut(graph, &cut), Ok(CutClass::PerfectMatchingCut));
    Ok(cut)
}

/// Reads variable `i` as true iff its variable vertices are in X.
pub fn extract_assignment(
    f: &CnfFormula,
    graph: &Graph,
    map: &ReductionMap,
    cut: &Cut,
) -> Result<Vec<bool>, ReductionError> {
    check_map(f, map)?;
    if classify_cut(graph, cut) != Ok(CutClass::PerfectMatchingCut) {
        return Err(ReductionError::NotAPmc);
    }
    let mut out = Vec::with_capacity(f.num_vars());
    for (i, vg) in map.variable_gadgets.iter().enumerate() {
        let s = cut.side(vg.variable_vertices[0]);
        if vg.variable_vertices.iter().any(|&x| cut.side(x) != s) {
            return Err(ReductionError::Inconsistent(i + 1));
        }
        out.push(s == Side::X);
    }
    assert!(is_nae_assignment(f, &out), "perfect matching cut read back as a non-nae assignment");
    Ok(out)
}

/// Up to `limit` perfect matching cuts of `g` agreeing with `partial`, in
/// the order found by propagation plus backtracking (X tried first).
pub fn extensions(g: &Graph, partial: Vec<Option<Side>>, limit: usize) -> Vec<Cut> {
    let mut out = Vec::new();
    let mut stack = vec![partial];
    while let Some(mut p) = stack.pop() {
        if out.len() >= limit {
            break;
        }
        if !propagate(g, &mut p) {
            continue;
        }
        // Branch next to the decided region to keep propagation local.
        let next = g
            .vertices()
            .find(|&v| p[v].is_none() && g.neighbors(v).iter().any(|&w| p[w].is_some()))
            .or_else(|| g.vertices().find(|&v| p[v].is_none()));
        match next {
            None => {
                let cut = Cut::new(p.into_iter().map(Option::unwrap).collect());
                if classify_cut(g, &cut) == Ok(CutClass::PerfectMatchingCut) {
                    out.push(cut);
                }
            }
            Some(v) => {
                for s in [Side::Y, Side::X] {
                    let mut q = p.clone();
                    q[v] = Some(s);
                    stack.push(q);
                }
            }
        }
    }
    out
}

/// Fills forced sides; `false` on a contradiction.
fn propagate(g: &Graph, p: &mut [Option<Side>]) -> bool {
    loop {
        let mut changed = false;
        for v in g.vertices() {
            let known = |s: Side| g.neighbors(v).iter().filter(|&&w| p[w] == Some(s)).count();
            let unknown: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| p[w].is_none()).collect();
            match p[v] {
                Some(s) => {
                    let cross = known(s.other());
                    if cross >= 2 || (cross == 0 && unknown.is_empty()) {
                        return false;
                    }
                    if cross == 1 && !unknown.is_empty() {
                        for w in unknown {
                            p[w] = Some(s);
                        }
                        changed = true;
                    } else if cross == 0 && unknown.len() == 1 {
                        p[unknown[0]] = Some(s.other());
                        changed = true;
                    }
                }
                None => {
                    let (x, y) = (known(Side::X), known(Side::Y));
                    if x >= 2 && y >= 2 {
                        return false;
                    }
                    if x >= 2 {
                        p[v] = Some(Side::X);
                        changed = true;
                    } else if y >= 2 {
                        p[v] = Some(Side::Y);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}
