//! Exhaustive ground truth: perfect matching cut enumeration over all
//! bipartitions and brute-force NAE satisfiability.
//!
//! A graph has a perfect matching cut iff every connected component has one,
//! so bipartitions are enumerated per component and then composed. Within a
//! component the smallest vertex is pinned to X, which halves the space and
//! makes the output canonical.

use thiserror::Error;

use crate::cut::{Cut, Side};
use crate::graph::Graph;
use crate::sat::CnfFormula;
use crate::structure::connected_components;

/// Hard cap from the 64-bit masks used internally.
const MASK_BITS: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices_pmc: usize,
    pub max_variables_nae: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices_pmc: 24, max_variables_nae: 24 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the oracle: {size} {what} (limit {limit})")]
    TooLarge { what: &'static str, size: usize, limit: usize },
}

fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    let limit = limit.min(MASK_BITS);
    if size > limit {
        return Err(OracleError::TooLarge { what, size, limit });
    }
    Ok(())
}

/// Component-local view: sorted vertex list and neighbourhood bitmasks.
struct Local {
    vertices: Vec<usize>,
    adj: Vec<u64>,
}

impl Local {
    fn new(g: &Graph, vertices: Vec<usize>) -> Self {
        let adj = vertices
            .iter()
            .map(|&v| {
                g.neighbors(v).iter().fold(0u64, |acc, w| {
                    let i = vertices.binary_search(w).expect("component is closed");
                    acc | 1 << i
                })
            })
            .collect();
        Local { vertices, adj }
    }

    /// `mask` has bit `i` set iff local vertex `i` is on side Y.
    #[inline]
    fn is_pmc(&self, mask: u64) -> bool {
        self.adj.iter().enumerate().all(|(i, &nb)| {
            let cross = if mask >> i & 1 == 1 { nb & !mask } else { nb & mask };
            cross.count_ones() == 1
        })
    }

    /// Canonical masks (local vertex 0 on X) in lexicographic order of the
    /// side vector; stops after `limit` hits.
    fn pmc_masks(&self, limit: usize) -> Vec<u64> {
        let s = self.vertices.len();
        let mut out = Vec::new();
        if s < 2 || s % 2 == 1 {
            return out;
        }
        // Counter bit `s-1-i` drives local vertex `i`, so counting upwards
        // walks side vectors in lexicographic order.
        let free = s - 1;
        for k in 0u64..(1u64 << free) {
            let mut mask = 0u64;
            for i in 1..s {
                mask |= (k >> (s - 1 - i) & 1) << i;
            }
            if self.is_pmc(mask) {
                out.push(mask);
                if out.len() >= limit {
                    break;
                }
            }
        }
        out
    }

    fn apply(&self, mask: u64, flip: bool, sides: &mut [Side]) {
        for (i, &v) in self.vertices.iter().enumerate() {
            let y = (mask >> i & 1 == 1) ^ flip;
            sides[v] = if y { Side::Y } else { Side::X };
        }
    }
}

/// All perfect matching cuts of `g`, canonicalised with vertex 0 in X, in
/// lexicographic order of the side vector.
pub fn enumerate_pmcs(g: &Graph, limits: &OracleLimits) -> Result<Vec<Cut>, OracleError> {
    check_limit("vertices", g.n(), limits.max_vertices_pmc)?;
    if g.n() == 0 || g.n() % 2 == 1 {
        return Ok(Vec::new());
    }
    let locals: Vec<Local> =
        connected_components(g).into_iter().map(|c| Local::new(g, c)).collect();
    let mut per_component = Vec::with_capacity(locals.len());
    for local in &locals {
        let masks = local.pmc_masks(usize::MAX);
        if masks.is_empty() {
            return Ok(Vec::new());
        }
        per_component.push(masks);
    }

    let mut out = Vec::new();
    let mut sides = vec![Side::X; g.n()];
    compose(&locals, &per_component, 0, &mut sides, &mut out);
    out.sort();
    Ok(out)
}

fn compose(
    locals: &[Local],
    masks: &[Vec<u64>],
    idx: usize,
    sides: &mut Vec<Side>,
    out: &mut Vec<Cut>,
) {
    if idx == locals.len() {
        out.push(Cut::new(sides.clone()));
        return;
    }
    // Only the component holding vertex 0 is pinned; the others may flip.
    let flips: &[bool] = if idx == 0 { &[false] } else { &[false, true] };
    for &mask in &masks[idx] {
        for &flip in flips {
            locals[idx].apply(mask, flip, sides);
            compose(locals, masks, idx + 1, sides, out);
        }
    }
}

/// Early-exit variant of [`enumerate_pmcs`]; the witness is the first cut
/// that enumeration would return.
pub fn has_pmc_oracle(g: &Graph, limits: &OracleLimits) -> Result<Option<Cut>, OracleError> {
    check_limit("vertices", g.n(), limits.max_vertices_pmc)?;
    if g.n() == 0 || g.n() % 2 == 1 {
        return Ok(None);
    }
    let mut sides = vec![Side::X; g.n()];
    for comp in connected_components(g) {
        let local = Local::new(g, comp);
        match local.pmc_masks(1).first() {
            Some(&mask) => local.apply(mask, false, &mut sides),
            None => return Ok(None),
        }
    }
    Ok(Some(Cut::new(sides)))
}

/// True iff no clause of `f` is monochromatic under `assignment`
/// (`assignment[i]` is the value of variable `i + 1`).
pub fn is_nae_assignment(f: &CnfFormula, assignment: &[bool]) -> bool {
    assignment.len() == f.num_vars()
        && f.clauses().iter().all(|c| {
            let t = c.iter().filter(|&&v| assignment[v - 1]).count();
            t != 0 && t != 3
        })
}

/// Brute-force NAE satisfiability; the witness is the lexicographically
/// first (false < true, variable 1 first) nae assignment.
pub fn nae_brute(f: &CnfFormula, limits: &OracleLimits) -> Result<Option<Vec<bool>>, OracleError> {
    let n = f.num_vars();
    check_limit("variables", n, limits.max_variables_nae)?;
    // Variable i (1-based) lives at bit n - i so that counting upwards is
    // lexicographic.
    let clause_masks: Vec<u64> = f
        .clauses()
        .iter()
        .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << (n - v)))
        .collect();
    for k in 0u64..(1u64 << n) {
        if clause_masks.iter().all(|&cm| {
            let t = k & cm;
            t != 0 && t != cm
        }) {
            return Ok(Some((1..=n).map(|i| k >> (n - i) & 1 == 1).collect()));
        }
    }
    Ok(None)
}
