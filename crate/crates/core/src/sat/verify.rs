use serde::Serialize;

use super::cnf::CnfFormula;
use super::reduction::{extensions, girth_vertex_count, reduce_basic, reduce_girth, ReductionError, ReductionMap, Variant};
use crate::branch::solve_from_seed;
use crate::cut::Side;
use crate::graph::Graph;
use crate::oracle::{enumerate_pmcs, OracleLimits};
use crate::structure::{girth, is_bipartite, max_degree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: &'static str,
    pub status: ClaimStatus,
    pub expected: String,
    pub measured: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub variant: Variant,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub claims: Vec<Claim>,
}

impl ReductionReport {
    /// No claim failed (skipped ones are fine).
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

fn claim(name: &'static str, ok: bool, expected: impl ToString, measured: impl ToString) -> Claim {
    Claim {
        name,
        status: if ok { ClaimStatus::Pass } else { ClaimStatus::Fail },
        expected: expected.to_string(),
        measured: measured.to_string(),
    }
}

fn skipped(name: &'static str, measured: impl ToString) -> Claim {
    Claim { name, status: ClaimStatus::Skipped, expected: String::new(), measured: measured.to_string() }
}

/// Builds the reduced instance and checks its structural claims.
pub fn verify_reduction(
    f: &CnfFormula,
    variant: Variant,
    g: Option<usize>,
    h: Option<usize>,
) -> Result<ReductionReport, ReductionError> {
    let (graph, map) = match variant {
        Variant::Basic => reduce_basic(f)?,
        Variant::Girth => reduce_girth(f, g.unwrap_or(3), h)?,
    };
    Ok(verify_reduced_graph(f, &graph, &map))
}

/// Checks a (possibly modified) reduced graph against the map and formula.
pub fn verify_reduced_graph(f: &CnfFormula, graph: &Graph, map: &ReductionMap) -> ReductionReport {
    let (n, m) = (f.num_vars(), f.num_clauses());
    let mut claims = Vec::new();

    let expected_n = match map.variant {
        Variant::Basic => 8 * m + 2 * n,
        Variant::Girth => girth_vertex_count(n, m, map.h.unwrap_or(0)),
    };
    claims.push(claim("vertex_count", graph.n() == expected_n, expected_n, graph.n()));
    claims.push(claim("bipartite", is_bipartite(graph), true, is_bipartite(graph)));

    let deg = max_degree(graph);
    let gi = girth(graph);
    let gi_str = gi.map_or("infinite".to_string(), |x| x.to_string());
    match map.variant {
        Variant::Basic => {
            claims.push(skipped("max_degree", deg));
            claims.push(skipped("girth", gi_str));
        }
        Variant::Girth => {
            claims.push(claim("max_degree", deg == 3, 3, deg));
            let target = map.g.unwrap_or(3);
            claims.push(claim("girth", gi.is_none_or(|x| x >= target), format!(">= {target}"), gi_str));
        }
    }

    let mut seen = vec![0usize; graph.n()];
    let mut out_of_range = false;
    let all = map
        .clause_gadgets
        .iter()
        .flat_map(|c| c.vertices.iter())
        .chain(map.variable_gadgets.iter().flat_map(|v| v.vertices.iter()));
    for &v in all {
        match seen.get_mut(v) {
            Some(s) => *s += 1,
            None => out_of_range = true,
        }
    }
    let partition = !out_of_range && seen.iter().all(|&s| s == 1);
    claims.push(claim("map_partitions_vertices", partition, true, partition));

    claims.push(gadget_extension_claim(graph, map));
    claims.push(no_clause_variable_cut_edge(graph, map));

    ReductionReport { variant: map.variant, num_vertices: graph.n(), num_edges: graph.m(), claims }
}

/// Every clause gadget, taken alone: each of the 8 labelings of its clause
/// vertices extends to exactly one perfect matching cut if it is not
/// monochromatic, and to none otherwise.
fn gadget_extension_claim(graph: &Graph, map: &ReductionMap) -> Claim {
    let mut bad = Vec::new();
    for (j, cg) in map.clause_gadgets.iter().enumerate() {
        if cg.vertices.iter().any(|&v| v >= graph.n()) {
            bad.push(j + 1);
            continue;
        }
        let (sub, back) = graph.induced_subgraph(&cg.vertices);
        let local: Vec<usize> =
            cg.clause_vertices.iter().map(|c| back.iter().position(|v| v == c).unwrap_or(usize::MAX)).collect();
        if local.contains(&usize::MAX) {
            bad.push(j + 1);
            continue;
        }
        for mask in 0u8..8 {
            let mut p = vec![None; sub.n()];
            for (k, &c) in local.iter().enumerate() {
                p[c] = Some(if mask >> k & 1 == 1 { Side::Y } else { Side::X });
            }
            let want = if mask == 0 || mask == 7 { 0 } else { 1 };
            if extensions(&sub, p, 2).len() != want {
                bad.push(j + 1);
                break;
            }
        }
    }
    let measured = if bad.is_empty() { "all gadgets".to_string() } else { format!("failing gadgets {bad:?}") };
    claim("gadget_extension_unique", bad.is_empty(), "unique extension of every nae labeling", measured)
}

/// No perfect matching cut uses an edge between a clause vertex and a
/// variable vertex. Decided exactly by the oracle on small instances and by
/// seeded searches on mid-sized ones.
fn no_clause_variable_cut_edge(graph: &Graph, map: &ReductionMap) -> Claim {
    const NAME: &str = "no_clause_variable_cut_edge";
    const SEEDED_LIMIT: usize = 80;
    let mut links = Vec::new();
    for cg in &map.clause_gadgets {
        for &c in &cg.clause_vertices {
            for vg in &map.variable_gadgets {
                for &x in &vg.variable_vertices {
                    if c < graph.n() && x < graph.n() && graph.has_edge(c, x) {
                        links.push((c, x));
                    }
                }
            }
        }
    }
    let limits = OracleLimits::default();
    if graph.n() <= limits.max_vertices_pmc {
        let cuts = enumerate_pmcs(graph, &limits).expect("within limits");
        let hit = cuts.iter().any(|cut| links.iter().any(|&(c, x)| cut.side(c) != cut.side(x)));
        return claim(NAME, !hit, "none", format!("{} cuts checked by enumeration", cuts.len()));
    }
    if graph.n() <= SEEDED_LIMIT {
        let hit = links.iter().any(|&(c, x)| {
            solve_from_seed(graph, c, x).map(|r| r.has_pmc).unwrap_or(true)
                || solve_from_seed(graph, x, c).map(|r| r.has_pmc).unwrap_or(true)
        });
        return claim(NAME, !hit, "none", format!("{} edges checked by seeded search", links.len()));
    }
    skipped(NAME, format!("{} vertices: too large to check", graph.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_one_clause_passes() {
        let f = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let r = verify_reduction(&f, Variant::Basic, None, None).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.claim("no_clause_variable_cut_edge").unwrap().status, ClaimStatus::Pass);
    }

    #[test]
    fn girth_twelve_passes() {
        let f = CnfFormula::new(3, vec![[1, 2, 3], [1, 2, 3], [1, 2, 3]]).unwrap();
        let r = verify_reduction(&f, Variant::Girth, Some(12), None).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.claim("girth").unwrap().status, ClaimStatus::Pass);
    }

    #[test]
    fn tampered_instance_fails() {
        let f = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let (g, map) = reduce_basic(&f).unwrap();
        // Corners 0 and 5 sit on the same side of the cube's bipartition.
        let bad = g.with_edge(0, 5).unwrap();
        let r = verify_reduced_graph(&f, &bad, &map);
        assert!(!r.all_pass());
        assert_eq!(r.claim("bipartite").unwrap().status, ClaimStatus::Fail);
    }
}
