use std::convert::Infallible;

use crate::cut::{Cut, Side};
use crate::graph::Graph;
use crate::solve::{by_components, SolveError, SolveResult, SolveStats};
use crate::structure::max_degree;

/// Graphs of maximum degree 2: a component has a perfect matching cut iff
/// it is a path on an even number of vertices or a cycle whose length is a
/// multiple of 4.
pub fn solve_max_deg2(g: &Graph) -> Result<SolveResult, SolveError> {
    let d = max_degree(g);
    if d > 2 {
        return Err(SolveError::DegreeTooLarge(d));
    }
    let r = by_components(g, |c| Ok::<_, Infallible>(solve_component(c)));
    Ok(r.unwrap_or_else(|e| match e {}))
}

/// Vertices of a connected max-degree-2 graph in path or cycle order.
fn walk(g: &Graph) -> Vec<usize> {
    let start = g.vertices().find(|&v| g.degree(v) < 2).unwrap_or(0);
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev && w != start) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn solve_component(g: &Graph) -> SolveResult {
    let n = g.n();
    let is_cycle = g.m() == n;
    let ok = if is_cycle { n.is_multiple_of(4) } else { n.is_multiple_of(2) };
    if !ok {
        return SolveResult::no(SolveStats::default());
    }
    let mut sides = vec![Side::X; n];
    for (i, v) in walk(g).into_iter().enumerate() {
        // Paths: X YY XX YY ... ; cycles: XX YY XX YY ...
        let block = if is_cycle { i / 2 } else { i.div_ceil(2) };
        if block % 2 == 1 {
            sides[v] = Side::Y;
        }
    }
    SolveResult::yes(Cut::new(sides), SolveStats::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn paths_and_cycles() {
        for n in 1..20 {
            assert_eq!(solve_max_deg2(&generate::path(n)).unwrap().has_pmc, n % 2 == 0, "P{n}");
        }
        for n in 3..25 {
            assert_eq!(solve_max_deg2(&generate::cycle(n)).unwrap().has_pmc, n % 4 == 0, "C{n}");
        }
    }

    #[test]
    fn relabelled_cycle_and_union() {
        let g = Graph::from_edges(8, &[(0, 5), (5, 2), (2, 7), (7, 1), (1, 3), (3, 6), (6, 4), (4, 0)]).unwrap();
        assert!(solve_max_deg2(&g).unwrap().has_pmc);
        let u = generate::path(4).disjoint_union(&generate::cycle(8));
        assert!(solve_max_deg2(&u).unwrap().has_pmc);
    }

    #[test]
    fn rejects_degree_three() {
        assert_eq!(solve_max_deg2(&generate::star(3)), Err(SolveError::DegreeTooLarge(3)));
    }
}
