use crate::cut::{classify_cut, Cut, CutClass, Side};
use crate::graph::Graph;
use crate::solve::{SolveError, SolveResult, SolveStats};
use crate::structure::is_connected;

/// The perfect matching cut criterion for caterpillars, decided on the
/// basic path `x_1..x_k` that runs from a leaf of one spine end, along the
/// spine, to a leaf of the other end (so `x_1` and `x_k` carry no leaves).
/// The tree has a perfect matching cut iff it is a caterpillar, every
/// inner `x_i` keeps at most one leaf, and every maximal run of the basic
/// path without leaves has even length.
///
/// Trees that are not caterpillars contain the subdivided claw and get
/// `false` here; use the pseudo-chordal solver for general trees.
pub fn caterpillar_criterion(g: &Graph) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n == 0 || g.m() + 1 != n || !is_connected(g) {
        return Err(SolveError::NotATree);
    }
    let no = || Ok(SolveResult::no(SolveStats::default()));
    if n == 2 {
        return Ok(SolveResult::yes(Cut::from_x_set(2, &[0]), SolveStats::default()));
    }
    if n % 2 == 1 {
        return no();
    }
    let Some(path) = basic_path(g) else { return no() };
    let on_path = {
        let mut f = vec![false; n];
        for &v in &path {
            f[v] = true;
        }
        f
    };
    let leaves_of = |v: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|&w| !on_path[w] && g.degree(w) == 1).collect()
    };

    let mut sides = vec![Side::X; n];
    let mut cur = Side::X;
    let mut run = 0usize;
    for (i, &v) in path.iter().enumerate() {
        let leaves = leaves_of(v);
        match leaves.len() {
            0 => {
                // Inside a leafless run vertices pair up: cur, !cur, then flip.
                sides[v] = if run.is_multiple_of(2) { cur } else { cur.other() };
                run += 1;
                if run.is_multiple_of(2) {
                    cur = cur.other();
                }
            }
            1 if i > 0 && i + 1 < path.len() => {
                if run % 2 == 1 {
                    return no();
                }
                run = 0;
                sides[v] = cur;
                sides[leaves[0]] = cur.other();
            }
            _ => return no(),
        }
    }
    if run % 2 == 1 {
        return no();
    }
    let cut = Cut::new(sides);
    debug_assert_eq!(classify_cut(g, &cut), Ok(CutClass::PerfectMatchingCut));
    Ok(SolveResult::yes(cut, SolveStats::default()))
}

/// Leaf, spine, leaf; `None` if the tree is not a caterpillar.
fn basic_path(g: &Graph) -> Option<Vec<usize>> {
    let spine: Vec<usize> = g.vertices().filter(|&v| g.degree(v) > 1).collect();
    let is_spine = |v: usize| g.degree(v) > 1;
    // Spine vertices must induce a path.
    let spine_deg = |v: usize| g.neighbors(v).iter().filter(|&&w| is_spine(w)).count();
    if spine.iter().any(|&v| spine_deg(v) > 2) {
        return None;
    }
    let start = *spine.iter().find(|&&v| spine_deg(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev && is_spine(w)) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    let leaf = |v: usize, not: usize| g.neighbors(v).iter().copied().find(|&w| !is_spine(w) && w != not);
    let first = leaf(start, usize::MAX)?;
    let last = leaf(cur, first)?;
    let mut path = vec![first];
    path.extend(order);
    path.push(last);
    Some(path)
}
