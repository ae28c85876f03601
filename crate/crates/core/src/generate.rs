//! Named graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// Edges of the cube in the fixed template order used by the gadgets:
/// `0 = c`, `1..=3 = c1..c3` (the clause vertices), `4 = c'`,
/// `5..=7 = c1'..c3'`.
pub const CUBE_EDGES: [(usize, usize); 12] = [
    (0, 1), (0, 2), (0, 3),
    (4, 5), (4, 6), (4, 7),
    (1, 6), (1, 7),
    (2, 5), (2, 7),
    (3, 5), (3, 6),
];

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced a simple graph")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// The cycle `C_n`; `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    build(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, &edges)
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    build(k + 1, &edges)
}

pub fn cube() -> Graph {
    build(8, &CUBE_EDGES)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    build(10, &edges)
}

/// The 6-vertex tree obtained from the claw by subdividing two of its edges:
/// the path `0-1-2-3-4` plus the pendant edge `2-5`.
pub fn subdivided_claw() -> Graph {
    build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
}

/// A caterpillar whose spine is `0..k` (`k = leaves.len()`); spine vertex
/// `i` gets `leaves[i]` pendant vertices, numbered after the spine.
pub fn caterpillar(leaves: &[usize]) -> Graph {
    let k = leaves.len();
    let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    let mut next = k;
    for (i, &l) in leaves.iter().enumerate() {
        for _ in 0..l {
            edges.push((i, next));
            next += 1;
        }
    }
    build(next, &edges)
}

/// A cycle on `k` vertices where every pair of consecutive cycle vertices
/// gets a private common neighbour. Pseudo-chordal but not chordal for
/// `k >= 4`.
pub fn decorated_cycle(k: usize) -> Graph {
    assert!(k >= 3);
    let mut edges = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        edges.push((i, j));
        edges.push((i, k + i));
        edges.push((j, k + i));
    }
    build(2 * k, &edges)
}

/// Uniform-ish random labelled tree: vertex `i` attaches to a random earlier
/// vertex of a shuffled order.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges: Vec<_> = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect();
    build(n, &edges)
}

/// A connected graph with `n` vertices and `min(m, n(n-1)/2)` edges (at
/// least `n - 1`): a random spanning tree plus uniformly chosen extra edges.
pub fn random_connected<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges: Vec<_> = tree.edges().collect();
    let max = n * n.saturating_sub(1) / 2;
    let target = m.clamp(n.saturating_sub(1), max);
    if target > edges.len() {
        let mut missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !tree.has_edge(u, v))
            .collect();
        missing.shuffle(rng);
        edges.extend(missing.into_iter().take(target - edges.len()));
    }
    build(n, &edges)
}

/// Erdős-Rényi `G(n, p)`.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    build(n, &edges)
}

/// Random connected chordal graph: every new vertex is joined to a non-empty
/// subset of a clique of the current graph (it is simplicial when added).
pub fn random_chordal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for w in 1..n {
        let v = rng.gen_range(0..w);
        let mut clique = vec![v];
        let mut cand = adj[v].clone();
        cand.shuffle(rng);
        for u in cand {
            if rng.gen_bool(0.5) && clique.iter().all(|c| adj[u].contains(c)) {
                clique.push(u);
            }
        }
        let take = rng.gen_range(1..=clique.len());
        for &u in &clique[..take] {
            edges.push((u, w));
            adj[u].push(w);
            adj[w].push(u);
        }
    }
    build(n, &edges)
}

/// Random connected pseudo-chordal graph on `n` vertices. Starts from a
/// single vertex or a decorated cycle and grows by pendant edges and by
/// vertices adjacent to both ends of an existing edge; both steps keep every
/// edge of every non-trivial block on a triangle.
pub fn random_pseudo_chordal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let (mut count, mut edges) = if n >= 6 && rng.gen_bool(0.5) {
        let k = rng.gen_range(3..=n / 2);
        let c = decorated_cycle(k);
        (c.n(), c.edges().collect::<Vec<_>>())
    } else {
        (1, Vec::new())
    };
    while count < n {
        let w = count;
        if edges.is_empty() || rng.gen_bool(0.6) {
            edges.push((rng.gen_range(0..w), w));
        } else {
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            edges.push((a, w));
            edges.push((b, w));
        }
        count += 1;
    }
    build(n, &edges)
}

/// Two connected random graphs on `k` vertices each (spanning tree plus
/// `G(k, p)` edges), joined by a random perfect matching. Vertices `0..k`
/// and `k..2k` form a perfect matching cut.
pub fn random_planted<R: Rng + ?Sized>(k: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for base in [0, k] {
        let t = random_tree(k, rng);
        edges.extend(t.edges().map(|(u, v)| (base + u, base + v)));
        for u in 0..k {
            for v in u + 1..k {
                if !t.has_edge(u, v) && rng.gen_bool(p) {
                    edges.push((base + u, base + v));
                }
            }
        }
    }
    let mut mate: Vec<usize> = (k..2 * k).collect();
    mate.shuffle(rng);
    edges.extend(mate.iter().enumerate().map(|(u, &v)| (u, v)));
    build(2 * k, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_sizes() {
        assert_eq!((cube().n(), cube().m()), (8, 12));
        assert_eq!((petersen().n(), petersen().m()), (10, 15));
        assert_eq!(max_degree(&cube()), 3);
        assert_eq!(caterpillar(&[1, 0, 2]).n(), 6);
        assert_eq!(decorated_cycle(5).m(), 15);
        assert_eq!(subdivided_claw().m(), 5);
    }

    #[test]
    fn planted_cut_is_a_cut() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..8 {
            let g = random_planted(k, 0.3, &mut rng);
            assert!(is_connected(&g));
            let x: Vec<usize> = (0..k).collect();
            let cut = crate::cut::Cut::from_x_set(2 * k, &x);
            assert!(crate::cut::is_perfect_matching_cut(&g, &cut));
        }
    }

    #[test]
    fn random_generators_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..20 {
            let t = random_tree(n, &mut rng);
            assert_eq!(t.m(), n - 1);
            assert!(is_connected(&t));
            let g = random_connected(n, 2 * n, &mut rng);
            assert!(is_connected(&g));
            assert!(is_connected(&random_chordal(n, &mut rng)));
            assert!(is_connected(&random_pseudo_chordal(n, &mut rng)));
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_connected(30, 60, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_connected(30, 60, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(a.m(), 60);
    }
}
