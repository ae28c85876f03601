//! Structural analyses: connectivity, girth, bipartiteness, blocks.

use std::collections::VecDeque;

use crate::graph::Graph;

/// Connected components, each sorted, listed by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        queue.push_back(s);
        let mut members = vec![s];
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Length of a shortest cycle, `None` for forests.
///
/// Runs a BFS from every vertex, so this costs O(n·m).
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        let mut touched = vec![s];
        dist[s] = 0;
        queue.push_back(s);
        'bfs: while let Some(v) = queue.pop_front() {
            // Anything found from here on has length at least 2·dist[v].
            if 2 * dist[v] >= best {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        queue.clear();
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// A proper 2-colouring (`false`/`true` per vertex) if one exists.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(d) if d == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

pub fn max_degree(g: &Graph) -> usize {
    g.vertices().map(|v| g.degree(v)).max().unwrap_or(0)
}

/// A block: a maximal 2-connected subgraph, or a bridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    /// Non-trivial blocks have at least three vertices.
    pub fn is_nontrivial(&self) -> bool {
        self.vertices.len() >= 3
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn nontrivial_flags(&self) -> Vec<bool> {
        self.blocks.iter().map(Block::is_nontrivial).collect()
    }
}

/// Block / cut-vertex decomposition (iterative Hopcroft-Tarjan with an
/// edge stack). Isolated vertices belong to no block.
pub fn biconnected_blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in g.vertices() {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, i) = *frame;
            if i < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[i];
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut edges = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    edges.push((e.0.min(e.1), e.0.max(e.1)));
                    if e == (parent, v) {
                        break;
                    }
                }
                edges.sort_unstable();
                let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                vertices.sort_unstable();
                vertices.dedup();
                blocks.push(Block { vertices, edges });
            }
        }
    }
    blocks.sort_by(|a, b| a.edges.cmp(&b.edges));

    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices = g.vertices().filter(|&v| count[v] >= 2).collect();
    BlockDecomposition { blocks, cut_vertices }
}

/// The edge set `D` of all non-trivial blocks, and the vertex sets of the
/// connected components of `D` (the "supernodes").
pub fn triangle_saturated_components(g: &Graph) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let decomposition = biconnected_blocks(g);
    let mut d_edges: Vec<(usize, usize)> = decomposition
        .blocks
        .iter()
        .filter(|b| b.is_nontrivial())
        .flat_map(|b| b.edges.iter().copied())
        .collect();
    d_edges.sort_unstable();
    let d = Graph::from_edges(g.n(), &d_edges).expect("block edges form a simple graph");
    let components = connected_components(&d).into_iter().filter(|c| c.len() > 1).collect();
    (d_edges, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn components_examples() {
        assert_eq!(connected_components(&generate::complete(3)), vec![vec![0, 1, 2]]);
        assert_eq!(connected_components(&Graph::empty(3)), vec![vec![0], vec![1], vec![2]]);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&generate::cycle(5)), Some(5));
        assert_eq!(girth(&generate::path(7)), None);
        assert_eq!(girth(&generate::star(4)), None);
        assert_eq!(girth(&generate::cube()), Some(4));
        assert_eq!(girth(&generate::complete(4)), Some(3));
        assert_eq!(girth(&generate::petersen()), Some(5));
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&generate::cycle(4)));
        assert!(!is_bipartite(&generate::cycle(5)));
        let cube = generate::cube();
        let col = two_coloring(&cube).unwrap();
        assert!(cube.edges().all(|(u, v)| col[u] != col[v]));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(max_degree(&generate::star(3)), 3);
        assert_eq!(max_degree(&generate::cycle(8)), 2);
        assert_eq!(max_degree(&Graph::empty(1)), 0);
    }

    #[test]
    fn blocks_of_triangle_with_pendant() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let bd = biconnected_blocks(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.blocks[0].vertices, vec![0, 1, 2]);
        assert_eq!(bd.blocks[1].vertices, vec![2, 3]);
        assert_eq!(bd.cut_vertices, vec![2]);
        assert_eq!(bd.nontrivial_flags(), vec![true, false]);
    }

    #[test]
    fn blocks_of_tree_and_cycle() {
        let t = generate::path(5);
        let bd = biconnected_blocks(&t);
        assert_eq!(bd.blocks.len(), 4);
        assert!(bd.blocks.iter().all(|b| b.edges.len() == 1));
        assert_eq!(bd.cut_vertices, vec![1, 2, 3]);

        let c = biconnected_blocks(&generate::cycle(5));
        assert_eq!(c.blocks.len(), 1);
        assert!(c.cut_vertices.is_empty());
    }

    #[test]
    fn saturated_components_examples() {
        let (d, comps) = triangle_saturated_components(&generate::path(6));
        assert!(d.is_empty() && comps.is_empty());

        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let (d, comps) = triangle_saturated_components(&g);
        assert_eq!(d, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(comps, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn saturated_components_two_clusters_joined_by_path() {
        // Triangle {0,1,2} sharing vertex 2 with triangle {2,3,4} forms one
        // cluster; K4 on {7..10} is another; the path 4-5-6-7 joins them.
        let g = Graph::from_edges(
            11,
            &[
                (0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4),
                (4, 5), (5, 6), (6, 7),
                (7, 8), (7, 9), (7, 10), (8, 9), (8, 10), (9, 10),
            ],
        )
        .unwrap();
        let (_, comps) = triangle_saturated_components(&g);
        // Independent route: union the vertex sets of blocks with >= 3 vertices
        // whenever they share a vertex.
        let bd = biconnected_blocks(&g);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for b in bd.blocks.iter().filter(|b| b.vertices.len() >= 3) {
            let mut merged = b.vertices.clone();
            groups.retain(|grp| {
                if grp.iter().any(|v| merged.contains(v)) {
                    merged.extend(grp);
                    false
                } else {
                    true
                }
            });
            merged.sort_unstable();
            merged.dedup();
            groups.push(merged);
        }
        groups.sort();
        assert_eq!(comps, groups);
        assert_eq!(comps, vec![vec![0, 1, 2, 3, 4], vec![7, 8, 9, 10]]);
    }
}
