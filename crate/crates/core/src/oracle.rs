//! Exhaustive path-graph decision over all labeled trees on the maximal
//! cliques, enumerated as Prüfer sequences in lexicographic order.

use std::collections::{BTreeMap, BTreeSet};

use crate::chordal::{maximal_cliques, verify_clique_path_tree, CliqueTree};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId};

/// Default clique cap of the exhaustive search.
pub const ORACLE_CLIQUE_CAP: usize = 9;

/// A path graph drawn as paths in its clique path tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRealization {
    pub host_tree: CliqueTree,
    /// Clique indices containing each vertex, in order along the tree.
    pub vertex_paths: BTreeMap<VertexId, Vec<usize>>,
}

impl PathRealization {
    pub fn to_text(&self, g: &SimpleGraph) -> String {
        let name = |i: usize| {
            self.host_tree.cliques[i]
                .iter()
                .map(|&v| g.label(v).as_str())
                .collect::<Vec<_>>()
                .join("")
        };
        self.vertex_paths
            .iter()
            .map(|(v, path)| {
                let nodes: Vec<String> = path.iter().map(|&i| name(i)).collect();
                format!("{v}: {}\n", nodes.join(" - "))
            })
            .collect()
    }
}

/// Decodes a Prüfer sequence over nodes `0..c` into tree edges.
pub fn prufer_decode(seq: &[usize], c: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; c];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(c.saturating_sub(1));
    for &x in seq {
        let leaf = (0..c).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..c).filter(|&v| degree[v] == 1).collect();
    if let [a, b] = rest.as_slice() {
        edges.push((*a, *b));
    }
    edges
}

/// Per-vertex clique masks and the weights used by the fast filter.
struct Search {
    c: usize,
    /// Row-major `c × c` intersection sizes.
    weight: Vec<u32>,
    target: u32,
    masks: Vec<u32>,
}

impl Search {
    /// Decodes `seq` with bitmask leaf selection; returns the edges when the
    /// tree is a clique path tree.
    fn accept(&self, seq: &[usize], edges: &mut Vec<(usize, usize)>) -> bool {
        let c = self.c;
        let mut degree = [1u8; 32];
        for &x in seq {
            degree[x] += 1;
        }
        let mut leaves: u32 = 0;
        for (v, &d) in degree.iter().enumerate().take(c) {
            if d == 1 {
                leaves |= 1 << v;
            }
        }
        edges.clear();
        let mut total = 0u32;
        for &x in seq {
            let leaf = leaves.trailing_zeros() as usize;
            leaves &= !(1 << leaf);
            total += self.weight[leaf * c + x];
            edges.push((leaf, x));
            degree[x] -= 1;
            if degree[x] == 1 {
                leaves |= 1 << x;
            }
        }
        let a = leaves.trailing_zeros() as usize;
        let b = (leaves & !(1 << a)).trailing_zeros() as usize;
        total += self.weight[a * c + b];
        edges.push((a, b));
        // Only clique trees reach the maximum weight.
        if total != self.target {
            return false;
        }
        for &m in &self.masks {
            if m.count_ones() < 3 {
                continue;
            }
            let mut deg = [0u8; 32];
            for &(x, y) in edges.iter() {
                if m >> x & 1 == 1 && m >> y & 1 == 1 {
                    deg[x] += 1;
                    deg[y] += 1;
                    if deg[x] > 2 || deg[y] > 2 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Searches all `c^(c-2)` labeled trees on the cliques; returns the tree of the
/// lexicographically smallest accepted Prüfer sequence.
pub fn find_clique_path_tree(g: &SimpleGraph, max_cliques: usize) -> Result<Option<CliqueTree>> {
    let cs = maximal_cliques(g)?;
    let c = cs.len();
    if c > max_cliques {
        return Err(Error::CapExceeded {
            what: "oracle cliques",
            actual: c,
            cap: max_cliques,
        });
    }
    if c <= 2 {
        let edges = if c == 2 {
            BTreeSet::from([(0, 1)])
        } else {
            BTreeSet::new()
        };
        return Ok(Some(CliqueTree {
            cliques: cs.cliques,
            edges,
        }));
    }
    assert!(c < 32, "clique masks are 32-bit");
    let weight: Vec<u32> = (0..c * c)
        .map(|k| cs.cliques[k / c].intersection(&cs.cliques[k % c]).count() as u32)
        .collect();
    let containing = cs.containing(g.vertex_count());
    let target = containing
        .iter()
        .map(|l| l.len().saturating_sub(1) as u32)
        .sum();
    let masks = containing
        .iter()
        .map(|l| l.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    let search = Search {
        c,
        weight,
        target,
        masks,
    };
    let mut seq = vec![0usize; c - 2];
    let mut edges = Vec::with_capacity(c);
    loop {
        if search.accept(&seq, &mut edges) {
            let edges = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            return Ok(Some(CliqueTree {
                cliques: cs.cliques,
                edges,
            }));
        }
        // odometer, last position fastest
        let mut i = seq.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < c {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Exhaustive decision with a realization when the graph is a path graph.
pub fn oracle_is_path_graph(g: &SimpleGraph, max_cliques: usize) -> Result<Option<PathRealization>> {
    match find_clique_path_tree(g, max_cliques)? {
        Some(t) => realize_paths(g, &t).map(Some),
        None => Ok(None),
    }
}

/// Lists every vertex's cliques in path order and re-checks that adjacency
/// equals path intersection.
pub fn realize_paths(g: &SimpleGraph, t: &CliqueTree) -> Result<PathRealization> {
    if !verify_clique_path_tree(g, t)? {
        return Err(Error::NotAPathTree("tree fails the path condition".into()));
    }
    let adj = t.adjacency();
    let mut vertex_paths = BTreeMap::new();
    let mut sets = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let nodes: BTreeSet<usize> = (0..t.cliques.len())
            .filter(|&i| t.cliques[i].contains(&v))
            .collect();
        let inner_deg = |i: usize| adj[i].iter().filter(|j| nodes.contains(j)).count();
        let start = *nodes
            .iter()
            .find(|&&i| inner_deg(i) <= 1)
            .expect("a path has an end");
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&j| j != prev && nodes.contains(&j)) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        sets.push(nodes);
        vertex_paths.insert(g.label(v).clone(), path);
    }
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            if g.has_edge(u, v) == sets[u].is_disjoint(&sets[v]) {
                return Err(Error::NotAPathTree(format!(
                    "paths of {} and {} disagree with adjacency",
                    g.label(u),
                    g.label(v)
                )));
            }
        }
    }
    Ok(PathRealization {
        host_tree: t.clone(),
        vertex_paths,
    })
}

/// Exhaustive decision without the realization.
pub fn oracle_decides_path(g: &SimpleGraph, max_cliques: usize) -> Result<bool> {
    Ok(find_clique_path_tree(g, max_cliques)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_examples() {
        assert_eq!(prufer_decode(&[3, 3], 4), vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(prufer_decode(&[], 2), vec![(0, 1)]);
        let mut all = BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                let mut e = prufer_decode(&[a, b], 4);
                e.sort();
                all.insert(e);
            }
        }
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn worked_example_realization() {
        let g = SimpleGraph::from_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("b", "c"),
            ("c", "d"),
            ("c", "e"),
            ("d", "e"),
            ("b", "e"),
            ("b", "g"),
            ("e", "g"),
            ("b", "f"),
            ("f", "g"),
            ("e", "h"),
            ("g", "h"),
        ])
        .unwrap();
        let r = oracle_is_path_graph(&g, 9).unwrap().unwrap();
        assert!(verify_clique_path_tree(&g, &r.host_tree).unwrap());
        assert_eq!(r.vertex_paths[&VertexId::from("a")], vec![0]);
        let center = crate::chordal::build_clique_tree(&g).unwrap();
        let r2 = realize_paths(&g, &center).unwrap();
        // b: abc - bce - beg - bfg
        assert_eq!(r2.vertex_paths[&VertexId::from("b")], vec![0, 1, 2, 3]);
        assert!(r2.to_text(&g).contains("b: abc - bce - beg - bfg"));
    }

    #[test]
    fn triple_fan_is_not_path() {
        let g = SimpleGraph::from_edges(&[
            ("x", "y1"),
            ("x", "y2"),
            ("x", "y3"),
            ("y1", "y2"),
            ("y1", "y3"),
            ("y2", "y3"),
            ("b1", "x"),
            ("b1", "y1"),
            ("b2", "x"),
            ("b2", "y2"),
            ("b3", "x"),
            ("b3", "y3"),
        ])
        .unwrap();
        assert_eq!(oracle_is_path_graph(&g, 9).unwrap(), None);
        assert!(matches!(
            oracle_is_path_graph(&g, 3),
            Err(Error::CapExceeded { actual: 4, .. })
        ));
    }

    #[test]
    fn single_clique() {
        let g = SimpleGraph::from_edges(&[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let r = oracle_is_path_graph(&g, 9).unwrap().unwrap();
        assert!(r.vertex_paths.values().all(|p| p == &vec![0]));
        let c4 = SimpleGraph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert_eq!(oracle_is_path_graph(&c4, 9), Err(Error::NotChordal));
    }
}
