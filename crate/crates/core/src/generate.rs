//! Seeded random instances: subtree-model chordal graphs, graphs around a
//! fixed clique separator, and exhaustive labeled graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chordal::is_chordal;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId, VertexSet};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random labeled tree on `n` nodes, as an edge list.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    crate::oracle::prufer_decode(&seq, n)
}

fn padded_labels(prefix: &str, n: usize) -> Vec<VertexId> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n)
        .map(|i| VertexId::new(format!("{prefix}{i:0width$}")))
        .collect()
}

/// Intersection graph of `vertices` random subtrees of a random tree on
/// `host_nodes` nodes. Each subtree grows from a random node; with
/// probability `single` it is that node alone, otherwise its size is uniform
/// in `1..=max_subtree`.
pub fn subtree_graph<R: Rng>(
    vertices: usize,
    host_nodes: usize,
    max_subtree: usize,
    single: f64,
    rng: &mut R,
) -> SimpleGraph {
    let host_nodes = host_nodes.max(1);
    let mut adj = vec![Vec::new(); host_nodes];
    for (a, b) in random_tree(host_nodes, rng) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let subtrees: Vec<BTreeSet<usize>> = (0..vertices)
        .map(|_| {
            let size = if rng.gen_bool(single) {
                1
            } else {
                rng.gen_range(1..=max_subtree.clamp(1, host_nodes))
            };
            // breadth-first growth favors subtrees that branch
            let root = rng.gen_range(0..host_nodes);
            let mut nodes = BTreeSet::from([root]);
            let mut queue = std::collections::VecDeque::from([root]);
            while nodes.len() < size {
                let Some(x) = queue.pop_front() else { break };
                let mut next: Vec<usize> = adj[x].iter().copied().filter(|y| !nodes.contains(y)).collect();
                next.shuffle(rng);
                for y in next.into_iter().take(size - nodes.len()) {
                    nodes.insert(y);
                    queue.push_back(y);
                }
            }
            nodes
        })
        .collect();
    let labels = padded_labels("v", vertices);
    let mut edges = Vec::new();
    for a in 0..vertices {
        for b in a + 1..vertices {
            if !subtrees[a].is_disjoint(&subtrees[b]) {
                edges.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let g = SimpleGraph::new(labels, edges).expect("labels are distinct");
    assert!(is_chordal(&g).is_chordal(), "subtree intersection graphs are chordal");
    g
}

/// Chordal graph grown one simplicial vertex at a time: each new vertex picks
/// an existing vertex `u` and joins a random clique through `u`, keeping each
/// further neighbor of `u` with probability `keep`.
pub fn clique_growth_graph<R: Rng>(vertices: usize, keep: f64, rng: &mut R) -> SimpleGraph {
    let labels = padded_labels("v", vertices);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertices];
    for x in 1..vertices {
        let u = rng.gen_range(0..x);
        let mut clique = vec![u];
        let mut cand: Vec<usize> = adj[u].iter().copied().collect();
        cand.shuffle(rng);
        for w in cand {
            if rng.gen_bool(keep) && clique.iter().all(|c| adj[w].contains(c)) {
                clique.push(w);
            }
        }
        for c in clique {
            adj[x].insert(c);
            adj[c].insert(x);
        }
    }
    let edges = (0..vertices).flat_map(|a| {
        adj[a]
            .iter()
            .filter(move |&&b| b > a)
            .map(|&b| (labels[a].clone(), labels[b].clone()))
            .collect::<Vec<_>>()
    });
    let g = SimpleGraph::new(labels.clone(), edges).expect("labels are distinct");
    debug_assert!(is_chordal(&g).is_chordal());
    g
}

/// Named generator used by the command line: `subtree` draws `n` subtrees of
/// a tree on `n` nodes.
pub fn generate(model: &str, n: usize, seed: u64) -> Result<SimpleGraph> {
    match model {
        "subtree" => {
            let mut rng = rng_from_seed(seed);
            Ok(subtree_graph(n, n, n.div_ceil(2).max(1), 0.0, &mut rng))
        }
        other => Err(Error::UnknownModel(other.to_owned())),
    }
}

/// A chordal graph with a designated maximal clique `Q` that separates it
/// into `parts` components. Each part hangs off a proper subset of `Q` and
/// contributes a few nested or overlapping traces.
pub fn separator_graph<R: Rng>(
    q_size: usize,
    parts: usize,
    max_extra: usize,
    rng: &mut R,
) -> (SimpleGraph, VertexSet) {
    assert!(q_size >= 2, "a proper non-empty subset of Q needs |Q| >= 2");
    let q: Vec<VertexId> = padded_labels("q", q_size);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for a in 0..q_size {
        for b in a + 1..q_size {
            edges.push((q[a].clone(), q[b].clone()));
        }
    }
    let mut vertices = q.clone();
    for p in 0..parts {
        // maximal trace: random non-empty proper subset of Q
        let top: Vec<usize> = loop {
            let s: Vec<usize> = (0..q_size).filter(|_| rng.gen_bool(0.5)).collect();
            if !s.is_empty() && s.len() < q_size {
                break s;
            }
        };
        let x = VertexId::new(format!("p{p}x"));
        vertices.push(x.clone());
        for &i in &top {
            edges.push((x.clone(), q[i].clone()));
        }
        // extra vertices hang off x or an earlier extra vertex and see a
        // random subset of their parent's separator neighbors
        let mut made: Vec<(VertexId, Vec<usize>)> = vec![(x, top)];
        for j in 0..rng.gen_range(0..=max_extra) {
            let (parent, seen) = made[rng.gen_range(0..made.len())].clone();
            let sub: Vec<usize> = seen.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let y = VertexId::new(format!("p{p}y{j}"));
            vertices.push(y.clone());
            edges.push((y.clone(), parent));
            for &i in &sub {
                edges.push((y.clone(), q[i].clone()));
            }
            made.push((y, sub));
        }
    }
    let g = SimpleGraph::new(vertices, edges).expect("labels are distinct");
    debug_assert!(is_chordal(&g).is_chordal());
    let qs = q.iter().map(|l| g.index_of(l.as_str()).expect("present")).collect();
    (g, qs)
}

/// Every labeled simple graph on vertices `a, b, ...` (n ≤ 26), in order of
/// the edge bitmask.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    assert!(n <= 26, "single-letter labels");
    let labels: Vec<VertexId> = (0..n)
        .map(|i| VertexId::new(((b'a' + i as u8) as char).to_string()))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(a, b))| (labels[a].clone(), labels[b].clone()));
        SimpleGraph::new(labels.iter().cloned(), edges).expect("no loops")
    })
}
