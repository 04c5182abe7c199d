//! Chordality test, maximal cliques, clique trees and clique separators.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// A perfect elimination candidate: `order[0]` is eliminated first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
    pub position: Vec<usize>,
}

impl EliminationOrder {
    fn from_order(order: Vec<usize>) -> Self {
        let mut position = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        EliminationOrder { order, position }
    }

    /// Neighbors of `v` eliminated after `v`.
    pub fn later_neighbors(&self, g: &SimpleGraph, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.position[w] > self.position[v])
            .collect();
        out.sort_by_key(|&w| self.position[w]);
        out
    }
}

/// Maximum cardinality search; ties go to the smallest vertex index.
/// Returns the reverse of the visit order.
pub fn mcs_order(g: &SimpleGraph) -> EliminationOrder {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    // buckets[w] holds unvisited vertices of weight w
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
    buckets[0].extend(0..n);
    let mut top = 0;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let v = *buckets[top].iter().next().expect("bucket non-empty");
        buckets[top].remove(&v);
        done[v] = true;
        visit.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                buckets[weight[w]].remove(&w);
                weight[w] += 1;
                buckets[weight[w]].insert(w);
                top = top.max(weight[w]);
            }
        }
    }
    visit.reverse();
    EliminationOrder::from_order(visit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// A chordless cycle of length at least four, as a vertex sequence.
    Hole(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Finds the first triple `(v, p, w)` breaking the perfect elimination property.
fn elimination_failure(g: &SimpleGraph, eo: &EliminationOrder) -> Option<(usize, usize, usize)> {
    for &v in &eo.order {
        let later = eo.later_neighbors(g, v);
        if let Some((&p, rest)) = later.split_first() {
            if let Some(&w) = rest.iter().find(|&&w| !g.has_edge(p, w)) {
                return Some((v, p, w));
            }
        }
    }
    None
}

/// Hole through `v` with `v`'s hole neighbors `a` and `b`, if one exists.
fn hole_through(g: &SimpleGraph, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let nv = g.neighbors(v);
    let path = g.shortest_path(a, b, |x| x != v && !nv.contains(&x))?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

/// Checks that `cycle` is a chordless cycle of length at least four.
pub fn is_hole(g: &SimpleGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().collect::<BTreeSet<_>>().len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

pub fn is_chordal(g: &SimpleGraph) -> Chordality {
    let eo = mcs_order(g);
    let Some((v, p, w)) = elimination_failure(g, &eo) else {
        return Chordality::Chordal(eo);
    };
    if let Some(h) = hole_through(g, v, p, w) {
        debug_assert!(is_hole(g, &h));
        return Chordality::Hole(h);
    }
    // Every hole passes some vertex whose two hole neighbors stay connected
    // outside its closed neighborhood, so this scan always succeeds.
    for v in 0..g.vertex_count() {
        let ns: Vec<usize> = g.neighbors(v).iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !g.has_edge(a, b) {
                    if let Some(h) = hole_through(g, v, a, b) {
                        return Chordality::Hole(h);
                    }
                }
            }
        }
    }
    unreachable!("perfect elimination failed but no hole exists")
}

/// Maximal cliques in canonical order (lexicographic on sorted members).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueSet {
    pub cliques: Vec<VertexSet>,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// For every vertex, the indices of the cliques containing it.
    pub fn containing(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for (i, c) in self.cliques.iter().enumerate() {
            for &v in c {
                out[v].push(i);
            }
        }
        out
    }
}

pub fn maximal_cliques(g: &SimpleGraph) -> Result<CliqueSet> {
    let eo = match is_chordal(g) {
        Chordality::Chordal(eo) => eo,
        Chordality::Hole(_) => return Err(Error::NotChordal),
    };
    Ok(cliques_from_order(g, &eo))
}

/// With a perfect elimination order, `{v} ∪ later(v)` is a non-maximal clique
/// exactly when some `u` has parent `v` and one more later neighbor than `v`.
pub(crate) fn cliques_from_order(g: &SimpleGraph, eo: &EliminationOrder) -> CliqueSet {
    let n = g.vertex_count();
    let later: Vec<Vec<usize>> = (0..n).map(|v| eo.later_neighbors(g, v)).collect();
    let mut maximal = vec![true; n];
    for u in 0..n {
        if let Some(&p) = later[u].first() {
            if later[u].len() == later[p].len() + 1 {
                maximal[p] = false;
            }
        }
    }
    let mut cliques: Vec<VertexSet> = (0..n)
        .filter(|&v| maximal[v])
        .map(|v| {
            let mut c: VertexSet = later[v].iter().copied().collect();
            c.insert(v);
            c
        })
        .collect();
    cliques.sort();
    CliqueSet { cliques }
}

/// A tree whose nodes are maximal cliques, given by their index in `cliques`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    pub cliques: Vec<VertexSet>,
    /// Tree edges `(a, b)` with `a < b`.
    pub edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize)]
struct CliqueTreeJson {
    cliques: Vec<Vec<String>>,
    edges: Vec<(usize, usize)>,
}

impl CliqueTree {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cliques.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn is_tree(&self) -> bool {
        let n = self.cliques.len();
        if n == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() != n - 1 || self.edges.iter().any(|&(a, b)| a >= b || b >= n) {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks that the nodes containing `v` span a connected subtree, and
    /// whether that subtree is a path.
    fn vertex_subtree(&self, v: usize) -> (bool, bool) {
        let nodes: BTreeSet<usize> = (0..self.cliques.len())
            .filter(|&i| self.cliques[i].contains(&v))
            .collect();
        let inner: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|(a, b)| nodes.contains(a) && nodes.contains(b))
            .collect();
        // A forest on m nodes is connected iff it has m - 1 edges.
        let connected = nodes.is_empty() || inner.len() + 1 == nodes.len();
        let mut deg = BTreeMap::new();
        for (a, b) in &inner {
            *deg.entry(*a).or_insert(0) += 1;
            *deg.entry(*b).or_insert(0) += 1;
        }
        let path = connected && deg.values().all(|&d| d <= 2);
        (connected, path)
    }

    fn check(&self, g: &SimpleGraph, need_paths: bool) -> Result<()> {
        let mine: BTreeSet<&VertexSet> = self.cliques.iter().collect();
        let theirs = maximal_cliques(g)?;
        if mine.len() != self.cliques.len() || mine != theirs.cliques.iter().collect() {
            return Err(Error::CliqueSetMismatch);
        }
        if !self.is_tree() {
            return Err(Error::NotAPathTree("edges do not form a spanning tree".into()));
        }
        for v in 0..g.vertex_count() {
            let (connected, path) = self.vertex_subtree(v);
            if !connected {
                return Err(Error::NotAPathTree(format!(
                    "cliques containing {} are not connected",
                    g.label(v)
                )));
            }
            if need_paths && !path {
                return Err(Error::NotAPathTree(format!(
                    "cliques containing {} do not form a path",
                    g.label(v)
                )));
            }
        }
        Ok(())
    }

    pub fn to_dot(&self, g: &SimpleGraph) -> String {
        let mut out = String::from("graph clique_tree {\n");
        for (i, c) in self.cliques.iter().enumerate() {
            let label: Vec<String> = c.iter().map(|&v| g.label(v).to_string()).collect();
            out.push_str(&format!("  k{i} [label=\"{}\"];\n", label.join(" ")));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  k{a} -- k{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, g: &SimpleGraph) -> serde_json::Value {
        let j = CliqueTreeJson {
            cliques: self
                .cliques
                .iter()
                .map(|c| c.iter().map(|&v| g.label(v).to_string()).collect())
                .collect(),
            edges: self.edges.iter().copied().collect(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Maximum-weight spanning tree over clique intersection sizes; among equal
/// weights the lexicographically smaller clique pair goes first.
pub fn build_clique_tree(g: &SimpleGraph) -> Result<CliqueTree> {
    let cs = maximal_cliques(g)?;
    let k = cs.len();
    let mut candidates = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let w = cs.cliques[a].intersection(&cs.cliques[b]).count();
            candidates.push((std::cmp::Reverse(w), a, b));
        }
    }
    candidates.sort();
    let mut parent: Vec<usize> = (0..k).collect();
    let mut edges = BTreeSet::new();
    for (_, a, b) in candidates {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            edges.insert((a, b));
        }
    }
    let tree = CliqueTree {
        cliques: cs.cliques,
        edges,
    };
    debug_assert!(tree.check(g, false).is_ok());
    Ok(tree)
}

/// Verifies the clique-tree property: nodes are the maximal cliques and each
/// vertex's cliques form a subtree.
pub fn verify_clique_tree(g: &SimpleGraph, t: &CliqueTree) -> Result<bool> {
    match t.check(g, false) {
        Ok(()) => Ok(true),
        Err(Error::CliqueSetMismatch) => Err(Error::CliqueSetMismatch),
        Err(Error::NotChordal) => Err(Error::NotChordal),
        Err(_) => Ok(false),
    }
}

/// Like [`verify_clique_tree`] but each vertex's cliques must form a path.
pub fn verify_clique_path_tree(g: &SimpleGraph, t: &CliqueTree) -> Result<bool> {
    match t.check(g, true) {
        Ok(()) => Ok(true),
        Err(Error::CliqueSetMismatch) => Err(Error::CliqueSetMismatch),
        Err(Error::NotChordal) => Err(Error::NotChordal),
        Err(_) => Ok(false),
    }
}

/// Maximal cliques `Q` such that the connected component containing `Q`
/// falls apart into at least two pieces once `Q` is removed.
pub fn clique_separators(g: &SimpleGraph) -> Result<Vec<VertexSet>> {
    let cs = maximal_cliques(g)?;
    let comps = g.connected_components();
    let mut comp_of = vec![0; g.vertex_count()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    Ok(cs
        .cliques
        .into_iter()
        .filter(|q| {
            let home = comp_of[*q.iter().next().expect("cliques are non-empty")];
            let outside: VertexSet = (0..g.vertex_count())
                .filter(|&v| comp_of[v] != home)
                .chain(q.iter().copied())
                .collect();
            g.components_avoiding(&outside).len() >= 2
        })
        .collect())
}
