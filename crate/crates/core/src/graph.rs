//! Labeled simple undirected graphs and the edge-list text format.
//!
//! Vertices are stored in lexicographic label order, so vertex index order is
//! the canonical order used for every tie-break in the crate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex label. Labels order lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// A set of vertex indices of some graph.
pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<VertexId>,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from a vertex list and an edge list. Endpoints that do not
    /// appear in `vertices` are added. Duplicate edges collapse.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
        let mut all: BTreeSet<VertexId> = vertices.into_iter().collect();
        for (a, b) in &edges {
            if a == b {
                return Err(Error::SelfLoop {
                    vertex: a.to_string(),
                    line: None,
                });
            }
            all.insert(a.clone());
            all.insert(b.clone());
        }
        let labels: Vec<VertexId> = all.into_iter().collect();
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (a, b) in &edges {
            let i = labels.binary_search(a).expect("endpoint inserted above");
            let j = labels.binary_search(b).expect("endpoint inserted above");
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(SimpleGraph { labels, adj })
    }

    /// Convenience constructor from string pairs; vertices are the endpoints.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self> {
        Self::new(
            std::iter::empty(),
            edges.iter().map(|&(a, b)| (VertexId::from(a), VertexId::from(b))),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexId {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Resolves labels to an index set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_owned()))
            })
            .collect()
    }

    pub fn labels_of<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Vec<VertexId> {
        set.into_iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|&u| set.range(u + 1..).all(|&v| self.has_edge(u, v)))
    }

    /// The subgraph induced by `set`, with its own (re-sorted) indices.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<SimpleGraph> {
        if let Some(&bad) = set.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        // Index order equals label order, so the relative order is preserved.
        let old: Vec<usize> = set.iter().copied().collect();
        let pos: BTreeMap<usize, usize> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|w| pos.get(w).copied())
                    .collect()
            })
            .collect();
        Ok(SimpleGraph {
            labels: self.labels_of(&old),
            adj,
        })
    }

    /// Connected components of the graph with `removed` deleted, as sets of
    /// host indices ordered by smallest member.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Shortest path from `from` to `to` using only vertices allowed by `ok`.
    /// The endpoints are always allowed.
    pub fn shortest_path(
        &self,
        from: usize,
        to: usize,
        ok: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.vertex_count()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX && (w == to || ok(w)) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// The graph with one new pendant vertex `v+` attached to every vertex `v`.
    /// Pendant labels get extra `+` characters if `v+` is already taken.
    pub fn with_pendants(&self) -> SimpleGraph {
        let mut taken: BTreeSet<VertexId> = self.labels.iter().cloned().collect();
        let mut edges: Vec<(VertexId, VertexId)> = self
            .edges()
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect();
        for l in &self.labels {
            let mut name = format!("{l}+");
            while taken.contains(name.as_str()) {
                name.push('+');
            }
            let id = VertexId::new(name);
            taken.insert(id.clone());
            edges.push((l.clone(), id));
        }
        SimpleGraph::new(taken, edges).expect("pendant labels are fresh")
    }

    /// Canonical edge-list text: isolated vertices as `v <label>` lines, then
    /// edges, each sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (v, l) in self.labels.iter().enumerate() {
            if self.adj[v].is_empty() {
                out.push_str(&format!("v {l}\n"));
            }
        }
        for (u, v) in self.edges() {
            let (a, b) = (&self.labels[u], &self.labels[v]);
            // "v x" would read back as a vertex declaration.
            if a.as_str() == "v" {
                out.push_str(&format!("{b} {a}\n"));
            } else {
                out.push_str(&format!("{a} {b}\n"));
            }
        }
        out
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Non-fatal findings while parsing an edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseWarning {
    DuplicateEdge { line: usize, a: String, b: String },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::DuplicateEdge { line, a, b } => {
                write!(f, "line {line}: duplicate edge {a} {b} ignored")
            }
        }
    }
}

/// Parses the edge-list format: one `u v` pair per line, `v <label>` declares
/// an isolated vertex, `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<(SimpleGraph, Vec<ParseWarning>)> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["v", label] => vertices.push(VertexId::from(*label)),
            [a, b] => {
                if a == b {
                    return Err(Error::SelfLoop {
                        vertex: a.to_string(),
                        line: Some(line),
                    });
                }
                let key = if a < b { (*a, *b) } else { (*b, *a) };
                if !seen.insert(key) {
                    warnings.push(ParseWarning::DuplicateEdge {
                        line,
                        a: a.to_string(),
                        b: b.to_string(),
                    });
                    continue;
                }
                edges.push((VertexId::from(*a), VertexId::from(*b)));
            }
            _ => {
                return Err(Error::MalformedLine {
                    line,
                    text: raw.to_owned(),
                })
            }
        }
    }
    Ok((SimpleGraph::new(vertices, edges)?, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example_edges() {
        let (g, w) = parse_edge_list("a b\nb c\n").unwrap();
        assert!(w.is_empty());
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn parse_comments_isolated_and_duplicates() {
        let text = "# header\nv z\na b # trailing\n\nb a\n";
        let (g, w) = parse_edge_list(text).unwrap();
        assert_eq!(g.labels(), &["a".into(), "b".into(), "z".into()] as &[VertexId]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(w.len(), 1);
        assert!(w[0].to_string().contains("line 5"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_edge_list("a a\n").unwrap_err(),
            Error::SelfLoop {
                vertex: "a".into(),
                line: Some(1)
            }
        );
        assert!(matches!(
            parse_edge_list("a b\na b c\n").unwrap_err(),
            Error::MalformedLine { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("lonely\n").unwrap_err(),
            Error::MalformedLine { line: 1, .. }
        ));
    }

    #[test]
    fn canonical_round_trip_with_vertex_named_v() {
        let g = SimpleGraph::from_edges(&[("v", "w"), ("a", "v")]).unwrap();
        let g2 = SimpleGraph::new(
            g.labels().iter().cloned().chain([VertexId::from("q")]),
            g.edges().map(|(a, b)| (g.label(a).clone(), g.label(b).clone())),
        )
        .unwrap();
        let text = g2.to_edge_list();
        let (back, _) = parse_edge_list(&text).unwrap();
        assert_eq!(back, g2);
        assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn components_ordered_by_smallest_member() {
        let g = SimpleGraph::from_edges(&[("d", "a"), ("b", "c"), ("e", "c")]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![VertexSet::from([0, 3]), VertexSet::from([1, 2, 4])]);
        let without_c = g.components_avoiding(&VertexSet::from([2]));
        assert_eq!(without_c.len(), 3);
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = SimpleGraph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")]).unwrap();
        let h = g.induced_subgraph(&VertexSet::from([0, 2, 3])).unwrap();
        assert_eq!(h.labels_of(&[0, 1, 2]), vec!["a".into(), "c".into(), "d".into()] as Vec<VertexId>);
        assert_eq!(h.edge_count(), 2);
        assert!(g.induced_subgraph(&VertexSet::from([9])).is_err());
    }

    #[test]
    fn pendants_avoid_collisions() {
        let g = SimpleGraph::from_edges(&[("a", "a+")]).unwrap();
        let h = g.with_pendants();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 3);
        assert!(h.index_of("a++").is_some());
        assert!(h.index_of("a+++").is_some());
        for v in 0..g.vertex_count() {
            assert_eq!(h.degree(h.index_of(g.label(v).as_str()).unwrap()), g.degree(v) + 1);
        }
    }
}
