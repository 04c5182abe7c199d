//! Two-edge-colored graphs, the forbidden template families and colored
//! subgraph search.
//!
//! Vertex numbering of the templates:
//!
//! * `W0(k)`, `W1(k)`: rim `0..=2k` is an antipodal cycle, the hub is `2k+1`
//!   with dominance spokes. In `W1` the spoke to rim vertex `0` is antipodal.
//! * `F(n)`: antipodal path `0..2n`, hub `2n` antipodal to both path ends and
//!   dominance to the interior.
//! * `FTilde(n)`: as `F(n)` with the closing antipodal edge `(2n-1, 0)`.
//! * `DF(n)`: antipodal path `0..=2n-2`; hub `2n-1` is antipodal to the last
//!   path vertex, hub `2n` to the first, each hub dominates the other path
//!   vertices, and the hubs are antipodal to each other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::separation::AbstractProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeColor {
    Antipodal,
    Dominance,
}

impl EdgeColor {
    pub fn flipped(self) -> Self {
        match self {
            EdgeColor::Antipodal => EdgeColor::Dominance,
            EdgeColor::Dominance => EdgeColor::Antipodal,
        }
    }
}

/// Simple graph with every edge colored antipodal or dominance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<Option<EdgeColor>>>,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph {
            adj: vec![vec![None; n]; n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn set_edge(&mut self, a: usize, b: usize, c: EdgeColor) {
        assert_ne!(a, b, "colored graphs have no loops");
        self.adj[a][b] = Some(c);
        self.adj[b][a] = Some(c);
    }

    pub fn color(&self, a: usize, b: usize) -> Option<EdgeColor> {
        self.adj[a][b]
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(move |&b| self.adj[a][b].is_some())
    }

    pub fn degree(&self, a: usize) -> usize {
        self.neighbors(a).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize, EdgeColor)> {
        let n = self.adj.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter_map(|(a, b)| self.adj[a][b].map(|c| (a, b, c)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Attachedness graph of a profile: antipodal and dominance edges.
    pub fn from_profile(p: &AbstractProfile) -> Self {
        let mut g = ColoredGraph::new(p.part_count());
        for (a, b) in p.antipodal_edges() {
            g.set_edge(a, b, EdgeColor::Antipodal);
        }
        for (a, b) in p.dominance_pairs() {
            g.set_edge(a, b, EdgeColor::Dominance);
        }
        g
    }

    /// Reads the graph as a profile: antipodal edges as given, dominance edges
    /// oriented toward the larger vertex, and every triangle containing a
    /// dominance edge sharing one separator vertex.
    pub fn full_profile(&self) -> AbstractProfile {
        let g = self;
        let n = g.vertex_count();
        let mut leq = vec![vec![false; n]; n];
        let mut anti = vec![vec![false; n]; n];
        for (v, row) in leq.iter_mut().enumerate() {
            row[v] = true;
        }
        for (a, b, c) in g.edges() {
            match c {
                EdgeColor::Antipodal => {
                    anti[a][b] = true;
                    anti[b][a] = true;
                }
                EdgeColor::Dominance => leq[a][b] = true,
            }
        }
        let mut neighboring = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let cols = [g.color(a, b), g.color(a, c), g.color(b, c)];
                    if cols.iter().all(Option::is_some)
                        && cols.contains(&Some(EdgeColor::Dominance))
                    {
                        neighboring.push((
                            VertexId::new(format!("t{a}_{b}_{c}")),
                            BTreeSet::from([a, b, c]),
                        ));
                    }
                }
            }
        }
        AbstractProfile::from_matrices(leq, anti, neighboring)
    }

    /// Copy with vertex `v` removed and later vertices shifted down.
    pub fn without_vertex(&self, v: usize) -> ColoredGraph {
        let mut out = ColoredGraph::new(self.vertex_count() - 1);
        let shift = |x: usize| if x > v { x - 1 } else { x };
        for (a, b, c) in self.edges() {
            if a != v && b != v {
                out.set_edge(shift(a), shift(b), c);
            }
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.vertex_count() {
            out.push_str(&format!("  {v};\n"));
        }
        for (a, b, c) in self.edges() {
            let style = match c {
                EdgeColor::Antipodal => "solid",
                EdgeColor::Dominance => "dotted",
            };
            out.push_str(&format!("  {a} -- {b} [style={style}];\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    W0,
    W1,
    F,
    FTilde,
    DF,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::W0, Family::W1, Family::F, Family::FTilde, Family::DF];
    /// Families whose members are checked as plain subgraphs.
    pub const BASIC: [Family; 3] = [Family::W0, Family::W1, Family::F];

    pub fn name(self) -> &'static str {
        match self {
            Family::W0 => "W0",
            Family::W1 => "W1",
            Family::F => "F",
            Family::FTilde => "Ftilde",
            Family::DF => "DF",
        }
    }

    pub fn min_param(self) -> usize {
        match self {
            Family::W0 | Family::W1 => 1,
            Family::F | Family::FTilde | Family::DF => 2,
        }
    }

    /// Vertex count of the member with the given parameter.
    pub fn order(self, param: usize) -> usize {
        match self {
            Family::W0 | Family::W1 => 2 * param + 2,
            Family::F | Family::FTilde | Family::DF => 2 * param + 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub family: Family,
    pub param: usize,
    pub graph: ColoredGraph,
}

impl Template {
    /// Display name with the odd order used for the family, e.g. `W1_5`.
    pub fn name(&self) -> String {
        format!("{}_{}", self.family, 2 * self.param + 1)
    }

    /// The template as a profile, see [`ColoredGraph::full_profile`].
    pub fn as_profile(&self) -> AbstractProfile {
        self.graph.full_profile()
    }

    /// Copy with the color of the `index`-th edge (in `edges()` order) flipped.
    pub fn with_flipped_edge(&self, index: usize) -> Template {
        let (a, b, c) = self.graph.edges()[index];
        let mut graph = self.graph.clone();
        graph.set_edge(a, b, c.flipped());
        Template {
            family: self.family,
            param: self.param,
            graph,
        }
    }
}

pub fn make_template(family: Family, param: usize) -> Result<Template> {
    if param < family.min_param() {
        return Err(Error::TemplateParameter {
            family: family.name(),
            param,
            min: family.min_param(),
        });
    }
    use EdgeColor::{Antipodal as A, Dominance as D};
    let mut g = ColoredGraph::new(family.order(param));
    match family {
        Family::W0 | Family::W1 => {
            let rim = 2 * param + 1;
            let hub = rim;
            for r in 0..rim {
                g.set_edge(r, (r + 1) % rim, A);
                g.set_edge(r, hub, D);
            }
            if family == Family::W1 {
                g.set_edge(0, hub, A);
            }
        }
        Family::F | Family::FTilde => {
            let len = 2 * param;
            let hub = len;
            for x in 0..len - 1 {
                g.set_edge(x, x + 1, A);
            }
            for x in 0..len {
                let end = x == 0 || x == len - 1;
                g.set_edge(x, hub, if end { A } else { D });
            }
            if family == Family::FTilde {
                g.set_edge(len - 1, 0, A);
            }
        }
        Family::DF => {
            let last = 2 * param - 2;
            let (h1, h2) = (last + 1, last + 2);
            for x in 0..last {
                g.set_edge(x, x + 1, A);
            }
            for x in 0..=last {
                g.set_edge(x, h1, if x == last { A } else { D });
                g.set_edge(x, h2, if x == 0 { A } else { D });
            }
            g.set_edge(h1, h2, A);
        }
    }
    Ok(Template {
        family,
        param,
        graph: g,
    })
}

/// All members of `families` with at most `max_vertices` vertices, ordered by
/// family then parameter.
pub fn catalog(families: &[Family], max_vertices: usize) -> Vec<Template> {
    let mut out = Vec::new();
    for &f in families {
        let mut p = f.min_param();
        while f.order(p) <= max_vertices {
            out.push(make_template(f, p).expect("parameter in range"));
            p += 1;
        }
    }
    out
}

/// Occurrence of a template in a host graph: `map[t]` is the host vertex of
/// template vertex `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub family: Family,
    pub param: usize,
    pub map: Vec<usize>,
}

/// Checks that `map` sends every template edge to a host edge of the same
/// color, and with `induced` every template non-edge to a host non-edge.
pub fn is_embedding(host: &ColoredGraph, t: &ColoredGraph, map: &[usize], induced: bool) -> bool {
    let n = t.vertex_count();
    if map.len() != n || map.iter().any(|&h| h >= host.vertex_count()) {
        return false;
    }
    if map.iter().collect::<BTreeSet<_>>().len() != n {
        return false;
    }
    (0..n).all(|a| {
        (a + 1..n).all(|b| match t.color(a, b) {
            Some(c) => host.color(map[a], map[b]) == Some(c),
            None => !induced || host.color(map[a], map[b]).is_none(),
        })
    })
}

/// Template vertex order for the search: each vertex after the first has an
/// earlier neighbor, preferring vertices with many earlier neighbors.
fn search_order(t: &ColoredGraph) -> Vec<usize> {
    let n = t.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| t.color(u, v).is_some()).count();
                (back, t.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    order
}

pub const FORBIDDEN_SEARCH_CAP: usize = 12;

/// Finds the first embedding of `t` in `host`, trying host vertices in order.
pub fn find_embedding(host: &ColoredGraph, t: &ColoredGraph, induced: bool) -> Option<Vec<usize>> {
    let n = t.vertex_count();
    if n > host.vertex_count() {
        return None;
    }
    let order = search_order(t);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; host.vertex_count()];
    fn go(
        k: usize,
        order: &[usize],
        host: &ColoredGraph,
        t: &ColoredGraph,
        induced: bool,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let anchor = order[..k].iter().copied().find(|&u| t.color(u, v).is_some());
        let candidates: Vec<usize> = match anchor {
            Some(u) => host.neighbors(map[u]).collect(),
            None => (0..host.vertex_count()).collect(),
        };
        for h in candidates {
            if used[h] {
                continue;
            }
            let fits = order[..k].iter().all(|&u| match t.color(u, v) {
                Some(c) => host.color(map[u], h) == Some(c),
                None => !induced || host.color(map[u], h).is_none(),
            });
            if !fits {
                continue;
            }
            map[v] = h;
            used[h] = true;
            if go(k + 1, order, host, t, induced, map, used) {
                return true;
            }
            used[h] = false;
        }
        map[v] = usize::MAX;
        false
    }
    go(0, &order, host, t, induced, &mut map, &mut used).then_some(map)
}

/// First template of `templates` occurring in `host`.
pub fn find_forbidden(
    host: &ColoredGraph,
    templates: &[Template],
    induced: bool,
) -> Result<Option<Embedding>> {
    if host.vertex_count() > FORBIDDEN_SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "colored search vertices",
            actual: host.vertex_count(),
            cap: FORBIDDEN_SEARCH_CAP,
        });
    }
    Ok(templates.iter().find_map(|t| {
        find_embedding(host, &t.graph, induced).map(|map| Embedding {
            family: t.family,
            param: t.param,
            map,
        })
    }))
}

pub fn colored_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && find_embedding(a, b, true).is_some()
}

/// Template members grouped by vertex count, for reporting.
pub fn catalog_sizes(templates: &[Template]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for t in templates {
        *out.entry(t.graph.vertex_count()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::strong_coloring_search;

    fn count(t: &Template, c: EdgeColor) -> usize {
        t.graph.edges().iter().filter(|e| e.2 == c).count()
    }

    #[test]
    fn shapes() {
        let w = make_template(Family::W0, 1).unwrap();
        assert_eq!(w.graph.vertex_count(), 4);
        assert_eq!(count(&w, EdgeColor::Antipodal), 3);
        assert_eq!(count(&w, EdgeColor::Dominance), 3);

        let f = make_template(Family::F, 2).unwrap();
        assert_eq!(f.graph.vertex_count(), 5);
        assert_eq!(f.graph.edge_count(), 7);
        assert_eq!(count(&f, EdgeColor::Antipodal), 5);
        assert_eq!(f.graph.degree(4), 4);

        let df = make_template(Family::DF, 2).unwrap();
        assert_eq!(df.graph.vertex_count(), 5);
        assert_eq!(df.graph.edge_count(), 9);
        assert!(df.graph.color(0, 2).is_none());

        let ft = make_template(Family::FTilde, 3).unwrap();
        assert_eq!(ft.graph.color(5, 0), Some(EdgeColor::Antipodal));
        assert_eq!(ft.graph.edge_count(), 6 + 6);

        let w1 = make_template(Family::W1, 2).unwrap();
        assert_eq!(count(&w1, EdgeColor::Antipodal), 6);
        assert_eq!(w1.graph.color(0, 5), Some(EdgeColor::Antipodal));
    }

    #[test]
    fn parameter_range() {
        assert!(make_template(Family::W1, 0).is_err());
        assert!(make_template(Family::F, 1).is_err());
        assert!(make_template(Family::DF, 1).is_err());
        assert!(make_template(Family::FTilde, 2).is_ok());
    }

    #[test]
    fn templates_have_no_strong_coloring() {
        for t in catalog(&Family::ALL, 11) {
            let p = t.as_profile();
            assert_eq!(strong_coloring_search(&p, 12).unwrap(), None, "{}", t.name());
        }
    }

    #[test]
    fn catalog_is_pairwise_distinct() {
        let cat = catalog(&Family::ALL, 11);
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                assert!(!colored_isomorphic(&a.graph, &b.graph), "{} ~ {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn subgraph_versus_induced() {
        let f = make_template(Family::F, 2).unwrap();
        let ft = make_template(Family::FTilde, 2).unwrap();
        let df = make_template(Family::DF, 2).unwrap();
        assert!(find_embedding(&ft.graph, &f.graph, false).is_some());
        assert!(find_embedding(&ft.graph, &f.graph, true).is_none());
        let m = find_embedding(&df.graph, &f.graph, false).unwrap();
        assert!(is_embedding(&df.graph, &f.graph, &m, false));
        assert!(!is_embedding(&df.graph, &f.graph, &[], false));
        assert_eq!(find_forbidden(&f.graph, &[], false).unwrap(), None);
        assert!(find_forbidden(&ColoredGraph::new(13), &[], false).is_err());
    }
}
