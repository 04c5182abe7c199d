//! Path-graph recognition: a chordal graph is a path graph exactly when every
//! clique separator's profile has no full antipodal triple and admits a weak
//! coloring.

use serde_json::json;

use crate::certificate::{extract_certificate, ForbiddenWitness, WitnessKind};
use crate::chordal::{clique_separators, is_chordal, CliqueTree, Chordality};
use crate::coloring::{
    d_partition, find_full_antipodal_triple, partial_coloring, upper_bounds, weak_coloring,
    DPartition, WeakColoring,
};
use crate::graph::{SimpleGraph, VertexId};
use crate::oracle::find_clique_path_tree;
use crate::separation::{build_profile, quotient_profile, SeparationProfile};

/// Largest clique count for which a path graph verdict also carries a clique
/// path tree found by exhaustive search.
pub const DEFAULT_TREE_CLIQUE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecognizeOptions {
    /// Attach a clique path tree to positive verdicts when the graph has at
    /// most this many maximal cliques. Zero disables the search.
    pub tree_clique_cap: usize,
}

impl Default for RecognizeOptions {
    fn default() -> Self {
        RecognizeOptions {
            tree_clique_cap: DEFAULT_TREE_CLIQUE_CAP,
        }
    }
}

/// The quotiented profile of one separator with its weak coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorEvidence {
    pub profile: SeparationProfile,
    pub partition: DPartition,
    pub coloring: WeakColoring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub profile: SeparationProfile,
    pub witness: ForbiddenWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    NotChordal,
    PathGraph,
    NotPathGraph,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::NotChordal => "not_chordal",
            VerdictKind::PathGraph => "path_graph",
            VerdictKind::NotPathGraph => "not_path_graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotChordal {
        hole: Vec<VertexId>,
    },
    PathGraph {
        separators: Vec<SeparatorEvidence>,
        tree: Option<CliqueTree>,
    },
    NotPathGraph(Box<Obstruction>),
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::NotChordal { .. } => VerdictKind::NotChordal,
            Verdict::PathGraph { .. } => VerdictKind::PathGraph,
            Verdict::NotPathGraph(_) => VerdictKind::NotPathGraph,
        }
    }

    pub fn to_json(&self, g: &SimpleGraph) -> serde_json::Value {
        match self {
            Verdict::NotChordal { hole } => json!({
                "verdict": self.kind().as_str(),
                "hole": hole,
            }),
            Verdict::PathGraph { separators, tree } => json!({
                "verdict": self.kind().as_str(),
                "separators": separators
                    .iter()
                    .map(|s| json!({
                        "separator": s.profile.separator_labels,
                        "coloring": s.coloring.colors,
                    }))
                    .collect::<Vec<_>>(),
                "clique_path_tree": tree.as_ref().map(|t| t.to_json(g)),
            }),
            Verdict::NotPathGraph(ob) => json!({
                "verdict": self.kind().as_str(),
                "separator": ob.witness.separator,
                "certificate": ob.witness.to_json(),
            }),
        }
    }

    /// Human-readable report.
    pub fn report(&self, g: &SimpleGraph) -> String {
        match self {
            Verdict::NotChordal { hole } => {
                let h: Vec<&str> = hole.iter().map(VertexId::as_str).collect();
                format!("not chordal: chordless cycle {}\n", h.join(" "))
            }
            Verdict::PathGraph { separators, tree } => {
                let mut out = format!("path graph ({} clique separators)\n", separators.len());
                for s in separators {
                    let sep: Vec<&str> = s.profile.separator_labels.iter().map(VertexId::as_str).collect();
                    let cols: Vec<String> = s.coloring.colors.iter().map(|c| c.to_string()).collect();
                    out.push_str(&format!(
                        "  separator {{{}}}: {} parts, colors {}\n",
                        sep.join(","),
                        s.profile.part_count(),
                        cols.join(" ")
                    ));
                }
                if let Some(t) = tree {
                    out.push_str("clique path tree:\n");
                    for (a, b) in &t.edges {
                        let name = |i: usize| {
                            t.cliques[i].iter().map(|&v| g.label(v).as_str()).collect::<Vec<_>>().join("")
                        };
                        out.push_str(&format!("  {} - {}\n", name(*a), name(*b)));
                    }
                }
                out
            }
            Verdict::NotPathGraph(ob) => {
                format!("not a path graph\n{}", ob.witness.summary(&ob.profile))
            }
        }
    }
}

/// Runs the separator checks on an already built (unquotiented) profile.
pub fn check_separator(raw: &SeparationProfile) -> Result<SeparatorEvidence, Box<Obstruction>> {
    let profile = quotient_profile(raw);
    let p = &profile.relations;
    if let Some(t) = find_full_antipodal_triple(p) {
        let witness = ForbiddenWitness {
            separator: profile.separator_labels.clone(),
            kind: WitnessKind::FullAntipodalTriple(t),
        };
        return Err(Box::new(Obstruction { profile, witness }));
    }
    let dp = d_partition(p, &upper_bounds(p))
        .expect("without a full antipodal triple no part lies below three upper bounds");
    let conflict = match partial_coloring(p, &dp) {
        Ok(pc) => match weak_coloring(p, &dp, &pc) {
            Ok(coloring) => {
                return Ok(SeparatorEvidence {
                    profile,
                    partition: dp,
                    coloring,
                })
            }
            Err(c) => c,
        },
        Err(c) => c,
    };
    let witness = extract_certificate(&profile, &dp, &conflict)
        .unwrap_or_else(|e| panic!("coloring conflict {conflict} without certificate: {e}"));
    Err(Box::new(Obstruction { profile, witness }))
}

pub fn recognize(g: &SimpleGraph) -> Verdict {
    recognize_with(g, RecognizeOptions::default())
}

pub fn recognize_with(g: &SimpleGraph, opts: RecognizeOptions) -> Verdict {
    if let Chordality::Hole(h) = is_chordal(g) {
        return Verdict::NotChordal {
            hole: g.labels_of(&h),
        };
    }
    let seps = clique_separators(g).expect("graph is chordal");
    let mut separators = Vec::with_capacity(seps.len());
    for q in &seps {
        let raw = build_profile(g, q).expect("maximal clique separators are valid");
        match check_separator(&raw) {
            Ok(ev) => separators.push(ev),
            Err(ob) => return Verdict::NotPathGraph(ob),
        }
    }
    let tree = if opts.tree_clique_cap > 0 {
        find_clique_path_tree(g, opts.tree_clique_cap).ok().flatten()
    } else {
        None
    };
    Verdict::PathGraph { separators, tree }
}

/// Verdict kind without building a clique path tree.
pub fn classify(g: &SimpleGraph) -> VerdictKind {
    recognize_with(g, RecognizeOptions { tree_clique_cap: 0 }).kind()
}

/// The graph with one pendant neighbor per vertex.
pub fn g_plus(g: &SimpleGraph) -> SimpleGraph {
    g.with_pendants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::coloring::validate_weak_coloring;
    use crate::chordal::verify_clique_path_tree;

    fn worked_example() -> SimpleGraph {
        SimpleGraph::from_edges(&[
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
        .unwrap()
    }

    fn triple_fan() -> SimpleGraph {
        SimpleGraph::from_edges(&[
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
        .unwrap()
    }

    #[test]
    fn worked_example_is_path_graph() {
        let g = worked_example();
        match recognize(&g) {
            Verdict::PathGraph { separators, tree } => {
                assert_eq!(separators.len(), 2);
                for s in &separators {
                    validate_weak_coloring(&s.profile.relations, &s.partition, &s.coloring).unwrap();
                }
                assert!(verify_clique_path_tree(&g, &tree.unwrap()).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let gp = g_plus(&g);
        assert_eq!((gp.vertex_count(), gp.edge_count()), (16, 21));
        assert_eq!(classify(&gp), VerdictKind::PathGraph);
    }

    #[test]
    fn triple_fan_certificate() {
        let g = triple_fan();
        match recognize(&g) {
            Verdict::NotPathGraph(ob) => {
                assert!(verify_certificate(&ob.profile, &ob.witness));
                match &ob.witness.kind {
                    WitnessKind::FullAntipodalTriple(t) => {
                        assert_eq!(t.witness_vertex, VertexId::from("x"))
                    }
                    other => panic!("{other:?}"),
                }
                let j = Verdict::NotPathGraph(ob.clone()).to_json(&g);
                assert_eq!(j["certificate"]["kind"], "full_antipodal_triple");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cycle_is_not_chordal() {
        let c4 = SimpleGraph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert_eq!(classify(&c4), VerdictKind::NotChordal);
        let k1 = SimpleGraph::new([VertexId::from("a")], []).unwrap();
        assert_eq!(g_plus(&k1).edge_count(), 1);
        assert_eq!(classify(&k1), VerdictKind::PathGraph);
    }

    #[test]
    fn nested_trace_regression() {
        // Two separators whose parts only nest; a full triple appears at 4.
        let g = SimpleGraph::from_edges(&[
            ("0", "4"),
            ("0", "5"),
            ("0", "7"),
            ("0", "8"),
            ("1", "2"),
            ("1", "4"),
            ("1", "5"),
            ("1", "7"),
            ("2", "4"),
            ("4", "5"),
            ("4", "6"),
            ("4", "7"),
            ("4", "8"),
            ("5", "7"),
            ("6", "7"),
        ])
        .unwrap();
        assert!(!crate::oracle::oracle_decides_path(&g, 9).unwrap());
        match recognize(&g) {
            Verdict::NotPathGraph(ob) => assert!(verify_certificate(&ob.profile, &ob.witness)),
            other => panic!("{other:?}"),
        }
    }
}
