//! Parts of a clique separator and the relations between them.
//!
//! Removing a clique separator `Q` leaves components `V_1..V_s`. Each part
//! `G[V_i ∪ Q]` is summarized by its traces: the sets `K ∩ Q` for maximal
//! cliques `K` of the part with `K ∩ Q ≠ ∅` and `K ≠ Q`. Two parts are
//! attached when some traces meet. Attached parts are either in dominance
//! (one part's traces nest under or avoid each trace of the other) or
//! antipodal.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::chordal::maximal_cliques;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId, VertexSet};

pub type PartId = usize;

/// A set of traces, each a non-empty subset of the separator.
pub type Traces = BTreeSet<VertexSet>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub id: PartId,
    /// Parts of the unquotiented profile merged into this one.
    pub members: Vec<PartId>,
    pub component: VertexSet,
    pub traces: Traces,
}

pub fn traces_attached(a: &Traces, b: &Traces) -> bool {
    a.iter().any(|t| b.iter().any(|u| !t.is_disjoint(u)))
}

/// `lower ≤ upper` on trace sets, without the reflexive case: attached, and
/// every trace of `upper` contains all traces of `lower` or meets none.
pub fn traces_dominated(lower: &Traces, upper: &Traces) -> bool {
    traces_attached(lower, upper)
        && upper.iter().all(|u| {
            lower.iter().all(|t| t.is_subset(u)) || lower.iter().all(|t| t.is_disjoint(u))
        })
}

/// Some pair of traces meets without either containing the other.
pub fn traces_cross(a: &Traces, b: &Traces) -> bool {
    a.iter().any(|t| {
        b.iter()
            .any(|u| !t.is_disjoint(u) && !t.is_subset(u) && !u.is_subset(t))
    })
}

/// Reflexive dominance `p ≤ p2`.
pub fn dominance_holds(p: &Part, p2: &Part) -> bool {
    p.id == p2.id || traces_dominated(&p.traces, &p2.traces)
}

/// Attached parts in which neither dominates the other. Crossing traces
/// always give antipodality; the converse fails for parts with several traces.
pub fn antipodality_holds(p: &Part, p2: &Part) -> bool {
    p.id != p2.id
        && traces_attached(&p.traces, &p2.traces)
        && !traces_dominated(&p.traces, &p2.traces)
        && !traces_dominated(&p2.traces, &p.traces)
}

/// Relations on parts `0..n` without any graph behind them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractProfile {
    n: usize,
    leq: Vec<Vec<bool>>,
    antipodal: Vec<Vec<bool>>,
    neighboring: Vec<(VertexId, BTreeSet<PartId>)>,
}

impl AbstractProfile {
    /// Builds a profile from antipodal edges and dominance pairs `(lower, upper)`.
    /// Dominance is closed reflexively and transitively.
    pub fn new(
        n: usize,
        antipodal: impl IntoIterator<Item = (PartId, PartId)>,
        dominance: impl IntoIterator<Item = (PartId, PartId)>,
        neighboring: Vec<(VertexId, BTreeSet<PartId>)>,
    ) -> Result<Self> {
        let check = |a: usize, b: usize| {
            if a >= n || b >= n {
                Err(Error::InvalidProfile(format!("part index out of range in ({a}, {b})")))
            } else {
                Ok(())
            }
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in dominance {
            check(a, b)?;
            leq[a][b] = true;
        }
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut anti = vec![vec![false; n]; n];
        for (a, b) in antipodal {
            check(a, b)?;
            if a == b {
                return Err(Error::InvalidProfile(format!("part {a} antipodal to itself")));
            }
            if leq[a][b] || leq[b][a] {
                return Err(Error::InvalidProfile(format!(
                    "parts {a} and {b} are both antipodal and in dominance"
                )));
            }
            anti[a][b] = true;
            anti[b][a] = true;
        }
        for (_, set) in &neighboring {
            if let Some(&bad) = set.iter().find(|&&p| p >= n) {
                return Err(Error::InvalidProfile(format!("neighboring part {bad} out of range")));
            }
        }
        Ok(AbstractProfile {
            n,
            leq,
            antipodal: anti,
            neighboring,
        })
    }

    /// Takes the relation matrices as given, without closing or checking them.
    pub(crate) fn from_matrices(
        leq: Vec<Vec<bool>>,
        antipodal: Vec<Vec<bool>>,
        neighboring: Vec<(VertexId, BTreeSet<PartId>)>,
    ) -> Self {
        AbstractProfile {
            n: leq.len(),
            leq,
            antipodal,
            neighboring,
        }
    }

    pub fn part_count(&self) -> usize {
        self.n
    }

    /// `a ≤ b`.
    pub fn leq(&self, a: PartId, b: PartId) -> bool {
        self.leq[a][b]
    }

    pub fn antipodal(&self, a: PartId, b: PartId) -> bool {
        self.antipodal[a][b]
    }

    pub fn attached(&self, a: PartId, b: PartId) -> bool {
        a != b && (self.antipodal[a][b] || self.leq[a][b] || self.leq[b][a])
    }

    pub fn antipodal_neighbors(&self, a: PartId) -> impl Iterator<Item = PartId> + '_ {
        (0..self.n).filter(move |&b| self.antipodal[a][b])
    }

    pub fn antipodal_edges(&self) -> BTreeSet<(PartId, PartId)> {
        (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.antipodal[a][b])
            .collect()
    }

    /// Strict dominance pairs `(lower, upper)`.
    pub fn dominance_pairs(&self) -> BTreeSet<(PartId, PartId)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq[a][b])
            .collect()
    }

    /// Parts sharing each separator vertex, in separator order.
    pub fn neighboring(&self) -> &[(VertexId, BTreeSet<PartId>)] {
        &self.neighboring
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| !self.leq[i][j] || (0..self.n).all(|k| !self.leq[j][k] || self.leq[i][k]))
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
    }

    /// Classes of mutual dominance, each sorted, ordered by smallest member.
    pub fn equivalence_classes(&self) -> Vec<Vec<PartId>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<PartId>> = Vec::new();
        for i in 0..self.n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c: Vec<PartId> = (i..self.n)
                .filter(|&j| self.leq[i][j] && self.leq[j][i])
                .collect();
            for &j in &c {
                class_of[j] = classes.len();
            }
            classes.push(c);
        }
        classes
    }

    /// Merges mutually dominating parts. Returns the quotient and the classes.
    pub fn quotient(&self) -> (AbstractProfile, Vec<Vec<PartId>>) {
        let classes = self.equivalence_classes();
        let mut class_of = vec![0; self.n];
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = c;
            }
        }
        let k = classes.len();
        let mut leq = vec![vec![false; k]; k];
        let mut anti = vec![vec![false; k]; k];
        for i in 0..self.n {
            for j in 0..self.n {
                let (a, b) = (class_of[i], class_of[j]);
                leq[a][b] |= self.leq[i][j];
                anti[a][b] |= self.antipodal[i][j];
            }
        }
        let neighboring = self
            .neighboring
            .iter()
            .map(|(v, s)| (v.clone(), s.iter().map(|&p| class_of[p]).collect()))
            .collect();
        (
            AbstractProfile {
                n: k,
                leq,
                antipodal: anti,
                neighboring,
            },
            classes,
        )
    }
}

/// The parts of one clique separator with their relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationProfile {
    pub separator: VertexSet,
    pub separator_labels: Vec<VertexId>,
    pub parts: Vec<Part>,
    pub relations: AbstractProfile,
    /// Vertex labels of the host graph, for display.
    labels: Vec<VertexId>,
}

impl SeparationProfile {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn label(&self, v: usize) -> &VertexId {
        &self.labels[v]
    }

    fn from_parts(labels: Vec<VertexId>, separator: VertexSet, parts: Vec<Part>) -> Self {
        let n = parts.len();
        let mut leq = vec![vec![false; n]; n];
        let mut anti = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                leq[a][b] = dominance_holds(&parts[a], &parts[b]);
                anti[a][b] = antipodality_holds(&parts[a], &parts[b]);
            }
        }
        let neighboring = separator
            .iter()
            .map(|&v| {
                let ps = parts
                    .iter()
                    .filter(|p| p.traces.iter().any(|t| t.contains(&v)))
                    .map(|p| p.id)
                    .collect();
                (labels[v].clone(), ps)
            })
            .collect();
        let separator_labels = separator.iter().map(|&v| labels[v].clone()).collect();
        SeparationProfile {
            separator,
            separator_labels,
            parts,
            relations: AbstractProfile {
                n,
                leq,
                antipodal: anti,
                neighboring,
            },
            labels,
        }
    }

    pub fn trace_labels(&self, t: &VertexSet) -> String {
        t.iter().map(|&v| self.labels[v].as_str()).collect::<Vec<_>>().join(",")
    }

    pub fn describe_part(&self, p: PartId) -> String {
        let traces: Vec<String> = self.parts[p]
            .traces
            .iter()
            .map(|t| format!("{{{}}}", self.trace_labels(t)))
            .collect();
        let comp: Vec<&str> = self.parts[p]
            .component
            .iter()
            .map(|&v| self.labels[v].as_str())
            .collect();
        format!("part {} [{}] traces {}", p, comp.join(" "), traces.join(" "))
    }

    /// DOT rendering: antipodal edges solid and undirected, dominance edges
    /// dotted with the arrow pointing from the dominated part to its dominator.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph attachedness {\n");
        for p in &self.parts {
            let traces: Vec<String> = p
                .traces
                .iter()
                .map(|t| format!("{{{}}}", self.trace_labels(t)))
                .collect();
            out.push_str(&format!("  p{} [label=\"{}: {}\"];\n", p.id, p.id, traces.join(" ")));
        }
        for (a, b) in self.relations.antipodal_edges() {
            out.push_str(&format!("  p{a} -> p{b} [dir=none];\n"));
        }
        for (a, b) in self.relations.dominance_pairs() {
            out.push_str(&format!("  p{a} -> p{b} [style=dotted];\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct PartJson {
            id: PartId,
            component: Vec<String>,
            traces: Vec<Vec<String>>,
        }
        #[derive(Serialize)]
        struct ProfileJson {
            separator: Vec<String>,
            parts: Vec<PartJson>,
            antipodal: Vec<(PartId, PartId)>,
            dominance: Vec<(PartId, PartId)>,
        }
        let name = |s: &VertexSet| s.iter().map(|&v| self.labels[v].to_string()).collect();
        let j = ProfileJson {
            separator: name(&self.separator),
            parts: self
                .parts
                .iter()
                .map(|p| PartJson {
                    id: p.id,
                    component: name(&p.component),
                    traces: p.traces.iter().map(name).collect(),
                })
                .collect(),
            antipodal: self.relations.antipodal_edges().into_iter().collect(),
            dominance: self.relations.dominance_pairs().into_iter().collect(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }
}

/// Builds the profile of the clique separator `q`. Only the connected
/// component of `g` containing `q` is considered.
pub fn build_profile(g: &SimpleGraph, q: &VertexSet) -> Result<SeparationProfile> {
    if let Some(&bad) = q.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{bad}")));
    }
    if q.is_empty() || !g.is_clique(q) {
        return Err(Error::NotAClique);
    }
    let first = *q.iter().next().expect("non-empty");
    let home = g
        .connected_components()
        .into_iter()
        .find(|c| c.contains(&first))
        .expect("every vertex lies in a component");
    let mut removed: VertexSet = (0..g.vertex_count()).filter(|v| !home.contains(v)).collect();
    removed.extend(q.iter().copied());
    let comps = g.components_avoiding(&removed);
    if comps.len() < 2 {
        return Err(Error::NotSeparating);
    }
    let mut parts = Vec::with_capacity(comps.len());
    for (id, comp) in comps.into_iter().enumerate() {
        let mut vs = comp.clone();
        vs.extend(q.iter().copied());
        let sub = g.induced_subgraph(&vs)?;
        let host: Vec<usize> = vs.iter().copied().collect();
        let cliques = maximal_cliques(&sub)?;
        let traces = cliques
            .cliques
            .iter()
            .map(|k| k.iter().map(|&i| host[i]).collect::<VertexSet>())
            .filter(|k| k != q)
            .map(|k| k.intersection(q).copied().collect::<VertexSet>())
            .filter(|t| !t.is_empty())
            .collect();
        parts.push(Part {
            id,
            members: vec![id],
            component: comp,
            traces,
        });
    }
    Ok(SeparationProfile::from_parts(
        g.labels().to_vec(),
        q.clone(),
        parts,
    ))
}

/// Merges mutually dominating parts and re-derives the relations from the
/// merged traces.
pub fn quotient_profile(p: &SeparationProfile) -> SeparationProfile {
    let classes = p.relations.equivalence_classes();
    let parts = classes
        .iter()
        .enumerate()
        .map(|(id, class)| {
            let mut members = Vec::new();
            let mut component = VertexSet::new();
            let mut traces = Traces::new();
            for &c in class {
                members.extend(p.parts[c].members.iter().copied());
                component.extend(p.parts[c].component.iter().copied());
                traces.extend(p.parts[c].traces.iter().cloned());
            }
            members.sort_unstable();
            Part {
                id,
                members,
                component,
                traces,
            }
        })
        .collect();
    SeparationProfile::from_parts(p.labels.clone(), p.separator.clone(), parts)
}

/// Neighboring map keyed by label, for lookups in tests and reports.
pub fn neighboring_map(p: &AbstractProfile) -> BTreeMap<VertexId, BTreeSet<PartId>> {
    p.neighboring().iter().cloned().collect()
}
