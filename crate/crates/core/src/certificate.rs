//! Forbidden configurations explaining why a separator admits no weak
//! coloring, and their verification.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::coloring::{Block, ColoringConflict, DPartition, TripleWitness};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::separation::{AbstractProfile, PartId, SeparationProfile};
use crate::template::{is_embedding, make_template, ColoredGraph, Embedding, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    FullAntipodalTriple(TripleWitness),
    /// Template occurrence in the separator's attachedness graph. With
    /// `induced` false only template edges are required to be present.
    TemplateEmbedding { embedding: Embedding, induced: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenWitness {
    pub separator: Vec<VertexId>,
    pub kind: WitnessKind,
}

impl ForbiddenWitness {
    pub fn to_json(&self) -> serde_json::Value {
        match &self.kind {
            WitnessKind::FullAntipodalTriple(t) => json!({
                "kind": "full_antipodal_triple",
                "parts": t.parts,
                "witness_vertex": t.witness_vertex,
            }),
            WitnessKind::TemplateEmbedding { embedding, induced } => json!({
                "kind": "template",
                "family": embedding.family.name(),
                "param": embedding.param,
                "induced": induced,
                "embedding": embedding.map,
            }),
        }
    }

    /// Inverse of [`ForbiddenWitness::to_json`], given the separator labels.
    pub fn from_json(separator: Vec<VertexId>, v: &serde_json::Value) -> Option<Self> {
        let kind = match v.get("kind")?.as_str()? {
            "full_antipodal_triple" => {
                let parts: Vec<usize> = serde_json::from_value(v.get("parts")?.clone()).ok()?;
                WitnessKind::FullAntipodalTriple(TripleWitness {
                    parts: parts.try_into().ok()?,
                    witness_vertex: VertexId::new(v.get("witness_vertex")?.as_str()?),
                })
            }
            "template" => {
                let family = Family::ALL
                    .into_iter()
                    .find(|f| Some(f.name()) == v.get("family").and_then(|x| x.as_str()))?;
                WitnessKind::TemplateEmbedding {
                    embedding: Embedding {
                        family,
                        param: v.get("param")?.as_u64()? as usize,
                        map: serde_json::from_value(v.get("embedding")?.clone()).ok()?,
                    },
                    induced: v.get("induced")?.as_bool()?,
                }
            }
            _ => return None,
        };
        Some(ForbiddenWitness { separator, kind })
    }

    pub fn summary(&self, profile: &SeparationProfile) -> String {
        let sep: Vec<&str> = self.separator.iter().map(VertexId::as_str).collect();
        match &self.kind {
            WitnessKind::FullAntipodalTriple(t) => format!(
                "separator {{{}}}: parts {}, {} and {} are pairwise antipodal and all meet vertex {}\n{}\n{}\n{}\n",
                sep.join(","),
                t.parts[0],
                t.parts[1],
                t.parts[2],
                t.witness_vertex,
                profile.describe_part(t.parts[0]),
                profile.describe_part(t.parts[1]),
                profile.describe_part(t.parts[2]),
            ),
            WitnessKind::TemplateEmbedding { embedding, .. } => {
                let mut out = format!(
                    "separator {{{}}}: attachedness graph contains {}_{} on parts {:?}\n",
                    sep.join(","),
                    embedding.family,
                    2 * embedding.param + 1,
                    embedding.map
                );
                let distinct: BTreeSet<PartId> = embedding.map.iter().copied().collect();
                for p in distinct {
                    out.push_str(&profile.describe_part(p));
                    out.push('\n');
                }
                out
            }
        }
    }
}

pub fn verify_triple(p: &AbstractProfile, t: &TripleWitness) -> bool {
    let [a, b, c] = t.parts;
    let n = p.part_count();
    if a >= n || b >= n || c >= n {
        return false;
    }
    p.antipodal(a, b)
        && p.antipodal(a, c)
        && p.antipodal(b, c)
        && p.neighboring()
            .iter()
            .any(|(v, s)| *v == t.witness_vertex && s.contains(&a) && s.contains(&b) && s.contains(&c))
}

pub fn verify_embedding(p: &AbstractProfile, e: &Embedding, induced: bool) -> bool {
    match make_template(e.family, e.param) {
        Ok(t) => is_embedding(&ColoredGraph::from_profile(p), &t.graph, &e.map, induced),
        Err(_) => false,
    }
}

pub fn verify_certificate(profile: &SeparationProfile, w: &ForbiddenWitness) -> bool {
    if w.separator != profile.separator_labels {
        return false;
    }
    match &w.kind {
        WitnessKind::FullAntipodalTriple(t) => verify_triple(&profile.relations, t),
        WitnessKind::TemplateEmbedding { embedding, induced } => {
            verify_embedding(&profile.relations, embedding, *induced)
        }
    }
}

/// Parts outside the conflict's block that are antipodal to `theta` and to
/// `hub` and satisfy `allowed`.
fn attachers(
    p: &AbstractProfile,
    theta: PartId,
    hub: PartId,
    allowed: impl Fn(PartId) -> bool,
) -> BTreeSet<PartId> {
    p.antipodal_neighbors(theta)
        .filter(|&g| p.antipodal(g, hub) && allowed(g))
        .collect()
}

fn broken(what: &str) -> Error {
    Error::InvalidProfile(format!("no certificate for {what}"))
}

/// Builds a template occurrence in the attachedness graph from a coloring
/// conflict. The result is checked with subgraph semantics before returning.
pub fn extract_embedding(
    p: &AbstractProfile,
    dp: &DPartition,
    conflict: &ColoringConflict,
) -> Result<Embedding> {
    let u = |i: usize| dp.uppers.get(i);
    let (family, param, map) = match conflict {
        ColoringConflict::Partial {
            part,
            first,
            second,
            i,
            j,
        } => {
            if p.antipodal(*first, *second) {
                (Family::W1, 1, vec![*second, *part, *first, u(*i)])
            } else {
                (Family::DF, 2, vec![*first, *part, *second, u(*i), u(*j)])
            }
        }
        ColoringConflict::OddCycle { block, cycle } => {
            let i = match block {
                Block::Single(i) | Block::Pair(i, _) => *i,
            };
            let mut map = cycle.clone();
            map.push(u(i));
            (Family::W0, cycle.len() / 2, map)
        }
        ColoringConflict::EvenPath { block, path, color } => {
            let (hub, allowed): (PartId, Box<dyn Fn(PartId) -> bool>) = match *block {
                Block::Single(i) => (u(i), Box::new(move |g| dp.block_of[g] != Block::Single(i))),
                Block::Pair(i, j) => {
                    let other = if *color == i { j } else { i };
                    (u(*color), Box::new(move |g| dp.block_of[g] == Block::Single(other)))
                }
            };
            let first = path[0];
            let last = *path.last().expect("paths are non-empty");
            let a = attachers(p, first, hub, &allowed);
            let b = attachers(p, last, hub, &allowed);
            let k = path.len() / 2;
            if let Some(&g) = a.intersection(&b).next() {
                let mut map = vec![g];
                map.extend(path);
                map.push(hub);
                (Family::W1, k, map)
            } else {
                let g = *a.iter().next().ok_or_else(|| broken("even path start"))?;
                let g2 = *b.iter().next().ok_or_else(|| broken("even path end"))?;
                let mut map = vec![g];
                map.extend(path);
                map.push(g2);
                map.push(hub);
                let fam = if p.antipodal(g, g2) {
                    Family::FTilde
                } else {
                    Family::F
                };
                (fam, k + 1, map)
            }
        }
        ColoringConflict::OddPath {
            block,
            path,
            colors,
        } => {
            let Block::Pair(i, j) = *block else {
                return Err(broken("odd path outside a pair block"));
            };
            // Start from the end forced to j, whose outside neighbor is in D_i.
            let mut path = path.clone();
            if colors.0 == i {
                path.reverse();
            }
            let x0 = attachers(p, path[0], u(j), |g| dp.block_of[g] == Block::Single(i));
            let xl = attachers(p, *path.last().expect("non-empty"), u(i), |g| {
                dp.block_of[g] == Block::Single(j)
            });
            let x0 = *x0.iter().next().ok_or_else(|| broken("odd path start"))?;
            let xl = *xl.iter().next().ok_or_else(|| broken("odd path end"))?;
            let mut map = vec![x0];
            map.extend(&path);
            map.push(xl);
            map.push(u(i));
            map.push(u(j));
            (Family::DF, (path.len() + 3) / 2, map)
        }
        ColoringConflict::StrayNeighbor { .. } => return Err(broken("stray neighbor")),
    };
    let e = Embedding { family, param, map };
    if verify_embedding(p, &e, false) {
        Ok(e)
    } else {
        Err(Error::InvalidProfile(format!(
            "extracted {}_{} on {:?} does not embed",
            family,
            2 * param + 1,
            e.map
        )))
    }
}

pub fn extract_certificate(
    profile: &SeparationProfile,
    dp: &DPartition,
    conflict: &ColoringConflict,
) -> Result<ForbiddenWitness> {
    Ok(ForbiddenWitness {
        separator: profile.separator_labels.clone(),
        kind: WitnessKind::TemplateEmbedding {
            embedding: extract_embedding(&profile.relations, dp, conflict)?,
            induced: false,
        },
    })
}

/// Chord structure of an antipodal odd cycle `c_0..c_2k` (k ≥ 2) whose only
/// possible antipodal chord is `c_1 c_2k`: a dominance chord `c_0 c_j` with
/// `c_j ≤ c_0`, `j ∉ {1, 2k}`, forces `c_l ≤ c_0` for every `l ∉ {0, 1, 2k}`,
/// and with the antipodal chord present there are no further dominance
/// chords. Returns false when some rotation or reflection violates this.
pub fn chord_claim_holds(p: &AbstractProfile, cycle: &[PartId]) -> bool {
    let m = cycle.len();
    if m < 5 || m.is_multiple_of(2) {
        return true;
    }
    let ring = |s: usize, dir: bool| -> Vec<PartId> {
        (0..m)
            .map(|t| {
                let idx = if dir { s + t } else { s + m - t };
                cycle[idx % m]
            })
            .collect()
    };
    for s in 0..m {
        for dir in [true, false] {
            let c = ring(s, dir);
            if !(0..m).all(|t| p.antipodal(c[t], c[(t + 1) % m])) {
                return true;
            }
            let last = m - 1;
            let chords_ok = (0..m).all(|a| {
                (a + 2..m).all(|b| {
                    (a == 0 && b == last) || (a == 1 && b == last) || !p.antipodal(c[a], c[b])
                })
            });
            if !chords_ok {
                continue;
            }
            let hit = (2..last).any(|j| p.leq(c[j], c[0]));
            if !hit {
                continue;
            }
            if !(2..last).all(|l| p.leq(c[l], c[0])) {
                return false;
            }
            if p.antipodal(c[1], c[last]) {
                let from_zero = |a: usize, b: usize| a == 0 || b == 0;
                for a in 1..m {
                    for b in a + 1..m {
                        let adjacent = b == a + 1 || (a == 1 && b == last);
                        if !adjacent && !from_zero(a, b) && p.attached(c[a], c[b]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{d_partition, partial_coloring, upper_bounds, weak_coloring};

    #[test]
    fn partial_conflict_gives_double_fan() {
        // u_1 = 0, u_2 = 1, a = 2 in D_{1,2}, b = 3 in D_1, c = 4 in D_2
        let p = AbstractProfile::new(
            5,
            [(2, 3), (2, 4), (0, 1), (0, 4), (1, 3)],
            [(2, 0), (2, 1), (3, 0), (4, 1)],
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        let conflict = partial_coloring(&p, &dp).unwrap_err();
        let e = extract_embedding(&p, &dp, &conflict).unwrap();
        assert_eq!(e.family, Family::DF);
        assert_eq!(e.param, 2);
        assert_eq!(e.map.iter().collect::<BTreeSet<_>>().len(), 5);
    }

    #[test]
    fn partial_conflict_with_antipodal_ends_gives_wheel() {
        let p = AbstractProfile::new(
            5,
            [(2, 3), (2, 4), (3, 4), (0, 1), (0, 4), (1, 3)],
            [(2, 0), (2, 1), (3, 0), (4, 1)],
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        let conflict = partial_coloring(&p, &dp).unwrap_err();
        let e = extract_embedding(&p, &dp, &conflict).unwrap();
        assert_eq!((e.family, e.param), (Family::W1, 1));
    }

    #[test]
    fn odd_cycle_gives_plain_wheel() {
        let p = AbstractProfile::new(
            6,
            [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)],
            (1..6).map(|a| (a, 0)),
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        let pc = partial_coloring(&p, &dp).unwrap();
        let conflict = weak_coloring(&p, &dp, &pc).unwrap_err();
        let e = extract_embedding(&p, &dp, &conflict).unwrap();
        assert_eq!((e.family, e.param), (Family::W0, 2));
        assert_eq!(e.map[5], 0);
    }

    #[test]
    fn shared_attacher_gives_spoked_wheel() {
        // D_1 = {0, 2, 3}, path 2 - 3 with both ends antipodal to u_2 = 1
        let p = AbstractProfile::new(
            4,
            [(0, 1), (2, 3), (2, 1), (3, 1)],
            [(2, 0), (3, 0)],
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        let pc = partial_coloring(&p, &dp).unwrap();
        let conflict = weak_coloring(&p, &dp, &pc).unwrap_err();
        assert!(matches!(conflict, ColoringConflict::EvenPath { .. }));
        let e = extract_embedding(&p, &dp, &conflict).unwrap();
        assert_eq!((e.family, e.param), (Family::W1, 1));
        assert_eq!(e.map, vec![1, 2, 3, 0]);
    }

    #[test]
    fn verify_rejects_fabrications() {
        let p = AbstractProfile::new(
            3,
            [(0, 1), (0, 2), (1, 2)],
            [],
            vec![
                (VertexId::from("b"), BTreeSet::from([0, 2])),
                (VertexId::from("c"), BTreeSet::from([0, 1])),
                (VertexId::from("e"), BTreeSet::from([1, 2])),
            ],
        )
        .unwrap();
        for v in ["b", "c", "e"] {
            assert!(!verify_triple(
                &p,
                &TripleWitness {
                    parts: [0, 1, 2],
                    witness_vertex: VertexId::from(v)
                }
            ));
        }
        let empty = Embedding {
            family: Family::W0,
            param: 1,
            map: vec![],
        };
        assert!(!verify_embedding(&p, &empty, false));
    }

    #[test]
    fn chord_claim_on_fan() {
        // F_5 shape as a profile: path 1-2-3-4, hub 0 antipodal to the ends,
        // interior below the hub. The 5-cycle 0,1,2,3,4 has dominance chords
        // from 0 only.
        let p = AbstractProfile::new(
            5,
            [(1, 2), (2, 3), (3, 4), (0, 1), (0, 4)],
            [(2, 0), (3, 0)],
            vec![],
        )
        .unwrap();
        assert!(chord_claim_holds(&p, &[0, 1, 2, 3, 4]));
        // A lone chord 2 ≤ 0 on an induced 7-cycle breaks the structure.
        let bad = AbstractProfile::new(
            7,
            (0..7).map(|a| (a, (a + 1) % 7)),
            [(2, 0)],
            vec![],
        )
        .unwrap();
        assert!(!chord_claim_holds(&bad, &[0, 1, 2, 3, 4, 5, 6]));
    }
}
