//! Upper bounds, the D-partition and the partial, weak and strong colorings
//! of a separator profile.
//!
//! Colors are 1-based. With `ℓ` upper bounds `u_1..u_ℓ`, the upper bound
//! `u_i` gets color `i` and color `ℓ + 1` is the shared overflow color.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::separation::{AbstractProfile, PartId};

pub type Color = usize;

/// Default part cap of the exhaustive strong-coloring search.
pub const STRONG_COLORING_CAP: usize = 9;

/// Dominance-maximal parts in part order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperList {
    pub uppers: Vec<PartId>,
}

impl UpperList {
    pub fn len(&self) -> usize {
        self.uppers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uppers.is_empty()
    }

    /// The part `u_i` for a 1-based index `i`.
    pub fn get(&self, i: usize) -> PartId {
        self.uppers[i - 1]
    }

    /// 1-based index of `part` if it is an upper bound.
    pub fn index_of(&self, part: PartId) -> Option<usize> {
        self.uppers.iter().position(|&u| u == part).map(|i| i + 1)
    }
}

pub fn upper_bounds(p: &AbstractProfile) -> UpperList {
    let n = p.part_count();
    UpperList {
        uppers: (0..n)
            .filter(|&a| !(0..n).any(|b| b != a && p.leq(a, b) && !p.leq(b, a)))
            .collect(),
    }
}

/// A block of the D-partition, named by 1-based upper indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Block {
    /// Parts below `u_i` only.
    Single(usize),
    /// Parts below exactly `u_i` and `u_j`, `i < j`.
    Pair(usize, usize),
}

impl Block {
    /// The two colors a block may use; the first is the default seed color.
    pub fn palette(self, ell: usize) -> [Color; 2] {
        match self {
            Block::Single(i) => [i, ell + 1],
            Block::Pair(i, j) => [i, j],
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Single(i) => write!(f, "D_{i}"),
            Block::Pair(i, j) => write!(f, "D_{i},{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPartition {
    pub uppers: UpperList,
    pub block_of: Vec<Block>,
}

impl DPartition {
    pub fn blocks(&self) -> BTreeSet<Block> {
        self.block_of.iter().copied().collect()
    }

    pub fn members(&self, block: Block) -> Vec<PartId> {
        (0..self.block_of.len())
            .filter(|&a| self.block_of[a] == block)
            .collect()
    }

    pub fn singles(&self) -> BTreeMap<usize, BTreeSet<PartId>> {
        let mut out = BTreeMap::new();
        for (a, b) in self.block_of.iter().enumerate() {
            if let Block::Single(i) = b {
                out.entry(*i).or_insert_with(BTreeSet::new).insert(a);
            }
        }
        out
    }

    pub fn pairs(&self) -> BTreeMap<(usize, usize), BTreeSet<PartId>> {
        let mut out = BTreeMap::new();
        for (a, b) in self.block_of.iter().enumerate() {
            if let Block::Pair(i, j) = b {
                out.entry((*i, *j)).or_insert_with(BTreeSet::new).insert(a);
            }
        }
        out
    }
}

pub fn d_partition(p: &AbstractProfile, uppers: &UpperList) -> Result<DPartition> {
    let mut block_of = Vec::with_capacity(p.part_count());
    for a in 0..p.part_count() {
        let above: Vec<usize> = (1..=uppers.len())
            .filter(|&i| p.leq(a, uppers.get(i)))
            .collect();
        block_of.push(match above.as_slice() {
            [] => return Err(Error::Undominated(a)),
            [i] => Block::Single(*i),
            [i, j] => Block::Pair(*i, *j),
            _ => {
                return Err(Error::OverDominated {
                    part: a,
                    uppers: above,
                })
            }
        });
    }
    Ok(DPartition {
        uppers: uppers.clone(),
        block_of,
    })
}

/// Three pairwise antipodal parts sharing a separator vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub parts: [PartId; 3],
    pub witness_vertex: VertexId,
}

pub fn find_full_antipodal_triple(p: &AbstractProfile) -> Option<TripleWitness> {
    for (v, set) in p.neighboring() {
        let list: Vec<PartId> = set.iter().copied().collect();
        for (x, &a) in list.iter().enumerate() {
            for (y, &b) in list.iter().enumerate().skip(x + 1) {
                if !p.antipodal(a, b) {
                    continue;
                }
                if let Some(&c) = list[y + 1..]
                    .iter()
                    .find(|&&c| p.antipodal(a, c) && p.antipodal(b, c))
                {
                    return Some(TripleWitness {
                        parts: [a, b, c],
                        witness_vertex: v.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Parts with an antipodal neighbor in a different block.
pub fn cross_set(p: &AbstractProfile, dp: &DPartition) -> BTreeSet<PartId> {
    (0..p.part_count())
        .filter(|&a| p.antipodal_neighbors(a).any(|b| dp.block_of[b] != dp.block_of[a]))
        .collect()
}

/// Colors forced on upper bounds and crossing parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialColoring {
    pub colors: BTreeMap<PartId, Color>,
}

/// Why a profile has no weak coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ColoringConflict {
    /// `part` in `D_{i,j}` is antipodal to `first` in `D_i` and `second` in `D_j`.
    Partial {
        part: PartId,
        first: PartId,
        second: PartId,
        i: usize,
        j: usize,
    },
    /// Antipodal cycle of odd length inside one block.
    OddCycle { block: Block, cycle: Vec<PartId> },
    /// Antipodal path with an even number of parts whose ends are forced to
    /// the same color.
    EvenPath {
        block: Block,
        path: Vec<PartId>,
        color: Color,
    },
    /// Antipodal path with an odd number of parts whose ends are forced to
    /// different colors.
    OddPath {
        block: Block,
        path: Vec<PartId>,
        colors: (Color, Color),
    },
    /// A part of `D_{i,j}` antipodal to a part outside `D_i ∪ D_j ∪ D_{i,j}`.
    /// Profiles of chordal graphs without a full antipodal triple never
    /// produce this.
    StrayNeighbor { part: PartId, neighbor: PartId },
}

impl fmt::Display for ColoringConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |s: &[PartId]| s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            ColoringConflict::Partial {
                part,
                first,
                second,
                i,
                j,
            } => write!(
                f,
                "partial: part {part} in D_{i},{j} is antipodal to {first} in D_{i} and {second} in D_{j}"
            ),
            ColoringConflict::OddCycle { block, cycle } => {
                write!(f, "odd-cycle in {block}: {}", seq(cycle))
            }
            ColoringConflict::EvenPath { block, path, color } => {
                write!(f, "even-path in {block}, both ends forced to {color}: {}", seq(path))
            }
            ColoringConflict::OddPath {
                block,
                path,
                colors,
            } => write!(
                f,
                "odd-path in {block}, ends forced to {} and {}: {}",
                colors.0,
                colors.1,
                seq(path)
            ),
            ColoringConflict::StrayNeighbor { part, neighbor } => {
                write!(f, "stray: part {part} is antipodal to {neighbor} outside its blocks")
            }
        }
    }
}

pub fn partial_coloring(
    p: &AbstractProfile,
    dp: &DPartition,
) -> std::result::Result<PartialColoring, ColoringConflict> {
    let mut colors = BTreeMap::new();
    for i in 1..=dp.uppers.len() {
        colors.insert(dp.uppers.get(i), i);
    }
    for a in cross_set(p, dp) {
        match dp.block_of[a] {
            Block::Single(i) => {
                colors.insert(a, i);
            }
            Block::Pair(i, j) => {
                let mut in_i = None;
                let mut in_j = None;
                for b in p.antipodal_neighbors(a) {
                    match dp.block_of[b] {
                        x if x == dp.block_of[a] => {}
                        Block::Single(k) if k == i => {
                            in_i.get_or_insert(b);
                        }
                        Block::Single(k) if k == j => {
                            in_j.get_or_insert(b);
                        }
                        _ => return Err(ColoringConflict::StrayNeighbor { part: a, neighbor: b }),
                    }
                }
                match (in_i, in_j) {
                    (Some(first), Some(second)) => {
                        return Err(ColoringConflict::Partial {
                            part: a,
                            first,
                            second,
                            i,
                            j,
                        })
                    }
                    (Some(_), None) => {
                        colors.insert(a, j);
                    }
                    (None, Some(_)) => {
                        colors.insert(a, i);
                    }
                    (None, None) => unreachable!("crossing part has an outside neighbor"),
                }
            }
        }
    }
    Ok(PartialColoring { colors })
}

/// A color for every part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakColoring {
    pub colors: Vec<Color>,
}

impl WeakColoring {
    pub fn to_text(&self) -> String {
        self.colors
            .iter()
            .enumerate()
            .map(|(p, c)| format!("part {p} -> {c}\n"))
            .collect()
    }
}

/// Tree path from the BFS root to `x`.
fn tree_path(parent: &BTreeMap<PartId, PartId>, root: PartId, x: PartId) -> Vec<PartId> {
    let mut path = vec![x];
    let mut y = x;
    while y != root {
        y = parent[&y];
        path.push(y);
    }
    path.reverse();
    path
}

/// Extends the partial coloring by 2-coloring every block's antipodal graph.
pub fn weak_coloring(
    p: &AbstractProfile,
    dp: &DPartition,
    pc: &PartialColoring,
) -> std::result::Result<WeakColoring, ColoringConflict> {
    let ell = dp.uppers.len();
    let mut colors = vec![0; p.part_count()];
    for block in dp.blocks() {
        let members = dp.members(block);
        let inside: BTreeSet<PartId> = members.iter().copied().collect();
        let palette = block.palette(ell);
        let nbrs = |a: PartId| p.antipodal_neighbors(a).filter(|b| inside.contains(b));
        let mut seen = BTreeSet::new();
        for &start in &members {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in nbrs(x) {
                    if comp.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            let root = comp
                .iter()
                .copied()
                .find(|a| pc.colors.contains_key(a))
                .unwrap_or(start);
            let mut dist = BTreeMap::from([(root, 0usize)]);
            let mut parent = BTreeMap::new();
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for y in nbrs(x) {
                    if !dist.contains_key(&y) {
                        dist.insert(y, dist[&x] + 1);
                        parent.insert(y, x);
                        queue.push_back(y);
                    }
                }
            }
            // Odd cycle: pick the same-level edge closing the shortest cycle.
            let mut best: Option<(usize, Vec<PartId>)> = None;
            for &x in &comp {
                for y in nbrs(x).filter(|&y| y > x && dist[&y] == dist[&x]) {
                    let px = tree_path(&parent, root, x);
                    let py = tree_path(&parent, root, y);
                    let common = px.iter().zip(&py).take_while(|(a, b)| a == b).count();
                    let mut cycle: Vec<PartId> = px[common - 1..].to_vec();
                    cycle.extend(py[common..].iter().rev());
                    if best.as_ref().is_none_or(|(len, _)| cycle.len() < *len) {
                        best = Some((cycle.len(), cycle));
                    }
                }
            }
            if let Some((_, cycle)) = best {
                return Err(ColoringConflict::OddCycle { block, cycle });
            }
            let base = pc.colors.get(&root).copied().unwrap_or(palette[0]);
            debug_assert!(palette.contains(&base));
            let other = if base == palette[0] { palette[1] } else { palette[0] };
            let mut forced: Vec<PartId> = comp
                .iter()
                .copied()
                .filter(|a| pc.colors.contains_key(a))
                .collect();
            forced.sort_by_key(|a| (dist[a], *a));
            for &a in &comp {
                colors[a] = if dist[&a] % 2 == 0 { base } else { other };
            }
            if let Some(&w) = forced.iter().find(|&&w| colors[w] != pc.colors[&w]) {
                let path = tree_path(&parent, root, w);
                let (cr, cw) = (pc.colors[&root], pc.colors[&w]);
                return Err(if path.len().is_multiple_of(2) {
                    ColoringConflict::EvenPath {
                        block,
                        path,
                        color: cr,
                    }
                } else {
                    ColoringConflict::OddPath {
                        block,
                        path,
                        colors: (cr, cw),
                    }
                });
            }
        }
    }
    Ok(WeakColoring { colors })
}

/// Checks a weak coloring clause by clause without reusing the coloring code.
pub fn validate_weak_coloring(
    p: &AbstractProfile,
    dp: &DPartition,
    f: &WeakColoring,
) -> std::result::Result<(), String> {
    let ell = dp.uppers.len();
    let n = p.part_count();
    if f.colors.len() != n {
        return Err(format!("{} colors for {} parts", f.colors.len(), n));
    }
    for (a, &c) in f.colors.iter().enumerate() {
        if c == 0 || c > ell + 1 {
            return Err(format!("part {a} has color {c} outside 1..={}", ell + 1));
        }
    }
    for (i, &u) in dp.uppers.uppers.iter().enumerate() {
        if f.colors[u] != i + 1 {
            return Err(format!("upper bound u_{} has color {}", i + 1, f.colors[u]));
        }
    }
    for a in 0..n {
        let here = dp.block_of[a];
        let outside: Vec<PartId> = p
            .antipodal_neighbors(a)
            .filter(|&b| dp.block_of[b] != here)
            .collect();
        match here {
            Block::Single(i) => {
                if f.colors[a] != i && f.colors[a] != ell + 1 {
                    return Err(format!("part {a} in D_{i} has color {}", f.colors[a]));
                }
                if !outside.is_empty() && f.colors[a] != i {
                    return Err(format!("crossing part {a} in D_{i} has color {}", f.colors[a]));
                }
            }
            Block::Pair(i, j) => {
                if f.colors[a] != i && f.colors[a] != j {
                    return Err(format!("part {a} in D_{i},{j} has color {}", f.colors[a]));
                }
                for &b in &outside {
                    let want = match dp.block_of[b] {
                        Block::Single(k) if k == j => i,
                        Block::Single(k) if k == i => j,
                        _ => return Err(format!("part {a} in D_{i},{j} antipodal to stray {b}")),
                    };
                    if f.colors[a] != want {
                        return Err(format!(
                            "part {a} in D_{i},{j} antipodal to {b} but has color {}",
                            f.colors[a]
                        ));
                    }
                }
            }
        }
        for b in p.antipodal_neighbors(a) {
            if dp.block_of[b] == here && f.colors[a] == f.colors[b] {
                return Err(format!("antipodal parts {a} and {b} share color {}", f.colors[a]));
            }
        }
    }
    Ok(())
}

/// Sorted triples of distinct parts sharing a separator vertex.
pub fn neighboring_triples(p: &AbstractProfile) -> BTreeSet<[PartId; 3]> {
    let mut out = BTreeSet::new();
    for (_, set) in p.neighboring() {
        let l: Vec<PartId> = set.iter().copied().collect();
        for x in 0..l.len() {
            for y in x + 1..l.len() {
                for z in y + 1..l.len() {
                    out.insert([l[x], l[y], l[z]]);
                }
            }
        }
    }
    out
}

/// Exhaustive search for a strong coloring: antipodal parts differ and every
/// neighboring triple uses at most two colors.
pub fn strong_coloring_bruteforce(p: &AbstractProfile) -> Result<Option<Vec<Color>>> {
    strong_coloring_search(p, STRONG_COLORING_CAP)
}

pub fn strong_coloring_search(p: &AbstractProfile, cap: usize) -> Result<Option<Vec<Color>>> {
    let n = p.part_count();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "strong coloring parts",
            actual: n,
            cap,
        });
    }
    let mut by_last: Vec<Vec<[PartId; 2]>> = vec![Vec::new(); n];
    for [a, b, c] in neighboring_triples(p) {
        by_last[c].push([a, b]);
    }
    let mut colors = vec![0; n];
    fn go(
        k: usize,
        used: usize,
        p: &AbstractProfile,
        by_last: &[Vec<[PartId; 2]>],
        colors: &mut Vec<Color>,
    ) -> bool {
        if k == colors.len() {
            return true;
        }
        for c in 1..=used + 1 {
            if (0..k).any(|b| p.antipodal(k, b) && colors[b] == c) {
                continue;
            }
            if by_last[k]
                .iter()
                .any(|&[a, b]| colors[a] != colors[b] && c != colors[a] && c != colors[b])
            {
                continue;
            }
            colors[k] = c;
            if go(k + 1, used.max(c), p, by_last, colors) {
                return true;
            }
        }
        colors[k] = 0;
        false
    }
    Ok(go(0, 0, p, &by_last, &mut colors).then_some(colors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nb(entries: &[(&str, &[PartId])]) -> Vec<(VertexId, BTreeSet<PartId>)> {
        entries
            .iter()
            .map(|(v, s)| (VertexId::from(*v), s.iter().copied().collect()))
            .collect()
    }

    /// γ1..γ6 as parts 0..5: γ2<γ1, γ6<γ1, γ3<γ4, γ5<γ4, γ6<γ4.
    fn poset_example() -> AbstractProfile {
        AbstractProfile::new(6, [], [(1, 0), (5, 0), (2, 3), (4, 3), (5, 3)], vec![]).unwrap()
    }

    fn worked_example_profile() -> AbstractProfile {
        AbstractProfile::new(
            3,
            [(0, 1), (0, 2), (1, 2)],
            [],
            nb(&[("b", &[0, 2]), ("c", &[0, 1]), ("e", &[1, 2])]),
        )
        .unwrap()
    }

    #[test]
    fn poset_uppers_and_blocks() {
        let p = poset_example();
        let u = upper_bounds(&p);
        assert_eq!(u.uppers, vec![0, 3]);
        let dp = d_partition(&p, &u).unwrap();
        assert_eq!(dp.singles()[&1], BTreeSet::from([0, 1]));
        assert_eq!(dp.singles()[&2], BTreeSet::from([2, 3, 4]));
        assert_eq!(dp.pairs()[&(1, 2)], BTreeSet::from([5]));
    }

    #[test]
    fn antichain_colors_itself() {
        let p = worked_example_profile();
        let u = upper_bounds(&p);
        assert_eq!(u.uppers, vec![0, 1, 2]);
        assert!(find_full_antipodal_triple(&p).is_none());
        let dp = d_partition(&p, &u).unwrap();
        assert_eq!(dp.singles().len(), 3);
        assert_eq!(cross_set(&p, &dp), BTreeSet::from([0, 1, 2]));
        let pc = partial_coloring(&p, &dp).unwrap();
        assert_eq!(pc.colors, BTreeMap::from([(0, 1), (1, 2), (2, 3)]));
        let wc = weak_coloring(&p, &dp, &pc).unwrap();
        assert_eq!(wc.colors, vec![1, 2, 3]);
        validate_weak_coloring(&p, &dp, &wc).unwrap();
        assert!(strong_coloring_bruteforce(&p).unwrap().is_some());
    }

    #[test]
    fn triple_at_common_vertex() {
        let p = AbstractProfile::new(
            3,
            [(0, 1), (0, 2), (1, 2)],
            [],
            nb(&[("x", &[0, 1, 2]), ("y1", &[0])]),
        )
        .unwrap();
        let t = find_full_antipodal_triple(&p).unwrap();
        assert_eq!(t.parts, [0, 1, 2]);
        assert_eq!(t.witness_vertex, VertexId::from("x"));
        assert_eq!(strong_coloring_bruteforce(&p).unwrap(), None);
    }

    #[test]
    fn chain_has_one_block() {
        let p = AbstractProfile::new(2, [], [(1, 0)], nb(&[("b", &[0, 1])])).unwrap();
        let u = upper_bounds(&p);
        assert_eq!(u.uppers, vec![0]);
        let dp = d_partition(&p, &u).unwrap();
        assert_eq!(dp.singles()[&1], BTreeSet::from([0, 1]));
        assert!(cross_set(&p, &dp).is_empty());
        let pc = partial_coloring(&p, &dp).unwrap();
        let wc = weak_coloring(&p, &dp, &pc).unwrap();
        assert_eq!(wc.colors, vec![1, 1]);
    }

    #[test]
    fn pair_member_between_two_singles_conflicts() {
        // uppers 0 and 1, a=2 in D_{1,2}, b=3 in D_1, c=4 in D_2
        let p = AbstractProfile::new(
            5,
            [(2, 3), (2, 4)],
            [(2, 0), (2, 1), (3, 0), (4, 1)],
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        assert_eq!(dp.block_of[2], Block::Pair(1, 2));
        assert_eq!(
            partial_coloring(&p, &dp),
            Err(ColoringConflict::Partial {
                part: 2,
                first: 3,
                second: 4,
                i: 1,
                j: 2
            })
        );
    }

    #[test]
    fn odd_cycle_in_block() {
        let p = AbstractProfile::new(
            6,
            [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)],
            (1..6).map(|a| (a, 0)),
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        let pc = partial_coloring(&p, &dp).unwrap();
        match weak_coloring(&p, &dp, &pc) {
            Err(ColoringConflict::OddCycle { block, cycle }) => {
                assert_eq!(block, Block::Single(1));
                assert_eq!(cycle.len(), 5);
                for w in 0..5 {
                    assert!(p.antipodal(cycle[w], cycle[(w + 1) % 5]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn forced_path_conflicts() {
        // Two uppers 0, 1. Parts 2..=5 form an antipodal path in D_1 whose
        // ends are both antipodal to u_2, so both ends are forced to 1.
        let p = AbstractProfile::new(
            6,
            [(0, 1), (2, 3), (3, 4), (4, 5), (2, 1), (5, 1)],
            (2..6).map(|a| (a, 0)),
            vec![],
        )
        .unwrap();
        let dp = d_partition(&p, &upper_bounds(&p)).unwrap();
        let pc = partial_coloring(&p, &dp).unwrap();
        assert_eq!(pc.colors[&2], 1);
        assert_eq!(pc.colors[&5], 1);
        match weak_coloring(&p, &dp, &pc) {
            Err(ColoringConflict::EvenPath { block, path, color }) => {
                assert_eq!(block, Block::Single(1));
                assert_eq!(color, 1);
                assert_eq!(path, vec![2, 3, 4, 5]);
            }
            other => panic!("expected even path, got {other:?}"),
        }
    }
}
