//! End-to-end self-test: eight suites that cross-check the recognizer against
//! the exhaustive oracle, strong colorings, the forbidden template lists and
//! the relation laws. The command line `selftest` and the acceptance test
//! both drive [`run_selftest`].

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::certificate::{chord_claim_holds, verify_certificate, WitnessKind};
use crate::chordal::{clique_separators, is_chordal, maximal_cliques, verify_clique_path_tree};
use crate::coloring::{
    d_partition, find_full_antipodal_triple, partial_coloring, strong_coloring_bruteforce,
    strong_coloring_search, upper_bounds, validate_weak_coloring, weak_coloring, Block,
    ColoringConflict,
};
use crate::generate::{
    all_labeled_graphs, clique_growth_graph, rng_from_seed, separator_graph, subtree_graph,
};
use crate::graph::{parse_edge_list, SimpleGraph, VertexSet};
use crate::oracle::{oracle_decides_path, oracle_is_path_graph, ORACLE_CLIQUE_CAP};
use crate::recognizer::{check_separator, g_plus, recognize_with, RecognizeOptions, Verdict, VerdictKind};
use crate::separation::{build_profile, quotient_profile, traces_attached, SeparationProfile};
use crate::template::{
    catalog, colored_isomorphic, find_embedding, find_forbidden, ColoredGraph, Family, Template,
    FORBIDDEN_SEARCH_CAP,
};

pub const WORKED_EXAMPLE: &str = "\
# a path graph on 8 vertices with 6 maximal cliques
a b
a c
b c
c d
c e
d e
b e
b g
e g
b f
f g
e h
g h
";

pub const TRIPLE_FAN: &str = "\
# a 4-clique with one pendant triangle on each of three edges through x
x y1
x y2
x y3
y1 y2
y1 y3
y2 y3
b1 x
b1 y1
b2 x
b2 y2
b3 x
b3 y3
";

/// Largest template in the sanity suite: `k ≤ 4` for wheels, `n ≤ 5` otherwise.
const SANITY_MAX_PARAM: [(Family, usize); 5] = [
    (Family::W0, 4),
    (Family::W1, 4),
    (Family::F, 5),
    (Family::FTilde, 5),
    (Family::DF, 5),
];

/// Parts per separator above which the statement checks skip a graph.
pub const STATEMENT_PART_CAP: usize = FORBIDDEN_SEARCH_CAP;

/// Flips the color of one edge of one template before the suites run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub family: Family,
    pub param: usize,
    /// Index into the template's `edges()`.
    pub edge: usize,
}

impl Mutation {
    /// The antipodal spoke of `W1_3`, which turns it into `W0_3`.
    pub fn w1_spoke() -> Self {
        let t = crate::template::make_template(Family::W1, 1).expect("in range");
        let hub = t.graph.vertex_count() - 1;
        let edge = t
            .graph
            .edges()
            .iter()
            .position(|&(a, b, _)| (a, b) == (0, hub))
            .expect("W1 has a spoke to rim vertex 0");
        Mutation {
            family: Family::W1,
            param: 1,
            edge,
        }
    }

    fn apply(&self, t: Template) -> Template {
        if t.family == self.family && t.param == self.param {
            t.with_flipped_edge(self.edge)
        } else {
            t
        }
    }
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    /// Exhaustive labeled graphs on `1..=max_n` vertices.
    pub max_n: usize,
    /// Subtree-model graphs; a fifth as many clique-growth graphs and twice
    /// as many separator profiles are added.
    pub samples: usize,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_n: 6,
            samples: 10_000,
            seed: 1,
            mutation: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub number: usize,
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub skipped: usize,
    pub elapsed: Duration,
    /// Named sizes of what the suite covered, e.g. corpus counts.
    pub counts: BTreeMap<&'static str, usize>,
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(number: usize, name: &'static str) -> Self {
        SuiteReport {
            number,
            name,
            checked: 0,
            failures: 0,
            skipped: 0,
            elapsed: Duration::ZERO,
            counts: BTreeMap::new(),
            details: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn is_vacuous(&self) -> bool {
        self.checked == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.failures <= 5 {
            self.details.push(format!("failure: {msg}"));
        }
    }

    fn note(&mut self, msg: String) {
        self.details.push(msg);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} suite {} {}: {} checked, {} failed, {} skipped ({:.2}s){}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.number,
            self.name,
            self.checked,
            self.failures,
            self.skipped,
            self.elapsed.as_secs_f64(),
            if self.is_vacuous() { " [vacuous]" } else { "" }
        )
    }
}

/// Relation-law bookkeeping over every profile the suites build.
#[derive(Clone, Debug, Default)]
pub struct LawAudit {
    pub profiles: usize,
    pub triple_free: usize,
    pub chord_checks: usize,
    pub violations: usize,
    pub examples: Vec<String>,
    /// Time spent auditing, also counted in the suites that built the profiles.
    pub elapsed: Duration,
}

impl LawAudit {
    fn violate(&mut self, p: &SeparationProfile, law: &str) {
        self.violations += 1;
        if self.examples.len() < 5 {
            let sep: Vec<&str> = p.separator_labels.iter().map(|v| v.as_str()).collect();
            self.examples.push(format!("{law} at separator {{{}}}", sep.join(",")));
        }
    }

    /// Audits a raw profile and its quotient.
    pub fn profile(&mut self, raw: &SeparationProfile) {
        let start = Instant::now();
        self.relations(raw, false);
        let q = quotient_profile(raw);
        self.relations(&q, true);
        if find_full_antipodal_triple(&q.relations).is_none() {
            self.triple_free += 1;
            self.partition(&q);
        }
        self.elapsed += start.elapsed();
    }

    /// Audits every maximal clique separator of a chordal graph.
    pub fn graph(&mut self, g: &SimpleGraph) {
        for q in clique_separators(g).expect("chordal input") {
            self.profile(&build_profile(g, &q).expect("maximal clique separator"));
        }
    }

    fn relations(&mut self, prof: &SeparationProfile, quotient: bool) {
        self.profiles += 1;
        let p = &prof.relations;
        let n = p.part_count();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let dom = p.leq(a, b) || p.leq(b, a);
                if p.antipodal(a, b) && dom {
                    self.violate(prof, "antipodal parts in dominance");
                }
                let touching = traces_attached(&prof.parts[a].traces, &prof.parts[b].traces);
                if touching != (p.antipodal(a, b) || dom) {
                    self.violate(prof, "antipodality and dominance do not cover attachedness");
                }
                if p.antipodal(a, b) && !self.shares_vertices(prof, a, b) {
                    self.violate(prof, "antipodal parts missing from a shared neighboring set");
                }
            }
        }
        if !p.is_transitive() {
            self.violate(prof, "dominance not transitive");
        }
        if quotient && !p.is_antisymmetric() {
            self.violate(prof, "quotient dominance not antisymmetric");
        }
    }

    fn shares_vertices(&self, prof: &SeparationProfile, a: usize, b: usize) -> bool {
        let nb = prof.relations.neighboring();
        prof.parts[a].traces.iter().all(|t| {
            prof.parts[b].traces.iter().all(|u| {
                t.intersection(u).all(|&v| {
                    let label = prof.label(v);
                    nb.iter()
                        .any(|(w, s)| w == label && s.contains(&a) && s.contains(&b))
                })
            })
        })
    }

    /// D-sets and the block laws on a triple-free quotient.
    fn partition(&mut self, prof: &SeparationProfile) {
        let p = &prof.relations;
        let uppers = upper_bounds(p);
        let dp = match d_partition(p, &uppers) {
            Ok(dp) => dp,
            Err(e) => return self.violate(prof, &format!("D-sets do not partition: {e}")),
        };
        let ell = uppers.len();
        let above = |a: usize| -> Vec<usize> { (1..=ell).filter(|&i| p.leq(a, uppers.get(i))).collect() };
        for a in 0..p.part_count() {
            let expect = match dp.block_of[a] {
                Block::Single(i) => vec![i],
                Block::Pair(i, j) => vec![i, j],
            };
            if above(a) != expect {
                self.violate(prof, "part in the wrong D-set");
            }
        }
        for i in 1..=ell {
            if dp.block_of[uppers.get(i)] != Block::Single(i) {
                self.violate(prof, "upper bound outside its own D-set");
            }
        }
        let inside = |b: Block, i: usize, j: usize| {
            matches!(b, Block::Single(k) if k == i || k == j) || b == Block::Pair(i, j)
        };
        for a in 0..p.part_count() {
            match dp.block_of[a] {
                Block::Pair(i, j) => {
                    for b in 0..p.part_count() {
                        if (p.leq(a, b) || p.antipodal(a, b)) && !inside(dp.block_of[b], i, j) {
                            self.violate(prof, "pair-block part related outside its three D-sets");
                        }
                    }
                }
                Block::Single(i) => {
                    for b in p.antipodal_neighbors(a) {
                        if dp.block_of[b] == Block::Single(i) {
                            continue;
                        }
                        for k in (1..=ell).filter(|&k| k != i && p.leq(b, uppers.get(k))) {
                            if !p.antipodal(a, uppers.get(k)) {
                                self.violate(prof, "single-block part not antipodal to a foreign upper");
                            }
                        }
                    }
                }
            }
        }
        if let Ok(pc) = partial_coloring(p, &dp) {
            if let Err(ColoringConflict::OddCycle { cycle, .. }) = weak_coloring(p, &dp, &pc) {
                self.chord_checks += 1;
                if !chord_claim_holds(p, &cycle) {
                    self.violate(prof, "odd antipodal cycle breaks the chord structure");
                }
            }
        }
    }
}

/// Graphs shared by the differential, statement and pendant suites.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub exhaustive: Vec<SimpleGraph>,
    pub subtree: Vec<SimpleGraph>,
    pub growth: Vec<SimpleGraph>,
}

impl Corpus {
    pub fn sampled(&self) -> impl Iterator<Item = &SimpleGraph> {
        self.subtree.iter().chain(self.growth.iter())
    }

    pub fn build(cfg: &SelftestConfig) -> Corpus {
        let mut rng = rng_from_seed(cfg.seed);
        let fits = |g: &SimpleGraph| {
            maximal_cliques(g).expect("chordal by construction").len() <= ORACLE_CLIQUE_CAP
        };
        let exhaustive = (1..=cfg.max_n)
            .flat_map(all_labeled_graphs)
            .filter(|g| g.is_connected() && is_chordal(g).is_chordal())
            .collect();
        let mut subtree = Vec::with_capacity(cfg.samples);
        while subtree.len() < cfg.samples {
            let n = rng.gen_range(6..=18);
            let host = rng.gen_range(4..=9);
            let reach = rng.gen_range(1..=6);
            let g = subtree_graph(n, host, reach, 0.3, &mut rng);
            if fits(&g) {
                subtree.push(g);
            }
        }
        let mut growth = Vec::with_capacity(cfg.samples / 5);
        while growth.len() < cfg.samples / 5 {
            let g = clique_growth_graph(rng.gen_range(6..=16), 0.7, &mut rng);
            if fits(&g) {
                growth.push(g);
            }
        }
        Corpus {
            exhaustive,
            subtree,
            growth,
        }
    }
}

fn label_set(g: &SimpleGraph, labels: &[&str]) -> VertexSet {
    g.set_of(labels).expect("labels of the fixed example")
}

/// Moves a separator of `g` to the same labels in `host`.
fn carry(g: &SimpleGraph, q: &VertexSet, host: &SimpleGraph) -> VertexSet {
    let labels: Vec<&str> = q.iter().map(|&v| g.label(v).as_str()).collect();
    host.set_of(&labels).expect("host keeps the labels of g")
}

/// Validates the evidence or certificate carried by a verdict.
fn verdict_is_sound(v: &Verdict) -> bool {
    match v {
        Verdict::NotChordal { .. } => true,
        Verdict::PathGraph { separators, .. } => separators
            .iter()
            .all(|s| validate_weak_coloring(&s.profile.relations, &s.partition, &s.coloring).is_ok()),
        Verdict::NotPathGraph(ob) => verify_certificate(&ob.profile, &ob.witness),
    }
}

fn certificate_name(v: &Verdict) -> String {
    match v {
        Verdict::NotPathGraph(ob) => match &ob.witness.kind {
            WitnessKind::FullAntipodalTriple(_) => "triple".into(),
            WitnessKind::TemplateEmbedding { embedding, .. } => embedding.family.to_string(),
        },
        other => other.kind().as_str().into(),
    }
}

fn no_tree() -> RecognizeOptions {
    RecognizeOptions { tree_clique_cap: 0 }
}

fn suite_worked_example(audit: &mut LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(1, "worked-example pipeline");
    let (g, warnings) = parse_edge_list(WORKED_EXAMPLE).expect("fixed example parses");
    r.check(warnings.is_empty(), || "parse warnings".into());
    let cliques = maximal_cliques(&g).expect("chordal");
    let want: Vec<VertexSet> = ["abc", "bce", "beg", "bfg", "cde", "egh"]
        .iter()
        .map(|s| {
            let letters: Vec<String> = s.chars().map(String::from).collect();
            g.set_of(&letters).expect("labels of the fixed example")
        })
        .collect();
    r.check(cliques.cliques == want, || format!("cliques {:?}", cliques.cliques));
    let seps = clique_separators(&g).expect("chordal");
    r.check(
        seps == vec![label_set(&g, &["b", "c", "e"]), label_set(&g, &["b", "e", "g"])],
        || format!("separators {seps:?}"),
    );
    audit.graph(&g);
    let v = recognize_with(&g, RecognizeOptions::default());
    r.check(v.kind() == VerdictKind::PathGraph, || format!("verdict {}", v.kind().as_str()));
    r.check(verdict_is_sound(&v), || "evidence does not validate".into());
    if let Verdict::PathGraph { tree, .. } = &v {
        let ok = tree
            .as_ref()
            .is_some_and(|t| verify_clique_path_tree(&g, t).unwrap_or(false));
        r.check(ok, || "missing or invalid clique path tree".into());
    }
    match oracle_is_path_graph(&g, ORACLE_CLIQUE_CAP) {
        Ok(Some(real)) => r.check(
            verify_clique_path_tree(&g, &real.host_tree).unwrap_or(false),
            || "oracle tree invalid".into(),
        ),
        other => r.fail(format!("oracle answered {other:?}")),
    }
    let all = catalog(&Family::ALL, FORBIDDEN_SEARCH_CAP);
    for q in &seps {
        let p = build_profile(&g, q).expect("separator");
        let found = find_forbidden(&ColoredGraph::from_profile(&p.relations), &all, true);
        r.check(matches!(found, Ok(None)), || "template found in a path graph".into());
    }
    r
}

fn suite_triple_fan(audit: &mut LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(2, "full-triple certificate");
    let (g, _) = parse_edge_list(TRIPLE_FAN).expect("fixed example parses");
    audit.graph(&g);
    let cliques = maximal_cliques(&g).expect("chordal").len();
    r.check(cliques == 4, || format!("{cliques} cliques, expected 4 (16 labeled trees)"));
    match recognize_with(&g, no_tree()) {
        Verdict::NotPathGraph(ob) => {
            r.check(verify_certificate(&ob.profile, &ob.witness), || "certificate rejected".into());
            let at_x = matches!(&ob.witness.kind,
                WitnessKind::FullAntipodalTriple(t) if t.witness_vertex.as_str() == "x");
            r.check(at_x, || format!("witness {:?}", ob.witness.kind));
            let q = label_set(&g, &["x", "y1", "y2", "y3"]);
            r.check(ob.profile.separator == q, || "certificate at another separator".into());
            let gp = g_plus(&g);
            let raw = build_profile(&gp, &carry(&g, &q, &gp)).expect("still a separator");
            audit.profile(&raw);
            let w0 = catalog(&[Family::W0], 4);
            let hit = find_forbidden(&ColoredGraph::from_profile(&raw.relations), &w0, true);
            r.check(
                matches!(hit, Ok(Some(ref e)) if e.param == 1),
                || format!("pendant graph gave {hit:?} instead of W0_3"),
            );
        }
        other => r.fail(format!("verdict {}", other.kind().as_str())),
    }
    r.check(
        oracle_decides_path(&g, ORACLE_CLIQUE_CAP) == Ok(false),
        || "oracle accepts the triple-fan".into(),
    );
    r
}

fn suite_differential(corpus: &Corpus, audit: &mut LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(3, "differential against the oracle");
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut run = |r: &mut SuiteReport, g: &SimpleGraph| {
        audit.graph(g);
        let v = recognize_with(g, no_tree());
        *tally.entry(certificate_name(&v)).or_default() += 1;
        let oracle = oracle_decides_path(g, ORACLE_CLIQUE_CAP).expect("within the clique cap");
        r.check(oracle == (v.kind() == VerdictKind::PathGraph), || {
            format!("oracle {oracle}, recognizer {}: {}", v.kind().as_str(), g.to_edge_list().replace('\n', "; "))
        });
        r.check(verdict_is_sound(&v), || format!("unsound verdict: {}", g.to_edge_list().replace('\n', "; ")));
    };
    for g in &corpus.exhaustive {
        run(&mut r, g);
    }
    for g in corpus.sampled() {
        run(&mut r, g);
    }
    let six = corpus.exhaustive.iter().filter(|g| g.vertex_count() == 6).count();
    r.counts.insert("exhaustive", corpus.exhaustive.len());
    r.counts.insert("exhaustive_six", six);
    r.counts.insert("subtree", corpus.subtree.len());
    r.counts.insert("growth", corpus.growth.len());
    r.counts.insert("not_path", corpus.exhaustive.len() + corpus.subtree.len() + corpus.growth.len() - tally.get("path_graph").copied().unwrap_or(0));
    r.note(format!(
        "{} exhaustive, {} subtree-model, {} clique-growth graphs",
        corpus.exhaustive.len(),
        corpus.subtree.len(),
        corpus.growth.len()
    ));
    r.note(format!("verdicts and certificates: {tally:?}"));
    r
}

fn suite_strong_weak(cfg: &SelftestConfig, audit: &mut LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(4, "strong and weak colorability agree");
    let mut rng = rng_from_seed(cfg.seed ^ 0x5eed_0004);
    let (mut colorable, mut triples) = (0, 0);
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..2 * cfg.samples {
        let q_size = rng.gen_range(2..=5);
        let parts = rng.gen_range(2..=6);
        let (g, q) = separator_graph(q_size, parts, 3, &mut rng);
        let raw = build_profile(&g, &q).expect("generated separator");
        audit.profile(&raw);
        let strong = strong_coloring_bruteforce(&quotient_profile(&raw).relations)
            .expect("at most six parts")
            .is_some();
        let weak = check_separator(&raw);
        if find_full_antipodal_triple(&quotient_profile(&raw).relations).is_some() {
            triples += 1;
        }
        match &weak {
            Ok(ev) => {
                colorable += 1;
                r.check(
                    validate_weak_coloring(&ev.profile.relations, &ev.partition, &ev.coloring).is_ok(),
                    || "weak coloring fails validation".into(),
                );
            }
            Err(ob) => {
                *kinds.entry(certificate_name(&Verdict::NotPathGraph(ob.clone()))).or_default() += 1;
                r.check(verify_certificate(&ob.profile, &ob.witness), || "certificate rejected".into())
            }
        }
        r.check(strong == weak.is_ok(), || {
            format!("strong {strong}, weak {}: {}", weak.is_ok(), g.to_edge_list().replace('\n', "; "))
        });
    }
    r.counts.insert("profiles", 2 * cfg.samples);
    r.note(format!(
        "{} profiles: {colorable} colorable, {triples} with a full triple, certificates {kinds:?}",
        2 * cfg.samples
    ));
    r
}

/// Whether one statement finds an obstruction at a profile; `None` when the
/// profile is over the part cap.
fn obstructed(p: &SeparationProfile, templates: &[Template], induced: bool, triple: bool) -> Option<bool> {
    if p.part_count() > STATEMENT_PART_CAP {
        return None;
    }
    if triple && find_full_antipodal_triple(&p.relations).is_some() {
        return Some(true);
    }
    let hit = find_forbidden(&ColoredGraph::from_profile(&p.relations), templates, induced)
        .expect("under the search cap");
    Some(hit.is_some())
}

fn template_catalog(families: &[Family], cfg: &SelftestConfig) -> Vec<Template> {
    catalog(families, FORBIDDEN_SEARCH_CAP)
        .into_iter()
        .map(|t| match cfg.mutation {
            Some(m) => m.apply(t),
            None => t,
        })
        .collect()
}

fn suite_statements(corpus: &Corpus, cfg: &SelftestConfig, audit: &mut LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(5, "forbidden-subgraph statements");
    let basic = template_catalog(&Family::BASIC, cfg);
    let all = template_catalog(&Family::ALL, cfg);
    const NAMES: [&str; 3] = ["subgraph (b)", "induced (d)", "pendant induced (e)"];
    let mut nonpath = 0;
    'graphs: for g in corpus.sampled() {
        let path = recognize_with(g, no_tree()).kind() == VerdictKind::PathGraph;
        let gp = g_plus(g);
        // [statement][raw, quotient]
        let mut found = [[false; 2]; 3];
        let mut profiles = Vec::new();
        for q in clique_separators(g).expect("chordal") {
            let raw = build_profile(g, &q).expect("separator");
            let raw_plus = build_profile(&gp, &carry(g, &q, &gp)).expect("separator of the pendant graph");
            let views = [(raw.clone(), raw_plus.clone()), (quotient_profile(&raw), quotient_profile(&raw_plus))];
            for (k, (p, pp)) in views.iter().enumerate() {
                let b = obstructed(p, &basic, false, true);
                let d = obstructed(p, &all, true, true);
                let e = obstructed(pp, &all, true, false);
                match (b, d, e) {
                    (Some(b), Some(d), Some(e)) => {
                        found[0][k] |= b;
                        found[1][k] |= d;
                        found[2][k] |= e;
                    }
                    _ => {
                        r.skipped += 1;
                        continue 'graphs;
                    }
                }
            }
            profiles.push(raw_plus);
        }
        for p in &profiles {
            audit.profile(p);
        }
        if !path {
            nonpath += 1;
        }
        for (s, name) in NAMES.iter().enumerate() {
            for (k, view) in ["raw", "quotient"].iter().enumerate() {
                r.check(found[s][k] != path, || {
                    format!(
                        "{name} on {view} profiles says {}, recognizer says {}: {}",
                        if found[s][k] { "obstructed" } else { "clean" },
                        if path { "path graph" } else { "not a path graph" },
                        g.to_edge_list().replace('\n', "; ")
                    )
                });
            }
        }
    }
    r.counts.insert("graphs", r.checked / 6);
    r.counts.insert("not_path", nonpath);
    r.note(format!(
        "{} graphs compared ({nonpath} not path graphs), {} over {STATEMENT_PART_CAP} parts",
        r.checked / 6,
        r.skipped
    ));
    r
}

fn suite_pendants(corpus: &Corpus, audit: &mut LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(6, "pendant-graph invariance");
    for g in corpus.sampled() {
        let gp = g_plus(g);
        audit.graph(&gp);
        let a = recognize_with(g, no_tree()).kind();
        let b = recognize_with(&gp, no_tree()).kind();
        r.check(a == b, || {
            format!("{} versus {} for {}", a.as_str(), b.as_str(), g.to_edge_list().replace('\n', "; "))
        });
    }
    r.counts.insert("graphs", r.checked);
    r
}

fn suite_laws(audit: &LawAudit) -> SuiteReport {
    let mut r = SuiteReport::new(7, "relation laws");
    r.checked = audit.profiles;
    r.failures = audit.violations;
    r.elapsed = audit.elapsed;
    r.details = audit.examples.iter().map(|e| format!("failure: {e}")).collect();
    r.counts.insert("profiles", audit.profiles);
    r.counts.insert("triple_free", audit.triple_free);
    r.note(format!(
        "{} profiles, {} triple-free quotients, {} odd-cycle chord checks",
        audit.profiles, audit.triple_free, audit.chord_checks
    ));
    r
}

fn sanity_members(cfg: &SelftestConfig) -> Vec<Template> {
    let mut out = Vec::new();
    for (f, hi) in SANITY_MAX_PARAM {
        for k in f.min_param()..=hi {
            let t = crate::template::make_template(f, k).expect("in range");
            out.push(match cfg.mutation {
                Some(m) => m.apply(t),
                None => t,
            });
        }
    }
    out
}

fn strongly_colorable(g: &ColoredGraph) -> bool {
    strong_coloring_search(&g.full_profile(), FORBIDDEN_SEARCH_CAP)
        .expect("templates stay under the cap")
        .is_some()
}

/// Failed checks of one candidate template against the rest of the list.
fn template_faults(t: &ColoredGraph, others: &[&ColoredGraph]) -> Vec<&'static str> {
    let mut out = Vec::new();
    if strongly_colorable(t) {
        out.push("strongly colorable");
    }
    if others.iter().any(|o| colored_isomorphic(o, t)) {
        out.push("isomorphic to another member");
    }
    if (0..t.vertex_count()).any(|v| !strongly_colorable(&t.without_vertex(v))) {
        out.push("not vertex-minimal");
    }
    if others
        .iter()
        .any(|o| o.vertex_count() < t.vertex_count() && find_embedding(t, o, true).is_some())
    {
        out.push("contains a smaller member");
    }
    out
}

/// Triple-free separator profiles from the separator model in which exactly
/// one of `members` occurs as an induced subgraph, one per member.
fn realizations(members: &[Template], seed: u64) -> BTreeMap<String, ColoredGraph> {
    let mut rng = rng_from_seed(seed ^ 0x5eed_0008);
    let mut out = BTreeMap::new();
    for _ in 0..50_000 {
        if out.len() == members.len() {
            break;
        }
        let q_size = rng.gen_range(3..=5);
        let parts = rng.gen_range(3..=8);
        let (g, q) = separator_graph(q_size, parts, 3, &mut rng);
        let p = quotient_profile(&build_profile(&g, &q).expect("generated separator"));
        if p.part_count() > STATEMENT_PART_CAP || find_full_antipodal_triple(&p.relations).is_some() {
            continue;
        }
        let h = ColoredGraph::from_profile(&p.relations);
        let hits: Vec<&Template> = members
            .iter()
            .filter(|t| find_embedding(&h, &t.graph, true).is_some())
            .collect();
        if let [t] = hits.as_slice() {
            out.entry(t.name()).or_insert(h);
        }
    }
    out
}

fn suite_templates(cfg: &SelftestConfig) -> SuiteReport {
    let mut r = SuiteReport::new(8, "template sanity");
    let members = sanity_members(cfg);
    for (i, t) in members.iter().enumerate() {
        let others: Vec<&ColoredGraph> = members
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, o)| &o.graph)
            .collect();
        let faults = template_faults(&t.graph, &others);
        r.check(faults.is_empty(), || format!("{}: {}", t.name(), faults.join(", ")));
    }

    // Mutation smoke test: every single-edge flip of some member of each
    // family must be caught, by the checks above or by a realized profile
    // that then escapes the induced statement.
    let seen = realizations(&members, cfg.seed);
    let (mut flips, mut caught) = (0, 0);
    for (family, _) in SANITY_MAX_PARAM {
        let mut family_ok = false;
        let mut summary = Vec::new();
        for (i, t) in members.iter().enumerate().filter(|(_, t)| t.family == family) {
            let mut all_caught = true;
            for e in 0..t.graph.edge_count() {
                let m = t.with_flipped_edge(e);
                let others: Vec<&ColoredGraph> = members
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, o)| &o.graph)
                    .collect();
                let by_checks = !template_faults(&m.graph, &others).is_empty();
                let by_realization = seen.get(&t.name()).is_some_and(|h| {
                    let mut list: Vec<&ColoredGraph> = others.clone();
                    list.push(&m.graph);
                    !list.iter().any(|o| find_embedding(h, o, true).is_some())
                });
                flips += 1;
                if by_checks || by_realization {
                    caught += 1;
                } else {
                    all_caught = false;
                    summary.push(format!("{} edge {e}", t.name()));
                }
            }
            family_ok |= all_caught;
        }
        r.check(family_ok, || format!("{family}: no member catches all flips"));
        if !summary.is_empty() {
            r.note(format!("{family}: uncaught flips {}", summary.join(", ")));
        }
    }
    r.counts.insert("members", members.len());
    r.counts.insert("flips", flips);
    r.counts.insert("caught", caught);
    r.note(format!(
        "{} members, {caught}/{flips} single-edge flips caught, realized: {}",
        members.len(),
        seen.keys().cloned().collect::<Vec<_>>().join(" ")
    ));
    r
}

/// Runs all eight suites in order.
pub fn run_selftest(cfg: &SelftestConfig) -> Vec<SuiteReport> {
    fn timed(f: impl FnOnce() -> SuiteReport) -> SuiteReport {
        let start = Instant::now();
        let mut r = f();
        r.elapsed = start.elapsed();
        r
    }
    let mut audit = LawAudit::default();
    let mut reports = Vec::with_capacity(8);
    reports.push(timed(|| suite_worked_example(&mut audit)));
    reports.push(timed(|| suite_triple_fan(&mut audit)));
    // the differential suite pays for building the shared corpus
    let start = Instant::now();
    let corpus = Corpus::build(cfg);
    let build = start.elapsed();
    let mut r = timed(|| suite_differential(&corpus, &mut audit));
    r.elapsed += build;
    reports.push(r);
    reports.push(timed(|| suite_strong_weak(cfg, &mut audit)));
    reports.push(timed(|| suite_statements(&corpus, cfg, &mut audit)));
    reports.push(timed(|| suite_pendants(&corpus, &mut audit)));
    reports.push(suite_laws(&audit));
    reports.push(timed(|| suite_templates(cfg)));
    reports
}
