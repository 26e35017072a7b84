//! The verification suites: one function per checked statement, each run over
//! a corpus of named quantaloids that can be mutated for fault injection.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use quantalib_core::completion::{
    cauchy_completion, is_cauchy_complete, symmetric_completion, yoneda_is_morita, PresheafConfig,
};
use quantalib_core::constructions::{
    category_to_projection, enumerate_sheaves, groupoid_quantale, morita_equivalence, projection_matrices,
    projection_to_category, CensusConfig, FiniteGroupoid, MoritaVerdict, SheafMode,
};
use quantalib_core::iso::{find_isomorphism, IsoConfig};
use quantalib_core::qcat::{categories_on, CategoryShape, QCategory};
use quantalib_core::quantaloid::{ssi, CauchyBilateralConfig, Splitting};
use quantalib_core::sites::{canonical_site_of_locale, closed_crible_quantaloid, topology_from_quantaloid, FiniteSite};
use quantalib_core::{corpus, Elt, FiniteQuantaloid, FiniteSupLattice, Obj};
use serde_json::json;

use crate::oracle::{count_gsets_by_elements, count_gsets_by_generators, count_locale_sheaves};
use crate::report::{Report, Verdict};

/// Search limits shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub presheaf: PresheafConfig,
    pub max_morita: u64,
    pub cauchy: CauchyBilateralConfig,
    pub iso: IsoConfig,
    pub oracle_nodes: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            presheaf: PresheafConfig::default(),
            max_morita: 1 << 22,
            cauchy: CauchyBilateralConfig::default(),
            iso: IsoConfig::default(),
            oracle_nodes: 1 << 22,
        }
    }
}

/// A mutated composition-table entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fault {
    pub subject: String,
    /// `(x, y, z)` of the table `hom(y, z) × hom(x, y) -> hom(x, z)`.
    pub table: (Obj, Obj, Obj),
    pub g: Elt,
    pub f: Elt,
    pub original: Elt,
    pub replacement: Elt,
}

/// Named quantaloids the suites run over.
#[derive(Clone, Debug)]
pub struct Corpus {
    entries: Vec<(String, Arc<FiniteQuantaloid>)>,
    pub fault: Option<Fault>,
}

/// The residuation corpus.
pub const STANDARD: [&str; 6] = ["boolean", "locale3", "powerset2", "rel2", "z2-groupoid", "site2chain"];

impl Corpus {
    /// Every built-in quantaloid.
    pub fn builtin() -> Self {
        let entries = corpus::QUANTALOID_NAMES
            .iter()
            .map(|&n| (n.to_string(), Arc::new(corpus::quantaloid_by_name(n).expect("built-in"))))
            .collect();
        Corpus { entries, fault: None }
    }

    pub fn get(&self, name: &str) -> Option<&Arc<FiniteQuantaloid>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, q)| q)
    }

    fn expect(&self, name: &str) -> &Arc<FiniteQuantaloid> {
        self.get(name).unwrap_or_else(|| panic!("corpus entry {name}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Arc<FiniteQuantaloid>)> {
        self.entries.iter().map(|(n, q)| (n.as_str(), q))
    }

    /// Replaces `top ∘ top` in `hom(0, 0)` of the named entry by a different element.
    pub fn with_fault(mut self, name: &str) -> Option<Self> {
        let i = self.entries.iter().position(|(n, _)| n == name)?;
        let q = self.entries[i].1.as_ref().clone();
        if q.n() == 0 {
            return None;
        }
        let l = q.hom(0, 0);
        let (g, f) = (l.top(), l.top());
        let original = q.comp(0, 0, 0, g, f);
        let replacement = if original == l.bottom() { l.top() } else { l.bottom() };
        let len = l.len();
        let (objects, homs, mut comp, ids, inv) = q.into_parts();
        comp[0][g * len + f] = replacement as u32;
        let mutant = FiniteQuantaloid::from_parts_unchecked(objects, homs, comp, ids, inv).ok()?;
        self.entries[i].1 = Arc::new(mutant);
        self.fault = Some(Fault { subject: name.to_string(), table: (0, 0, 0), g, f, original, replacement });
        Some(self)
    }
}

type Run = fn(&Corpus, &SuiteConfig) -> Vec<Report>;

/// One checked statement with its time budget.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub number: u8,
    pub name: &'static str,
    pub limit: Duration,
    pub run: Run,
}

/// Outcome of running a criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub number: u8,
    pub name: &'static str,
    pub reports: Vec<Report>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn failures(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| matches!(r.verdict, Verdict::Fail | Verdict::Unknown))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none() && self.elapsed < self.limit
    }
}

impl Criterion {
    pub fn evaluate(&self, corpus: &Corpus, cfg: &SuiteConfig) -> Outcome {
        let start = Instant::now();
        let reports = (self.run)(corpus, cfg);
        Outcome { number: self.number, name: self.name, reports, elapsed: start.elapsed(), limit: self.limit }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { number: 1, name: "residuation", limit: secs(5), run: residuation },
    Criterion { number: 2, name: "modular-consequences", limit: secs(5), run: modular_consequences },
    Criterion { number: 3, name: "splitting-stability", limit: secs(10), run: splitting_stability },
    Criterion { number: 4, name: "semi-simple-vs-tabular", limit: secs(30), run: semi_simple_vs_tabular },
    Criterion { number: 5, name: "grothendieck-statements", limit: secs(60), run: grothendieck_statements },
    Criterion { number: 6, name: "top-criterion", limit: secs(10), run: top_criterion },
    Criterion { number: 7, name: "site-round-trip", limit: secs(60), run: site_round_trip },
    Criterion { number: 8, name: "locale-canonical-site", limit: secs(10), run: locale_canonical_site },
    Criterion { number: 9, name: "sheaf-census", limit: secs(120), run: sheaf_census },
    Criterion { number: 10, name: "projections-vs-categories", limit: secs(60), run: projections_vs_categories },
    Criterion { number: 11, name: "cauchy-bilateral-bridge", limit: secs(120), run: cauchy_bridge },
    Criterion { number: 12, name: "fault-injection", limit: secs(30), run: fault_injection },
];

/// Named groups of criteria plus extra invariants, as run by `verify --suite`.
pub fn suite(name: &str) -> Option<Vec<Criterion>> {
    let pick = |ns: &[u8]| ns.iter().map(|&n| CRITERIA[n as usize - 1]).collect::<Vec<_>>();
    Some(match name {
        "c-lemmas" => {
            let mut v = pick(&[11]);
            v.push(Criterion {
                number: 0,
                name: "completion-invariants",
                limit: secs(120),
                run: completion_invariants,
            });
            v
        }
        "d-theorems" => pick(&[1, 2, 3, 7, 8]),
        "e-theorems" => pick(&[4, 5, 6, 10]),
        "walters" => pick(&[9]),
        "all" => {
            let mut v = suite("c-lemmas")?;
            v.extend(pick(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12]));
            v
        }
        _ => return None,
    })
}

pub const SUITE_NAMES: [&str; 5] = ["c-lemmas", "d-theorems", "e-theorems", "walters", "all"];

fn involutive(c: &Corpus) -> impl Iterator<Item = (&str, &Arc<FiniteQuantaloid>)> {
    c.iter().filter(|(_, q)| q.is_involutive())
}

/// Involutive entries satisfying the modular law.
fn modular(c: &Corpus) -> Vec<(&str, &Arc<FiniteQuantaloid>)> {
    involutive(c).filter(|(_, q)| q.modular_violation().is_ok_and(|v| v.is_none())).collect()
}

#[allow(clippy::result_large_err)]
fn split(name: &str, q: &FiniteQuantaloid, check: &str) -> Result<Arc<Splitting>, Report> {
    ssi(q).map(Arc::new).map_err(|e| Report::from_error(name, check, &e))
}

/// Residuation laws for every triple of morphisms.
pub fn residuation(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    STANDARD
        .iter()
        .map(|&name| {
            let q = c.expect(name);
            Report::from_check(name, "residuation", q, Ok(q.residuation_violation()))
        })
        .collect()
}

/// Regularity, symmetric left adjoints and order-discrete maps on modular entries.
pub fn modular_consequences(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for (name, q) in modular(c) {
        out.push(Report::from_check(name, "regular", q, q.regularity_violation()));
        out.push(Report::from_check(name, "left-adjoints-symmetric", q, q.symmetric_left_adjoint_violation()));
        out.push(Report::from_check(name, "map-discrete", q, Ok(q.map_discrete_violation())));
    }
    out
}

/// `Q_ssi` inherits local localicity and modularity; its meets are those of `Q`.
pub fn splitting_stability(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for (name, q) in involutive(c) {
        let s = match split(name, q, "ssi") {
            Ok(s) => s,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let sq = Arc::new(s.quantaloid.clone());
        let within = Some("ssi");
        if q.locally_localic_violation().is_none() {
            let r = Report::pass(name, "ssi-locally-localic");
            out.push(match sq.locally_localic_violation() {
                None => r,
                Some(v) => r.with_violation(&sq, v, within).tap_fail(),
            });
        }
        if q.modular_violation().is_ok_and(|v| v.is_none()) {
            let r = Report::from_check(name, "ssi-modular", &sq, sq.modular_violation());
            out.push(if r.witness.is_some() { r.within("ssi") } else { r });
        }
        out.push(Report::from_check(name, "ssi-meets", q, Ok(s.meet_violation(q))));
    }
    out
}

trait ReportExt {
    fn tap_fail(self) -> Self;
    fn within(self, s: &str) -> Self;
}

impl ReportExt for Report {
    fn tap_fail(mut self) -> Self {
        self.verdict = Verdict::Fail;
        self
    }

    fn within(mut self, s: &str) -> Self {
        if let Some(w) = &mut self.witness {
            w.within = Some(s.to_string());
        }
        self
    }
}

/// `Q` is (weakly) semi-simple iff `Q_ssi` is (weakly) tabular, computed side by side.
pub fn semi_simple_vs_tabular(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for (name, q) in modular(c) {
        let s = match split(name, q, "ssi") {
            Ok(s) => s,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let sq = Arc::new(s.quantaloid.clone());
        let pairs = [
            ("semi-simple-iff-tabular", q.semi_simple_violation(), sq.tabular_violation()),
            (
                "weakly-semi-simple-iff-weakly-tabular",
                q.weakly_semi_simple_violation(),
                Ok(sq.weakly_tabular_violation()),
            ),
        ];
        for (check, left, right) in pairs {
            let (left, right) = match (left, right) {
                (Ok(l), Ok(r)) => (l, r),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(Report::from_error(name, check, &e));
                    continue;
                }
            };
            let holds = |v: &Option<_>| if v.is_none() { "holds" } else { "fails" };
            let detail = format!("{} on Q, {} on Q_ssi", holds(&left), holds(&right));
            let r = Report::expect(name, check, left.is_none() == right.is_none(), detail);
            out.push(match (left, right) {
                (Some(v), None) => r.with_violation(q, v, None),
                (None, Some(v)) => r.with_violation(&sq, v, Some("ssi")),
                _ => r,
            });
        }
    }
    out
}

/// The groupoid quantales checked besides the corpus.
fn extra_groupoids() -> Vec<(&'static str, FiniteQuantaloid)> {
    let z3 = groupoid_quantale(&FiniteGroupoid::cyclic(3).expect("Z/3")).expect("groupoid quantale");
    vec![("z3-groupoid", z3)]
}

/// Weak tabularity of `Q_ssi`, the closed-crible axioms on `Q_ssi` and the
/// definition agree on locales and groupoids, and all fail on `trunc3`.
pub fn grothendieck_statements(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    let mut subjects: Vec<(String, Arc<FiniteQuantaloid>)> = ["boolean", "locale3", "powerset2", "z2-groupoid", "rel2"]
        .iter()
        .map(|&n| (n.to_string(), Arc::clone(c.expect(n))))
        .collect();
    subjects.extend(extra_groupoids().into_iter().map(|(n, q)| (n.to_string(), Arc::new(q))));
    for (name, q) in &subjects {
        let t = match q.grothendieck_statements() {
            Ok(t) => t,
            Err(e) => {
                out.push(Report::from_error(name, "statements-agree", &e));
                continue;
            }
        };
        let (tabular, crible, definition) = (t.split_weakly_tabular(), t.split_closed_crible(), t.grothendieck());
        let detail = format!("weakly tabular {tabular}, closed crible {crible}, definition {definition}");
        let mut r = Report::expect(
            name.as_str(),
            "statements-agree",
            tabular == crible && crible == definition && definition && t.consistent(),
            detail,
        );
        let ssi_q = || ssi(q).ok().map(|s| Arc::new(s.quantaloid));
        if let Some(v) = t.modular.clone().or(t.locally_localic.clone()).or(t.weakly_semi_simple.clone()) {
            r = r.with_violation(q, v, None);
        } else if let (Some(v), Some(sq)) = (t.ssi_weakly_tabular.clone().or(t.ssi_closed_crible.clone()), ssi_q()) {
            r = r.with_violation(&sq, v, Some("ssi"));
        }
        out.push(r);
    }
    let name = "trunc3";
    let q = c.expect(name);
    match (q.grothendieck_statements(), ssi(q)) {
        (Ok(t), Ok(s)) => {
            let sq = Arc::new(s.quantaloid);
            let mut witnessed = 0;
            let mut push = |check: &str,
                            v: Option<quantalib_core::quantaloid::Violation>,
                            within: &Arc<FiniteQuantaloid>,
                            label| {
                let r = match v {
                    Some(v) => {
                        witnessed += 1;
                        Report::pass(name, check).with_violation(within, v, label)
                    }
                    None => Report::fail(name, check, "expected to fail"),
                };
                out.push(r);
            };
            push("definition-fails", t.modular.clone(), q, None);
            push("ssi-weakly-tabular-fails", t.ssi_weakly_tabular.clone(), &sq, Some("ssi"));
            push("ssi-closed-crible-fails", t.ssi_closed_crible.clone(), &sq, Some("ssi"));
            // the witnesses must be genuine
            let n = out.len();
            for r in &mut out[n - witnessed.min(3)..] {
                if r.witness.is_some() && !r.replays() {
                    r.verdict = Verdict::Fail;
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => out.push(Report::from_error(name, "definition-fails", &e)),
    }
    out
}

/// On one-object quantales the top criterion agrees with the definition.
pub fn top_criterion(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for (name, q) in involutive(c).filter(|(_, q)| q.n() == 1) {
        let r = match (q.grothendieck_via_top_violation(), q.grothendieck_violation()) {
            (Ok(top), Ok(def)) => {
                let detail = format!("top criterion {}, definition {}", top.is_none(), def.is_none());
                let r = Report::expect(name, "top-criterion-agrees", top.is_none() == def.is_none(), detail);
                match (top, def) {
                    (Some(v), None) | (None, Some(v)) => r.with_violation(q, v, None),
                    _ => r,
                }
            }
            (Err(e), _) | (_, Err(e)) => Report::from_error(name, "top-criterion-agrees", &e),
        };
        out.push(r);
    }
    out
}

/// `R(Map(Q), J(Q)) ≅ Q` for the crible quantaloids of the corpus.
pub fn site_round_trip(c: &Corpus, cfg: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for name in ["site2chain", "locale3-site"] {
        let q = c.expect(name);
        let check = "round-trip-isomorphic";
        let back = topology_from_quantaloid(q).and_then(|s| closed_crible_quantaloid(&s));
        let r = match back.and_then(|b| find_isomorphism(q, &b.quantaloid, &cfg.iso).map(|i| (b, i))) {
            Ok((b, Some(iso))) => Report::expect(name, check, iso.verify(q, &b.quantaloid), "").with_data(json!({
                "objects": b.quantaloid.n(),
                "morphisms": b.quantaloid.size(),
            })),
            Ok((_, None)) => Report::fail(name, check, "no isomorphism exists"),
            Err(e) => Report::from_error(name, check, &e),
        };
        // a mutated input is reported through its broken laws
        out.push(if r.verdict == Verdict::Fail { attach_law_violation(r, q) } else { r });
    }
    out
}

/// Adds a counterexample to a basic law, when `q` has one.
fn attach_law_violation(r: Report, q: &Arc<FiniteQuantaloid>) -> Report {
    match q.residuation_violation().or_else(|| q.modular_violation().ok().flatten()) {
        Some(v) => r.with_violation(q, v, None),
        None => r,
    }
}

/// Covers named by sets of source objects, per target object.
type Covers = BTreeMap<String, BTreeSet<BTreeSet<String>>>;

fn covers_by_source(site: &FiniteSite, rename: impl Fn(usize) -> String) -> Covers {
    let cat = &site.category;
    (0..cat.n())
        .map(|x| {
            let sets = site.topology.covers(x).iter().map(|s| s.iter().map(|a| rename(cat.src(a))).collect()).collect();
            (rename(x), sets)
        })
        .collect()
}

/// `ssi` of the 3-chain passes the closed-crible axioms and induces its canonical site.
pub fn locale_canonical_site(c: &Corpus, _: &SuiteConfig) -> Vec<Report> {
    let name = "locale3";
    let q = c.expect(name);
    let mut out = Vec::new();
    let s = match split(name, q, "ssi") {
        Ok(s) => s,
        Err(r) => return vec![r],
    };
    let sq = Arc::new(s.quantaloid.clone());
    out.push(Report::from_check(name, "ssi-closed-crible", &sq, Ok(sq.closed_crible_violation())).within("ssi"));
    let l = q.hom(0, 0);
    let canonical = match canonical_site_of_locale(l) {
        Ok(site) => site,
        Err(e) => {
            out.push(Report::from_error(name, "induced-site-is-canonical", &e));
            return out;
        }
    };
    let check = "induced-site-is-canonical";
    match topology_from_quantaloid(&sq) {
        Ok(induced) => {
            let element = |x: usize| l.name(s.idempotents[x].elt).to_string();
            let cat = &induced.category;
            let poset = (0..cat.n()).all(|y| {
                (0..cat.n()).all(|x| {
                    let n = cat.hom(x, y).count();
                    n == usize::from(l.leq(s.idempotents[x].elt, s.idempotents[y].elt))
                })
            });
            let got = covers_by_source(&induced, element);
            let want = covers_by_source(&canonical, |x| l.name(x).to_string());
            let detail = if poset { "" } else { "maps of Q_ssi do not form the order of L" };
            let r = Report::expect(name, check, poset && got == want, detail);
            out.push(if got == want || !poset {
                r
            } else {
                r.with_detail(format!("induced {got:?}, canonical {want:?}"))
            });
        }
        Err(e) => out.push(Report::from_error(name, check, &e)),
    }
    out
}

#[allow(clippy::result_large_err)]
fn census_count(name: &str, q: &FiniteQuantaloid, n: usize, cfg: &SuiteConfig) -> Result<(usize, usize), Report> {
    let census = CensusConfig { max_morita_nodes: cfg.max_morita, ..CensusConfig::default() };
    match enumerate_sheaves(q, n, SheafMode::Symmetric, &census) {
        Ok(c) if c.unknown > 0 => Err(Report::new(name, "census", Verdict::Unknown)
            .with_detail(format!("{} comparisons hit the Morita cap", c.unknown))),
        Ok(c) => Ok((c.classes.len(), c.candidates)),
        Err(e) => Err(Report::from_error(name, "census", &e)),
    }
}

/// Sheaf census against the finite-set and group-action oracles.
pub fn sheaf_census(c: &Corpus, cfg: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    let two = FiniteSupLattice::chain(&["0", "1"]).expect("chain");
    let trivial = FiniteGroupoid::cyclic(1).expect("trivial group");
    match census_count("boolean", c.expect("boolean"), 3, cfg) {
        Ok((classes, candidates)) => {
            let sets = count_gsets_by_elements(&trivial, 3, cfg.oracle_nodes);
            let sheaves = count_locale_sheaves(&two, 3, cfg.oracle_nodes);
            let ok = classes == 4
                && sets.as_ref().is_ok_and(|&s| s == classes)
                && sheaves.as_ref().is_ok_and(|&s| s == classes);
            let detail = format!("{classes} classes; sets of size <= 3: {sets:?}; locale sheaf oracle: {sheaves:?}");
            out.push(
                Report::expect("boolean", "census-matches-finite-sets", ok, detail)
                    .with_data(json!({"classes": classes, "candidates": candidates})),
            );
        }
        Err(r) => out.push(r),
    }
    let z2 = FiniteGroupoid::cyclic(2).expect("Z/2");
    match census_count("z2-groupoid", c.expect("z2-groupoid"), 2, cfg) {
        Ok((classes, candidates)) => {
            let by_elements = count_gsets_by_elements(&z2, 2, cfg.oracle_nodes);
            let by_generators = count_gsets_by_generators(&z2, 2, cfg.oracle_nodes);
            let detail = format!("{classes} classes; Z/2-sets with <= 2 elements: {by_elements:?}");
            out.push(
                Report::expect(
                    "z2-groupoid",
                    "census-matches-z2-sets-by-elements",
                    by_elements.as_ref().is_ok_and(|&e| e == classes),
                    detail,
                )
                .with_data(json!({"classes": classes, "candidates": candidates})),
            );
            let detail = format!("{classes} classes; Z/2-sets with <= 2 orbits: {by_generators:?}");
            out.push(Report::expect(
                "z2-groupoid",
                "census-matches-z2-sets-by-orbits",
                by_generators.as_ref().is_ok_and(|&e| e == classes),
                detail,
            ));
        }
        Err(r) => out.push(r),
    }
    out
}

fn type_sequences(n: usize, k: usize) -> Vec<Vec<Obj>> {
    (0..n.pow(k as u32))
        .map(|mut i| {
            (0..k)
                .map(|_| {
                    let t = i % n;
                    i /= n;
                    t
                })
                .collect()
        })
        .collect()
}

fn morita_classes(q: &FiniteQuantaloid, cs: &[QCategory], cap: u64) -> Option<usize> {
    let mut reps: Vec<&QCategory> = Vec::new();
    for c in cs {
        let mut merged = false;
        for r in &reps {
            match morita_equivalence(q, r, c, cap) {
                MoritaVerdict::Equivalent { .. } => {
                    merged = true;
                    break;
                }
                MoritaVerdict::Unknown => return None,
                MoritaVerdict::NotEquivalent => {}
            }
        }
        if !merged {
            reps.push(c);
        }
    }
    Some(reps.len())
}

/// Projection matrices over `Z/2` and normal symmetric categories over its splitting.
pub fn projections_vs_categories(c: &Corpus, cfg: &SuiteConfig) -> Vec<Report> {
    let name = "z2-groupoid";
    let q = c.expect(name);
    let s = match split(name, q, "ssi") {
        Ok(s) => s,
        Err(r) => return vec![r],
    };
    let sq = &s.quantaloid;
    let shape = CategoryShape { symmetric: true, normal: true, ..CategoryShape::default() };
    let mut out = Vec::new();
    let mut all_p = Vec::new();
    let mut all_c = Vec::new();
    for k in 1..=2 {
        let mut from_p = Vec::new();
        let mut round_trip = true;
        for types in type_sequences(q.n(), k) {
            let ps = match projection_matrices(q, &types, cfg.presheaf.max_nodes) {
                Ok(ps) => ps,
                Err(e) => return vec![Report::from_error(name, "projections", &e)],
            };
            for p in ps {
                match projection_to_category(q, &s, &p) {
                    Ok(cat) => {
                        round_trip &= category_to_projection(q, &s, &cat).is_ok_and(|back| back == p);
                        from_p.push(cat);
                    }
                    Err(e) => return vec![Report::from_error(name, "projection-to-category", &e)],
                }
            }
        }
        let mut cats = Vec::new();
        for types in type_sequences(sq.n(), k) {
            match categories_on(sq, &types, &shape) {
                Ok(cs) => cats.extend(cs),
                Err(e) => return vec![Report::from_error(name, "categories", &e)],
            }
        }
        let key = |a: &QCategory| (a.types().to_vec(), a.hom_table().to_vec());
        let mut a: Vec<_> = from_p.iter().map(key).collect();
        let mut b: Vec<_> = cats.iter().map(key).collect();
        a.sort();
        b.sort();
        out.push(Report::expect(
            name,
            format!("round-trip-{k}x{k}"),
            round_trip,
            format!("{} projections", from_p.len()),
        ));
        out.push(Report::expect(
            name,
            format!("bijection-{k}x{k}"),
            a == b,
            format!("{} categories from projections, {} normal symmetric categories", a.len(), b.len()),
        ));
        all_p.extend(from_p);
        all_c.extend(cats);
    }
    let classes = (morita_classes(sq, &all_p, cfg.max_morita), morita_classes(sq, &all_c, cfg.max_morita));
    out.push(match classes {
        (Some(x), Some(y)) => {
            Report::expect(name, "morita-classes", x == y, format!("{x} classes of projections, {y} of categories"))
        }
        _ => Report::new(name, "morita-classes", Verdict::Unknown).with_detail("Morita cap reached"),
    });
    out
}

/// Symmetric categories with up to `k` objects, types non-decreasing.
fn small_symmetric_categories(q: &FiniteQuantaloid, k: usize, cap: u64) -> quantalib_core::Result<Vec<QCategory>> {
    let shape = CategoryShape { symmetric: true, max_nodes: cap, ..CategoryShape::default() };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Obj>> = vec![Vec::new()];
    while let Some(types) = stack.pop() {
        out.extend(categories_on(q, &types, &shape)?);
        if types.len() < k {
            for t in types.last().copied().unwrap_or(0)..q.n() {
                let mut next = types.clone();
                next.push(t);
                stack.push(next);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Locally localic modular entries are Cauchy-bilateral, and there symmetric
/// and Cauchy completion pick the same presheaves.
pub fn cauchy_bridge(c: &Corpus, cfg: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for (name, q) in modular(c) {
        if q.locally_localic_violation().is_some() {
            continue;
        }
        out.push(Report::from_check(name, "cauchy-bilateral", q, q.cauchy_bilateral_violation(&cfg.cauchy)));
        let check = "symmetric-equals-cauchy-completion";
        let cats = match small_symmetric_categories(q, 3, cfg.presheaf.max_nodes) {
            Ok(cs) => cs,
            Err(e) => {
                out.push(Report::from_error(name, check, &e));
                continue;
            }
        };
        let mut mismatch = None;
        for a in &cats {
            match (symmetric_completion(q, a, &cfg.presheaf), cauchy_completion(q, a, &cfg.presheaf)) {
                (Ok(s), Ok(cc)) if s.presheaves == cc.presheaves => {}
                (Ok(_), Ok(_)) => {
                    mismatch =
                        Some(Report::fail(name, check, format!("differs on a category of types {:?}", a.types())));
                    break;
                }
                (Err(e), _) | (_, Err(e)) => {
                    mismatch = Some(Report::from_error(name, check, &e));
                    break;
                }
            }
        }
        out.push(
            mismatch.unwrap_or_else(|| Report::pass(name, check).with_detail(format!("{} categories", cats.len()))),
        );
    }
    out
}

/// Yoneda and idempotence of Cauchy completion on small categories.
pub fn completion_invariants(c: &Corpus, cfg: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for &name in &STANDARD {
        let q = c.expect(name);
        let shape = CategoryShape::default();
        let mut cats = Vec::new();
        for types in (0..=2).flat_map(|k| type_sequences(q.n(), k)) {
            match categories_on(q, &types, &shape) {
                Ok(cs) => cats.extend(cs),
                Err(e) => {
                    out.push(Report::from_error(name, "categories", &e));
                    break;
                }
            }
        }
        let mut bad = None;
        for a in &cats {
            let ok = cauchy_completion(q, a, &cfg.presheaf).and_then(|cc| {
                Ok(!cc.yoneda.contains(&usize::MAX)
                    && is_cauchy_complete(q, &cc.category, &cfg.presheaf)?
                    && yoneda_is_morita(q, a, &cfg.presheaf)?)
            });
            match ok {
                Ok(true) => {}
                Ok(false) => {
                    bad = Some(Report::fail(name, "cauchy-completion", format!("fails on types {:?}", a.types())));
                    break;
                }
                Err(e) => {
                    bad = Some(Report::from_error(name, "cauchy-completion", &e));
                    break;
                }
            }
        }
        out.push(bad.unwrap_or_else(|| {
            Report::pass(name, "cauchy-completion").with_detail(format!("{} categories with <= 2 objects", cats.len()))
        }));
    }
    out
}

/// First criterion among 1–11 that reports a failure confirmed by replay.
pub fn detect(corpus: &Corpus, cfg: &SuiteConfig) -> Option<(u8, Report)> {
    for crit in &CRITERIA[..11] {
        let reports = catch_unwind(AssertUnwindSafe(|| (crit.run)(corpus, cfg))).unwrap_or_default();
        if let Some(r) = reports.into_iter().find(|r| r.verdict == Verdict::Fail && r.replays()) {
            return Some((crit.number, r));
        }
    }
    None
}

/// Mutating `top ∘ top` of each standard entry is caught with a replayable counterexample.
pub fn fault_injection(c: &Corpus, cfg: &SuiteConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for &name in &STANDARD {
        let check = "fault-detected";
        let Some(mutant) = c.clone().with_fault(name) else {
            out.push(Report::fail(name, check, "could not inject a fault"));
            continue;
        };
        let f = mutant.fault.clone().expect("fault recorded");
        let hook = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let found = detect(&mutant, cfg);
        std::panic::set_hook(hook);
        let l = mutant.expect(name).hom(0, 0);
        let what = format!(
            "{} ∘ {} changed from {} to {}",
            l.name(f.g),
            l.name(f.f),
            l.name(f.original),
            l.name(f.replacement)
        );
        out.push(match found {
            Some((n, r)) => {
                let kind = r.witness.as_ref().map(|w| w.kind.clone()).unwrap_or_default();
                let mut p = Report::pass(name, check)
                    .with_detail(format!("{what}; caught by criterion {n} ({}: {kind})", r.check));
                p.witness = r.witness;
                p.replay = r.replay;
                p
            }
            None => Report::fail(name, check, format!("{what}; no suite failed")),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_changes_exactly_one_entry() {
        let c = Corpus::builtin();
        for name in STANDARD {
            let m = c.clone().with_fault(name).unwrap();
            let (a, b) = (c.get(name).unwrap(), m.get(name).unwrap());
            let diff: usize = (0..a.n())
                .flat_map(|x| (0..a.n()).flat_map(move |y| (0..a.n()).map(move |z| (x, y, z))))
                .map(|(x, y, z)| {
                    a.comp_table(x, y, z).iter().zip(b.comp_table(x, y, z)).filter(|(p, q)| p != q).count()
                })
                .sum();
            assert_eq!(diff, 1, "{name}");
        }
    }

    #[test]
    fn suites_have_distinct_criteria() {
        for s in SUITE_NAMES {
            let v = suite(s).unwrap();
            let nums: BTreeSet<u8> = v.iter().map(|c| c.number).collect();
            assert_eq!(nums.len(), v.len(), "{s}");
        }
        assert!(suite("nope").is_none());
    }

    #[test]
    fn residuation_suite_passes_and_catches_a_fault() {
        let cfg = SuiteConfig::default();
        let c = Corpus::builtin();
        assert!(residuation(&c, &cfg).iter().all(|r| r.verdict == Verdict::Pass));
        let m = c.with_fault("powerset2").unwrap();
        let bad: Vec<Report> = residuation(&m, &cfg).into_iter().filter(|r| r.verdict == Verdict::Fail).collect();
        assert_eq!(bad.len(), 1);
        assert!(bad[0].replays());
        assert!(!bad[0].replay.as_ref().unwrap().violation.replay(Corpus::builtin().get("powerset2").unwrap()));
    }
}
