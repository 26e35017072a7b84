//! JSON interchange formats. Ids are strings in files and dense integers in
//! memory; objects of maps are read and written in sorted key order.

use std::collections::{BTreeMap, BTreeSet};

use quantalib_core::bitset::BitSet;
use quantalib_core::constructions::{groupoid_quantale, FiniteGroupoid};
use quantalib_core::qcat::{QCategory, QTypedSet};
use quantalib_core::sites::{closed_crible_quantaloid, FiniteCategory, FiniteSite, GrothendieckTopology};
use quantalib_core::{corpus, Elt, Error, FiniteQuantaloid, FiniteSupLattice};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Schema(String),
    #[error("{context}: {source}")]
    Invalid { context: String, source: Error },
}

impl FormatError {
    fn schema(m: impl Into<String>) -> Self {
        FormatError::Schema(m.into())
    }

    /// The underlying library error, if any.
    pub fn core(&self) -> Option<&Error> {
        match self {
            FormatError::Invalid { source, .. } => Some(source),
            _ => None,
        }
    }
}

pub type FormatResult<T> = Result<T, FormatError>;

fn invalid(context: impl Into<String>) -> impl FnOnce(Error) -> FormatError {
    let context = context.into();
    move |source| FormatError::Invalid { context, source }
}

fn parse<T: DeserializeOwned>(text: &str) -> FormatResult<T> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    /// Generating pairs `a ≤ b`; the reflexive-transitive closure is taken on load.
    pub leq: Vec<(String, String)>,
}

impl LatticeJson {
    pub fn load(&self, context: &str) -> FormatResult<FiniteSupLattice> {
        let index = |e: &str| {
            self.elements
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| FormatError::schema(format!("{context}: unknown element {e:?}")))
        };
        let gens = self.leq.iter().map(|(a, b)| Ok((index(a)?, index(b)?))).collect::<FormatResult<Vec<_>>>()?;
        FiniteSupLattice::from_generating_order(self.elements.clone(), &gens).map_err(invalid(context))
    }

    /// Elements in order and the covering pairs of the order.
    pub fn export(l: &FiniteSupLattice) -> Self {
        let mut leq = Vec::new();
        for a in l.elements() {
            for b in l.elements() {
                let strict = |x: Elt, y: Elt| x != y && l.leq(x, y);
                if strict(a, b) && !l.elements().any(|c| strict(a, c) && strict(c, b)) {
                    leq.push((l.name(a).to_string(), l.name(b).to_string()));
                }
            }
        }
        LatticeJson { elements: l.names().to_vec(), leq }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuantaloidJson {
    pub objects: Vec<String>,
    /// Keyed `"X->Y"`.
    pub homs: BTreeMap<String, LatticeJson>,
    /// Keyed `"X->Y->Z"`; entries `[g, f, g∘f]` with `f: X -> Y`, `g: Y -> Z`.
    pub comp: BTreeMap<String, Vec<(String, String, String)>>,
    pub id: BTreeMap<String, String>,
    /// Keyed `"X->Y"`; entries `[f, f°]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<BTreeMap<String, Vec<(String, String)>>>,
}

fn take<'a, T>(map: &'a BTreeMap<String, T>, key: &str, what: &str) -> FormatResult<&'a T> {
    map.get(key).ok_or_else(|| FormatError::schema(format!("missing {what} entry {key:?}")))
}

fn check_keys<T>(map: &BTreeMap<String, T>, expected: &BTreeSet<String>, what: &str) -> FormatResult<()> {
    match map.keys().find(|k| !expected.contains(*k)) {
        Some(k) => Err(FormatError::schema(format!("unexpected {what} key {k:?}"))),
        None => Ok(()),
    }
}

impl QuantaloidJson {
    pub fn load(&self) -> FormatResult<FiniteQuantaloid> {
        let names = &self.objects;
        let n = names.len();
        if let Some(bad) = names.iter().find(|o| o.contains("->")) {
            return Err(FormatError::schema(format!("object id {bad:?} contains \"->\"")));
        }
        let pair = |x: usize, y: usize| format!("{}->{}", names[x], names[y]);
        let pairs: BTreeSet<String> = (0..n * n).map(|i| pair(i / n, i % n)).collect();
        let triples: BTreeSet<String> =
            (0..n * n * n).map(|i| format!("{}->{}", pair(i / (n * n), i / n % n), names[i % n])).collect();
        check_keys(&self.homs, &pairs, "hom")?;
        check_keys(&self.comp, &triples, "composition")?;
        check_keys(&self.id, &names.iter().cloned().collect(), "identity")?;
        let mut homs = Vec::with_capacity(n * n);
        for i in 0..n * n {
            let key = pair(i / n, i % n);
            homs.push(take(&self.homs, &key, "hom")?.load(&format!("hom {key}"))?);
        }
        let resolve = |l: &FiniteSupLattice, e: &str, ctx: &str| {
            l.index_of(e).ok_or_else(|| FormatError::schema(format!("{ctx}: unknown element {e:?}")))
        };
        let mut ids = Vec::with_capacity(n);
        for x in 0..n {
            ids.push(resolve(&homs[x * n + x], take(&self.id, &names[x], "identity")?, &format!("id {}", names[x]))?);
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let key = format!("{}->{}", pair(x, y), names[z]);
                    let (hxy, hyz, hxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
                    let mut table: Vec<Option<u32>> = vec![None; hxy.len() * hyz.len()];
                    for (g, f, h) in take(&self.comp, &key, "composition")? {
                        let ctx = format!("comp {key}");
                        let (g, f, h) = (resolve(hyz, g, &ctx)?, resolve(hxy, f, &ctx)?, resolve(hxz, h, &ctx)?);
                        let slot = &mut table[g * hxy.len() + f];
                        if slot.replace(h as u32).is_some_and(|old| old != h as u32) {
                            return Err(FormatError::schema(format!("{ctx}: conflicting entries for {g}, {f}")));
                        }
                    }
                    if let Some(i) = table.iter().position(Option::is_none) {
                        let (g, f) = (i / hxy.len(), i % hxy.len());
                        return Err(FormatError::schema(format!(
                            "comp {key}: no entry for {:?} after {:?}",
                            hyz.name(g),
                            hxy.name(f)
                        )));
                    }
                    comp.push(table.into_iter().flatten().collect());
                }
            }
        }
        let q = FiniteQuantaloid::from_parts(names.clone(), homs, comp, ids, None).map_err(invalid("quantaloid"))?;
        let Some(inv) = &self.inv else { return Ok(q) };
        check_keys(inv, &pairs, "involution")?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n * n {
            let (x, y) = (i / n, i % n);
            let key = pair(x, y);
            let ctx = format!("inv {key}");
            let mut row = vec![None; q.hom(x, y).len()];
            for (f, g) in take(inv, &key, "involution")? {
                row[resolve(q.hom(x, y), f, &ctx)?] = Some(resolve(q.hom(y, x), g, &ctx)?);
            }
            table.push(
                row.into_iter()
                    .collect::<Option<Vec<Elt>>>()
                    .ok_or_else(|| FormatError::schema(format!("{ctx}: incomplete")))?,
            );
        }
        q.with_involution_table(table).map_err(invalid("involution"))
    }

    pub fn export(q: &FiniteQuantaloid) -> Self {
        let n = q.n();
        let name = |x: usize| q.object_name(x).to_string();
        let pair = |x: usize, y: usize| format!("{}->{}", name(x), name(y));
        let mut homs = BTreeMap::new();
        let mut comp = BTreeMap::new();
        for x in q.objects() {
            for y in q.objects() {
                homs.insert(pair(x, y), LatticeJson::export(q.hom(x, y)));
                for z in q.objects() {
                    let entries = q
                        .morphisms(y, z)
                        .flat_map(|g| q.morphisms(x, y).map(move |f| (g, f)))
                        .map(|(g, f)| {
                            let h = q.c(g, f);
                            let e = |m: quantalib_core::Morphism| q.hom(m.src, m.dst).name(m.elt).to_string();
                            (e(g), e(f), e(h))
                        })
                        .collect();
                    comp.insert(format!("{}->{}", pair(x, y), name(z)), entries);
                }
            }
        }
        let id = q.objects().map(|x| (name(x), q.hom(x, x).name(q.id(x).elt).to_string())).collect();
        let inv = q.is_involutive().then(|| {
            (0..n * n)
                .map(|i| {
                    let (x, y) = (i / n, i % n);
                    let row = q
                        .morphisms(x, y)
                        .map(|f| (q.hom(x, y).name(f.elt).to_string(), q.hom(y, x).name(q.o(f).elt).to_string()))
                        .collect();
                    (pair(x, y), row)
                })
                .collect()
        });
        QuantaloidJson { objects: q.object_names().to_vec(), homs, comp, id, inv }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    /// Object id to its type, an object id of the base.
    pub objects: BTreeMap<String, String>,
    /// Entries `[y, x, A(y, x)]` with `A(y, x): type x -> type y`.
    pub hom: Vec<(String, String, String)>,
}

impl CategoryJson {
    pub fn load(&self, q: &FiniteQuantaloid) -> FormatResult<QCategory> {
        let names: Vec<String> = self.objects.keys().cloned().collect();
        let types = self
            .objects
            .values()
            .map(|t| q.resolve_object(t).map_err(invalid("category object type")))
            .collect::<FormatResult<Vec<_>>>()?;
        let n = names.len();
        let index = |o: &str| {
            names
                .iter()
                .position(|x| x == o)
                .ok_or_else(|| FormatError::schema(format!("unknown category object {o:?}")))
        };
        let mut hom = vec![None; n * n];
        for (y, x, e) in &self.hom {
            let (yi, xi) = (index(y)?, index(x)?);
            let l = q.hom(types[xi], types[yi]);
            let v =
                l.index_of(e).ok_or_else(|| FormatError::schema(format!("hom[{y}, {x}]: unknown element {e:?}")))?;
            if hom[yi * n + xi].replace(v).is_some_and(|old| old != v) {
                return Err(FormatError::schema(format!("hom[{y}, {x}] given twice")));
            }
        }
        let hom =
            hom.into_iter().collect::<Option<Vec<Elt>>>().ok_or_else(|| FormatError::schema("hom table incomplete"))?;
        let objects = QTypedSet::new(names, types).map_err(invalid("category objects"))?;
        QCategory::new(q, objects, hom).map_err(invalid("category"))
    }

    pub fn export(q: &FiniteQuantaloid, a: &QCategory) -> Self {
        let objects = (0..a.n()).map(|x| (a.name(x).to_string(), q.object_name(a.ty(x)).to_string())).collect();
        let mut hom = Vec::new();
        for y in 0..a.n() {
            for x in 0..a.n() {
                let m = a.at(y, x);
                hom.push((a.name(y).to_string(), a.name(x).to_string(), q.hom(m.src, m.dst).name(m.elt).to_string()));
            }
        }
        hom.sort();
        CategoryJson { objects, hom }
    }
}

/// Class representatives of a census, as categories over its base.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClassListJson {
    pub base: QuantaloidJson,
    pub classes: Vec<CategoryJson>,
}

impl ClassListJson {
    pub fn load(&self) -> FormatResult<(FiniteQuantaloid, Vec<QCategory>)> {
        let base = self.base.load()?;
        let classes = self.classes.iter().map(|c| c.load(&base)).collect::<FormatResult<_>>()?;
        Ok((base, classes))
    }

    pub fn export(base: &FiniteQuantaloid, classes: &[QCategory]) -> Self {
        ClassListJson {
            base: QuantaloidJson::export(base),
            classes: classes.iter().map(|a| CategoryJson::export(base, a)).collect(),
        }
    }
}

pub fn class_list_from_json(text: &str) -> FormatResult<(FiniteQuantaloid, Vec<QCategory>)> {
    parse::<ClassListJson>(text)?.load()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SiteJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    /// Entries `[g, f, g∘f]` for every composable pair.
    pub comp: Vec<(String, String, String)>,
    /// Covering families per object; each generates a sieve.
    #[serde(default)]
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
}

impl SiteJson {
    pub fn load(&self) -> FormatResult<FiniteSite> {
        let obj = |o: &str| {
            self.objects.iter().position(|x| x == o).ok_or_else(|| FormatError::schema(format!("unknown object {o:?}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok((a.id.clone(), obj(&a.src)?, obj(&a.tgt)?)))
            .collect::<FormatResult<Vec<_>>>()?;
        let arrow = |a: &str| {
            self.arrows
                .iter()
                .position(|x| x.id == a)
                .ok_or_else(|| FormatError::schema(format!("unknown arrow {a:?}")))
        };
        let k = arrows.len();
        let mut table = vec![None; k * k];
        for (g, f, h) in &self.comp {
            let (g, f, h) = (arrow(g)?, arrow(f)?, arrow(h)?);
            table[g * k + f] = Some(h);
        }
        let c =
            FiniteCategory::new(self.objects.clone(), arrows, |g, f| table[g * k + f]).map_err(invalid("category"))?;
        let mut gens = vec![Vec::new(); c.n()];
        for (x, families) in &self.covers {
            let xi = obj(x)?;
            for family in families {
                let mut fs = Vec::new();
                for a in family {
                    let ai = arrow(a)?;
                    if c.tgt(ai) != xi {
                        return Err(FormatError::schema(format!("cover of {x}: arrow {a} does not end at {x}")));
                    }
                    fs.push(ai);
                }
                gens[xi].push(c.sieve_generated(xi, fs));
            }
        }
        let topology = GrothendieckTopology::generated(&c, gens).map_err(invalid("topology"))?;
        Ok(FiniteSite { category: c, topology })
    }

    /// Every covering sieve is listed, so loading regenerates the same topology.
    pub fn export(site: &FiniteSite) -> Self {
        let c = &site.category;
        let arrows = (0..c.arrow_count())
            .map(|a| ArrowJson {
                id: c.arrows()[a].clone(),
                src: c.objects()[c.src(a)].clone(),
                tgt: c.objects()[c.tgt(a)].clone(),
            })
            .collect();
        let mut comp = Vec::new();
        for g in 0..c.arrow_count() {
            for f in 0..c.arrow_count() {
                if let Some(h) = c.compose(g, f) {
                    comp.push((c.arrows()[g].clone(), c.arrows()[f].clone(), c.arrows()[h].clone()));
                }
            }
        }
        let covers = (0..c.n()).map(|x| (c.objects()[x].clone(), site.describe_covers(x))).collect();
        SiteJson { objects: c.objects().to_vec(), arrows, comp, covers }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupoidJson {
    pub arrows: Vec<String>,
    /// Arrow id to object id; the objects are the sorted distinct endpoints.
    pub src: BTreeMap<String, String>,
    pub tgt: BTreeMap<String, String>,
    /// Entries `[g, f, g∘f]` for every composable pair.
    pub comp: Vec<(String, String, String)>,
    /// Optional `[f, f⁻¹]` pairs, checked against the computed inverses.
    #[serde(default)]
    pub inv: Vec<(String, String)>,
}

impl GroupoidJson {
    pub fn load(&self) -> FormatResult<FiniteGroupoid> {
        let objects: Vec<String> =
            self.src.values().chain(self.tgt.values()).cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let obj = |o: &String| objects.iter().position(|x| x == o).expect("collected above");
        let arrow = |a: &str| {
            self.arrows.iter().position(|x| x == a).ok_or_else(|| FormatError::schema(format!("unknown arrow {a:?}")))
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            let s = take(&self.src, a, "src")?;
            let t = take(&self.tgt, a, "tgt")?;
            arrows.push((a.clone(), obj(s), obj(t)));
        }
        let k = arrows.len();
        let mut table = vec![usize::MAX; k * k];
        for (g, f, h) in &self.comp {
            table[arrow(g)? * k + arrow(f)?] = arrow(h)?;
        }
        let g = FiniteGroupoid::new(objects, arrows, |g, f| table[g * k + f]).map_err(invalid("groupoid"))?;
        for (f, finv) in &self.inv {
            if g.inverse(arrow(f)?) != arrow(finv)? {
                return Err(FormatError::schema(format!("inv: {finv} is not the inverse of {f}")));
            }
        }
        Ok(g)
    }
}

/// Any structure a quantaloid can be read from.
#[derive(Clone, Debug)]
pub enum Input {
    Quantaloid(FiniteQuantaloid),
    Site(FiniteSite),
    Groupoid(FiniteGroupoid),
}

impl Input {
    /// The quantaloid itself, `R(C, J)` of a site, or the quantale of a groupoid.
    pub fn quantaloid(&self) -> FormatResult<FiniteQuantaloid> {
        match self {
            Input::Quantaloid(q) => Ok(q.clone()),
            Input::Site(s) => Ok(closed_crible_quantaloid(s).map_err(invalid("closed-crible quantaloid"))?.quantaloid),
            Input::Groupoid(g) => groupoid_quantale(g).map_err(invalid("groupoid quantale")),
        }
    }
}

/// Reads JSON text, dispatching on the keys present.
pub fn parse_input(text: &str) -> FormatResult<Input> {
    let value: serde_json::Value = parse(text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("homs") {
        Ok(Input::Quantaloid(parse::<QuantaloidJson>(text)?.load()?))
    } else if has("objects") && has("arrows") {
        Ok(Input::Site(parse::<SiteJson>(text)?.load()?))
    } else if has("src") && has("arrows") {
        Ok(Input::Groupoid(parse::<GroupoidJson>(text)?.load()?))
    } else {
        Err(FormatError::schema("expected a quantaloid, site or groupoid object"))
    }
}

/// A built-in name (quantaloid first, then site) or a path to a JSON file.
pub fn load_input(arg: &str) -> FormatResult<Input> {
    if let Some(q) = corpus::quantaloid_by_name(arg) {
        return Ok(Input::Quantaloid(q));
    }
    if let Some(s) = corpus::site_by_name(arg) {
        return Ok(Input::Site(s));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| std::io::Error::new(e.kind(), format!("{arg}: {e}")))?;
    parse_input(&text)
}

pub fn quantaloid_to_json(q: &FiniteQuantaloid) -> String {
    render(&QuantaloidJson::export(q))
}

pub fn quantaloid_from_json(text: &str) -> FormatResult<FiniteQuantaloid> {
    parse::<QuantaloidJson>(text)?.load()
}

pub fn site_to_json(s: &FiniteSite) -> String {
    render(&SiteJson::export(s))
}

pub fn site_from_json(text: &str) -> FormatResult<FiniteSite> {
    parse::<SiteJson>(text)?.load()
}

pub fn category_from_json(q: &FiniteQuantaloid, text: &str) -> FormatResult<QCategory> {
    parse::<CategoryJson>(text)?.load(q)
}

pub fn groupoid_from_json(text: &str) -> FormatResult<FiniteGroupoid> {
    parse::<GroupoidJson>(text)?.load()
}

/// Sieves named by their arrows, for comparing topologies across categories.
pub fn named_covers(site: &FiniteSite) -> BTreeMap<String, BTreeSet<BTreeSet<String>>> {
    let c = &site.category;
    (0..c.n())
        .map(|x| {
            let sets = site
                .topology
                .covers(x)
                .iter()
                .map(|s: &BitSet| s.iter().map(|a| c.arrows()[a].clone()).collect())
                .collect();
            (c.objects()[x].clone(), sets)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use quantalib_core::iso::{find_isomorphism, IsoConfig};

    #[test]
    fn corpus_quantaloids_round_trip() {
        for name in corpus::QUANTALOID_NAMES {
            let q = corpus::quantaloid_by_name(name).unwrap();
            let text = quantaloid_to_json(&q);
            let back = quantaloid_from_json(&text).unwrap();
            assert_eq!(back, q, "{name}");
            assert_eq!(quantaloid_to_json(&back), text);
        }
    }

    #[test]
    fn export_lists_covering_pairs_only() {
        let l = FiniteSupLattice::chain(&["0", "m", "1"]).unwrap();
        let j = LatticeJson::export(&l);
        assert_eq!(j.leq, [("0".to_string(), "m".to_string()), ("m".to_string(), "1".to_string())]);
        assert_eq!(j.load("t").unwrap(), l);
    }

    #[test]
    fn missing_composite_is_an_error() {
        let q = corpus::boolean();
        let mut j = QuantaloidJson::export(&q);
        j.comp.get_mut("*->*->*").unwrap().pop();
        let err = j.load().unwrap_err();
        assert!(matches!(err, FormatError::Schema(ref m) if m.contains("no entry")), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_input("{\n  \"objects\": [,\n}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn typed_errors_point_into_the_text() {
        let err = parse_input("{\"objects\": [\"*\"],\n \"homs\": 3, \"comp\": {}, \"id\": {}}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn law_breaking_table_is_rejected() {
        let mut j = QuantaloidJson::export(&corpus::chain_locale(3));
        for e in j.comp.get_mut("*->*->*").unwrap() {
            if e.0 == "1" && e.1 == "1" {
                e.2 = "m".into();
            }
        }
        assert!(matches!(j.load(), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn sites_round_trip() {
        for name in ["site2chain", "locale3"] {
            let s = corpus::site_by_name(name).unwrap();
            let text = site_to_json(&s);
            let back = site_from_json(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(site_to_json(&back), text);
        }
    }

    #[test]
    fn a_site_file_loads_as_its_crible_quantaloid() {
        let s = corpus::chain3_canonical_site();
        let q = parse_input(&site_to_json(&s)).unwrap().quantaloid().unwrap();
        let want = closed_crible_quantaloid(&s).unwrap().quantaloid;
        assert!(find_isomorphism(&q, &want, &IsoConfig::default()).unwrap().is_some());
    }

    #[test]
    fn groupoid_files_build_the_groupoid_quantale() {
        let text = r#"{"arrows": ["e", "g"], "src": {"e": "*", "g": "*"}, "tgt": {"e": "*", "g": "*"},
            "comp": [["e","e","e"], ["e","g","g"], ["g","e","g"], ["g","g","e"]], "inv": [["g", "g"]]}"#;
        let q = parse_input(text).unwrap().quantaloid().unwrap();
        assert!(find_isomorphism(&q, &corpus::z2(), &IsoConfig::default()).unwrap().is_some());
        let bad = text.replace(r#"[["g", "g"]]"#, r#"[["g", "e"]]"#);
        assert!(matches!(groupoid_from_json(&bad), Err(FormatError::Schema(_))));
    }

    #[test]
    fn categories_round_trip() {
        let q = corpus::chain_locale(3);
        let text =
            r#"{"objects": {"a": "*", "b": "*"}, "hom": [["a","a","1"], ["a","b","m"], ["b","a","m"], ["b","b","1"]]}"#;
        let a = category_from_json(&q, text).unwrap();
        assert_eq!(a.at(0, 1).elt, q.hom(0, 0).index_of("m").unwrap());
        let again = CategoryJson::export(&q, &a).load(&q).unwrap();
        assert_eq!(again, a);
        let bad = text.replace(r#"["a","a","1"]"#, r#"["a","a","m"]"#);
        assert!(category_from_json(&q, &bad).is_err());
    }

    #[test]
    fn empty_quantaloid_loads() {
        let q = quantaloid_from_json(r#"{"objects": [], "homs": {}, "comp": {}, "id": {}}"#).unwrap();
        assert_eq!(q.n(), 0);
    }
}
