//! Finite sites: categories, sieves and Grothendieck topologies.

mod crible;

pub use crible::{closed_crible_quantaloid, Crible, CribleCalculus, CribleQuantaloid, SpanIndex};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteSupLattice;
use crate::quantaloid::{FiniteQuantaloid, Morphism};

/// Dense arrow index in a [`FiniteCategory`].
pub type Arrow = usize;

/// A finite category. `compose(g, f)` is `g∘f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    comp: Vec<Option<Arrow>>,
    ids: Vec<Arrow>,
}

impl FiniteCategory {
    /// Validates identities and associativity. `comp(g, f)` is consulted for
    /// composable pairs only.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        comp: impl Fn(Arrow, Arrow) -> Option<Arrow>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSite(m));
        let k = arrows.len();
        let mut names = Vec::with_capacity(k);
        let (mut src, mut tgt) = (Vec::with_capacity(k), Vec::with_capacity(k));
        for (a, x, y) in arrows {
            if x >= objects.len() || y >= objects.len() {
                return bad(format!("arrow {a} has an unknown endpoint"));
            }
            if names.contains(&a) {
                return bad(format!("duplicate arrow id {a:?}"));
            }
            names.push(a);
            src.push(x);
            tgt.push(y);
        }
        let mut table = vec![None; k * k];
        for g in 0..k {
            for f in 0..k {
                if src[g] == tgt[f] {
                    match comp(g, f) {
                        Some(h) if h < k && src[h] == src[f] && tgt[h] == tgt[g] => table[g * k + f] = Some(h),
                        _ => return bad(format!("composite {}∘{} missing or ill-typed", names[g], names[f])),
                    }
                }
            }
        }
        let c = |g: usize, f: usize| table[g * k + f];
        let mut ids = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let id = (0..k).find(|&i| {
                src[i] == x
                    && tgt[i] == x
                    && (0..k).all(|f| tgt[f] != x || c(i, f) == Some(f))
                    && (0..k).all(|g| src[g] != x || c(g, i) == Some(g))
            });
            match id {
                Some(i) => ids.push(i),
                None => return bad(format!("object {} has no identity arrow", objects[x])),
            }
        }
        for f in 0..k {
            for g in 0..k {
                let Some(gf) = c(g, f) else { continue };
                for h in 0..k {
                    if let Some(hg) = c(h, g) {
                        if c(h, gf) != c(hg, f) {
                            return bad(format!(
                                "composition is not associative at {}, {}, {}",
                                names[f], names[g], names[h]
                            ));
                        }
                    }
                }
            }
        }
        Ok(FiniteCategory { objects, arrows: names, src, tgt, comp: table, ids })
    }

    /// A finite poset as a category: one arrow `x<=y` from `x` to `y` whenever `x ≤ y`.
    pub fn poset(l: &FiniteSupLattice) -> Self {
        let objects: Vec<String> = l.names().to_vec();
        let mut arrows = Vec::new();
        let mut index = vec![usize::MAX; l.len() * l.len()];
        for y in l.elements() {
            for x in l.elements() {
                if l.leq(x, y) {
                    index[x * l.len() + y] = arrows.len();
                    arrows.push((format!("{}<={}", l.name(x), l.name(y)), x, y));
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.1, a.2)).collect();
        FiniteCategory::new(objects, arrows, |g, f| Some(index[ends[f].0 * l.len() + ends[g].1]))
            .expect("a poset is a category")
    }

    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, name: &str) -> Option<Arrow> {
        self.arrows.iter().position(|a| a == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|a| a == name)
    }

    #[inline]
    pub fn src(&self, a: Arrow) -> usize {
        self.src[a]
    }

    #[inline]
    pub fn tgt(&self, a: Arrow) -> usize {
        self.tgt[a]
    }

    #[inline]
    pub fn compose(&self, g: Arrow, f: Arrow) -> Option<Arrow> {
        self.comp[g * self.arrows.len() + f]
    }

    pub fn identity(&self, x: usize) -> Arrow {
        self.ids[x]
    }

    /// Arrows with target `x`.
    pub fn arrows_into(&self, x: usize) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.tgt[a] == x)
    }

    /// Arrows `y -> x`.
    pub fn hom(&self, y: usize, x: usize) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.src[a] == y && self.tgt[a] == x)
    }

    /// Precomposition closure of a set of arrows into `x`.
    pub fn sieve_generated(&self, x: usize, gens: impl IntoIterator<Item = Arrow>) -> BitSet {
        let mut s = BitSet::new(self.arrow_count());
        for f in gens {
            debug_assert_eq!(self.tgt[f], x);
            for g in 0..self.arrow_count() {
                if let Some(fg) = self.compose(f, g) {
                    s.insert(fg);
                }
            }
        }
        s
    }

    pub fn is_sieve(&self, x: usize, s: &BitSet) -> bool {
        s.iter().all(|f| {
            self.tgt[f] == x && (0..self.arrow_count()).all(|g| self.compose(f, g).is_none_or(|fg| s.contains(fg)))
        })
    }

    pub fn maximal_sieve(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.arrow_count(), self.arrows_into(x))
    }

    /// `h*S = {f : h∘f ∈ S}` for `h: y -> x`.
    pub fn pullback(&self, h: Arrow, s: &BitSet) -> BitSet {
        let y = self.src[h];
        BitSet::from_indices(
            self.arrow_count(),
            self.arrows_into(y).filter(|&f| self.compose(h, f).is_some_and(|hf| s.contains(hf))),
        )
    }

    /// All sieves on `x` (unions of principal sieves), sorted.
    pub fn all_sieves(&self, x: usize, cap: usize) -> Result<Vec<BitSet>> {
        let principals: Vec<BitSet> = self.arrows_into(x).map(|f| self.sieve_generated(x, [f])).collect();
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        seen.insert(BitSet::new(self.arrow_count()));
        let mut frontier: Vec<BitSet> = seen.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for p in &principals {
                let mut t = s.clone();
                t.union_with(p);
                if seen.insert(t.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ResourceCap { what: "enumerating sieves", cap: cap as u64 });
                    }
                    frontier.push(t);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Default cap on the number of sieves per object.
pub const SIEVE_CAP: usize = 1 << 16;

/// A Grothendieck topology, stored as the covering sieves of each object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckTopology {
    covers: Vec<BTreeSet<BitSet>>,
}

impl GrothendieckTopology {
    /// Validates the three topology axioms.
    pub fn new(c: &FiniteCategory, covers: Vec<BTreeSet<BitSet>>) -> Result<Self> {
        let t = GrothendieckTopology { covers };
        if let Some(msg) = t.axiom_violation(c)? {
            return Err(Error::InvalidSite(msg));
        }
        Ok(t)
    }

    /// Only maximal sieves cover.
    pub fn trivial(c: &FiniteCategory) -> Self {
        let covers = (0..c.n()).map(|x| BTreeSet::from([c.maximal_sieve(x)])).collect();
        GrothendieckTopology { covers }
    }

    /// The smallest topology in which the given sieves cover.
    pub fn generated(c: &FiniteCategory, gens: Vec<Vec<BitSet>>) -> Result<Self> {
        if gens.len() != c.n() {
            return Err(Error::InvalidSite("one generator list per object expected".into()));
        }
        let all: Vec<Vec<BitSet>> = (0..c.n()).map(|x| c.all_sieves(x, SIEVE_CAP)).collect::<Result<_>>()?;
        let mut covers: Vec<BTreeSet<BitSet>> = (0..c.n()).map(|x| BTreeSet::from([c.maximal_sieve(x)])).collect();
        for (x, gs) in gens.into_iter().enumerate() {
            for s in gs {
                if !c.is_sieve(x, &s) {
                    return Err(Error::InvalidSite(format!("generator on {} is not a sieve", c.objects[x])));
                }
                covers[x].insert(s);
            }
        }
        loop {
            let mut changed = false;
            // stability
            for x in 0..c.n() {
                let snapshot: Vec<BitSet> = covers[x].iter().cloned().collect();
                for s in &snapshot {
                    for h in c.arrows_into(x) {
                        let p = c.pullback(h, s);
                        changed |= covers[c.src(h)].insert(p);
                    }
                }
            }
            // transitivity
            for x in 0..c.n() {
                for r in &all[x] {
                    if covers[x].contains(r) {
                        continue;
                    }
                    let local =
                        covers[x].iter().any(|s| s.iter().all(|h| covers[c.src(h)].contains(&c.pullback(h, r))));
                    if local {
                        covers[x].insert(r.clone());
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Self::new(c, covers)
    }

    pub fn covers(&self, x: usize) -> &BTreeSet<BitSet> {
        &self.covers[x]
    }

    pub fn is_covering(&self, x: usize, s: &BitSet) -> bool {
        self.covers[x].contains(s)
    }

    /// First violated axiom, if any.
    pub fn axiom_violation(&self, c: &FiniteCategory) -> Result<Option<String>> {
        if self.covers.len() != c.n() {
            return Ok(Some("one cover set per object expected".into()));
        }
        for x in 0..c.n() {
            let name = &c.objects[x];
            if !self.covers[x].contains(&c.maximal_sieve(x)) {
                return Ok(Some(format!("maximal sieve on {name} does not cover")));
            }
            for s in &self.covers[x] {
                if !c.is_sieve(x, s) {
                    return Ok(Some(format!("a cover of {name} is not a sieve")));
                }
                for h in c.arrows_into(x) {
                    if !self.covers[c.src(h)].contains(&c.pullback(h, s)) {
                        return Ok(Some(format!("covers of {name} are not stable under {}", c.arrows[h])));
                    }
                }
            }
            for r in c.all_sieves(x, SIEVE_CAP)? {
                if self.covers[x].contains(&r) {
                    continue;
                }
                let local =
                    self.covers[x].iter().any(|s| s.iter().all(|h| self.covers[c.src(h)].contains(&c.pullback(h, &r))));
                if local {
                    return Ok(Some(format!("covers of {name} are not transitive")));
                }
            }
        }
        Ok(None)
    }
}

/// A finite category with a Grothendieck topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSite {
    pub category: FiniteCategory,
    pub topology: GrothendieckTopology,
}

impl FiniteSite {
    pub fn trivial(category: FiniteCategory) -> Self {
        let topology = GrothendieckTopology::trivial(&category);
        FiniteSite { category, topology }
    }

    /// Named covering families, rendered for reports.
    pub fn describe_covers(&self, x: usize) -> Vec<Vec<String>> {
        self.topology.covers[x].iter().map(|s| s.iter().map(|a| self.category.arrows[a].clone()).collect()).collect()
    }
}

/// The canonical site of a finite locale: the poset with `(x_i)` covering `x` iff `⋁ x_i = x`.
pub fn canonical_site_of_locale(l: &FiniteSupLattice) -> Result<FiniteSite> {
    if !l.is_locale() {
        return Err(Error::NotApplicable("canonical site needs a locale".into()));
    }
    let c = FiniteCategory::poset(l);
    let mut covers = Vec::with_capacity(c.n());
    for x in 0..c.n() {
        let sieves = c.all_sieves(x, SIEVE_CAP)?;
        covers.push(sieves.into_iter().filter(|s| l.join(s.iter().map(|a| c.src(a))) == x).collect());
    }
    let topology = GrothendieckTopology::new(&c, covers)?;
    Ok(FiniteSite { category: c, topology })
}

/// The category of left adjoints of `q` with covers `1_X = ⋁ s s*`.
pub fn topology_from_quantaloid(q: &FiniteQuantaloid) -> Result<FiniteSite> {
    let mut maps: Vec<Morphism> = Vec::new();
    for y in q.objects() {
        for x in q.objects() {
            maps.extend(q.left_adjoints(x, y));
        }
    }
    let index = |m: Morphism| maps.iter().position(|&a| a == m);
    let arrows = maps.iter().map(|&m| (q.describe(m), m.src, m.dst)).collect();
    let c = FiniteCategory::new(q.object_names().to_vec(), arrows, |g, f| index(q.c(maps[g], maps[f])))
        .map_err(|e| Error::InternalConsistency(format!("left adjoints do not form a category: {e}")))?;
    let mut covers = Vec::with_capacity(c.n());
    for x in 0..c.n() {
        let sieves = c.all_sieves(x, SIEVE_CAP)?;
        let id = q.id(x);
        covers.push(
            sieves
                .into_iter()
                .filter(|s| q.join(x, x, s.iter().map(|a| q.c(maps[a], q.star(maps[a])))) == id)
                .collect(),
        );
    }
    let topology = GrothendieckTopology { covers };
    if q.is_closed_crible() {
        if let Some(msg) = topology.axiom_violation(&c)? {
            return Err(Error::InternalConsistency(format!("induced topology: {msg}")));
        }
    }
    Ok(FiniteSite { category: c, topology })
}

/// The morphism of `q` behind an arrow of a site built by [`topology_from_quantaloid`].
pub fn arrow_to_morphism(q: &FiniteQuantaloid, site: &FiniteSite, a: Arrow) -> Option<Morphism> {
    let c = &site.category;
    q.left_adjoints(c.src(a), c.tgt(a)).find(|&m| q.describe(m) == c.arrows[a])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn poset_category() {
        let l = FiniteSupLattice::chain(&["0", "m", "1"]).unwrap();
        let c = FiniteCategory::poset(&l);
        assert_eq!(c.arrow_count(), 6);
        let (a, b) = (c.arrow_index("0<=m").unwrap(), c.arrow_index("m<=1").unwrap());
        assert_eq!(c.compose(b, a), c.arrow_index("0<=1"));
        assert_eq!(c.all_sieves(2, 100).unwrap().len(), 4);
    }

    #[test]
    fn canonical_site_covers() {
        let l = FiniteSupLattice::chain(&["0", "m", "1"]).unwrap();
        let s = canonical_site_of_locale(&l).unwrap();
        let top = 2;
        // covers of 1 are the sieves containing 1<=1
        assert!(s.describe_covers(top).iter().all(|cv| cv.contains(&"1<=1".to_string())));
        assert_eq!(s.topology.covers(top).len(), 1);
        // the empty sieve covers 0
        assert!(s.topology.is_covering(0, &BitSet::new(s.category.arrow_count())));

        let p = FiniteSupLattice::powerset(&["a", "b"]).unwrap();
        let s = canonical_site_of_locale(&p).unwrap();
        let c = &s.category;
        let ab = c.object_index("{a,b}").unwrap();
        let fam = c.sieve_generated(ab, [c.arrow_index("{a}<={a,b}").unwrap(), c.arrow_index("{b}<={a,b}").unwrap()]);
        assert!(s.topology.is_covering(ab, &fam));
    }

    #[test]
    fn generated_topology_is_valid() {
        let l = FiniteSupLattice::chain(&["0", "1"]).unwrap();
        let c = FiniteCategory::poset(&l);
        let empty = BitSet::new(c.arrow_count());
        let t = GrothendieckTopology::generated(&c, vec![vec![], vec![empty.clone()]]).unwrap();
        // empty sieve covering 1 forces it to cover 0 by stability
        assert!(t.is_covering(0, &empty));
        assert!(GrothendieckTopology::new(&c, vec![BTreeSet::new(), BTreeSet::new()]).is_err());
    }

    #[test]
    fn boolean_quantale_site_is_trivial() {
        let q = corpus::boolean();
        let s = topology_from_quantaloid(&q).unwrap();
        assert_eq!(s.category.arrow_count(), 1);
        assert_eq!(s.topology.covers(0).len(), 1);
    }
}
