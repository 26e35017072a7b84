//! Cribles (span-sets) and the quantaloid of closed cribles.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Arrow, FiniteSite};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteSupLattice;
use crate::quantaloid::FiniteQuantaloid;

/// A set of spans `(u: Z -> X, v: Z -> Y)`, stored by span index of the site.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crible {
    pub src: usize,
    pub dst: usize,
    pub spans: BitSet,
}

/// Span bookkeeping for one site.
#[derive(Clone, Debug)]
pub struct SpanIndex {
    spans: Vec<(Arrow, Arrow)>,
    pos: Vec<usize>,
    k: usize,
}

impl SpanIndex {
    pub fn new(site: &FiniteSite) -> Self {
        let c = &site.category;
        let k = c.arrow_count();
        let mut spans = Vec::new();
        let mut pos = vec![usize::MAX; k * k];
        for u in 0..k {
            for v in 0..k {
                if c.src(u) == c.src(v) {
                    pos[u * k + v] = spans.len();
                    spans.push((u, v));
                }
            }
        }
        SpanIndex { spans, pos, k }
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    #[inline]
    pub fn span(&self, i: usize) -> (Arrow, Arrow) {
        self.spans[i]
    }

    #[inline]
    pub fn index(&self, u: Arrow, v: Arrow) -> usize {
        self.pos[u * self.k + v]
    }
}

/// Crible operations relative to a site.
pub struct CribleCalculus<'a> {
    pub site: &'a FiniteSite,
    pub index: SpanIndex,
}

impl<'a> CribleCalculus<'a> {
    pub fn new(site: &'a FiniteSite) -> Self {
        CribleCalculus { site, index: SpanIndex::new(site) }
    }

    fn empty(&self, x: usize, y: usize) -> Crible {
        Crible { src: x, dst: y, spans: BitSet::new(self.index.len()) }
    }

    /// Spans from `x` to `y`.
    pub fn spans_between(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        let c = &self.site.category;
        (0..self.index.len()).filter(move |&i| {
            let (u, v) = self.index.span(i);
            c.tgt(u) == x && c.tgt(v) == y
        })
    }

    pub fn contains(&self, r: &Crible, u: Arrow, v: Arrow) -> bool {
        r.spans.contains(self.index.index(u, v))
    }

    pub fn is_crible(&self, r: &Crible) -> bool {
        let c = &self.site.category;
        r.spans.iter().all(|i| {
            let (u, v) = self.index.span(i);
            c.tgt(u) == r.src
                && c.tgt(v) == r.dst
                && c.arrows_into(c.src(u)).all(|w| self.contains(r, c.compose(u, w).unwrap(), c.compose(v, w).unwrap()))
        })
    }

    /// Precomposition closure of the given spans.
    pub fn generated(&self, x: usize, y: usize, spans: impl IntoIterator<Item = (Arrow, Arrow)>) -> Crible {
        let c = &self.site.category;
        let mut r = self.empty(x, y);
        for (u, v) in spans {
            for w in c.arrows_into(c.src(u)) {
                let (uw, vw) = (c.compose(u, w).unwrap(), c.compose(v, w).unwrap());
                r.spans.insert(self.index.index(uw, vw));
            }
        }
        r
    }

    /// Least closed crible containing `r`.
    pub fn close(&self, r: &Crible) -> Crible {
        let c = &self.site.category;
        let mut out = r.clone();
        loop {
            let mut changed = false;
            for i in self.spans_between(r.src, r.dst).collect::<Vec<_>>() {
                if out.spans.contains(i) {
                    continue;
                }
                let (a, b) = self.index.span(i);
                let covered =
                    self.site.topology.covers(c.src(a)).iter().any(|t| {
                        t.iter().all(|s| self.contains(&out, c.compose(a, s).unwrap(), c.compose(b, s).unwrap()))
                    });
                if covered {
                    out.spans.insert(i);
                    changed = true;
                }
            }
            if !changed {
                return out;
            }
        }
    }

    pub fn is_closed(&self, r: &Crible) -> bool {
        self.close(r) == *r
    }

    /// Unclosed composite `s∘r`: spans `(u∘w, t'∘w')` with `v∘w = t∘w'`.
    pub fn composite_raw(&self, s: &Crible, r: &Crible) -> Crible {
        let c = &self.site.category;
        let mut out = self.empty(r.src, s.dst);
        for i in r.spans.iter() {
            let (u, v) = self.index.span(i);
            for j in s.spans.iter() {
                let (t, s2) = self.index.span(j);
                for w in c.arrows_into(c.src(u)) {
                    for w2 in c.arrows_into(c.src(t)) {
                        if c.src(w) != c.src(w2) {
                            continue;
                        }
                        if c.compose(v, w) == c.compose(t, w2) {
                            let (a, b) = (c.compose(u, w).unwrap(), c.compose(s2, w2).unwrap());
                            out.spans.insert(self.index.index(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn compose(&self, s: &Crible, r: &Crible) -> Crible {
        self.close(&self.composite_raw(s, r))
    }

    pub fn transpose(&self, r: &Crible) -> Crible {
        let mut out = self.empty(r.dst, r.src);
        for i in r.spans.iter() {
            let (u, v) = self.index.span(i);
            out.spans.insert(self.index.index(v, u));
        }
        out
    }

    pub fn join(&self, a: &Crible, b: &Crible) -> Crible {
        let mut u = a.clone();
        u.spans.union_with(&b.spans);
        self.close(&u)
    }

    pub fn identity(&self, x: usize) -> Crible {
        let c = &self.site.category;
        let diag = c.arrows_into(x).map(|u| (u, u));
        self.close(&self.generated(x, x, diag))
    }

    /// All closed cribles from `x` to `y`, sorted by size then contents.
    pub fn closed_cribles(&self, x: usize, y: usize) -> Vec<Crible> {
        let gens: Vec<Crible> =
            self.spans_between(x, y).map(|i| self.close(&self.generated(x, y, [self.index.span(i)]))).collect();
        let mut seen: BTreeSet<Crible> = BTreeSet::new();
        let bottom = self.close(&self.empty(x, y));
        seen.insert(bottom.clone());
        let mut frontier = vec![bottom];
        while let Some(r) = frontier.pop() {
            for g in &gens {
                let j = self.join(&r, g);
                if seen.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut out: Vec<Crible> = seen.into_iter().collect();
        out.sort_by(|a, b| a.spans.count().cmp(&b.spans.count()).then_with(|| a.cmp(b)));
        out
    }

    pub fn name(&self, r: &Crible) -> String {
        let c = &self.site.category;
        let parts: Vec<String> = r
            .spans
            .iter()
            .map(|i| {
                let (u, v) = self.index.span(i);
                format!("{}/{}", c.arrows()[u], c.arrows()[v])
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// `R(C,J)` together with the crible behind each hom element.
#[derive(Clone, Debug)]
pub struct CribleQuantaloid {
    pub quantaloid: FiniteQuantaloid,
    /// `cribles[x * n + y][e]` is element `e` of `hom(x, y)`.
    pub cribles: Vec<Vec<Crible>>,
}

impl CribleQuantaloid {
    pub fn crible(&self, x: usize, y: usize, e: usize) -> &Crible {
        &self.cribles[x * self.quantaloid.n() + y][e]
    }
}

/// The quantaloid of closed cribles of a finite site, with transposition as
/// involution. The closed-crible axioms and the modular law are asserted.
pub fn closed_crible_quantaloid(site: &FiniteSite) -> Result<CribleQuantaloid> {
    let calc = CribleCalculus::new(site);
    let n = site.category.n();
    let mut cribles = Vec::with_capacity(n * n);
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let cs = calc.closed_cribles(x, y);
            let names = cs.iter().map(|r| calc.name(r)).collect();
            homs.push(FiniteSupLattice::from_order_fn(names, |a, b| cs[a].spans.is_subset(&cs[b].spans))?);
            cribles.push(cs);
        }
    }
    let find = |x: usize, y: usize, r: &Crible| -> Result<usize> {
        cribles[x * n + y]
            .iter()
            .position(|c| c == r)
            .ok_or_else(|| Error::InternalConsistency("crible operation left the closed cribles".into()))
    };
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut t = Vec::new();
                for s in &cribles[y * n + z] {
                    for r in &cribles[x * n + y] {
                        t.push(find(x, z, &calc.compose(s, r))? as u32);
                    }
                }
                comp.push(t);
            }
        }
    }
    let ids = (0..n).map(|x| find(x, x, &calc.identity(x))).collect::<Result<Vec<_>>>()?;
    let mut inv = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            inv.push(cribles[x * n + y].iter().map(|r| find(y, x, &calc.transpose(r))).collect::<Result<Vec<_>>>()?);
        }
    }
    let objects = site.category.objects().to_vec();
    let q = FiniteQuantaloid::from_parts(objects, homs, comp, ids, Some(inv))
        .map_err(|e| Error::InternalConsistency(format!("closed cribles: {e}")))?;
    if let Some(v) = q.closed_crible_violation() {
        return Err(Error::InternalConsistency(format!("closed-crible axiom fails: {}", v.describe(&q))));
    }
    if let Some(v) = q.modular_violation()? {
        return Err(Error::InternalConsistency(format!("modular law fails: {}", v.describe(&q))));
    }
    Ok(CribleQuantaloid { quantaloid: q, cribles })
}

#[cfg(test)]
mod tests {
    use super::super::{canonical_site_of_locale, FiniteCategory};
    use super::*;

    fn two_chain() -> FiniteSite {
        FiniteSite::trivial(FiniteCategory::poset(&FiniteSupLattice::chain(&["a", "b"]).unwrap()))
    }

    #[test]
    fn point_gives_boolean_quantale() {
        let site = FiniteSite::trivial(FiniteCategory::poset(&FiniteSupLattice::chain(&["*"]).unwrap()));
        let r = closed_crible_quantaloid(&site).unwrap();
        assert_eq!(r.quantaloid.size(), 2);
        assert_eq!(r.quantaloid.id(0).elt, 1);
    }

    #[test]
    fn closure_is_a_closure_operator() {
        for site in
            [two_chain(), canonical_site_of_locale(&FiniteSupLattice::chain(&["0", "m", "1"]).unwrap()).unwrap()]
        {
            let calc = CribleCalculus::new(&site);
            let n = site.category.n();
            for x in 0..n {
                for y in 0..n {
                    let spans: Vec<usize> = calc.spans_between(x, y).collect();
                    // all precomposition-closed cribles generated by subsets of spans
                    for mask in 0..1u32 << spans.len() {
                        let r = calc.generated(
                            x,
                            y,
                            spans
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| mask & (1 << i) != 0)
                                .map(|(_, &s)| calc.index.span(s)),
                        );
                        let cl = calc.close(&r);
                        assert!(r.spans.is_subset(&cl.spans));
                        assert_eq!(calc.close(&cl), cl);
                        assert!(calc.is_crible(&cl));
                        for mask2 in 0..1u32 << spans.len() {
                            let r2 = calc.generated(
                                x,
                                y,
                                spans
                                    .iter()
                                    .enumerate()
                                    .filter(|(i, _)| mask2 & (1 << i) != 0)
                                    .map(|(_, &s)| calc.index.span(s)),
                            );
                            if r.spans.is_subset(&r2.spans) {
                                assert!(cl.spans.is_subset(&calc.close(&r2).spans));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_topology_closes_nothing() {
        let site = two_chain();
        let calc = CribleCalculus::new(&site);
        for i in 0..calc.index.len() {
            let (u, v) = calc.index.span(i);
            let c = &site.category;
            let r = calc.generated(c.tgt(u), c.tgt(v), [(u, v)]);
            assert_eq!(calc.close(&r), r);
        }
    }

    #[test]
    fn locale_union_closes_to_join() {
        let l = FiniteSupLattice::powerset(&["a", "b"]).unwrap();
        let site = canonical_site_of_locale(&l).unwrap();
        let calc = CribleCalculus::new(&site);
        let c = &site.category;
        let top = c.object_index("{a,b}").unwrap();
        let arrow = |s: &str| c.arrow_index(s).unwrap();
        // spans from top to top through {a} and through {b}
        let ra = calc.generated(top, top, [(arrow("{a}<={a,b}"), arrow("{a}<={a,b}"))]);
        let rb = calc.generated(top, top, [(arrow("{b}<={a,b}"), arrow("{b}<={a,b}"))]);
        let j = calc.join(&ra, &rb);
        assert!(calc.contains(&j, arrow("{a,b}<={a,b}"), arrow("{a,b}<={a,b}")));
        assert_eq!(j, calc.identity(top));
    }

    #[test]
    fn two_chain_quantaloid() {
        let r = closed_crible_quantaloid(&two_chain()).unwrap();
        let q = &r.quantaloid;
        assert_eq!(q.n(), 2);
        assert!(q.is_modular().unwrap());
        assert!(q.is_closed_crible());
    }
}
