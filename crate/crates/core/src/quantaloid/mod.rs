//! Finite (involutive) quantaloids.
//!
//! A [`FiniteQuantaloid`] stores one [`FiniteSupLattice`] per ordered pair of
//! objects, a composition table per composable triple of objects, the
//! identities, and optionally an involution table. Right adjoints of all
//! morphisms are computed once at construction and cached.

mod derived;
mod predicates;
mod split;
mod violation;

pub use predicates::{CauchyBilateralConfig, Check, GrothendieckStatements, PredicateSuite, Span};
pub use split::{all_idempotents, si, split_idempotents, ssi, symmetric_idempotents, Splitting};
pub use violation::Violation;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Elt, FiniteSupLattice};

/// Dense index of a quantaloid object.
pub type Obj = usize;

/// A morphism `src -> dst` given by an element of `hom(src, dst)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub src: Obj,
    pub dst: Obj,
    pub elt: Elt,
}

impl Morphism {
    pub const fn new(src: Obj, dst: Obj, elt: Elt) -> Self {
        Morphism { src, dst, elt }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantaloid {
    objects: Vec<String>,
    homs: Vec<FiniteSupLattice>,
    comp: Vec<Vec<u32>>,
    ids: Vec<Elt>,
    inv: Option<Vec<Vec<Elt>>>,
    right_adjoints: Vec<Vec<Option<Elt>>>,
}

impl FiniteQuantaloid {
    /// Builds a quantaloid by tabulating `compose(x, y, z, g, f) = g∘f` for
    /// `f ∈ hom(x,y)`, `g ∈ hom(y,z)`. `homs[x * n + y]` is `hom(x, y)`.
    pub fn from_fn(
        objects: Vec<String>,
        homs: Vec<FiniteSupLattice>,
        ids: Vec<Elt>,
        compose: impl Fn(Obj, Obj, Obj, Elt, Elt) -> Elt,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || ids.len() != n {
            return Err(Error::InvalidQuantaloid("hom or identity table has wrong shape".into()));
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz) = (&homs[x * n + y], &homs[y * n + z]);
                    let mut table = Vec::with_capacity(hxy.len() * hyz.len());
                    for g in hyz.elements() {
                        for f in hxy.elements() {
                            table.push(compose(x, y, z, g, f) as u32);
                        }
                    }
                    comp.push(table);
                }
            }
        }
        Self::from_parts(objects, homs, comp, ids, None)
    }

    /// Validating constructor from raw tables.
    pub fn from_parts(
        objects: Vec<String>,
        homs: Vec<FiniteSupLattice>,
        comp: Vec<Vec<u32>>,
        ids: Vec<Elt>,
        inv: Option<Vec<Vec<Elt>>>,
    ) -> Result<Self> {
        let q = Self::from_parts_unchecked(objects, homs, comp, ids, inv)?;
        q.validate()?;
        Ok(q)
    }

    /// Shape-checked but law-unchecked constructor. Used for fault injection:
    /// the result may violate associativity, units or join preservation.
    pub fn from_parts_unchecked(
        objects: Vec<String>,
        homs: Vec<FiniteSupLattice>,
        comp: Vec<Vec<u32>>,
        ids: Vec<Elt>,
        inv: Option<Vec<Vec<Elt>>>,
    ) -> Result<Self> {
        let n = objects.len();
        let shape = |m: &str| Err(Error::InvalidQuantaloid(m.to_string()));
        if homs.len() != n * n || ids.len() != n || comp.len() != n * n * n {
            return shape("tables have wrong shape");
        }
        for i in 0..n {
            for j in i + 1..n {
                if objects[i] == objects[j] {
                    return Err(Error::InvalidQuantaloid(format!("duplicate object id {:?}", objects[i])));
                }
            }
        }
        for x in 0..n {
            if ids[x] >= homs[x * n + x].len() {
                return shape("identity out of range");
            }
            for y in 0..n {
                for z in 0..n {
                    let t = &comp[(x * n + y) * n + z];
                    let hxz = homs[x * n + z].len();
                    if t.len() != homs[x * n + y].len() * homs[y * n + z].len() || t.iter().any(|&e| e as usize >= hxz)
                    {
                        return shape("composition table has wrong size or range");
                    }
                }
            }
        }
        if let Some(inv) = &inv {
            if inv.len() != n * n {
                return shape("involution table has wrong shape");
            }
            for x in 0..n {
                for y in 0..n {
                    let t = &inv[x * n + y];
                    if t.len() != homs[x * n + y].len() || t.iter().any(|&e| e >= homs[y * n + x].len()) {
                        return shape("involution table has wrong size or range");
                    }
                }
            }
        }
        let mut q = FiniteQuantaloid { objects, homs, comp, ids, inv, right_adjoints: Vec::new() };
        q.right_adjoints = q.compute_right_adjoints();
        Ok(q)
    }

    /// Attaches an involution `inv(x, y, f) ∈ hom(y, x)` and validates it.
    pub fn with_involution_fn(self, inv: impl Fn(Obj, Obj, Elt) -> Elt) -> Result<Self> {
        let n = self.n();
        let table = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                self.homs[i].elements().map(|f| inv(x, y, f)).collect()
            })
            .collect();
        self.with_involution_table(table)
    }

    pub fn with_involution_table(mut self, table: Vec<Vec<Elt>>) -> Result<Self> {
        let n = self.n();
        if table.len() != n * n {
            return Err(Error::InvalidQuantaloid("involution table has wrong shape".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y].len() != self.hom(x, y).len()
                    || table[x * n + y].iter().any(|&e| e >= self.hom(y, x).len())
                {
                    return Err(Error::InvalidQuantaloid("involution table out of range".into()));
                }
            }
        }
        self.inv = Some(table);
        if let Some(msg) = self.involution_violation() {
            return Err(Error::InvalidQuantaloid(msg));
        }
        Ok(self)
    }

    /// Drops the involution.
    pub fn without_involution(mut self) -> Self {
        self.inv = None;
        self
    }

    /// Raw tables `(objects, homs, comp, ids, inv)`, e.g. for serialization or mutation.
    #[allow(clippy::type_complexity)]
    pub fn into_parts(self) -> (Vec<String>, Vec<FiniteSupLattice>, Vec<Vec<u32>>, Vec<Elt>, Option<Vec<Vec<Elt>>>) {
        (self.objects, self.homs, self.comp, self.ids, self.inv)
    }

    /// Checks all quantaloid (and involution) laws.
    pub fn validate(&self) -> Result<()> {
        if let Some(msg) = self.law_violation() {
            return Err(Error::InvalidQuantaloid(msg));
        }
        if let Some(msg) = self.involution_violation() {
            return Err(Error::InvalidQuantaloid(msg));
        }
        Ok(())
    }

    fn law_violation(&self) -> Option<String> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let hxy = self.hom(x, y);
                for f in hxy.elements() {
                    if self.comp(x, y, y, self.ids[y], f) != f || self.comp(x, x, y, f, self.ids[x]) != f {
                        return Some(format!("unit law fails at {}", self.describe(Morphism::new(x, y, f))));
                    }
                }
                for z in 0..n {
                    let hyz = self.hom(y, z);
                    let hxz = self.hom(x, z);
                    // bottom and binary joins preserved in each argument
                    for g in hyz.elements() {
                        if self.comp(x, y, z, g, hxy.bottom()) != hxz.bottom() {
                            return Some(format!(
                                "composition with bottom is not bottom ({}->{}->{})",
                                self.objects[x], self.objects[y], self.objects[z]
                            ));
                        }
                        for f1 in hxy.elements() {
                            for f2 in f1 + 1..hxy.len() {
                                let lhs = self.comp(x, y, z, g, hxy.join2(f1, f2));
                                let rhs = hxz.join2(self.comp(x, y, z, g, f1), self.comp(x, y, z, g, f2));
                                if lhs != rhs {
                                    return Some(format!(
                                        "post-composition with {} does not preserve joins",
                                        self.describe(Morphism::new(y, z, g))
                                    ));
                                }
                            }
                        }
                    }
                    for f in hxy.elements() {
                        if self.comp(x, y, z, hyz.bottom(), f) != hxz.bottom() {
                            return Some("bottom composed with a morphism is not bottom".into());
                        }
                        for g1 in hyz.elements() {
                            for g2 in g1 + 1..hyz.len() {
                                let lhs = self.comp(x, y, z, hyz.join2(g1, g2), f);
                                let rhs = hxz.join2(self.comp(x, y, z, g1, f), self.comp(x, y, z, g2, f));
                                if lhs != rhs {
                                    return Some(format!(
                                        "pre-composition with {} does not preserve joins",
                                        self.describe(Morphism::new(x, y, f))
                                    ));
                                }
                            }
                        }
                    }
                    for w in 0..n {
                        let hzw = self.hom(z, w);
                        for f in hxy.elements() {
                            for g in hyz.elements() {
                                let gf = self.comp(x, y, z, g, f);
                                for h in hzw.elements() {
                                    let hg = self.comp(y, z, w, h, g);
                                    if self.comp(x, z, w, h, gf) != self.comp(x, y, w, hg, f) {
                                        return Some(format!(
                                            "associativity fails at {}, {}, {}",
                                            self.describe(Morphism::new(x, y, f)),
                                            self.describe(Morphism::new(y, z, g)),
                                            self.describe(Morphism::new(z, w, h))
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn involution_violation(&self) -> Option<String> {
        let inv = self.inv.as_ref()?;
        let n = self.n();
        for x in 0..n {
            if inv[x * n + x][self.ids[x]] != self.ids[x] {
                return Some(format!("involution does not fix the identity of {}", self.objects[x]));
            }
            for y in 0..n {
                let hxy = self.hom(x, y);
                for f in hxy.elements() {
                    if inv[(y * n) + x][inv[x * n + y][f]] != f {
                        return Some("involution is not self-inverse".into());
                    }
                    for f2 in f + 1..hxy.len() {
                        let j = hxy.join2(f, f2);
                        let expect = self.hom(y, x).join2(inv[x * n + y][f], inv[x * n + y][f2]);
                        if inv[x * n + y][j] != expect {
                            return Some("involution does not preserve joins".into());
                        }
                    }
                }
                for z in 0..n {
                    for f in hxy.elements() {
                        for g in self.hom(y, z).elements() {
                            let lhs = inv[x * n + z][self.comp(x, y, z, g, f)];
                            let rhs = self.comp(z, y, x, inv[x * n + y][f], inv[y * n + z][g]);
                            if lhs != rhs {
                                return Some(format!(
                                    "(g∘f)° ≠ f°∘g° at f = {}, g = {}",
                                    self.describe(Morphism::new(x, y, f)),
                                    self.describe(Morphism::new(y, z, g))
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn compute_right_adjoints(&self) -> Vec<Vec<Option<Elt>>> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let row = self
                    .hom(x, y)
                    .elements()
                    .map(|f| {
                        let g = self.right_residual_raw(y, x, y, f, self.ids[y]);
                        let unit = self.hom(x, x).leq(self.ids[x], self.comp(x, y, x, g, f));
                        let counit = self.hom(y, y).leq(self.comp(y, x, y, f, g), self.ids[y]);
                        (unit && counit).then_some(g)
                    })
                    .collect();
                out.push(row);
            }
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> core::ops::Range<Obj> {
        0..self.n()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    #[inline]
    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn resolve_object(&self, name: &str) -> Result<Obj> {
        self.object_index(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Resolves `"X->Y:elt"`-style references given as separate parts.
    pub fn resolve_morphism(&self, src: &str, dst: &str, elt: &str) -> Result<Morphism> {
        let (x, y) = (self.resolve_object(src)?, self.resolve_object(dst)?);
        Ok(Morphism::new(x, y, self.hom(x, y).resolve(elt)?))
    }

    #[inline]
    pub fn hom(&self, x: Obj, y: Obj) -> &FiniteSupLattice {
        &self.homs[x * self.n() + y]
    }

    pub fn homs(&self) -> &[FiniteSupLattice] {
        &self.homs
    }

    /// All morphisms `x -> y`.
    pub fn morphisms(&self, x: Obj, y: Obj) -> impl Iterator<Item = Morphism> + '_ {
        self.hom(x, y).elements().map(move |e| Morphism::new(x, y, e))
    }

    /// Total number of morphisms (sum of hom sizes).
    pub fn size(&self) -> usize {
        self.homs.iter().map(FiniteSupLattice::len).sum()
    }

    /// `g∘f` for `f ∈ hom(x,y)`, `g ∈ hom(y,z)`.
    #[inline]
    pub fn comp(&self, x: Obj, y: Obj, z: Obj, g: Elt, f: Elt) -> Elt {
        let n = self.n();
        let t = &self.comp[(x * n + y) * n + z];
        t[g * self.homs[x * n + y].len() + f] as Elt
    }

    pub fn comp_table(&self, x: Obj, y: Obj, z: Obj) -> &[u32] {
        let n = self.n();
        &self.comp[(x * n + y) * n + z]
    }

    pub fn compose(&self, g: Morphism, f: Morphism) -> Result<Morphism> {
        if f.dst != g.src {
            return Err(Error::TypeMismatch(format!("cannot compose {} after {}", self.describe(g), self.describe(f))));
        }
        Ok(Morphism::new(f.src, g.dst, self.comp(f.src, f.dst, g.dst, g.elt, f.elt)))
    }

    /// `g∘f` without type checks; panics in debug builds on mismatch.
    #[inline]
    pub fn c(&self, g: Morphism, f: Morphism) -> Morphism {
        debug_assert_eq!(f.dst, g.src);
        Morphism::new(f.src, g.dst, self.comp(f.src, f.dst, g.dst, g.elt, f.elt))
    }

    /// Composite of a path given first-to-last (`chain(&[f, g, h]) = h∘g∘f`).
    pub fn chain(&self, path: &[Morphism]) -> Morphism {
        let mut acc = path[0];
        for &m in &path[1..] {
            acc = self.c(m, acc);
        }
        acc
    }

    #[inline]
    pub fn id(&self, x: Obj) -> Morphism {
        Morphism::new(x, x, self.ids[x])
    }

    pub fn identities(&self) -> &[Elt] {
        &self.ids
    }

    #[inline]
    pub fn bottom(&self, x: Obj, y: Obj) -> Morphism {
        Morphism::new(x, y, self.hom(x, y).bottom())
    }

    #[inline]
    pub fn top(&self, x: Obj, y: Obj) -> Morphism {
        Morphism::new(x, y, self.hom(x, y).top())
    }

    #[inline]
    pub fn leq(&self, a: Morphism, b: Morphism) -> bool {
        debug_assert!(a.src == b.src && a.dst == b.dst);
        self.hom(a.src, a.dst).leq(a.elt, b.elt)
    }

    #[inline]
    pub fn join2(&self, a: Morphism, b: Morphism) -> Morphism {
        Morphism::new(a.src, a.dst, self.hom(a.src, a.dst).join2(a.elt, b.elt))
    }

    #[inline]
    pub fn meet2(&self, a: Morphism, b: Morphism) -> Morphism {
        Morphism::new(a.src, a.dst, self.hom(a.src, a.dst).meet2(a.elt, b.elt))
    }

    /// Join of morphisms `x -> y`; empty join is the zero morphism.
    pub fn join(&self, x: Obj, y: Obj, ms: impl IntoIterator<Item = Morphism>) -> Morphism {
        let h = self.hom(x, y);
        Morphism::new(x, y, h.join(ms.into_iter().map(|m| m.elt)))
    }

    pub fn is_involutive(&self) -> bool {
        self.inv.is_some()
    }

    pub fn involution_table(&self) -> Option<&[Vec<Elt>]> {
        self.inv.as_deref()
    }

    /// `f°`; requires an involution.
    pub fn involute(&self, f: Morphism) -> Result<Morphism> {
        let inv = self.inv.as_ref().ok_or(Error::MissingInvolution)?;
        Ok(Morphism::new(f.dst, f.src, inv[f.src * self.n() + f.dst][f.elt]))
    }

    /// `f°` for callers that already checked [`Self::is_involutive`].
    #[inline]
    pub fn o(&self, f: Morphism) -> Morphism {
        let inv = self.inv.as_ref().expect("involutive quantaloid");
        Morphism::new(f.dst, f.src, inv[f.src * self.n() + f.dst][f.elt])
    }

    fn right_residual_raw(&self, x: Obj, y: Obj, z: Obj, f: Elt, g: Elt) -> Elt {
        // ⋁{h ∈ hom(x,y) : f∘h ≤ g}, f ∈ hom(y,z), g ∈ hom(x,z)
        let (hxy, hxz) = (self.hom(x, y), self.hom(x, z));
        hxy.join(hxy.elements().filter(|&h| hxz.leq(self.comp(x, y, z, f, h), g)))
    }

    fn left_residual_raw(&self, x: Obj, y: Obj, z: Obj, g: Elt, f: Elt) -> Elt {
        // ⋁{h ∈ hom(y,z) : h∘f ≤ g}, g ∈ hom(x,z), f ∈ hom(x,y)
        let (hyz, hxz) = (self.hom(y, z), self.hom(x, z));
        hyz.join(hyz.elements().filter(|&h| hxz.leq(self.comp(x, y, z, h, f), g)))
    }

    /// Extension `g↙f : Y -> Z` of `g : X -> Z` along `f : X -> Y`, i.e. the
    /// largest `h` with `h∘f ≤ g`.
    pub fn left_residual(&self, g: Morphism, f: Morphism) -> Result<Morphism> {
        if g.src != f.src {
            return Err(Error::TypeMismatch(format!(
                "left residual needs common source: {} and {}",
                self.describe(g),
                self.describe(f)
            )));
        }
        Ok(Morphism::new(f.dst, g.dst, self.left_residual_raw(f.src, f.dst, g.dst, g.elt, f.elt)))
    }

    /// Lifting `f↘g : X -> Y` of `g : X -> Z` through `f : Y -> Z`, i.e. the
    /// largest `h` with `f∘h ≤ g`.
    pub fn right_residual(&self, f: Morphism, g: Morphism) -> Result<Morphism> {
        if f.dst != g.dst {
            return Err(Error::TypeMismatch(format!(
                "right residual needs common target: {} and {}",
                self.describe(f),
                self.describe(g)
            )));
        }
        Ok(Morphism::new(g.src, f.src, self.right_residual_raw(g.src, f.src, f.dst, f.elt, g.elt)))
    }

    /// The right adjoint of `f`, if `f` is a left adjoint.
    #[inline]
    pub fn right_adjoint_of(&self, f: Morphism) -> Option<Morphism> {
        self.right_adjoints[f.src * self.n() + f.dst][f.elt].map(|g| Morphism::new(f.dst, f.src, g))
    }

    #[inline]
    pub fn is_left_adjoint(&self, f: Morphism) -> bool {
        self.right_adjoints[f.src * self.n() + f.dst][f.elt].is_some()
    }

    /// Right adjoint of a known left adjoint.
    #[inline]
    pub fn star(&self, f: Morphism) -> Morphism {
        self.right_adjoint_of(f).expect("left adjoint")
    }

    /// Left adjoints `x -> y` in element order.
    pub fn left_adjoints(&self, x: Obj, y: Obj) -> impl Iterator<Item = Morphism> + '_ {
        self.right_adjoints[x * self.n() + y]
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(move |(e, _)| Morphism::new(x, y, e))
    }

    /// A left adjoint whose right adjoint is its involute.
    pub fn is_symmetric_left_adjoint(&self, f: Morphism) -> Result<bool> {
        let fo = self.involute(f)?;
        Ok(self.right_adjoint_of(f) == Some(fo))
    }

    /// Idempotent endomorphism check `e∘e = e`.
    pub fn is_idempotent(&self, e: Morphism) -> bool {
        e.src == e.dst && self.c(e, e) == e
    }

    /// `X->Y:elt` rendering with names.
    pub fn describe(&self, m: Morphism) -> String {
        format!("{}->{}:{}", self.objects[m.src], self.objects[m.dst], self.hom(m.src, m.dst).name(m.elt))
    }

    /// Renames objects (e.g. after a construction); names must stay distinct.
    pub fn with_object_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::InvalidQuantaloid("wrong number of object names".into()));
        }
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                if names[i] == names[j] {
                    return Err(Error::InvalidQuantaloid(format!("duplicate object id {:?}", names[i])));
                }
            }
        }
        self.objects = names;
        Ok(self)
    }

    /// The one-object quantaloid with a one-element hom (and identity involution).
    pub fn trivial() -> Self {
        let hom = FiniteSupLattice::chain(&["0"]).expect("one-element chain");
        FiniteQuantaloid::from_fn(vec!["*".into()], vec![hom], vec![0], |_, _, _, _, _| 0)
            .and_then(|q| q.with_involution_fn(|_, _, f| f))
            .expect("trivial quantaloid")
    }

    /// The quantaloid with no objects.
    pub fn empty() -> Self {
        FiniteQuantaloid::from_parts(Vec::new(), Vec::new(), Vec::new(), Vec::new(), Some(Vec::new()))
            .expect("empty quantaloid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn locale_composition_is_meet() {
        let q = corpus::chain_locale(3);
        let m = Morphism::new(0, 0, q.hom(0, 0).resolve("m").unwrap());
        assert_eq!(q.compose(m, m).unwrap(), m);
        let f = Morphism::new(0, 0, 0);
        assert_eq!(q.compose(q.id(0), f).unwrap(), f);
    }

    #[test]
    fn relation_composition_table_matches_oracle() {
        let q = corpus::relation_quantale(2);
        let h = q.hom(0, 0);
        // oracle: relations as 4-bit masks over pairs (i,j), index i*2+j
        let rel = |e: Elt| -> [[bool; 2]; 2] {
            let mut r = [[false; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    r[i][j] = h.name(e).contains(&format!("({},{})", i + 1, j + 1));
                }
            }
            r
        };
        for g in h.elements() {
            for f in h.elements() {
                let (rg, rf) = (rel(g), rel(f));
                let got = rel(q.comp(0, 0, 0, g, f));
                for a in 0..2 {
                    for c in 0..2 {
                        let want = (0..2).any(|b| rf[a][b] && rg[b][c]);
                        assert_eq!(got[a][c], want);
                    }
                }
            }
        }
        let g = q.resolve_morphism("*", "*", "{(1,2)}").unwrap();
        let f = q.resolve_morphism("*", "*", "{(2,1)}").unwrap();
        assert_eq!(h.name(q.compose(g, f).unwrap().elt), "{(2,2)}");
    }

    #[test]
    fn residual_examples() {
        let q = corpus::chain_locale(3);
        let h = q.hom(0, 0);
        let (z, m, t) = (h.resolve("0").unwrap(), h.resolve("m").unwrap(), h.resolve("1").unwrap());
        let mm = Morphism::new(0, 0, m);
        let top = Morphism::new(0, 0, t);
        assert_eq!(q.left_residual(mm, top).unwrap(), mm);
        assert_eq!(q.right_residual(top, mm).unwrap(), mm);
        // largest x with x ∧ m ≤ 0 in a chain is 0
        assert_eq!(q.left_residual(Morphism::new(0, 0, z), mm).unwrap().elt, z);
        assert_eq!(q.right_residual(mm, Morphism::new(0, 0, z)).unwrap().elt, z);
        // residual into top is top
        assert_eq!(q.left_residual(top, mm).unwrap(), top);
        assert_eq!(q.right_residual(mm, top).unwrap(), top);
    }

    #[test]
    fn residual_type_mismatch() {
        let q = corpus::two_chain_site_quantaloid();
        let f = q.top(0, 1);
        let g = q.top(1, 0);
        assert!(matches!(q.left_residual(g, f), Err(Error::TypeMismatch(_))));
        assert!(matches!(q.right_residual(f, f.clone()), Ok(_)));
        assert!(matches!(q.right_residual(f, g), Err(Error::TypeMismatch(_))));
        assert!(matches!(q.compose(f, f), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn adjoints_in_locale_and_relations() {
        let q = corpus::chain_locale(3);
        assert_eq!(q.right_adjoint_of(q.id(0)), Some(q.id(0)));
        let m = q.resolve_morphism("*", "*", "m").unwrap();
        assert_eq!(q.right_adjoint_of(m), None);
        assert!(!q.is_symmetric_left_adjoint(m).unwrap());
        assert!(q.is_symmetric_left_adjoint(q.id(0)).unwrap());

        let r = corpus::relation_quantale(2);
        let las: Vec<&str> = r.left_adjoints(0, 0).map(|f| r.hom(0, 0).name(f.elt)).collect();
        // graphs of the four functions {1,2} -> {1,2}
        assert_eq!(las.len(), 4);
        for name in ["{(1,1),(2,2)}", "{(1,2),(2,1)}", "{(1,1),(2,1)}", "{(1,2),(2,2)}"] {
            assert!(las.contains(&name), "{name} missing from {las:?}");
        }
        for f in r.left_adjoints(0, 0) {
            assert_eq!(r.right_adjoint_of(f), Some(r.o(f)));
            assert!(r.is_symmetric_left_adjoint(f).unwrap());
        }
    }

    #[test]
    fn symmetric_left_adjoint_needs_involution() {
        let q = corpus::chain_locale(3).without_involution();
        assert_eq!(q.is_symmetric_left_adjoint(q.id(0)), Err(Error::MissingInvolution));
    }

    #[test]
    fn mutated_table_is_rejected() {
        let q = corpus::chain_locale(3);
        let (o, h, mut c, i, inv) = q.into_parts();
        c[0][4] = 2; // m∘m := 1
        assert!(FiniteQuantaloid::from_parts(o.clone(), h.clone(), c.clone(), i.clone(), inv.clone()).is_err());
        assert!(FiniteQuantaloid::from_parts_unchecked(o, h, c, i, inv).is_ok());
    }

    #[test]
    fn degenerate_quantaloids() {
        let e = FiniteQuantaloid::empty();
        assert_eq!(e.n(), 0);
        let t = FiniteQuantaloid::trivial();
        assert_eq!(t.size(), 1);
        assert!(t.is_left_adjoint(t.id(0)));
    }
}
