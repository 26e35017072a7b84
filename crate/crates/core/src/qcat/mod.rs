//! Categories, functors and distributors enriched in a finite quantaloid.
//!
//! Values here are plain tables; every operation takes the base
//! [`FiniteQuantaloid`] explicitly. A category `A` stores `A(y, x) ∈ Q(tx, ty)`
//! and a distributor `Φ: A ⇸ B` stores `Φ(y, x) ∈ Q(tx, ty)` for `x ∈ A`, `y ∈ B`.
//! Matrices are distributors between discrete categories.

mod enumerate;
mod matrix;

pub use enumerate::{categories_on, distributors, CategoryShape};

pub use matrix::{
    direct_sum, direct_sum_violation, identity_matrix, is_antisymmetric_monad, is_monad, is_symmetric_monad, DirectSum,
};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::Elt;
use crate::quantaloid::{FiniteQuantaloid, Morphism, Obj};

/// A finite set with a type function into the objects of the base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QTypedSet {
    names: Vec<String>,
    types: Vec<Obj>,
}

impl QTypedSet {
    pub fn new(names: Vec<String>, types: Vec<Obj>) -> Result<Self> {
        if names.len() != types.len() {
            return Err(Error::InvalidCategory("names and types differ in length".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidCategory(format!("duplicate object {a}")));
            }
        }
        Ok(QTypedSet { names, types })
    }

    /// Objects named `x0, x1, ...`.
    pub fn anonymous(types: Vec<Obj>) -> Self {
        let names = (0..types.len()).map(|i| format!("x{i}")).collect();
        QTypedSet { names, types }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn types(&self) -> &[Obj] {
        &self.types
    }

    pub fn ty(&self, x: usize) -> Obj {
        self.types[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_types(&self, q: &FiniteQuantaloid) -> Result<()> {
        match self.types.iter().find(|&&t| t >= q.n()) {
            Some(t) => Err(Error::InvalidCategory(format!("type {t} is not an object of the base"))),
            None => Ok(()),
        }
    }
}

/// A `Q`-category: `hom[y * n + x] = A(y, x) ∈ Q(tx, ty)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QCategory {
    objects: QTypedSet,
    hom: Vec<Elt>,
}

impl QCategory {
    /// Validates unit and composition inequalities.
    pub fn new(q: &FiniteQuantaloid, objects: QTypedSet, hom: Vec<Elt>) -> Result<Self> {
        let a = Self::new_unchecked(objects, hom);
        a.objects.check_types(q)?;
        if a.hom.len() != a.n() * a.n() {
            return Err(Error::InvalidCategory("hom table has wrong size".into()));
        }
        for y in 0..a.n() {
            for x in 0..a.n() {
                if a.hom[y * a.n() + x] >= q.hom(a.ty(x), a.ty(y)).len() {
                    return Err(Error::InvalidCategory(format!("hom({y},{x}) out of range")));
                }
            }
        }
        if let Some(msg) = a.violation(q) {
            return Err(Error::InvalidCategory(msg));
        }
        Ok(a)
    }

    pub fn from_fn(q: &FiniteQuantaloid, objects: QTypedSet, f: impl Fn(usize, usize) -> Elt) -> Result<Self> {
        let n = objects.len();
        let hom = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(q, objects, hom)
    }

    pub fn new_unchecked(objects: QTypedSet, hom: Vec<Elt>) -> Self {
        QCategory { objects, hom }
    }

    /// First failure of `1 ≤ A(x,x)` or `A(z,y)∘A(y,x) ≤ A(z,x)`.
    pub fn violation(&self, q: &FiniteQuantaloid) -> Option<String> {
        let n = self.n();
        for x in 0..n {
            if !q.leq(q.id(self.ty(x)), self.at(x, x)) {
                return Some(format!("unit fails at {}", self.name(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !q.leq(q.c(self.at(z, y), self.at(y, x)), self.at(z, x)) {
                        return Some(format!(
                            "composition fails at ({}, {}, {})",
                            self.name(z),
                            self.name(y),
                            self.name(x)
                        ));
                    }
                }
            }
        }
        None
    }

    /// Discrete category: identities on the diagonal, zero elsewhere.
    pub fn discrete(q: &FiniteQuantaloid, objects: QTypedSet) -> Result<Self> {
        objects.check_types(q)?;
        let n = objects.len();
        let hom = (0..n * n)
            .map(|i| {
                let (y, x) = (i / n, i % n);
                if x == y {
                    q.id(objects.ty(x)).elt
                } else {
                    q.hom(objects.ty(x), objects.ty(y)).bottom()
                }
            })
            .collect();
        Ok(QCategory { objects, hom })
    }

    /// The one-object category `*_X` with identity hom.
    pub fn point(q: &FiniteQuantaloid, x: Obj) -> Result<Self> {
        Self::discrete(q, QTypedSet::new(vec!["*".to_string()], vec![x])?)
    }

    pub fn empty() -> Self {
        QCategory { objects: QTypedSet::anonymous(Vec::new()), hom: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &QTypedSet {
        &self.objects
    }

    pub fn types(&self) -> &[Obj] {
        self.objects.types()
    }

    pub fn ty(&self, x: usize) -> Obj {
        self.objects.ty(x)
    }

    pub fn name(&self, x: usize) -> &str {
        &self.objects.names[x]
    }

    pub fn hom_table(&self) -> &[Elt] {
        &self.hom
    }

    /// `A(y, x): tx -> ty`.
    #[inline]
    pub fn at(&self, y: usize, x: usize) -> Morphism {
        Morphism::new(self.ty(x), self.ty(y), self.hom[y * self.n() + x])
    }

    /// The identity distributor `A(-,-): A ⇸ A`.
    pub fn hom_distributor(&self) -> Distributor {
        Distributor { dom: self.types().to_vec(), cod: self.types().to_vec(), elt: self.hom.clone() }
    }

    /// `A(x, y) = A(y, x)°` for all objects.
    pub fn is_symmetric(&self, q: &FiniteQuantaloid) -> Result<bool> {
        if !q.is_involutive() {
            return Err(Error::MissingInvolution);
        }
        let n = self.n();
        Ok((0..n).all(|x| (0..n).all(|y| self.at(x, y) == q.o(self.at(y, x)))))
    }

    /// Endo-homs are identities.
    pub fn is_normal(&self, q: &FiniteQuantaloid) -> bool {
        (0..self.n()).all(|x| self.at(x, x) == q.id(self.ty(x)))
    }

    /// `A_s(y, x) = A(y, x) ∧ A(x, y)°`.
    pub fn symmetrise(&self, q: &FiniteQuantaloid) -> Result<Self> {
        if !q.is_involutive() {
            return Err(Error::MissingInvolution);
        }
        let n = self.n();
        let hom = (0..n * n)
            .map(|i| {
                let (y, x) = (i / n, i % n);
                q.meet2(self.at(y, x), q.o(self.at(x, y))).elt
            })
            .collect();
        Ok(QCategory { objects: self.objects.clone(), hom })
    }

    /// Full subcategory on the listed objects, in the given order.
    pub fn full_subcategory(&self, keep: &[usize]) -> Self {
        let names = keep.iter().map(|&x| self.objects.names[x].clone()).collect();
        let types = keep.iter().map(|&x| self.ty(x)).collect();
        let hom = keep.iter().flat_map(|&y| keep.iter().map(move |&x| self.hom[y * self.n() + x])).collect();
        QCategory { objects: QTypedSet { names, types }, hom }
    }

    /// The same category with objects renamed.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        self.objects = QTypedSet::new(names, self.objects.types)?;
        Ok(self)
    }

    /// Monad in `Matr(Q)` carried by this category.
    pub fn to_matrix(&self) -> Distributor {
        self.hom_distributor()
    }

    /// Reads a monad in `Matr(Q)` as a category.
    pub fn from_matrix(q: &FiniteQuantaloid, m: &Distributor) -> Result<Self> {
        if m.dom != m.cod {
            return Err(Error::TypeMismatch("a monad needs an endo-matrix".into()));
        }
        Self::new(q, QTypedSet::anonymous(m.dom.clone()), m.elt.clone())
    }

    /// `x ≅ y`: `1 ≤ A(x,y)` and `1 ≤ A(y,x)` with equal types.
    pub fn isomorphic_objects(&self, q: &FiniteQuantaloid, x: usize, y: usize) -> bool {
        self.ty(x) == self.ty(y) && q.leq(q.id(self.ty(x)), self.at(x, y)) && q.leq(q.id(self.ty(x)), self.at(y, x))
    }

    /// Number of isomorphism classes of objects.
    pub fn iso_class_count(&self, q: &FiniteQuantaloid) -> usize {
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.n() {
            if !reps.iter().any(|&r| self.isomorphic_objects(q, r, x)) {
                reps.push(x);
            }
        }
        reps.len()
    }
}

/// `Φ: A ⇸ B` with `elt[y * |A| + x] = Φ(y, x) ∈ Q(tx, ty)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distributor {
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    elt: Vec<Elt>,
}

impl Distributor {
    /// Validates both action inequalities against `a` and `b`.
    pub fn new(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, elt: Vec<Elt>) -> Result<Self> {
        let d = Distributor { dom: a.types().to_vec(), cod: b.types().to_vec(), elt };
        if d.elt.len() != a.n() * b.n() {
            return Err(Error::InvalidCategory("distributor table has wrong size".into()));
        }
        for y in 0..b.n() {
            for x in 0..a.n() {
                if d.elt[y * a.n() + x] >= q.hom(a.ty(x), b.ty(y)).len() {
                    return Err(Error::InvalidCategory(format!("entry ({y},{x}) out of range")));
                }
            }
        }
        if let Some(msg) = d.violation(q, a, b) {
            return Err(Error::InvalidCategory(msg));
        }
        Ok(d)
    }

    pub fn from_fn(
        q: &FiniteQuantaloid,
        a: &QCategory,
        b: &QCategory,
        f: impl Fn(usize, usize) -> Elt,
    ) -> Result<Self> {
        let elt = (0..a.n() * b.n()).map(|i| f(i / a.n(), i % a.n())).collect();
        Self::new(q, a, b, elt)
    }

    pub fn new_unchecked(dom: Vec<Obj>, cod: Vec<Obj>, elt: Vec<Elt>) -> Self {
        Distributor { dom, cod, elt }
    }

    /// The zero distributor between typed sets.
    pub fn bottom(q: &FiniteQuantaloid, dom: &[Obj], cod: &[Obj]) -> Self {
        let elt = cod.iter().flat_map(|&ty| dom.iter().map(move |&tx| q.hom(tx, ty).bottom())).collect();
        Distributor { dom: dom.to_vec(), cod: cod.to_vec(), elt }
    }

    /// First failure of `B(y',y)∘Φ(y,x) ≤ Φ(y',x)` or `Φ(y,x)∘A(x,x') ≤ Φ(y,x')`.
    pub fn violation(&self, q: &FiniteQuantaloid, a: &QCategory, b: &QCategory) -> Option<String> {
        if self.dom != a.types() || self.cod != b.types() {
            return Some("endpoint types differ from the given categories".into());
        }
        for y in 0..b.n() {
            for x in 0..a.n() {
                let phi = self.at(y, x);
                for y2 in 0..b.n() {
                    if !q.leq(q.c(b.at(y2, y), phi), self.at(y2, x)) {
                        return Some(format!("left action fails at ({y2}, {y}, {x})"));
                    }
                }
                for x2 in 0..a.n() {
                    if !q.leq(q.c(phi, a.at(x, x2)), self.at(y, x2)) {
                        return Some(format!("right action fails at ({y}, {x}, {x2})"));
                    }
                }
            }
        }
        None
    }

    pub fn dom_types(&self) -> &[Obj] {
        &self.dom
    }

    pub fn cod_types(&self) -> &[Obj] {
        &self.cod
    }

    pub fn table(&self) -> &[Elt] {
        &self.elt
    }

    /// `Φ(y, x): tx -> ty`.
    #[inline]
    pub fn at(&self, y: usize, x: usize) -> Morphism {
        Morphism::new(self.dom[x], self.cod[y], self.elt[y * self.dom.len() + x])
    }

    /// Elementwise order; `None` when the endpoint types differ.
    pub fn leq(&self, q: &FiniteQuantaloid, other: &Distributor) -> Option<bool> {
        if self.dom != other.dom || self.cod != other.cod {
            return None;
        }
        Some((0..self.cod.len()).all(|y| (0..self.dom.len()).all(|x| q.leq(self.at(y, x), other.at(y, x)))))
    }

    /// Elementwise meet.
    pub fn meet(&self, q: &FiniteQuantaloid, other: &Distributor) -> Result<Distributor> {
        self.zip(other, |a, b| q.meet2(a, b))
    }

    /// Elementwise join.
    pub fn join(&self, q: &FiniteQuantaloid, other: &Distributor) -> Result<Distributor> {
        self.zip(other, |a, b| q.join2(a, b))
    }

    fn zip(&self, other: &Distributor, f: impl Fn(Morphism, Morphism) -> Morphism) -> Result<Distributor> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::TypeMismatch("distributors have different endpoints".into()));
        }
        let m = self.dom.len();
        let elt = (0..self.elt.len()).map(|i| f(self.at(i / m, i % m), other.at(i / m, i % m)).elt).collect();
        Ok(Distributor { dom: self.dom.clone(), cod: self.cod.clone(), elt })
    }
}

/// `(Ψ ⊗ Φ)(z, x) = ⋁_y Ψ(z, y)∘Φ(y, x)`.
pub fn compose_dist(q: &FiniteQuantaloid, psi: &Distributor, phi: &Distributor) -> Result<Distributor> {
    if phi.cod != psi.dom {
        return Err(Error::TypeMismatch("codomain of the first distributor is not the domain of the second".into()));
    }
    let (na, nb, nc) = (phi.dom.len(), phi.cod.len(), psi.cod.len());
    let mut elt = Vec::with_capacity(na * nc);
    for z in 0..nc {
        for x in 0..na {
            elt.push(q.join(phi.dom[x], psi.cod[z], (0..nb).map(|y| q.c(psi.at(z, y), phi.at(y, x)))).elt);
        }
    }
    Ok(Distributor { dom: phi.dom.clone(), cod: psi.cod.clone(), elt })
}

/// `Φ°(a, b) = Φ(b, a)°` without checking that the endpoints are symmetric.
pub fn involute_raw(q: &FiniteQuantaloid, phi: &Distributor) -> Result<Distributor> {
    if !q.is_involutive() {
        return Err(Error::MissingInvolution);
    }
    let (na, nb) = (phi.dom.len(), phi.cod.len());
    let elt = (0..na * nb).map(|i| q.o(phi.at(i % nb, i / nb)).elt).collect();
    Ok(Distributor { dom: phi.cod.clone(), cod: phi.dom.clone(), elt })
}

/// `Φ°: B ⇸ A` for `Φ: A ⇸ B` between symmetric categories.
pub fn involute_dist(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, phi: &Distributor) -> Result<Distributor> {
    for (c, side) in [(a, "domain"), (b, "codomain")] {
        if !c.is_symmetric(q)? {
            return Err(Error::NotApplicable(format!("the {side} category is not symmetric")));
        }
    }
    involute_raw(q, phi)
}

/// A functor given by its object map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functor {
    pub map: Vec<usize>,
}

impl Functor {
    pub fn new(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, map: Vec<usize>) -> Result<Self> {
        let f = Functor { map };
        match f.violation(q, a, b) {
            Some(msg) => Err(Error::InvalidCategory(msg)),
            None => Ok(f),
        }
    }

    pub fn identity(a: &QCategory) -> Self {
        Functor { map: (0..a.n()).collect() }
    }

    /// First failure of `tx = t(Fx)` or `A(y,x) ≤ B(Fy,Fx)`.
    pub fn violation(&self, q: &FiniteQuantaloid, a: &QCategory, b: &QCategory) -> Option<String> {
        if self.map.len() != a.n() {
            return Some("object map has wrong length".into());
        }
        for x in 0..a.n() {
            if self.map[x] >= b.n() || b.ty(self.map[x]) != a.ty(x) {
                return Some(format!("object {} is sent to an object of another type", a.name(x)));
            }
        }
        for y in 0..a.n() {
            for x in 0..a.n() {
                if !q.leq(a.at(y, x), b.at(self.map[y], self.map[x])) {
                    return Some(format!("hom ({}, {}) is not preserved", a.name(y), a.name(x)));
                }
            }
        }
        None
    }

    /// Local order: `F ≤ G` iff `1_{tx} ≤ B(Fx, Gx)` for all `x`.
    pub fn leq(&self, q: &FiniteQuantaloid, b: &QCategory, other: &Functor) -> bool {
        self.map.iter().zip(&other.map).all(|(&f, &g)| q.leq(q.id(b.ty(f)), b.at(f, g)))
    }
}

/// `B(-, F-): A ⇸ B`.
pub fn graph_of(a: &QCategory, b: &QCategory, f: &Functor) -> Distributor {
    let elt = (0..b.n()).flat_map(|y| f.map.iter().map(move |&fx| b.at(y, fx).elt)).collect();
    Distributor { dom: a.types().to_vec(), cod: b.types().to_vec(), elt }
}

/// `B(F-, -): B ⇸ A`.
pub fn cograph_of(a: &QCategory, b: &QCategory, f: &Functor) -> Distributor {
    let elt = f.map.iter().flat_map(|&fx| (0..b.n()).map(move |y| b.at(fx, y).elt)).collect();
    Distributor { dom: b.types().to_vec(), cod: a.types().to_vec(), elt }
}

/// The lifting `[Φ, B]: B ⇸ A`, `Ψ(x, y) = ⋀_{y'} Φ(y', x)↘B(y', y)`: the largest
/// `Ψ` with `Φ ⊗ Ψ ≤ B`.
pub fn right_adjoint_candidate(q: &FiniteQuantaloid, b: &QCategory, phi: &Distributor) -> Distributor {
    let (na, nb) = (phi.dom.len(), b.n());
    let mut elt = Vec::with_capacity(na * nb);
    for x in 0..na {
        for y in 0..nb {
            let (src, dst) = (b.ty(y), phi.dom[x]);
            let h = q.hom(src, dst);
            let parts = (0..nb).map(|y2| q.right_residual(phi.at(y2, x), b.at(y2, y)).expect("types line up").elt);
            elt.push(h.meet(parts));
        }
    }
    Distributor { dom: b.types().to_vec(), cod: phi.dom.clone(), elt }
}

/// The right adjoint of `Φ: A ⇸ B` in `Dist(Q)`, if `Φ` is a left adjoint.
pub fn is_left_adjoint_dist(
    q: &FiniteQuantaloid,
    a: &QCategory,
    b: &QCategory,
    phi: &Distributor,
) -> Option<Distributor> {
    let psi = right_adjoint_candidate(q, b, phi);
    let unit = compose_dist(q, &psi, phi).ok()?;
    let counit = compose_dist(q, phi, &psi).ok()?;
    let ok = a.hom_distributor().leq(q, &unit)? && counit.leq(q, &b.hom_distributor())?;
    ok.then_some(psi)
}

/// A functor `F` with `Φ = B(-, F-)`; the first one in object order.
pub fn is_representable(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, phi: &Distributor) -> Option<Functor> {
    let mut map = Vec::with_capacity(a.n());
    for x in 0..a.n() {
        let fx = (0..b.n()).find(|&c| b.ty(c) == a.ty(x) && (0..b.n()).all(|y| b.at(y, c) == phi.at(y, x)))?;
        map.push(fx);
    }
    let f = Functor { map };
    f.violation(q, a, b).is_none().then_some(f)
}

/// `A × B` on pairs of equal type, homs the meets; objects listed `a`-major.
pub fn product(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory) -> (QCategory, Vec<(usize, usize)>) {
    let pairs: Vec<(usize, usize)> =
        (0..a.n()).flat_map(|x| (0..b.n()).map(move |y| (x, y))).filter(|&(x, y)| a.ty(x) == b.ty(y)).collect();
    pair_category(q, a, b, &pairs)
}

fn pair_category(
    q: &FiniteQuantaloid,
    a: &QCategory,
    b: &QCategory,
    pairs: &[(usize, usize)],
) -> (QCategory, Vec<(usize, usize)>) {
    let names = pairs.iter().map(|&(x, y)| format!("({},{})", a.name(x), b.name(y))).collect();
    let types = pairs.iter().map(|&(x, _)| a.ty(x)).collect();
    let hom = pairs
        .iter()
        .flat_map(|&(a2, b2)| pairs.iter().map(move |&(a1, b1)| q.meet2(a.at(a2, a1), b.at(b2, b1)).elt))
        .collect();
    (QCategory { objects: QTypedSet { names, types }, hom }, pairs.to_vec())
}

/// The full subcategory `R` of `A × B` on pairs with `1 ≤ Φ(b, a)`, with its projections.
#[derive(Clone, Debug)]
pub struct MapTabulation {
    pub category: QCategory,
    pub pairs: Vec<(usize, usize)>,
    /// `T: R -> A`
    pub to_dom: Functor,
    /// `S: R -> B`
    pub to_cod: Functor,
}

impl MapTabulation {
    /// `B(-, S-) ⊗ A(T-, -): A ⇸ B`, which recovers `Φ` when the endpoints are Cauchy complete.
    pub fn composite(&self, q: &FiniteQuantaloid, a: &QCategory, b: &QCategory) -> Distributor {
        let s = graph_of(&self.category, b, &self.to_cod);
        let t = cograph_of(&self.category, a, &self.to_dom);
        compose_dist(q, &s, &t).expect("endpoints line up")
    }
}

pub fn map_tabulation(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, phi: &Distributor) -> MapTabulation {
    let pairs: Vec<(usize, usize)> = (0..a.n())
        .flat_map(|x| (0..b.n()).map(move |y| (x, y)))
        .filter(|&(x, y)| a.ty(x) == b.ty(y) && q.leq(q.id(a.ty(x)), phi.at(y, x)))
        .collect();
    let (category, pairs) = pair_category(q, a, b, &pairs);
    let to_dom = Functor { map: pairs.iter().map(|p| p.0).collect() };
    let to_cod = Functor { map: pairs.iter().map(|p| p.1).collect() };
    MapTabulation { category, pairs, to_dom, to_cod }
}

#[cfg(test)]
mod tests;
