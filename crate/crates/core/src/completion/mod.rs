//! Presheaves, the Yoneda embedding, Cauchy and symmetric completion.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::Elt;
use crate::qcat::{
    cograph_of, compose_dist, graph_of, involute_raw, is_left_adjoint_dist, Distributor, Functor, QCategory, QTypedSet,
};
use crate::quantaloid::{FiniteQuantaloid, Morphism, Obj};

/// A presheaf `φ: *_X ⇸ A`, `elt[a] = φ(a) ∈ Q(X, ta)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Presheaf {
    pub at: Obj,
    pub elt: Vec<Elt>,
}

impl Presheaf {
    pub fn value(&self, a: &QCategory, x: usize) -> Morphism {
        Morphism::new(self.at, a.ty(x), self.elt[x])
    }

    pub fn as_distributor(&self, a: &QCategory) -> Distributor {
        Distributor::new_unchecked(vec![self.at], a.types().to_vec(), self.elt.clone())
    }

    /// `A(a', a)∘φ(a) ≤ φ(a')` for all objects.
    pub fn is_valid(&self, q: &FiniteQuantaloid, a: &QCategory) -> bool {
        self.elt.len() == a.n()
            && (0..a.n()).all(|x| (0..a.n()).all(|y| q.leq(q.c(a.at(y, x), self.value(a, x)), self.value(a, y))))
    }

    /// `X[e0,e1,...]` with element names.
    pub fn describe(&self, q: &FiniteQuantaloid, a: &QCategory) -> String {
        let parts: Vec<&str> = (0..a.n()).map(|x| q.hom(self.at, a.ty(x)).name(self.elt[x])).collect();
        format!("{}[{}]", q.object_name(self.at), parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresheafConfig {
    /// Maximum number of partial assignments tried per enumeration.
    pub max_nodes: u64,
}

impl Default for PresheafConfig {
    fn default() -> Self {
        PresheafConfig { max_nodes: 1_000_000 }
    }
}

/// All presheaves on `a` at `x`, in lexicographic order of their element vectors.
pub fn presheaves(q: &FiniteQuantaloid, a: &QCategory, x: Obj, cfg: &PresheafConfig) -> Result<Vec<Presheaf>> {
    let n = a.n();
    let mut out = Vec::new();
    let mut cur: Vec<Elt> = Vec::with_capacity(n);
    let mut nodes = 0u64;
    fn go(
        q: &FiniteQuantaloid,
        a: &QCategory,
        x: Obj,
        cur: &mut Vec<Elt>,
        out: &mut Vec<Presheaf>,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<()> {
        let i = cur.len();
        if i == a.n() {
            out.push(Presheaf { at: x, elt: cur.clone() });
            return Ok(());
        }
        for e in q.hom(x, a.ty(i)).elements() {
            *nodes += 1;
            if *nodes > cap {
                return Err(Error::ResourceCap { what: "enumerating presheaves", cap });
            }
            let v = Morphism::new(x, a.ty(i), e);
            let ok = q.leq(q.c(a.at(i, i), v), v)
                && (0..i).all(|j| {
                    let w = Morphism::new(x, a.ty(j), cur[j]);
                    q.leq(q.c(a.at(j, i), v), w) && q.leq(q.c(a.at(i, j), w), v)
                });
            if ok {
                cur.push(e);
                go(q, a, x, cur, out, nodes, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(q, a, x, &mut cur, &mut out, &mut nodes, cfg.max_nodes)?;
    Ok(out)
}

/// `[ψ, φ] = ⋀_a ψ(a)↘φ(a) ∈ Q(tφ, tψ)`.
pub fn presheaf_hom(q: &FiniteQuantaloid, a: &QCategory, psi: &Presheaf, phi: &Presheaf) -> Morphism {
    let h = q.hom(phi.at, psi.at);
    let parts = (0..a.n()).map(|x| q.right_residual(psi.value(a, x), phi.value(a, x)).expect("same types").elt);
    Morphism::new(phi.at, psi.at, h.meet(parts))
}

/// The representable presheaf `A(-, x)`.
pub fn yoneda(a: &QCategory, x: usize) -> Presheaf {
    Presheaf { at: a.ty(x), elt: (0..a.n()).map(|y| a.at(y, x).elt).collect() }
}

/// Right adjoint of the presheaf viewed as a distributor `*_X ⇸ A`, if any.
pub fn presheaf_right_adjoint(q: &FiniteQuantaloid, a: &QCategory, phi: &Presheaf) -> Option<Distributor> {
    let point = QCategory::point(q, phi.at).expect("valid type");
    is_left_adjoint_dist(q, &point, a, &phi.as_distributor(a))
}

/// Left adjoint whose right adjoint is its involute.
pub fn is_symmetric_left_adjoint_presheaf(q: &FiniteQuantaloid, a: &QCategory, phi: &Presheaf) -> Result<bool> {
    let d = phi.as_distributor(a);
    let inv = involute_raw(q, &d)?;
    Ok(presheaf_right_adjoint(q, a, phi).is_some_and(|r| r == inv))
}

/// A completion of `a` as a full subcategory of presheaves.
#[derive(Clone, Debug)]
pub struct Completion {
    pub category: QCategory,
    pub presheaves: Vec<Presheaf>,
    /// `yoneda[x]` is the index of `A(-, x)` among the presheaves.
    pub yoneda: Vec<usize>,
}

impl Completion {
    pub fn yoneda_functor(&self) -> Functor {
        Functor { map: self.yoneda.clone() }
    }
}

fn completion_by(
    q: &FiniteQuantaloid,
    a: &QCategory,
    cfg: &PresheafConfig,
    keep: impl Fn(&Presheaf) -> Result<bool>,
) -> Result<Completion> {
    let mut chosen = Vec::new();
    for x in q.objects() {
        for p in presheaves(q, a, x, cfg)? {
            if keep(&p)? {
                chosen.push(p);
            }
        }
    }
    Ok(presheaf_category(q, a, chosen))
}

/// The full subcategory of `P(A)` on the given presheaves.
pub fn presheaf_category(q: &FiniteQuantaloid, a: &QCategory, chosen: Vec<Presheaf>) -> Completion {
    let names = chosen.iter().map(|p| p.describe(q, a)).collect();
    let types = chosen.iter().map(|p| p.at).collect();
    let hom = chosen.iter().flat_map(|y| chosen.iter().map(move |x| presheaf_hom(q, a, y, x).elt)).collect();
    let objects = QTypedSet::new(names, types).expect("distinct presheaves have distinct names");
    let category = QCategory::new_unchecked(objects, hom);
    let yoneda = (0..a.n()).map(|x| chosen.iter().position(|p| *p == yoneda(a, x)).unwrap_or(usize::MAX)).collect();
    Completion { category, presheaves: chosen, yoneda }
}

/// `A_cc`: the left adjoint presheaves.
pub fn cauchy_completion(q: &FiniteQuantaloid, a: &QCategory, cfg: &PresheafConfig) -> Result<Completion> {
    completion_by(q, a, cfg, |p| Ok(presheaf_right_adjoint(q, a, p).is_some()))
}

/// `A_sc`: the symmetric left adjoint presheaves of a symmetric category.
pub fn symmetric_completion(q: &FiniteQuantaloid, a: &QCategory, cfg: &PresheafConfig) -> Result<Completion> {
    if !a.is_symmetric(q)? {
        return Err(Error::NotApplicable("symmetric completion needs a symmetric category".into()));
    }
    completion_by(q, a, cfg, |p| is_symmetric_left_adjoint_presheaf(q, a, p))
}

fn represented(q: &FiniteQuantaloid, a: &QCategory, phi: &Presheaf) -> bool {
    (0..a.n()).any(|x| {
        let y = yoneda(a, x);
        y.at == phi.at && {
            let one = q.id(phi.at);
            q.leq(one, presheaf_hom(q, a, phi, &y)) && q.leq(one, presheaf_hom(q, a, &y, phi))
        }
    })
}

/// Every left adjoint presheaf is isomorphic to a representable one.
pub fn is_cauchy_complete(q: &FiniteQuantaloid, a: &QCategory, cfg: &PresheafConfig) -> Result<bool> {
    for x in q.objects() {
        for p in presheaves(q, a, x, cfg)? {
            if presheaf_right_adjoint(q, a, &p).is_some() && !represented(q, a, &p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every symmetric left adjoint presheaf is isomorphic to a representable one.
pub fn is_symmetrically_complete(q: &FiniteQuantaloid, a: &QCategory, cfg: &PresheafConfig) -> Result<bool> {
    for x in q.objects() {
        for p in presheaves(q, a, x, cfg)? {
            if is_symmetric_left_adjoint_presheaf(q, a, &p)? && !represented(q, a, &p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The graph and cograph of `A -> A_cc` are mutually inverse distributors.
pub fn yoneda_is_morita(q: &FiniteQuantaloid, a: &QCategory, cfg: &PresheafConfig) -> Result<bool> {
    let c = cauchy_completion(q, a, cfg)?;
    if c.yoneda.contains(&usize::MAX) {
        return Ok(false);
    }
    let f = c.yoneda_functor();
    let g = graph_of(a, &c.category, &f);
    let h = cograph_of(a, &c.category, &f);
    Ok(compose_dist(q, &h, &g)? == a.hom_distributor() && compose_dist(q, &g, &h)? == c.category.hom_distributor())
}
