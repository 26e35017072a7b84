use alloc::vec;
use alloc::vec::Vec;

use super::{Distributor, QCategory, QTypedSet};
use crate::error::{Error, Result};
use crate::lattice::Elt;
use crate::quantaloid::{FiniteQuantaloid, Morphism, Obj};

/// Restrictions for [`categories_on`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CategoryShape {
    pub symmetric: bool,
    /// Endo-homs are identities.
    pub normal: bool,
    pub max_nodes: u64,
}

impl Default for CategoryShape {
    fn default() -> Self {
        CategoryShape { symmetric: false, normal: false, max_nodes: 1 << 24 }
    }
}

const UNSET: Elt = usize::MAX;

/// All categories on the typed set `types`, in lexicographic order of hom tables
/// (cells visited shell by shell).
pub fn categories_on(q: &FiniteQuantaloid, types: &[Obj], shape: &CategoryShape) -> Result<Vec<QCategory>> {
    if shape.symmetric && !q.is_involutive() {
        return Err(Error::MissingInvolution);
    }
    let n = types.len();
    let mut cells = Vec::new();
    for k in 0..n {
        cells.push((k, k));
        for j in 0..k {
            cells.push((k, j));
            if !shape.symmetric {
                cells.push((j, k));
            }
        }
    }
    let mut hom = vec![UNSET; n * n];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut search = CatSearch { q, types, shape, cells: &cells, nodes: &mut nodes, out: &mut out };
    search.go(0, &mut hom)?;
    Ok(out)
}

struct CatSearch<'a> {
    q: &'a FiniteQuantaloid,
    types: &'a [Obj],
    shape: &'a CategoryShape,
    cells: &'a [(usize, usize)],
    nodes: &'a mut u64,
    out: &'a mut Vec<QCategory>,
}

impl CatSearch<'_> {
    fn at(&self, hom: &[Elt], y: usize, x: usize) -> Option<Morphism> {
        let e = hom[y * self.types.len() + x];
        (e != UNSET).then(|| Morphism::new(self.types[x], self.types[y], e))
    }

    fn go(&mut self, i: usize, hom: &mut Vec<Elt>) -> Result<()> {
        let n = self.types.len();
        if i == self.cells.len() {
            let objects = QTypedSet::anonymous(self.types.to_vec());
            self.out.push(QCategory::new_unchecked(objects, hom.clone()));
            return Ok(());
        }
        let (y, x) = self.cells[i];
        let (tx, ty) = (self.types[x], self.types[y]);
        let candidates: Vec<Elt> =
            if x == y && self.shape.normal { vec![self.q.id(tx).elt] } else { self.q.hom(tx, ty).elements().collect() };
        for e in candidates {
            *self.nodes += 1;
            if *self.nodes > self.shape.max_nodes {
                return Err(Error::ResourceCap { what: "enumerating enriched categories", cap: self.shape.max_nodes });
            }
            let m = Morphism::new(tx, ty, e);
            if x == y {
                if !self.q.leq(self.q.id(tx), m) {
                    continue;
                }
                if self.shape.symmetric && self.q.o(m) != m {
                    continue;
                }
            }
            hom[y * n + x] = e;
            if self.shape.symmetric && x != y {
                hom[x * n + y] = self.q.o(m).elt;
            }
            if self.consistent(hom, y, x) {
                self.go(i + 1, hom)?;
            }
            hom[y * n + x] = UNSET;
            if self.shape.symmetric && x != y {
                hom[x * n + y] = UNSET;
            }
        }
        Ok(())
    }

    /// Composition inequalities among assigned cells that touch `(y, x)` or its mirror.
    fn consistent(&self, hom: &[Elt], y: usize, x: usize) -> bool {
        let n = self.types.len();
        let touches = |a: usize, b: usize| (a, b) == (y, x) || (self.shape.symmetric && (a, b) == (x, y));
        for c in 0..n {
            for b in 0..n {
                for a in 0..n {
                    if !(touches(c, b) || touches(b, a) || touches(c, a)) {
                        continue;
                    }
                    let (Some(f), Some(g), Some(h)) = (self.at(hom, b, a), self.at(hom, c, b), self.at(hom, c, a))
                    else {
                        continue;
                    };
                    if !self.q.leq(self.q.c(g, f), h) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All distributors `a ⇸ b`, in lexicographic order of their tables.
pub fn distributors(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, max_nodes: u64) -> Result<Vec<Distributor>> {
    let (na, nb) = (a.n(), b.n());
    let mut elt = vec![UNSET; na * nb];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    dist_go(q, a, b, 0, &mut elt, &mut out, &mut nodes, max_nodes)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dist_go(
    q: &FiniteQuantaloid,
    a: &QCategory,
    b: &QCategory,
    i: usize,
    elt: &mut Vec<Elt>,
    out: &mut Vec<Distributor>,
    nodes: &mut u64,
    cap: u64,
) -> Result<()> {
    let (na, nb) = (a.n(), b.n());
    if i == na * nb {
        out.push(Distributor::new_unchecked(a.types().to_vec(), b.types().to_vec(), elt.clone()));
        return Ok(());
    }
    let (y, x) = (i / na, i % na);
    let get = |elt: &[Elt], y: usize, x: usize| {
        let e = elt[y * na + x];
        (e != UNSET).then(|| Morphism::new(a.ty(x), b.ty(y), e))
    };
    for e in q.hom(a.ty(x), b.ty(y)).elements() {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::ResourceCap { what: "enumerating distributors", cap });
        }
        elt[i] = e;
        let v = Morphism::new(a.ty(x), b.ty(y), e);
        let mut ok = true;
        for y2 in 0..nb {
            if let Some(w) = get(elt, y2, x) {
                ok &= q.leq(q.c(b.at(y2, y), v), w) && q.leq(q.c(b.at(y, y2), w), v);
            }
        }
        for x2 in 0..na {
            if let Some(w) = get(elt, y, x2) {
                ok &= q.leq(q.c(v, a.at(x, x2)), w) && q.leq(q.c(w, a.at(x2, x)), v);
            }
        }
        if ok {
            dist_go(q, a, b, i + 1, elt, out, nodes, cap)?;
        }
        elt[i] = UNSET;
    }
    Ok(())
}
