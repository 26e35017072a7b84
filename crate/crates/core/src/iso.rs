//! Isomorphism search between finite quantaloids.
//!
//! Object bijections are tried in lexicographic order; for each one the
//! hom-lattice isomorphisms are chosen hom by hom, checking identities,
//! composition and the involution as soon as all homs involved are fixed.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Elt, FiniteSupLattice};
use crate::quantaloid::{FiniteQuantaloid, Morphism, Obj};

/// An isomorphism `a -> b`: object map plus one lattice bijection per hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaloidIso {
    pub objects: Vec<Obj>,
    /// `elements[x * n + y][e]` is the image of `e ∈ a.hom(x, y)` in `b.hom(objects[x], objects[y])`.
    pub elements: Vec<Vec<Elt>>,
}

impl QuantaloidIso {
    pub fn apply(&self, m: Morphism) -> Morphism {
        let n = self.objects.len();
        Morphism::new(self.objects[m.src], self.objects[m.dst], self.elements[m.src * n + m.dst][m.elt])
    }

    /// Re-checks every structure-preservation condition.
    pub fn verify(&self, a: &FiniteQuantaloid, b: &FiniteQuantaloid) -> bool {
        let n = a.n();
        if b.n() != n || self.objects.len() != n {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                let (ha, hb) = (a.hom(x, y), b.hom(self.objects[x], self.objects[y]));
                let map = &self.elements[x * n + y];
                if map.len() != ha.len() || hb.len() != ha.len() {
                    return false;
                }
                for e in ha.elements() {
                    for f in ha.elements() {
                        if ha.leq(e, f) != hb.leq(map[e], map[f]) {
                            return false;
                        }
                    }
                }
            }
            if self.apply(a.id(x)) != b.id(self.objects[x]) {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in a.morphisms(x, y) {
                        for g in a.morphisms(y, z) {
                            if self.apply(a.c(g, f)) != b.c(self.apply(g), self.apply(f)) {
                                return false;
                            }
                        }
                    }
                }
                if a.is_involutive() && b.is_involutive() {
                    for f in a.morphisms(x, y) {
                        if self.apply(a.o(f)) != b.o(self.apply(f)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// All order isomorphisms `a -> b`, up to `cap` of them.
pub fn lattice_isomorphisms(a: &FiniteSupLattice, b: &FiniteSupLattice, cap: usize) -> Vec<Vec<Elt>> {
    let mut out = Vec::new();
    if a.len() != b.len() {
        return out;
    }
    let sig = |l: &FiniteSupLattice, e: Elt| {
        let below = l.elements().filter(|&x| l.leq(x, e)).count();
        let above = l.elements().filter(|&x| l.leq(e, x)).count();
        (below, above)
    };
    let sa: Vec<_> = a.elements().map(|e| sig(a, e)).collect();
    let sb: Vec<_> = b.elements().map(|e| sig(b, e)).collect();
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    fn go(
        i: usize,
        a: &FiniteSupLattice,
        b: &FiniteSupLattice,
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        map: &mut Vec<Elt>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Elt>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if i == a.len() {
            out.push(map.clone());
            return;
        }
        for t in b.elements() {
            if used[t] || sa[i] != sb[t] {
                continue;
            }
            let ok = (0..i).all(|j| a.leq(j, i) == b.leq(map[j], t) && a.leq(i, j) == b.leq(t, map[j]));
            if ok {
                map[i] = t;
                used[t] = true;
                go(i + 1, a, b, sa, sb, map, used, out, cap);
                used[t] = false;
            }
        }
    }
    go(0, a, b, &sa, &sb, &mut map, &mut used, &mut out, cap);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Search limits.
#[derive(Clone, Copy, Debug)]
pub struct IsoConfig {
    pub max_objects: usize,
    pub max_lattice_isos: usize,
    pub max_nodes: u64,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { max_objects: 7, max_lattice_isos: 4096, max_nodes: 1 << 22 }
    }
}

/// Finds an isomorphism preserving composition, identities, order and (when both
/// sides have one) the involution.
pub fn find_isomorphism(a: &FiniteQuantaloid, b: &FiniteQuantaloid, cfg: &IsoConfig) -> Result<Option<QuantaloidIso>> {
    let n = a.n();
    if b.n() != n || a.size() != b.size() {
        return Ok(None);
    }
    if n > cfg.max_objects {
        return Err(Error::ResourceCap {
            what: "permuting objects for isomorphism search",
            cap: cfg.max_objects as u64,
        });
    }
    let mut nodes = 0u64;
    for perm in permutations(n) {
        let shapes_match = (0..n).all(|x| (0..n).all(|y| a.hom(x, y).len() == b.hom(perm[x], perm[y]).len()));
        if !shapes_match {
            continue;
        }
        // hom order: diagonal first, then by pair index
        let mut order: Vec<(Obj, Obj)> = (0..n).map(|x| (x, x)).collect();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    order.push((x, y));
                }
            }
        }
        let mut cands = Vec::with_capacity(order.len());
        let mut empty = false;
        for &(x, y) in &order {
            let mut isos = lattice_isomorphisms(a.hom(x, y), b.hom(perm[x], perm[y]), cfg.max_lattice_isos);
            if isos.len() >= cfg.max_lattice_isos {
                return Err(Error::ResourceCap {
                    what: "enumerating hom-lattice isomorphisms",
                    cap: cfg.max_lattice_isos as u64,
                });
            }
            if x == y {
                isos.retain(|m| m[a.id(x).elt] == b.id(perm[x]).elt);
            }
            empty |= isos.is_empty();
            cands.push(isos);
        }
        if empty {
            continue;
        }
        let mut chosen: Vec<Option<Vec<Elt>>> = vec![None; n * n];
        if let Some(found) = assign(a, b, &perm, &order, &cands, 0, &mut chosen, &mut nodes, cfg.max_nodes)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &FiniteQuantaloid,
    b: &FiniteQuantaloid,
    perm: &[Obj],
    order: &[(Obj, Obj)],
    cands: &[Vec<Vec<Elt>>],
    i: usize,
    chosen: &mut Vec<Option<Vec<Elt>>>,
    nodes: &mut u64,
    cap: u64,
) -> Result<Option<QuantaloidIso>> {
    let n = a.n();
    if i == order.len() {
        let elements = chosen.iter().map(|m| m.clone().expect("all homs assigned")).collect();
        return Ok(Some(QuantaloidIso { objects: perm.to_vec(), elements }));
    }
    let (x, y) = order[i];
    for m in &cands[i] {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::ResourceCap { what: "searching quantaloid isomorphisms", cap });
        }
        chosen[x * n + y] = Some(m.clone());
        if consistent(a, b, perm, chosen, x, y) {
            if let Some(f) = assign(a, b, perm, order, cands, i + 1, chosen, nodes, cap)? {
                return Ok(Some(f));
            }
        }
        chosen[x * n + y] = None;
    }
    Ok(None)
}

/// Checks all conditions that involve hom `(p, q)` and only assigned homs.
fn consistent(
    a: &FiniteQuantaloid,
    b: &FiniteQuantaloid,
    perm: &[Obj],
    chosen: &[Option<Vec<Elt>>],
    p: Obj,
    q: Obj,
) -> bool {
    let n = a.n();
    let get = |x: Obj, y: Obj| chosen[x * n + y].as_ref();
    let img = |m: Morphism| -> Option<Morphism> {
        get(m.src, m.dst).map(|t| Morphism::new(perm[m.src], perm[m.dst], t[m.elt]))
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let involved = (x, y) == (p, q) || (y, z) == (p, q) || (x, z) == (p, q);
                if !involved || get(x, y).is_none() || get(y, z).is_none() || get(x, z).is_none() {
                    continue;
                }
                for f in a.morphisms(x, y) {
                    let fi = img(f).expect("assigned");
                    for g in a.morphisms(y, z) {
                        if img(a.c(g, f)) != Some(b.c(img(g).expect("assigned"), fi)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    if a.is_involutive() && b.is_involutive() && get(q, p).is_some() {
        for f in a.morphisms(p, q) {
            if img(a.o(f)) != Some(b.o(img(f).expect("assigned"))) {
                return false;
            }
        }
    }
    true
}
