//! Example generators: locales and groupoid quantales.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::FiniteSupLattice;
use crate::quantaloid::FiniteQuantaloid;

/// A locale as a one-object quantale: `∘ = ∧`, unit `⊤`, identity involution.
pub fn locale_quantale(l: &FiniteSupLattice) -> Result<FiniteQuantaloid> {
    if let Some((x, a, b)) = l.distributivity_counterexample() {
        return Err(Error::NotApplicable(format!(
            "not a locale: {} ∧ ({} ∨ {}) is not distributive",
            l.name(x),
            l.name(a),
            l.name(b)
        )));
    }
    FiniteQuantaloid::from_fn(vec!["*".to_string()], vec![l.clone()], vec![l.top()], |_, _, _, g, f| l.meet2(g, f))?
        .with_involution_fn(|_, _, f| f)
}

/// A finite groupoid. Arrow `a` goes `src[a] -> tgt[a]`; `compose(g, f)` is `g·f`
/// (first `f`, then `g`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    comp: Vec<Option<usize>>,
    inv: Vec<usize>,
    ids: Vec<usize>,
}

impl FiniteGroupoid {
    /// Validates category and inverse axioms. `comp(g, f)` is consulted only for
    /// composable pairs (`src g = tgt f`).
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        comp: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        let k = arrows.len();
        if k > 20 {
            return Err(Error::ResourceCap { what: "building a groupoid quantale", cap: 20 });
        }
        let (names, src, tgt): (Vec<String>, Vec<usize>, Vec<usize>) =
            arrows.into_iter().fold((Vec::new(), Vec::new(), Vec::new()), |(mut n, mut s, mut t), (a, x, y)| {
                n.push(a);
                s.push(x);
                t.push(y);
                (n, s, t)
            });
        if src.iter().chain(&tgt).any(|&o| o >= objects.len()) {
            return bad("arrow endpoint out of range".into());
        }
        let mut table = vec![None; k * k];
        for g in 0..k {
            for f in 0..k {
                if src[g] == tgt[f] {
                    let h = comp(g, f);
                    if h >= k || src[h] != src[f] || tgt[h] != tgt[g] {
                        return bad(format!("composite of {} and {} is ill-typed", names[g], names[f]));
                    }
                    table[g * k + f] = Some(h);
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
                None => return bad(format!("object {} has no identity", objects[x])),
            }
        }
        for f in 0..k {
            for g in 0..k {
                for h in 0..k {
                    if let (Some(gf), Some(hg)) = (c(g, f), c(h, g)) {
                        if c(h, gf) != c(hg, f) {
                            return bad("composition is not associative".into());
                        }
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(k);
        for f in 0..k {
            let i = (0..k).find(|&g| c(g, f) == Some(ids[src[f]]) && c(f, g) == Some(ids[tgt[f]]));
            match i {
                Some(g) => inv.push(g),
                None => return bad(format!("arrow {} has no inverse", names[f])),
            }
        }
        Ok(FiniteGroupoid { objects, arrows: names, src, tgt, comp: table, inv, ids })
    }

    /// A group as a one-object groupoid.
    pub fn group(elements: &[&str], mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let arrows = elements.iter().map(|e| (e.to_string(), 0, 0)).collect();
        Self::new(vec!["*".to_string()], arrows, mul)
    }

    /// The cyclic group `Z/k` with elements `e, g, g2, ...`.
    pub fn cyclic(k: usize) -> Result<Self> {
        let names: Vec<String> = (0..k)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::group(&refs, |a, b| (a + b) % k)
    }

    /// The pair groupoid on `{1..k}` with one arrow `(i,j): i -> j` for each pair.
    pub fn pair(k: usize) -> Result<Self> {
        let objects = (1..=k).map(|i| format!("{i}")).collect();
        let mut arrows = Vec::new();
        for i in 0..k {
            for j in 0..k {
                arrows.push((format!("({},{})", i + 1, j + 1), i, j));
            }
        }
        // (j,l)·(i,j) = (i,l)
        Self::new(objects, arrows, |g, f| (f / k) * k + g % k)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn src(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.tgt[a]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.arrows.len() + f]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.ids[x]
    }
}

/// `O(G)` for a finite groupoid: arrow subsets under pointwise composition and inverse.
pub fn groupoid_quantale(g: &FiniteGroupoid) -> Result<FiniteQuantaloid> {
    let k = g.arrows.len();
    let atoms: Vec<&str> = g.arrows.iter().map(String::as_str).collect();
    let lattice = FiniteSupLattice::powerset(&atoms)?;
    let bits = |m: usize| (0..k).filter(move |&i| m & (1 << i) != 0);
    let unit: usize = g.ids.iter().map(|&i| 1usize << i).sum();
    let q = FiniteQuantaloid::from_fn(vec!["*".to_string()], vec![lattice], vec![unit], |_, _, _, s, t| {
        let mut out = 0usize;
        for a in bits(s) {
            for b in bits(t) {
                if let Some(c) = g.compose(a, b) {
                    out |= 1 << c;
                }
            }
        }
        out
    })?
    .with_involution_fn(|_, _, s| bits(s).map(|a| 1usize << g.inv[a]).sum())?;
    // inverse quantal frame: ⊤ is the join of partial units
    let h = q.hom(0, 0);
    let partial_units = h.elements().filter(|&p| {
        let m = crate::quantaloid::Morphism::new(0, 0, p);
        let pp = q.join2(q.c(q.o(m), m), q.c(m, q.o(m)));
        q.leq(pp, q.id(0))
    });
    if h.join(partial_units) != h.top() {
        return Err(Error::InternalConsistency("groupoid quantale is not an inverse quantal frame".into()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_locale_is_boolean() {
        let q = locale_quantale(&FiniteSupLattice::chain(&["0", "1"]).unwrap()).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.id(0).elt, 1);
        let t = groupoid_quantale(&FiniteGroupoid::cyclic(1).unwrap()).unwrap();
        assert_eq!(t.comp_table(0, 0, 0), q.comp_table(0, 0, 0));
    }

    #[test]
    fn z2_table() {
        let q = groupoid_quantale(&FiniteGroupoid::cyclic(2).unwrap()).unwrap();
        let g = q.resolve_morphism("*", "*", "{g}").unwrap();
        assert_eq!(q.hom(0, 0).name(q.c(g, g).elt), "{e}");
        assert_eq!(q.o(g), g);
        assert_eq!(q.hom(0, 0).name(q.id(0).elt), "{e}");
    }

    #[test]
    fn non_locale_rejected() {
        let m3 = FiniteSupLattice::from_named(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        assert!(matches!(locale_quantale(&m3), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn bad_groupoid_rejected() {
        // a monoid that is not a group
        let r = FiniteGroupoid::group(&["e", "z"], |a, b| a.max(b));
        assert!(matches!(r, Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn pair_groupoid_composition() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let idx = |s: &str| g.arrows().iter().position(|a| a == s).unwrap();
        assert_eq!(g.compose(idx("(1,2)"), idx("(2,1)")), Some(idx("(2,2)")));
        assert_eq!(g.compose(idx("(1,2)"), idx("(1,2)")), None);
        assert_eq!(g.inverse(idx("(1,2)")), idx("(2,1)"));
    }
}
