use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteQuantaloid, Morphism, Obj, Violation};
use crate::error::{Error, Result};
use crate::lattice::Elt;

/// The result of splitting a set of idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub quantaloid: FiniteQuantaloid,
    /// Object `i` of the splitting is the idempotent `idempotents[i]` of the parent.
    pub idempotents: Vec<Morphism>,
    /// `elements[e * n + f][k]` is the parent element behind local element `k` of `hom(e, f)`.
    pub elements: Vec<Vec<Elt>>,
    /// When every identity was split: object `X` of the parent goes to `embedding[X]`.
    pub embedding: Option<Vec<Obj>>,
}

impl Splitting {
    /// The parent morphism behind a morphism of the splitting.
    pub fn to_parent(&self, m: Morphism) -> Morphism {
        let n = self.idempotents.len();
        let (e, f) = (self.idempotents[m.src], self.idempotents[m.dst]);
        Morphism::new(e.src, f.src, self.elements[m.src * n + m.dst][m.elt])
    }

    /// The morphism `e -> f` of the splitting behind `x`, if `x` is fixed by `e` and `f`.
    pub fn from_parent(&self, e: Obj, f: Obj, x: Morphism) -> Option<Morphism> {
        let n = self.idempotents.len();
        let (pe, pf) = (self.idempotents[e], self.idempotents[f]);
        if x.src != pe.src || x.dst != pf.src {
            return None;
        }
        self.elements[e * n + f].iter().position(|&p| p == x.elt).map(|k| Morphism::new(e, f, k))
    }

    /// The fully faithful embedding of a parent morphism (requires all identities split).
    pub fn embed(&self, m: Morphism) -> Option<Morphism> {
        let emb = self.embedding.as_ref()?;
        self.from_parent(emb[m.src], emb[m.dst], m)
    }

    /// Checks that binary meets of the splitting agree with the parent's.
    pub fn meet_violation(&self, parent: &FiniteQuantaloid) -> Option<Violation> {
        let q = &self.quantaloid;
        for e in q.objects() {
            for f in q.objects() {
                for a in q.morphisms(e, f) {
                    for b in q.morphisms(e, f) {
                        let local = self.to_parent(q.meet2(a, b));
                        let (pa, pb) = (self.to_parent(a), self.to_parent(b));
                        if local != parent.meet2(pa, pb) {
                            return Some(Violation::SplitMeet {
                                e1: self.idempotents[e],
                                e2: self.idempotents[f],
                                a: pa,
                                b: pb,
                            });
                        }
                    }
                }
            }
        }
        None
    }
}

fn object_name(q: &FiniteQuantaloid, e: Morphism) -> String {
    let elt = q.hom(e.src, e.src).name(e.elt);
    if q.n() == 1 {
        String::from(elt)
    } else {
        format!("{}@{}", elt, q.object_name(e.src))
    }
}

/// Splits the idempotents `es`. With `involutive`, every member must be symmetric
/// and the splitting inherits the involution.
pub fn split_idempotents(q: &FiniteQuantaloid, es: &[Morphism], involutive: bool) -> Result<Splitting> {
    if involutive && !q.is_involutive() {
        return Err(Error::MissingInvolution);
    }
    for &e in es {
        if e.src >= q.n() || e.dst >= q.n() || e.elt >= q.hom(e.src, e.dst).len() {
            return Err(Error::UnknownName(format!("idempotent {e:?} out of range")));
        }
        if !q.is_idempotent(e) {
            return Err(Error::NotApplicable(format!("{} is not idempotent", q.describe(e))));
        }
        if involutive && q.o(e) != e {
            return Err(Error::NotApplicable(format!("{} is not symmetric", q.describe(e))));
        }
    }
    for i in 0..es.len() {
        if es[..i].contains(&es[i]) {
            return Err(Error::NotApplicable(format!("{} listed twice", q.describe(es[i]))));
        }
    }
    let n = es.len();
    let mut elements = Vec::with_capacity(n * n);
    let mut homs = Vec::with_capacity(n * n);
    // parent element -> local index, per hom of the splitting
    let mut local: Vec<Vec<Option<Elt>>> = Vec::with_capacity(n * n);
    for &e in es {
        for &f in es {
            let fixed: Vec<Elt> =
                q.morphisms(e.src, f.src).filter(|&x| q.c(f, x) == x && q.c(x, e) == x).map(|x| x.elt).collect();
            homs.push(q.hom(e.src, f.src).sup_closed_subset(&fixed)?);
            let mut back = vec![None; q.hom(e.src, f.src).len()];
            for (k, &p) in fixed.iter().enumerate() {
                back[p] = Some(k);
            }
            local.push(back);
            elements.push(fixed);
        }
    }
    let mut comp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (es[a].src, es[b].src, es[c].src);
                let (eab, ebc) = (&elements[a * n + b], &elements[b * n + c]);
                let mut t = Vec::with_capacity(eab.len() * ebc.len());
                for &g in ebc {
                    for &f in eab {
                        let r = q.comp(x, y, z, g, f);
                        let k = local[a * n + c][r]
                            .ok_or_else(|| Error::InternalConsistency("composite left the splitting hom".into()))?;
                        t.push(k as u32);
                    }
                }
                comp.push(t);
            }
        }
    }
    let ids: Vec<Elt> =
        (0..n).map(|a| local[a * n + a][es[a].elt].expect("an idempotent is fixed by itself")).collect();
    let inv = if involutive {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut row = Vec::with_capacity(elements[a * n + b].len());
                for &x in &elements[a * n + b] {
                    let xo = q.o(Morphism::new(es[a].src, es[b].src, x));
                    row.push(
                        local[b * n + a][xo.elt]
                            .ok_or_else(|| Error::InternalConsistency("involute left the splitting hom".into()))?,
                    );
                }
                table.push(row);
            }
        }
        Some(table)
    } else {
        None
    };
    let names = es.iter().map(|&e| object_name(q, e)).collect();
    let quantaloid = FiniteQuantaloid::from_parts_unchecked(names, homs, comp, ids, inv)?;
    let embedding = q.objects().map(|x| es.iter().position(|&e| e == q.id(x))).collect::<Option<Vec<_>>>();
    Ok(Splitting { quantaloid, idempotents: es.to_vec(), elements, embedding })
}

/// All symmetric idempotents, objects first then element order.
pub fn symmetric_idempotents(q: &FiniteQuantaloid) -> Result<Vec<Morphism>> {
    if !q.is_involutive() {
        return Err(Error::MissingInvolution);
    }
    Ok(q.objects().flat_map(|x| q.morphisms(x, x)).filter(|&e| q.is_idempotent(e) && q.o(e) == e).collect())
}

/// All idempotents, objects first then element order.
pub fn all_idempotents(q: &FiniteQuantaloid) -> Vec<Morphism> {
    q.objects().flat_map(|x| q.morphisms(x, x)).filter(|&e| q.is_idempotent(e)).collect()
}

/// `Q_si`: the splitting of all idempotents, without involution.
pub fn si(q: &FiniteQuantaloid) -> Result<Splitting> {
    split_idempotents(q, &all_idempotents(q), false)
}

/// `Q_ssi`: the splitting of all symmetric idempotents, with inherited involution.
pub fn ssi(q: &FiniteQuantaloid) -> Result<Splitting> {
    let es = symmetric_idempotents(q)?;
    split_idempotents(q, &es, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identities_only_changes_nothing() {
        let q = corpus::relation_quantale(2);
        let s = split_idempotents(&q, &[q.id(0)], true).unwrap();
        s.quantaloid.validate().unwrap();
        assert_eq!(s.quantaloid.size(), q.size());
        assert_eq!(s.embedding, Some(vec![0]));
        for m in q.morphisms(0, 0) {
            let e = s.embed(m).unwrap();
            assert_eq!(s.to_parent(e), m);
        }
    }

    #[test]
    fn chain_split_at_m_and_top() {
        let q = corpus::chain_locale(3);
        let h = q.hom(0, 0);
        let es = [Morphism::new(0, 0, h.resolve("m").unwrap()), q.id(0)];
        let s = split_idempotents(&q, &es, true).unwrap();
        s.quantaloid.validate().unwrap();
        assert_eq!(s.quantaloid.n(), 2);
        let hmm = s.quantaloid.hom(0, 0);
        assert_eq!(hmm.names(), &["0".to_string(), "m".to_string()]);
        assert_eq!(s.quantaloid.id(0).elt, hmm.resolve("m").unwrap());
        assert!(s.quantaloid.is_locally_localic());
    }

    #[test]
    fn z2_symmetric_idempotents() {
        let q = corpus::z2();
        let names: Vec<&str> = symmetric_idempotents(&q).unwrap().iter().map(|e| q.hom(0, 0).name(e.elt)).collect();
        assert_eq!(names, ["{}", "{e}", "{e,g}"]);
    }

    #[test]
    fn relation_symmetric_idempotents_are_pers() {
        let q = corpus::relation_quantale(2);
        let h = q.hom(0, 0);
        let got: Vec<&str> = symmetric_idempotents(&q).unwrap().iter().map(|e| h.name(e.elt)).collect();
        // oracle: symmetric transitive relations on {1,2}
        let mut want = Vec::new();
        for e in h.elements() {
            let has = |i: usize, j: usize| h.name(e).contains(&format!("({i},{j})"));
            let sym = (1..=2).all(|i| (1..=2).all(|j| has(i, j) == has(j, i)));
            let trans = (1..=2).all(|i| (1..=2).all(|j| (1..=2).all(|k| !(has(i, j) && has(j, k)) || has(i, k))));
            if sym && trans {
                want.push(h.name(e));
            }
        }
        assert_eq!(got, want);
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn rejects_bad_idempotents() {
        let q = corpus::z2();
        let g = q.resolve_morphism("*", "*", "{g}").unwrap();
        assert!(matches!(split_idempotents(&q, &[g], false), Err(Error::NotApplicable(_))));
        let q = corpus::relation_quantale(2);
        let e = q.resolve_morphism("*", "*", "{(1,1),(1,2)}").unwrap();
        assert!(q.is_idempotent(e));
        assert!(split_idempotents(&q, &[e], false).is_ok());
        assert!(matches!(split_idempotents(&q, &[e], true), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn ssi_preserves_meets_and_laws() {
        for q in [corpus::chain_locale(3), corpus::z2(), corpus::relation_quantale(2)] {
            let s = ssi(&q).unwrap();
            s.quantaloid.validate().unwrap();
            assert!(s.meet_violation(&q).is_none());
        }
    }
}
