use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::lattice::{Elt, FiniteSupLattice};
use crate::quantaloid::{split_idempotents, FiniteQuantaloid, Morphism, Obj, Splitting};

/// `Q^m`: the quantale of endo-matrices on the objects of `Q`.
///
/// Element `m` is a tuple with one entry per pair `(a, b)`, at position `a * n + b`,
/// holding `M(b, a) ∈ Q(a, b)`.
#[derive(Clone, Debug)]
pub struct MoritaQuantale {
    pub quantale: FiniteQuantaloid,
    radix: Vec<usize>,
    n: usize,
}

impl MoritaQuantale {
    fn n(&self) -> usize {
        self.n
    }

    fn encode(&self, tuple: &[Elt]) -> Elt {
        tuple.iter().zip(&self.radix).fold(0, |acc, (&e, &r)| acc * r + e)
    }

    fn decode(&self, mut m: Elt) -> Vec<Elt> {
        let mut out = vec![0; self.radix.len()];
        for k in (0..self.radix.len()).rev() {
            out[k] = m % self.radix[k];
            m /= self.radix[k];
        }
        out
    }

    /// `M(b, a)` of the matrix `m`.
    pub fn entry(&self, m: Elt, a: Obj, b: Obj) -> Morphism {
        Morphism::new(a, b, self.decode(m)[a * self.n() + b])
    }

    /// `M_f`: zero except at the position of `f`.
    pub fn matrix_of(&self, q: &FiniteQuantaloid, f: Morphism) -> Elt {
        let n = self.n();
        let tuple: Vec<Elt> =
            (0..n * n).map(|k| if k == f.src * n + f.dst { f.elt } else { q.hom(k / n, k % n).bottom() }).collect();
        self.encode(&tuple)
    }

    /// Splits `{M_{1_A}}` and returns the splitting, whose object `A` is `M_{1_A}`.
    pub fn split_identity_blocks(&self, q: &FiniteQuantaloid) -> Result<Splitting> {
        let es: Vec<Morphism> = q.objects().map(|a| Morphism::new(0, 0, self.matrix_of(q, q.id(a)))).collect();
        split_idempotents(&self.quantale, &es, q.is_involutive())
    }

    /// `M: Q -> (Q^m)_E`, `f ↦ M_f`.
    pub fn embed(&self, q: &FiniteQuantaloid, split: &Splitting, f: Morphism) -> Option<Morphism> {
        split.from_parent(f.src, f.dst, Morphism::new(0, 0, self.matrix_of(q, f)))
    }

    /// Checks that `f ↦ M_f` is a fully faithful homomorphism into the splitting:
    /// bijective on homs, and preserving order, composition, identities and the involution.
    pub fn embedding_violation(&self, q: &FiniteQuantaloid) -> Result<Option<String>> {
        let split = self.split_identity_blocks(q)?;
        let s = &split.quantaloid;
        for a in q.objects() {
            if self.embed(q, &split, q.id(a)) != Some(s.id(a)) {
                return Ok(Some(format!("identity of {} is not preserved", q.object_name(a))));
            }
            for b in q.objects() {
                if s.hom(a, b).len() != q.hom(a, b).len() {
                    return Ok(Some(format!("hom({a},{b}) is not hit bijectively")));
                }
                for f in q.morphisms(a, b) {
                    let Some(mf) = self.embed(q, &split, f) else {
                        return Ok(Some(format!("{} does not land in the splitting", q.describe(f))));
                    };
                    for g in q.morphisms(a, b) {
                        let mg = self.embed(q, &split, g).expect("checked above");
                        if q.leq(f, g) != s.leq(mf, mg) {
                            return Ok(Some(format!("order between {} and {}", q.describe(f), q.describe(g))));
                        }
                    }
                    if q.is_involutive() && self.embed(q, &split, q.o(f)) != Some(s.o(mf)) {
                        return Ok(Some(format!("involution at {}", q.describe(f))));
                    }
                    for c in q.objects() {
                        for g in q.morphisms(b, c) {
                            let lhs = self.embed(q, &split, q.c(g, f));
                            let rhs = s.c(self.embed(q, &split, g).expect("in range"), mf);
                            if lhs != Some(rhs) {
                                return Ok(Some(format!("composite of {} and {}", q.describe(g), q.describe(f))));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Builds `Q^m`, failing when the product of hom sizes exceeds `cap`.
pub fn morita_quantale(q: &FiniteQuantaloid, cap: usize) -> Result<MoritaQuantale> {
    let n = q.n();
    let factors: Vec<&FiniteSupLattice> = q.homs().iter().collect();
    let lattice = FiniteSupLattice::product(&factors, cap)?;
    let radix: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let shell = MoritaQuantale { quantale: FiniteQuantaloid::trivial(), radix, n };
    let tuples: Vec<Vec<Elt>> = lattice.elements().map(|m| shell.decode(m)).collect();
    let delta: Vec<Elt> =
        (0..n * n).map(|k| if k / n == k % n { q.id(k / n).elt } else { q.hom(k / n, k % n).bottom() }).collect();
    let unit = shell.encode(&delta);
    let mul = |g: Elt, f: Elt| -> Elt {
        // (N∘M)(c, a) = ⋁_b N(c, b)∘M(b, a)
        let (tn, tm) = (&tuples[g], &tuples[f]);
        let out: Vec<Elt> = (0..n * n)
            .map(|k| {
                let (a, c) = (k / n, k % n);
                let parts = (0..n).map(|b| q.comp(a, b, c, tn[b * n + c], tm[a * n + b]));
                q.hom(a, c).join(parts)
            })
            .collect();
        shell.encode(&out)
    };
    let mut quantale =
        FiniteQuantaloid::from_fn(vec!["*".to_string()], vec![lattice], vec![unit], |_, _, _, g, f| mul(g, f))?;
    if q.is_involutive() {
        quantale = quantale.with_involution_fn(|_, _, m| {
            let t = &tuples[m];
            let out: Vec<Elt> = (0..n * n)
                .map(|k| {
                    let (a, b) = (k / n, k % n);
                    q.o(Morphism::new(b, a, t[b * n + a])).elt
                })
                .collect();
            shell.encode(&out)
        })?;
    }
    Ok(MoritaQuantale { quantale, radix: shell.radix, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::error::Error;
    use crate::iso::{find_isomorphism, IsoConfig};

    #[test]
    fn one_object_quantale_is_its_own_morita_quantale() {
        for name in ["boolean", "locale3", "rel2", "z2-groupoid", "trunc3"] {
            let q = corpus::quantaloid_by_name(name).unwrap();
            let m = morita_quantale(&q, 1024).unwrap();
            assert!(find_isomorphism(&q, &m.quantale, &IsoConfig::default()).unwrap().is_some(), "{name}");
        }
    }

    #[test]
    fn two_object_boolean_quantaloid_gives_relations() {
        // the Boolean quantaloid on two objects with all homs {0,1}
        let b = FiniteSupLattice::chain(&["0", "1"]).unwrap();
        let q = FiniteQuantaloid::from_fn(
            vec!["x".to_string(), "y".to_string()],
            vec![b.clone(), b.clone(), b.clone(), b],
            vec![1, 1],
            |_, _, _, g, f| g & f,
        )
        .and_then(|q| q.with_involution_fn(|_, _, f| f))
        .unwrap();
        let m = morita_quantale(&q, 1024).unwrap();
        let rel = corpus::relation_quantale(2);
        assert!(find_isomorphism(&rel, &m.quantale, &IsoConfig::default()).unwrap().is_some());
    }

    #[test]
    fn identity_blocks_are_symmetric_idempotents() {
        for (name, q) in corpus::standard() {
            let m = morita_quantale(&q, 1024).unwrap();
            for a in q.objects() {
                let e = Morphism::new(0, 0, m.matrix_of(&q, q.id(a)));
                assert!(m.quantale.is_idempotent(e), "{name}");
                assert_eq!(m.quantale.o(e), e, "{name}");
            }
            assert_eq!(m.embedding_violation(&q).unwrap(), None, "{name}");
        }
    }

    #[test]
    fn matrices_compose_blockwise() {
        let q = corpus::two_chain_site_quantaloid();
        let m = morita_quantale(&q, 1024).unwrap();
        for f in q.morphisms(0, 1) {
            for g in q.morphisms(1, 1) {
                let mg = Morphism::new(0, 0, m.matrix_of(&q, g));
                let mf = Morphism::new(0, 0, m.matrix_of(&q, f));
                assert_eq!(m.quantale.c(mg, mf).elt, m.matrix_of(&q, q.c(g, f)));
                assert_eq!(m.entry(m.matrix_of(&q, f), 0, 1), f);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(morita_quantale(&corpus::relation_quantale(2), 8), Err(Error::ResourceCap { .. })));
    }
}
