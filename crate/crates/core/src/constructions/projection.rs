use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::Elt;
use crate::qcat::{compose_dist, involute_raw, Distributor, QCategory, QTypedSet};
use crate::quantaloid::{FiniteQuantaloid, Morphism, Obj, Splitting};

fn split_object(split: &Splitting, e: Morphism) -> Result<Obj> {
    split.idempotents.iter().position(|&i| i == e).ok_or_else(|| Error::NotApplicable(format!("{e:?} is not split")))
}

fn lift(split: &Splitting, e: Obj, f: Obj, x: Morphism) -> Result<Elt> {
    split
        .from_parent(e, f, x)
        .map(|m| m.elt)
        .ok_or_else(|| Error::InternalConsistency(format!("{x:?} is not fixed by its idempotents")))
}

/// Every symmetric idempotent endo-matrix on `types`, in lexicographic order of tables.
pub fn projection_matrices(q: &FiniteQuantaloid, types: &[Obj], cap: u64) -> Result<Vec<Distributor>> {
    if !q.is_involutive() {
        return Err(Error::MissingInvolution);
    }
    let n = types.len();
    let sizes: Vec<usize> = (0..n * n).map(|i| q.hom(types[i % n], types[i / n]).len()).collect();
    let total = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s as u64)).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::ResourceCap { what: "enumerating projection matrices", cap });
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n * n];
    for _ in 0..total {
        let p = Distributor::new_unchecked(types.to_vec(), types.to_vec(), cur.clone());
        if involute_raw(q, &p)? == p && compose_dist(q, &p, &p)? == p {
            out.push(p);
        }
        for i in (0..n * n).rev() {
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
        }
    }
    Ok(out)
}

/// The normal symmetric `Q_ssi`-category of a projection matrix `P`:
/// types `P(x,x)`, homs `P(y,x)`.
pub fn projection_to_category(q: &FiniteQuantaloid, split: &Splitting, p: &Distributor) -> Result<QCategory> {
    if let Some(v) = q.stably_gelfand_violation()? {
        return Err(Error::NotApplicable(format!("base is not stably Gelfand: {}", v.describe(q))));
    }
    if p.dom_types() != p.cod_types() {
        return Err(Error::InvalidCategory("a projection is an endo-matrix".into()));
    }
    if involute_raw(q, p)? != *p || compose_dist(q, p, p)? != *p {
        return Err(Error::InvalidCategory("matrix is not a symmetric idempotent".into()));
    }
    let n = p.dom_types().len();
    let types = (0..n).map(|x| split_object(split, p.at(x, x))).collect::<Result<Vec<_>>>()?;
    let mut hom = Vec::with_capacity(n * n);
    for y in 0..n {
        for x in 0..n {
            hom.push(lift(split, types[x], types[y], p.at(y, x))?);
        }
    }
    let s = &split.quantaloid;
    let c = QCategory::new_unchecked(QTypedSet::anonymous(types), hom);
    if let Some(msg) = c.violation(s) {
        return Err(Error::InternalConsistency(msg));
    }
    if !c.is_normal(s) || !c.is_symmetric(s)? {
        return Err(Error::InternalConsistency("projection category is not normal and symmetric".into()));
    }
    Ok(c)
}

/// The projection matrix behind a normal symmetric `Q_ssi`-category.
pub fn category_to_projection(q: &FiniteQuantaloid, split: &Splitting, c: &QCategory) -> Result<Distributor> {
    let s = &split.quantaloid;
    if !c.is_normal(s) || !c.is_symmetric(s)? {
        return Err(Error::InvalidCategory("category is not normal and symmetric".into()));
    }
    let n = c.n();
    let types: Vec<Obj> = c.types().iter().map(|&t| split.idempotents[t].src).collect();
    let elt = (0..n * n).map(|i| split.to_parent(c.at(i / n, i % n)).elt).collect();
    let p = Distributor::new_unchecked(types.clone(), types, elt);
    if involute_raw(q, &p)? != p || compose_dist(q, &p, &p)? != p {
        return Err(Error::InternalConsistency("category does not give a projection".into()));
    }
    Ok(p)
}

/// A normal category with distributors `Γ: A ⇸ N`, `Γ': N ⇸ A` such that
/// `Γ' ⊗ Γ = A` and `Γ ⊗ Γ' = N`.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub category: QCategory,
    pub to_normal: Distributor,
    pub from_normal: Distributor,
}

/// Retypes each object `x` of a category over `split.quantaloid` at the idempotent `A(x,x)`.
pub fn normalize(split: &Splitting, a: &QCategory) -> Result<Normalized> {
    let s = &split.quantaloid;
    let n = a.n();
    let parent = |m: Morphism| split.to_parent(m);
    let types = (0..n).map(|x| split_object(split, parent(a.at(x, x)))).collect::<Result<Vec<_>>>()?;
    let mut hom = Vec::with_capacity(n * n);
    let mut gamma = Vec::with_capacity(n * n);
    let mut gamma_inv = Vec::with_capacity(n * n);
    for y in 0..n {
        for x in 0..n {
            hom.push(lift(split, types[x], types[y], parent(a.at(y, x)))?);
            gamma.push(lift(split, a.ty(x), types[y], parent(a.at(y, x)))?);
            gamma_inv.push(lift(split, types[x], a.ty(y), parent(a.at(y, x)))?);
        }
    }
    let category = QCategory::new_unchecked(QTypedSet::new(a.objects().names().to_vec(), types.clone())?, hom);
    let to_normal = Distributor::new_unchecked(a.types().to_vec(), types.clone(), gamma);
    let from_normal = Distributor::new_unchecked(types, a.types().to_vec(), gamma_inv);
    if let Some(msg) = category.violation(s) {
        return Err(Error::InternalConsistency(msg));
    }
    if !category.is_normal(s) {
        return Err(Error::InternalConsistency("normalized category is not normal".into()));
    }
    if compose_dist(s, &from_normal, &to_normal)? != a.hom_distributor()
        || compose_dist(s, &to_normal, &from_normal)? != category.hom_distributor()
    {
        return Err(Error::InternalConsistency("normalization witnesses are not inverse".into()));
    }
    Ok(Normalized { category, to_normal, from_normal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::qcat::{categories_on, identity_matrix, CategoryShape};
    use crate::quantaloid::{si, ssi};

    #[test]
    fn delta_gives_the_discrete_category() {
        let q = corpus::z2();
        let split = ssi(&q).unwrap();
        for k in 0..3 {
            let c = projection_to_category(&q, &split, &identity_matrix(&q, &vec![0; k])).unwrap();
            let one = split_object(&split, q.id(0)).unwrap();
            let d = QCategory::discrete(&split.quantaloid, QTypedSet::anonymous(vec![one; k])).unwrap();
            assert_eq!(c.hom_table(), d.hom_table());
            assert_eq!(c.types(), d.types());
        }
    }

    #[test]
    fn boolean_projections_are_partial_equivalence_relations() {
        let q = corpus::boolean();
        let split = ssi(&q).unwrap();
        for k in 0..4 {
            let ps = projection_matrices(&q, &vec![0; k], 1 << 16).unwrap();
            // oracle: symmetric and transitive relations on k points
            let mut want = 0;
            for bits in 0u32..1 << (k * k) {
                let r = |y: usize, x: usize| bits >> (y * k + x) & 1 == 1;
                let sym = (0..k).all(|x| (0..k).all(|y| r(y, x) == r(x, y)));
                let trans = (0..k).all(|x| (0..k).all(|y| (0..k).all(|z| !(r(z, y) && r(y, x)) || r(z, x))));
                want += usize::from(sym && trans);
            }
            assert_eq!(ps.len(), want);
            for p in &ps {
                let c = projection_to_category(&q, &split, p).unwrap();
                // objects outside the domain of the PER get the empty type
                for x in 0..k {
                    assert_eq!(split.idempotents[c.ty(x)].elt, p.at(x, x).elt);
                }
                assert_eq!(category_to_projection(&q, &split, &c).unwrap(), *p);
            }
        }
    }

    #[test]
    fn projections_round_trip() {
        for (name, q) in corpus::standard() {
            if q.stably_gelfand_violation().unwrap().is_some() {
                continue;
            }
            let split = ssi(&q).unwrap();
            for ty in q.objects() {
                for k in 1..3 {
                    let Ok(ps) = projection_matrices(&q, &vec![ty; k], 1 << 16) else { continue };
                    for p in ps {
                        let c = projection_to_category(&q, &split, &p).unwrap();
                        assert_eq!(category_to_projection(&q, &split, &c).unwrap(), p, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn categories_round_trip_through_projections() {
        let q = corpus::z2();
        let split = ssi(&q).unwrap();
        let shape = CategoryShape { symmetric: true, normal: true, ..CategoryShape::default() };
        for types in [vec![0, 1], vec![1, 2], vec![2, 2]] {
            for c in categories_on(&split.quantaloid, &types, &shape).unwrap() {
                let p = category_to_projection(&q, &split, &c).unwrap();
                let back = projection_to_category(&q, &split, &p).unwrap();
                assert_eq!((back.types(), back.hom_table()), (c.types(), c.hom_table()));
            }
        }
    }

    #[test]
    fn non_projection_is_rejected() {
        let q = corpus::boolean();
        let split = ssi(&q).unwrap();
        // the strict order 0 < 1 is idempotent but not symmetric
        let p = Distributor::new_unchecked(vec![0, 0], vec![0, 0], vec![1, 0, 1, 1]);
        assert!(matches!(projection_to_category(&q, &split, &p), Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn non_gelfand_base_is_rejected() {
        let q = ["trunc3", "m3", "rel2", "site2chain"]
            .into_iter()
            .map(|n| corpus::quantaloid_by_name(n).unwrap())
            .find(|q| q.is_involutive() && q.stably_gelfand_violation().unwrap().is_some())
            .expect("a non-Gelfand example");
        let split = ssi(&q).unwrap();
        let p = identity_matrix(&q, &[0]);
        assert!(matches!(projection_to_category(&q, &split, &p), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn normal_category_normalizes_to_itself() {
        let q = corpus::z2();
        let split = ssi(&q).unwrap();
        let s = &split.quantaloid;
        let shape = CategoryShape { symmetric: true, normal: true, ..CategoryShape::default() };
        for c in categories_on(s, &[1, 2], &shape).unwrap() {
            let nm = normalize(&split, &c).unwrap();
            assert_eq!(nm.category.hom_table(), c.hom_table());
            assert_eq!(nm.to_normal, c.hom_distributor());
            assert_eq!(nm.from_normal, c.hom_distributor());
        }
    }

    #[test]
    fn one_object_category_is_retyped_at_its_hom() {
        let q = corpus::chain_locale(3);
        let split = ssi(&q).unwrap();
        let s = &split.quantaloid;
        let top = split_object(&split, q.id(0)).unwrap();
        for e in s.hom(top, top).elements() {
            let Ok(a) = QCategory::new(s, QTypedSet::anonymous(vec![top]), vec![e]) else { continue };
            let nm = normalize(&split, &a).unwrap();
            assert_eq!(split.idempotents[nm.category.ty(0)], split.to_parent(a.at(0, 0)));
            assert!(nm.category.is_normal(s));
        }
    }

    #[test]
    fn normalization_witnesses_hold_on_the_corpus() {
        for (name, q) in corpus::standard() {
            let mut splits = vec![(si(&q).unwrap(), false)];
            if q.is_involutive() {
                splits.push((ssi(&q).unwrap(), true));
            }
            for (split, symmetric) in splits {
                let s = &split.quantaloid;
                let shape = CategoryShape { symmetric, ..CategoryShape::default() };
                for t0 in s.objects() {
                    for t1 in t0..s.n() {
                        for a in categories_on(s, &[t0, t1], &shape).unwrap().iter().step_by(7) {
                            let nm = normalize(&split, a).unwrap_or_else(|e| panic!("{name}: {e}"));
                            if symmetric {
                                assert!(nm.category.is_symmetric(s).unwrap(), "{name}");
                            }
                        }
                    }
                }
            }
        }
    }
}
