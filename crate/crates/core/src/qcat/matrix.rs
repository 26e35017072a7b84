use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{compose_dist, involute_raw, Distributor};
use crate::error::Result;
use crate::quantaloid::{FiniteQuantaloid, Obj};

/// The Kronecker-delta matrix on a typed set.
pub fn identity_matrix(q: &FiniteQuantaloid, types: &[Obj]) -> Distributor {
    let n = types.len();
    let elt = (0..n * n)
        .map(|i| {
            let (y, x) = (i / n, i % n);
            if x == y {
                q.id(types[x]).elt
            } else {
                q.hom(types[x], types[y]).bottom()
            }
        })
        .collect();
    Distributor::new_unchecked(types.to_vec(), types.to_vec(), elt)
}

/// `Δ ≤ M` and `M ⊗ M ≤ M`.
pub fn is_monad(q: &FiniteQuantaloid, m: &Distributor) -> bool {
    if m.dom_types() != m.cod_types() {
        return false;
    }
    let delta = identity_matrix(q, m.dom_types());
    let mm = compose_dist(q, m, m).expect("endo-matrix");
    delta.leq(q, m) == Some(true) && mm.leq(q, m) == Some(true)
}

/// A monad with `M° = M`.
pub fn is_symmetric_monad(q: &FiniteQuantaloid, m: &Distributor) -> Result<bool> {
    Ok(is_monad(q, m) && involute_raw(q, m)? == *m)
}

/// A symmetric monad with `M ∧ M° = Δ`.
pub fn is_antisymmetric_monad(q: &FiniteQuantaloid, m: &Distributor) -> Result<bool> {
    if !is_symmetric_monad(q, m)? {
        return Ok(false);
    }
    let meet = m.meet(q, &involute_raw(q, m)?)?;
    Ok(meet == identity_matrix(q, m.dom_types()))
}

/// Injections `s_i: {t_i} ⇸ T` and projections `p_i: T ⇸ {t_i}` of a typed set
/// as the direct sum of its singletons.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub types: Vec<Obj>,
    pub injections: Vec<Distributor>,
    pub projections: Vec<Distributor>,
}

pub fn direct_sum(q: &FiniteQuantaloid, types: &[Obj]) -> DirectSum {
    let n = types.len();
    let delta = |i: usize, j: usize| {
        if i == j {
            q.id(types[i]).elt
        } else {
            q.hom(types[i], types[j]).bottom()
        }
    };
    let injections = (0..n)
        .map(|i| Distributor::new_unchecked(vec![types[i]], types.to_vec(), (0..n).map(|b| delta(i, b)).collect()))
        .collect();
    let projections = (0..n)
        .map(|i| Distributor::new_unchecked(types.to_vec(), vec![types[i]], (0..n).map(|b| delta(b, i)).collect()))
        .collect();
    DirectSum { types: types.to_vec(), injections, projections }
}

/// Checks `p_i ⊗ s_j = δ_ij` and `⋁_i s_i ⊗ p_i = Δ`.
pub fn direct_sum_violation(q: &FiniteQuantaloid, d: &DirectSum) -> Option<String> {
    let n = d.types.len();
    for i in 0..n {
        for j in 0..n {
            let ps = compose_dist(q, &d.projections[i], &d.injections[j]).ok()?;
            let want = if i == j { q.id(d.types[i]) } else { q.bottom(d.types[j], d.types[i]) };
            if ps.at(0, 0) != want {
                return Some(format!("p_{i} s_{j} is not the Kronecker delta"));
            }
        }
    }
    let mut sum = Distributor::bottom(q, &d.types, &d.types);
    for i in 0..n {
        let sp = compose_dist(q, &d.injections[i], &d.projections[i]).ok()?;
        sum = sum.join(q, &sp).ok()?;
    }
    (sum != identity_matrix(q, &d.types)).then(|| "the injections and projections do not sum to the identity".into())
}
