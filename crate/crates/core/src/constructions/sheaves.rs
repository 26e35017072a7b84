use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Elt, FiniteSupLattice};
use crate::qcat::{
    categories_on, compose_dist, distributors, involute_raw, right_adjoint_candidate, CategoryShape, Distributor,
    QCategory,
};
use crate::quantaloid::{si, ssi, FiniteQuantaloid, Obj, Splitting};

/// Outcome of a Morita-equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoritaVerdict {
    /// `Ψ ⊗ Φ = A` and `Φ ⊗ Ψ = B`.
    Equivalent {
        phi: Distributor,
        psi: Distributor,
    },
    NotEquivalent,
    /// The distributor search hit its cap.
    Unknown,
}

impl MoritaVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, MoritaVerdict::Equivalent { .. })
    }
}

/// Searches every distributor `Φ: A ⇸ B` for one whose right adjoint is an inverse.
pub fn morita_equivalence(q: &FiniteQuantaloid, a: &QCategory, b: &QCategory, max_nodes: u64) -> MoritaVerdict {
    let ha = a.hom_distributor();
    let hb = b.hom_distributor();
    let Ok(phis) = distributors(q, a, b, max_nodes) else { return MoritaVerdict::Unknown };
    for phi in phis {
        let psi = right_adjoint_candidate(q, b, &phi);
        if compose_dist(q, &psi, &phi).is_ok_and(|u| u == ha) && compose_dist(q, &phi, &psi).is_ok_and(|c| c == hb) {
            return MoritaVerdict::Equivalent { phi, psi };
        }
    }
    MoritaVerdict::NotEquivalent
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SheafMode {
    /// Symmetric categories over `Q_ssi`.
    Symmetric,
    /// All categories over `Q_si`.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    /// Node cap for each category enumeration.
    pub max_category_nodes: u64,
    /// Node cap for each Morita search; above it the pair is left unmerged.
    pub max_morita_nodes: u64,
    /// Enumerate all categories instead of normal ones only.
    pub include_non_normal: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { max_category_nodes: 1 << 24, max_morita_nodes: 1 << 20, include_non_normal: false }
    }
}

#[derive(Clone, Debug)]
pub struct SheafCensus {
    pub base: Splitting,
    /// One representative per class: the least candidate in (size, types, hom table) order.
    pub classes: Vec<QCategory>,
    pub candidates: usize,
    /// Pairs of candidates whose comparison hit the Morita cap.
    pub unknown: usize,
}

/// Non-decreasing type sequences of length `k` over `0..n`.
fn type_sequences(n: usize, k: usize) -> Vec<Vec<Obj>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Obj>| {
                let from = t.last().copied().unwrap_or(0);
                (from..n).map(move |x| {
                    let mut next = t.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

/// Categories over `Q_ssi` (symmetric) or `Q_si` (all) with at most `max_objects`
/// objects, up to Morita equivalence.
pub fn enumerate_sheaves(
    q: &FiniteQuantaloid,
    max_objects: usize,
    mode: SheafMode,
    cfg: &CensusConfig,
) -> Result<SheafCensus> {
    let base = match mode {
        SheafMode::Symmetric => ssi(q)?,
        SheafMode::All => si(q)?,
    };
    let s = &base.quantaloid;
    let shape = CategoryShape {
        symmetric: mode == SheafMode::Symmetric,
        normal: !cfg.include_non_normal,
        max_nodes: cfg.max_category_nodes,
    };
    let mut candidates = Vec::new();
    for k in 0..=max_objects {
        for types in type_sequences(s.n(), k) {
            candidates.extend(categories_on(s, &types, &shape)?);
        }
    }
    candidates.sort_by(|a, b| (a.n(), a.types(), a.hom_table()).cmp(&(b.n(), b.types(), b.hom_table())));
    let mut classes: Vec<QCategory> = Vec::new();
    let mut unknown = 0;
    for c in &candidates {
        let mut merged = false;
        for r in &classes {
            match morita_equivalence(s, r, c, cfg.max_morita_nodes) {
                MoritaVerdict::Equivalent { .. } => {
                    merged = true;
                    break;
                }
                MoritaVerdict::Unknown => unknown += 1,
                MoritaVerdict::NotEquivalent => {}
            }
        }
        if !merged {
            classes.push(c.clone());
        }
    }
    if classes.is_empty() {
        return Err(Error::InternalConsistency("the empty category is always a class".into()));
    }
    Ok(SheafCensus { base, classes, candidates: candidates.len(), unknown })
}

/// The full subquantaloid of `Dist(Q)` on `cats`: homs are all distributors, composition
/// is `⊗` and identities are the hom distributors. Involutive when `Q` is and every
/// category is symmetric.
pub fn distributor_quantaloid(
    q: &FiniteQuantaloid,
    names: Vec<String>,
    cats: &[QCategory],
    max_nodes: u64,
) -> Result<FiniteQuantaloid> {
    let n = cats.len();
    if names.len() != n {
        return Err(Error::InvalidQuantaloid("one name per category is required".into()));
    }
    let mut dists = Vec::with_capacity(n * n);
    let mut homs = Vec::with_capacity(n * n);
    for a in cats {
        for b in cats {
            let ds = distributors(q, a, b, max_nodes)?;
            let labels = ds.iter().map(|d| dist_label(q, d, a.n())).collect();
            homs.push(FiniteSupLattice::from_order_fn(labels, |i, j| ds[i].leq(q, &ds[j]) == Some(true))?);
            dists.push(ds);
        }
    }
    let index: Vec<BTreeMap<&Distributor, Elt>> =
        dists.iter().map(|ds| ds.iter().enumerate().map(|(i, d)| (d, i)).collect()).collect();
    let lookup = |x: Obj, z: Obj, d: &Distributor| {
        index[x * n + z]
            .get(d)
            .copied()
            .ok_or_else(|| Error::InternalConsistency("distributors are not closed under composition".into()))
    };
    let mut ids = Vec::with_capacity(n);
    for (x, a) in cats.iter().enumerate() {
        ids.push(lookup(x, x, &a.hom_distributor())?);
    }
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut table = Vec::with_capacity(dists[x * n + y].len() * dists[y * n + z].len());
                for g in &dists[y * n + z] {
                    for f in &dists[x * n + y] {
                        table.push(lookup(x, z, &compose_dist(q, g, f)?)? as u32);
                    }
                }
                comp.push(table);
            }
        }
    }
    let mut symmetric = q.is_involutive();
    for a in cats {
        symmetric = symmetric && a.is_symmetric(q)?;
    }
    let inv = if symmetric {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let row =
                    dists[x * n + y].iter().map(|d| lookup(y, x, &involute_raw(q, d)?)).collect::<Result<Vec<_>>>()?;
                table.push(row);
            }
        }
        Some(table)
    } else {
        None
    };
    FiniteQuantaloid::from_parts(names, homs, comp, ids, inv)
}

/// `[a,b;c,d]`: entries by row, rows indexed by the codomain.
fn dist_label(q: &FiniteQuantaloid, d: &Distributor, width: usize) -> String {
    let entries: Vec<String> = (0..d.table().len())
        .map(|i| {
            let m = d.at(i / width.max(1), i % width.max(1));
            String::from(q.hom(m.src, m.dst).name(m.elt))
        })
        .collect();
    let rows: Vec<String> = entries.chunks(width.max(1)).map(|r| r.join(",")).collect();
    format!("[{}]", rows.join(";"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::normalize;
    use crate::corpus;
    use crate::qcat::QTypedSet;

    #[test]
    fn boolean_sheaves_are_finite_sets() {
        let q = corpus::boolean();
        for (n, want) in [(0, 1), (1, 2), (2, 3), (3, 4)] {
            let c = enumerate_sheaves(&q, n, SheafMode::Symmetric, &CensusConfig::default()).unwrap();
            assert_eq!(c.classes.len(), want, "n = {n}");
            assert_eq!(c.unknown, 0);
        }
    }

    #[test]
    fn boolean_all_mode_counts_finite_posets_up_to_completion() {
        // over the two-element chain, Cauchy-complete categories are posets; the
        // representatives with <= 2 objects are the empty one, a point, two points, and the chain
        let q = corpus::boolean();
        let c = enumerate_sheaves(&q, 2, SheafMode::All, &CensusConfig::default()).unwrap();
        assert_eq!(c.classes.len(), 4);
    }

    #[test]
    fn empty_quantaloid_has_one_class() {
        let q = FiniteQuantaloid::empty();
        let c = enumerate_sheaves(&q, 3, SheafMode::Symmetric, &CensusConfig::default()).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.classes[0].n(), 0);
    }

    #[test]
    fn normal_enumeration_loses_no_class() {
        let cases = [
            ("boolean", 2, SheafMode::Symmetric),
            ("z2-groupoid", 1, SheafMode::Symmetric),
            ("locale3", 2, SheafMode::All),
        ];
        for (name, n, mode) in cases {
            let q = corpus::quantaloid_by_name(name).unwrap();
            let normal = enumerate_sheaves(&q, n, mode, &CensusConfig::default()).unwrap();
            let all =
                enumerate_sheaves(&q, n, mode, &CensusConfig { include_non_normal: true, ..CensusConfig::default() })
                    .unwrap();
            assert_eq!(normal.classes.len(), all.classes.len(), "{name}");
        }
    }

    #[test]
    fn a_category_is_equivalent_to_its_normalization() {
        let q = corpus::chain_locale(3);
        let split = ssi(&q).unwrap();
        let s = &split.quantaloid;
        let shape = CategoryShape { symmetric: true, ..CategoryShape::default() };
        for a in categories_on(s, &[1, 2], &shape).unwrap() {
            let nm = normalize(&split, &a).unwrap();
            assert!(morita_equivalence(s, &a, &nm.category, 1 << 20).is_equivalent());
        }
    }

    #[test]
    fn discrete_categories_of_different_size_are_inequivalent() {
        let q = corpus::boolean();
        let one = QCategory::discrete(&q, QTypedSet::anonymous(vec![0])).unwrap();
        let two = QCategory::discrete(&q, QTypedSet::anonymous(vec![0, 0])).unwrap();
        assert_eq!(morita_equivalence(&q, &one, &two, 1 << 20), MoritaVerdict::NotEquivalent);
        assert_eq!(morita_equivalence(&q, &one, &two, 1), MoritaVerdict::Unknown);
        assert!(morita_equivalence(&q, &two, &two, 1 << 20).is_equivalent());
    }

    #[test]
    fn capped_search_never_merges() {
        let q = corpus::boolean();
        let cfg = CensusConfig { max_morita_nodes: 1, ..CensusConfig::default() };
        let capped = enumerate_sheaves(&q, 2, SheafMode::Symmetric, &cfg).unwrap();
        let full = enumerate_sheaves(&q, 2, SheafMode::Symmetric, &CensusConfig::default()).unwrap();
        assert!(capped.unknown > 0);
        assert!(capped.classes.len() > full.classes.len());
    }

    #[test]
    fn distributors_between_sets_are_relations() {
        let q = corpus::boolean();
        let c = enumerate_sheaves(&q, 2, SheafMode::Symmetric, &CensusConfig::default()).unwrap();
        let names = (0..c.classes.len()).map(|i| format!("S{i}")).collect();
        let r = distributor_quantaloid(&c.base.quantaloid, names, &c.classes, 1 << 20).unwrap();
        // relations between sets of sizes 0, 1, 2
        let sizes: Vec<usize> =
            (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).map(|(x, y)| r.hom(x, y).len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 1, 2, 4, 1, 4, 16]);
        assert!(r.is_involutive());
        assert!(r.modular_violation().unwrap().is_none());
    }
}
