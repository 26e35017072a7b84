//! Built-in example quantaloids and sites.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{groupoid_quantale, locale_quantale, FiniteGroupoid};
use crate::lattice::FiniteSupLattice;
use crate::quantaloid::FiniteQuantaloid;
use crate::sites::{canonical_site_of_locale, closed_crible_quantaloid, FiniteCategory, FiniteSite};

/// The chain with `k ≥ 1` elements: `0 < m < 1` for `k = 3`, otherwise `0 < m1 < ... < 1`.
pub fn chain_lattice(k: usize) -> FiniteSupLattice {
    let names: Vec<String> = (0..k)
        .map(|i| match (i, k) {
            (0, _) => "0".to_string(),
            (i, k) if i + 1 == k => "1".to_string(),
            (_, 3) => "m".to_string(),
            (i, _) => format!("m{i}"),
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    FiniteSupLattice::chain(&refs).expect("chain")
}

/// The two-element Boolean quantale.
pub fn boolean() -> FiniteQuantaloid {
    chain_locale(2)
}

/// The `k`-element chain as a locale quantale.
pub fn chain_locale(k: usize) -> FiniteQuantaloid {
    locale_quantale(&chain_lattice(k)).expect("chains are locales")
}

/// The powerset of `{a, b}` as a locale quantale.
pub fn powerset_locale() -> FiniteQuantaloid {
    locale_quantale(&FiniteSupLattice::powerset(&["a", "b"]).expect("powerset")).expect("powersets are locales")
}

/// Relations on `{1..k}` under relational composition, transpose as involution.
pub fn relation_quantale(k: usize) -> FiniteQuantaloid {
    groupoid_quantale(&FiniteGroupoid::pair(k).expect("pair groupoid")).expect("relation quantale")
}

/// The groupoid quantale of `Z/2`.
pub fn z2() -> FiniteQuantaloid {
    groupoid_quantale(&FiniteGroupoid::cyclic(2).expect("Z/2")).expect("groupoid quantale")
}

/// The poset `a < b` with the trivial topology.
pub fn two_chain_site() -> FiniteSite {
    FiniteSite::trivial(FiniteCategory::poset(&FiniteSupLattice::chain(&["a", "b"]).expect("chain")))
}

/// Closed cribles on [`two_chain_site`].
pub fn two_chain_site_quantaloid() -> FiniteQuantaloid {
    closed_crible_quantaloid(&two_chain_site()).expect("closed cribles").quantaloid
}

/// The canonical site of the 3-chain locale.
pub fn chain3_canonical_site() -> FiniteSite {
    canonical_site_of_locale(&chain_lattice(3)).expect("chains are locales")
}

/// The chain `2 < 1 < 0` with `a∘b = min(a + b, 2)`, unit `0` and identity
/// involution. It satisfies the quantale laws but not the modular law.
pub fn trunc3() -> FiniteQuantaloid {
    let l = FiniteSupLattice::chain(&["2", "1", "0"]).expect("chain");
    let value = |i: usize| 2 - i;
    FiniteQuantaloid::from_fn(vec!["*".to_string()], vec![l], vec![2], |_, _, _, g, f| 2 - (value(g) + value(f)).min(2))
        .and_then(|q| q.with_involution_fn(|_, _, f| f))
        .expect("truncated addition quantale")
}

/// `M3` (atoms `a, b, c`) with unit `a`, orthogonal idempotents `b`, `c` and
/// identity involution: a quantale whose underlying lattice is not a frame.
pub fn m3_quantale() -> FiniteQuantaloid {
    let l = FiniteSupLattice::from_named(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    .expect("M3");
    const T: [[usize; 5]; 5] = [[0, 0, 0, 0, 0], [0, 1, 2, 3, 4], [0, 2, 2, 0, 2], [0, 3, 0, 3, 3], [0, 4, 2, 3, 4]];
    FiniteQuantaloid::from_fn(vec!["*".to_string()], vec![l], vec![1], |_, _, _, g, f| T[g][f])
        .and_then(|q| q.with_involution_fn(|_, _, f| f))
        .expect("M3 quantale")
}

/// The residuation corpus: name and quantaloid.
pub fn standard() -> Vec<(&'static str, FiniteQuantaloid)> {
    vec![
        ("boolean", boolean()),
        ("locale3", chain_locale(3)),
        ("powerset2", powerset_locale()),
        ("rel2", relation_quantale(2)),
        ("z2-groupoid", z2()),
        ("site2chain", two_chain_site_quantaloid()),
    ]
}

/// Built-in quantaloids by name.
pub fn quantaloid_by_name(name: &str) -> Option<FiniteQuantaloid> {
    Some(match name {
        "boolean" => boolean(),
        "locale3" => chain_locale(3),
        "powerset2" => powerset_locale(),
        "rel2" => relation_quantale(2),
        "z2-groupoid" => z2(),
        "site2chain" => two_chain_site_quantaloid(),
        "trunc3" => trunc3(),
        "m3" => m3_quantale(),
        "locale3-site" => closed_crible_quantaloid(&chain3_canonical_site()).ok()?.quantaloid,
        _ => return None,
    })
}

/// Built-in sites by name.
pub fn site_by_name(name: &str) -> Option<FiniteSite> {
    match name {
        "site2chain" => Some(two_chain_site()),
        "locale3-site" | "locale3" => Some(chain3_canonical_site()),
        _ => None,
    }
}

pub const QUANTALOID_NAMES: [&str; 9] =
    ["boolean", "locale3", "powerset2", "rel2", "z2-groupoid", "site2chain", "trunc3", "m3", "locale3-site"];
