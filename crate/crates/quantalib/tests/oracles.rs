use quantalib::oracle::{count_gsets_by_elements, count_gsets_by_generators, count_locale_sheaves};
use quantalib_core::constructions::{enumerate_sheaves, groupoid_quantale, CensusConfig, FiniteGroupoid, SheafMode};
use quantalib_core::{corpus, FiniteSupLattice};

const CAP: u64 = 1 << 22;

fn census(q: &quantalib_core::FiniteQuantaloid, n: usize) -> usize {
    enumerate_sheaves(q, n, SheafMode::Symmetric, &CensusConfig::default()).unwrap().classes.len()
}

#[test]
fn census_matches_locale_sheaf_oracle() {
    let locales = [
        ("locale3", FiniteSupLattice::chain(&["0", "m", "1"]).unwrap()),
        ("powerset2", FiniteSupLattice::powerset(&["a", "b"]).unwrap()),
        ("boolean", FiniteSupLattice::chain(&["0", "1"]).unwrap()),
    ];
    for (name, l) in locales {
        let q = corpus::quantaloid_by_name(name).unwrap();
        for n in 0..=2 {
            assert_eq!(census(&q, n), count_locale_sheaves(&l, n, CAP).unwrap(), "{name}, {n}");
        }
    }
}

#[test]
fn census_counts_group_actions_by_orbits() {
    let q = corpus::z2();
    let g = FiniteGroupoid::cyclic(2).unwrap();
    for n in 0..=2 {
        assert_eq!(census(&q, n), count_gsets_by_generators(&g, n, CAP).unwrap(), "{n}");
    }
    // counting by elements instead gives fewer classes
    assert!(count_gsets_by_elements(&g, 2, CAP).unwrap() < census(&q, 2));
}

#[test]
fn census_over_other_groupoids() {
    for g in [FiniteGroupoid::cyclic(3).unwrap(), FiniteGroupoid::pair(2).unwrap()] {
        let q = groupoid_quantale(&g).unwrap();
        for n in 0..=2 {
            assert_eq!(census(&q, n), count_gsets_by_generators(&g, n, CAP).unwrap());
        }
    }
}
