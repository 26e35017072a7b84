use proptest::prelude::*;

use quantalib_core::constructions::locale_quantale;
use quantalib_core::qcat::{compose_dist, involute_raw, Distributor};
use quantalib_core::{corpus, FiniteQuantaloid, FiniteSupLattice, Morphism};

/// A random order on `0..k`, as the transitive closure of `i < j` edges.
fn poset(k: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), k * k).prop_map(move |bits| {
        let mut le = vec![false; k * k];
        for i in 0..k {
            le[i * k + i] = true;
            for j in i + 1..k {
                le[i * k + j] = bits[i * k + j];
            }
        }
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if le[i * k + m] && le[m * k + j] {
                        le[i * k + j] = true;
                    }
                }
            }
        }
        le
    })
}

/// The down-set locale of a finite poset.
fn downsets(k: usize, le: &[bool]) -> FiniteSupLattice {
    let sets: Vec<u32> = (0u32..1 << k)
        .filter(|&s| (0..k).all(|i| s >> i & 1 == 0 || (0..k).all(|j| !le[j * k + i] || s >> j & 1 == 1)))
        .collect();
    let names = sets.iter().map(|s| format!("{s:b}")).collect();
    FiniteSupLattice::from_order_fn(names, |a, b| sets[a] & !sets[b] == 0).unwrap()
}

fn check_residuation(q: &FiniteQuantaloid) -> Result<(), TestCaseError> {
    for x in q.objects() {
        for y in q.objects() {
            for z in q.objects() {
                for f in q.morphisms(x, y) {
                    for g in q.morphisms(x, z) {
                        let l = q.left_residual(g, f).unwrap();
                        for h in q.morphisms(y, z) {
                            prop_assert_eq!(q.leq(q.c(h, f), g), q.leq(h, l));
                        }
                    }
                }
                for f in q.morphisms(y, z) {
                    for g in q.morphisms(x, z) {
                        let r = q.right_residual(f, g).unwrap();
                        for h in q.morphisms(x, y) {
                            prop_assert_eq!(q.leq(q.c(f, h), g), q.leq(h, r));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn downset_locales_are_grothendieck((k, le) in (1usize..4).prop_flat_map(|k| (Just(k), poset(k)))) {
        let l = downsets(k, &le);
        prop_assert!(l.is_locale());
        let q = locale_quantale(&l).unwrap();
        check_residuation(&q)?;
        prop_assert!(q.is_modular().unwrap());
        let t = q.grothendieck_statements().unwrap();
        prop_assert!(t.consistent());
        prop_assert!(t.grothendieck());
        prop_assert!(q.is_grothendieck_quantale_via_top().unwrap());
    }

    #[test]
    fn is_locale_matches_distributivity_over_all_subsets(
        bits in proptest::collection::vec(any::<bool>(), 16),
    ) {
        // bottom 0, top 5, middle elements 1..=4 ordered by the random bits
        let mut gens = vec![];
        for m in 1..5 {
            gens.push((0, m));
            gens.push((m, 5));
        }
        for i in 1..5 {
            for j in 1..5 {
                if i < j && bits[(i - 1) * 4 + (j - 1)] {
                    gens.push((i, j));
                }
            }
        }
        let names = (0..6).map(|i| i.to_string()).collect();
        let Ok(l) = FiniteSupLattice::from_generating_order(names, &gens) else {
            return Err(TestCaseError::reject("not a lattice"));
        };
        let n = l.len();
        let oracle = l.elements().all(|x| {
            (0u32..1 << n).all(|s| {
                let set: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
                l.meet2(x, l.join(set.iter().copied())) == l.join(set.iter().map(|&e| l.meet2(x, e)))
            })
        });
        prop_assert_eq!(l.is_locale(), oracle);
    }

    #[test]
    fn joins_are_least_upper_bounds(name in prop::sample::select(vec!["boolean", "locale3", "powerset2", "rel2", "z2-groupoid", "trunc3", "m3"]), s in any::<u16>()) {
        let q = corpus::quantaloid_by_name(name).unwrap();
        let l = q.hom(0, 0);
        let set: Vec<usize> = l.elements().filter(|&i| s >> (i % 16) & 1 == 1).collect();
        let j = l.join(set.iter().copied());
        for u in l.elements() {
            let upper = set.iter().all(|&e| l.leq(e, u));
            prop_assert_eq!(upper, l.leq(j, u));
        }
        let m = l.meet(set.iter().copied());
        for d in l.elements() {
            let lower = set.iter().all(|&e| l.leq(d, e));
            prop_assert_eq!(lower, l.leq(d, m));
        }
    }

    #[test]
    fn boolean_matrices_compose_as_relations(
        r in proptest::collection::vec(any::<bool>(), 16),
        s in proptest::collection::vec(any::<bool>(), 16),
    ) {
        let q = corpus::boolean();
        let m = |b: &[bool]| Distributor::new_unchecked(vec![0; 4], vec![0; 4], b.iter().map(|&x| usize::from(x)).collect());
        let (dr, ds) = (m(&r), m(&s));
        let comp = compose_dist(&q, &ds, &dr).unwrap();
        for z in 0..4 {
            for x in 0..4 {
                let want = (0..4).any(|y| r[y * 4 + x] && s[z * 4 + y]);
                prop_assert_eq!(comp.at(z, x).elt == 1, want);
            }
        }
        let t = involute_raw(&q, &dr).unwrap();
        for y in 0..4 {
            for x in 0..4 {
                prop_assert_eq!(t.at(x, y).elt == 1, r[y * 4 + x]);
            }
        }
    }

    #[test]
    fn composition_distributes_over_joins(name in prop::sample::select(vec!["locale3", "rel2", "z2-groupoid", "site2chain", "trunc3"]), a in any::<u32>(), b in any::<u32>()) {
        let q = corpus::quantaloid_by_name(name).unwrap();
        let n = q.n();
        let (x, y, z) = (a as usize % n, (a >> 8) as usize % n, (a >> 16) as usize % n);
        let hy = q.hom(x, y);
        let g = Morphism::new(y, z, b as usize % q.hom(y, z).len());
        let fs: Vec<Morphism> = q.morphisms(x, y).filter(|f| b >> (8 + f.elt % 24) & 1 == 1).collect();
        let lhs = q.c(g, Morphism::new(x, y, hy.join(fs.iter().map(|f| f.elt))));
        let rhs = q.join(x, z, fs.iter().map(|&f| q.c(g, f)));
        prop_assert_eq!(lhs, rhs);
    }
}
