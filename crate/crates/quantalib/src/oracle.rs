//! Brute-force reference counters, independent of the enriched-category
//! machinery: actions of finite groupoids on finite sets, and sheaves on
//! finite locales presented as presheaves on join-irreducibles.

use std::collections::BTreeSet;

use itertools::Itertools;
use quantalib_core::constructions::FiniteGroupoid;
use quantalib_core::{Error, FiniteSupLattice, Result};

/// A functor from a groupoid to finite sets: one set `0..size[x]` per object and
/// one bijection per arrow.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GSet {
    pub sizes: Vec<usize>,
    /// `maps[a][i]` is the image of `i ∈ sizes[src a]` in `sizes[tgt a]`.
    pub maps: Vec<Vec<usize>>,
}

impl GSet {
    pub fn elements(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Number of connected components of the action.
    pub fn orbits(&self, g: &FiniteGroupoid) -> usize {
        let offsets: Vec<usize> = self.sizes.iter().scan(0, |acc, &s| Some(std::mem::replace(acc, *acc + s))).collect();
        let mut parent: Vec<usize> = (0..self.elements()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for (a, m) in self.maps.iter().enumerate() {
            for (i, &j) in m.iter().enumerate() {
                let (u, v) = (find(&mut parent, offsets[g.src(a)] + i), find(&mut parent, offsets[g.tgt(a)] + j));
                parent[u] = v;
            }
        }
        (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    fn relabel(&self, g: &FiniteGroupoid, perms: &[&Vec<usize>]) -> GSet {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let (s, t) = (perms[g.src(a)], perms[g.tgt(a)]);
                let mut out = vec![0; m.len()];
                for (i, &j) in m.iter().enumerate() {
                    out[s[i]] = t[j];
                }
                out
            })
            .collect();
        GSet { sizes: self.sizes.clone(), maps }
    }

    /// The least relabelling under per-object bijections.
    pub fn canonical(&self, g: &FiniteGroupoid) -> GSet {
        let perms: Vec<Vec<Vec<usize>>> = self.sizes.iter().map(|&s| (0..s).permutations(s).collect()).collect();
        perms
            .iter()
            .map(|ps| ps.iter())
            .multi_cartesian_product()
            .map(|choice| self.relabel(g, &choice))
            .min()
            .unwrap_or_else(|| self.clone())
    }
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

/// All actions with the given object sizes, up to nothing (raw).
fn actions_with_sizes(g: &FiniteGroupoid, sizes: &[usize], max_nodes: u64, nodes: &mut u64) -> Result<Vec<GSet>> {
    let k = g.arrows().len();
    let ids: Vec<usize> = (0..g.objects().len()).map(|x| g.identity(x)).collect();
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(k);
    for a in 0..k {
        let (s, t) = (sizes[g.src(a)], sizes[g.tgt(a)]);
        if s != t {
            return Ok(Vec::new());
        }
        choices.push(if ids.contains(&a) { vec![(0..s).collect()] } else { (0..s).permutations(s).collect() });
    }
    let mut out = Vec::new();
    let mut current: Vec<Option<Vec<usize>>> = vec![None; k];
    let consistent = |cur: &[Option<Vec<usize>>]| {
        (0..k).all(|a| {
            (0..k).all(|b| match (g.compose(a, b), &cur[a], &cur[b]) {
                (Some(c), Some(ma), Some(mb)) => cur[c].as_ref().is_none_or(|mc| *mc == compose(ma, mb)),
                _ => true,
            })
        })
    };
    fn go(
        a: usize,
        choices: &[Vec<Vec<usize>>],
        current: &mut Vec<Option<Vec<usize>>>,
        consistent: &dyn Fn(&[Option<Vec<usize>>]) -> bool,
        out: &mut Vec<Vec<Vec<usize>>>,
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(Error::ResourceCap { what: "enumerating groupoid actions", cap: max_nodes });
        }
        if a == choices.len() {
            out.push(current.iter().map(|m| m.clone().unwrap_or_default()).collect());
            return Ok(());
        }
        for m in &choices[a] {
            current[a] = Some(m.clone());
            if consistent(current) {
                go(a + 1, choices, current, consistent, out, nodes, max_nodes)?;
            }
        }
        current[a] = None;
        Ok(())
    }
    let mut raw = Vec::new();
    go(0, &choices, &mut current, &consistent, &mut raw, nodes, max_nodes)?;
    for maps in raw {
        out.push(GSet { sizes: sizes.to_vec(), maps });
    }
    Ok(out)
}

fn size_vectors(objects: usize, total: usize) -> Vec<Vec<usize>> {
    (0..objects).map(|_| 0..=total).multi_cartesian_product().filter(|v| v.iter().sum::<usize>() == total).collect()
}

/// Isomorphism classes of actions with exactly `total` elements.
pub fn gset_classes(g: &FiniteGroupoid, total: usize, max_nodes: u64) -> Result<BTreeSet<GSet>> {
    let mut nodes = 0;
    let mut classes = BTreeSet::new();
    if g.objects().is_empty() {
        if total == 0 {
            classes.insert(GSet { sizes: Vec::new(), maps: Vec::new() });
        }
        return Ok(classes);
    }
    for sizes in size_vectors(g.objects().len(), total) {
        for s in actions_with_sizes(g, &sizes, max_nodes, &mut nodes)? {
            classes.insert(s.canonical(g));
        }
    }
    Ok(classes)
}

/// Number of actions with at most `max_elements` elements, up to isomorphism.
pub fn count_gsets_by_elements(g: &FiniteGroupoid, max_elements: usize, max_nodes: u64) -> Result<usize> {
    (0..=max_elements).map(|k| gset_classes(g, k, max_nodes).map(|c| c.len())).sum()
}

/// Fewest local sections generating the action: each section picks at most one
/// element over each object, and every orbit must receive a pick.
pub fn generator_count(g: &FiniteGroupoid, orbit_supports: &[Vec<usize>]) -> usize {
    let m = g.objects().len();
    if orbit_supports.is_empty() {
        return 0;
    }
    let fits = |k: usize| {
        orbit_supports
            .iter()
            .map(|s| s.iter())
            .multi_cartesian_product()
            .any(|choice| (0..m).all(|x| choice.iter().filter(|&&&y| y == x).count() <= k))
    };
    (1..=orbit_supports.len()).find(|&k| fits(k)).unwrap_or(orbit_supports.len())
}

/// Number of actions generated by at most `max_generators` local sections, up
/// to isomorphism. For a group a local section is an element, so this counts
/// actions with at most that many orbits.
///
/// Connected actions are found by element enumeration up to the number of
/// arrows (no orbit is larger); an action is a multiset of them.
pub fn count_gsets_by_generators(g: &FiniteGroupoid, max_generators: usize, max_nodes: u64) -> Result<usize> {
    let mut connected: Vec<Vec<usize>> = Vec::new();
    for k in 1..=g.arrows().len() {
        for s in gset_classes(g, k, max_nodes)? {
            if s.orbits(g) == 1 {
                connected.push((0..s.sizes.len()).filter(|&x| s.sizes[x] > 0).collect());
            }
        }
    }
    let max_orbits = max_generators * g.objects().len();
    let mut count = 0;
    for size in 0..=max_orbits {
        for orbits in (0..connected.len()).combinations_with_replacement(size) {
            let supports: Vec<Vec<usize>> = orbits.iter().map(|&o| connected[o].clone()).collect();
            if generator_count(g, &supports) <= max_generators {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// A presheaf on the poset of join-irreducibles of a finite locale.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalePresheaf {
    pub sizes: Vec<usize>,
    /// Restriction along each covering pair, in the order of [`JoinIrreducibles::covers`].
    pub maps: Vec<Vec<usize>>,
}

/// The poset `P` of join-irreducibles of a finite distributive lattice, which is
/// then the lattice of down-sets of `P`.
#[derive(Clone, Debug)]
pub struct JoinIrreducibles {
    pub elements: Vec<usize>,
    /// `le[i][j]` iff `p_i ≤ p_j`.
    pub le: Vec<Vec<bool>>,
    /// `(p, q)` with `q` covered by `p`.
    pub covers: Vec<(usize, usize)>,
}

impl JoinIrreducibles {
    pub fn of(l: &FiniteSupLattice) -> Result<Self> {
        if !l.is_locale() {
            return Err(Error::NotApplicable("sheaf oracle needs a locale".into()));
        }
        let mut elements = l.join_irreducibles();
        elements.sort_by_key(|&e| (l.elements().filter(|&x| l.leq(x, e)).count(), e));
        let m = elements.len();
        let le: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| l.leq(elements[i], elements[j])).collect()).collect();
        let mut covers = Vec::new();
        for p in 0..m {
            for q in 0..m {
                if p != q && le[q][p] && !(0..m).any(|r| r != p && r != q && le[q][r] && le[r][p]) {
                    covers.push((p, q));
                }
            }
        }
        Ok(JoinIrreducibles { elements, le, covers })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    /// Restriction maps `res[p][r]` for `r ≤ p`, or `None` if two paths disagree.
    fn restrictions(&self, f: &LocalePresheaf) -> Option<Vec<Vec<Option<Vec<usize>>>>> {
        let m = self.len();
        let mut res: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; m]; m];
        // elements are sorted so that everything below p comes first
        for p in 0..m {
            res[p][p] = Some((0..f.sizes[p]).collect());
            for r in 0..m {
                if r == p || !self.le[r][p] {
                    continue;
                }
                let mut agreed: Option<Vec<usize>> = None;
                for (c, &(hi, q)) in self.covers.iter().enumerate() {
                    if hi != p || !self.le[r][q] {
                        continue;
                    }
                    let via = compose(res[q][r].as_ref()?, &f.maps[c]);
                    match &agreed {
                        Some(a) if *a != via => return None,
                        _ => agreed = Some(via),
                    }
                }
                res[p][r] = agreed;
            }
        }
        Some(res)
    }

    /// Every presheaf with all fibres of size at most `n`.
    pub fn presheaves(&self, n: usize, max_nodes: u64) -> Result<Vec<LocalePresheaf>> {
        let m = self.len();
        let mut out = Vec::new();
        let mut nodes = 0u64;
        for sizes in (0..m).map(|_| 0..=n).multi_cartesian_product() {
            let options: Vec<Vec<Vec<usize>>> = self
                .covers
                .iter()
                .map(|&(p, q)| (0..sizes[p]).map(|_| 0..sizes[q]).multi_cartesian_product().collect::<Vec<_>>())
                .collect();
            let maps_iter: Box<dyn Iterator<Item = Vec<Vec<usize>>>> = if options.is_empty() {
                Box::new(std::iter::once(Vec::new()))
            } else {
                Box::new(options.iter().map(|o| o.iter().cloned()).multi_cartesian_product())
            };
            for maps in maps_iter {
                nodes += 1;
                if nodes > max_nodes {
                    return Err(Error::ResourceCap { what: "enumerating locale presheaves", cap: max_nodes });
                }
                let f = LocalePresheaf { sizes: sizes.clone(), maps };
                if self.restrictions(&f).is_some() {
                    out.push(f);
                }
            }
        }
        Ok(out)
    }

    /// Sections over down-sets: `(down-set, value at each member)`.
    fn sections(&self, f: &LocalePresheaf) -> Vec<Vec<Option<usize>>> {
        let m = self.len();
        let res = self.restrictions(f).expect("functorial presheaf");
        let mut out = Vec::new();
        for mask in 1u32..1 << m {
            let members: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let down = members.iter().all(|&p| (0..m).all(|r| !self.le[r][p] || mask >> r & 1 == 1));
            if !down {
                continue;
            }
            for values in members.iter().map(|&p| 0..f.sizes[p]).multi_cartesian_product() {
                let mut s = vec![None; m];
                for (&p, &v) in members.iter().zip(&values) {
                    s[p] = Some(v);
                }
                let compatible = members.iter().all(|&p| {
                    members.iter().all(|&r| !self.le[r][p] || res[p][r].as_ref().map(|t| t[s[p].unwrap()]) == s[r])
                });
                if compatible {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Fewest sections whose restrictions reach every element of every fibre.
    pub fn generator_count(&self, f: &LocalePresheaf, limit: usize) -> Option<usize> {
        let targets: Vec<(usize, usize)> = (0..self.len()).flat_map(|p| (0..f.sizes[p]).map(move |x| (p, x))).collect();
        let sections = self.sections(f);
        let covers =
            |chosen: &[&Vec<Option<usize>>]| targets.iter().all(|&(p, x)| chosen.iter().any(|s| s[p] == Some(x)));
        (0..=limit).find(|&k| sections.iter().combinations(k).any(|c| covers(&c)))
    }

    fn canonical(&self, f: &LocalePresheaf) -> LocalePresheaf {
        let perms: Vec<Vec<Vec<usize>>> = f.sizes.iter().map(|&s| (0..s).permutations(s).collect()).collect();
        perms
            .iter()
            .map(|ps| ps.iter())
            .multi_cartesian_product()
            .map(|sigma| {
                let maps = self
                    .covers
                    .iter()
                    .zip(&f.maps)
                    .map(|(&(p, q), m)| {
                        let mut out = vec![0; m.len()];
                        for (i, &j) in m.iter().enumerate() {
                            out[sigma[p][i]] = sigma[q][j];
                        }
                        out
                    })
                    .collect();
                LocalePresheaf { sizes: f.sizes.clone(), maps }
            })
            .min()
            .unwrap_or_else(|| f.clone())
    }
}

/// Sheaves on a finite locale generated by at most `max_generators` local
/// sections, up to isomorphism.
pub fn count_locale_sheaves(l: &FiniteSupLattice, max_generators: usize, max_nodes: u64) -> Result<usize> {
    let p = JoinIrreducibles::of(l)?;
    let mut classes = BTreeSet::new();
    for f in p.presheaves(max_generators, max_nodes)? {
        if p.generator_count(&f, max_generators).is_some() {
            classes.insert(p.canonical(&f));
        }
    }
    Ok(classes.len())
}
