//! Finite complete lattices (sup-lattices).
//!
//! A [`FiniteSupLattice`] is given by a carrier of named elements and a partial
//! order. Binary joins and meets are tabulated once at construction; all
//! operations afterwards are table lookups. Elements are dense indices
//! ([`Elt`]); names only matter at the boundary.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Dense index of a lattice element.
pub type Elt = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: Elt,
    top: Elt,
}

impl FiniteSupLattice {
    /// Builds a lattice from a generating relation; the reflexive-transitive
    /// closure is taken before validation.
    pub fn from_generating_order(names: Vec<String>, generators: &[(Elt, Elt)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in generators {
            if a >= n || b >= n {
                return Err(Error::InvalidLattice(format!("order pair ({a},{b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order_matrix(names, leq)
    }

    /// Builds a lattice from a complete order predicate (must already be a partial order).
    pub fn from_order_fn(names: Vec<String>, le: impl Fn(Elt, Elt) -> bool) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = le(a, b);
            }
        }
        Self::from_order_matrix(names, leq)
    }

    /// Builds a lattice from string ids and a generating relation on them.
    pub fn from_named(elements: &[&str], generators: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| names.iter().position(|x| x == s).ok_or_else(|| Error::UnknownName(s.to_string()));
        let mut pairs = Vec::with_capacity(generators.len());
        for (a, b) in generators {
            pairs.push((idx(a)?, idx(b)?));
        }
        Self::from_generating_order(names, &pairs)
    }

    fn from_order_matrix(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidLattice("empty carrier has no bottom".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidLattice("carrier too large".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if names[i] == names[j] {
                    return Err(Error::InvalidLattice(format!("duplicate element id {:?}", names[i])));
                }
            }
        }
        for a in 0..n {
            if !leq[a * n + a] {
                return Err(Error::InvalidLattice(format!("order not reflexive at {:?}", names[a])));
            }
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::InvalidLattice(format!(
                        "order not antisymmetric: {:?} and {:?}",
                        names[a], names[b]
                    )));
                }
                if leq[a * n + b] {
                    for c in 0..n {
                        if leq[b * n + c] && !leq[a * n + c] {
                            return Err(Error::InvalidLattice("order not transitive".into()));
                        }
                    }
                }
            }
        }

        let up: Vec<BitSet> = (0..n).map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq[a * n + b]))).collect();
        let down: Vec<BitSet> = (0..n).map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq[b * n + a]))).collect();
        let rank: Vec<usize> = down.iter().map(BitSet::count).collect();

        let bottom = (0..n)
            .find(|&b| up[b].count() == n)
            .ok_or_else(|| Error::InvalidLattice("no bottom element (empty join missing)".into()))?;
        let top =
            (0..n).find(|&t| down[t].count() == n).ok_or_else(|| Error::InvalidLattice("no top element".into()))?;

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut ub = up[a].clone();
                ub.intersect_with(&up[b]);
                let j = ub.iter().min_by_key(|&c| rank[c]).filter(|&c| ub.is_subset(&up[c]));
                let Some(j) = j else {
                    return Err(Error::InvalidLattice(format!(
                        "no least upper bound of {:?} and {:?}",
                        names[a], names[b]
                    )));
                };
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;

                let mut lb = down[a].clone();
                lb.intersect_with(&down[b]);
                let m = lb.iter().max_by_key(|&c| rank[c]).filter(|&c| lb.is_subset(&down[c]));
                let Some(m) = m else {
                    return Err(Error::InvalidLattice(format!(
                        "no greatest lower bound of {:?} and {:?}",
                        names[a], names[b]
                    )));
                };
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        Ok(FiniteSupLattice { names, leq, join, meet, bottom, top })
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain(names: &[&str]) -> Result<Self> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        Self::from_order_fn(owned, |a, b| a <= b)
    }

    /// The powerset of `atoms`, elements named `{a,b}` and ordered by inclusion.
    pub fn powerset(atoms: &[&str]) -> Result<Self> {
        let k = atoms.len();
        let names = (0..1usize << k).map(|m| subset_name(atoms, m)).collect();
        Self::from_order_fn(names, |a, b| a & !b == 0)
    }

    /// Full sub-poset on a join-closed subset (containing the bottom).
    /// Joins agree with the parent; meets are recomputed in the subset.
    pub fn sup_closed_subset(&self, subset: &[Elt]) -> Result<Self> {
        let names = subset.iter().map(|&e| self.names[e].clone()).collect();
        Self::from_order_fn(names, |a, b| self.leq(subset[a], subset[b]))
    }

    /// Product lattice with elementwise order; the last factor varies fastest.
    /// Element names are the component names joined by `;` inside brackets.
    pub fn product(factors: &[&FiniteSupLattice], cap: usize) -> Result<Self> {
        let mut size: usize = 1;
        for f in factors {
            size = size
                .checked_mul(f.len())
                .filter(|&s| s <= cap)
                .ok_or(Error::ResourceCap { what: "building a product lattice", cap: cap as u64 })?;
        }
        let decode = |mut i: usize| {
            let mut out = vec![0; factors.len()];
            for (k, f) in factors.iter().enumerate().rev() {
                out[k] = i % f.len();
                i /= f.len();
            }
            out
        };
        let tuples: Vec<Vec<Elt>> = (0..size).map(decode).collect();
        let names = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().zip(factors).map(|(&e, f)| f.name(e)).collect();
                format!("[{}]", parts.join(";"))
            })
            .collect();
        Self::from_order_fn(names, |a, b| {
            tuples[a].iter().zip(&tuples[b]).zip(factors).all(|((&x, &y), f)| f.leq(x, y))
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<Elt> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn name(&self, e: Elt) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elt> {
        self.names.iter().position(|n| n == name)
    }

    pub fn resolve(&self, name: &str) -> Result<Elt> {
        self.index_of(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Elt, b: Elt) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn bottom(&self) -> Elt {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elt {
        self.top
    }

    #[inline]
    pub fn join2(&self, a: Elt, b: Elt) -> Elt {
        self.join[a * self.len() + b] as Elt
    }

    #[inline]
    pub fn meet2(&self, a: Elt, b: Elt) -> Elt {
        self.meet[a * self.len() + b] as Elt
    }

    /// Least upper bound of a set; the empty join is the bottom.
    pub fn join(&self, set: impl IntoIterator<Item = Elt>) -> Elt {
        set.into_iter().fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    /// Greatest lower bound of a set; the empty meet is the top.
    pub fn meet(&self, set: impl IntoIterator<Item = Elt>) -> Elt {
        set.into_iter().fold(self.top, |acc, e| self.meet2(acc, e))
    }

    /// Join of named elements, rejecting unknown ids.
    pub fn join_named(&self, set: &[&str]) -> Result<Elt> {
        let mut acc = self.bottom;
        for s in set {
            acc = self.join2(acc, self.resolve(s)?);
        }
        Ok(acc)
    }

    /// Meet of named elements, rejecting unknown ids.
    pub fn meet_named(&self, set: &[&str]) -> Result<Elt> {
        let mut acc = self.top;
        for s in set {
            acc = self.meet2(acc, self.resolve(s)?);
        }
        Ok(acc)
    }

    /// Finite frame law `x ∧ (a ∨ b) = (x ∧ a) ∨ (x ∧ b)`; returns the first
    /// violating triple if any.
    pub fn distributivity_counterexample(&self) -> Option<(Elt, Elt, Elt)> {
        let n = self.len();
        for x in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    let lhs = self.meet2(x, self.join2(a, b));
                    let rhs = self.join2(self.meet2(x, a), self.meet2(x, b));
                    if lhs != rhs {
                        return Some((x, a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_locale(&self) -> bool {
        self.distributivity_counterexample().is_none()
    }

    /// Elements covering nothing but the bottom and not joins of smaller
    /// elements, in index order.
    pub fn join_irreducibles(&self) -> Vec<Elt> {
        self.elements()
            .filter(|&j| {
                j != self.bottom && {
                    let below = self.join(self.elements().filter(|&x| x != j && self.leq(x, j)));
                    below != j
                }
            })
            .collect()
    }
}

fn subset_name(atoms: &[&str], mask: usize) -> String {
    let parts: Vec<&str> = atoms.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, a)| *a).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> FiniteSupLattice {
        FiniteSupLattice::from_named(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    #[test]
    fn chain_join_meet() {
        let l = FiniteSupLattice::chain(&["0", "m", "1"]).unwrap();
        let (z, m, o) = (0, 1, 2);
        assert_eq!(l.join([z, m]), m);
        assert_eq!(l.join([]), l.bottom());
        assert_eq!(l.meet([m, o]), m);
        assert_eq!(l.meet([]), l.top());
        assert!(l.is_locale());
    }

    #[test]
    fn powerset_join_meet() {
        let l = FiniteSupLattice::powerset(&["a", "b"]).unwrap();
        let a = l.resolve("{a}").unwrap();
        let b = l.resolve("{b}").unwrap();
        assert_eq!(l.name(l.join([a, b])), "{a,b}");
        assert_eq!(l.name(l.meet([a, b])), "{}");
        assert!(l.is_locale());
    }

    #[test]
    fn m3_is_not_a_locale() {
        let l = m3();
        let (x, a, b) = l.distributivity_counterexample().expect("M3 is not distributive");
        assert_ne!(l.meet2(x, l.join2(a, b)), l.join2(l.meet2(x, a), l.meet2(x, b)));
        assert!(!l.is_locale());
    }

    #[test]
    fn generating_relation_is_closed() {
        let l = FiniteSupLattice::from_named(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        assert!(l.leq(0, 2));
    }

    #[test]
    fn unknown_ids_rejected() {
        let l = FiniteSupLattice::chain(&["0", "1"]).unwrap();
        assert_eq!(l.join_named(&["0", "x"]), Err(Error::UnknownName("x".into())));
        assert!(l.meet_named(&["nope"]).is_err());
        assert!(FiniteSupLattice::from_named(&["0"], &[("0", "q")]).is_err());
    }

    #[test]
    fn missing_joins_rejected() {
        // two incomparable maximal elements: no top
        let e = FiniteSupLattice::from_named(&["0", "a", "b"], &[("0", "a"), ("0", "b")]);
        assert!(matches!(e, Err(Error::InvalidLattice(_))));
        // cycle
        let e = FiniteSupLattice::from_named(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(e, Err(Error::InvalidLattice(_))));
        assert!(FiniteSupLattice::chain(&[]).is_err());
        assert!(FiniteSupLattice::chain(&["x", "x"]).is_err());
    }

    #[test]
    fn join_irreducibles_of_chain_and_powerset() {
        let c = FiniteSupLattice::chain(&["0", "m", "1"]).unwrap();
        assert_eq!(c.join_irreducibles(), vec![1, 2]);
        let p = FiniteSupLattice::powerset(&["a", "b"]).unwrap();
        let names: Vec<&str> = p.join_irreducibles().iter().map(|&e| p.name(e)).collect();
        assert_eq!(names, vec!["{a}", "{b}"]);
    }
}
