use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FiniteQuantaloid, Morphism, Obj, Span};
use crate::lattice::Elt;

/// A concrete counterexample to a law or predicate.
///
/// [`Violation::replay`] re-evaluates the local condition against a
/// quantaloid and returns `true` when the failure is confirmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x ∧ (a ∨ b) ≠ (x ∧ a) ∨ (x ∧ b)` in `hom(src, dst)`.
    NotLocale { src: Obj, dst: Obj, x: Elt, a: Elt, b: Elt },
    /// Left adjoints `f ≤ g` with `f ≠ g`.
    NotMapDiscrete { f: Morphism, g: Morphism },
    /// The join of all `f g*` below `q` is `best ≠ q`.
    NotWeaklyTabular { q: Morphism, best: Morphism },
    /// No span of left adjoints tabulates `q` (adjoint version).
    NotMapTabular { q: Morphism },
    /// `f g* ∧ m n* ≰ f (g* n ∧ f* m) n*` for the two spans.
    NotWeaklyModular { first: Span, second: Span },
    /// No span of left adjoints tabulates `q` (involutive version).
    NotTabular { q: Morphism },
    /// `g f ∧ h ≰ g (f ∧ g° h)`.
    NotModular { f: Morphism, g: Morphism, h: Morphism },
    /// `q q° ≰ 1`.
    NotSimple { q: Morphism },
    /// `q` is not `f g°` for simple `f`, `g`.
    NotSemiSimple { q: Morphism },
    /// The join of all simple `f g°` below `q` is `best ≠ q`.
    NotWeaklySemiSimple { q: Morphism, best: Morphism },
    /// `f f° f ≤ f` but `f ≰ f f° f`.
    NotStablyGelfand { f: Morphism },
    /// Pairs `(f_i, g_i)` meeting the premises but not the conclusion.
    NotCauchyBilateral { family: Vec<(Morphism, Morphism)> },
    /// `f ≰ f f° f`.
    NotRegular { f: Morphism },
    /// A left adjoint whose right adjoint is not its involute.
    NotSymmetricLeftAdjoint { f: Morphism },
    /// Residuation adjunction fails for `h`, `f`, `g` (left: `h∘f ≤ g ⇔ h ≤ g↙f`;
    /// right: `f∘h ≤ g ⇔ h ≤ f↘g`).
    Residuation { left: bool, g: Morphism, f: Morphism, h: Morphism },
    /// `h∘(g∘f) ≠ (h∘g)∘f`.
    Associativity { f: Morphism, g: Morphism, h: Morphism },
    /// `1∘f ≠ f` or `f∘1 ≠ f`.
    Unit { f: Morphism },
    /// `g∘(f1 ∨ f2) ≠ g∘f1 ∨ g∘f2` (`post`) or the dual.
    JoinPreservation { post: bool, fixed: Morphism, a: Morphism, b: Morphism },
    /// Binary meet of `a`, `b` in the splitting hom `Q_E(e1, e2)` differs from the meet in `Q`.
    SplitMeet { e1: Morphism, e2: Morphism, a: Morphism, b: Morphism },
    /// The top of a one-object quantale is not a join of simple composites.
    TopNotWeaklySemiSimple { best: Morphism },
}

impl Violation {
    /// Short kebab-case identifier.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::NotLocale { .. } => "not-locale",
            Violation::NotMapDiscrete { .. } => "not-map-discrete",
            Violation::NotWeaklyTabular { .. } => "not-weakly-tabular",
            Violation::NotMapTabular { .. } => "not-map-tabular",
            Violation::NotWeaklyModular { .. } => "not-weakly-modular",
            Violation::NotTabular { .. } => "not-tabular",
            Violation::NotModular { .. } => "not-modular",
            Violation::NotSimple { .. } => "not-simple",
            Violation::NotSemiSimple { .. } => "not-semi-simple",
            Violation::NotWeaklySemiSimple { .. } => "not-weakly-semi-simple",
            Violation::NotStablyGelfand { .. } => "not-stably-gelfand",
            Violation::NotCauchyBilateral { .. } => "not-cauchy-bilateral",
            Violation::NotRegular { .. } => "not-regular",
            Violation::NotSymmetricLeftAdjoint { .. } => "not-symmetric-left-adjoint",
            Violation::Residuation { .. } => "residuation",
            Violation::Associativity { .. } => "associativity",
            Violation::Unit { .. } => "unit",
            Violation::JoinPreservation { .. } => "join-preservation",
            Violation::SplitMeet { .. } => "split-meet",
            Violation::TopNotWeaklySemiSimple { .. } => "top-not-weakly-semi-simple",
        }
    }

    /// Labelled morphisms making up the counterexample.
    pub fn morphisms(&self) -> Vec<(String, Morphism)> {
        let l = |s: &str, m: Morphism| (String::from(s), m);
        match self {
            Violation::NotLocale { src, dst, x, a, b } => Vec::from([
                l("x", Morphism::new(*src, *dst, *x)),
                l("a", Morphism::new(*src, *dst, *a)),
                l("b", Morphism::new(*src, *dst, *b)),
            ]),
            Violation::NotMapDiscrete { f, g } => Vec::from([l("f", *f), l("g", *g)]),
            Violation::NotWeaklyTabular { q, best } | Violation::NotWeaklySemiSimple { q, best } => {
                Vec::from([l("q", *q), l("best", *best)])
            }
            Violation::NotMapTabular { q }
            | Violation::NotTabular { q }
            | Violation::NotSimple { q }
            | Violation::NotSemiSimple { q } => Vec::from([l("q", *q)]),
            Violation::NotWeaklyModular { first, second } => {
                Vec::from([l("f", first.right), l("g", first.left), l("m", second.right), l("n", second.left)])
            }
            Violation::NotModular { f, g, h } | Violation::Associativity { f, g, h } => {
                Vec::from([l("f", *f), l("g", *g), l("h", *h)])
            }
            Violation::NotStablyGelfand { f }
            | Violation::NotRegular { f }
            | Violation::NotSymmetricLeftAdjoint { f }
            | Violation::Unit { f } => Vec::from([l("f", *f)]),
            Violation::NotCauchyBilateral { family } => family
                .iter()
                .enumerate()
                .flat_map(|(i, (f, g))| [(format!("f{i}"), *f), (format!("g{i}"), *g)])
                .collect(),
            Violation::Residuation { g, f, h, .. } => Vec::from([l("g", *g), l("f", *f), l("h", *h)]),
            Violation::JoinPreservation { fixed, a, b, .. } => Vec::from([l("fixed", *fixed), l("a", *a), l("b", *b)]),
            Violation::SplitMeet { e1, e2, a, b } => Vec::from([l("e1", *e1), l("e2", *e2), l("a", *a), l("b", *b)]),
            Violation::TopNotWeaklySemiSimple { best } => Vec::from([l("best", *best)]),
        }
    }

    /// One-line rendering with object and element names.
    pub fn describe(&self, q: &FiniteQuantaloid) -> String {
        let parts: Vec<String> = self.morphisms().iter().map(|(k, m)| format!("{k} = {}", q.describe(*m))).collect();
        format!("{}: {}", self.kind(), parts.join(", "))
    }

    /// Re-checks the counterexample; `true` means the failure is confirmed.
    pub fn replay(&self, q: &FiniteQuantaloid) -> bool {
        let in_range =
            self.morphisms().iter().all(|(_, m)| m.src < q.n() && m.dst < q.n() && m.elt < q.hom(m.src, m.dst).len());
        if !in_range {
            return false;
        }
        let inv = q.is_involutive();
        match self {
            Violation::NotLocale { src, dst, x, a, b } => {
                let h = q.hom(*src, *dst);
                h.meet2(*x, h.join2(*a, *b)) != h.join2(h.meet2(*x, *a), h.meet2(*x, *b))
            }
            Violation::NotMapDiscrete { f, g } => {
                f != g && q.is_left_adjoint(*f) && q.is_left_adjoint(*g) && q.leq(*f, *g)
            }
            Violation::NotWeaklyTabular { q: m, .. } => q.weak_tabulation(*m) != *m,
            Violation::NotMapTabular { q: m } => q.map_tabulation_of(*m).is_none(),
            Violation::NotWeaklyModular { first, second } => {
                q.is_span(first) && q.is_span(second) && !q.weakly_modular_at(first, second)
            }
            Violation::NotTabular { q: m } => inv && q.tabulation_of(*m).is_none(),
            Violation::NotModular { f, g, h } => inv && !q.modular_at(*f, *g, *h),
            Violation::NotSimple { q: m } => inv && !q.simple(*m),
            Violation::NotSemiSimple { q: m } => inv && q.semi_simple_witness(*m).is_none(),
            Violation::NotWeaklySemiSimple { q: m, .. } => inv && q.weak_semi_simplification(*m) != *m,
            Violation::NotStablyGelfand { f } => {
                if !inv {
                    return false;
                }
                let fff = q.chain(&[*f, q.o(*f), *f]);
                q.leq(fff, *f) && !q.leq(*f, fff)
            }
            Violation::NotCauchyBilateral { family } => {
                inv && q.cauchy_premises_hold(family) && !q.cauchy_conclusion_holds(family)
            }
            Violation::NotRegular { f } => inv && !q.leq(*f, q.chain(&[*f, q.o(*f), *f])),
            Violation::NotSymmetricLeftAdjoint { f } => {
                inv && q.is_left_adjoint(*f) && q.right_adjoint_of(*f) != Some(q.o(*f))
            }
            Violation::Residuation { left, g, f, h } => {
                if *left {
                    match q.left_residual(*g, *f) {
                        Ok(r) => h.src == f.dst && h.dst == g.dst && q.leq(q.c(*h, *f), *g) != q.leq(*h, r),
                        Err(_) => false,
                    }
                } else {
                    match q.right_residual(*f, *g) {
                        Ok(r) => h.src == g.src && h.dst == f.src && q.leq(q.c(*f, *h), *g) != q.leq(*h, r),
                        Err(_) => false,
                    }
                }
            }
            Violation::Associativity { f, g, h } => {
                f.dst == g.src && g.dst == h.src && q.c(*h, q.c(*g, *f)) != q.c(q.c(*h, *g), *f)
            }
            Violation::Unit { f } => q.c(q.id(f.dst), *f) != *f || q.c(*f, q.id(f.src)) != *f,
            Violation::JoinPreservation { post, fixed, a, b } => {
                if *post {
                    q.c(*fixed, q.join2(*a, *b)) != q.join2(q.c(*fixed, *a), q.c(*fixed, *b))
                } else {
                    q.c(q.join2(*a, *b), *fixed) != q.join2(q.c(*a, *fixed), q.c(*b, *fixed))
                }
            }
            Violation::SplitMeet { e1, e2, a, b } => {
                let fixed = |x: Morphism| q.c(*e2, x) == x && q.c(x, *e1) == x;
                if !(fixed(*a) && fixed(*b)) {
                    return false;
                }
                let (x, y) = (a.src, a.dst);
                let local = q.join(x, y, q.morphisms(x, y).filter(|&m| fixed(m) && q.leq(m, *a) && q.leq(m, *b)));
                local != q.meet2(*a, *b)
            }
            Violation::TopNotWeaklySemiSimple { .. } => {
                inv && q.n() == 1 && q.weak_semi_simplification(q.top(0, 0)) != q.top(0, 0)
            }
        }
    }
}
