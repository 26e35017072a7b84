use alloc::vec::Vec;

use super::{ssi, FiniteQuantaloid, Morphism, Obj, Violation};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A span of left adjoints `X <-g- Z -f-> Y`, read as the morphism `f g*: X -> Y`
/// (or `f g°` in the involutive setting).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    /// `g: Z -> X`
    pub left: Morphism,
    /// `f: Z -> Y`
    pub right: Morphism,
}

impl Span {
    pub fn apex(&self) -> Obj {
        self.left.src
    }
}

/// Outcome of a predicate: `Ok(None)` holds, `Ok(Some(v))` fails with `v`.
pub type Check = Result<Option<Violation>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CauchyBilateralConfig {
    /// Maximum number of search nodes before giving up.
    pub max_nodes: u64,
}

impl Default for CauchyBilateralConfig {
    fn default() -> Self {
        CauchyBilateralConfig { max_nodes: 1 << 20 }
    }
}

/// Every predicate that can be requested by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredicateSuite {
    LocallyLocalic,
    MapDiscrete,
    WeaklyTabular,
    MapTabular,
    WeaklyModular,
    Tabular,
    Modular,
    Simple,
    SemiSimple,
    WeaklySemiSimple,
    StablyGelfand,
    CauchyBilateral,
    ClosedCrible,
    Grothendieck,
    GrothendieckViaTop,
}

impl PredicateSuite {
    pub const ALL: [PredicateSuite; 15] = [
        PredicateSuite::LocallyLocalic,
        PredicateSuite::MapDiscrete,
        PredicateSuite::WeaklyTabular,
        PredicateSuite::MapTabular,
        PredicateSuite::WeaklyModular,
        PredicateSuite::Tabular,
        PredicateSuite::Modular,
        PredicateSuite::Simple,
        PredicateSuite::SemiSimple,
        PredicateSuite::WeaklySemiSimple,
        PredicateSuite::StablyGelfand,
        PredicateSuite::CauchyBilateral,
        PredicateSuite::ClosedCrible,
        PredicateSuite::Grothendieck,
        PredicateSuite::GrothendieckViaTop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredicateSuite::LocallyLocalic => "locally-localic",
            PredicateSuite::MapDiscrete => "map-discrete",
            PredicateSuite::WeaklyTabular => "weakly-tabular",
            PredicateSuite::MapTabular => "map-tabular",
            PredicateSuite::WeaklyModular => "weakly-modular",
            PredicateSuite::Tabular => "tabular",
            PredicateSuite::Modular => "modular",
            PredicateSuite::Simple => "simple",
            PredicateSuite::SemiSimple => "semi-simple",
            PredicateSuite::WeaklySemiSimple => "weakly-semi-simple",
            PredicateSuite::StablyGelfand => "stably-gelfand",
            PredicateSuite::CauchyBilateral => "cauchy-bilateral",
            PredicateSuite::ClosedCrible => "closed-crible",
            PredicateSuite::Grothendieck => "grothendieck",
            PredicateSuite::GrothendieckViaTop => "grothendieck-via-top",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == s)
    }

    pub fn needs_involution(self) -> bool {
        !matches!(
            self,
            PredicateSuite::LocallyLocalic
                | PredicateSuite::MapDiscrete
                | PredicateSuite::WeaklyTabular
                | PredicateSuite::MapTabular
                | PredicateSuite::WeaklyModular
                | PredicateSuite::ClosedCrible
        )
    }
}

/// The statements of the Grothendieck-quantaloid characterisation that are
/// decidable on a finite quantaloid, each computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckStatements {
    pub modular: Option<Violation>,
    pub locally_localic: Option<Violation>,
    /// `Q` is weakly semi-simple.
    pub weakly_semi_simple: Option<Violation>,
    /// `Q_ssi` is weakly tabular (violation refers to `Q_ssi`).
    pub ssi_weakly_tabular: Option<Violation>,
    /// `Q_ssi` passes the closed-crible axioms (violation refers to `Q_ssi`).
    pub ssi_closed_crible: Option<Violation>,
}

impl GrothendieckStatements {
    /// By definition: modular, locally localic and weakly semi-simple.
    pub fn grothendieck(&self) -> bool {
        self.modular.is_none() && self.locally_localic.is_none() && self.weakly_semi_simple.is_none()
    }

    pub fn split_weakly_tabular(&self) -> bool {
        self.ssi_weakly_tabular.is_none()
    }

    pub fn split_closed_crible(&self) -> bool {
        self.ssi_closed_crible.is_none()
    }

    /// Whether the statements agree wherever the characterisation relates them.
    pub fn consistent(&self) -> bool {
        let wss = self.weakly_semi_simple.is_none();
        let modular = self.modular.is_none();
        let ll = self.locally_localic.is_none();
        (!modular || wss == self.split_weakly_tabular())
            && (!(modular && ll) || (wss == self.split_closed_crible() && wss == self.grothendieck()))
    }
}

impl FiniteQuantaloid {
    fn pairs(&self) -> impl Iterator<Item = (Obj, Obj)> {
        let n = self.n();
        (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
    }

    fn need_inv(&self) -> Result<()> {
        if self.is_involutive() {
            Ok(())
        } else {
            Err(Error::MissingInvolution)
        }
    }

    pub fn is_span(&self, s: &Span) -> bool {
        s.left.src == s.right.src && self.is_left_adjoint(s.left) && self.is_left_adjoint(s.right)
    }

    /// All spans of left adjoints from `x` to `y`, apex-major in object order.
    pub fn spans(&self, x: Obj, y: Obj) -> Vec<Span> {
        let mut out = Vec::new();
        for z in self.objects() {
            for g in self.left_adjoints(z, x) {
                for f in self.left_adjoints(z, y) {
                    out.push(Span { left: g, right: f });
                }
            }
        }
        out
    }

    /// `f g*` for the span.
    pub fn span_composite(&self, s: &Span) -> Morphism {
        self.c(s.right, self.star(s.left))
    }

    /// `f g°` for the span.
    pub fn span_composite_inv(&self, s: &Span) -> Morphism {
        self.c(s.right, self.o(s.left))
    }

    fn apex_identity_meet(&self, s: &Span, inv: bool) -> bool {
        let (f, g) = (s.right, s.left);
        let (ff, gg) = if inv {
            (self.c(self.o(f), f), self.c(self.o(g), g))
        } else {
            (self.c(self.star(f), f), self.c(self.star(g), g))
        };
        self.meet2(ff, gg) == self.id(s.apex())
    }

    pub fn is_locally_localic(&self) -> bool {
        self.locally_localic_violation().is_none()
    }

    pub fn locally_localic_violation(&self) -> Option<Violation> {
        self.pairs().find_map(|(x, y)| {
            self.hom(x, y).distributivity_counterexample().map(|(e, a, b)| Violation::NotLocale {
                src: x,
                dst: y,
                x: e,
                a,
                b,
            })
        })
    }

    pub fn map_discrete_violation(&self) -> Option<Violation> {
        for (x, y) in self.pairs() {
            let las: Vec<Morphism> = self.left_adjoints(x, y).collect();
            for &f in &las {
                for &g in &las {
                    if f != g && self.leq(f, g) {
                        return Some(Violation::NotMapDiscrete { f, g });
                    }
                }
            }
        }
        None
    }

    /// `⋁{f g* ≤ q}` over spans of left adjoints.
    pub fn weak_tabulation(&self, q: Morphism) -> Morphism {
        let parts = self.spans(q.src, q.dst).into_iter().map(|s| self.span_composite(&s));
        self.join(q.src, q.dst, parts.filter(|&m| self.leq(m, q)))
    }

    pub fn weakly_tabular_violation(&self) -> Option<Violation> {
        for (x, y) in self.pairs() {
            let mut composites: Vec<Morphism> = self.spans(x, y).iter().map(|s| self.span_composite(s)).collect();
            composites.sort();
            composites.dedup();
            for q in self.morphisms(x, y) {
                let best = self.join(x, y, composites.iter().copied().filter(|&m| self.leq(m, q)));
                if best != q {
                    return Some(Violation::NotWeaklyTabular { q, best });
                }
            }
        }
        None
    }

    /// A span with `f g* = q` and `f*f ∧ g*g = 1`.
    pub fn map_tabulation_of(&self, q: Morphism) -> Option<Span> {
        self.spans(q.src, q.dst).into_iter().find(|s| self.span_composite(s) == q && self.apex_identity_meet(s, false))
    }

    pub fn map_tabular_violation(&self) -> Option<Violation> {
        self.pairs().find_map(|(x, y)| {
            self.morphisms(x, y).find(|&q| self.map_tabulation_of(q).is_none()).map(|q| Violation::NotMapTabular { q })
        })
    }

    /// `f g* ∧ m n* ≤ f (g* n ∧ f* m) n*`.
    pub fn weakly_modular_at(&self, a: &Span, b: &Span) -> bool {
        let (f, g, m, n) = (a.right, a.left, b.right, b.left);
        let lhs = self.meet2(self.span_composite(a), self.span_composite(b));
        let mid = self.meet2(self.c(self.star(g), n), self.c(self.star(f), m));
        let rhs = self.chain(&[self.star(n), mid, f]);
        self.leq(lhs, rhs)
    }

    pub fn weakly_modular_violation(&self) -> Option<Violation> {
        for (x, y) in self.pairs() {
            let spans = self.spans(x, y);
            for a in &spans {
                for b in &spans {
                    if !self.weakly_modular_at(a, b) {
                        return Some(Violation::NotWeaklyModular { first: *a, second: *b });
                    }
                }
            }
        }
        None
    }

    /// A span with `f g° = q` and `f°f ∧ g°g = 1`.
    pub fn tabulation_of(&self, q: Morphism) -> Option<Span> {
        self.spans(q.src, q.dst)
            .into_iter()
            .find(|s| self.span_composite_inv(s) == q && self.apex_identity_meet(s, true))
    }

    pub fn tabular_violation(&self) -> Check {
        self.need_inv()?;
        Ok(self.pairs().find_map(|(x, y)| {
            self.morphisms(x, y).find(|&q| self.tabulation_of(q).is_none()).map(|q| Violation::NotTabular { q })
        }))
    }

    /// `g f ∧ h ≤ g (f ∧ g° h)` for `f: X -> Y`, `g: Y -> Z`, `h: X -> Z`.
    pub fn modular_at(&self, f: Morphism, g: Morphism, h: Morphism) -> bool {
        let lhs = self.meet2(self.c(g, f), h);
        let rhs = self.c(g, self.meet2(f, self.c(self.o(g), h)));
        self.leq(lhs, rhs)
    }

    pub fn is_modular(&self) -> Result<bool> {
        Ok(self.modular_violation()?.is_none())
    }

    pub fn modular_violation(&self) -> Check {
        self.need_inv()?;
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in self.morphisms(x, y) {
                        for g in self.morphisms(y, z) {
                            for h in self.morphisms(x, z) {
                                if !self.modular_at(f, g, h) {
                                    return Ok(Some(Violation::NotModular { f, g, h }));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// `q q° ≤ 1`. Requires an involution.
    pub fn simple(&self, q: Morphism) -> bool {
        self.leq(self.c(q, self.o(q)), self.id(q.dst))
    }

    pub fn is_simple_morphism(&self, q: Morphism) -> Result<bool> {
        self.need_inv()?;
        Ok(self.simple(q))
    }

    /// Simple morphisms `x -> y` in element order.
    pub fn simple_morphisms(&self, x: Obj, y: Obj) -> Vec<Morphism> {
        self.morphisms(x, y).filter(|&m| self.simple(m)).collect()
    }

    fn simple_composites(&self, x: Obj, y: Obj) -> Vec<(Morphism, Morphism, Morphism)> {
        let mut out = Vec::new();
        for z in self.objects() {
            let (fs, gs) = (self.simple_morphisms(z, y), self.simple_morphisms(z, x));
            for &f in &fs {
                for &g in &gs {
                    out.push((self.c(f, self.o(g)), f, g));
                }
            }
        }
        out
    }

    pub fn simple_violation(&self) -> Check {
        self.need_inv()?;
        Ok(self
            .pairs()
            .find_map(|(x, y)| self.morphisms(x, y).find(|&q| !self.simple(q)).map(|q| Violation::NotSimple { q })))
    }

    /// Simple `(f, g)` with `q = f g°`.
    pub fn semi_simple_witness(&self, q: Morphism) -> Option<(Morphism, Morphism)> {
        self.simple_composites(q.src, q.dst).into_iter().find(|t| t.0 == q).map(|t| (t.1, t.2))
    }

    pub fn semi_simple_violation(&self) -> Check {
        self.need_inv()?;
        for (x, y) in self.pairs() {
            let comps = self.simple_composites(x, y);
            if let Some(q) = self.morphisms(x, y).find(|q| !comps.iter().any(|t| t.0 == *q)) {
                return Ok(Some(Violation::NotSemiSimple { q }));
            }
        }
        Ok(None)
    }

    /// `⋁{f g° ≤ q : f, g simple}`.
    pub fn weak_semi_simplification(&self, q: Morphism) -> Morphism {
        let parts = self.simple_composites(q.src, q.dst).into_iter().map(|t| t.0);
        self.join(q.src, q.dst, parts.filter(|&m| self.leq(m, q)))
    }

    pub fn weakly_semi_simple_violation(&self) -> Check {
        self.need_inv()?;
        for (x, y) in self.pairs() {
            let mut comps: Vec<Morphism> = self.simple_composites(x, y).into_iter().map(|t| t.0).collect();
            comps.sort();
            comps.dedup();
            for q in self.morphisms(x, y) {
                let best = self.join(x, y, comps.iter().copied().filter(|&m| self.leq(m, q)));
                if best != q {
                    return Ok(Some(Violation::NotWeaklySemiSimple { q, best }));
                }
            }
        }
        Ok(None)
    }

    pub fn stably_gelfand_violation(&self) -> Check {
        self.need_inv()?;
        Ok(self.pairs().find_map(|(x, y)| {
            self.morphisms(x, y).find_map(|f| {
                let fff = self.chain(&[f, self.o(f), f]);
                (self.leq(fff, f) && !self.leq(f, fff)).then_some(Violation::NotStablyGelfand { f })
            })
        }))
    }

    /// Both residuation adjunctions over every triple of morphisms.
    pub fn residuation_violation(&self) -> Option<Violation> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in self.morphisms(x, y) {
                        for g in self.morphisms(x, z) {
                            let r = self.left_residual(g, f).expect("common source");
                            if let Some(h) = self.morphisms(y, z).find(|&h| self.leq(self.c(h, f), g) != self.leq(h, r))
                            {
                                return Some(Violation::Residuation { left: true, g, f, h });
                            }
                        }
                    }
                    for f in self.morphisms(y, z) {
                        for g in self.morphisms(x, z) {
                            let r = self.right_residual(f, g).expect("common target");
                            if let Some(h) = self.morphisms(x, y).find(|&h| self.leq(self.c(f, h), g) != self.leq(h, r))
                            {
                                return Some(Violation::Residuation { left: false, g, f, h });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// `f ≤ f f° f` for every `f`.
    pub fn regularity_violation(&self) -> Check {
        self.need_inv()?;
        Ok(self.pairs().find_map(|(x, y)| {
            self.morphisms(x, y)
                .find(|&f| !self.leq(f, self.chain(&[f, self.o(f), f])))
                .map(|f| Violation::NotRegular { f })
        }))
    }

    /// Every left adjoint has its involute as right adjoint.
    pub fn symmetric_left_adjoint_violation(&self) -> Check {
        self.need_inv()?;
        Ok(self.pairs().find_map(|(x, y)| {
            self.left_adjoints(x, y)
                .find(|&f| self.right_adjoint_of(f) != Some(self.o(f)))
                .map(|f| Violation::NotSymmetricLeftAdjoint { f })
        }))
    }

    /// Premises of Cauchy-bilaterality for pairs `(f_i: X -> X_i, g_i: X_i -> X)`.
    pub fn cauchy_premises_hold(&self, family: &[(Morphism, Morphism)]) -> bool {
        let Some(&(f0, _)) = family.first() else {
            return false;
        };
        let x = f0.src;
        let typed = family.iter().all(|(f, g)| f.src == x && g.dst == x && f.dst == g.src);
        if !typed {
            return false;
        }
        let pairwise = family.iter().all(|&(fj, gj)| {
            family
                .iter()
                .all(|&(fk, gk)| self.leq(self.chain(&[fj, gj, fk]), fk) && self.leq(self.chain(&[gk, fj, gj]), gk))
        });
        let cover = self.join(x, x, family.iter().map(|&(f, g)| self.c(g, f)));
        pairwise && self.leq(self.id(x), cover)
    }

    /// `1 ≤ ⋁ (g_i ∧ f_i°)(g_i° ∧ f_i)`.
    pub fn cauchy_conclusion_holds(&self, family: &[(Morphism, Morphism)]) -> bool {
        let Some(&(f0, _)) = family.first() else {
            return false;
        };
        let x = f0.src;
        let parts = family.iter().map(|&(f, g)| self.c(self.meet2(g, self.o(f)), self.meet2(self.o(g), f)));
        self.leq(self.id(x), self.join(x, x, parts))
    }

    /// Searches inclusion-minimal compatible families covering `1_X`.
    pub fn cauchy_bilateral_violation(&self, cfg: &CauchyBilateralConfig) -> Check {
        self.need_inv()?;
        for x in self.objects() {
            if self.leq(self.id(x), self.bottom(x, x)) {
                continue;
            }
            let mut cands: Vec<(Morphism, Morphism, Morphism)> = Vec::new();
            for y in self.objects() {
                for f in self.morphisms(x, y) {
                    for g in self.morphisms(y, x) {
                        let gf = self.c(g, f);
                        if gf == self.bottom(x, x) {
                            continue;
                        }
                        if self.leq(self.chain(&[f, g, f]), f) && self.leq(self.chain(&[g, f, g]), g) {
                            cands.push((f, g, gf));
                        }
                    }
                }
            }
            let k = cands.len();
            let compat: Vec<BitSet> = (0..k)
                .map(|i| {
                    BitSet::from_indices(
                        k,
                        (0..k).filter(|&j| {
                            let ((fi, gi, _), (fj, gj, _)) = (cands[i], cands[j]);
                            self.leq(self.chain(&[fi, gi, fj]), fj)
                                && self.leq(self.chain(&[fj, gj, fi]), fi)
                                && self.leq(self.chain(&[gj, fi, gi]), gj)
                                && self.leq(self.chain(&[gi, fj, gj]), gi)
                        }),
                    )
                })
                .collect();
            let mut search = CliqueSearch {
                q: self,
                x,
                cands: &cands,
                compat: &compat,
                clique: Vec::new(),
                nodes: 0,
                cap: cfg.max_nodes,
            };
            let allowed = BitSet::full(k);
            if let Some(v) = search.run(0, self.bottom(x, x), &allowed)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    pub fn closed_crible_violation(&self) -> Option<Violation> {
        self.locally_localic_violation()
            .or_else(|| self.map_discrete_violation())
            .or_else(|| self.weakly_tabular_violation())
            .or_else(|| self.weakly_modular_violation())
    }

    /// Closed-crible axioms: locally localic, map-discrete, weakly tabular, weakly modular.
    pub fn is_closed_crible(&self) -> bool {
        self.closed_crible_violation().is_none()
    }

    /// Modular, locally localic and weakly semi-simple; first failure reported.
    pub fn grothendieck_violation(&self) -> Check {
        if let Some(v) = self.modular_violation()? {
            return Ok(Some(v));
        }
        if let Some(v) = self.locally_localic_violation() {
            return Ok(Some(v));
        }
        self.weakly_semi_simple_violation()
    }

    pub fn is_grothendieck(&self) -> Result<bool> {
        Ok(self.grothendieck_violation()?.is_none())
    }

    /// Evaluates the decidable statements of the characterisation independently.
    pub fn grothendieck_statements(&self) -> Result<GrothendieckStatements> {
        let split = ssi(self)?;
        let s = &split.quantaloid;
        Ok(GrothendieckStatements {
            modular: self.modular_violation()?,
            locally_localic: self.locally_localic_violation(),
            weakly_semi_simple: self.weakly_semi_simple_violation()?,
            ssi_weakly_tabular: s.weakly_tabular_violation(),
            ssi_closed_crible: s.closed_crible_violation(),
        })
    }

    /// One-object criterion: locale hom, modular, and `⊤ = ⋁{f g° : f, g simple}`.
    pub fn grothendieck_via_top_violation(&self) -> Check {
        self.need_inv()?;
        if self.n() != 1 {
            return Err(Error::NotApplicable("the top criterion needs exactly one object".into()));
        }
        if let Some(v) = self.locally_localic_violation() {
            return Ok(Some(v));
        }
        if let Some(v) = self.modular_violation()? {
            return Ok(Some(v));
        }
        let top = self.top(0, 0);
        let best = self.weak_semi_simplification(top);
        Ok((best != top).then_some(Violation::TopNotWeaklySemiSimple { best }))
    }

    pub fn is_grothendieck_quantale_via_top(&self) -> Result<bool> {
        Ok(self.grothendieck_via_top_violation()?.is_none())
    }

    /// Runs one named predicate.
    pub fn check(&self, p: PredicateSuite, cfg: &CauchyBilateralConfig) -> Check {
        match p {
            PredicateSuite::LocallyLocalic => Ok(self.locally_localic_violation()),
            PredicateSuite::MapDiscrete => Ok(self.map_discrete_violation()),
            PredicateSuite::WeaklyTabular => Ok(self.weakly_tabular_violation()),
            PredicateSuite::MapTabular => Ok(self.map_tabular_violation()),
            PredicateSuite::WeaklyModular => Ok(self.weakly_modular_violation()),
            PredicateSuite::Tabular => self.tabular_violation(),
            PredicateSuite::Modular => self.modular_violation(),
            PredicateSuite::Simple => self.simple_violation(),
            PredicateSuite::SemiSimple => self.semi_simple_violation(),
            PredicateSuite::WeaklySemiSimple => self.weakly_semi_simple_violation(),
            PredicateSuite::StablyGelfand => self.stably_gelfand_violation(),
            PredicateSuite::CauchyBilateral => self.cauchy_bilateral_violation(cfg),
            PredicateSuite::ClosedCrible => Ok(self.closed_crible_violation()),
            PredicateSuite::Grothendieck => self.grothendieck_violation(),
            PredicateSuite::GrothendieckViaTop => self.grothendieck_via_top_violation(),
        }
    }
}

struct CliqueSearch<'a> {
    q: &'a FiniteQuantaloid,
    x: Obj,
    cands: &'a [(Morphism, Morphism, Morphism)],
    compat: &'a [BitSet],
    clique: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl CliqueSearch<'_> {
    fn family(&self) -> Vec<(Morphism, Morphism)> {
        self.clique.iter().map(|&i| (self.cands[i].0, self.cands[i].1)).collect()
    }

    fn run(&mut self, start: usize, cover: Morphism, allowed: &BitSet) -> Check {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::ResourceCap { what: "searching Cauchy-bilateral families", cap: self.cap });
        }
        let q = self.q;
        let id = q.id(self.x);
        if q.leq(id, cover) {
            let fam = self.family();
            return Ok((!q.cauchy_conclusion_holds(&fam)).then_some(Violation::NotCauchyBilateral { family: fam }));
        }
        let reachable =
            q.join2(cover, q.join(self.x, self.x, allowed.iter().filter(|&i| i >= start).map(|i| self.cands[i].2)));
        if !q.leq(id, reachable) {
            return Ok(None);
        }
        let idx: Vec<usize> = allowed.iter().filter(|&i| i >= start).collect();
        for i in idx {
            let gf = self.cands[i].2;
            if q.leq(gf, cover) {
                continue;
            }
            let mut next = allowed.clone();
            next.intersect_with(&self.compat[i]);
            self.clique.push(i);
            let r = self.run(i + 1, q.join2(cover, gf), &next);
            self.clique.pop();
            if let Some(v) = r? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn locale_predicates() {
        let q = corpus::chain_locale(3);
        assert!(q.is_modular().unwrap());
        assert!(q.is_locally_localic());
        let v = q.weakly_tabular_violation().expect("m is not weakly tabular");
        assert!(v.replay(&q));
        assert!(corpus::boolean().weakly_tabular_violation().is_none());
        assert!(q.is_grothendieck().unwrap());
        assert!(q.is_grothendieck_quantale_via_top().unwrap());
    }

    #[test]
    fn relation_quantale_predicates() {
        let q = corpus::relation_quantale(2);
        assert!(q.is_modular().unwrap());
        assert!(q.weakly_semi_simple_violation().unwrap().is_none());
        assert!(q.cauchy_bilateral_violation(&CauchyBilateralConfig::default()).unwrap().is_none());
        assert!(q.is_grothendieck().unwrap());
    }

    #[test]
    fn z2_predicates() {
        let q = corpus::z2();
        assert!(q.stably_gelfand_violation().unwrap().is_none());
        assert!(q.is_modular().unwrap());
        assert!(q.is_grothendieck().unwrap());
        assert!(q.is_grothendieck_quantale_via_top().unwrap());
    }

    #[test]
    fn truncated_addition_is_not_modular() {
        let q = corpus::trunc3();
        let v = q.modular_violation().unwrap().expect("modular law fails");
        assert!(v.replay(&q));
        assert!(!q.is_grothendieck().unwrap());
        assert!(!q.is_grothendieck_quantale_via_top().unwrap());
    }

    #[test]
    fn m3_quantale_fails_top_criterion() {
        let q = corpus::m3_quantale();
        assert!(matches!(q.grothendieck_via_top_violation().unwrap(), Some(Violation::NotLocale { .. })));
    }

    #[test]
    fn involution_required() {
        let q = corpus::chain_locale(3).without_involution();
        assert_eq!(q.modular_violation(), Err(Error::MissingInvolution));
        assert!(q.is_locally_localic());
    }

    #[test]
    fn empty_quantaloid_is_vacuous() {
        let q = FiniteQuantaloid::empty();
        let cfg = CauchyBilateralConfig::default();
        for p in PredicateSuite::ALL {
            if p == PredicateSuite::GrothendieckViaTop {
                continue;
            }
            assert_eq!(q.check(p, &cfg), Ok(None), "{}", p.name());
        }
    }

    #[test]
    fn predicate_names_round_trip() {
        for p in PredicateSuite::ALL {
            assert_eq!(PredicateSuite::from_name(p.name()), Some(p));
        }
    }

    #[test]
    fn residuation_holds_on_the_corpus_and_fails_on_a_mutant() {
        for name in crate::corpus::QUANTALOID_NAMES {
            let q = crate::corpus::quantaloid_by_name(name).unwrap();
            assert_eq!(q.residuation_violation(), None, "{name}");
        }
        // make {a}∘{a} = ∅ in the powerset locale: composition is no longer monotone
        let q = crate::corpus::powerset_locale();
        let (objects, homs, mut comp, ids, inv) = q.clone().into_parts();
        let a = homs[0].resolve("{a}").unwrap();
        comp[0][a * homs[0].len() + a] = homs[0].bottom() as u32;
        let m = FiniteQuantaloid::from_parts_unchecked(objects, homs, comp, ids, inv).unwrap();
        let v = m.residuation_violation().expect("mutant breaks residuation");
        assert!(v.replay(&m));
        assert!(!v.replay(&q));
    }
}
