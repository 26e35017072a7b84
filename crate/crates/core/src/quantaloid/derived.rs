use alloc::format;
use alloc::vec::Vec;

use super::{FiniteQuantaloid, Span};
use crate::error::{Error, Result};

impl FiniteQuantaloid {
    /// Involution forced by the closed-crible axioms:
    /// `q° = ⋁{g f* | (g, f) span of left adjoints with f g* ≤ q}`.
    ///
    /// Returns the table in the layout of [`FiniteQuantaloid::with_involution_table`].
    pub fn derived_involution_table(&self) -> Result<Vec<Vec<usize>>> {
        if let Some(v) = self.closed_crible_violation() {
            return Err(Error::NotApplicable(format!("closed-crible axioms fail: {}", v.describe(self))));
        }
        let n = self.n();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let spans = self.spans(x, y);
                let row = self
                    .hom(x, y)
                    .elements()
                    .map(|e| {
                        let q = super::Morphism::new(x, y, e);
                        let parts = spans
                            .iter()
                            .filter(|s| self.leq(self.span_composite(s), q))
                            .map(|s| self.span_composite(&Span { left: s.right, right: s.left }));
                        self.join(y, x, parts).elt
                    })
                    .collect();
                table.push(row);
            }
        }
        Ok(table)
    }

    /// A copy of `self` carrying the derived involution, checked to be an
    /// involution that makes the quantaloid modular.
    pub fn with_derived_involution(&self) -> Result<FiniteQuantaloid> {
        let table = self.derived_involution_table()?;
        let q = self
            .clone()
            .without_involution()
            .with_involution_table(table)
            .map_err(|e| Error::InternalConsistency(format!("derived involution: {e}")))?;
        if let Some(v) = q.modular_violation()? {
            return Err(Error::InternalConsistency(format!("derived involution not modular: {}", v.describe(&q))));
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use crate::corpus;
    use crate::error::Error;
    use crate::quantaloid::FiniteQuantaloid;

    #[test]
    fn matches_existing_involutions() {
        for name in ["boolean", "rel2", "z2-groupoid", "site2chain", "locale3-site"] {
            let q = corpus::quantaloid_by_name(name).unwrap();
            let derived = q.derived_involution_table().unwrap();
            assert_eq!(Some(derived.as_slice()), q.involution_table(), "{name}");
        }
    }

    #[test]
    fn trivial_homs_give_identity() {
        let q = FiniteQuantaloid::trivial().without_involution();
        let d = q.with_derived_involution().unwrap();
        assert_eq!(d.o(d.id(0)), d.id(0));
    }

    #[test]
    fn not_applicable_without_axioms() {
        // the 3-chain locale is not weakly tabular
        let q = corpus::chain_locale(3);
        assert!(matches!(q.derived_involution_table(), Err(Error::NotApplicable(_))));
    }
}
