//! Universal constructions and example generators.

mod generators;

pub use generators::{groupoid_quantale, locale_quantale, FiniteGroupoid};
mod morita;
pub use morita::{morita_quantale, MoritaQuantale};
mod projection;
pub use projection::{category_to_projection, normalize, projection_matrices, projection_to_category, Normalized};
mod sheaves;
pub use sheaves::{
    distributor_quantaloid, enumerate_sheaves, morita_equivalence, CensusConfig, MoritaVerdict, SheafCensus, SheafMode,
};
