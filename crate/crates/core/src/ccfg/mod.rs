//! Coherent configurations: color matrices, axioms, intersection numbers,
//! equivalence relations, restrictions and quotients.

mod config;
mod equiv;
mod matrix;

pub use config::{CoherentConfiguration, StructureFlags};
pub use equiv::{
    equivalence_chain, equivalence_relations, is_equivalence_class, quotient, restriction,
    EquivalenceRelation, Quotient, Restriction,
};
pub use matrix::ColorMatrix;

/// Validates a color matrix as a coherent configuration.
pub fn build_config(m: ColorMatrix) -> crate::error::Result<CoherentConfiguration> {
    CoherentConfiguration::new(m)
}
