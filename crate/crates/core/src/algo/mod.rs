//! Test(X, G), isomorphism listing, majorants, schurity recognition and the
//! tournament pipeline.

pub mod iso;
pub mod majorant;
pub mod pipeline;
pub mod schurity;
pub mod tournament;

pub use iso::{
    automorphisms_by_listing, find_isomorphism, group_from_elements, list_isomorphisms,
    test_config_group, TestWitness,
};
pub use majorant::{build_majorant, wreath_embedding, Majorant, MajorantOutcome, WreathEmbedding};
pub use pipeline::{tournament_pipeline, IsoReport, TournamentReport};
pub use schurity::{recognize_schurity, recognize_schurity_with_budget, Rejection, Schurity};
pub use tournament::Tournament;

pub(crate) fn order_as_string<S: serde::Serializer>(
    order: &num_bigint::BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&order.to_string())
}
