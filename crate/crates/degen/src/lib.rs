//! One-parameter flat families from valued generating sets: the weighting
//! functional is chosen by an exact LP, the family generators acquire
//! t-exponents from the value gaps, and the fibers, per-face subfamilies,
//! and torus moment map are all computed from the same data.

mod builtins;
mod family;
mod moment;
mod poly;

pub use builtins::{builtin, BuiltinExample, BUILTIN_NAMES};
pub use family::{
    c_image_cone, choose_e, dropped_generators_vanish, fiber, initial_ideal_summary,
    monomial_value, rees_family, subfamily_ideal, validate_relations, FamilyIdeal,
    GeneratorSummary, InitialIdealSummary, Relation, Subfamily,
};
pub use moment::{moment_map_psi, MomentImage};
pub use poly::Poly;

#[derive(Debug, thiserror::Error)]
pub enum DegenError {
    #[error("the valued relations admit no weighting functional: not refinable")]
    NotRefinable,
    #[error("malformed relation: {0}")]
    BadRelation(String),
    #[error("functional violates the family constraints: {0}")]
    InvalidFunctional(String),
    #[error("initial-term integrity violated: {0}")]
    Integrity(String),
    #[error("not a face of the weight image cone")]
    NotAFace,
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("malformed data: {0}")]
    BadData(String),
}
