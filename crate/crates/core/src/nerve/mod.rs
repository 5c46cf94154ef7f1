//! Simplicial sets, the geometric nerves of a bicategory and its
//! Grothendieck nerve.

mod adjunction;
mod geometric;
mod grothendieck;
mod lax_search;
mod sset;

pub use adjunction::{
    graph_adjunction, graph_adjunction_with_limits, icon_category, jr_bijection, nerve_projection, nerve_projection_report, GraphAdjunction,
    GraphAdjunctionData, GraphMap, IconCategory, NerveProjection,
};
pub use geometric::{geometric_nerve, geometric_nerve_in, geometric_nerve_with_limits, nerve_inclusion, nerve_map, GeometricNerve, NerveVariant, OrdinalSpaces};
pub use grothendieck::{
    grothendieck_nerve, grothendieck_nerve_with_limits, j_simplex, nerve_composite_violations, nerve_identity_violations, nerve_of_lax,
    nerve_of_lax_with_limits, nu, or_comp1, or_comp2, GrothendieckNerve, NerMorphism, NerObject, NerveOfLax,
};
pub use lax_search::{LaxFunctorData, LaxFunctorSpace};
pub use sset::{
    category_nerve, category_nerve_with_limits, codegeneracy, coface, compare_simplicial, compose_monotone, kan_check, kan_check_with_limits,
    monotone_maps, pair_count, pair_index, simplicial_map_violations, triple_count, triple_index, validate_simplicial, KanReport, Simplex,
    TruncatedSimplicialSet,
};
