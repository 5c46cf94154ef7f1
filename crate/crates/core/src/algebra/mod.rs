//! Finite groups, categories, groupoids, graphs and P-groups.

mod category;
mod group;
mod groupoid;
mod pgroup;

pub(crate) use category::dup_labels as category_dup_labels;
pub(crate) use category::is_bijection;
pub use category::{
    free_category, free_category_with_paths, CategoryBuilder, FiniteCategory, FiniteGraph, Functor, Morphism,
};
pub use group::{is_homomorphism, is_isomorphism, FiniteGroup, Quotient};
pub use groupoid::{groupoid_fibration, pullback_groupoid, FiniteGroupoid, GroupoidFunctor, Pullback};
pub use pgroup::PGroup;
