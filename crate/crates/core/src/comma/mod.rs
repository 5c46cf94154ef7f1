//! The homotopy-fibre product bicategory `F↓F′` of a lax functor `F` and an
//! oplax functor `F′` with a common target, and the constructions built on
//! it: fibres over objects, translation 2-functors, the two pullback
//! squares, the inclusions `J`, `J′`, the lax/lax variant `F↓₂G`, and the
//! sufficient test for property B.

mod construction;
mod fibres;
mod lifts;
mod lax2;

pub use construction::{comma, comma_with_limits, comparison_transformation, Comma};
pub(crate) use construction::{c1_label, c2_label};
pub use fibres::{
    composite_translation_comparison, fibre, fibre_under, hom_isomorphism, inclusion_j, inclusion_j_prime,
    property_b_witness, translate_lower, translate_upper, HomIsomorphism, PropertyB, Translation, TranslationComparison,
};
pub use lax2::{comma2, swap_isomorphism, Comma2};
pub use lifts::{bar_lift, bar_lift_prime, mediating, mediating_uniqueness, square_checks};
