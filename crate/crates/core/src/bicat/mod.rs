//! Finite bicategories, lax and oplax morphisms, lax transformations and icons.

mod bicategory;
mod discrete;
mod equivalence;
mod lax;
mod transformation;

pub use bicategory::{BicategoryBuilder, Cell1, Cell2, FiniteBicategory, Obj, C1, C2};
pub use discrete::{discrete_bicategory, discrete_functor, terminal_bicategory};
pub use equivalence::{biequivalence_failures, check_isomorphism, label_isomorphism, BicategoryMap};
pub use lax::{Claims, Direction, LaxMorphism};
pub(crate) use lax::same_bicategory;
pub use transformation::{Icon, LaxTransformation};
