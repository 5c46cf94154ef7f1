//! Finite monoidal categories, their deloopings `ΣM`, the fibre
//! bicategories `F↓⊗F′` of monoidal functors, tensor translations and
//! regularity.

mod category;
mod fibre;
mod regularity;

pub use category::{MonoidalCategory, MonoidalFunctor};
pub(crate) use category::cocycle_monoidal;
pub use fibre::{monoidal_fibre, monoidal_fibre_with_limits, tensor_translation, unit_functor, MonoidalFibre, Side};
pub use regularity::{regularity_check, Regularity};
