//! Crossed modules of groupoids, the 2-groupoids they correspond to,
//! homotopy pullbacks, homotopy groups and nerves.

mod beta;
mod crossed;
mod dakin;
mod homotopy;
mod pullback;

pub use beta::{
    beta, beta_inverse, beta_on_morphism, roundtrip_two_groupoid, roundtrip_xmod, two_groupoid_violations, TwoGroupoid,
};
pub use crossed::{CrossedModule, XmodMorphism};
pub use dakin::{compare_nerves, compare_nerves_with_limits, xmod_nerve, xmod_nerve_with_limits, NerveComparison, XmodNerve};
pub use homotopy::{
    endo_groupoid, induced_pi, mv_check, pi, weak_equivalence, EndoGroupoid, HomotopyProfile, InducedPi, Joint, MvReport,
    Pi1, Pi2, WeakEquivalence,
};
pub use pullback::{
    fibration_conditions, fibration_xmod, homotopy_pullback_xmod, homotopy_pullback_xmod_with_limits, pullback_xmod,
    pullback_xmod_with_limits, FibrationConditions, HomotopyPullback, StrictPullback,
};
