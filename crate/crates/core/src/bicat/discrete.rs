use std::sync::{Arc, OnceLock};

use super::bicategory::{BicategoryBuilder, FiniteBicategory, Obj, C1, C2};
use super::lax::{Direction, LaxMorphism};
use crate::algebra::{FiniteCategory, Functor};
use crate::error::Result;

/// A category viewed as a bicategory whose only 2-cells are identities.
/// The identity 2-cell on `f` is labelled `1_f`.
pub fn discrete_bicategory(c: &FiniteCategory) -> Result<FiniteBicategory> {
    let mut b = BicategoryBuilder::new(c.name());
    for o in c.objects() {
        b.object(o.clone());
    }
    for m in c.morphisms() {
        b.cell1(m.label.clone(), Obj::from(m.src), Obj::from(m.dst));
    }
    for (i, m) in c.morphisms().iter().enumerate() {
        let a = b.cell2(format!("1_{}", m.label), C1::from(i), C1::from(i));
        b.set_id2(C1::from(i), a);
        b.set_vcomp(a, a, a);
        b.set_lunit(C1::from(i), a);
        b.set_runit(C1::from(i), a);
    }
    for o in 0..c.object_count() {
        b.set_id1(Obj::from(o), C1::from(c.id(o)));
    }
    let as2 = |f: usize| C2::from(f);
    for (&(g, f), &gf) in c.composition_table() {
        b.set_hcomp1(C1::from(g), C1::from(f), C1::from(gf));
        b.set_hcomp2(as2(g), as2(f), as2(gf));
    }
    for f in 0..c.morphism_count() {
        for &g in c.out(c.dst(f)) {
            for &h in c.out(c.dst(g)) {
                let hgf = c.comp(h, c.comp(g, f));
                b.set_assoc(C1::from(h), C1::from(g), C1::from(f), as2(hgf));
            }
        }
    }
    // the tables above assume the category axioms; if they fail, the
    // identities written here are ill-typed and the build reports it
    b.build()
}

/// The terminal bicategory `[0]`, shared.
pub fn terminal_bicategory() -> Arc<FiniteBicategory> {
    static T: OnceLock<Arc<FiniteBicategory>> = OnceLock::new();
    T.get_or_init(|| Arc::new(discrete_bicategory(&FiniteCategory::terminal()).unwrap())).clone()
}

/// A functor between categories as a strict 2-functor between their
/// discrete bicategories.
pub fn discrete_functor(
    f: &Functor,
    source: Arc<FiniteBicategory>,
    target: Arc<FiniteBicategory>,
    direction: Direction,
) -> Result<LaxMorphism> {
    LaxMorphism::strict(
        format!("{}->{}", f.source.name(), f.target.name()),
        source,
        target,
        f.obj_map.iter().map(|&o| Obj::from(o)).collect(),
        f.mor_map.iter().map(|&m| C1::from(m)).collect(),
        f.mor_map.iter().map(|&m| C2::from(m)).collect(),
        direction,
    )
}
