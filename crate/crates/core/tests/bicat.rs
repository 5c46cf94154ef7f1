use std::sync::Arc;

use hofib_core::algebra::{FiniteCategory, FiniteGroupoid};
use hofib_core::bicat::{discrete_bicategory, terminal_bicategory, Direction, LaxMorphism, Obj, C1};
use hofib_core::instances::*;

#[test]
fn small_bicategories_validate() {
    for b in [
        terminal_bicategory(),
        ordinal_bicategory(1),
        ordinal_bicategory(2),
        indiscrete_bicategory(2),
        cyclic_delooping(2),
        cyclic_delooping(3),
        m_omega().delooping(),
        m_max().delooping(),
        m_min().delooping(),
    ] {
        let r = b.validate();
        assert!(r.is_valid(), "{}: {:?}", b.name(), r.violations);
    }
}

#[test]
fn ordinal_two_has_six_cells() {
    let b = ordinal_bicategory(2);
    assert_eq!(b.c1_count(), 6);
    assert_eq!(b.c2_count(), 6);
    assert!(b.is_locally_discrete());
}

#[test]
fn groupoid_gives_bigroupoid() {
    let g = FiniteGroupoid::indiscrete("I3", &["a", "b", "c"]);
    let b = discrete_bicategory(&g).unwrap();
    assert!(b.is_bigroupoid());
}

#[test]
fn corrupted_associator_breaks_pentagon() {
    let b = m_omega().delooping();
    let mut bld = b.to_builder();
    // a_{1,1,0} becomes the non-identity automorphism of 1⊗1⊗0 = 0, so the
    // associator is no longer a cocycle
    let (zero, one) = (b.find_c1("0").unwrap(), b.find_c1("1").unwrap());
    bld.set_assoc(one, one, zero, b.find_c2("0:1").unwrap());
    let bad = bld.build().unwrap();
    let r = bad.validate();
    assert!(r.has_axiom("pentagon"), "{:?}", r.violations);
    let v = r.violations.iter().find(|v| v.axiom == "pentagon").unwrap();
    assert!(v.instance.starts_with('('), "witness names the quadruple: {}", v.instance);
}

#[test]
fn object_homomorphism_in_delooping_is_identity_cell() {
    let b = cyclic_delooping(2);
    let h = LaxMorphism::object_homomorphism(b.clone(), Obj(0), Direction::Lax).unwrap();
    assert!(h.validate().is_valid());
    assert!(b.is_id2(h.comp_cell(C1(0), C1(0))));
    let o = LaxMorphism::object_homomorphism(b, Obj(0), Direction::Oplax).unwrap();
    assert!(o.validate().is_valid());
}

#[test]
fn object_homomorphism_in_non_strict_delooping() {
    let b = m_omega().delooping();
    for d in [Direction::Lax, Direction::Oplax] {
        let h = LaxMorphism::object_homomorphism(b.clone(), Obj(0), d).unwrap();
        let r = h.validate();
        assert!(r.is_valid(), "{:?}", r.violations);
    }
}

#[test]
fn compose_lax_unital_and_associative() {
    let f = m_omega_theta();
    let s = f.sigma(Direction::Lax).unwrap();
    assert!(s.validate().is_valid(), "{:?}", s.validate().violations);
    let id = LaxMorphism::identity(s.source.clone(), Direction::Lax);
    assert!(id.then(&s).unwrap().table_eq(&s));
    assert!(s.then(&LaxMorphism::identity(s.target.clone(), Direction::Lax)).unwrap().table_eq(&s));
    let ss = s.then(&s).unwrap();
    assert!(ss.validate().is_valid());
    let l = ss.then(&s).unwrap();
    let r = s.then(&ss).unwrap();
    assert!(l.table_eq(&r));
    assert!(ss.is_pseudo());
}

#[test]
fn oplax_structure_checked_through_co_dual() {
    let s = m_omega_theta().sigma(Direction::Oplax).unwrap();
    let r = s.validate();
    assert!(r.is_valid(), "{:?}", r.violations);
}

#[test]
fn monotone_map_composed_with_lax_simplex() {
    // a: [1] → [2] picking 0 < 2, then the lax functor [2] → Σ(M_ω)
    let p2 = Arc::new(discrete_bicategory(&FiniteCategory::ordinal(2)).unwrap());
    let p1 = ordinal_bicategory(1);
    let c2 = FiniteCategory::ordinal(2);
    let c1 = FiniteCategory::ordinal(1);
    let mut map1 = Vec::new();
    for m in c1.morphisms() {
        let (s, d) = (if m.src == 0 { 0 } else { 2 }, if m.dst == 0 { 0 } else { 2 });
        map1.push(C1::from(c2.ordinal_arrow(s, d)));
    }
    let map2 = map1.iter().map(|&f| p2.id2(f)).collect();
    let a = LaxMorphism::strict("a", p1, p2.clone(), vec![Obj(0), Obj(2)], map1, map2, Direction::Lax).unwrap();
    assert!(a.validate().is_valid());
    let id = LaxMorphism::identity(p2, Direction::Lax);
    assert!(a.then(&id).unwrap().table_eq(&a));
}
