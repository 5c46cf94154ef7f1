use std::sync::Arc;

use hofib_core::algebra::FiniteGroup;
use hofib_core::bicat::Direction;
use hofib_core::comma::comma;
use hofib_core::instances::*;
use hofib_core::monoidal::*;

fn same_as_comma(f: &MonoidalFunctor, g: &MonoidalFunctor) {
    let fib = monoidal_fibre(f, g).unwrap();
    let c = comma(&f.sigma(Direction::Lax).unwrap(), &g.sigma(Direction::Oplax).unwrap()).unwrap();
    assert_eq!(*fib.bicat, *c.bicat, "{} vs {}", f.name, g.name);
}

#[test]
fn standard_monoidal_categories_validate() {
    for m in [cyclic_monoidal(2), cyclic_monoidal(3), m_omega(), m_max(), m_min(), truncated_nat(3)] {
        let r = m.validate();
        assert!(r.is_valid(), "{}: {:?}", m.name, r.violations);
        assert!(m.delooping().validate().is_valid());
        // ΣM(*,*) = M
        let d = m.delooping();
        let hom = d.hom_category(hofib_core::bicat::Obj(0), hofib_core::bicat::Obj(0));
        assert_eq!(hom.objects(), m.category.objects());
        assert_eq!(hom.morphism_count(), m.category.morphism_count());
    }
}

#[test]
fn theta_functor_is_monoidal() {
    let r = m_omega_theta().validate();
    assert!(r.is_valid(), "{:?}", r.violations);
}

#[test]
fn fibre_equals_comma_of_deloopings() {
    let z2 = cyclic_monoidal(2);
    let id2 = MonoidalFunctor::identity(z2.clone());
    same_as_comma(&id2, &id2);
    let th = m_omega_theta();
    same_as_comma(&th, &th);
    let idw = MonoidalFunctor::identity(m_omega());
    same_as_comma(&th, &idw);
    same_as_comma(&th, &unit_functor(m_omega()).unwrap());
    let mx = MonoidalFunctor::identity(m_max());
    same_as_comma(&mx, &unit_functor(m_max()).unwrap());
    let s3 = group_monoidal("S3", &FiniteGroup::symmetric3());
    same_as_comma(&MonoidalFunctor::identity(s3.clone()), &MonoidalFunctor::identity(s3));
}

#[test]
fn group_fibre_has_expected_one_cells() {
    let z3 = cyclic_monoidal(3);
    let id = MonoidalFunctor::identity(z3.clone());
    let fib = monoidal_fibre(&id, &id).unwrap();
    assert_eq!(fib.bicat.obj_count(), 3);
    // (n, n′) with n′·m₀ = m₁·n: for each (m₀, m₁, n) exactly one n′
    assert_eq!(fib.bicat.c1_count(), 27);
}

#[test]
fn translations() {
    for m in [cyclic_monoidal(3), m_omega(), m_max()] {
        let id = MonoidalFunctor::identity(m.clone());
        for x in 0..m.object_count() {
            for side in [Side::Left, Side::Right] {
                let (fib, t) = tensor_translation(&id, x, side).unwrap();
                assert!(t.validate().is_valid(), "{} {x} {side:?}", m.name);
                for o in fib.bicat.objs() {
                    let want = match side {
                        Side::Left => m.t(x, fib.objects[o.idx()]),
                        Side::Right => m.t(fib.objects[o.idx()], x),
                    };
                    assert_eq!(t.ob(o).idx(), want);
                }
            }
        }
    }
    // discrete groups: bijective on every cell set
    let z3 = cyclic_monoidal(3);
    let (_, t) = tensor_translation(&MonoidalFunctor::identity(z3), 1, Side::Left).unwrap();
    let mut m1: Vec<_> = t.map1.clone();
    m1.sort();
    m1.dedup();
    assert_eq!(m1.len(), t.map1.len());
}

#[test]
fn regularity() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()] {
        let m = group_monoidal("G", &g);
        let r = regularity_check(&m);
        assert!(r.regular && r.categorical_group, "{:?}", r.witnesses);
    }
    let r = regularity_check(&truncated_nat(2));
    assert!(!r.regular);
    let r = regularity_check(&cyclic_monoidal(1));
    assert!(r.regular && r.categorical_group);
    assert!(regularity_check(&m_omega()).categorical_group);
    assert!(!regularity_check(&m_max()).regular);
    let _ = Arc::new(());
}
