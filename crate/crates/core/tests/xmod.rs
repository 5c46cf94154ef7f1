use std::sync::Arc;

use hofib_core::algebra::{FiniteGroup, FiniteGroupoid, PGroup};
use hofib_core::bicat::{discrete_bicategory, LaxMorphism};
use hofib_core::instances::*;
use hofib_core::xmod::*;

#[test]
fn corpus_crossed_modules_are_valid() {
    for x in xmod_corpus().into_iter().chain([xm_s3_conjugation(), xm_cyclic_conjugation(4)]) {
        let r = x.validate();
        assert!(r.is_valid(), "{}: {:?}", x.name, r.violations);
    }
}

#[test]
fn non_abelian_over_a_point_breaks_peiffer() {
    let x = CrossedModule::abelian("S3", &FiniteGroup::symmetric3());
    let r = x.validate();
    assert!(r.has_axiom("peiffer"));
    assert!(r.has_axiom("kernel-central"));
}

#[test]
fn corrupted_action_is_reported() {
    let x = xm_s3_conjugation();
    let mut group: PGroup = x.group.clone();
    // let a transposition act trivially: no longer a conjugation
    let t = group.fibers[0].find("102").unwrap();
    group.action[t] = group.fibers[0].elements().collect();
    let bad = CrossedModule::new("bad", group, x.boundary.clone()).unwrap();
    let r = bad.validate();
    assert!(!r.is_valid());
    assert!(r.has_axiom("boundary-equivariance") || r.has_axiom("peiffer") || r.has_axiom("action-composition"));
}

#[test]
fn beta_shapes() {
    let g = xm_group("Z3", &FiniteGroup::cyclic(3));
    let b = beta(&g).unwrap();
    assert_eq!((b.obj_count(), b.c1_count(), b.c2_count()), (1, 3, 3));
    assert!(b.c2s().all(|a| b.is_id2(a)));

    let a = xm_abelian(3);
    let b = beta(&a).unwrap();
    assert_eq!((b.obj_count(), b.c1_count(), b.c2_count()), (1, 1, 3));

    for x in xmod_corpus().into_iter().chain([xm_s3_conjugation()]) {
        let k = beta(&x).unwrap();
        assert!(two_groupoid_violations(&k).is_empty(), "{}", x.name);
        let r = k.validate();
        assert!(r.is_valid(), "{}: {:?}", x.name, &r.violations[..r.violations.len().min(3)]);
    }
}

/// In `β(G, G, id)` the boundary is injective, so a 2-cell is determined by
/// its endpoints: `p ⇒ p̄` is the unique `g` with `∂g = p̄⁻¹p`. Pasting two
/// such cells horizontally must give the one between the composites.
#[test]
fn horizontal_composition_matches_pasting_oracle() {
    let x = xm_s3_conjugation();
    let k = beta(&x).unwrap();
    let g = FiniteGroup::symmetric3();
    let p = x.base();
    let between = |from: usize, to: usize| {
        let e = p.comp(p.inv(to), from);
        let lab = format!("({},{})", g.label(e), p.label(from));
        k.find_c2(&lab).unwrap()
    };
    let mut checked = 0;
    for a1 in k.c2s() {
        for a2 in k.c2s() {
            let got = k.h2(a2, a1).unwrap();
            let (s1, t1) = (k.src2(a1).idx(), k.dst2(a1).idx());
            let (s2, t2) = (k.src2(a2).idx(), k.dst2(a2).idx());
            let want = between(p.comp(s2, s1), p.comp(t2, t1));
            assert_eq!(got, want);
            checked += 1;
        }
    }
    assert_eq!(checked, 36 * 36);
}

#[test]
fn roundtrips_are_isomorphisms() {
    let mut n = 0;
    for x in xmod_corpus().into_iter().chain([xm_s3_conjugation()]) {
        let (_, m, v) = roundtrip_xmod(&x).unwrap();
        assert!(v.is_empty(), "{}: {v:?}", x.name);
        assert!(m.is_isomorphism());
        let k = beta(&x).unwrap();
        let (_, _, v) = roundtrip_two_groupoid(&k).unwrap();
        assert!(v.is_empty(), "{}: {v:?}", x.name);
        n += 1;
    }
    assert!(n >= 4);
}

#[test]
fn discrete_two_groupoid_gives_trivial_fibers() {
    let p = FiniteGroupoid::indiscrete("I3", &["a", "b", "c"]);
    let k = TwoGroupoid::new(Arc::new(discrete_bicategory(&p).unwrap())).unwrap();
    let x = beta_inverse(&k).unwrap();
    assert!(x.validate().is_valid());
    assert!(x.group.fibers.iter().all(|g| g.order() == 1));
    assert_eq!(x.base().morphism_count(), 9);
}

#[test]
fn non_strict_bicategory_is_not_a_two_groupoid() {
    let m = m_omega().delooping();
    assert!(TwoGroupoid::new(m).is_err());
}

#[test]
fn beta_is_functorial() {
    let (c4, c2) = (xm_cyclic_conjugation(4), xm_cyclic_conjugation(2));
    let q = one_object_morphism("mod2", &c4, &c2, vec![0, 1, 0, 1], vec![0, 1, 0, 1]);
    assert!(q.validate().is_valid());
    let to_point = one_object_morphism("kill", &c2, &xm_group("1", &FiniteGroup::trivial()), vec![0, 0], vec![0, 0]);
    assert!(to_point.validate().is_valid());
    let both = q.then(&to_point).unwrap();
    let b = beta_on_morphism(&both).unwrap();
    let split = beta_on_morphism(&q).unwrap().then(&beta_on_morphism(&to_point).unwrap()).unwrap();
    assert!(b.table_eq(&split));
    let id = beta_on_morphism(&XmodMorphism::identity(c4.clone())).unwrap();
    assert!(id.table_eq(&LaxMorphism::identity(id.source.clone(), id.direction)));
    assert!(b.validate().is_valid());
}

#[test]
fn example_i_homotopy_pullback() {
    let (f, f2) = example_i();
    let h = homotopy_pullback_xmod(&f, &f2).unwrap();
    assert!(h.xmod.validate().is_valid());
    assert!(h.proj.validate().is_valid() && h.proj_prime.validate().is_valid());
    let q = f.target.base();
    // oracle: objects q ∈ Q, morphisms (p, p′) with q₁·Fp = F′p′·q₀
    let (p, p2) = (f.source.base(), f2.source.base());
    let mut expected = 0;
    for q0 in 0..q.morphism_count() {
        for u in 0..p.morphism_count() {
            for u2 in 0..p2.morphism_count() {
                for q1 in 0..q.morphism_count() {
                    if q.comp(q1, f.mor(u)) == q.comp(f2.mor(u2), q0) {
                        expected += 1;
                    }
                }
            }
        }
    }
    assert_eq!(h.xmod.base().object_count(), q.morphism_count());
    assert_eq!(h.xmod.base().morphism_count(), expected);
    assert!(h.xmod.group.fibers.iter().all(|g| g.order() == 1));
}

#[test]
fn example_ii_homotopy_pullback() {
    let (f, f2) = example_ii();
    let h = homotopy_pullback_xmod(&f, &f2).unwrap();
    let x = &h.xmod;
    assert!(x.validate().is_valid());
    assert_eq!(x.base().object_count(), 1);
    assert_eq!(x.base().morphism_count(), 2);
    assert_eq!(x.fiber(0).order(), 4);
    // ∂(a, a′) = φ′a′ − φa in B, as the h-component of (1, h, 1)
    for e in 0..4 {
        let (a, a2) = (e / 2, e % 2);
        let (_, hh, _) = h.morphisms[x.d(0, e)];
        assert_eq!(hh, (a2 + 2 - a) % 2);
    }
    let pr = pi(x).unwrap();
    assert_eq!(pr.orders(0), (1, 1, 2));
}

#[test]
fn homotopy_pullback_morphisms_satisfy_the_square_condition() {
    for (name, f, f2) in xmod_cospans() {
        let h = homotopy_pullback_xmod(&f, &f2).unwrap();
        let r = h.xmod.validate();
        assert!(r.is_valid(), "{name}: {:?}", r.violations);
        let (z, q) = (&f.target, f.target.base());
        let g = h.xmod.base();
        for (i, &(u, hh, u2)) in h.morphisms.iter().enumerate() {
            let (a0, q0, _) = h.objects[g.src(i)];
            let (_, q1, _) = h.objects[g.dst(i)];
            let lhs = z.d(f.ob(a0), hh);
            let rhs = q.comp(q.inv(f.mor(u)), q.comp(q.inv(q1), q.comp(f2.mor(u2), q0)));
            assert_eq!(lhs, rhs, "{name}");
            // (p, h, p′)⁻¹ = (p⁻¹, ^{Fp}h⁻¹, p′⁻¹)
            let hz = z.fiber(f.ob(a0));
            let inv = g.inv(i);
            let (iu, ih, iu2) = h.morphisms[inv];
            let (p, p2) = (f.source.base(), f2.source.base());
            assert_eq!((iu, iu2), (p.inv(u), p2.inv(u2)));
            assert_eq!(ih, z.act(f.mor(u), hz.inv(hh)), "{name}");
        }
    }
}

#[test]
fn homotopy_pullback_of_identities_is_equivalent_to_x() {
    for x in xmod_corpus() {
        let id = XmodMorphism::identity(x.clone());
        let h = homotopy_pullback_xmod(&id, &id).unwrap();
        assert!(h.xmod.validate().is_valid(), "{}", x.name);
        let w = weak_equivalence(&h.proj).unwrap();
        assert!(w.holds, "{}", x.name);
    }
}

#[test]
fn strict_pullback_and_canonical_morphism() {
    let (f, f2) = example_ii();
    let s = pullback_xmod(&f, &f2).unwrap();
    assert_eq!(s.xmod.fiber(0).order(), 2);
    assert_eq!(s.hpb.xmod.fiber(0).order(), 4);
    for (name, f, f2) in xmod_cospans() {
        let s = pullback_xmod(&f, &f2).unwrap();
        assert!(s.xmod.validate().is_valid(), "{name}");
        let r = s.canonical.validate();
        assert!(r.is_valid(), "{name}: {:?}", r.violations);
    }
}

#[test]
fn fibration_predicate() {
    let x = xm_abelian(2);
    assert!(fibration_xmod(&XmodMorphism::identity(x.clone())));
    let c = fibration_conditions(&point_inclusion(&x));
    assert!(c.base_fibration && !c.fibers_surjective);
    let (c4, c2) = (xm_cyclic_conjugation(4), xm_cyclic_conjugation(2));
    let q = one_object_morphism("mod2", &c4, &c2, vec![0, 1, 0, 1], vec![0, 1, 0, 1]);
    assert!(fibration_xmod(&q));
}

#[test]
fn homotopy_groups_of_simple_modules() {
    let g = xm_group("S3", &FiniteGroup::symmetric3());
    let p = pi(&g).unwrap();
    assert_eq!(p.orders(0), (1, 6, 1));
    let a = xm_abelian(3);
    assert_eq!(pi(&a).unwrap().orders(0), (1, 1, 3));
    let i2 = xm_indiscrete2();
    assert_eq!(pi(&i2).unwrap().orders(1), (1, 1, 1));
    let s = xm_s3_conjugation();
    assert_eq!(pi(&s).unwrap().orders(0), (1, 1, 1));
    let z = xm_zero_boundary();
    assert_eq!(pi(&z).unwrap().orders(0), (1, 2, 2));
    let m = xm_mod2();
    assert_eq!(pi(&m).unwrap().orders(0), (1, 1, 2));
}

#[test]
fn canonical_morphism_is_a_weak_equivalence_with_a_fibration_leg() {
    let mut n = 0;
    for (name, f, f2) in xmod_cospans() {
        if !(fibration_xmod(&f) || fibration_xmod(&f2)) {
            continue;
        }
        let s = pullback_xmod(&f, &f2).unwrap();
        let w = weak_equivalence(&s.canonical).unwrap();
        assert!(w.pi0_bijective, "{name}: π₀");
        assert!(w.pi1_iso.iter().all(|&b| b), "{name}: π₁");
        assert!(w.pi2_iso.iter().all(|&b| b), "{name}: π₂");
        assert!(w.holds);
        n += 1;
    }
    assert!(n >= 3);
}

#[test]
fn canonical_morphism_without_fibration_can_fail() {
    let g2 = xm_group("Z2", &FiniteGroup::cyclic(2));
    let i = point_inclusion(&g2);
    assert!(!fibration_xmod(&i));
    let s = pullback_xmod(&i, &i).unwrap();
    let w = weak_equivalence(&s.canonical).unwrap();
    assert!(!w.holds);
    assert!(!w.pi0_bijective);
}

#[test]
fn induced_maps_are_functorial() {
    let (c4, c2) = (xm_cyclic_conjugation(4), xm_cyclic_conjugation(2));
    let q = one_object_morphism("mod2", &c4, &c2, vec![0, 1, 0, 1], vec![0, 1, 0, 1]);
    let m2 = xm_mod2();
    let z2 = xm_abelian(2);
    // (Z2,1,0) → (Z4,Z2,mod2) → (Z2,Z2,0), the first map onto the kernel of ∂
    let inc = one_object_morphism("inc", &z2, &m2, vec![0], vec![0, 2]);
    assert!(inc.validate().is_valid(), "{:?}", inc.validate().violations);
    let col = one_object_morphism("collapse", &m2, &xm_zero_boundary(), vec![0, 0], vec![0, 1, 0, 1]);
    for (f, g) in [(inc.clone(), col.clone())] {
        let fg = f.then(&g).unwrap();
        let (a, b, c) = (induced_pi(&f).unwrap(), induced_pi(&g).unwrap(), induced_pi(&fg).unwrap());
        assert!(a.violations.is_empty() && b.violations.is_empty() && c.violations.is_empty());
        let comp0: Vec<usize> = a.pi0.iter().map(|&i| b.pi0[i]).collect();
        assert_eq!(comp0, c.pi0);
        for o in 0..f.source.base().object_count() {
            let fo = f.ob(o);
            let c1: Vec<usize> = a.pi1[o].iter().map(|&i| b.pi1[fo][i]).collect();
            assert_eq!(c1, c.pi1[o]);
            let c2: Vec<usize> = a.pi2[o].iter().map(|&i| b.pi2[fo][i]).collect();
            assert_eq!(c2, c.pi2[o]);
        }
    }
    let id = induced_pi(&XmodMorphism::identity(c4.clone())).unwrap();
    assert_eq!(id.pi1[0], (0..id.source.pi1[0].group.order()).collect::<Vec<_>>());
    assert!(induced_pi(&q).unwrap().violations.is_empty());
}

#[test]
fn mayer_vietoris_example_ii() {
    let (f, f2) = example_ii();
    let r = mv_check(&f, &f2, 0, 0).unwrap();
    assert!(r.exact(), "{:?}", r.joints);
    // 0 → ℤ/2 → ℤ/2² → ℤ/2 → 0 → …
    let j = &r.joints;
    assert_eq!((j[1].image, j[1].kernel), (2, 2));
    assert_eq!((j[2].image, j[2].kernel), (2, 2));
}

#[test]
fn mayer_vietoris_on_all_cospans() {
    for (name, f, f2) in xmod_cospans() {
        let p = f.source.base();
        let p2 = f2.source.base();
        let mut based = 0;
        for a in 0..p.object_count() {
            for a2 in 0..p2.object_count() {
                if f.ob(a) != f2.ob(a2) {
                    assert!(mv_check(&f, &f2, a, a2).is_err());
                    continue;
                }
                let r = mv_check(&f, &f2, a, a2).unwrap();
                assert!(r.exact(), "{name} at ({a},{a2}): {:?}", r.joints);
                based += 1;
            }
        }
        assert!(based > 0, "{name}");
    }
}

#[test]
fn endo_groupoid_recovers_loop_groups() {
    for x in xmod_corpus().into_iter().chain([xm_s3_conjugation()]) {
        for a in 0..x.base().object_count() {
            let e = endo_groupoid(&x, a).unwrap();
            assert!(e.pi0_matches_pi1, "{} at {a}", x.name);
            assert!(e.aut_matches_pi2, "{} at {a}", x.name);
        }
    }
    let g = xm_group("Z3", &FiniteGroup::cyclic(3));
    let e = endo_groupoid(&g, 0).unwrap();
    assert_eq!(e.groupoid.components().1, 3);
    assert_eq!(e.groupoid.morphism_count(), 3);
    let s = endo_groupoid(&xm_s3_conjugation(), 0).unwrap();
    assert_eq!(s.groupoid.components().1, 1);
    assert_eq!(s.groupoid.hom(0, 0).len(), 1);
}
