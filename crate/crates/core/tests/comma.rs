use std::collections::BTreeMap;
use std::sync::Arc;

use hofib_core::algebra::{FiniteCategory, FiniteGroup, FiniteGroupoid, Functor};
use hofib_core::bicat::{
    discrete_bicategory, discrete_functor, terminal_bicategory, Direction, FiniteBicategory, LaxMorphism, Obj, C1,
};
use hofib_core::comma::*;
use hofib_core::instances::*;

/// The classical comma category of two functors, enumerated directly.
struct ClassicalComma {
    objects: Vec<(usize, usize, usize)>,
    morphisms: Vec<(usize, usize, usize, usize)>, // (x0, u, u', x1)
}

fn classical_comma(f: &Functor, g: &Functor) -> ClassicalComma {
    let d = &f.target;
    let mut objects = Vec::new();
    for a in 0..f.source.object_count() {
        for a2 in 0..g.source.object_count() {
            for &h in d.hom(f.ob(a), g.ob(a2)) {
                objects.push((a, h, a2));
            }
        }
    }
    let mut morphisms = Vec::new();
    for (i, &(a0, h0, b0)) in objects.iter().enumerate() {
        for (j, &(a1, h1, b1)) in objects.iter().enumerate() {
            for &u in f.source.hom(a0, a1) {
                for &v in g.source.hom(b0, b1) {
                    if d.comp(g.mor(v), h0) == d.comp(h1, f.mor(u)) {
                        morphisms.push((i, u, v, j));
                    }
                }
            }
        }
    }
    ClassicalComma { objects, morphisms }
}

fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
    Arc::new(c)
}

fn check_against_oracle(f: &Functor, g: &Functor) {
    let (sa, sb, sc) = (
        Arc::new(discrete_bicategory(&f.source).unwrap()),
        Arc::new(discrete_bicategory(&f.target).unwrap()),
        Arc::new(discrete_bicategory(&g.source).unwrap()),
    );
    let lf = discrete_functor(f, sa, sb.clone(), Direction::Lax).unwrap();
    let lg = discrete_functor(g, sc, sb, Direction::Oplax).unwrap();
    let c = comma(&lf, &lg).unwrap();
    let o = classical_comma(f, g);
    let objs: Vec<(usize, usize, usize)> = c.objects.iter().map(|&(a, h, b)| (a.idx(), h.idx(), b.idx())).collect();
    assert_eq!(objs, o.objects, "objects agree in order");
    let mut seen = BTreeMap::new();
    for k in c.bicat.c1s() {
        let (u, _, v) = c.cell1(k);
        let key = (c.bicat.src1(k).idx(), u.idx(), v.idx(), c.bicat.dst1(k).idx());
        assert!(seen.insert(key, k).is_none(), "one 1-cell per oracle morphism");
    }
    let oracle: std::collections::BTreeSet<_> = o.morphisms.iter().copied().collect();
    assert_eq!(seen.keys().copied().collect::<std::collections::BTreeSet<_>>(), oracle);
    // composition is componentwise
    for (&(x0, u, v, x1), &k) in &seen {
        for (&(y0, u2, v2, y1), &k2) in &seen {
            if y0 != x1 {
                continue;
            }
            let comp = c.bicat.h1(k2, k).unwrap();
            let (cu, _, cv) = c.cell1(comp);
            assert_eq!(cu.idx(), f.source.comp(u2, u));
            assert_eq!(cv.idx(), g.source.comp(v2, v));
            assert_eq!((c.bicat.src1(comp).idx(), c.bicat.dst1(comp).idx()), (x0, y1));
        }
    }
    // only identity 2-cells
    assert_eq!(c.bicat.c2_count(), c.bicat.c1_count());
    assert!(c.bicat.validate().is_valid());
}

#[test]
fn discrete_comma_matches_classical_oracle() {
    let p1 = arc(FiniteCategory::ordinal(1));
    let p2 = arc(FiniteCategory::ordinal(2));
    let f = Functor {
        source: p1.clone(),
        target: p2.clone(),
        obj_map: vec![0, 2],
        mor_map: (0..p1.morphism_count())
            .map(|m| {
                let mm = &p1.morphisms()[m];
                p2.ordinal_arrow([0, 2][mm.src], [0, 2][mm.dst])
            })
            .collect(),
    };
    let g = Functor {
        source: p1.clone(),
        target: p2.clone(),
        obj_map: vec![1, 2],
        mor_map: (0..p1.morphism_count())
            .map(|m| {
                let mm = &p1.morphisms()[m];
                p2.ordinal_arrow([1, 2][mm.src], [1, 2][mm.dst])
            })
            .collect(),
    };
    check_against_oracle(&f, &g);
    check_against_oracle(&Functor::identity(p2.clone()), &Functor::identity(p2));

    let z2 = FiniteGroup::cyclic(2);
    let g2 = Arc::new(FiniteGroupoid::from_group("Z2", &z2));
    let c2 = arc(g2.category().clone());
    let triv = arc(FiniteCategory::terminal());
    let incl = Functor { source: triv, target: c2.clone(), obj_map: vec![0], mor_map: vec![c2.id(0)] };
    check_against_oracle(&Functor::identity(c2.clone()), &incl);
    let i2 = FiniteGroupoid::indiscrete("I2", &["a", "b"]);
    let ci2 = arc(i2.category().clone());
    check_against_oracle(&Functor::identity(ci2.clone()), &Functor::identity(ci2));
}

#[test]
fn comma_of_identities_on_point_is_terminal() {
    let t = terminal_bicategory();
    let c = comma(&LaxMorphism::identity(t.clone(), Direction::Lax), &LaxMorphism::identity(t, Direction::Oplax)).unwrap();
    assert_eq!((c.bicat.obj_count(), c.bicat.c1_count(), c.bicat.c2_count()), (1, 1, 1));
}

#[test]
fn comma_rejects_wrong_directions() {
    let b = cyclic_delooping(2);
    let id = LaxMorphism::identity(b.clone(), Direction::Lax);
    assert!(comma(&id, &id).is_err());
}

fn corpus() -> Vec<Arc<FiniteBicategory>> {
    vec![
        terminal_bicategory(),
        ordinal_bicategory(1),
        ordinal_bicategory(2),
        indiscrete_bicategory(2),
        cyclic_delooping(2),
        cyclic_delooping(3),
        m_omega().delooping(),
        m_max().delooping(),
        m_min().delooping(),
    ]
}

#[test]
fn comma_validates_on_nonstrict_inputs() {
    let f = m_omega_theta();
    let lax = f.sigma(Direction::Lax).unwrap();
    let oplax = f.sigma(Direction::Oplax).unwrap();
    let c = comma(&lax, &oplax).unwrap();
    let r = c.bicat.validate();
    assert!(r.is_valid(), "{:?}", &r.violations[..r.violations.len().min(5)]);
    assert!(c.well_formedness_failures().is_empty());
    for b in corpus() {
        let c = comma(&LaxMorphism::identity(b.clone(), Direction::Lax), &LaxMorphism::identity(b.clone(), Direction::Oplax)).unwrap();
        let r = c.bicat.validate();
        assert!(r.is_valid(), "{}: {:?}", b.name(), &r.violations[..r.violations.len().min(5)]);
    }
}

#[test]
fn projections_are_strict_and_omega_validates() {
    let f = m_omega_theta();
    let c = comma(&f.sigma(Direction::Lax).unwrap(), &f.sigma(Direction::Oplax).unwrap()).unwrap();
    let p = c.projection(Direction::Lax).unwrap();
    assert!(p.validate().is_valid());
    assert!(p.is_strict());
    let w = comparison_transformation(&c).unwrap();
    let r = w.validate();
    assert!(r.is_valid(), "{:?}", r.violations);
}

#[test]
fn hom_isomorphism_on_corpus() {
    for b in corpus() {
        for x in b.objs() {
            for y in b.objs() {
                let h = hom_isomorphism(&b, x, y).unwrap();
                assert!(h.violations.is_empty(), "{} ({},{}): {:?}", b.name(), x.0, y.0, h.violations);
            }
        }
    }
}

#[test]
fn fibre_of_identity_has_terminal_like_object() {
    for b in corpus() {
        let id = LaxMorphism::identity(b.clone(), Direction::Lax);
        for o in b.objs() {
            let c = fibre(&id, o).unwrap();
            let top = c.find_obj(o, b.id1(o), Obj(0)).unwrap();
            for x in c.bicat.objs() {
                assert!(!c.bicat.hom1(x, top).is_empty(), "{}: no 1-cell into (b,1_b)", b.name());
            }
            let idop = LaxMorphism::identity(b.clone(), Direction::Oplax);
            let c = fibre_under(o, &idop).unwrap();
            let bot = c.find_obj(Obj(0), b.id1(o), o).unwrap();
            for x in c.bicat.objs() {
                assert!(!c.bicat.hom1(bot, x).is_empty());
            }
        }
    }
}

#[test]
fn translations_are_strict_and_compare_up_to_transformation() {
    for b in corpus() {
        let id = LaxMorphism::identity(b.clone(), Direction::Lax);
        for p in b.c1s() {
            let t = translate_lower(&id, p).unwrap();
            assert!(t.functor.validate().is_valid());
            let idop = LaxMorphism::identity(b.clone(), Direction::Oplax);
            let u = translate_upper(&idop, p).unwrap();
            assert!(u.functor.validate().is_valid());
            for &q in b.in1(b.src1(p)) {
                let cmp = composite_translation_comparison(&id, p, q).unwrap();
                let r = cmp.transformation.validate();
                assert!(r.is_valid(), "{}: {:?}", b.name(), r.violations);
            }
        }
    }
}

#[test]
fn identity_translation_formula() {
    let b = m_omega().delooping();
    let id = LaxMorphism::identity(b.clone(), Direction::Lax);
    let one = b.id1(Obj(0));
    let t = translate_lower(&id, one).unwrap();
    for x in t.source.bicat.objs() {
        let (a, f, _) = t.source.object(x);
        let (a2, f2, _) = t.target.object(t.functor.ob(x));
        assert_eq!(a, a2);
        assert_eq!(f2, b.h1(one, f).unwrap());
    }
}

#[test]
fn bar_lifts_squares_and_mediating() {
    let f = m_omega_theta();
    let lax = f.sigma(Direction::Lax).unwrap();
    let oplax = f.sigma(Direction::Oplax).unwrap();
    let c = comma(&lax, &oplax).unwrap();
    assert!(square_checks(&c).unwrap().is_empty());
    let (bl, fbar) = bar_lift(&c).unwrap();
    assert!(fbar.validate().is_valid(), "{:?}", fbar.validate().violations);
    let (_, fbar2) = bar_lift_prime(&c).unwrap();
    assert!(fbar2.validate().is_valid(), "{:?}", fbar2.validate().violations);
    let p = c.projection(Direction::Lax).unwrap();
    let n = mediating(&c, &bl, &p, &fbar).unwrap();
    assert!(n.table_eq(&LaxMorphism::identity(c.bicat.clone(), Direction::Lax)));
    assert_eq!(mediating_uniqueness(&c, &fbar, &p, &fbar).unwrap(), 1);
    // F̄ structure cells are (F̂, 1)
    for (&(k2, k1), &cell) in &fbar.comp {
        let (u1, u2) = (c.cell1(k1).0, c.cell1(k2).0);
        assert_eq!(bl.cell2(cell).0, lax.comp_cell(u2, u1));
        assert!(oplax.source.is_id2(bl.cell2(cell).1));
    }
}

#[test]
fn inclusions_are_normal_homomorphisms() {
    let f = m_omega_theta();
    let c = comma(&f.sigma(Direction::Lax).unwrap(), &f.sigma(Direction::Oplax).unwrap()).unwrap();
    let (_, j) = inclusion_j(&c, Obj(0)).unwrap();
    let r = j.validate();
    assert!(r.is_valid(), "{:?}", r.violations);
    let (_, j2) = inclusion_j_prime(&c, Obj(0)).unwrap();
    let r = j2.validate();
    assert!(r.is_valid(), "{:?}", r.violations);
    let pj = j.then(&c.projection(Direction::Lax).unwrap()).unwrap();
    assert!(pj.map0.iter().all(|&o| o == Obj(0)));
    assert!(pj.map1.iter().all(|&u| u == pj.target.id1(Obj(0))));
}

#[test]
fn comma2_and_swap() {
    let f = m_omega_theta().sigma(Direction::Lax).unwrap();
    let id = LaxMorphism::identity(f.target.clone(), Direction::Lax);
    let fg = comma2(&f, &id).unwrap();
    let gf = comma2(&id, &f).unwrap();
    assert!(fg.bicat.validate().is_valid());
    let (_, v) = swap_isomorphism(&fg, &gf).unwrap();
    assert!(v.is_empty(), "{:?}", v);
}

#[test]
fn property_b_examples() {
    let b = cyclic_delooping(2);
    let bhat = LaxMorphism::object_homomorphism(b.clone(), Obj(0), Direction::Lax).unwrap();
    assert!(property_b_witness(&bhat).unwrap().holds_sufficient);
    let p1 = ordinal_bicategory(1);
    let r = property_b_witness(&LaxMorphism::identity(p1, Direction::Lax)).unwrap();
    assert!(!r.holds_sufficient);
    let one = terminal_bicategory();
    assert!(property_b_witness(&LaxMorphism::identity(one, Direction::Lax)).unwrap().holds_sufficient);
    let _ = C1(0);
}
