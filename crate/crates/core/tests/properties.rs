use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use hofib_core::algebra::{free_category, groupoid_fibration, FiniteCategory, FiniteGraph, FiniteGroup, FiniteGroupoid, GroupoidFunctor};
use hofib_core::bicat::{Direction, FiniteBicategory, LaxMorphism};
use hofib_core::instances::*;
use hofib_core::nerve::*;
use hofib_core::xmod::*;
use hofib_core::Limits;

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(6),
        FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::symmetric3(),
        FiniteGroup::dihedral(4),
    ]
}

fn grothendieck_corpus() -> &'static Vec<GrothendieckNerve> {
    static CELL: OnceLock<Vec<GrothendieckNerve>> = OnceLock::new();
    CELL.get_or_init(|| {
        [cyclic_delooping(2), m_omega().delooping(), m_min().delooping(), indiscrete_bicategory(2)]
            .iter()
            .map(|b| grothendieck_nerve(b, 4).unwrap())
            .collect()
    })
}

fn xmod_nerves() -> &'static Vec<XmodNerve> {
    static CELL: OnceLock<Vec<XmodNerve>> = OnceLock::new();
    CELL.get_or_init(|| xmod_corpus().iter().map(|x| xmod_nerve(x, 4).unwrap()).collect())
}

fn lax_nerves() -> &'static Vec<GeometricNerve> {
    static CELL: OnceLock<Vec<GeometricNerve>> = OnceLock::new();
    CELL.get_or_init(|| {
        [m_omega().delooping(), m_max().delooping(), beta(&xm_zero_boundary()).unwrap().bicategory().clone()]
            .iter()
            .map(|b| geometric_nerve(b, NerveVariant::Lax, 3).unwrap())
            .collect()
    })
}

/// A monotone map `[q] → [p]`.
fn monotone(q: usize, p: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=p, q + 1).prop_map(|mut v| {
        v.sort();
        v
    })
}

/// Three composable monotone maps `[l] → [m] → [q] → [p]`.
fn composable_triple(p: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
    (0..=3usize, 0..=3usize, 0..=3usize).prop_flat_map(move |(q, m, l)| (monotone(q, p), monotone(m, q), monotone(l, m)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn free_linear_graph_is_ordinal(p in 0usize..=6) {
        let f = free_category(&FiniteGraph::linear(p)).unwrap();
        let o = FiniteCategory::ordinal(p);
        prop_assert_eq!(f.morphism_count(), (p + 1) * (p + 2) / 2);
        let obj: Vec<usize> = (0..=p).collect();
        let mor: Vec<usize> = (0..f.morphism_count()).map(|m| o.ordinal_arrow(f.src(m), f.dst(m))).collect();
        prop_assert!(f.is_isomorphism(&o, &obj, &mor));
    }

    #[test]
    fn reindexing_is_functorial(k in 0usize..3, p in 1usize..=3, seed in any::<u64>(), q in 0usize..=3, m in 0usize..=3, a_seed in any::<u64>()) {
        let n = &lax_nerves()[k];
        let xs = &n.simplices[p];
        let x = &xs[(seed as usize) % xs.len()];
        let maps_a = monotone_maps(q, p);
        let a = &maps_a[(a_seed as usize) % maps_a.len()];
        let maps_b = monotone_maps(m, q);
        let b = &maps_b[(a_seed as usize / 7) % maps_b.len()];
        prop_assert_eq!(x.reindex(&compose_monotone(a, b)), x.reindex(a).reindex(b));
    }

    #[test]
    fn grothendieck_cocycle_at_dimension_four(k in 0usize..4, seed in any::<u64>(), (a, b, c) in composable_triple(4)) {
        let g = &grothendieck_corpus()[k];
        let xs = &g.objects[4];
        let x = &xs[(seed as usize) % xs.len()];
        let ab = compose_monotone(&a, &b);
        let bc = compose_monotone(&b, &c);
        let l = g.compose(&g.chi(&ab, &c, x).unwrap(), &g.apply2(&c, &g.chi(&a, &b, x).unwrap()).unwrap()).unwrap();
        let r = g.compose(&g.chi(&a, &bc, x).unwrap(), &g.chi(&b, &c, &g.apply(&a, x).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert!(g.is_iso(&g.chi(&a, &b, x).unwrap()));
    }

    /// Every enumerated nerve simplex satisfies the boundary and cocycle
    /// conditions at all of its triples and quadruples, rechecked here
    /// directly rather than incrementally.
    #[test]
    fn xmod_nerve_simplices_satisfy_conditions(k in 0usize..8, p in 2usize..=4, seed in any::<u64>()) {
        let n = &xmod_nerves()[k];
        let x = &n.xmod;
        let base = x.base();
        let xs = &n.simplices[p];
        let s = &xs[(seed as usize) % xs.len()];
        let arrow = |i: usize, j: usize| s.arrow(i, j) as usize;
        for kk in 0..=p {
            for j in 0..=kk {
                for i in 0..=j {
                    let want = base.comp(base.inv(arrow(i, kk)), base.comp(arrow(j, kk), arrow(i, j)));
                    prop_assert_eq!(x.d(s.objs[i] as usize, s.cell(i, j, kk) as usize), want);
                }
            }
        }
        for l in 0..=p {
            for kk in 0..=l {
                for j in 0..=kk {
                    for i in 0..=j {
                        let g = x.fiber(s.objs[i] as usize);
                        let c = |a: usize, b: usize, c: usize| s.cell(a, b, c) as usize;
                        let lhs = g.mul(c(i, j, l), x.act(base.inv(arrow(i, j)), c(j, kk, l)));
                        let rhs = g.mul(c(i, kk, l), c(i, j, kk));
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_modules_validate_and_roundtrip(gi in 0usize..7) {
        let g = &groups()[gi];
        let x = Arc::new(CrossedModule::conjugation("G", g));
        prop_assert!(x.validate().is_valid());
        let (_, _, v) = roundtrip_xmod(&x).unwrap();
        prop_assert!(v.is_empty());
    }

    #[test]
    fn group_deloopings_validate(gi in 0usize..7) {
        let m = group_monoidal("G", &groups()[gi]);
        prop_assert!(m.validate().is_valid());
        prop_assert!(m.delooping().validate().is_valid());
    }

    /// Homomorphisms `ℤ/m → ℤ/n, x ↦ kx`: identities are fibrations and
    /// fibrations compose.
    #[test]
    fn fibrations_compose(m in 1usize..7, n in 1usize..7, r in 1usize..7, k1 in 0usize..7, k2 in 0usize..7) {
        let hom = |from: usize, to: usize, k: usize| (0..from).map(|x| (k * x) % to).collect::<Vec<_>>();
        prop_assume!((k1 * m) % n == 0 && (k2 * n) % r == 0);
        let g = |o: usize| Arc::new(FiniteGroupoid::from_group("G", &FiniteGroup::cyclic(o)));
        let (gm, gn, gr) = (g(m), g(n), g(r));
        let f1 = GroupoidFunctor::from_group_hom(gm.clone(), gn.clone(), hom(m, n, k1));
        let f2 = GroupoidFunctor::from_group_hom(gn, gr, hom(n, r, k2));
        prop_assert!(groupoid_fibration(&GroupoidFunctor::identity(gm)));
        if groupoid_fibration(&f1) && groupoid_fibration(&f2) {
            prop_assert!(groupoid_fibration(&f1.then(&f2).unwrap()));
        }
    }

    #[test]
    fn lax_composition_is_associative(a in monotone(1, 2), b in monotone(2, 2), seed in any::<u64>()) {
        let th = m_omega_theta().sigma(Direction::Lax).unwrap();
        let b_om: Arc<FiniteBicategory> = th.source.clone();
        let ords = OrdinalSpaces::new(2).unwrap();
        let lax = ords.get(2).enumerate(&b_om, false, Limits::default()).unwrap();
        let x = ords.get(2).to_lax("x", b_om, &lax[(seed as usize) % lax.len()], Direction::Lax);
        let fa = ords.monotone_functor(&a, 2, Direction::Lax).unwrap();
        let fb: LaxMorphism = ords.monotone_functor(&b, 2, Direction::Lax).unwrap();
        let l = fa.then(&fb).unwrap().then(&x).unwrap();
        let r = fa.then(&fb.then(&x).unwrap()).unwrap();
        prop_assert!(l.table_eq(&r));
        let l = fb.then(&x).unwrap().then(&th).unwrap();
        let r = fb.then(&x.then(&th).unwrap()).unwrap();
        prop_assert!(l.table_eq(&r));
        prop_assert!(l.validate().is_valid());
    }
}
