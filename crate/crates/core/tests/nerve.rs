use std::sync::Arc;

use hofib_core::algebra::{FiniteCategory, FiniteGraph, FiniteGroup, FiniteGroupoid};
use hofib_core::bicat::{discrete_bicategory, terminal_bicategory, Direction, FiniteBicategory, LaxMorphism};
use hofib_core::instances::*;
use hofib_core::nerve::*;
use hofib_core::xmod::*;
use hofib_core::{tuple_label, Limits};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Composable strings `(f_1, …, f_p)` of a category, by direct recursion.
fn strings(c: &FiniteCategory, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = (0..c.morphism_count()).map(|f| vec![f]).collect();
    for _ in 1..p {
        out = out
            .into_iter()
            .flat_map(|s| {
                let last = *s.last().unwrap();
                c.out(c.dst(last)).iter().map(move |&g| {
                    let mut t = s.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

fn string_label(c: &FiniteCategory, s: &[usize]) -> String {
    tuple_label(&s.iter().map(|&f| c.label(f)).collect::<Vec<_>>())
}

fn small_categories() -> Vec<FiniteCategory> {
    vec![
        FiniteCategory::terminal(),
        FiniteCategory::ordinal(1),
        FiniteCategory::ordinal(2),
        two_chain(),
        FiniteGroupoid::indiscrete("I2", &["0", "1"]).category().clone(),
        FiniteGroupoid::from_group("Z3", &FiniteGroup::cyclic(3)).category().clone(),
    ]
}

#[test]
fn category_nerve_matches_strings_and_composition() {
    for c in small_categories() {
        let n = category_nerve(&c, 4).unwrap();
        assert_eq!(n.count(0), c.object_count());
        for p in 1..=4 {
            let ss = strings(&c, p);
            assert_eq!(n.count(p), ss.len(), "{} dim {p}", c.name());
            for s in &ss {
                let x = n.find(p, &string_label(&c, s)).unwrap();
                // inner faces compose, outer faces drop
                for i in 0..=p {
                    let mut t = s.clone();
                    if i == 0 {
                        t.remove(0);
                    } else if i == p {
                        t.pop();
                    } else {
                        let gf = c.comp(t[i], t[i - 1]);
                        t.splice(i - 1..=i, [gf]);
                    }
                    let want = if t.is_empty() {
                        let o = if i == 0 { c.dst(s[0]) } else { c.src(s[0]) };
                        n.find(0, c.object_label(o)).unwrap()
                    } else {
                        n.find(p - 1, &string_label(&c, &t)).unwrap()
                    };
                    assert_eq!(n.face(p, i, x), want, "{} d{i} {:?}", c.name(), s);
                }
            }
        }
        assert!(validate_simplicial(&n).is_valid());
    }
}

/// Discrete bicategories: each variant, relabelled by its underlying string
/// of arrows, is the ordinary nerve.
#[test]
fn discrete_bicategory_nerves_are_ordinary_nerves() {
    for c in small_categories() {
        let b = Arc::new(discrete_bicategory(&c).unwrap());
        let ordinary = category_nerve(&c, 4).unwrap();
        for v in NerveVariant::ALL {
            let g = geometric_nerve(&b, v, 4).unwrap();
            let maps: Vec<Vec<usize>> = g
                .simplices
                .iter()
                .enumerate()
                .map(|(p, xs)| {
                    xs.iter()
                        .map(|x| {
                            let label = if p == 0 {
                                c.object_label(x.objs[0] as usize).to_string()
                            } else {
                                string_label(&c, &(1..=p).map(|i| x.arrow(i - 1, i) as usize).collect::<Vec<_>>())
                            };
                            ordinary.find(p, &label).unwrap()
                        })
                        .collect()
                })
                .collect();
            let v2 = compare_simplicial(&g.sset, &ordinary, &maps);
            assert!(v2.is_empty(), "{} {v}: {:?}", c.name(), v2.first());
        }
    }
}

#[test]
fn terminal_bicategory_has_one_simplex_per_dimension() {
    let b = terminal_bicategory();
    for v in NerveVariant::ALL {
        assert_eq!(geometric_nerve(&b, v, 4).unwrap().sset.counts(), vec![1; 5]);
    }
}

#[test]
fn delooped_group_nerve_counts() {
    // only identity 2-cells, so a simplex is a string of p group elements
    for n in [2, 3] {
        let b = cyclic_delooping(n);
        for v in NerveVariant::ALL {
            let g = geometric_nerve(&b, v, 4).unwrap();
            assert_eq!(g.sset.counts(), (0..=4).map(|p| n.pow(p as u32)).collect::<Vec<_>>());
        }
    }
}

#[test]
fn simplicial_identities_on_corpus() {
    for b in bicategory_corpus() {
        for v in NerveVariant::ALL {
            let g = geometric_nerve(&b, v, 4).unwrap();
            let r = validate_simplicial(&g.sset);
            assert!(r.is_valid(), "{} {v}: {:?}", b.name(), r.violations.first());
        }
    }
}

#[test]
fn corrupted_face_breaks_simplicial_identities() {
    let b = cyclic_delooping(3);
    let mut s = geometric_nerve(&b, NerveVariant::NormalLax, 3).unwrap().sset;
    let x = 4;
    s.faces[2][1][x] = (s.faces[2][1][x] + 1) % s.count(1);
    let r = validate_simplicial(&s);
    assert!(r.has_axiom("face-face") || r.has_axiom("face-degeneracy"), "{:?}", r.violations);
}

/// Faces computed by reindexing agree with composing the lax functor with
/// the coface functor.
#[test]
fn faces_agree_with_composition_of_lax_functors() {
    for b in [m_omega().delooping(), m_max().delooping(), beta(&xm_zero_boundary()).unwrap().bicategory().clone()] {
        for v in [NerveVariant::Lax, NerveVariant::NormalLax] {
            let g = geometric_nerve(&b, v, 3).unwrap();
            for p in 1..=3 {
                for (xi, x) in g.simplices[p].iter().enumerate() {
                    let fx = g.as_lax(x);
                    for i in 0..=p {
                        let d = g.ordinals.monotone_functor(&coface(p, i), p, Direction::Lax).unwrap();
                        let y = g.from_lax(&d.then(&fx).unwrap());
                        assert_eq!(g.find(&y), Some(g.sset.face(p, i, xi)));
                    }
                    if p < 3 {
                        for i in 0..=p {
                            let s = g.ordinals.monotone_functor(&codegeneracy(p, i), p, Direction::Lax).unwrap();
                            let y = g.from_lax(&s.then(&fx).unwrap());
                            assert_eq!(g.find(&y), Some(g.sset.degeneracy(p, i, xi)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn normal_nerve_includes_into_full_nerve() {
    for b in bicategory_corpus() {
        for (nv, fv) in [(NerveVariant::NormalLax, NerveVariant::Lax), (NerveVariant::NormalOplax, NerveVariant::Oplax)] {
            let n = geometric_nerve(&b, nv, 3).unwrap();
            let f = geometric_nerve(&b, fv, 3).unwrap();
            let maps = nerve_inclusion(&n, &f).unwrap();
            let v = simplicial_map_violations(&n.sset, &f.sset, &maps);
            assert!(v.is_empty(), "{}: {:?}", b.name(), v.first());
        }
        let n = geometric_nerve(&b, NerveVariant::NormalLax, 2).unwrap();
        assert!(nerve_inclusion(&n, &n).is_err());
    }
}

#[test]
fn lax_functor_induces_simplicial_map() {
    let th = m_omega_theta().sigma(Direction::Lax).unwrap();
    for v in [NerveVariant::Lax, NerveVariant::NormalLax] {
        let s = geometric_nerve(&th.source, v, 3).unwrap();
        let t = geometric_nerve(&th.target, v, 3).unwrap();
        let maps = nerve_map(&th, &s, &t).unwrap();
        let r = simplicial_map_violations(&s.sset, &t.sset, &maps);
        assert!(r.is_empty(), "{v}: {:?}", r.first());
    }
    let s = geometric_nerve(&th.source, NerveVariant::Oplax, 2).unwrap();
    assert!(nerve_map(&th, &s, &s).is_err());
}

#[test]
fn kan_groupoid_nerves_fill_all_horns() {
    for g in [FiniteGroupoid::indiscrete("I2", &["0", "1"]), FiniteGroupoid::from_group("Z3", &FiniteGroup::cyclic(3))] {
        let n = category_nerve(g.category(), 4).unwrap();
        for p in 1..=3 {
            for k in 0..=p {
                let r = kan_check(&n, p, k).unwrap();
                assert!(r.all_fill(), "{} ({p},{k})", g.name());
            }
        }
    }
}

#[test]
fn kan_non_groupoid_nerve_has_unfilled_outer_horn() {
    let n = category_nerve(&FiniteCategory::ordinal(1), 3).unwrap();
    assert!(kan_check(&n, 2, 1).unwrap().all_fill());
    let outer = kan_check(&n, 2, 0).unwrap();
    assert!(!outer.all_fill());
    assert_eq!(outer.unfilled.len(), 1);
}

#[test]
fn kan_two_groupoid_nerves() {
    for x in [xm_zero_boundary(), xm_cyclic_conjugation(2)] {
        let b = beta(&x).unwrap().bicategory().clone();
        let g = geometric_nerve(&b, NerveVariant::NormalLax, 4).unwrap();
        for p in 1..=3 {
            for k in 0..=p {
                assert!(kan_check(&g.sset, p, k).unwrap().all_fill());
            }
        }
    }
}

fn ner_corpus() -> Vec<Arc<FiniteBicategory>> {
    vec![
        terminal_bicategory(),
        ordinal_bicategory(2),
        indiscrete_bicategory(2),
        cyclic_delooping(2),
        m_omega().delooping(),
        m_max().delooping(),
        beta(&xm_zero_boundary()).unwrap().bicategory().clone(),
    ]
}

#[test]
fn grothendieck_nerve_cocycle_on_corpus() {
    for b in ner_corpus() {
        let g = grothendieck_nerve(&b, 3).unwrap();
        let r = g.validate();
        assert!(r.is_valid(), "{}: {:?}", b.name(), r.violations.first());
    }
}

#[test]
fn grothendieck_nerve_zero_is_discrete() {
    for b in ner_corpus() {
        let g = grothendieck_nerve(&b, 1).unwrap();
        let c = g.category(0, Limits::default()).unwrap();
        assert_eq!(c.object_count(), b.objs().count());
        assert_eq!(c.morphism_count(), c.object_count());
    }
}

#[test]
fn grothendieck_faces_and_degeneracies_follow_the_formulas() {
    let b = m_omega().delooping();
    let g = grothendieck_nerve(&b, 3).unwrap();
    for x in &g.objects[3] {
        let u = &x.cells; // u_1, u_2, u_3
        for i in 0..=3 {
            let d = g.apply(&coface(3, i), x).unwrap();
            let want = match i {
                0 => vec![u[1], u[2]],
                3 => vec![u[0], u[1]],
                _ => {
                    let mut w = u.clone();
                    let c = b.try_hcomp1(u[i], u[i - 1]).unwrap();
                    w.splice(i - 1..=i, [c]);
                    w
                }
            };
            assert_eq!(d.cells, want, "d{i}");
        }
    }
    for x in &g.objects[2] {
        for i in 0..=2 {
            let s = g.apply(&codegeneracy(2, i), x).unwrap();
            let mut want = x.cells.clone();
            want.insert(i, b.id1(x.objs[i]));
            assert_eq!(s.cells, want, "s{i}");
        }
    }
    // general reindexing: v_{k+1} is the iterated composite of u_{a(k)+1..a(k+1)}
    for a in monotone_maps(2, 3) {
        for x in &g.objects[3] {
            let y = g.apply(&a, x).unwrap();
            for k in 0..2 {
                let want = if a[k] == a[k + 1] { b.id1(x.objs[a[k]]) } else { or_comp1(&b, &x.cells[a[k]..a[k + 1]]).unwrap() };
                assert_eq!(y.cells[k], want);
            }
        }
    }
}

#[test]
fn grothendieck_constraints_are_invertible_and_unital() {
    let b = m_min().delooping();
    let g = grothendieck_nerve(&b, 3).unwrap();
    let id2: Vec<usize> = (0..=2).collect();
    for x in &g.objects[2] {
        for bm in monotone_maps(1, 2) {
            assert!(g.is_identity(&g.chi(&id2, &bm, x).unwrap()));
        }
        for a in monotone_maps(2, 2) {
            assert!(g.is_iso(&g.chi(&a, &id2, x).unwrap()));
        }
        for a in monotone_maps(3, 2) {
            for bm in monotone_maps(1, 3) {
                assert!(g.is_iso(&g.chi(&a, &bm, x).unwrap()));
            }
        }
    }
}

#[test]
fn nerve_of_lax_functor_is_lax_simplicial() {
    let th = m_omega_theta().sigma(Direction::Lax).unwrap();
    let n = nerve_of_lax(&th, 3).unwrap();
    let r = n.validate();
    assert!(r.is_valid(), "{:?}", r.violations.first());
    assert!(!n.is_strict().unwrap());
    let id = LaxMorphism::identity(th.source.clone(), Direction::Lax);
    assert!(nerve_of_lax(&id, 3).unwrap().is_strict().unwrap());
    assert!(nerve_of_lax(&m_omega_theta().sigma(Direction::Oplax).unwrap(), 2).is_err());
}

#[test]
fn nerve_is_strictly_functorial() {
    let th = m_omega_theta().sigma(Direction::Lax).unwrap();
    let ords = OrdinalSpaces::new(2).unwrap();
    let b = m_omega().delooping();
    let lax2 = ords.get(2).enumerate(&b, false, Limits::default()).unwrap();
    let d = lax2.iter().find(|d| !d.cells.iter().all(|&c| b.is_id2(c)) && !d.units.iter().all(|&c| b.is_id2(c))).unwrap();
    let x = ords.get(2).to_lax("x", b.clone(), d, Direction::Lax);
    assert!(x.validate().is_valid());
    let a = ords.monotone_functor(&[0, 2], 2, Direction::Lax).unwrap();
    let id = LaxMorphism::identity(th.source.clone(), Direction::Lax);
    let pairs: Vec<(&LaxMorphism, &LaxMorphism)> = vec![(&th, &th), (&x, &th), (&a, &x), (&id, &th), (&th, &id)];
    for (f, g) in pairs {
        let v = nerve_composite_violations(f, g, 3).unwrap();
        assert!(v.is_empty(), "{} then {}: {:?}", f.name, g.name, v.first());
    }
    for b in ner_corpus() {
        assert!(nerve_identity_violations(&b, 3).unwrap().is_empty(), "{}", b.name());
    }
}

/// Icon enumeration is quadratic in lax functors, so bicategories with many
/// lax 3-simplices stop at dimension 2.
fn icon_dim(b: &Arc<FiniteBicategory>) -> usize {
    let heavy = geometric_nerve(b, NerveVariant::Lax, 3).unwrap().sset.count(3) > 500;
    if heavy {
        2
    } else {
        3
    }
}

#[test]
fn graph_adjunction_identities_on_corpus() {
    for b in bicategory_corpus() {
        for p in 1..=icon_dim(&b) {
            let r = graph_adjunction(&FiniteGraph::linear(p), &b).unwrap();
            assert!(r.report.is_valid(), "{} G{p}: {:?}", b.name(), r.report.violations.first());
            assert!(r.lax_functors > 0 && r.graph_maps > 0);
        }
    }
}

#[test]
fn graph_adjunction_on_branching_graph() {
    // two paths of length 2 meeting at a vertex
    let g = FiniteGraph {
        vertices: ["a", "b", "c", "d"].map(String::from).to_vec(),
        edges: vec![("x".into(), 0, 1), ("y".into(), 1, 2), ("z".into(), 3, 1)],
    };
    let r = graph_adjunction(&g, &m_max().delooping()).unwrap();
    assert!(r.report.is_valid(), "{:?}", r.report.violations.first());
}

#[test]
fn counit_on_length_two_path_is_the_structure_cell() {
    let b = m_omega().delooping();
    let adj = GraphAdjunction::new(&FiniteGraph::linear(2), b.clone()).unwrap();
    let c = adj.category();
    let long = (0..c.morphism_count()).find(|&m| adj.paths[m].len() == 2).unwrap();
    let (e1, e2) = (c.ordinal_arrow(0, 1), c.ordinal_arrow(1, 2));
    for d in adj.space.enumerate(&b, false, Limits::default()).unwrap() {
        let nu = adj.nu(&d).unwrap();
        assert_eq!(nu[long], d.cells[adj.space.pair(e2, e1)]);
        for o in 0..c.object_count() {
            assert_eq!(nu[c.id(o)], d.units[o]);
        }
    }
}

#[test]
fn graph_adjunction_detects_corrupted_counit() {
    let b = m_omega().delooping();
    let adj = GraphAdjunction::new(&FiniteGraph::linear(2), b.clone()).unwrap();
    let lax = adj.space.enumerate(&b, false, Limits::default()).unwrap();
    // a lax functor whose unit is not an identity: ν there is not an identity
    let d = lax.iter().find(|d| !d.units.iter().all(|&u| b.is_id2(u))).unwrap();
    let nu = adj.nu(d).unwrap();
    assert!(!nu.iter().all(|&c| b.is_id2(c)));
}

#[test]
fn projection_coherence_and_naturality() {
    for b in bicategory_corpus() {
        let n = icon_dim(&b);
        let r = nerve_projection(&b, n, Limits::default()).unwrap();
        let v = r.violations().unwrap();
        assert!(v.is_empty(), "{}: {:?}", b.name(), v.first());
        for p in 0..=n {
            let c = &r.icons[p].category;
            assert!(c.validate().is_valid());
        }
    }
}

#[test]
fn hom_bijection_for_j_and_r() {
    for b in bicategory_corpus() {
        for p in 0..=3 {
            let (pairs, v) = jr_bijection(&b, p, Limits::default()).unwrap();
            assert!(pairs > 0);
            assert!(v.is_empty(), "{} p={p}: {:?}", b.name(), v.first());
        }
    }
}

#[test]
fn icon_category_of_point_is_terminal() {
    let c = icon_category(2, &terminal_bicategory(), Limits::default()).unwrap();
    assert_eq!((c.category.object_count(), c.category.morphism_count()), (1, 1));
}

/// `|N_p| = |P|^p·|G|^{C(p,2)}` for a one-object crossed module: the
/// `p_{i-1,i}` and the `g_{0jk}` are free, everything else is forced by the
/// boundary and cocycle conditions.
#[test]
fn dakin_counts_for_one_object_modules() {
    for x in xmod_corpus() {
        if x.base().object_count() != 1 {
            continue;
        }
        let (p_order, g_order) = (x.base().morphism_count(), x.fiber(0).order());
        let n = xmod_nerve(&x, 4).unwrap();
        let want: Vec<usize> = (0..=4).map(|p| p_order.pow(p as u32) * g_order.pow(binomial(p, 2) as u32)).collect();
        assert_eq!(n.sset.counts(), want, "{}", x.name);
    }
}

#[test]
fn dakin_zero_boundary_has_eight_two_simplices() {
    // ∂ = 0 forces p02 = p12·p01: 4 triples, each with 2 fillers
    let n = xmod_nerve(&xm_zero_boundary(), 2).unwrap();
    assert_eq!(n.sset.count(2), 8);
}

#[test]
fn dakin_nerve_of_discrete_module_is_ordinary_nerve() {
    for x in [xm_group("Z2", &FiniteGroup::cyclic(2)), xm_indiscrete2()] {
        let n = xmod_nerve(&x, 4).unwrap();
        let c = category_nerve(x.base().category(), 4).unwrap();
        assert_eq!(n.sset.counts(), c.counts());
        assert_eq!(n.sset.count(1), x.base().morphism_count());
    }
}

#[test]
fn nerve_comparison_on_corpus() {
    for x in xmod_corpus() {
        let c = compare_nerves(&x, 4).unwrap();
        assert!(c.report.is_valid(), "{}: {:?}", x.name, c.report.violations.first());
        assert!(c.counts().iter().all(|(a, b)| a == b));
        assert!(validate_simplicial(&c.dakin.sset).is_valid());
    }
}

#[test]
fn nerve_comparison_detects_corrupted_face() {
    let x = xm_cyclic_conjugation(3);
    let c = compare_nerves(&x, 3).unwrap();
    let mut bad = c.dakin.sset.clone();
    bad.faces[2][1][0] = (bad.faces[2][1][0] + 1) % bad.count(1);
    let v = compare_simplicial(&bad, &c.beta.sset, &c.maps);
    assert!(v.iter().any(|v| v.axiom == "commutes-with-face"));
}

#[test]
fn xmod_nerves_are_kan() {
    for x in xmod_corpus() {
        let n = xmod_nerve(&x, 4).unwrap();
        for p in 1..=3 {
            for k in 0..=p {
                let r = kan_check(&n.sset, p, k).unwrap();
                assert!(r.all_fill(), "{} ({p},{k})", x.name);
            }
        }
    }
}

#[test]
fn nerve_ceiling_is_enforced() {
    let r = xmod_nerve_with_limits(&xm_s3_conjugation(), 4, Limits::new(10_000));
    assert!(matches!(r, Err(hofib_core::Error::ResourceLimit { .. })));
    let r = geometric_nerve_with_limits(&m_omega().delooping(), NerveVariant::Lax, 4, Limits::new(1000));
    assert!(matches!(r, Err(hofib_core::Error::ResourceLimit { .. })));
}
