//! Small standard instances used by tests, the corpus and the CLI.

use std::sync::Arc;

use crate::algebra::{CategoryBuilder, FiniteCategory, FiniteGroup, FiniteGroupoid};
use crate::bicat::{discrete_bicategory, terminal_bicategory, FiniteBicategory};
use crate::monoidal::{MonoidalCategory, MonoidalFunctor};
use crate::xmod::{CrossedModule, XmodMorphism};
use crate::Result;

/// The discrete monoidal category of `ℤ/n`.
pub fn cyclic_monoidal(n: usize) -> Arc<MonoidalCategory> {
    Arc::new(MonoidalCategory::discrete_from_group(&format!("Z{n}"), &FiniteGroup::cyclic(n)))
}

pub fn group_monoidal(name: &str, g: &FiniteGroup) -> Arc<MonoidalCategory> {
    Arc::new(MonoidalCategory::discrete_from_group(name, g))
}

/// `Σℤ/n`.
pub fn cyclic_delooping(n: usize) -> Arc<FiniteBicategory> {
    cyclic_monoidal(n).delooping()
}

/// `M_ω`: objects `ℤ/2`, every object with automorphism group `ℤ/2`, and
/// associator given by the 3-cocycle with `ω(1,1,1) = 1`.
pub fn m_omega() -> Arc<MonoidalCategory> {
    let z2 = FiniteGroup::cyclic(2);
    let m = crate::monoidal::cocycle_monoidal("Mw", &z2, &z2, |x, y, z| usize::from(x == 1 && y == 1 && z == 1));
    Arc::new(m.expect("M_omega tables"))
}

/// The identity-on-objects monoidal endofunctor of `M_ω` twisted by the
/// 2-cocycle `θ(1,1) = 1`: `F̂_{x,y} = (xy : θ(x,y))`.
pub fn m_omega_theta() -> MonoidalFunctor {
    let m = m_omega();
    let n = 2;
    let mor = |x: usize, a: usize| x * 2 + a;
    let comp = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            mor(m.t(x, y), usize::from(x == 1 && y == 1))
        })
        .collect();
    MonoidalFunctor {
        name: "theta".into(),
        obj_map: (0..n).collect(),
        mor_map: (0..m.category.morphism_count()).collect(),
        comp,
        unit: m.id(m.unit),
        source: m.clone(),
        target: m,
    }
}

/// The poset `{0 ≤ 1}` as a category.
pub fn two_chain() -> FiniteCategory {
    let mut cb = CategoryBuilder::new("{0<1}");
    let (o0, o1) = (cb.object("0"), cb.object("1"));
    let (i0, i1, u) = (cb.morphism("1_0", o0, o0), cb.morphism("1_1", o1, o1), cb.morphism("0<1", o0, o1));
    cb.identity(o0, i0);
    cb.identity(o1, i1);
    cb.compose(i0, i0, i0);
    cb.compose(i1, i1, i1);
    cb.compose(u, i0, u);
    cb.compose(i1, u, u);
    cb.build().expect("two-element chain")
}

fn poset_monoidal(name: &str, max: bool) -> Result<MonoidalCategory> {
    let c = Arc::new(two_chain());
    let op = |x: usize, y: usize| if max { x.max(y) } else { x.min(y) };
    let tensor_obj = (0..4).map(|i| op(i / 2, i % 2)).collect();
    let m = c.morphism_count();
    let mut tensor_mor = vec![0; m * m];
    for f in 0..m {
        for g in 0..m {
            let s = op(c.src(f), c.src(g));
            let d = op(c.dst(f), c.dst(g));
            tensor_mor[f * m + g] = c.hom(s, d)[0];
        }
    }
    let unit = if max { 0 } else { 1 };
    let assoc = (0..8).map(|i| c.id(op(op(i / 4, (i / 2) % 2), i % 2))).collect();
    let ids: Vec<usize> = (0..2).map(|x| c.id(x)).collect();
    MonoidalCategory::new(name, c, tensor_obj, tensor_mor, unit, assoc, ids.clone(), ids)
}

/// `{0 ≤ 1}` with `⊗ = max`, `I = 0`.
pub fn m_max() -> Arc<MonoidalCategory> {
    Arc::new(poset_monoidal("Mmax", true).expect("max tables"))
}

/// `{0 ≤ 1}` with `⊗ = min`, `I = 1`.
pub fn m_min() -> Arc<MonoidalCategory> {
    Arc::new(poset_monoidal("Mmin", false).expect("min tables"))
}

/// The discrete monoid `{0, …, k}` under addition truncated at `k`.
pub fn truncated_nat(k: usize) -> Arc<MonoidalCategory> {
    let n = k + 1;
    let labels = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n * n).map(|i| (i / n + i % n).min(k)).collect();
    Arc::new(MonoidalCategory::discrete_monoid(&format!("N<={k}"), labels, table, 0).expect("truncated addition"))
}

/// `[p]` as a discrete bicategory.
pub fn ordinal_bicategory(p: usize) -> Arc<FiniteBicategory> {
    Arc::new(discrete_bicategory(&FiniteCategory::ordinal(p)).expect("ordinal"))
}

/// The indiscrete groupoid on `k` objects as a discrete bicategory.
pub fn indiscrete_bicategory(k: usize) -> Arc<FiniteBicategory> {
    let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let g = FiniteGroupoid::indiscrete(&format!("I{k}"), &refs);
    Arc::new(discrete_bicategory(&g).expect("indiscrete"))
}

/// `(1, G, 1)`: the one-object groupoid of `G` with trivial fibers.
pub fn xm_group(name: &str, g: &FiniteGroup) -> Arc<CrossedModule> {
    Arc::new(CrossedModule::discrete(Arc::new(FiniteGroupoid::from_group(name, g))))
}

/// `(1, I₂, 1)`: the indiscrete groupoid on two objects.
pub fn xm_indiscrete2() -> Arc<CrossedModule> {
    Arc::new(CrossedModule::discrete(Arc::new(FiniteGroupoid::indiscrete("I2", &["0", "1"]))))
}

/// `(ℤ/n, 1, 0)`.
pub fn xm_abelian(n: usize) -> Arc<CrossedModule> {
    Arc::new(CrossedModule::abelian(&format!("Z{n}"), &FiniteGroup::cyclic(n)))
}

/// `(ℤ/n, ℤ/n, id)`.
pub fn xm_cyclic_conjugation(n: usize) -> Arc<CrossedModule> {
    Arc::new(CrossedModule::conjugation(&format!("Z{n}"), &FiniteGroup::cyclic(n)))
}

/// `(S₃, S₃, id)`.
pub fn xm_s3_conjugation() -> Arc<CrossedModule> {
    Arc::new(CrossedModule::conjugation("S3", &FiniteGroup::symmetric3()))
}

/// `(ℤ/2, ℤ/2, 0)` with trivial action.
pub fn xm_zero_boundary() -> Arc<CrossedModule> {
    let z2 = FiniteGroup::cyclic(2);
    Arc::new(CrossedModule::from_groups("(Z2,Z2,0)", &z2, &z2, |_, g| g, vec![0, 0]).expect("zero boundary"))
}

/// `(ℤ/4, ℤ/2, mod 2)` with trivial action.
pub fn xm_mod2() -> Arc<CrossedModule> {
    let (z4, z2) = (FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
    Arc::new(CrossedModule::from_groups("(Z4,Z2,mod2)", &z4, &z2, |_, g| g, vec![0, 1, 0, 1]).expect("mod 2"))
}

/// The crossed modules used for nerve comparisons and the per-module checks.
pub fn xmod_corpus() -> Vec<Arc<CrossedModule>> {
    vec![
        xm_group("Z2", &FiniteGroup::cyclic(2)),
        xm_indiscrete2(),
        xm_abelian(2),
        xm_abelian(3),
        xm_cyclic_conjugation(2),
        xm_cyclic_conjugation(3),
        xm_zero_boundary(),
        xm_mod2(),
    ]
}

/// A morphism between one-object crossed modules given by the map on the
/// base group and on the fiber.
pub fn one_object_morphism(
    name: &str,
    x: &Arc<CrossedModule>,
    y: &Arc<CrossedModule>,
    base: Vec<usize>,
    phi: Vec<usize>,
) -> XmodMorphism {
    XmodMorphism::new(name, x.clone(), y.clone(), vec![0], base, vec![phi])
}

/// The morphism `(1,1,1) → X` into a one-object crossed module.
pub fn point_inclusion(x: &Arc<CrossedModule>) -> XmodMorphism {
    let pt = xm_group("1", &FiniteGroup::trivial());
    one_object_morphism(&format!("pt->{}", x.name), &pt, x, vec![x.base().id(0)], vec![x.fiber(0).identity()])
}

/// Group homomorphisms as crossed-module morphisms with trivial fibers:
/// `id: ℤ/2 → ℤ/2` and `1 → ℤ/2`.
pub fn example_i() -> (XmodMorphism, XmodMorphism) {
    let z2 = xm_group("Z2", &FiniteGroup::cyclic(2));
    (XmodMorphism::identity(z2.clone()), point_inclusion(&z2))
}

/// Abelian groups over the trivial groupoid: `φ = φ′ = id` on `ℤ/2`.
pub fn example_ii() -> (XmodMorphism, XmodMorphism) {
    let a = xm_abelian(2);
    (XmodMorphism::identity(a.clone()), XmodMorphism::identity(a))
}

/// Cospans `X → Z ← X′` with a short name, used by the pullback, homotopy
/// group and exactness checks.
pub fn xmod_cospans() -> Vec<(String, XmodMorphism, XmodMorphism)> {
    let z2 = FiniteGroup::cyclic(2);
    let (c4, c2) = (xm_cyclic_conjugation(4), xm_cyclic_conjugation(2));
    let quotient = one_object_morphism("mod2", &c4, &c2, vec![0, 1, 0, 1], vec![0, 1, 0, 1]);
    let (m2, zb) = (xm_mod2(), xm_zero_boundary());
    let collapse = one_object_morphism("collapse", &m2, &zb, vec![0, 0], vec![0, 1, 0, 1]);
    let g2 = xm_group("Z2", &z2);
    let (ei, ei2) = example_i();
    let (eii, eii2) = example_ii();
    vec![
        ("example-i".into(), ei, ei2),
        ("example-ii".into(), eii, eii2),
        ("mod2-vs-id".into(), quotient, XmodMorphism::identity(c2)),
        ("collapse-vs-id".into(), collapse, XmodMorphism::identity(zb)),
        ("point-vs-point".into(), point_inclusion(&g2), point_inclusion(&g2)),
        ("indiscrete-identity".into(), XmodMorphism::identity(xm_indiscrete2()), XmodMorphism::identity(xm_indiscrete2())),
    ]
}

/// Small bicategories used for the bicategory-level checks: discrete,
/// one-object monoidal (strict and not) and a 2-groupoid with non-trivial
/// 2-cells.
pub fn bicategory_corpus() -> Vec<Arc<FiniteBicategory>> {
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
        crate::xmod::beta(&xm_zero_boundary()).expect("beta").bicategory().clone(),
    ]
}
