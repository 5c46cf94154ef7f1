use std::ops::Deref;
use std::sync::Arc;

use super::crossed::{CrossedModule, XmodMorphism};
use crate::algebra::{CategoryBuilder, FiniteGroup, FiniteGroupoid, PGroup};
use crate::bicat::{
    check_isomorphism, BicategoryBuilder, BicategoryMap, Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2,
};
use crate::error::{Error, Result};
use crate::report::Violation;
use crate::tuple_label;

/// A strict bicategory whose 1-cells and 2-cells are all invertible.
#[derive(Clone, Debug)]
pub struct TwoGroupoid(Arc<FiniteBicategory>);

impl Deref for TwoGroupoid {
    type Target = FiniteBicategory;
    fn deref(&self) -> &FiniteBicategory {
        &self.0
    }
}

impl TwoGroupoid {
    pub fn new(b: Arc<FiniteBicategory>) -> Result<Self> {
        let v = two_groupoid_violations(&b);
        if let Some(first) = v.first() {
            return Err(Error::Invalid(format!("{} is not a strict 2-groupoid: {} at {}", b.name(), first.axiom, first.instance)));
        }
        Ok(TwoGroupoid(b))
    }

    pub fn bicategory(&self) -> &Arc<FiniteBicategory> {
        &self.0
    }
}

pub fn two_groupoid_violations(b: &FiniteBicategory) -> Vec<Violation> {
    let mut out = Vec::new();
    for f in b.c1s() {
        if !b.is_id2(b.lunit(f)) || !b.is_id2(b.runit(f)) {
            out.push(Violation::axiom("strict", format!("unitors of `{}`", b.c1_label(f)), b.c2_label(b.lunit(f)), b.c2_label(b.runit(f))));
        }
    }
    for (&(h, g, f), &a) in b.assoc_table() {
        if !b.is_id2(a) {
            out.push(Violation::axiom("strict", tuple_label(&[b.c1_label(h), b.c1_label(g), b.c1_label(f)]), b.c2_label(a), "identity"));
        }
    }
    for f in b.c1s() {
        let (x, y) = (b.src1(f), b.dst1(f));
        let invertible = b.hom1(y, x).iter().any(|&g| b.try_hcomp1(g, f) == Some(b.id1(x)) && b.try_hcomp1(f, g) == Some(b.id1(y)));
        if !invertible {
            out.push(Violation::axiom("1-cell-invertible", b.c1_label(f), "", ""));
        }
    }
    for a in b.c2s() {
        if !b.is_invertible(a) {
            out.push(Violation::axiom("2-cell-invertible", b.c2_label(a), "", ""));
        }
    }
    out.sort();
    out
}

/// Position of the 2-cell `(g, p)` of `β(X)`: 2-cells are listed by
/// 1-cell, then by fiber element.
pub(crate) fn offsets(x: &CrossedModule) -> Vec<usize> {
    let p = x.base();
    let mut off = Vec::with_capacity(p.morphism_count() + 1);
    let mut n = 0;
    for m in 0..p.morphism_count() {
        off.push(n);
        n += x.fiber(p.src(m)).order();
    }
    off.push(n);
    off
}

/// `β(X)`: objects and 1-cells from `𝒫`; a 2-cell `g: p ⇒ p̄` for each
/// `g ∈ 𝒢(a)` with `p̄∘∂g = p`, labelled `(g,p)`. Vertical composition is
/// the product `ḡ·g`, horizontal composition `^{p̄₁⁻¹}g₂·g₁`.
pub fn beta(x: &CrossedModule) -> Result<TwoGroupoid> {
    let p = x.base();
    let off = offsets(x);
    let mut b = BicategoryBuilder::new(format!("B{}", x.name));
    for o in p.objects() {
        b.object(o.clone());
    }
    for m in p.morphisms() {
        b.cell1(m.label.clone(), Obj::from(m.src), Obj::from(m.dst));
    }
    let target = |m: usize, g: usize| p.comp(m, x.d(p.src(m), x.fiber(p.src(m)).inv(g)));
    for m in 0..p.morphism_count() {
        let g = x.fiber(p.src(m));
        for e in g.elements() {
            b.cell2(tuple_label(&[g.label(e), p.label(m)]), C1::from(m), C1::from(target(m, e)));
        }
    }
    let cell = |m: usize, e: usize| C2::from(off[m] + e);
    for o in 0..p.object_count() {
        b.set_id1(Obj::from(o), C1::from(p.id(o)));
    }
    for m in 0..p.morphism_count() {
        let a = p.src(m);
        let g = x.fiber(a);
        let id = cell(m, g.identity());
        b.set_id2(C1::from(m), id);
        b.set_lunit(C1::from(m), id);
        b.set_runit(C1::from(m), id);
        for e in g.elements() {
            let mid = target(m, e);
            for e2 in g.elements() {
                b.set_vcomp(cell(mid, e2), cell(m, e), cell(m, g.mul(e2, e)));
            }
        }
    }
    for (&(m2, m1), &m21) in p.composition_table() {
        let (a, bb) = (p.src(m1), p.src(m2));
        let (g1, g2) = (x.fiber(a), x.fiber(bb));
        for e1 in g1.elements() {
            let back = p.inv(target(m1, e1));
            for e2 in g2.elements() {
                let h = g1.mul(x.act(back, e2), e1);
                b.set_hcomp2(cell(m2, e2), cell(m1, e1), cell(m21, h));
            }
        }
        b.set_hcomp1(C1::from(m2), C1::from(m1), C1::from(m21));
        for &m3 in p.out(p.dst(m2)) {
            let all = p.comp(m3, m21);
            b.set_assoc(C1::from(m3), C1::from(m2), C1::from(m1), cell(all, g1.identity()));
        }
    }
    TwoGroupoid::new(Arc::new(b.build()?))
}

/// `β(φ, F)`: the strict 2-functor `(g, p) ↦ (φg, Fp)`.
pub fn beta_on_morphism(m: &XmodMorphism) -> Result<LaxMorphism> {
    let (x, y) = (&m.source, &m.target);
    let s = beta(x)?;
    let t = beta(y)?;
    let (px, off_y) = (x.base(), offsets(y));
    let mut map2 = Vec::new();
    for q in 0..px.morphism_count() {
        let a = px.src(q);
        for e in x.fiber(a).elements() {
            map2.push(C2::from(off_y[m.mor(q)] + m.phi[a][e]));
        }
    }
    LaxMorphism::strict(
        format!("B{}", m.name),
        s.bicategory().clone(),
        t.bicategory().clone(),
        m.functor.obj_map.iter().map(|&o| Obj::from(o)).collect(),
        m.functor.mor_map.iter().map(|&f| C1::from(f)).collect(),
        map2,
        Direction::Lax,
    )
}

/// The crossed module of a strict 2-groupoid: the underlying groupoid of
/// 1-cells, `𝒢(a)` the 2-cells `α: u ⇒ 1_a`, `∂α = u`, and `ᵖα = 1_p∘α∘1_{p⁻¹}`.
pub fn beta_inverse(k: &TwoGroupoid) -> Result<CrossedModule> {
    let mut cb = CategoryBuilder::new(k.name().to_string());
    for o in k.objects() {
        cb.object(o.clone());
    }
    for c in k.cells1() {
        cb.morphism(c.label.clone(), c.src.idx(), c.dst.idx());
    }
    for o in k.objs() {
        cb.identity(o.idx(), k.id1(o).idx());
    }
    for (&(g, f), &gf) in k.hcomp1_table() {
        cb.compose(g.idx(), f.idx(), gf.idx());
    }
    let p = Arc::new(FiniteGroupoid::from_category(cb.build()?)?);
    // 2-cells into the identity, per object, in id order
    let mut elems: Vec<Vec<C2>> = vec![Vec::new(); k.obj_count()];
    for a in k.c2s() {
        let u = k.dst2(a);
        if k.is_id1(u) {
            elems[k.src1(u).idx()].push(a);
        }
    }
    let pos = |o: usize, a: C2| elems[o].iter().position(|&e| e == a);
    let mut fibers = Vec::new();
    for (o, es) in elems.iter().enumerate() {
        let labels = es.iter().map(|&a| k.c2_label(a).to_string()).collect();
        let g = FiniteGroup::from_fn(labels, |i, j| pos(o, k.h2(es[i], es[j]).unwrap()).unwrap())?;
        fibers.push(g);
    }
    let mut action = Vec::new();
    for q in 0..p.morphism_count() {
        let (a, b) = (p.src(q), p.dst(q));
        let (qc, qi) = (C1::from(q), C1::from(p.inv(q)));
        let row = elems[a]
            .iter()
            .map(|&al| {
                let c = k.h2(k.h2(k.id2(qc), al)?, k.id2(qi))?;
                pos(b, c).ok_or_else(|| Error::Invalid("conjugate 2-cell does not end at an identity".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        action.push(row);
    }
    let boundary = elems.iter().map(|es| es.iter().map(|&a| k.src2(a).idx()).collect()).collect();
    CrossedModule::new(format!("X{}", k.name()), PGroup { base: p, fibers, action }, boundary)
}

/// `X ≅ β⁻¹β(X)` by `g ↦ (g, ∂g)`. Returns the rebuilt crossed module,
/// the comparison morphism and whatever stops it from being an isomorphism.
pub fn roundtrip_xmod(x: &Arc<CrossedModule>) -> Result<(Arc<CrossedModule>, XmodMorphism, Vec<Violation>)> {
    let k = beta(x)?;
    let y = Arc::new(beta_inverse(&k)?);
    let p = x.base();
    let mut phi = Vec::new();
    for a in 0..p.object_count() {
        let g = x.fiber(a);
        let h = y.fiber(a);
        let row: Option<Vec<usize>> = g
            .elements()
            .map(|e| h.find(&tuple_label(&[g.label(e), p.label(x.d(a, e))])))
            .collect();
        phi.push(row.ok_or_else(|| Error::Mismatch("roundtrip lost a fiber element".into()))?);
    }
    let m = XmodMorphism::new(
        "roundtrip",
        x.clone(),
        y.clone(),
        (0..p.object_count()).collect(),
        (0..p.morphism_count()).collect(),
        phi,
    );
    let mut v = m.violations();
    if v.is_empty() && !m.is_isomorphism() {
        v.push(Violation::axiom("roundtrip-isomorphism", x.name.clone(), "", "not bijective"));
    }
    Ok((y, m, v))
}

/// `K ≅ ββ⁻¹(K)` by `(α: u ⇒ ū) ↦ (1_{ū⁻¹}∘α, u)`.
pub fn roundtrip_two_groupoid(k: &TwoGroupoid) -> Result<(TwoGroupoid, BicategoryMap, Vec<Violation>)> {
    let x = beta_inverse(k)?;
    let kk = beta(&x)?;
    let p = x.base();
    let mut map2 = Vec::new();
    for a in k.c2s() {
        let (u, ub) = (k.src2(a), k.dst2(a));
        let g = k.h2(k.id2(C1::from(p.inv(ub.idx()))), a)?;
        let lab = tuple_label(&[k.c2_label(g), k.c1_label(u)]);
        map2.push(kk.find_c2(&lab).ok_or_else(|| Error::Mismatch(format!("no 2-cell `{lab}` after the roundtrip")))?);
    }
    let m = BicategoryMap { map0: k.objs().collect(), map1: k.c1s().collect(), map2 };
    let v = check_isomorphism(k, &kk, &m);
    Ok((kk, m, v))
}
