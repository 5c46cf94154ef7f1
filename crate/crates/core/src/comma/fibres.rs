use std::sync::Arc;

use rustc_hash::FxHashMap as Map;

use super::construction::{comma, Comma};
use crate::bicat::{
    biequivalence_failures, check_isomorphism, discrete_bicategory, BicategoryMap, Claims, Direction, FiniteBicategory,
    LaxMorphism, LaxTransformation, Obj, C1, C2,
};
use crate::error::{Error, Result};
use crate::report::Violation;

/// `F↓b`, the comma of `F` with the oplax object homomorphism `b̂`.
pub fn fibre(f: &LaxMorphism, b: Obj) -> Result<Comma> {
    check_obj(&f.target, b)?;
    comma(f, &LaxMorphism::object_homomorphism(f.target.clone(), b, Direction::Oplax)?)
}

/// `b↓F′`.
pub fn fibre_under(b: Obj, fp: &LaxMorphism) -> Result<Comma> {
    check_obj(&fp.target, b)?;
    comma(&LaxMorphism::object_homomorphism(fp.target.clone(), b, Direction::Lax)?, fp)
}

fn check_obj(b: &FiniteBicategory, o: Obj) -> Result<()> {
    if o.idx() >= b.obj_count() {
        return Err(Error::Invalid(format!("object {} not in {}", o.0, b.name())));
    }
    Ok(())
}

/// A translation 2-functor between fibres.
#[derive(Clone, Debug)]
pub struct Translation {
    pub source: Comma,
    pub target: Comma,
    pub functor: LaxMorphism,
}

/// `p_*: F↓b₀ → F↓b₁` for `p: b₀ → b₁`, acting by `(a, f) ↦ (a, p∘f)` and
/// `β ↦ p⊙β = a⁻¹·(1∘β)·(1∘l⁻¹)·l`.
pub fn translate_lower(f: &LaxMorphism, p: C1) -> Result<Translation> {
    let b = &f.target;
    if p.idx() >= b.c1_count() {
        return Err(Error::Invalid(format!("1-cell {} not in {}", p.0, b.name())));
    }
    let source = fibre(f, b.src1(p))?;
    let target = fibre(f, b.dst1(p))?;
    let functor = lower_between(p, &source, &target)?;
    Ok(Translation { source, target, functor })
}

fn lower_between(p: C1, s: &Comma, t: &Comma) -> Result<LaxMorphism> {
    let b = &s.lax.target;
    let map0 = s
        .objects
        .iter()
        .map(|&(a, h, o)| t.need_obj(a, b.h1(p, h)?, o))
        .collect::<Result<Vec<_>>>()?;
    let mut map1 = Vec::with_capacity(s.cells1.len());
    for c in s.bicat.c1s() {
        let (u, beta, w) = s.cell1(c);
        let (x0, x1) = (s.bicat.src1(c), s.bicat.dst1(c));
        let (h0, h1) = (s.object(x0).1, s.object(x1).1);
        let fu = s.lax.c1(u);
        let cell = b.chain(&[
            b.lunit(b.h1(p, h0)?),
            b.wl(p, b.inv(b.lunit(h0))?)?,
            b.wl(p, beta)?,
            b.inv(b.assoc(p, h1, fu)?)?,
        ])?;
        map1.push(t.need_c1(map0[x0.idx()], u, cell, w, map0[x1.idx()])?);
    }
    let map2 = map_cells2(s, t, &map1)?;
    LaxMorphism::strict(
        format!("{}_*", b.c1_label(p)),
        s.bicat.clone(),
        t.bicat.clone(),
        map0,
        map1,
        map2,
        Direction::Lax,
    )
}

fn map_cells2(s: &Comma, t: &Comma, map1: &[C1]) -> Result<Vec<C2>> {
    s.bicat
        .c2s()
        .map(|x| {
            let (al, al2) = s.cell2(x);
            t.need_c2(map1[s.bicat.src2(x).idx()], al, al2, map1[s.bicat.dst2(x).idx()])
        })
        .collect()
}

/// `p^*: b₁↓F′ → b₀↓F′` for `p: b₀ → b₁`, acting by `(f, a′) ↦ (f∘p, a′)`
/// and `β ↦ β⊙p = r⁻¹·(r∘1)·(β∘1)·a⁻¹`.
pub fn translate_upper(fp: &LaxMorphism, p: C1) -> Result<Translation> {
    let b = &fp.target;
    if p.idx() >= b.c1_count() {
        return Err(Error::Invalid(format!("1-cell {} not in {}", p.0, b.name())));
    }
    let s = fibre_under(b.dst1(p), fp)?;
    let t = fibre_under(b.src1(p), fp)?;
    let map0 = s
        .objects
        .iter()
        .map(|&(o, h, a2)| t.need_obj(o, b.h1(h, p)?, a2))
        .collect::<Result<Vec<_>>>()?;
    let mut map1 = Vec::with_capacity(s.cells1.len());
    for c in s.bicat.c1s() {
        let (w, beta, u2) = s.cell1(c);
        let (x0, x1) = (s.bicat.src1(c), s.bicat.dst1(c));
        let (h0, h1) = (s.object(x0).1, s.object(x1).1);
        let cell = b.chain(&[
            b.inv(b.assoc(fp.c1(u2), h0, p)?)?,
            b.wr(beta, p)?,
            b.wr(b.runit(h1), p)?,
            b.inv(b.runit(b.h1(h1, p)?))?,
        ])?;
        map1.push(t.need_c1(map0[x0.idx()], w, cell, u2, map0[x1.idx()])?);
    }
    let map2 = map_cells2(&s, &t, &map1)?;
    let functor = LaxMorphism::strict(
        format!("{}^*", b.c1_label(p)),
        s.bicat.clone(),
        t.bicat.clone(),
        map0,
        map1,
        map2,
        Direction::Lax,
    )?;
    Ok(Translation { source: s, target: t, functor })
}

/// Comparison of `(p∘q)_*` with `p_*∘q_*` on `F↓b₀`.
#[derive(Clone, Debug)]
pub struct TranslationComparison {
    /// The two sides agree as tables.
    pub strictly_equal: bool,
    /// The invertible transformation `(p∘q)_* ⇒ p_*∘q_*` with components
    /// `(1_a, (1∘F̂_a)·r⁻¹·a·l, 1)`.
    pub transformation: LaxTransformation,
}

pub fn composite_translation_comparison(f: &LaxMorphism, p: C1, q: C1) -> Result<TranslationComparison> {
    let b = &f.target;
    let a = &f.source;
    if b.dst1(q) != b.src1(p) {
        return Err(Error::NotComposable(b.c1_label(p).into(), b.c1_label(q).into()));
    }
    let (f0, f1, f2) = (fibre(f, b.src1(q))?, fibre(f, b.dst1(q))?, fibre(f, b.dst1(p))?);
    let qs = lower_between(q, &f0, &f1)?;
    let ps = lower_between(p, &f1, &f2)?;
    let pq = lower_between(b.h1(p, q)?, &f0, &f2)?;
    let both = qs.then(&ps)?;
    let strictly_equal = pq.table_eq(&both);
    let t = &f2.bicat;
    let zero = f0.oplax.source.id1(Obj(0));
    let mut comp0 = Vec::new();
    for (i, &(x, h, _)) in f0.objects.iter().enumerate() {
        let src = pq.ob(Obj::from(i));
        let dst = both.ob(Obj::from(i));
        let hh = f2.object(dst).1;
        let cell = b.chain(&[
            b.lunit(f2.object(src).1),
            b.assoc(p, q, h)?,
            b.inv(b.runit(hh))?,
            b.wl(hh, f.unit_cell(x))?,
        ])?;
        comp0.push(f2.need_c1(src, a.id1(x), cell, zero, dst)?);
    }
    let ap = &f0.oplax.source;
    let mut natcell = Vec::new();
    for c in f0.bicat.c1s() {
        let u = f0.cell1(c).0;
        let (x0, x1) = (f0.bicat.src1(c), f0.bicat.dst1(c));
        let lhs = t.h1(both.c1(c), comp0[x0.idx()])?;
        let rhs = t.h1(comp0[x1.idx()], pq.c1(c))?;
        let first = a.v(a.inv(a.lunit(u))?, a.runit(u))?;
        natcell.push(f2.need_c2(lhs, first, ap.id2(ap.h1(zero, zero)?), rhs)?);
    }
    Ok(TranslationComparison {
        strictly_equal,
        transformation: LaxTransformation {
            name: format!("({}∘{})_*⇒{}_*{}_*", b.c1_label(p), b.c1_label(q), b.c1_label(p), b.c1_label(q)),
            direction: Direction::Lax,
            source: pq,
            target: both,
            comp0,
            natcell,
        },
    })
}

/// The isomorphism `b↓b′ ≅ B(b,b′)` sending `β` to `r·β·l⁻¹`.
#[derive(Clone, Debug)]
pub struct HomIsomorphism {
    pub comma: Comma,
    pub hom: FiniteBicategory,
    pub map: BicategoryMap,
    pub violations: Vec<Violation>,
}

pub fn hom_isomorphism(b: &Arc<FiniteBicategory>, x: Obj, y: Obj) -> Result<HomIsomorphism> {
    let c = comma(
        &LaxMorphism::object_homomorphism(b.clone(), x, Direction::Lax)?,
        &LaxMorphism::object_homomorphism(b.clone(), y, Direction::Oplax)?,
    )?;
    let hom = discrete_bicategory(&b.hom_category(x, y))?;
    let lookup = |found: Option<usize>, what: &str| found.ok_or_else(|| Error::Invalid(format!("{what} missing from hom")));
    let map0 = c
        .objects
        .iter()
        .map(|&(_, h, _)| hom.find_obj(b.c1_label(h)).ok_or_else(|| Error::Invalid("object missing from hom".into())))
        .collect::<Result<Vec<_>>>()?;
    let mut map1 = Vec::new();
    for k in c.bicat.c1s() {
        let beta = c.cell1(k).1;
        let f0 = c.object(c.bicat.src1(k)).1;
        let f1 = c.object(c.bicat.dst1(k)).1;
        let theta = b.chain(&[b.inv(b.lunit(f0))?, beta, b.runit(f1)])?;
        map1.push(C1::from(lookup(hom.find_c1(b.c2_label(theta)).map(|x| x.idx()), "1-cell")?));
    }
    let map2 = c.bicat.c2s().map(|z| hom.id2(map1[c.bicat.src2(z).idx()])).collect();
    let map = BicategoryMap { map0, map1, map2 };
    let violations = check_isomorphism(&c.bicat, &hom, &map);
    Ok(HomIsomorphism { comma: c, hom, map, violations })
}

/// `J: Fa↓F′ → F↓F′`, returning the source comma and the normal homomorphism.
pub fn inclusion_j(target: &Comma, a: Obj) -> Result<(Comma, LaxMorphism)> {
    let (f, fp) = (&target.lax, &target.oplax);
    let (ab, ab2, b) = (&f.source, &fp.source, &f.target);
    let s = fibre_under(f.ob(a), fp)?;
    let fa = f.unit_cell(a);
    let one = ab.id1(a);
    let map0 = s.objects.iter().map(|&(_, h, a2)| target.need_obj(a, h, a2)).collect::<Result<Vec<_>>>()?;
    let mut map1 = Vec::new();
    for c in s.bicat.c1s() {
        let (_, beta, u2) = s.cell1(c);
        let (x0, x1) = (s.bicat.src1(c), s.bicat.dst1(c));
        let h1 = s.object(x1).1;
        let cell = b.v(b.wl(h1, fa)?, beta)?;
        map1.push(target.need_c1(map0[x0.idx()], one, cell, u2, map0[x1.idx()])?);
    }
    let map2 = s
        .bicat
        .c2s()
        .map(|z| target.need_c2(map1[s.bicat.src2(z).idx()], ab.id2(one), s.cell2(z).1, map1[s.bicat.dst2(z).idx()]))
        .collect::<Result<Vec<_>>>()?;
    let lcell = ab.lunit(one);
    let mut comp = Map::default();
    for c1 in s.bicat.c1s() {
        for &c2 in s.bicat.out1(s.bicat.dst1(c1)) {
            let src = target.bicat.h1(map1[c2.idx()], map1[c1.idx()])?;
            let dst = map1[s.bicat.h1(c2, c1)?.idx()];
            let v = ab2.h1(s.cell1(c2).2, s.cell1(c1).2)?;
            comp.insert((c2, c1), target.need_c2(src, lcell, ab2.id2(v), dst)?);
        }
    }
    let unit = normal_units(&s.bicat, &target.bicat, &map0, &map1, "J")?;
    Ok((
        s.clone(),
        LaxMorphism {
            name: format!("J[{}]", ab.obj_label(a)),
            direction: Direction::Lax,
            source: s.bicat.clone(),
            target: target.bicat.clone(),
            map0,
            map1,
            map2,
            comp,
            unit,
            claims: Claims { normal: true, pseudo: true, strict: false },
        },
    ))
}

/// `J′: F↓F′a′ → F↓F′`.
pub fn inclusion_j_prime(target: &Comma, a2: Obj) -> Result<(Comma, LaxMorphism)> {
    let (f, fp) = (&target.lax, &target.oplax);
    let (ab, ab2, b) = (&f.source, &fp.source, &f.target);
    let s = fibre(f, fp.ob(a2))?;
    let fa = fp.unit_cell(a2);
    let one = ab2.id1(a2);
    let map0 = s.objects.iter().map(|&(a, h, _)| target.need_obj(a, h, a2)).collect::<Result<Vec<_>>>()?;
    let mut map1 = Vec::new();
    for c in s.bicat.c1s() {
        let (u, beta, _) = s.cell1(c);
        let (x0, x1) = (s.bicat.src1(c), s.bicat.dst1(c));
        let h0 = s.object(x0).1;
        let cell = b.v(beta, b.wr(fa, h0)?)?;
        map1.push(target.need_c1(map0[x0.idx()], u, cell, one, map0[x1.idx()])?);
    }
    let map2 = s
        .bicat
        .c2s()
        .map(|z| target.need_c2(map1[s.bicat.src2(z).idx()], s.cell2(z).0, ab2.id2(one), map1[s.bicat.dst2(z).idx()]))
        .collect::<Result<Vec<_>>>()?;
    let lcell = ab2.lunit(one);
    let mut comp = Map::default();
    for c1 in s.bicat.c1s() {
        for &c2 in s.bicat.out1(s.bicat.dst1(c1)) {
            let src = target.bicat.h1(map1[c2.idx()], map1[c1.idx()])?;
            let dst = map1[s.bicat.h1(c2, c1)?.idx()];
            let u = ab.h1(s.cell1(c2).0, s.cell1(c1).0)?;
            comp.insert((c2, c1), target.need_c2(src, ab.id2(u), lcell, dst)?);
        }
    }
    let unit = normal_units(&s.bicat, &target.bicat, &map0, &map1, "J'")?;
    Ok((
        s.clone(),
        LaxMorphism {
            name: format!("J'[{}]", ab2.obj_label(a2)),
            direction: Direction::Lax,
            source: s.bicat.clone(),
            target: target.bicat.clone(),
            map0,
            map1,
            map2,
            comp,
            unit,
            claims: Claims { normal: true, pseudo: true, strict: false },
        },
    ))
}

fn normal_units(s: &FiniteBicategory, t: &FiniteBicategory, map0: &[Obj], map1: &[C1], name: &str) -> Result<Vec<C2>> {
    s.objs()
        .map(|o| {
            let img = map1[s.id1(o).idx()];
            if img != t.id1(map0[o.idx()]) {
                return Err(Error::Invalid(format!("{name} does not preserve the identity of `{}`", s.obj_label(o))));
            }
            Ok(t.id2(img))
        })
        .collect()
}

/// Outcome of the sufficient test for property B: every `p_*` is checked
/// for being a biequivalence.
#[derive(Clone, Debug)]
pub struct PropertyB {
    pub holds_sufficient: bool,
    /// For each 1-cell `p` of the target, the reasons `p_*` is not a
    /// biequivalence (empty when it is one).
    pub witnesses: Vec<(String, Vec<String>)>,
}

pub fn property_b_witness(f: &LaxMorphism) -> Result<PropertyB> {
    let b = &f.target;
    let fibres = b.objs().map(|o| fibre(f, o)).collect::<Result<Vec<_>>>()?;
    let witnesses = crate::exec::map(&b.c1s().collect::<Vec<_>>(), |&p| -> Result<(String, Vec<String>)> {
        let ps = lower_between(p, &fibres[b.src1(p).idx()], &fibres[b.dst1(p).idx()])?;
        Ok((b.c1_label(p).to_string(), biequivalence_failures(&ps)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(PropertyB { holds_sufficient: witnesses.iter().all(|w| w.1.is_empty()), witnesses })
}
