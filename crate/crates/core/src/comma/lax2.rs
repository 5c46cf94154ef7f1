use std::sync::Arc;

use rustc_hash::FxHashMap as Map;

use super::construction::{c1_label, c2_label, comma, Comma};
use crate::bicat::{check_isomorphism, BicategoryMap, Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::report::Violation;
use crate::tuple_label;

/// `F↓₂G := F↓P′` for lax `F: A → B` and `G: C → B`, where `P′` is the
/// projection `G↓B → B`. Cells are relabelled as the tuples `(a,f,b,g,c)`,
/// `(u,β,p,β′,v)` and `(α,δ,ρ)`.
#[derive(Clone, Debug)]
pub struct Comma2 {
    pub bicat: Arc<FiniteBicategory>,
    /// `F↓P′`, of which `bicat` is a relabelling with the same ids.
    pub outer: Comma,
    /// `G↓B`.
    pub inner: Comma,
    pub objects: Vec<(Obj, C1, Obj, C1, Obj)>,
    pub cells1: Vec<(C1, C2, C1, C2, C1)>,
    pub cells2: Vec<(C2, C2, C2)>,
}

pub fn comma2(f: &LaxMorphism, g: &LaxMorphism) -> Result<Comma2> {
    if f.direction != Direction::Lax || g.direction != Direction::Lax {
        return Err(Error::Direction("both functors must be lax".into()));
    }
    let b = &f.target;
    let inner = comma(g, &LaxMorphism::identity(b.clone(), Direction::Oplax))?;
    let outer = comma(f, &inner.projection_prime(Direction::Oplax)?)?;
    let (a, c) = (&f.source, &g.source);

    let objects: Vec<_> = outer
        .objects
        .iter()
        .map(|&(x, h, w)| {
            let (z, k, y) = inner.object(w);
            (x, h, y, k, z)
        })
        .collect();
    let cells1: Vec<_> = outer
        .cells1
        .iter()
        .map(|&(u, beta, w)| {
            let (v, beta2, p) = inner.cell1(w);
            (u, beta, p, beta2, v)
        })
        .collect();
    let cells2: Vec<_> = outer
        .cells2
        .iter()
        .map(|&(al, z)| {
            let (rho, delta) = inner.cell2(z);
            (al, delta, rho)
        })
        .collect();

    let mut bld = outer.bicat.to_builder();
    bld.name = format!("{}↓₂{}", f.name, g.name);
    for (i, &(x, h, y, k, z)) in objects.iter().enumerate() {
        bld.objects[i] = tuple_label(&[a.obj_label(x), b.c1_label(h), b.obj_label(y), b.c1_label(k), c.obj_label(z)]);
    }
    for (i, &(u, beta, p, beta2, v)) in cells1.iter().enumerate() {
        let cell = &outer.bicat.cells1()[i];
        let parts = [a.c1_label(u), b.c2_label(beta), b.c1_label(p), b.c2_label(beta2), c.c1_label(v)];
        bld.cells1[i].label = c1_label(&parts, &bld.objects[cell.src.idx()], &bld.objects[cell.dst.idx()]);
    }
    for (i, &(al, delta, rho)) in cells2.iter().enumerate() {
        let cell = &outer.bicat.cells2()[i];
        let parts = [a.c2_label(al), b.c2_label(delta), c.c2_label(rho)];
        bld.cells2[i].label = c2_label(&parts, &bld.cells1[cell.src.idx()].label, &bld.cells1[cell.dst.idx()].label);
    }
    Ok(Comma2 { bicat: Arc::new(bld.build()?), outer, inner, objects, cells1, cells2 })
}

/// The swap `F↓₂G → G↓₂F`, `(a,f,b,g,c) ↦ (c,g,b,f,a)`, found by looking
/// up the swapped data, together with the result of checking that it is a
/// strict isomorphism.
pub fn swap_isomorphism(fg: &Comma2, gf: &Comma2) -> Result<(BicategoryMap, Vec<Violation>)> {
    let obj: Map<_, Obj> = gf.objects.iter().enumerate().map(|(i, &x)| (x, Obj::from(i))).collect();
    let t = &gf.bicat;
    let s = &fg.bicat;
    let c1: Map<_, C1> = gf
        .cells1
        .iter()
        .enumerate()
        .map(|(i, &x)| ((t.src1(C1::from(i)), x, t.dst1(C1::from(i))), C1::from(i)))
        .collect();
    let c2: Map<_, C2> = gf
        .cells2
        .iter()
        .enumerate()
        .map(|(i, &x)| ((t.src2(C2::from(i)), x, t.dst2(C2::from(i))), C2::from(i)))
        .collect();
    let miss = || Error::Invalid("swapped cell missing".into());
    let map0 = fg
        .objects
        .iter()
        .map(|&(a, f, b, g, c)| obj.get(&(c, g, b, f, a)).copied().ok_or_else(miss))
        .collect::<Result<Vec<_>>>()?;
    let map1 = fg
        .cells1
        .iter()
        .enumerate()
        .map(|(i, &(u, be, p, be2, v))| {
            let k = C1::from(i);
            c1.get(&(map0[s.src1(k).idx()], (v, be2, p, be, u), map0[s.dst1(k).idx()])).copied().ok_or_else(miss)
        })
        .collect::<Result<Vec<_>>>()?;
    let map2 = fg
        .cells2
        .iter()
        .enumerate()
        .map(|(i, &(al, de, rho))| {
            let k = C2::from(i);
            c2.get(&(map1[s.src2(k).idx()], (rho, de, al), map1[s.dst2(k).idx()])).copied().ok_or_else(miss)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = BicategoryMap { map0, map1, map2 };
    let v = check_isomorphism(s, t, &m);
    Ok((m, v))
}
