use std::sync::Arc;

use rustc_hash::FxHashMap as Map;

use super::category::{MonoidalCategory, MonoidalFunctor};
use crate::bicat::{BicategoryBuilder, Claims, Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use crate::comma::{c1_label, c2_label};
use crate::error::{Error, Result};
use crate::{tuple_label, Limits};

/// `F↓⊗F′` for monoidal functors `F: A → M ← A′: F′`, built directly from
/// the monoidal data. Objects are objects `m` of `M`; 1-cells `(n, f, n′)`
/// with `f: F′n′⊗m₀ → m₁⊗Fn`; 2-cells `(u, u′)` with
/// `f̄∘(F′u′⊗1) = (1⊗Fu)∘f`.
#[derive(Clone, Debug)]
pub struct MonoidalFibre {
    pub bicat: Arc<FiniteBicategory>,
    pub objects: Vec<usize>,
    pub cells1: Vec<(usize, usize, usize)>,
    pub cells2: Vec<(usize, usize)>,
    c1_index: Map<(usize, usize, usize, usize, usize), C1>,
    c2_index: Map<(C1, usize, usize, C1), C2>,
}

impl MonoidalFibre {
    fn c1(&self, m0: usize, n: usize, f: usize, n2: usize, m1: usize) -> Result<C1> {
        self.c1_index
            .get(&(m0, n, f, n2, m1))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("no 1-cell ({n},{f},{n2}) in {}", self.bicat.name())))
    }

    fn c2(&self, s: C1, u: usize, u2: usize, t: C1) -> Result<C2> {
        self.c2_index
            .get(&(s, u, u2, t))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("no 2-cell ({u},{u2}) in {}", self.bicat.name())))
    }
}

pub fn monoidal_fibre(f: &MonoidalFunctor, fp: &MonoidalFunctor) -> Result<MonoidalFibre> {
    monoidal_fibre_with_limits(f, fp, &Limits::default())
}

pub fn monoidal_fibre_with_limits(f: &MonoidalFunctor, fp: &MonoidalFunctor, limits: &Limits) -> Result<MonoidalFibre> {
    if !(Arc::ptr_eq(&f.target, &fp.target) || *f.target == *fp.target) {
        return Err(Error::Mismatch(format!("{} and {} have different codomains", f.name, fp.name)));
    }
    let m: &MonoidalCategory = &f.target;
    let c = &*m.category;
    let (sa, sa2) = (&*f.source.category, &*fp.source.category);
    let star = |mc: &MonoidalCategory| mc.delooping().obj_label(Obj(0)).to_string();
    let (s0, s1) = (star(&f.source), star(&fp.source));
    let mut out = BicategoryBuilder::new(format!("Σ{}↓Σ{}", f.name, fp.name));
    let objects: Vec<usize> = (0..c.object_count()).collect();
    for &x in &objects {
        out.object(tuple_label(&[&s0, c.object_label(x), &s1]));
    }
    let fo = |n: usize| f.obj_map[n];
    let fpo = |n: usize| fp.obj_map[n];

    let mut cells1 = Vec::new();
    let mut c1_index = Map::default();
    let mut hom1: Map<(usize, usize), Vec<C1>> = Map::default();
    for n in 0..sa.object_count() {
        for n2 in 0..sa2.object_count() {
            for &m0 in &objects {
                let top = m.t(fpo(n2), m0);
                for &m1 in &objects {
                    let bottom = m.t(m1, fo(n));
                    for &g in c.hom(top, bottom) {
                        let label = c1_label(
                            &[sa.object_label(n), c.label(g), sa2.object_label(n2)],
                            &out.objects[m0],
                            &out.objects[m1],
                        );
                        let k = out.cell1(label, Obj::from(m0), Obj::from(m1));
                        cells1.push((n, g, n2));
                        c1_index.insert((m0, n, g, n2, m1), k);
                        hom1.entry((m0, m1)).or_default().push(k);
                    }
                }
            }
        }
        limits.check("monoidal fibre 1-cells", cells1.len())?;
    }

    let mut cells2 = Vec::new();
    let mut c2_index = Map::default();
    let mut out2: Vec<Vec<C2>> = vec![Vec::new(); cells1.len()];
    for s in 0..cells1.len() {
        let sc = C1::from(s);
        let (m0, m1) = (out.cells1[s].src.idx(), out.cells1[s].dst.idx());
        let (ns, gs, ns2) = cells1[s];
        for &tc in &hom1[&(m0, m1)] {
            let (nt, gt, nt2) = cells1[tc.idx()];
            for &u in sa.hom(ns, nt) {
                let right = m.comp(m.tm(m.id(m1), f.mor_map[u]), gs);
                for &u2 in sa2.hom(ns2, nt2) {
                    let left = m.comp(gt, m.tm(fp.mor_map[u2], m.id(m0)));
                    if left != right {
                        continue;
                    }
                    let label = c2_label(&[sa.label(u), sa2.label(u2)], &out.cells1[s].label, &out.cells1[tc.idx()].label);
                    let z = out.cell2(label, sc, tc);
                    cells2.push((u, u2));
                    c2_index.insert((sc, u, u2, tc), z);
                    out2[s].push(z);
                }
            }
        }
        limits.check("monoidal fibre 2-cells", cells2.len())?;
    }

    let mut fib = MonoidalFibre {
        bicat: crate::bicat::terminal_bicategory(),
        objects,
        cells1,
        cells2,
        c1_index,
        c2_index,
    };
    fill(f, fp, &mut fib, &mut out, &out2)?;
    fib.bicat = Arc::new(out.build()?);
    Ok(fib)
}

fn fill(f: &MonoidalFunctor, fp: &MonoidalFunctor, fib: &mut MonoidalFibre, out: &mut BicategoryBuilder, out2: &[Vec<C2>]) -> Result<()> {
    let m: &MonoidalCategory = &f.target;
    let (ma, ma2) = (&*f.source, &*fp.source);
    let na = ma.object_count();
    let na2 = ma2.object_count();
    let srcs: Vec<usize> = out.cells1.iter().map(|x| x.src.idx()).collect();
    let dsts: Vec<usize> = out.cells1.iter().map(|x| x.dst.idx()).collect();
    let dst2s: Vec<C1> = out.cells2.iter().map(|x| x.dst).collect();
    let n1 = fib.cells1.len();
    let mut out1: Vec<Vec<C1>> = vec![Vec::new(); fib.objects.len()];
    for i in 0..n1 {
        out1[srcs[i]].push(C1::from(i));
    }
    let fcomp = |x: usize, y: usize| f.comp[x * na + y];
    let fpcomp_inv = |x: usize, y: usize| m.inv(fp.comp[x * na2 + y]);

    // identities: 1̊_m = (1⊗F̂₀)∘r⁻¹∘l∘(F̂′₀⁻¹⊗1)
    let mut ids = Vec::new();
    for &x in &fib.objects {
        let g = m.chain(&[
            m.tm(m.inv(fp.unit)?, m.id(x)),
            m.l(x),
            m.inv(m.r(x))?,
            m.tm(m.id(x), f.unit),
        ]);
        let k = fib.c1(x, ma.unit, g, ma2.unit, x)?;
        out.set_id1(Obj::from(x), k);
        ids.push(k);
    }
    // composites: f₂⊚f₁
    let mut hcomp1 = Map::default();
    for i in 0..n1 {
        let (n1_, g1, n1p) = fib.cells1[i];
        let (m0, m1) = (srcs[i], dsts[i]);
        for &k2 in &out1[m1] {
            let (n2_, g2, n2p) = fib.cells1[k2.idx()];
            let m2 = dsts[k2.idx()];
            let (fn1, fn2) = (f.obj_map[n1_], f.obj_map[n2_]);
            let (fpn1, fpn2) = (fp.obj_map[n1p], fp.obj_map[n2p]);
            let g = m.chain(&[
                m.tm(fpcomp_inv(n2p, n1p)?, m.id(m0)),
                m.a(fpn2, fpn1, m0),
                m.tm(m.id(fpn2), g1),
                m.inv(m.a(fpn2, m1, fn1))?,
                m.tm(g2, m.id(fn1)),
                m.a(m2, fn2, fn1),
                m.tm(m.id(m2), fcomp(n2_, n1_)),
            ]);
            let r = fib.c1(m0, ma.t(n2_, n1_), g, ma2.t(n2p, n1p), m2)?;
            hcomp1.insert((k2, C1::from(i)), r);
        }
    }
    let h1 = |g: C1, f: C1| hcomp1[&(g, f)];
    for i in 0..n1 {
        let k = C1::from(i);
        let (n, _, n2) = fib.cells1[i];
        out.set_id2(k, fib.c2(k, ma.id(n), ma2.id(n2), k)?);
        out.set_lunit(k, fib.c2(h1(ids[dsts[i]], k), ma.l(n), ma2.l(n2), k)?);
        out.set_runit(k, fib.c2(h1(k, ids[srcs[i]]), ma.r(n), ma2.r(n2), k)?);
        for &k2 in &out1[dsts[i]] {
            let (nb, _, nb2) = fib.cells1[k2.idx()];
            for &k3 in &out1[dsts[k2.idx()]] {
                let (nc, _, nc2) = fib.cells1[k3.idx()];
                let z = fib.c2(h1(h1(k3, k2), k), ma.a(nc, nb, n), ma2.a(nc2, nb2, n2), h1(k3, h1(k2, k)))?;
                out.set_assoc(k3, k2, k, z);
            }
        }
    }
    for (kk, &r) in &hcomp1 {
        out.set_hcomp1(kk.0, kk.1, r);
    }
    for (s, list) in out2.iter().enumerate() {
        let s1 = C1::from(s);
        for &x in list {
            let t = dst2s[x.idx()];
            let (u, u2) = fib.cells2[x.idx()];
            for &y in &out2[t.idx()] {
                let (v, v2) = fib.cells2[y.idx()];
                out.set_vcomp(y, x, fib.c2(s1, ma.comp(v, u), ma2.comp(v2, u2), dst2s[y.idx()])?);
            }
            for &s2 in &out1[dsts[s]] {
                for &y in &out2[s2.idx()] {
                    let (v, v2) = fib.cells2[y.idx()];
                    let z = fib.c2(h1(s2, s1), ma.tm(v, u), ma2.tm(v2, u2), h1(dst2s[y.idx()], t))?;
                    out.set_hcomp2(y, x, z);
                }
            }
        }
    }
    Ok(())
}

/// The monoidal functor `I: [0] → M` picking out the unit, with structure
/// `l_I: I⊗I → I` and identity unit cell.
pub fn unit_functor(m: Arc<MonoidalCategory>) -> Result<MonoidalFunctor> {
    let triv = Arc::new(MonoidalCategory::discrete_monoid("[0]", vec!["0".into()], vec![0], 0)?);
    Ok(MonoidalFunctor {
        name: "I".into(),
        obj_map: vec![m.unit],
        mor_map: vec![m.id(m.unit)],
        comp: vec![m.l(m.unit)],
        unit: m.id(m.unit),
        source: triv,
        target: m,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `m⊗−` on `F↓⊗I`.
    Left,
    /// `−⊗m` on `I↓⊗F`.
    Right,
}

/// The strict 2-endofunctor `m⊗−` of `F↓⊗I` (acting on 1-cells by
/// `m⊙f = a⁻¹∘(1⊗f)∘(1⊗l⁻¹)∘l`) or `−⊗m` of `I↓⊗F` (acting by
/// `g⊙m = r⁻¹∘(r⊗1)∘(g⊗1)∘a⁻¹`). Returns the fibre and the endofunctor.
pub fn tensor_translation(f: &MonoidalFunctor, x: usize, side: Side) -> Result<(MonoidalFibre, LaxMorphism)> {
    let m = f.target.clone();
    if x >= m.object_count() {
        return Err(Error::Invalid(format!("object {x} not in {}", m.name)));
    }
    let i = unit_functor(m.clone())?;
    let fib = match side {
        Side::Left => monoidal_fibre(f, &i)?,
        Side::Right => monoidal_fibre(&i, f)?,
    };
    let b = &fib.bicat;
    let map0: Vec<usize> = fib
        .objects
        .iter()
        .map(|&m0| match side {
            Side::Left => m.t(x, m0),
            Side::Right => m.t(m0, x),
        })
        .collect();
    let mut map1 = Vec::with_capacity(fib.cells1.len());
    for k in b.c1s() {
        let (n, g, n2) = fib.cells1[k.idx()];
        let (m0, m1) = (b.src1(k).idx(), b.dst1(k).idx());
        let cell = match side {
            Side::Left => {
                let fnn = f.obj_map[n];
                m.chain(&[m.l(m.t(x, m0)), m.tm(m.id(x), m.inv(m.l(m0))?), m.tm(m.id(x), g), m.inv(m.a(x, m1, fnn))?])
            }
            Side::Right => {
                let fnn = f.obj_map[n2];
                m.chain(&[
                    m.inv(m.a(fnn, m0, x))?,
                    m.tm(g, m.id(x)),
                    m.tm(m.r(m1), m.id(x)),
                    m.inv(m.r(m.t(m1, x)))?,
                ])
            }
        };
        map1.push(fib.c1(map0[m0], n, cell, n2, map0[m1])?);
    }
    let map2 = b
        .c2s()
        .map(|z| {
            let (u, u2) = fib.cells2[z.idx()];
            fib.c2(map1[b.src2(z).idx()], u, u2, map1[b.dst2(z).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let name = match side {
        Side::Left => format!("{}⊗-", m.category.object_label(x)),
        Side::Right => format!("-⊗{}", m.category.object_label(x)),
    };
    let functor = LaxMorphism::strict(
        name,
        b.clone(),
        b.clone(),
        map0.into_iter().map(Obj::from).collect(),
        map1,
        map2,
        Direction::Lax,
    )?;
    debug_assert!(functor.claims == Claims { normal: true, pseudo: true, strict: true });
    Ok((fib, functor))
}
