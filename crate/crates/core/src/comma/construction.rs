use std::sync::Arc;

use rustc_hash::FxHashMap as Map;

use crate::bicat::{BicategoryBuilder, Direction, FiniteBicategory, LaxMorphism, LaxTransformation, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::{tuple_label, Limits};

/// `F↓F′` together with the data each of its cells stands for.
///
/// Objects are triples `(a, f: Fa → F′a′, a′)`; 1-cells `(u, β, u′)` with
/// `β: F′u′∘f₀ ⇒ f₁∘Fu`; 2-cells `(α, α′)` with
/// `β̄·(F′α′∘1) = (1∘Fα)·β`.
#[derive(Clone, Debug)]
pub struct Comma {
    pub bicat: Arc<FiniteBicategory>,
    pub lax: LaxMorphism,
    pub oplax: LaxMorphism,
    pub objects: Vec<(Obj, C1, Obj)>,
    pub cells1: Vec<(C1, C2, C1)>,
    pub cells2: Vec<(C2, C2)>,
    obj_index: Map<(Obj, C1, Obj), Obj>,
    c1_index: Map<(Obj, C1, C2, C1, Obj), C1>,
    c2_index: Map<(C1, C2, C2, C1), C2>,
}

pub(crate) fn c1_label(parts: &[&str], x0: &str, x1: &str) -> String {
    format!("{}:{}->{}", tuple_label(parts), x0, x1)
}

pub(crate) fn c2_label(parts: &[&str], s: &str, t: &str) -> String {
    format!("{}:{}=>{}", tuple_label(parts), s, t)
}

pub fn comma(f: &LaxMorphism, fp: &LaxMorphism) -> Result<Comma> {
    comma_with_limits(f, fp, &Limits::default())
}

pub fn comma_with_limits(f: &LaxMorphism, fp: &LaxMorphism, limits: &Limits) -> Result<Comma> {
    if f.direction != Direction::Lax || fp.direction != Direction::Oplax {
        return Err(Error::Direction(format!(
            "comma needs a lax and an oplax functor, got {} and {}",
            f.direction.as_str(),
            fp.direction.as_str()
        )));
    }
    if !crate::bicat::same_bicategory(&f.target, &fp.target) {
        return Err(Error::Mismatch(format!("{} and {} have different targets", f.name, fp.name)));
    }
    Enumerator { f, fp, b: &f.target, a: &f.source, ap: &fp.source, limits }.run()
}

struct Enumerator<'x> {
    f: &'x LaxMorphism,
    fp: &'x LaxMorphism,
    b: &'x FiniteBicategory,
    a: &'x FiniteBicategory,
    ap: &'x FiniteBicategory,
    limits: &'x Limits,
}

impl Enumerator<'_> {
    fn run(&self) -> Result<Comma> {
        let (f, fp, b, a, ap) = (self.f, self.fp, self.b, self.a, self.ap);
        let mut out = BicategoryBuilder::new(format!("{}↓{}", f.name, fp.name));

        let mut objects = Vec::new();
        let mut obj_index = Map::default();
        for x in a.objs() {
            for y in ap.objs() {
                for &h in b.hom1(f.ob(x), fp.ob(y)) {
                    let o = out.object(tuple_label(&[a.obj_label(x), b.c1_label(h), ap.obj_label(y)]));
                    objects.push((x, h, y));
                    obj_index.insert((x, h, y), o);
                }
            }
        }
        self.limits.check("comma objects", objects.len())?;
        let by_src = |x: Obj, y: Obj| -> Vec<Obj> {
            (0..objects.len()).filter(|&i| objects[i].0 == x && objects[i].2 == y).map(Obj::from).collect()
        };

        // 1-cells grouped by endpoints, in a fixed order
        let mut cells1 = Vec::new();
        let mut c1_index = Map::default();
        let mut hom1: Map<(Obj, Obj), Vec<C1>> = Map::default();
        for u in a.c1s() {
            for u2 in ap.c1s() {
                let fu = f.c1(u);
                let fpu = fp.c1(u2);
                for &x0 in &by_src(a.src1(u), ap.src1(u2)) {
                    let f0 = objects[x0.idx()].1;
                    let top = b.h1(fpu, f0)?;
                    for &x1 in &by_src(a.dst1(u), ap.dst1(u2)) {
                        let f1 = objects[x1.idx()].1;
                        let bottom = b.h1(f1, fu)?;
                        for &beta in b.hom2(top, bottom) {
                            let label = c1_label(
                                &[a.c1_label(u), b.c2_label(beta), ap.c1_label(u2)],
                                out.objects[x0.idx()].as_str(),
                                out.objects[x1.idx()].as_str(),
                            );
                            let c = out.cell1(label, x0, x1);
                            cells1.push((u, beta, u2));
                            c1_index.insert((x0, u, beta, u2, x1), c);
                            hom1.entry((x0, x1)).or_default().push(c);
                        }
                    }
                }
            }
            self.limits.check("comma 1-cells", cells1.len())?;
        }

        let mut cells2 = Vec::new();
        let mut c2_index = Map::default();
        let mut out2: Vec<Vec<C2>> = vec![Vec::new(); cells1.len()];
        for s in 0..cells1.len() {
            let sc = C1::from(s);
            let (x0, x1) = (out.cells1[s].src, out.cells1[s].dst);
            let f0 = objects[x0.idx()].1;
            let f1 = objects[x1.idx()].1;
            let (us, bs, us2) = cells1[s];
            for &tc in &hom1[&(x0, x1)] {
                let (ut, bt, ut2) = cells1[tc.idx()];
                for &al in a.hom2(us, ut) {
                    let right = b.v(b.wl(f1, f.c2(al))?, bs)?;
                    for &al2 in ap.hom2(us2, ut2) {
                        let left = b.v(bt, b.wr(fp.c2(al2), f0)?)?;
                        if left != right {
                            continue;
                        }
                        let label = c2_label(
                            &[a.c2_label(al), ap.c2_label(al2)],
                            out.cells1[s].label.as_str(),
                            out.cells1[tc.idx()].label.as_str(),
                        );
                        let c = out.cell2(label, sc, tc);
                        cells2.push((al, al2));
                        c2_index.insert((sc, al, al2, tc), c);
                        out2[s].push(c);
                    }
                }
            }
            self.limits.check("comma 2-cells", cells2.len())?;
        }

        let mut comma = Comma {
            bicat: crate::bicat::terminal_bicategory(),
            lax: f.clone(),
            oplax: fp.clone(),
            objects,
            cells1,
            cells2,
            obj_index,
            c1_index,
            c2_index,
        };
        self.fill_tables(&comma, &mut out, &out2)?;
        comma.bicat = Arc::new(out.build()?);
        Ok(comma)
    }

    /// `β₂⊚β₁`: pastes the two squares and the structure cells of `F`, `F′`.
    fn paste(&self, c: &Comma, x0: Obj, x1: Obj, x2: Obj, c1: C1, c2: C1) -> Result<(C1, C2, C1)> {
        let (f, fp, b, a, ap) = (self.f, self.fp, self.b, self.a, self.ap);
        let (u1, b1, v1) = c.cells1[c1.idx()];
        let (u2, b2, v2) = c.cells1[c2.idx()];
        let (f0, f1, f2) = (c.objects[x0.idx()].1, c.objects[x1.idx()].1, c.objects[x2.idx()].1);
        let (fu1, fu2, fv1, fv2) = (f.c1(u1), f.c1(u2), fp.c1(v1), fp.c1(v2));
        let beta = b.chain(&[
            b.wr(fp.comp_cell(v2, v1), f0)?,
            b.assoc(fv2, fv1, f0)?,
            b.wl(fv2, b1)?,
            b.inv(b.assoc(fv2, f1, fu1)?)?,
            b.wr(b2, fu1)?,
            b.assoc(f2, fu2, fu1)?,
            b.wl(f2, f.comp_cell(u2, u1))?,
        ])?;
        Ok((a.h1(u2, u1)?, beta, ap.h1(v2, v1)?))
    }

    /// `1̊`, the comparison cell of the identity 1-cell.
    fn unit_cell(&self, x: (Obj, C1, Obj)) -> Result<C2> {
        let (f, fp, b) = (self.f, self.fp, self.b);
        let (o, h, o2) = x;
        b.chain(&[
            b.wr(fp.unit_cell(o2), h)?,
            b.lunit(h),
            b.inv(b.runit(h))?,
            b.wl(h, f.unit_cell(o))?,
        ])
    }

    fn fill_tables(&self, c: &Comma, out: &mut BicategoryBuilder, out2: &[Vec<C2>]) -> Result<()> {
        let (a, ap) = (self.a, self.ap);
        let name = out.name.clone();
        let missing = |what: &str| Error::Invalid(format!("comma: pasted {what} is not a cell of {name}"));
        let n1 = c.cells1.len();
        let srcs: Vec<Obj> = out.cells1.iter().map(|x| x.src).collect();
        let dsts: Vec<Obj> = out.cells1.iter().map(|x| x.dst).collect();
        let dst2s: Vec<C1> = out.cells2.iter().map(|x| x.dst).collect();
        let src = |x: C1| srcs[x.idx()];
        let dst = |x: C1| dsts[x.idx()];
        let mut out1: Vec<Vec<C1>> = vec![Vec::new(); c.objects.len()];
        for i in 0..n1 {
            out1[src(C1::from(i)).idx()].push(C1::from(i));
        }

        let mut ids = Vec::with_capacity(c.objects.len());
        for (i, &x) in c.objects.iter().enumerate() {
            let o = Obj::from(i);
            let key = (o, a.id1(x.0), self.unit_cell(x)?, ap.id1(x.2), o);
            let id = *c.c1_index.get(&key).ok_or_else(|| missing("identity 1-cell"))?;
            out.set_id1(o, id);
            ids.push(id);
        }
        let mut hcomp1 = Map::default();
        for i in 0..n1 {
            let c1 = C1::from(i);
            for &c2 in &out1[dst(c1).idx()] {
                let (u, beta, v) = self.paste(c, src(c1), dst(c1), dst(c2), c1, c2)?;
                let r = *c.c1_index.get(&(src(c1), u, beta, v, dst(c2))).ok_or_else(|| missing("composite 1-cell"))?;
                hcomp1.insert((c2, c1), r);
            }
        }
        let h1 = |g: C1, f: C1| hcomp1[&(g, f)];
        let find2 = |s: C1, x: C2, y: C2, t: C1| c.c2_index.get(&(s, x, y, t)).copied().ok_or_else(|| missing("2-cell"));
        for i in 0..n1 {
            let c1 = C1::from(i);
            let (u, _, v) = c.cells1[i];
            out.set_id2(c1, find2(c1, a.id2(u), ap.id2(v), c1)?);
            let xs = ids[src(c1).idx()];
            let xt = ids[dst(c1).idx()];
            out.set_lunit(c1, find2(h1(xt, c1), a.lunit(u), ap.lunit(v), c1)?);
            out.set_runit(c1, find2(h1(c1, xs), a.runit(u), ap.runit(v), c1)?);
            for &c2 in &out1[dst(c1).idx()] {
                let (u2, _, v2) = c.cells1[c2.idx()];
                for &c3 in &out1[dst(c2).idx()] {
                    let (u3, _, v3) = c.cells1[c3.idx()];
                    let cell = find2(h1(h1(c3, c2), c1), a.assoc(u3, u2, u)?, ap.assoc(v3, v2, v)?, h1(c3, h1(c2, c1)))?;
                    out.set_assoc(c3, c2, c1, cell);
                }
            }
        }
        for (k, &r) in &hcomp1 {
            out.set_hcomp1(k.0, k.1, r);
        }
        // vertical and horizontal composition of 2-cells, componentwise
        for (s, list) in out2.iter().enumerate() {
            let s1 = C1::from(s);
            for &x in list {
                let t = dst2s[x.idx()];
                let (al, al2) = c.cells2[x.idx()];
                for &y in &out2[t.idx()] {
                    let (be, be2) = c.cells2[y.idx()];
                    let u = dst2s[y.idx()];
                    out.set_vcomp(y, x, find2(s1, a.v(be, al)?, ap.v(be2, al2)?, u)?);
                }
                for &s2 in &out1[dst(s1).idx()] {
                    for &y in &out2[s2.idx()] {
                        let (be, be2) = c.cells2[y.idx()];
                        let t2 = dst2s[y.idx()];
                        let cell = find2(h1(s2, s1), a.h2(be, al)?, ap.h2(be2, al2)?, h1(t2, t))?;
                        out.set_hcomp2(y, x, cell);
                    }
                }
            }
        }
        Ok(())
    }
}

impl Comma {
    pub fn find_obj(&self, a: Obj, f: C1, a2: Obj) -> Option<Obj> {
        self.obj_index.get(&(a, f, a2)).copied()
    }

    pub fn find_c1(&self, x0: Obj, u: C1, beta: C2, u2: C1, x1: Obj) -> Option<C1> {
        self.c1_index.get(&(x0, u, beta, u2, x1)).copied()
    }

    pub fn find_c2(&self, s: C1, al: C2, al2: C2, t: C1) -> Option<C2> {
        self.c2_index.get(&(s, al, al2, t)).copied()
    }

    pub(crate) fn need_obj(&self, a: Obj, f: C1, a2: Obj) -> Result<Obj> {
        self.find_obj(a, f, a2).ok_or_else(|| Error::Invalid(format!("no object over ({},{},{}) in {}", a.0, f.0, a2.0, self.bicat.name())))
    }

    pub(crate) fn need_c1(&self, x0: Obj, u: C1, beta: C2, u2: C1, x1: Obj) -> Result<C1> {
        self.find_c1(x0, u, beta, u2, x1).ok_or_else(|| {
            let b = &self.lax.target;
            Error::Invalid(format!("`{}` does not give a 1-cell of {}", b.c2_label(beta), self.bicat.name()))
        })
    }

    pub(crate) fn need_c2(&self, s: C1, al: C2, al2: C2, t: C1) -> Result<C2> {
        self.find_c2(s, al, al2, t)
            .ok_or_else(|| Error::Invalid(format!("pair ({},{}) is not a 2-cell of {}", al.0, al2.0, self.bicat.name())))
    }

    pub fn object(&self, x: Obj) -> (Obj, C1, Obj) {
        self.objects[x.idx()]
    }

    pub fn cell1(&self, c: C1) -> (C1, C2, C1) {
        self.cells1[c.idx()]
    }

    pub fn cell2(&self, c: C2) -> (C2, C2) {
        self.cells2[c.idx()]
    }

    /// The projection `P: F↓F′ → A`, a strict 2-functor.
    pub fn projection(&self, direction: Direction) -> Result<LaxMorphism> {
        LaxMorphism::strict(
            format!("P[{}]", self.bicat.name()),
            self.bicat.clone(),
            self.lax.source.clone(),
            self.objects.iter().map(|x| x.0).collect(),
            self.cells1.iter().map(|x| x.0).collect(),
            self.cells2.iter().map(|x| x.0).collect(),
            direction,
        )
    }

    /// The projection `P′: F↓F′ → A′`.
    pub fn projection_prime(&self, direction: Direction) -> Result<LaxMorphism> {
        LaxMorphism::strict(
            format!("P'[{}]", self.bicat.name()),
            self.bicat.clone(),
            self.oplax.source.clone(),
            self.objects.iter().map(|x| x.2).collect(),
            self.cells1.iter().map(|x| x.2).collect(),
            self.cells2.iter().map(|x| x.1).collect(),
            direction,
        )
    }

    /// Every 1-cell `(u, β, u′)` carries a 2-cell `β: F′u′∘f₀ ⇒ f₁∘Fu`.
    pub fn well_formedness_failures(&self) -> Vec<String> {
        let b = &self.lax.target;
        let mut out = Vec::new();
        for c in self.bicat.c1s() {
            let (u, beta, u2) = self.cell1(c);
            let f0 = self.object(self.bicat.src1(c)).1;
            let f1 = self.object(self.bicat.dst1(c)).1;
            let want_src = b.try_hcomp1(self.oplax.c1(u2), f0);
            let want_dst = b.try_hcomp1(f1, self.lax.c1(u));
            if want_src != Some(b.src2(beta)) || want_dst != Some(b.dst2(beta)) {
                out.push(self.bicat.c1_label(c).to_string());
            }
        }
        out
    }
}

/// The transformation `ω: F∘P ⇒ F′∘P′` on `F↓F′` with component `f` at
/// `(a, f, a′)` and naturality cell `β` at `(u, β, u′)`. With `F = 1_B` this
/// is `ω` for `B↓F′`; with `F′ = 1_B` it is `ω′` for `F↓B`.
pub fn comparison_transformation(c: &Comma) -> Result<LaxTransformation> {
    let fp_ = c.projection(Direction::Lax)?.then(&c.lax)?;
    let fpp = c.projection_prime(Direction::Oplax)?.then(&c.oplax)?;
    Ok(LaxTransformation {
        name: format!("ω[{}]", c.bicat.name()),
        direction: Direction::Lax,
        source: fp_,
        target: fpp,
        comp0: c.objects.iter().map(|x| x.1).collect(),
        natcell: c.cells1.iter().map(|x| x.1).collect(),
    })
}
