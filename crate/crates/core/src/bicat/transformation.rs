use super::bicategory::{FiniteBicategory, C1, C2};
use super::lax::{same_bicategory, Direction, LaxMorphism};
use crate::error::Result;
use crate::report::{ValidationReport, Violation};
use crate::tuple_label;

/// A lax (or oplax) transformation `α: F ⇒ G` between morphisms `A → B`.
///
/// `comp0[b]` is the 1-cell `αb: Fb → Gb`. For a lax transformation
/// `natcell[f]` is `α̂_f: Gf∘αb₀ ⇒ αb₁∘Ff`; for an oplax one it points the
/// other way. `F` and `G` may each be lax or oplax; the coherence conditions
/// place each structure cell on the side where it fits.
#[derive(Clone, Debug)]
pub struct LaxTransformation {
    pub name: String,
    pub direction: Direction,
    pub source: LaxMorphism,
    pub target: LaxMorphism,
    pub comp0: Vec<C1>,
    pub natcell: Vec<C2>,
}

impl LaxTransformation {
    pub fn validate(&self) -> ValidationReport {
        let v = match self.direction {
            Direction::Lax => self.lax_violations(),
            Direction::Oplax => match self.co() {
                Ok(co) => co.lax_violations(),
                Err(e) => vec![Violation::schema("/", format!("oplax check needs invertible constraints: {e}"))],
            },
        };
        ValidationReport::new(self.name.clone(), v)
    }

    fn co(&self) -> Result<LaxTransformation> {
        Ok(LaxTransformation {
            name: self.name.clone(),
            direction: Direction::Lax,
            source: self.source.co()?,
            target: self.target.co()?,
            comp0: self.comp0.clone(),
            natcell: self.natcell.clone(),
        })
    }

    fn lax_violations(&self) -> Vec<Violation> {
        let (f, g) = (&self.source, &self.target);
        let mut out = Vec::new();
        if !same_bicategory(&f.source, &g.source) || !same_bicategory(&f.target, &g.target) {
            out.push(Violation::schema("/", format!("{}: source and target morphisms are not parallel", self.name)));
            return out;
        }
        let (a, b): (&FiniteBicategory, &FiniteBicategory) = (&f.source, &f.target);
        if self.comp0.len() != a.obj_count() || self.natcell.len() != a.c1_count() {
            out.push(Violation::schema("/", format!("{}: component tables have the wrong size", self.name)));
            return out;
        }
        for o in a.objs() {
            let c = self.comp0[o.idx()];
            if c.idx() >= b.c1_count() || b.src1(c) != f.ob(o) || b.dst1(c) != g.ob(o) {
                out.push(Violation::schema("/comp0", format!("{}: component at `{}` is ill-typed", self.name, a.obj_label(o))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let al = |o| self.comp0[super::bicategory::Obj::idx(o)];
        for u in a.c1s() {
            let c = self.natcell[u.idx()];
            let from = b.try_hcomp1(g.c1(u), al(a.src1(u)));
            let to = b.try_hcomp1(al(a.dst1(u)), f.c1(u));
            if c.idx() >= b.c2_count() || Some(b.src2(c)) != from || Some(b.dst2(c)) != to {
                out.push(Violation::schema("/natcell", format!("{}: naturality cell at `{}` is ill-typed", self.name, a.c1_label(u))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let nat = |u: C1| self.natcell[u.idx()];
        let mut cmp = |name: &str, inst: String, l: Result<C2>, r: Result<C2>| match (l, r) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => out.push(Violation::axiom(name, inst, b.c2_label(l), b.c2_label(r))),
            (l, r) => out.push(Violation::axiom(name, inst, format!("{l:?}"), format!("{r:?}"))),
        };
        // naturality in 2-cells
        for th in a.c2s() {
            let (u, u2) = (a.src2(th), a.dst2(th));
            let l = b.wr(g.c2(th), al(a.src1(u))).and_then(|x| b.v(nat(u2), x));
            let r = b.wl(al(a.dst1(u)), f.c2(th)).and_then(|x| b.v(x, nat(u)));
            cmp("transformation-naturality", a.c2_label(th).to_string(), l, r);
        }
        // composition
        for u in a.c1s() {
            for &v in a.out1(a.dst1(u)) {
                let (b0, b1, b2) = (a.src1(u), a.dst1(u), a.dst1(v));
                let run = || -> Result<(C2, C2)> {
                    let vu = a.h1(v, u)?;
                    let core = b.chain(&[
                        b.assoc(g.c1(v), g.c1(u), al(b0))?,
                        b.wl(g.c1(v), nat(u))?,
                        b.inv(b.assoc(g.c1(v), al(b1), f.c1(u))?)?,
                        b.wr(nat(v), f.c1(u))?,
                        b.assoc(al(b2), f.c1(v), f.c1(u))?,
                    ])?;
                    let fh = b.wl(al(b2), f.comp_cell(v, u))?;
                    let gh = b.wr(g.comp_cell(v, u), al(b0))?;
                    let n = nat(vu);
                    Ok(match (f.direction, g.direction) {
                        (Direction::Lax, Direction::Lax) => (b.chain(&[core, fh])?, b.chain(&[gh, n])?),
                        (Direction::Lax, Direction::Oplax) => (b.chain(&[gh, core, fh])?, n),
                        (Direction::Oplax, Direction::Lax) => (core, b.chain(&[gh, n, fh])?),
                        (Direction::Oplax, Direction::Oplax) => (b.chain(&[gh, core])?, b.chain(&[n, fh])?),
                    })
                };
                let inst = tuple_label(&[a.c1_label(v), a.c1_label(u)]);
                match run() {
                    Ok((l, r)) => cmp("transformation-composition", inst, Ok(l), Ok(r)),
                    Err(e) => cmp("transformation-composition", inst, Err(e.clone()), Err(e)),
                }
            }
        }
        // units
        for o in a.objs() {
            let run = || -> Result<(C2, C2)> {
                let ao = al(o);
                let core = b.chain(&[b.lunit(ao), b.inv(b.runit(ao))?])?;
                let fu = b.wl(ao, f.unit_cell(o))?;
                let gu = b.wr(g.unit_cell(o), ao)?;
                let n = nat(a.id1(o));
                Ok(match (f.direction, g.direction) {
                    (Direction::Lax, Direction::Lax) => (b.chain(&[core, fu])?, b.chain(&[gu, n])?),
                    (Direction::Lax, Direction::Oplax) => (b.chain(&[gu, core, fu])?, n),
                    (Direction::Oplax, Direction::Lax) => (core, b.chain(&[gu, n, fu])?),
                    (Direction::Oplax, Direction::Oplax) => (b.chain(&[gu, core])?, b.chain(&[n, fu])?),
                })
            };
            let inst = a.obj_label(o).to_string();
            match run() {
                Ok((l, r)) => cmp("transformation-unit", inst, Ok(l), Ok(r)),
                Err(e) => cmp("transformation-unit", inst, Err(e.clone()), Err(e)),
            }
        }
        out
    }
}

/// An icon `Φ: F ⇒ G` between morphisms that agree on objects:
/// `cells[f]: Ff ⇒ Gf` for each 1-cell `f`.
#[derive(Clone, Debug)]
pub struct Icon {
    pub name: String,
    pub source: LaxMorphism,
    pub target: LaxMorphism,
    pub cells: Vec<C2>,
}

impl Icon {
    pub fn validate(&self) -> ValidationReport {
        ValidationReport::new(self.name.clone(), self.violations())
    }

    fn violations(&self) -> Vec<Violation> {
        let (f, g) = (&self.source, &self.target);
        let mut out = Vec::new();
        if !same_bicategory(&f.source, &g.source) || !same_bicategory(&f.target, &g.target) || f.direction != g.direction {
            out.push(Violation::schema("/", format!("{}: source and target are not parallel", self.name)));
            return out;
        }
        if f.map0 != g.map0 {
            out.push(Violation::schema("/", format!("{}: morphisms differ on objects", self.name)));
            return out;
        }
        let (a, b): (&FiniteBicategory, &FiniteBicategory) = (&f.source, &f.target);
        if self.cells.len() != a.c1_count() {
            out.push(Violation::schema("/cells", format!("{}: wrong number of components", self.name)));
            return out;
        }
        for u in a.c1s() {
            let c = self.cells[u.idx()];
            if c.idx() >= b.c2_count() || b.src2(c) != f.c1(u) || b.dst2(c) != g.c1(u) {
                out.push(Violation::schema("/cells", format!("{}: component at `{}` is ill-typed", self.name, a.c1_label(u))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let phi = |u: C1| self.cells[u.idx()];
        let mut cmp = |name: &str, inst: String, l: Result<C2>, r: Result<C2>| match (l, r) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => out.push(Violation::axiom(name, inst, b.c2_label(l), b.c2_label(r))),
            (l, r) => out.push(Violation::axiom(name, inst, format!("{l:?}"), format!("{r:?}"))),
        };
        for th in a.c2s() {
            let l = b.v(g.c2(th), phi(a.src2(th)));
            let r = b.v(phi(a.dst2(th)), f.c2(th));
            cmp("icon-naturality", a.c2_label(th).to_string(), l, r);
        }
        for u in a.c1s() {
            for &v in a.out1(a.dst1(u)) {
                let vu = match a.h1(v, u) {
                    Ok(x) => x,
                    Err(e) => {
                        cmp("icon-composition", String::new(), Err(e.clone()), Err(e));
                        continue;
                    }
                };
                let both = b.h2(phi(v), phi(u));
                let (l, r) = match f.direction {
                    Direction::Lax => (b.v(phi(vu), f.comp_cell(v, u)), both.and_then(|x| b.v(g.comp_cell(v, u), x))),
                    Direction::Oplax => (b.v(g.comp_cell(v, u), phi(vu)), both.and_then(|x| b.v(x, f.comp_cell(v, u)))),
                };
                cmp("icon-composition", tuple_label(&[a.c1_label(v), a.c1_label(u)]), l, r);
            }
        }
        for o in a.objs() {
            let one = a.id1(o);
            let (l, r) = match f.direction {
                Direction::Lax => (b.v(phi(one), f.unit_cell(o)), Ok(g.unit_cell(o))),
                Direction::Oplax => (b.v(g.unit_cell(o), phi(one)), Ok(f.unit_cell(o))),
            };
            cmp("icon-unit", a.obj_label(o).to_string(), l, r);
        }
        out
    }
}
