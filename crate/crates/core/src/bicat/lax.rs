use std::sync::Arc;

use rustc_hash::FxHashMap as Map;
use serde::{Deserialize, Serialize};

use super::bicategory::{FiniteBicategory, Obj, C1, C2};
use super::discrete::terminal_bicategory;
use crate::error::{Error, Result};
use crate::exec;
use crate::report::{ValidationReport, Violation};
use crate::tuple_label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lax,
    Oplax,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Lax => Direction::Oplax,
            Direction::Oplax => Direction::Lax,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Lax => "lax",
            Direction::Oplax => "oplax",
        }
    }
}

/// Properties a morphism claims for itself. They are verified by
/// [`LaxMorphism::validate`], never trusted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub normal: bool,
    pub pseudo: bool,
    pub strict: bool,
}

/// A lax or oplax functor between finite bicategories.
///
/// For `direction == Lax` the structure cells are `F̂_{g,f}: Fg∘Ff ⇒ F(g∘f)`
/// (stored under the key `(g, f)`) and `F̂_b: 1_{Fb} ⇒ F1_b`; for `Oplax`
/// they point the other way.
#[derive(Clone, Debug)]
pub struct LaxMorphism {
    pub name: String,
    pub direction: Direction,
    pub source: Arc<FiniteBicategory>,
    pub target: Arc<FiniteBicategory>,
    pub map0: Vec<Obj>,
    pub map1: Vec<C1>,
    pub map2: Vec<C2>,
    pub comp: Map<(C1, C1), C2>,
    pub unit: Vec<C2>,
    pub claims: Claims,
}

pub(crate) fn same_bicategory(a: &Arc<FiniteBicategory>, b: &Arc<FiniteBicategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LaxMorphism {
    pub fn ob(&self, a: Obj) -> Obj {
        self.map0[a.idx()]
    }
    pub fn c1(&self, f: C1) -> C1 {
        self.map1[f.idx()]
    }
    pub fn c2(&self, a: C2) -> C2 {
        self.map2[a.idx()]
    }
    /// `F̂_{g,f}`.
    pub fn comp_cell(&self, g: C1, f: C1) -> C2 {
        self.comp[&(g, f)]
    }
    /// `F̂_b`.
    pub fn unit_cell(&self, b: Obj) -> C2 {
        self.unit[b.idx()]
    }

    pub fn identity(b: Arc<FiniteBicategory>, direction: Direction) -> Self {
        let mut comp = Map::default();
        for f in b.c1s() {
            for &g in b.out1(b.dst1(f)) {
                comp.insert((g, f), b.id2(b.h1(g, f).unwrap()));
            }
        }
        LaxMorphism {
            name: format!("1_{}", b.name()),
            direction,
            map0: b.objs().collect(),
            map1: b.c1s().collect(),
            map2: b.c2s().collect(),
            unit: b.objs().map(|o| b.id2(b.id1(o))).collect(),
            comp,
            source: b.clone(),
            target: b,
            claims: Claims { normal: true, pseudo: true, strict: true },
        }
    }

    /// A strict 2-functor given by its action on cells; all structure cells
    /// are identities. Fails if composition or identities are not preserved
    /// on the nose.
    pub fn strict(
        name: impl Into<String>,
        source: Arc<FiniteBicategory>,
        target: Arc<FiniteBicategory>,
        map0: Vec<Obj>,
        map1: Vec<C1>,
        map2: Vec<C2>,
        direction: Direction,
    ) -> Result<Self> {
        let name = name.into();
        let mut comp = Map::default();
        for f in source.c1s() {
            for &g in source.out1(source.dst1(f)) {
                let gf = map1[source.h1(g, f)?.idx()];
                if target.h1(map1[g.idx()], map1[f.idx()])? != gf {
                    return Err(Error::Invalid(format!(
                        "{name} is not strict: F({}∘{}) differs from F{}∘F{}",
                        source.c1_label(g),
                        source.c1_label(f),
                        source.c1_label(g),
                        source.c1_label(f)
                    )));
                }
                comp.insert((g, f), target.id2(gf));
            }
        }
        let mut unit = Vec::new();
        for o in source.objs() {
            let f1 = map1[source.id1(o).idx()];
            if f1 != target.id1(map0[o.idx()]) {
                return Err(Error::Invalid(format!("{name} is not strict: identity of `{}` not preserved", source.obj_label(o))));
            }
            unit.push(target.id2(f1));
        }
        Ok(LaxMorphism {
            name,
            direction,
            source,
            target,
            map0,
            map1,
            map2,
            comp,
            unit,
            claims: Claims { normal: true, pseudo: true, strict: true },
        })
    }

    /// The normal homomorphism `b: [0] → B` picking out an object; its
    /// structure cell is `l_{1_b}: 1_b∘1_b ⇒ 1_b` (inverted when oplax).
    pub fn object_homomorphism(target: Arc<FiniteBicategory>, b: Obj, direction: Direction) -> Result<Self> {
        let source = terminal_bicategory();
        let one = target.id1(b);
        let l = target.lunit(one);
        let cell = match direction {
            Direction::Lax => l,
            Direction::Oplax => target.inv(l)?,
        };
        let mut comp = Map::default();
        comp.insert((C1(0), C1(0)), cell);
        Ok(LaxMorphism {
            name: format!("{}:[0]->{}", target.obj_label(b), target.name()),
            direction,
            map0: vec![b],
            map1: vec![one],
            map2: vec![target.id2(one)],
            unit: vec![target.id2(one)],
            comp,
            source,
            target,
            claims: Claims { normal: true, pseudo: true, strict: false },
        })
    }

    /// The same morphism viewed in the other direction, with every
    /// structure cell inverted. Requires a pseudo morphism.
    pub fn with_direction(&self, direction: Direction) -> Result<Self> {
        if direction == self.direction {
            return Ok(self.clone());
        }
        let t = &self.target;
        let mut comp = Map::default();
        for (&k, &c) in &self.comp {
            comp.insert(k, t.inv(c)?);
        }
        let unit = self.unit.iter().map(|&c| t.inv(c)).collect::<Result<Vec<_>>>()?;
        Ok(LaxMorphism { direction, comp, unit, ..self.clone() })
    }

    pub fn is_normal(&self) -> bool {
        self.unit.iter().all(|&c| self.target.is_id2(c))
    }
    pub fn is_pseudo(&self) -> bool {
        self.unit.iter().chain(self.comp.values()).all(|&c| self.target.is_invertible(c))
    }
    pub fn is_strict(&self) -> bool {
        self.unit.iter().chain(self.comp.values()).all(|&c| self.target.is_id2(c))
    }

    /// The composite `next ∘ self`.
    pub fn then(&self, next: &LaxMorphism) -> Result<LaxMorphism> {
        if self.direction != next.direction {
            return Err(Error::Direction(format!("cannot compose {} with {}", self.direction.as_str(), next.direction.as_str())));
        }
        if !same_bicategory(&self.target, &next.source) {
            return Err(Error::Mismatch(format!("codomain of {} is not the domain of {}", self.name, next.name)));
        }
        let t = &next.target;
        let mut comp = Map::default();
        for (&(g, f), &c) in &self.comp {
            let outer = next.comp_cell(self.c1(g), self.c1(f));
            let inner = next.c2(c);
            let cell = match self.direction {
                Direction::Lax => t.v(inner, outer)?,
                Direction::Oplax => t.v(outer, inner)?,
            };
            comp.insert((g, f), cell);
        }
        let mut unit = Vec::new();
        for o in self.source.objs() {
            let outer = next.unit_cell(self.ob(o));
            let inner = next.c2(self.unit_cell(o));
            unit.push(match self.direction {
                Direction::Lax => t.v(inner, outer)?,
                Direction::Oplax => t.v(outer, inner)?,
            });
        }
        Ok(LaxMorphism {
            name: format!("{}.{}", next.name, self.name),
            direction: self.direction,
            source: self.source.clone(),
            target: next.target.clone(),
            map0: self.map0.iter().map(|&o| next.ob(o)).collect(),
            map1: self.map1.iter().map(|&f| next.c1(f)).collect(),
            map2: self.map2.iter().map(|&a| next.c2(a)).collect(),
            comp,
            unit,
            claims: Claims {
                normal: self.claims.normal && next.claims.normal,
                pseudo: self.claims.pseudo && next.claims.pseudo,
                strict: self.claims.strict && next.claims.strict,
            },
        })
    }

    /// Cell-for-cell equality of the data (names are ignored).
    pub fn table_eq(&self, other: &LaxMorphism) -> bool {
        self.direction == other.direction
            && same_bicategory(&self.source, &other.source)
            && same_bicategory(&self.target, &other.target)
            && self.map0 == other.map0
            && self.map1 == other.map1
            && self.map2 == other.map2
            && self.comp == other.comp
            && self.unit == other.unit
    }

    /// The same data read as a morphism `A^co → B^co`, which flips the direction.
    pub fn co(&self) -> Result<LaxMorphism> {
        Ok(LaxMorphism {
            name: format!("{}^co", self.name),
            direction: self.direction.flip(),
            source: Arc::new(self.source.co()?),
            target: Arc::new(self.target.co()?),
            ..self.clone()
        })
    }

    fn schema_violations(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        if self.map0.len() != s.obj_count()
            || self.map1.len() != s.c1_count()
            || self.map2.len() != s.c2_count()
            || self.unit.len() != s.obj_count()
        {
            out.push(Violation::schema("/maps", format!("{}: map sizes do not match the source", self.name)));
            return out;
        }
        if self.map0.iter().any(|o| o.idx() >= t.obj_count())
            || self.map1.iter().any(|f| f.idx() >= t.c1_count())
            || self.map2.iter().chain(self.unit.iter()).chain(self.comp.values()).any(|a| a.idx() >= t.c2_count())
        {
            out.push(Violation::schema("/maps", format!("{}: dangling target id", self.name)));
            return out;
        }
        for f in s.c1s() {
            let ff = self.c1(f);
            if t.src1(ff) != self.ob(s.src1(f)) || t.dst1(ff) != self.ob(s.dst1(f)) {
                out.push(Violation::schema("/map1", format!("{}: image of `{}` has wrong endpoints", self.name, s.c1_label(f))));
            }
        }
        for a in s.c2s() {
            let fa = self.c2(a);
            if t.src2(fa) != self.c1(s.src2(a)) || t.dst2(fa) != self.c1(s.dst2(a)) {
                out.push(Violation::schema("/map2", format!("{}: image of `{}` has wrong endpoints", self.name, s.c2_label(a))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in s.c1s() {
            for &g in s.out1(s.dst1(f)) {
                let Some(&c) = self.comp.get(&(g, f)) else {
                    out.push(Violation::schema("/comp", format!("{}: missing structure cell for ({},{})", self.name, s.c1_label(g), s.c1_label(f))));
                    continue;
                };
                let composite = t.try_hcomp1(self.c1(g), self.c1(f));
                let image = self.c1(s.try_hcomp1(g, f).unwrap());
                let (from, to) = match self.direction {
                    Direction::Lax => (composite, Some(image)),
                    Direction::Oplax => (Some(image), composite),
                };
                if Some(t.src2(c)) != from || Some(t.dst2(c)) != to {
                    out.push(Violation::schema("/comp", format!("{}: structure cell for ({},{}) is ill-typed", self.name, s.c1_label(g), s.c1_label(f))));
                }
            }
        }
        for o in s.objs() {
            let c = self.unit_cell(o);
            let one = t.id1(self.ob(o));
            let image = self.c1(s.id1(o));
            let (from, to) = match self.direction {
                Direction::Lax => (one, image),
                Direction::Oplax => (image, one),
            };
            if t.src2(c) != from || t.dst2(c) != to {
                out.push(Violation::schema("/unit", format!("{}: unit cell at `{}` is ill-typed", self.name, s.obj_label(o))));
            }
        }
        out
    }

    /// Checks functoriality on 2-cells, naturality of the structure cells,
    /// the associativity and unit coherence conditions, and each claimed
    /// property.
    pub fn validate(&self) -> ValidationReport {
        let mut v = self.schema_violations();
        if v.is_empty() {
            match self.direction {
                Direction::Lax => v.extend(self.lax_axiom_violations()),
                Direction::Oplax => match self.co() {
                    Ok(co) => v.extend(co.lax_axiom_violations().into_iter().map(|mut x| {
                        x.axiom = x.axiom.replacen("lax-", "oplax-", 1);
                        x
                    })),
                    Err(e) => v.push(Violation::schema("/", format!("oplax check needs invertible constraints: {e}"))),
                },
            }
            v.extend(self.claim_violations());
        }
        ValidationReport::new(self.name.clone(), v)
    }

    fn claim_violations(&self) -> Vec<Violation> {
        let t = &self.target;
        let mut out = Vec::new();
        let cells: Vec<C2> = self.unit.iter().chain(self.comp.values()).copied().collect();
        if (self.claims.normal || self.claims.strict) && !self.is_normal() {
            let bad = self.unit.iter().find(|&&c| !t.is_id2(c)).unwrap();
            out.push(Violation::axiom("claim-normal", self.name.clone(), t.c2_label(*bad), "not an identity"));
        }
        if self.claims.pseudo {
            if let Some(bad) = cells.iter().find(|&&c| !t.is_invertible(c)) {
                out.push(Violation::axiom("claim-pseudo", self.name.clone(), t.c2_label(*bad), "not invertible"));
            }
        }
        if self.claims.strict {
            if let Some(bad) = cells.iter().find(|&&c| !t.is_id2(c)) {
                out.push(Violation::axiom("claim-strict", self.name.clone(), t.c2_label(*bad), "not an identity"));
            }
        }
        out
    }

    fn lax_axiom_violations(&self) -> Vec<Violation> {
        let (s, t) = (&*self.source, &*self.target);
        let cmp = |name: &str, inst: String, l: C2, r: C2, out: &mut Vec<Violation>| {
            if l != r {
                out.push(Violation::axiom(name, inst, t.c2_label(l), t.c2_label(r)));
            }
        };
        let mut out = exec::flat_map_range(s.c2_count(), |i| {
            let a = C2::from(i);
            let mut out = Vec::new();
            for &b in s.out2(s.dst2(a)) {
                let l = self.c2(s.v(b, a).unwrap());
                let r = t.v(self.c2(b), self.c2(a)).unwrap();
                cmp("lax-vertical", tuple_label(&[s.c2_label(b), s.c2_label(a)]), l, r, &mut out);
            }
            // naturality: F̂_{g',f'}·(Fβ∘Fα) = F(β∘α)·F̂_{g,f}
            let y = s.dst1(s.src2(a));
            for &g in s.out1(y) {
                for &b in s.out2(g) {
                    let (f, f2, g2) = (s.src2(a), s.dst2(a), s.dst2(b));
                    let l = t.v(self.comp_cell(g2, f2), t.h2(self.c2(b), self.c2(a)).unwrap()).unwrap();
                    let r = t.v(self.c2(s.h2(b, a).unwrap()), self.comp_cell(g, f)).unwrap();
                    cmp("lax-naturality", tuple_label(&[s.c2_label(b), s.c2_label(a)]), l, r, &mut out);
                }
            }
            out
        });
        for f in s.c1s() {
            let l = self.c2(s.id2(f));
            let r = t.id2(self.c1(f));
            cmp("lax-identity", s.c1_label(f).to_string(), l, r, &mut out);
        }
        out.extend(exec::flat_map_range(s.c1_count(), |i| {
            let f = C1::from(i);
            let mut out = Vec::new();
            let (b, b2) = (s.src1(f), s.dst1(f));
            let ff = self.c1(f);
            // units
            let one2 = s.id1(b2);
            let l = t
                .chain(&[
                    t.wr(self.unit_cell(b2), ff).unwrap(),
                    self.comp_cell(one2, f),
                    self.c2(s.lunit(f)),
                ])
                .unwrap();
            cmp("lax-left-unit", s.c1_label(f).to_string(), l, t.lunit(ff), &mut out);
            let one = s.id1(b);
            let l = t
                .chain(&[t.wl(ff, self.unit_cell(b)).unwrap(), self.comp_cell(f, one), self.c2(s.runit(f))])
                .unwrap();
            cmp("lax-right-unit", s.c1_label(f).to_string(), l, t.runit(ff), &mut out);
            // associativity
            for &g in s.out1(b2) {
                let gf = s.h1(g, f).unwrap();
                let fg = self.c1(g);
                for &h in s.out1(s.dst1(g)) {
                    let hg = s.h1(h, g).unwrap();
                    let fh = self.c1(h);
                    let l = t
                        .chain(&[
                            t.wr(self.comp_cell(h, g), ff).unwrap(),
                            self.comp_cell(hg, f),
                            self.c2(s.assoc(h, g, f).unwrap()),
                        ])
                        .unwrap();
                    let r = t
                        .chain(&[
                            t.assoc(fh, fg, ff).unwrap(),
                            t.wl(fh, self.comp_cell(g, f)).unwrap(),
                            self.comp_cell(h, gf),
                        ])
                        .unwrap();
                    cmp("lax-associativity", tuple_label(&[s.c1_label(h), s.c1_label(g), s.c1_label(f)]), l, r, &mut out);
                }
            }
            out
        }));
        out
    }
}
