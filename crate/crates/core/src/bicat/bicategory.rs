use std::fmt;

use rustc_hash::FxHashMap as Map;

use crate::algebra::CategoryBuilder;
use crate::error::{Error, Result};
use crate::exec;
use crate::report::{ValidationReport, Violation};

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u32);

        impl $name {
            pub fn idx(self) -> usize {
                self.0 as usize
            }
        }

        impl From<usize> for $name {
            fn from(i: usize) -> Self {
                $name(i as u32)
            }
        }
    };
}

id_type!(Obj);
id_type!(C1);
id_type!(C2);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell1 {
    pub label: String,
    pub src: Obj,
    pub dst: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell2 {
    pub label: String,
    pub src: C1,
    pub dst: C1,
}

/// A finite bicategory given by explicit tables.
///
/// `vcomp[(β, α)]` is `β·α` (first `α`, then `β`), `hcomp1[(g, f)]` is
/// `g∘f`, `hcomp2[(β, α)]` is `β∘α`, `assoc[(h, g, f)]` is
/// `a: (h∘g)∘f ⇒ h∘(g∘f)`, `lunit[f]` is `l: 1∘f ⇒ f` and `runit[f]` is
/// `r: f∘1 ⇒ f`. A value of this type always has total, well-typed tables;
/// the axioms are checked separately by [`FiniteBicategory::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteBicategory {
    name: String,
    objects: Vec<String>,
    cells1: Vec<Cell1>,
    cells2: Vec<Cell2>,
    vcomp: Map<(C2, C2), C2>,
    hcomp1: Map<(C1, C1), C1>,
    hcomp2: Map<(C2, C2), C2>,
    id1: Vec<C1>,
    id2: Vec<C2>,
    assoc: Map<(C1, C1, C1), C2>,
    lunit: Vec<C2>,
    runit: Vec<C2>,
    // indexes derived from the tables above
    out1: Vec<Vec<C1>>,
    in1: Vec<Vec<C1>>,
    hom1: Map<(Obj, Obj), Vec<C1>>,
    out2: Vec<Vec<C2>>,
    hom2: Map<(C1, C1), Vec<C2>>,
    inverse: Vec<Option<C2>>,
    obj_index: Map<String, Obj>,
    c1_index: Map<String, C1>,
    c2_index: Map<String, C2>,
}

impl fmt::Debug for FiniteBicategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteBicategory({}: {} objects, {} 1-cells, {} 2-cells)",
            self.name,
            self.objects.len(),
            self.cells1.len(),
            self.cells2.len()
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct BicategoryBuilder {
    pub name: String,
    pub objects: Vec<String>,
    pub cells1: Vec<Cell1>,
    pub cells2: Vec<Cell2>,
    pub vcomp: Map<(C2, C2), C2>,
    pub hcomp1: Map<(C1, C1), C1>,
    pub hcomp2: Map<(C2, C2), C2>,
    pub id1: Vec<Option<C1>>,
    pub id2: Vec<Option<C2>>,
    pub assoc: Map<(C1, C1, C1), C2>,
    pub lunit: Vec<Option<C2>>,
    pub runit: Vec<Option<C2>>,
}

impl BicategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        BicategoryBuilder { name: name.into(), ..Default::default() }
    }

    pub fn object(&mut self, label: impl Into<String>) -> Obj {
        self.objects.push(label.into());
        self.id1.push(None);
        Obj::from(self.objects.len() - 1)
    }

    pub fn cell1(&mut self, label: impl Into<String>, src: Obj, dst: Obj) -> C1 {
        self.cells1.push(Cell1 { label: label.into(), src, dst });
        self.id2.push(None);
        self.lunit.push(None);
        self.runit.push(None);
        C1::from(self.cells1.len() - 1)
    }

    pub fn cell2(&mut self, label: impl Into<String>, src: C1, dst: C1) -> C2 {
        self.cells2.push(Cell2 { label: label.into(), src, dst });
        C2::from(self.cells2.len() - 1)
    }

    pub fn set_vcomp(&mut self, beta: C2, alpha: C2, r: C2) {
        self.vcomp.insert((beta, alpha), r);
    }
    pub fn set_hcomp1(&mut self, g: C1, f: C1, r: C1) {
        self.hcomp1.insert((g, f), r);
    }
    pub fn set_hcomp2(&mut self, beta: C2, alpha: C2, r: C2) {
        self.hcomp2.insert((beta, alpha), r);
    }
    pub fn set_id1(&mut self, o: Obj, f: C1) {
        self.id1[o.idx()] = Some(f);
    }
    pub fn set_id2(&mut self, f: C1, a: C2) {
        self.id2[f.idx()] = Some(a);
    }
    pub fn set_assoc(&mut self, h: C1, g: C1, f: C1, a: C2) {
        self.assoc.insert((h, g, f), a);
    }
    pub fn set_lunit(&mut self, f: C1, a: C2) {
        self.lunit[f.idx()] = Some(a);
    }
    pub fn set_runit(&mut self, f: C1, a: C2) {
        self.runit[f.idx()] = Some(a);
    }

    /// All schema problems: duplicate or dangling ids, and missing or
    /// ill-typed table entries.
    pub fn schema_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (no, n1, n2) = (self.objects.len(), self.cells1.len(), self.cells2.len());
        crate::algebra::category_dup_labels("/objects", self.objects.iter(), &mut out);
        crate::algebra::category_dup_labels("/cells1", self.cells1.iter().map(|c| &c.label), &mut out);
        crate::algebra::category_dup_labels("/cells2", self.cells2.iter().map(|c| &c.label), &mut out);
        for (i, c) in self.cells1.iter().enumerate() {
            if c.src.idx() >= no || c.dst.idx() >= no {
                out.push(Violation::schema(format!("/cells1/{i}"), format!("1-cell `{}` has a dangling endpoint", c.label)));
            }
        }
        for (i, c) in self.cells2.iter().enumerate() {
            if c.src.idx() >= n1 || c.dst.idx() >= n1 {
                out.push(Violation::schema(format!("/cells2/{i}"), format!("2-cell `{}` has a dangling endpoint", c.label)));
            } else {
                let (s, d) = (&self.cells1[c.src.idx()], &self.cells1[c.dst.idx()]);
                if s.src != d.src || s.dst != d.dst {
                    out.push(Violation::schema(format!("/cells2/{i}"), format!("2-cell `{}` joins non-parallel 1-cells", c.label)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let l1 = |f: C1| self.cells1[f.idx()].label.as_str();
        let l2 = |a: C2| self.cells2[a.idx()].label.as_str();
        let ok1 = |f: C1| f.idx() < n1;
        let ok2 = |a: C2| a.idx() < n2;
        let c1 = |f: C1| &self.cells1[f.idx()];
        let c2 = |a: C2| &self.cells2[a.idx()];

        for (o, id) in self.id1.iter().enumerate() {
            match *id {
                Some(f) if ok1(f) && c1(f).src.idx() == o && c1(f).dst.idx() == o => {}
                Some(_) => out.push(Violation::schema("/id1", format!("identity of `{}` is ill-typed", self.objects[o]))),
                None => out.push(Violation::schema("/id1", format!("missing identity for `{}`", self.objects[o]))),
            }
        }
        for (f, id) in self.id2.iter().enumerate() {
            match *id {
                Some(a) if ok2(a) && c2(a).src.idx() == f && c2(a).dst.idx() == f => {}
                Some(_) => out.push(Violation::schema("/id2", format!("identity 2-cell of `{}` is ill-typed", self.cells1[f].label))),
                None => out.push(Violation::schema("/id2", format!("missing identity 2-cell for `{}`", self.cells1[f].label))),
            }
        }
        // hcomp1
        for (&(g, f), &r) in &self.hcomp1 {
            if !(ok1(g) && ok1(f) && ok1(r)) {
                out.push(Violation::schema("/hcomp1", "dangling id"));
            } else if c1(g).src != c1(f).dst || c1(r).src != c1(f).src || c1(r).dst != c1(g).dst {
                out.push(Violation::schema("/hcomp1", format!("ill-typed entry for ({},{})", l1(g), l1(f))));
            }
        }
        let mut by_src: Vec<Vec<C1>> = vec![Vec::new(); no];
        for (i, c) in self.cells1.iter().enumerate() {
            by_src[c.src.idx()].push(C1::from(i));
        }
        for (i, c) in self.cells1.iter().enumerate() {
            let f = C1::from(i);
            for &g in &by_src[c.dst.idx()] {
                if !self.hcomp1.contains_key(&(g, f)) {
                    out.push(Violation::schema("/hcomp1", format!("missing composite ({},{})", l1(g), l1(f))));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let h1 = |g: C1, f: C1| self.hcomp1[&(g, f)];
        // vcomp
        let mut out2: Vec<Vec<C2>> = vec![Vec::new(); n1];
        for (i, c) in self.cells2.iter().enumerate() {
            out2[c.src.idx()].push(C2::from(i));
        }
        for (&(b, a), &r) in &self.vcomp {
            if !(ok2(b) && ok2(a) && ok2(r)) {
                out.push(Violation::schema("/vcomp", "dangling id"));
            } else if c2(a).dst != c2(b).src || c2(r).src != c2(a).src || c2(r).dst != c2(b).dst {
                out.push(Violation::schema("/vcomp", format!("ill-typed entry for ({},{})", l2(b), l2(a))));
            }
        }
        for (i, c) in self.cells2.iter().enumerate() {
            let a = C2::from(i);
            for &b in &out2[c.dst.idx()] {
                if !self.vcomp.contains_key(&(b, a)) {
                    out.push(Violation::schema("/vcomp", format!("missing composite ({},{})", l2(b), l2(a))));
                }
            }
        }
        // hcomp2
        for (&(b, a), &r) in &self.hcomp2 {
            if !(ok2(b) && ok2(a) && ok2(r)) {
                out.push(Violation::schema("/hcomp2", "dangling id"));
                continue;
            }
            if c1(c2(b).src).src != c1(c2(a).src).dst {
                out.push(Violation::schema("/hcomp2", format!("entry for non-composable pair ({},{})", l2(b), l2(a))));
                continue;
            }
            if c2(r).src != h1(c2(b).src, c2(a).src) || c2(r).dst != h1(c2(b).dst, c2(a).dst) {
                out.push(Violation::schema("/hcomp2", format!("ill-typed entry for ({},{})", l2(b), l2(a))));
            }
        }
        let mut by_obj_src: Vec<Vec<C2>> = vec![Vec::new(); no];
        for (i, c) in self.cells2.iter().enumerate() {
            by_obj_src[c1(c.src).src.idx()].push(C2::from(i));
        }
        for (i, c) in self.cells2.iter().enumerate() {
            let a = C2::from(i);
            for &b in &by_obj_src[c1(c.src).dst.idx()] {
                if !self.hcomp2.contains_key(&(b, a)) {
                    out.push(Violation::schema("/hcomp2", format!("missing composite ({},{})", l2(b), l2(a))));
                }
            }
        }
        // constraints
        for (&(h, g, f), &a) in &self.assoc {
            if !(ok1(h) && ok1(g) && ok1(f) && ok2(a)) {
                out.push(Violation::schema("/assoc", "dangling id"));
            } else if c1(g).src != c1(f).dst || c1(h).src != c1(g).dst {
                out.push(Violation::schema("/assoc", format!("entry for non-composable triple ({},{},{})", l1(h), l1(g), l1(f))));
            } else if c2(a).src != h1(h1(h, g), f) || c2(a).dst != h1(h, h1(g, f)) {
                out.push(Violation::schema("/assoc", format!("ill-typed associator for ({},{},{})", l1(h), l1(g), l1(f))));
            }
        }
        for (i, c) in self.cells1.iter().enumerate() {
            let f = C1::from(i);
            for &g in &by_src[c.dst.idx()] {
                for &h in &by_src[c1(g).dst.idx()] {
                    if !self.assoc.contains_key(&(h, g, f)) {
                        out.push(Violation::schema("/assoc", format!("missing associator ({},{},{})", l1(h), l1(g), l1(f))));
                    }
                }
            }
        }
        for (i, c) in self.cells1.iter().enumerate() {
            let f = C1::from(i);
            let (Some(ix), Some(iy)) = (self.id1[c.src.idx()], self.id1[c.dst.idx()]) else { continue };
            match self.lunit[i] {
                Some(a) if ok2(a) && c2(a).src == h1(iy, f) && c2(a).dst == f => {}
                Some(_) => out.push(Violation::schema("/lunit", format!("ill-typed left unitor for `{}`", c.label))),
                None => out.push(Violation::schema("/lunit", format!("missing left unitor for `{}`", c.label))),
            }
            match self.runit[i] {
                Some(a) if ok2(a) && c2(a).src == h1(f, ix) && c2(a).dst == f => {}
                Some(_) => out.push(Violation::schema("/runit", format!("ill-typed right unitor for `{}`", c.label))),
                None => out.push(Violation::schema("/runit", format!("missing right unitor for `{}`", c.label))),
            }
        }
        out
    }

    pub fn build(self) -> Result<FiniteBicategory> {
        self.build_checked().map_err(|v| {
            let first = &v[0];
            Error::schema(first.instance.clone(), format!("{} ({} schema problems in total)", first.lhs, v.len()))
        })
    }

    /// Like [`BicategoryBuilder::build`] but returns every schema problem.
    pub fn build_checked(self) -> std::result::Result<FiniteBicategory, Vec<Violation>> {
        let v = self.schema_violations();
        if !v.is_empty() {
            return Err(v);
        }
        Ok(self.finish())
    }

    fn finish(self) -> FiniteBicategory {
        let (no, n1) = (self.objects.len(), self.cells1.len());
        let mut out1 = vec![Vec::new(); no];
        let mut in1 = vec![Vec::new(); no];
        let mut hom1: Map<(Obj, Obj), Vec<C1>> = Map::default();
        for (i, c) in self.cells1.iter().enumerate() {
            out1[c.src.idx()].push(C1::from(i));
            in1[c.dst.idx()].push(C1::from(i));
            hom1.entry((c.src, c.dst)).or_default().push(C1::from(i));
        }
        let mut out2 = vec![Vec::new(); n1];
        let mut hom2: Map<(C1, C1), Vec<C2>> = Map::default();
        for (i, c) in self.cells2.iter().enumerate() {
            out2[c.src.idx()].push(C2::from(i));
            hom2.entry((c.src, c.dst)).or_default().push(C2::from(i));
        }
        let obj_index = self.objects.iter().enumerate().map(|(i, l)| (l.clone(), Obj::from(i))).collect();
        let c1_index = self.cells1.iter().enumerate().map(|(i, c)| (c.label.clone(), C1::from(i))).collect();
        let c2_index = self.cells2.iter().enumerate().map(|(i, c)| (c.label.clone(), C2::from(i))).collect();
        let id2: Vec<C2> = self.id2.into_iter().map(Option::unwrap).collect();
        let mut inverse = vec![None; self.cells2.len()];
        for (i, c) in self.cells2.iter().enumerate() {
            let a = C2::from(i);
            if let Some(cands) = hom2.get(&(c.dst, c.src)) {
                inverse[i] = cands.iter().copied().find(|&b| {
                    self.vcomp[&(b, a)] == id2[c.src.idx()] && self.vcomp[&(a, b)] == id2[c.dst.idx()]
                });
            }
        }
        FiniteBicategory {
            name: self.name,
            objects: self.objects,
            cells1: self.cells1,
            cells2: self.cells2,
            vcomp: self.vcomp,
            hcomp1: self.hcomp1,
            hcomp2: self.hcomp2,
            id1: self.id1.into_iter().map(Option::unwrap).collect(),
            id2,
            assoc: self.assoc,
            lunit: self.lunit.into_iter().map(Option::unwrap).collect(),
            runit: self.runit.into_iter().map(Option::unwrap).collect(),
            out1,
            in1,
            hom1,
            out2,
            hom2,
            inverse,
            obj_index,
            c1_index,
            c2_index,
        }
    }
}

impl FiniteBicategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn obj_count(&self) -> usize {
        self.objects.len()
    }
    pub fn c1_count(&self) -> usize {
        self.cells1.len()
    }
    pub fn c2_count(&self) -> usize {
        self.cells2.len()
    }
    pub fn objs(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj::from)
    }
    pub fn c1s(&self) -> impl Iterator<Item = C1> + '_ {
        (0..self.cells1.len()).map(C1::from)
    }
    pub fn c2s(&self) -> impl Iterator<Item = C2> + '_ {
        (0..self.cells2.len()).map(C2::from)
    }

    pub fn obj_label(&self, o: Obj) -> &str {
        &self.objects[o.idx()]
    }
    pub fn c1_label(&self, f: C1) -> &str {
        &self.cells1[f.idx()].label
    }
    pub fn c2_label(&self, a: C2) -> &str {
        &self.cells2[a.idx()].label
    }
    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn cells1(&self) -> &[Cell1] {
        &self.cells1
    }
    pub fn cells2(&self) -> &[Cell2] {
        &self.cells2
    }
    pub fn find_obj(&self, label: &str) -> Option<Obj> {
        self.obj_index.get(label).copied()
    }
    pub fn find_c1(&self, label: &str) -> Option<C1> {
        self.c1_index.get(label).copied()
    }
    pub fn find_c2(&self, label: &str) -> Option<C2> {
        self.c2_index.get(label).copied()
    }

    pub fn src1(&self, f: C1) -> Obj {
        self.cells1[f.idx()].src
    }
    pub fn dst1(&self, f: C1) -> Obj {
        self.cells1[f.idx()].dst
    }
    pub fn src2(&self, a: C2) -> C1 {
        self.cells2[a.idx()].src
    }
    pub fn dst2(&self, a: C2) -> C1 {
        self.cells2[a.idx()].dst
    }

    pub fn hom1(&self, a: Obj, b: Obj) -> &[C1] {
        self.hom1.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }
    pub fn out1(&self, a: Obj) -> &[C1] {
        &self.out1[a.idx()]
    }
    pub fn in1(&self, a: Obj) -> &[C1] {
        &self.in1[a.idx()]
    }
    pub fn hom2(&self, f: C1, g: C1) -> &[C2] {
        self.hom2.get(&(f, g)).map(|v| v.as_slice()).unwrap_or(&[])
    }
    /// 2-cells whose source is `f`.
    pub fn out2(&self, f: C1) -> &[C2] {
        &self.out2[f.idx()]
    }

    pub fn id1(&self, o: Obj) -> C1 {
        self.id1[o.idx()]
    }
    pub fn id2(&self, f: C1) -> C2 {
        self.id2[f.idx()]
    }
    pub fn lunit(&self, f: C1) -> C2 {
        self.lunit[f.idx()]
    }
    pub fn runit(&self, f: C1) -> C2 {
        self.runit[f.idx()]
    }
    pub fn is_id2(&self, a: C2) -> bool {
        self.id2[self.src2(a).idx()] == a
    }
    pub fn is_id1(&self, f: C1) -> bool {
        self.id1[self.src1(f).idx()] == f
    }

    pub fn try_vcomp(&self, beta: C2, alpha: C2) -> Option<C2> {
        self.vcomp.get(&(beta, alpha)).copied()
    }
    pub fn try_hcomp1(&self, g: C1, f: C1) -> Option<C1> {
        self.hcomp1.get(&(g, f)).copied()
    }
    pub fn try_hcomp2(&self, beta: C2, alpha: C2) -> Option<C2> {
        self.hcomp2.get(&(beta, alpha)).copied()
    }
    pub fn try_assoc(&self, h: C1, g: C1, f: C1) -> Option<C2> {
        self.assoc.get(&(h, g, f)).copied()
    }

    /// `β·α`.
    pub fn v(&self, beta: C2, alpha: C2) -> Result<C2> {
        self.try_vcomp(beta, alpha)
            .ok_or_else(|| Error::NotComposable(self.c2_label(beta).into(), self.c2_label(alpha).into()))
    }
    /// `g∘f` on 1-cells.
    pub fn h1(&self, g: C1, f: C1) -> Result<C1> {
        self.try_hcomp1(g, f)
            .ok_or_else(|| Error::NotComposable(self.c1_label(g).into(), self.c1_label(f).into()))
    }
    /// `β∘α` on 2-cells.
    pub fn h2(&self, beta: C2, alpha: C2) -> Result<C2> {
        self.try_hcomp2(beta, alpha)
            .ok_or_else(|| Error::NotComposable(self.c2_label(beta).into(), self.c2_label(alpha).into()))
    }
    pub fn assoc(&self, h: C1, g: C1, f: C1) -> Result<C2> {
        self.try_assoc(h, g, f).ok_or_else(|| {
            Error::NotComposable(format!("{}∘{}", self.c1_label(h), self.c1_label(g)), self.c1_label(f).into())
        })
    }

    pub fn inverse(&self, a: C2) -> Option<C2> {
        self.inverse[a.idx()]
    }
    pub fn is_invertible(&self, a: C2) -> bool {
        self.inverse[a.idx()].is_some()
    }
    pub fn inv(&self, a: C2) -> Result<C2> {
        self.inverse(a).ok_or_else(|| Error::NotInvertible(self.c2_label(a).into()))
    }

    /// `1_f ∘ α`.
    pub fn wl(&self, f: C1, alpha: C2) -> Result<C2> {
        self.h2(self.id2(f), alpha)
    }
    /// `α ∘ 1_f`.
    pub fn wr(&self, alpha: C2, f: C1) -> Result<C2> {
        self.h2(alpha, self.id2(f))
    }

    /// Vertical composite of `cells` in diagrammatic order: the first cell
    /// is applied first, so `chain(&[a, b, c]) = c·b·a`.
    pub fn chain(&self, cells: &[C2]) -> Result<C2> {
        let mut it = cells.iter();
        let mut acc = *it.next().ok_or_else(|| Error::Invalid("empty chain of 2-cells".into()))?;
        for &c in it {
            acc = self.v(c, acc)?;
        }
        Ok(acc)
    }

    /// Parallel pairs of 1-cells `(f, g)` with at least one 2-cell `f ⇒ g`.
    pub fn hom2_keys(&self) -> impl Iterator<Item = (&(C1, C1), &Vec<C2>)> {
        self.hom2.iter()
    }

    pub fn is_locally_discrete(&self) -> bool {
        self.c2s().all(|a| self.is_id2(a))
    }

    /// True when every 1-cell has an inverse up to iso and every 2-cell is invertible.
    pub fn is_bigroupoid(&self) -> bool {
        self.c2s().all(|a| self.is_invertible(a))
            && self.c1s().all(|f| {
                let (x, y) = (self.src1(f), self.dst1(f));
                self.hom1(y, x).iter().any(|&g| {
                    self.iso_exists(self.hcomp1[&(g, f)], self.id1(x)) && self.iso_exists(self.hcomp1[&(f, g)], self.id1(y))
                })
            })
    }

    /// True when the two parallel 1-cells are joined by an invertible 2-cell.
    pub fn iso_exists(&self, f: C1, g: C1) -> bool {
        self.hom2(f, g).iter().any(|&a| self.is_invertible(a))
    }

    /// The hom-category `B(a, b)` as a finite category (objects are 1-cells,
    /// morphisms 2-cells, composition vertical).
    pub fn hom_category(&self, a: Obj, b: Obj) -> crate::algebra::FiniteCategory {
        let mut cb = CategoryBuilder::new(format!("{}({},{})", self.name, self.obj_label(a), self.obj_label(b)));
        let cells = self.hom1(a, b);
        let pos: Map<C1, usize> = cells.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for &f in cells {
            cb.object(self.c1_label(f));
        }
        let mut mors = Vec::new();
        let mut mpos: Map<C2, usize> = Map::default();
        for &f in cells {
            for &al in self.out2(f) {
                let m = cb.morphism(self.c2_label(al), pos[&f], pos[&self.dst2(al)]);
                mpos.insert(al, m);
                mors.push(al);
            }
        }
        for &f in cells {
            cb.identity(pos[&f], mpos[&self.id2(f)]);
        }
        for &al in &mors {
            for &be in self.out2(self.dst2(al)) {
                cb.compose(mpos[&be], mpos[&al], mpos[&self.vcomp[&(be, al)]]);
            }
        }
        cb.build().expect("hom-category of a well-formed bicategory")
    }

    /// A builder holding a copy of the tables, for deliberate edits such as
    /// fault injection.
    pub fn to_builder(&self) -> BicategoryBuilder {
        BicategoryBuilder {
            name: self.name.clone(),
            objects: self.objects.clone(),
            cells1: self.cells1.clone(),
            cells2: self.cells2.clone(),
            vcomp: self.vcomp.clone(),
            hcomp1: self.hcomp1.clone(),
            hcomp2: self.hcomp2.clone(),
            id1: self.id1.iter().map(|&x| Some(x)).collect(),
            id2: self.id2.iter().map(|&x| Some(x)).collect(),
            assoc: self.assoc.clone(),
            lunit: self.lunit.iter().map(|&x| Some(x)).collect(),
            runit: self.runit.iter().map(|&x| Some(x)).collect(),
        }
    }

    pub fn vcomp_table(&self) -> &Map<(C2, C2), C2> {
        &self.vcomp
    }
    pub fn hcomp1_table(&self) -> &Map<(C1, C1), C1> {
        &self.hcomp1
    }
    pub fn hcomp2_table(&self) -> &Map<(C2, C2), C2> {
        &self.hcomp2
    }
    pub fn assoc_table(&self) -> &Map<(C1, C1, C1), C2> {
        &self.assoc
    }

    /// The bicategory `B^co` with 2-cells reversed. Lax functors into `B^co`
    /// are oplax functors into `B`, which is how oplax structure is checked.
    /// Requires the constraints to be invertible.
    pub fn co(&self) -> Result<FiniteBicategory> {
        let mut b = self.to_builder();
        b.name = format!("{}^co", self.name);
        for c in b.cells2.iter_mut() {
            std::mem::swap(&mut c.src, &mut c.dst);
        }
        b.vcomp = self.vcomp.iter().map(|(&(x, y), &r)| ((y, x), r)).collect();
        for v in b.assoc.values_mut() {
            *v = self.inv(*v)?;
        }
        for (i, v) in b.lunit.iter_mut().enumerate() {
            *v = Some(self.inv(self.lunit[i])?);
        }
        for (i, v) in b.runit.iter_mut().enumerate() {
            *v = Some(self.inv(self.runit[i])?);
        }
        let mut out = b.finish();
        out.inverse = self.inverse.clone();
        Ok(out)
    }

    fn vc(&self, b: C2, a: C2) -> C2 {
        self.vcomp[&(b, a)]
    }
    fn hc(&self, b: C2, a: C2) -> C2 {
        self.hcomp2[&(b, a)]
    }
    fn hc1(&self, g: C1, f: C1) -> C1 {
        self.hcomp1[&(g, f)]
    }

    fn axiom(&self, name: &str, inst: &[&str], l: C2, r: C2) -> Violation {
        Violation::axiom(name, crate::tuple_label(inst), self.c2_label(l), self.c2_label(r))
    }

    /// Checks every bicategory axiom instance-wise: hom-categories are
    /// categories, horizontal composition is a bifunctor (interchange), the
    /// constraints are natural isomorphisms, pentagon and triangle.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport::new(self.name.clone(), self.axiom_violations())
    }

    pub fn axiom_violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        v.extend(self.vertical_violations());
        v.extend(self.interchange_violations());
        v.extend(self.constraint_violations());
        v.extend(self.coherence_violations());
        v
    }

    fn vertical_violations(&self) -> Vec<Violation> {
        exec::flat_map_range(self.c2_count(), |i| {
            let a = C2::from(i);
            let mut out = Vec::new();
            let (s, d) = (self.src2(a), self.dst2(a));
            if self.vc(a, self.id2(s)) != a || self.vc(self.id2(d), a) != a {
                out.push(Violation::axiom("vertical-unit", self.c2_label(a), self.c2_label(a), "identity not neutral"));
            }
            for &b in self.out2(d) {
                let ba = self.vc(b, a);
                for &c in self.out2(self.dst2(b)) {
                    let l = self.vc(c, ba);
                    let r = self.vc(self.vc(c, b), a);
                    if l != r {
                        out.push(self.axiom("vertical-associativity", &[self.c2_label(c), self.c2_label(b), self.c2_label(a)], l, r));
                    }
                }
            }
            out
        })
    }

    fn interchange_violations(&self) -> Vec<Violation> {
        let mut out = exec::flat_map_range(self.c1_count(), |i| {
            let f = C1::from(i);
            let mut out = Vec::new();
            for &g in self.out1(self.dst1(f)) {
                let l = self.hc(self.id2(g), self.id2(f));
                let r = self.id2(self.hc1(g, f));
                if l != r {
                    out.push(self.axiom("hcomp-identity", &[self.c1_label(g), self.c1_label(f)], l, r));
                }
            }
            out
        });
        out.extend(exec::flat_map_range(self.c2_count(), |i| {
            let a1 = C2::from(i);
            let mut out = Vec::new();
            let y = self.dst1(self.src2(a1));
            for &b1 in self.out2(self.dst2(a1)) {
                let ba1 = self.vc(b1, a1);
                for &f2 in self.out1(y) {
                    for &a2 in self.out2(f2) {
                        for &b2 in self.out2(self.dst2(a2)) {
                            let l = self.hc(self.vc(b2, a2), ba1);
                            let r = self.vc(self.hc(b2, b1), self.hc(a2, a1));
                            if l != r {
                                out.push(self.axiom(
                                    "interchange",
                                    &[self.c2_label(b2), self.c2_label(a2), self.c2_label(b1), self.c2_label(a1)],
                                    l,
                                    r,
                                ));
                            }
                        }
                    }
                }
            }
            out
        }));
        out
    }

    fn constraint_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (&(h, g, f), &a) in &self.assoc {
            if !self.is_invertible(a) {
                out.push(Violation::axiom(
                    "assoc-invertible",
                    crate::tuple_label(&[self.c1_label(h), self.c1_label(g), self.c1_label(f)]),
                    self.c2_label(a),
                    "no inverse",
                ));
            }
        }
        for f in self.c1s() {
            if !self.is_invertible(self.lunit(f)) {
                out.push(Violation::axiom("lunit-invertible", self.c1_label(f), self.c2_label(self.lunit(f)), "no inverse"));
            }
            if !self.is_invertible(self.runit(f)) {
                out.push(Violation::axiom("runit-invertible", self.c1_label(f), self.c2_label(self.runit(f)), "no inverse"));
            }
        }
        // naturality in each variable separately; together with interchange
        // this is naturality in all variables at once
        out.extend(exec::flat_map_range(self.c2_count(), |i| {
            let t = C2::from(i);
            let mut out = Vec::new();
            let (f, f2) = (self.src2(t), self.dst2(t));
            let (x, y) = (self.src1(f), self.dst1(f));
            let lt = self.c2_label(t);
            // unitors
            let l = self.vc(self.lunit(f2), self.hc(self.id2(self.id1(y)), t));
            let r = self.vc(t, self.lunit(f));
            if l != r {
                out.push(self.axiom("lunit-naturality", &[lt], l, r));
            }
            let l = self.vc(self.runit(f2), self.hc(t, self.id2(self.id1(x))));
            let r = self.vc(t, self.runit(f));
            if l != r {
                out.push(self.axiom("runit-naturality", &[lt], l, r));
            }
            // t in the first slot: a_{h,g,f2}·((1_h∘1_g)∘t) = (1_h∘(1_g∘t))·a_{h,g,f}
            for &g in self.out1(y) {
                for &h in self.out1(self.dst1(g)) {
                    let l = self.vc(self.assoc[&(h, g, f2)], self.hc(self.hc(self.id2(h), self.id2(g)), t));
                    let r = self.vc(self.hc(self.id2(h), self.hc(self.id2(g), t)), self.assoc[&(h, g, f)]);
                    if l != r {
                        out.push(self.axiom("assoc-naturality", &[self.c1_label(h), self.c1_label(g), lt], l, r));
                    }
                }
            }
            // t in the middle slot
            for &e in self.in1(x) {
                for &h in self.out1(y) {
                    let l = self.vc(self.assoc[&(h, f2, e)], self.hc(self.hc(self.id2(h), t), self.id2(e)));
                    let r = self.vc(self.hc(self.id2(h), self.hc(t, self.id2(e))), self.assoc[&(h, f, e)]);
                    if l != r {
                        out.push(self.axiom("assoc-naturality", &[self.c1_label(h), lt, self.c1_label(e)], l, r));
                    }
                }
            }
            // t in the last slot
            for &g in self.in1(x) {
                for &e in self.in1(self.src1(g)) {
                    let l = self.vc(self.assoc[&(f2, g, e)], self.hc(self.hc(t, self.id2(g)), self.id2(e)));
                    let r = self.vc(self.hc(t, self.hc(self.id2(g), self.id2(e))), self.assoc[&(f, g, e)]);
                    if l != r {
                        out.push(self.axiom("assoc-naturality", &[lt, self.c1_label(g), self.c1_label(e)], l, r));
                    }
                }
            }
            out
        }));
        out
    }

    fn coherence_violations(&self) -> Vec<Violation> {
        exec::flat_map_range(self.c1_count(), |i| {
            let f = C1::from(i);
            let mut out = Vec::new();
            let y = self.dst1(f);
            for &g in self.out1(y) {
                // triangle: (1_g∘l_f)·a_{g,1,f} = r_g∘1_f
                let one = self.id1(y);
                let l = self.vc(self.hc(self.id2(g), self.lunit(f)), self.assoc[&(g, one, f)]);
                let r = self.hc(self.runit(g), self.id2(f));
                if l != r {
                    out.push(self.axiom("triangle", &[self.c1_label(g), self.c1_label(f)], l, r));
                }
                let gf = self.hc1(g, f);
                for &h in self.out1(self.dst1(g)) {
                    let hg = self.hc1(h, g);
                    for &k in self.out1(self.dst1(h)) {
                        let kh = self.hc1(k, h);
                        let l = self.vc(self.assoc[&(k, h, gf)], self.assoc[&(kh, g, f)]);
                        let r = self.vc(
                            self.hc(self.id2(k), self.assoc[&(h, g, f)]),
                            self.vc(self.assoc[&(k, hg, f)], self.hc(self.assoc[&(k, h, g)], self.id2(f))),
                        );
                        if l != r {
                            out.push(self.axiom(
                                "pentagon",
                                &[self.c1_label(k), self.c1_label(h), self.c1_label(g), self.c1_label(f)],
                                l,
                                r,
                            ));
                        }
                    }
                }
            }
            out
        })
    }
}
