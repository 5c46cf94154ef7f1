use super::bicategory::{FiniteBicategory, Obj, C1, C2};
use super::lax::LaxMorphism;
use crate::report::Violation;

/// A cellwise map between bicategories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicategoryMap {
    pub map0: Vec<Obj>,
    pub map1: Vec<C1>,
    pub map2: Vec<C2>,
}

fn bijective<T: Copy + Into<usize>>(m: &[T], n: usize) -> bool {
    if m.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    m.iter().all(|&x| {
        let i: usize = x.into();
        i < n && !std::mem::replace(&mut seen[i], true)
    })
}

impl From<Obj> for usize {
    fn from(o: Obj) -> usize {
        o.idx()
    }
}
impl From<C1> for usize {
    fn from(o: C1) -> usize {
        o.idx()
    }
}
impl From<C2> for usize {
    fn from(o: C2) -> usize {
        o.idx()
    }
}

/// Checks that `m` is a strict isomorphism `s → t`: bijective on every kind
/// of cell and preserving every table entry exactly.
pub fn check_isomorphism(s: &FiniteBicategory, t: &FiniteBicategory, m: &BicategoryMap) -> Vec<Violation> {
    let mut out = Vec::new();
    if !bijective(&m.map0, t.obj_count()) || m.map0.len() != s.obj_count() {
        out.push(Violation::axiom("iso-bijective", "objects", s.obj_count().to_string(), t.obj_count().to_string()));
    }
    if !bijective(&m.map1, t.c1_count()) || m.map1.len() != s.c1_count() {
        out.push(Violation::axiom("iso-bijective", "1-cells", s.c1_count().to_string(), t.c1_count().to_string()));
    }
    if !bijective(&m.map2, t.c2_count()) || m.map2.len() != s.c2_count() {
        out.push(Violation::axiom("iso-bijective", "2-cells", s.c2_count().to_string(), t.c2_count().to_string()));
    }
    if !out.is_empty() {
        return out;
    }
    let (o, f1, f2) = (|x: Obj| m.map0[x.idx()], |x: C1| m.map1[x.idx()], |x: C2| m.map2[x.idx()]);
    let mut bad = |what: &str, inst: String| out.push(Violation::axiom("iso-preserves", format!("{what}:{inst}"), "", ""));
    for f in s.c1s() {
        if t.src1(f1(f)) != o(s.src1(f)) || t.dst1(f1(f)) != o(s.dst1(f)) {
            bad("1-cell-endpoints", s.c1_label(f).into());
        }
        if t.id2(f1(f)) != f2(s.id2(f)) {
            bad("id2", s.c1_label(f).into());
        }
        if t.lunit(f1(f)) != f2(s.lunit(f)) {
            bad("lunit", s.c1_label(f).into());
        }
        if t.runit(f1(f)) != f2(s.runit(f)) {
            bad("runit", s.c1_label(f).into());
        }
    }
    for a in s.c2s() {
        if t.src2(f2(a)) != f1(s.src2(a)) || t.dst2(f2(a)) != f1(s.dst2(a)) {
            bad("2-cell-endpoints", s.c2_label(a).into());
        }
    }
    for x in s.objs() {
        if t.id1(o(x)) != f1(s.id1(x)) {
            bad("id1", s.obj_label(x).into());
        }
    }
    for (&(g, f), &r) in s.hcomp1_table() {
        if t.try_hcomp1(f1(g), f1(f)) != Some(f1(r)) {
            bad("hcomp1", crate::tuple_label(&[s.c1_label(g), s.c1_label(f)]));
        }
    }
    for (&(b, a), &r) in s.vcomp_table() {
        if t.try_vcomp(f2(b), f2(a)) != Some(f2(r)) {
            bad("vcomp", crate::tuple_label(&[s.c2_label(b), s.c2_label(a)]));
        }
    }
    for (&(b, a), &r) in s.hcomp2_table() {
        if t.try_hcomp2(f2(b), f2(a)) != Some(f2(r)) {
            bad("hcomp2", crate::tuple_label(&[s.c2_label(b), s.c2_label(a)]));
        }
    }
    for (&(h, g, f), &r) in s.assoc_table() {
        if t.try_assoc(f1(h), f1(g), f1(f)) != Some(f2(r)) {
            bad("assoc", crate::tuple_label(&[s.c1_label(h), s.c1_label(g), s.c1_label(f)]));
        }
    }
    out
}

/// The map that matches cells by label, if every label of `s` occurs in `t`.
pub fn label_isomorphism(s: &FiniteBicategory, t: &FiniteBicategory) -> Result<BicategoryMap, String> {
    let map0 = s.objs().map(|x| t.find_obj(s.obj_label(x)).ok_or_else(|| format!("object `{}` missing", s.obj_label(x)))).collect::<Result<Vec<_>, _>>()?;
    let map1 = s.c1s().map(|x| t.find_c1(s.c1_label(x)).ok_or_else(|| format!("1-cell `{}` missing", s.c1_label(x)))).collect::<Result<Vec<_>, _>>()?;
    let map2 = s.c2s().map(|x| t.find_c2(s.c2_label(x)).ok_or_else(|| format!("2-cell `{}` missing", s.c2_label(x)))).collect::<Result<Vec<_>, _>>()?;
    Ok(BicategoryMap { map0, map1, map2 })
}

/// True when there are `f: x → y`, `g: y → x` with `g∘f ≅ 1` and `f∘g ≅ 1`.
pub fn internally_equivalent(b: &FiniteBicategory, x: Obj, y: Obj) -> bool {
    b.hom1(x, y).iter().any(|&f| {
        b.hom1(y, x).iter().any(|&g| {
            b.iso_exists(b.try_hcomp1(g, f).unwrap(), b.id1(x)) && b.iso_exists(b.try_hcomp1(f, g).unwrap(), b.id1(y))
        })
    })
}

/// Reasons why `f` fails to be a biequivalence (empty when it is one):
/// essential surjectivity on objects up to internal equivalence, and each
/// local functor being full, faithful and essentially surjective.
pub fn biequivalence_failures(f: &LaxMorphism) -> Vec<String> {
    let (s, t) = (&*f.source, &*f.target);
    let mut out = Vec::new();
    for y in t.objs() {
        if !s.objs().any(|x| internally_equivalent(t, f.ob(x), y)) {
            out.push(format!("object `{}` is not equivalent to any image", t.obj_label(y)));
        }
    }
    for x in s.objs() {
        for x2 in s.objs() {
            let src = s.hom1(x, x2);
            for &u in src {
                for &v in src {
                    let mut images: Vec<C2> = s.hom2(u, v).iter().map(|&a| f.c2(a)).collect();
                    let n = images.len();
                    images.sort();
                    images.dedup();
                    if images.len() != n {
                        out.push(format!("local functor not faithful on ({},{})", s.c1_label(u), s.c1_label(v)));
                    }
                    if images.len() != t.hom2(f.c1(u), f.c1(v)).len() {
                        out.push(format!("local functor not full on ({},{})", s.c1_label(u), s.c1_label(v)));
                    }
                }
            }
            for &h in t.hom1(f.ob(x), f.ob(x2)) {
                if !src.iter().any(|&u| t.iso_exists(f.c1(u), h)) {
                    out.push(format!("1-cell `{}` is not isomorphic to any image", t.c1_label(h)));
                }
            }
        }
    }
    out
}
