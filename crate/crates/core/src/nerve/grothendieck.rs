use std::collections::HashMap;
use std::sync::Arc;

use super::sset::{compose_monotone, monotone_maps, pair_count, Simplex};
use crate::algebra::{CategoryBuilder, FiniteCategory};
use crate::bicat::{Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};
use crate::{exec, tuple_label, Limits};

/// An object `(u_p, …, u₁)` of `Ner_p`: `cells[i]` is `u_{i+1}: x_i → x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerObject {
    pub objs: Vec<Obj>,
    pub cells: Vec<C1>,
}

/// A morphism `(α_p, …, α₁)` of `Ner_p`, one 2-cell per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerMorphism {
    pub objs: Vec<Obj>,
    pub cells: Vec<C2>,
}

/// `∘ᵒʳ(u_k, …, u₁) = u_k∘∘ᵒʳ(u_{k-1}, …, u₁)`, with `us = [u₁, …, u_k]`.
pub fn or_comp1(b: &FiniteBicategory, us: &[C1]) -> Result<C1> {
    let mut acc = *us.first().ok_or_else(|| Error::Invalid("empty composite".into()))?;
    for &u in &us[1..] {
        acc = b.h1(u, acc)?;
    }
    Ok(acc)
}

/// The same iterated composite on 2-cells.
pub fn or_comp2(b: &FiniteBicategory, al: &[C2]) -> Result<C2> {
    let mut acc = *al.first().ok_or_else(|| Error::Invalid("empty composite".into()))?;
    for &a in &al[1..] {
        acc = b.h2(a, acc)?;
    }
    Ok(acc)
}

/// `J_p x` as functor data `[p] → B` in the pair/triple layout: arrows are
/// iterated composites, units are identities and the structure cells are
/// built from associators (`Ĵ = 1` when the left string has length 1).
pub fn j_simplex(b: &FiniteBicategory, x: &NerObject) -> Result<Simplex> {
    let p = x.objs.len() - 1;
    let mut arrows = Vec::with_capacity(pair_count(p));
    for j in 0..=p {
        for i in 0..=j {
            let f = if i == j { b.id1(x.objs[i]) } else { or_comp1(b, &x.cells[i..j])? };
            arrows.push(f.0);
        }
    }
    let mut s = Simplex {
        objs: x.objs.iter().map(|o| o.0).collect(),
        units: x.objs.iter().map(|&o| b.id2(b.id1(o)).0).collect(),
        arrows,
        cells: Vec::new(),
    };
    for k in 0..=p {
        for j in 0..=k {
            for i in 0..=j {
                let c = j_cell(b, &s, i, j, k)?;
                s.cells.push(c.0);
            }
        }
    }
    Ok(s)
}

fn j_cell(b: &FiniteBicategory, s: &Simplex, i: usize, j: usize, k: usize) -> Result<C2> {
    let f = |i: usize, j: usize| C1(s.arrow(i, j));
    if i == j {
        Ok(b.runit(f(j, k)))
    } else if j == k {
        Ok(b.lunit(f(i, j)))
    } else if k == j + 1 {
        Ok(b.id2(f(i, k)))
    } else {
        // (u_k∘J(j,k-1))∘J(i,j) ⇒ u_k∘(J(j,k-1)∘J(i,j)) ⇒ u_k∘J(i,k-1)
        let inner = C2(s.cell(i, j, k - 1));
        b.chain(&[b.assoc(f(k - 1, k), f(j, k - 1), f(i, j))?, b.wl(f(k - 1, k), inner)?])
    }
}

/// `ν_G` at the string `k → l` for functor data `G` on `[q]`:
/// `∘ᵒʳ(G(l-1,l), …, G(k,k+1)) ⇒ G(k,l)`, with `ν = Ĝ_k` on the empty string.
pub fn nu(b: &FiniteBicategory, g: &Simplex, k: usize, l: usize) -> Result<C2> {
    if k == l {
        return Ok(C2(g.units[k]));
    }
    if l == k + 1 {
        return Ok(b.id2(C1(g.arrow(k, l))));
    }
    let rest = nu(b, g, k, l - 1)?;
    b.chain(&[b.wl(C1(g.arrow(l - 1, l)), rest)?, C2(g.cell(k, l - 1, l))])
}

/// `ν` of one simplex along every monotone index sequence of bounded
/// length. Since reindexing is precomposition, `ν(g∘a, k, l)` is `ν` of `g`
/// along `a(k), …, a(l)`, so one table serves every reindexing of `g`.
struct NuTable {
    base: usize,
    cells: Vec<C2>,
}

impl NuTable {
    fn new(b: &FiniteBicategory, g: &Simplex, len: usize) -> Result<Self> {
        let p = g.objs.len() - 1;
        let base = p + 2;
        let mut t = NuTable { base, cells: vec![C2(u32::MAX); base.pow(len as u32)] };
        let mut level: Vec<Vec<usize>> = (0..=p).map(|k| vec![k]).collect();
        for s in &level {
            let k = t.key(s);
            t.cells[k] = C2(g.units[s[0]]);
        }
        for _ in 1..len {
            let mut next = Vec::new();
            for s in &level {
                let last = *s.last().expect("non-empty");
                for l in last..=p {
                    let mut s2 = s.clone();
                    s2.push(l);
                    let c = if s.len() == 1 {
                        b.id2(C1(g.arrow(last, l)))
                    } else {
                        b.chain(&[b.wl(C1(g.arrow(last, l)), t.get(s))?, C2(g.cell(s[0], last, l))])?
                    };
                    let k = t.key(&s2);
                    t.cells[k] = c;
                    next.push(s2);
                }
            }
            level = next;
        }
        Ok(t)
    }

    fn key(&self, seq: &[usize]) -> usize {
        seq.iter().rev().fold(0, |acc, &v| acc * self.base + v + 1)
    }

    fn get(&self, seq: &[usize]) -> C2 {
        self.cells[self.key(seq)]
    }
}

/// Every monotone map `[q] → [p]` with `p, q ≤ N`, by id, with the
/// composition table, so the cocycle loop does not allocate.
struct MapIndex {
    maps: Vec<Vec<usize>>,
    /// `by_dims[q][p]`: ids of the maps `[q] → [p]`.
    by_dims: Vec<Vec<Vec<usize>>>,
    /// `comp[a][b]` is the id of `a∘b` when `b` lands in the domain of `a`.
    comp: Vec<Vec<usize>>,
}

impl MapIndex {
    fn new(n: usize) -> Self {
        let mut maps = Vec::new();
        let mut by_dims = vec![vec![Vec::new(); n + 1]; n + 1];
        let mut index = HashMap::new();
        for q in 0..=n {
            for p in 0..=n {
                for a in monotone_maps(q, p) {
                    by_dims[q][p].push(maps.len());
                    index.insert((p, a.clone()), maps.len());
                    maps.push(a);
                }
            }
        }
        let mut comp = vec![vec![usize::MAX; maps.len()]; maps.len()];
        for q in 0..=n {
            for p in 0..=n {
                for &a in &by_dims[q][p] {
                    for m in 0..=n {
                        for &bm in &by_dims[m][q] {
                            comp[a][bm] = index[&(p, compose_monotone(&maps[a], &maps[bm]))];
                        }
                    }
                }
            }
        }
        MapIndex { maps, by_dims, comp }
    }
}

/// The pseudo-simplicial category `[p] ↦ Ner_p B`, truncated at `N`.
#[derive(Clone, Debug)]
pub struct GrothendieckNerve {
    pub bicategory: Arc<FiniteBicategory>,
    pub objects: Vec<Vec<NerObject>>,
}

pub fn grothendieck_nerve(b: &Arc<FiniteBicategory>, n: usize) -> Result<GrothendieckNerve> {
    grothendieck_nerve_with_limits(b, n, Limits::default())
}

pub fn grothendieck_nerve_with_limits(b: &Arc<FiniteBicategory>, n: usize, limits: Limits) -> Result<GrothendieckNerve> {
    let mut objects: Vec<Vec<NerObject>> = vec![b.objs().map(|o| NerObject { objs: vec![o], cells: vec![] }).collect()];
    for p in 1..=n {
        let mut next = Vec::new();
        for x in &objects[p - 1] {
            for &u in b.out1(*x.objs.last().unwrap()) {
                let mut y = x.clone();
                y.objs.push(b.dst1(u));
                y.cells.push(u);
                next.push(y);
            }
        }
        limits.check(&format!("Ner_{p} objects"), next.len())?;
        objects.push(next);
    }
    Ok(GrothendieckNerve { bicategory: b.clone(), objects })
}

impl GrothendieckNerve {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object_label(&self, x: &NerObject) -> String {
        let b = &self.bicategory;
        if x.cells.is_empty() {
            return b.obj_label(x.objs[0]).to_string();
        }
        let parts: Vec<&str> = x.cells.iter().rev().map(|&u| b.c1_label(u)).collect();
        tuple_label(&parts)
    }

    pub fn identity(&self, x: &NerObject) -> NerMorphism {
        let b = &self.bicategory;
        NerMorphism { objs: x.objs.clone(), cells: x.cells.iter().map(|&u| b.id2(u)).collect() }
    }

    pub fn source(&self, m: &NerMorphism) -> NerObject {
        NerObject { objs: m.objs.clone(), cells: m.cells.iter().map(|&a| self.bicategory.src2(a)).collect() }
    }

    pub fn target(&self, m: &NerMorphism) -> NerObject {
        NerObject { objs: m.objs.clone(), cells: m.cells.iter().map(|&a| self.bicategory.dst2(a)).collect() }
    }

    /// `β·α`, componentwise.
    pub fn compose(&self, beta: &NerMorphism, alpha: &NerMorphism) -> Result<NerMorphism> {
        if beta.objs != alpha.objs {
            return Err(Error::NotComposable("Ner morphism".into(), "Ner morphism".into()));
        }
        let cells = beta.cells.iter().zip(&alpha.cells).map(|(&y, &x)| self.bicategory.v(y, x)).collect::<Result<_>>()?;
        Ok(NerMorphism { objs: alpha.objs.clone(), cells })
    }

    pub fn is_iso(&self, m: &NerMorphism) -> bool {
        m.cells.iter().all(|&a| self.bicategory.is_invertible(a))
    }

    pub fn is_identity(&self, m: &NerMorphism) -> bool {
        m.cells.iter().all(|&a| self.bicategory.is_id2(a))
    }

    /// All morphisms out of `x`.
    pub fn morphisms_from(&self, x: &NerObject) -> Vec<NerMorphism> {
        let b = &self.bicategory;
        let mut out = vec![NerMorphism { objs: x.objs.clone(), cells: Vec::new() }];
        for &u in &x.cells {
            out = out
                .into_iter()
                .flat_map(|m| {
                    b.out2(u).iter().map(move |&a| {
                        let mut m2 = m.clone();
                        m2.cells.push(a);
                        m2
                    })
                })
                .collect();
        }
        out
    }

    /// `Ner_a: Ner_p → Ner_q` on objects, for `a: [q] → [p]`.
    pub fn apply(&self, a: &[usize], x: &NerObject) -> Result<NerObject> {
        let b = &self.bicategory;
        let objs = a.iter().map(|&k| x.objs[k]).collect();
        let cells = a
            .windows(2)
            .map(|w| if w[0] == w[1] { Ok(b.id1(x.objs[w[0]])) } else { or_comp1(b, &x.cells[w[0]..w[1]]) })
            .collect::<Result<_>>()?;
        Ok(NerObject { objs, cells })
    }

    /// `Ner_a` on morphisms.
    pub fn apply2(&self, a: &[usize], m: &NerMorphism) -> Result<NerMorphism> {
        let b = &self.bicategory;
        let objs = a.iter().map(|&k| m.objs[k]).collect();
        let cells = a
            .windows(2)
            .map(|w| if w[0] == w[1] { Ok(b.id2(b.id1(m.objs[w[0]]))) } else { or_comp2(b, &m.cells[w[0]..w[1]]) })
            .collect::<Result<_>>()?;
        Ok(NerMorphism { objs, cells })
    }

    /// `χ_{a,b}(x): Ner_b Ner_a x → Ner_{ab} x`, the components of
    /// `R_n b* ν_q a* J_p` at `x`, for `b: [n] → [q]`, `a: [q] → [p]`.
    pub fn chi(&self, a: &[usize], bm: &[usize], x: &NerObject) -> Result<NerMorphism> {
        let g = j_simplex(&self.bicategory, x)?.reindex(a);
        self.chi_from(&g, a, bm, x)
    }

    fn chi_from(&self, g: &Simplex, a: &[usize], bm: &[usize], x: &NerObject) -> Result<NerMorphism> {
        let objs = bm.iter().map(|&k| x.objs[a[k]]).collect();
        let cells = bm.windows(2).map(|w| nu(&self.bicategory, g, w[0], w[1])).collect::<Result<_>>()?;
        Ok(NerMorphism { objs, cells })
    }

    /// `χ_{a,b}(x)` read off the `ν` table of `J x`.
    fn chi_tabled(&self, t: &NuTable, a: &[usize], bm: &[usize], x: &NerObject) -> NerMorphism {
        NerMorphism { objs: bm.iter().map(|&k| x.objs[a[k]]).collect(), cells: bm.windows(2).map(|w| t.get(&a[w[0]..=w[1]])).collect() }
    }

    /// `Ner_p` as a finite category (product of hom-categories over each
    /// string of objects).
    pub fn category(&self, p: usize, limits: Limits) -> Result<FiniteCategory> {
        let mut cb = CategoryBuilder::new(format!("Ner_{p}({})", self.bicategory.name()));
        let xs = &self.objects[p];
        let index: HashMap<&NerObject, usize> = xs.iter().enumerate().map(|(i, x)| (x, i)).collect();
        for x in xs {
            cb.object(self.object_label(x));
        }
        let b = &self.bicategory;
        let mut mors: Vec<NerMorphism> = Vec::new();
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); xs.len()];
        for (i, x) in xs.iter().enumerate() {
            for m in self.morphisms_from(x) {
                let t = index[&self.target(&m)];
                let lab = if m.cells.is_empty() {
                    format!("1_{}", self.object_label(x))
                } else {
                    tuple_label(&m.cells.iter().rev().map(|&a| b.c2_label(a)).collect::<Vec<_>>())
                };
                let id = cb.morphism(lab, i, t);
                by_src[i].push(id);
                mors.push(m);
            }
            limits.check(&format!("Ner_{p} morphisms"), mors.len())?;
        }
        let mindex: HashMap<&NerMorphism, usize> = mors.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (i, x) in xs.iter().enumerate() {
            cb.identity(i, mindex[&self.identity(x)]);
        }
        for (f, m) in mors.iter().enumerate() {
            let t = index[&self.target(m)];
            for &g in &by_src[t] {
                let gf = self.compose(&mors[g], m)?;
                cb.compose(g, f, mindex[&gf]);
            }
        }
        cb.build()
    }

    /// Unit constraints, typing, invertibility and naturality of `χ`, and
    /// the cocycle condition for every composable triple of monotone maps
    /// inside the truncation.
    pub fn validate(&self) -> ValidationReport {
        let name = format!("Ner({})", self.bicategory.name());
        let v = self.violations().unwrap_or_else(|e| vec![Violation::schema("/", e.to_string())]);
        ValidationReport::new(name, v)
    }

    pub fn violations(&self) -> Result<Vec<Violation>> {
        let n = self.dim();
        let maps = MapIndex::new(n);
        let mut jobs = Vec::new();
        for p in 0..=n {
            for xi in 0..self.objects[p].len() {
                jobs.push((p, xi));
            }
        }
        let parts = exec::map(&jobs, |&(p, xi)| self.violations_at(&maps, p, &self.objects[p][xi]));
        let mut out = Vec::new();
        for part in parts {
            out.extend(part?);
        }
        Ok(out)
    }

    fn violations_at(&self, idx: &MapIndex, p: usize, x: &NerObject) -> Result<Vec<Violation>> {
        let n = self.dim();
        let b = &self.bicategory;
        let mut out = Vec::new();
        let xl = self.object_label(x);
        let inst = |what: &str, ms: &[&[usize]]| format!("{what}{ms:?}@{xl}");
        let ident: Vec<usize> = (0..=p).collect();
        if self.apply(&ident, x)? != *x {
            out.push(Violation::axiom("normal", inst("Ner_1", &[]), "", ""));
        }
        let tx = NuTable::new(b, &j_simplex(b, x)?, n + 1)?;
        let arrows: Vec<(NerMorphism, NerObject, NuTable)> = self
            .morphisms_from(x)
            .into_iter()
            .map(|al| {
                let x2 = self.target(&al);
                let t2 = NuTable::new(b, &j_simplex(b, &x2)?, n + 1)?;
                Ok((al, x2, t2))
            })
            .collect::<Result<_>>()?;
        for q in 0..=n {
            for &ai in &idx.by_dims[q][p] {
                let a = &idx.maps[ai];
                let ax = self.apply(a, x)?;
                let tax = NuTable::new(b, &j_simplex(b, &ax)?, n + 1)?;
                // Ner_a on identities
                if self.apply2(a, &self.identity(x))? != self.identity(&ax) {
                    out.push(Violation::axiom("functor-identity", inst("Ner_a", &[a]), "", ""));
                }
                for m in 0..=n {
                    for &bi in &idx.by_dims[m][q] {
                        let bm = &idx.maps[bi];
                        let ab = &idx.maps[idx.comp[ai][bi]];
                        let chi = self.chi_tabled(&tx, a, bm, x);
                        let bax = self.apply(bm, &ax)?;
                        let abx = self.apply(ab, x)?;
                        if self.source(&chi) != bax || self.target(&chi) != abx {
                            out.push(Violation::axiom("chi-typing", inst("chi", &[a, bm]), "", ""));
                            continue;
                        }
                        if !self.is_iso(&chi) {
                            out.push(Violation::axiom("chi-invertible", inst("chi", &[a, bm]), "", ""));
                        }
                        let a_id = q == p && a.iter().enumerate().all(|(i, &v)| i == v);
                        let b_id = m == q && bm.iter().enumerate().all(|(i, &v)| i == v);
                        if (a_id || b_id) && !self.is_identity(&chi) {
                            out.push(Violation::axiom("chi-unit", inst("chi", &[a, bm]), "", ""));
                        }
                        // naturality: Ner_ab(α)·χ(x) = χ(x′)·Ner_b Ner_a(α)
                        for (al, x2, t2) in &arrows {
                            let l = self.compose(&self.apply2(ab, al)?, &chi)?;
                            let r = self.compose(&self.chi_tabled(t2, a, bm, x2), &self.apply2(bm, &self.apply2(a, al)?)?)?;
                            if l != r {
                                out.push(Violation::axiom("chi-naturality", inst("chi", &[a, bm]), format!("{:?}", l.cells), format!("{:?}", r.cells)));
                            }
                        }
                        // cocycle: χ_{ab,c}·Ner_c(χ_{a,b}) = χ_{a,bc}·χ_{b,c}(Ner_a x).
                        // Component i of the equation for c: [r] → [m] is the
                        // whole equation for (c(i), c(i+1)): [1] → [m], so the
                        // maps out of [1] cover every c.
                        let chi_cell = |j: usize| tx.get(&a[bm[j]..=bm[j + 1]]);
                        let r = 1;
                        if n >= r {
                            for &ci in &idx.by_dims[r][m] {
                                let c = &idx.maps[ci];
                                let bc = &idx.maps[idx.comp[bi][ci]];
                                for i in 0..r {
                                    let (lo, hi) = (c[i], c[i + 1]);
                                    // Ner_c(χ_{a,b}) at position i
                                    let mut inner = if lo == hi { b.id2(b.id1(x.objs[a[bm[lo]]])) } else { chi_cell(lo) };
                                    for j in lo + 1..hi {
                                        inner = b.h2(chi_cell(j), inner)?;
                                    }
                                    let lhs = b.v(tx.get(&ab[lo..=hi]), inner)?;
                                    let rhs = b.v(tx.get(&a[bc[i]..=bc[i + 1]]), tax.get(&bm[lo..=hi]))?;
                                    if lhs != rhs {
                                        out.push(Violation::axiom(
                                            "chi-cocycle",
                                            inst("chi", &[a, bm, c]),
                                            format!("{} at {i}", b.c2_label(lhs)),
                                            format!("{} at {i}", b.c2_label(rhs)),
                                        ));
                                        break;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `Ner F`: components `(u_p, …, u₁) ↦ (Fu_p, …, Fu₁)` and constraints
/// `N̂F_a = R′_q a* ν′_p F_* J_p`.
#[derive(Clone, Debug)]
pub struct NerveOfLax {
    pub functor: LaxMorphism,
    pub source: GrothendieckNerve,
    pub target: GrothendieckNerve,
}

pub fn nerve_of_lax(f: &LaxMorphism, n: usize) -> Result<NerveOfLax> {
    nerve_of_lax_with_limits(f, n, Limits::default())
}

pub fn nerve_of_lax_with_limits(f: &LaxMorphism, n: usize, limits: Limits) -> Result<NerveOfLax> {
    if f.direction != Direction::Lax {
        return Err(Error::Direction(format!("{} must be lax", f.name)));
    }
    Ok(NerveOfLax {
        functor: f.clone(),
        source: grothendieck_nerve_with_limits(&f.source, n, limits)?,
        target: grothendieck_nerve_with_limits(&f.target, n, limits)?,
    })
}

impl NerveOfLax {
    pub fn map_object(&self, x: &NerObject) -> NerObject {
        let f = &self.functor;
        NerObject { objs: x.objs.iter().map(|&o| f.ob(o)).collect(), cells: x.cells.iter().map(|&u| f.c1(u)).collect() }
    }

    pub fn map_morphism(&self, m: &NerMorphism) -> NerMorphism {
        let f = &self.functor;
        NerMorphism { objs: m.objs.iter().map(|&o| f.ob(o)).collect(), cells: m.cells.iter().map(|&a| f.c2(a)).collect() }
    }

    /// `F_* J_p x`, the composite functor data `[p] → B′`.
    pub fn composite_j(&self, x: &NerObject) -> Result<Simplex> {
        let f = &self.functor;
        let t = &*f.target;
        let j = j_simplex(&f.source, x)?;
        let p = x.objs.len() - 1;
        let mut s = Simplex {
            objs: x.objs.iter().map(|&o| f.ob(o).0).collect(),
            arrows: j.arrows.iter().map(|&u| f.c1(C1(u)).0).collect(),
            units: Vec::with_capacity(p + 1),
            cells: Vec::new(),
        };
        for i in 0..=p {
            s.units.push(t.v(f.c2(C2(j.units[i])), f.unit_cell(x.objs[i]))?.0);
        }
        for k in 0..=p {
            for jj in 0..=k {
                for i in 0..=jj {
                    let inner = f.comp_cell(C1(j.arrow(jj, k)), C1(j.arrow(i, jj)));
                    s.cells.push(t.v(f.c2(C2(j.cell(i, jj, k))), inner)?.0);
                }
            }
        }
        Ok(s)
    }

    /// `N̂F_a(x): Ner′_a(Ner F_p x) → Ner F_q(Ner_a x)`.
    pub fn constraint(&self, a: &[usize], x: &NerObject) -> Result<NerMorphism> {
        let g = self.composite_j(x)?;
        let t = &*self.functor.target;
        let objs = a.iter().map(|&k| self.functor.ob(x.objs[k])).collect();
        let cells = a.windows(2).map(|w| nu(t, &g, w[0], w[1])).collect::<Result<_>>()?;
        Ok(NerMorphism { objs, cells })
    }

    /// Functoriality of each component, typing and naturality of the
    /// constraints, `N̂F_1 = 1`, and compatibility with `χ` and `χ′`.
    pub fn violations(&self) -> Result<Vec<Violation>> {
        let n = self.source.dim();
        let maps: Vec<Vec<Vec<Vec<usize>>>> = (0..=n).map(|q| (0..=n).map(|p| monotone_maps(q, p)).collect()).collect();
        let mut jobs = Vec::new();
        for p in 0..=n {
            for xi in 0..self.source.objects[p].len() {
                jobs.push((p, xi));
            }
        }
        let parts = exec::map(&jobs, |&(p, xi)| self.violations_at(&maps, p, &self.source.objects[p][xi]));
        let mut out = Vec::new();
        for part in parts {
            out.extend(part?);
        }
        Ok(out)
    }

    fn violations_at(&self, maps: &[Vec<Vec<Vec<usize>>>], p: usize, x: &NerObject) -> Result<Vec<Violation>> {
        let (s, t) = (&self.source, &self.target);
        let n = s.dim();
        let xl = s.object_label(x);
        let inst = |what: &str, ms: &[&[usize]]| format!("{what}{ms:?}@{xl}");
        let mut out = Vec::new();
        let fx = self.map_object(x);
        let arrows = s.morphisms_from(x);
        // components are functors
        if self.map_morphism(&s.identity(x)) != t.identity(&fx) {
            out.push(Violation::axiom("component-identity", inst("NerF", &[]), "", ""));
        }
        for al in &arrows {
            for be in s.morphisms_from(&s.target(al)) {
                if self.map_morphism(&s.compose(&be, al)?) != t.compose(&self.map_morphism(&be), &self.map_morphism(al))? {
                    out.push(Violation::axiom("component-composition", inst("NerF", &[]), "", ""));
                }
            }
        }
        let ident: Vec<usize> = (0..=p).collect();
        if !t.is_identity(&self.constraint(&ident, x)?) {
            out.push(Violation::axiom("constraint-unit", inst("NF_1", &[]), "", ""));
        }
        for q in 0..=n {
            for a in &maps[q][p] {
                let ax = s.apply(a, x)?;
                let ca = self.constraint(a, x)?;
                if t.source(&ca) != t.apply(a, &fx)? || t.target(&ca) != self.map_object(&ax) {
                    out.push(Violation::axiom("constraint-typing", inst("NF", &[a]), "", ""));
                    continue;
                }
                for al in &arrows {
                    let x2 = s.target(al);
                    let l = t.compose(&self.map_morphism(&s.apply2(a, al)?), &ca)?;
                    let r = t.compose(&self.constraint(a, &x2)?, &t.apply2(a, &self.map_morphism(al))?)?;
                    if l != r {
                        out.push(Violation::axiom("constraint-naturality", inst("NF", &[a]), format!("{:?}", l.cells), format!("{:?}", r.cells)));
                    }
                }
                for m in 0..=n {
                    for bm in &maps[m][q] {
                        let ab = compose_monotone(a, bm);
                        // F(χ_{a,b})·N̂F_b(Ner_a x)·Ner′_b(N̂F_a x) = N̂F_{ab}(x)·χ′_{a,b}(NerF x)
                        let lhs = t.compose(
                            &self.map_morphism(&s.chi(a, bm, x)?),
                            &t.compose(&self.constraint(bm, &ax)?, &t.apply2(bm, &ca)?)?,
                        )?;
                        let rhs = t.compose(&self.constraint(&ab, x)?, &t.chi(a, bm, &fx)?)?;
                        if lhs != rhs {
                            out.push(Violation::axiom("constraint-coherence", inst("NF", &[a, bm]), format!("{:?}", lhs.cells), format!("{:?}", rhs.cells)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let v = self.violations().unwrap_or_else(|e| vec![Violation::schema("/", e.to_string())]);
        ValidationReport::new(format!("Ner({})", self.functor.name), v)
    }

    /// Whether every constraint `N̂F_a` is an identity within the truncation.
    pub fn is_strict(&self) -> Result<bool> {
        let n = self.source.dim();
        for p in 0..=n {
            for x in &self.source.objects[p] {
                for q in 0..=n {
                    for a in monotone_maps(q, p) {
                        if !self.target.is_identity(&self.constraint(&a, x)?) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `Ner G ∘ Ner F = Ner(GF)` on objects, morphisms and constraints, where
/// the composite constraint is `G(N̂F_a)·N̂G_a(Ner F)`.
pub fn nerve_composite_violations(f: &LaxMorphism, g: &LaxMorphism, n: usize) -> Result<Vec<Violation>> {
    let gf = f.then(g)?;
    let (nf, ng, ngf) = (nerve_of_lax(f, n)?, nerve_of_lax(g, n)?, nerve_of_lax(&gf, n)?);
    let s = &nf.source;
    let mut out = Vec::new();
    for p in 0..=n {
        for x in &s.objects[p] {
            let xl = s.object_label(x);
            if ng.map_object(&nf.map_object(x)) != ngf.map_object(x) {
                out.push(Violation::axiom("composite-objects", xl.clone(), "", ""));
            }
            for al in s.morphisms_from(x) {
                if ng.map_morphism(&nf.map_morphism(&al)) != ngf.map_morphism(&al) {
                    out.push(Violation::axiom("composite-morphisms", xl.clone(), "", ""));
                }
            }
            for q in 0..=n {
                for a in monotone_maps(q, p) {
                    let l = ngf.target.compose(&ng.map_morphism(&nf.constraint(&a, x)?), &ng.constraint(&a, &nf.map_object(x))?)?;
                    let r = ngf.constraint(&a, x)?;
                    if l != r {
                        out.push(Violation::axiom("composite-constraints", format!("{a:?}@{xl}"), format!("{:?}", l.cells), format!("{:?}", r.cells)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Ner 1 = 1`: identity components and identity constraints.
pub fn nerve_identity_violations(b: &Arc<FiniteBicategory>, n: usize) -> Result<Vec<Violation>> {
    let one = LaxMorphism::identity(b.clone(), Direction::Lax);
    let nf = nerve_of_lax(&one, n)?;
    let mut out = Vec::new();
    for p in 0..=n {
        for x in &nf.source.objects[p] {
            let xl = nf.source.object_label(x);
            if nf.map_object(x) != *x || nf.source.morphisms_from(x).iter().any(|m| nf.map_morphism(m) != *m) {
                out.push(Violation::axiom("identity-components", xl.clone(), "", ""));
            }
            for q in 0..=n {
                for a in monotone_maps(q, p) {
                    if !nf.target.is_identity(&nf.constraint(&a, x)?) {
                        out.push(Violation::axiom("identity-constraints", format!("{a:?}@{xl}"), "", ""));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{m_min, m_omega};

    #[test]
    fn broken_pentagon_breaks_the_cocycle() {
        let b = m_omega().delooping();
        let mut bld = b.to_builder();
        let (zero, one, bad) = (b.find_c1("0").unwrap(), b.find_c1("1").unwrap(), b.find_c2("0:1").unwrap());
        bld.set_assoc(one, one, zero, bad);
        let broken = Arc::new(bld.build().unwrap());
        assert!(broken.validate().has_axiom("pentagon"));
        let r = grothendieck_nerve(&broken, 3).unwrap().validate();
        assert!(r.has_axiom("chi-cocycle"), "{:?}", r.violations.first());
        assert!(grothendieck_nerve(&b, 3).unwrap().validate().is_valid());
    }

    #[test]
    fn tabled_chi_matches_direct_chi() {
        for b in [m_omega().delooping(), m_min().delooping()] {
            let g = grothendieck_nerve(&b, 3).unwrap();
            for p in 0..=3 {
                for x in &g.objects[p] {
                    let t = NuTable::new(&b, &j_simplex(&b, x).unwrap(), 4).unwrap();
                    for q in 0..=3 {
                        for a in monotone_maps(q, p) {
                            for m in 0..=3 {
                                for bm in monotone_maps(m, q) {
                                    assert_eq!(g.chi_tabled(&t, &a, &bm, x), g.chi(&a, &bm, x).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
