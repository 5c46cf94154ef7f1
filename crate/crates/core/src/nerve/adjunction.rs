use std::collections::HashMap;
use std::sync::Arc;

use super::geometric::{simplex_label, OrdinalSpaces};
use super::grothendieck::{grothendieck_nerve_with_limits, nu, or_comp1, or_comp2, j_simplex, GrothendieckNerve, NerMorphism, NerObject};
use super::lax_search::{LaxFunctorData, LaxFunctorSpace};
use super::sset::{compose_monotone, monotone_maps, Simplex};
use crate::algebra::{free_category_with_paths, CategoryBuilder, FiniteCategory, FiniteGraph};
use crate::bicat::{Claims, Direction, FiniteBicategory, Icon, LaxMorphism, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};
use crate::{exec, tuple_label, Limits};

/// A graph morphism into the underlying graph of a bicategory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMap {
    pub objs: Vec<Obj>,
    pub edges: Vec<C1>,
}

/// The free-category adjunction `J ⊣ R` between graph morphisms `G → B`
/// and lax functors out of the free category on `G`, with counit `ν`.
#[derive(Clone, Debug)]
pub struct GraphAdjunction {
    pub graph: FiniteGraph,
    pub bicategory: Arc<FiniteBicategory>,
    pub space: LaxFunctorSpace,
    /// Edge path of each morphism of the free category.
    pub paths: Vec<Vec<usize>>,
    path_index: HashMap<Vec<usize>, usize>,
    edge_morphism: Vec<usize>,
}

impl GraphAdjunction {
    pub fn new(g: &FiniteGraph, b: Arc<FiniteBicategory>) -> Result<Self> {
        let (c, paths) = free_category_with_paths(g)?;
        let space = LaxFunctorSpace::new(Arc::new(c))?;
        let path_index: HashMap<Vec<usize>, usize> =
            paths.iter().enumerate().filter(|(_, p)| !p.is_empty()).map(|(m, p)| (p.clone(), m)).collect();
        let edge_morphism = (0..g.edges.len()).map(|e| path_index[&vec![e]]).collect();
        Ok(GraphAdjunction { graph: g.clone(), bicategory: b, space, paths, path_index, edge_morphism })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.space.category
    }

    /// Every graph morphism `G → B`.
    pub fn graph_maps(&self, limits: Limits) -> Result<Vec<GraphMap>> {
        let b = &self.bicategory;
        let g = &self.graph;
        let mut out = vec![GraphMap { objs: Vec::new(), edges: Vec::new() }];
        for _ in 0..g.vertices.len() {
            out = out
                .into_iter()
                .flat_map(|m| {
                    b.objs().map(move |o| {
                        let mut m2 = m.clone();
                        m2.objs.push(o);
                        m2
                    })
                })
                .collect();
            limits.check("graph morphisms", out.len())?;
        }
        for &(_, s, d) in &g.edges {
            out = out
                .into_iter()
                .flat_map(|m| {
                    b.hom1(m.objs[s], m.objs[d]).iter().map(move |&f| {
                        let mut m2 = m.clone();
                        m2.edges.push(f);
                        m2
                    })
                })
                .collect();
            limits.check("graph morphisms", out.len())?;
        }
        Ok(out)
    }

    /// Morphisms `φ: f ⇒ f′` of graph morphisms (one 2-cell per edge).
    pub fn graph_morphisms(&self, f: &GraphMap, f2: &GraphMap) -> Vec<Vec<C2>> {
        if f.objs != f2.objs {
            return Vec::new();
        }
        let b = &self.bicategory;
        let mut out = vec![Vec::new()];
        for (e, &u) in f.edges.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|m: Vec<C2>| {
                    b.hom2(u, f2.edges[e]).iter().map(move |&a| {
                        let mut m2 = m.clone();
                        m2.push(a);
                        m2
                    })
                })
                .collect();
        }
        out
    }

    fn prefix(&self, m: usize) -> (usize, usize) {
        // a non-empty path minus its last edge, and that edge
        let p = &self.paths[m];
        let last = *p.last().unwrap();
        let rest = if p.len() == 1 { self.category().id(self.category().src(m)) } else { self.path_index[&p[..p.len() - 1]] };
        (rest, last)
    }

    /// `J(f)`: paths go to iterated composites `∘ᵒʳ`, units are identities,
    /// and `Ĵ_{v,u}` is built from associators.
    pub fn j(&self, f: &GraphMap) -> Result<LaxFunctorData> {
        let b = &*self.bicategory;
        let c = self.category();
        let arrows: Vec<C1> = (0..c.morphism_count())
            .map(|m| {
                let p = &self.paths[m];
                if p.is_empty() {
                    Ok(b.id1(f.objs[c.src(m)]))
                } else {
                    or_comp1(b, &p.iter().map(|&e| f.edges[e]).collect::<Vec<_>>())
                }
            })
            .collect::<Result<_>>()?;
        let units = (0..c.object_count()).map(|o| b.id2(arrows[c.id(o)])).collect();
        let mut cells = vec![C2(u32::MAX); self.space.pairs.len()];
        let mut order: Vec<usize> = (0..self.space.pairs.len()).collect();
        order.sort_by_key(|&pi| self.paths[self.space.pairs[pi].0].len());
        for pi in order {
            let (v, u) = self.space.pairs[pi];
            cells[pi] = if self.paths[u].is_empty() {
                b.runit(arrows[v])
            } else if self.paths[v].is_empty() {
                b.lunit(arrows[u])
            } else if self.paths[v].len() == 1 {
                b.id2(arrows[c.comp(v, u)])
            } else {
                let (rest, last) = self.prefix(v);
                let fe = f.edges[last];
                let inner = cells[self.space.pair(rest, u)];
                b.chain(&[b.assoc(fe, arrows[rest], arrows[u])?, b.wl(fe, inner)?])?
            };
        }
        Ok(LaxFunctorData { objs: f.objs.clone(), arrows, units, cells })
    }

    /// `J(φ)`: per morphism, the iterated composite of the edge components.
    pub fn j_morphism(&self, f: &GraphMap, phi: &[C2]) -> Result<Vec<C2>> {
        let b = &*self.bicategory;
        let c = self.category();
        (0..c.morphism_count())
            .map(|m| {
                let p = &self.paths[m];
                if p.is_empty() {
                    Ok(b.id2(b.id1(f.objs[c.src(m)])))
                } else {
                    or_comp2(b, &p.iter().map(|&e| phi[e]).collect::<Vec<_>>())
                }
            })
            .collect()
    }

    /// `R(F)`: restriction to vertices and edges.
    pub fn r(&self, d: &LaxFunctorData) -> GraphMap {
        GraphMap { objs: d.objs.clone(), edges: self.edge_morphism.iter().map(|&m| d.arrows[m]).collect() }
    }

    /// `R` on icons.
    pub fn r_icon(&self, cells: &[C2]) -> Vec<C2> {
        self.edge_morphism.iter().map(|&m| cells[m]).collect()
    }

    /// `ν_F: JR(F) ⇒ F`: `Ĝ_x` on identities, `1` on edges and
    /// `F̂_{e,m′}·(1∘ν(m′))` on a path `m = e·m′`.
    pub fn nu(&self, d: &LaxFunctorData) -> Result<Vec<C2>> {
        let b = &*self.bicategory;
        let c = self.category();
        let mut out = vec![C2(u32::MAX); c.morphism_count()];
        let mut order: Vec<usize> = (0..c.morphism_count()).collect();
        order.sort_by_key(|&m| self.paths[m].len());
        for m in order {
            let p = &self.paths[m];
            out[m] = match p.len() {
                0 => d.units[c.src(m)],
                1 => b.id2(d.arrows[m]),
                _ => {
                    let (rest, last) = self.prefix(m);
                    let em = self.edge_morphism[last];
                    b.chain(&[b.wl(d.arrows[em], out[rest])?, d.cells[self.space.pair(em, rest)]])?
                }
            };
        }
        Ok(out)
    }

    fn lax(&self, name: &str, d: &LaxFunctorData) -> LaxMorphism {
        self.space.to_lax(name, self.bicategory.clone(), d, Direction::Lax)
    }

    fn icon(&self, name: &str, f: &LaxFunctorData, g: &LaxFunctorData, cells: Vec<C2>) -> Icon {
        Icon { name: name.into(), source: self.lax("F", f), target: self.lax("G", g), cells: cells.into_iter().collect() }
    }
}

/// Counts and failures from [`graph_adjunction`].
#[derive(Clone, Debug)]
pub struct GraphAdjunctionData {
    pub adjunction: GraphAdjunction,
    pub graph_maps: usize,
    pub graph_morphisms: usize,
    pub lax_functors: usize,
    pub icons: usize,
    pub report: ValidationReport,
}

pub fn graph_adjunction(g: &FiniteGraph, b: &Arc<FiniteBicategory>) -> Result<GraphAdjunctionData> {
    graph_adjunction_with_limits(g, b, Limits::default())
}

/// Builds `J`, `R` and `ν` and checks, over every graph morphism and every
/// lax functor: `J(f)` is a unitary pseudo-functor, `J(φ)` and `ν_F` are
/// icons, `RJ = 1`, `νJ = 1`, `Rν = 1`, `ν` is natural in icons and
/// invertible at pseudo-functors.
pub fn graph_adjunction_with_limits(g: &FiniteGraph, b: &Arc<FiniteBicategory>, limits: Limits) -> Result<GraphAdjunctionData> {
    let adj = GraphAdjunction::new(g, b.clone())?;
    let bb = &**b;
    let maps = adj.graph_maps(limits)?;
    let mut v: Vec<Violation> = Vec::new();
    let mut graph_morphisms = 0;
    let js: Vec<LaxFunctorData> = maps.iter().map(|f| adj.j(f)).collect::<Result<_>>()?;
    for (f, jf) in maps.iter().zip(&js) {
        let inst = tuple_label(&f.edges.iter().map(|&e| bb.c1_label(e)).collect::<Vec<_>>());
        let mut lm = adj.lax("J(f)", jf);
        lm.claims = Claims { normal: true, pseudo: true, strict: false };
        for mut x in lm.validate().violations {
            x.instance = format!("J{inst}:{}", x.instance);
            v.push(x);
        }
        if adj.r(jf) != *f {
            v.push(Violation::axiom("RJ=1", inst.clone(), "", ""));
        }
        if !adj.nu(jf)?.iter().all(|&c| bb.is_id2(c)) {
            v.push(Violation::axiom("nuJ=1", inst.clone(), "", ""));
        }
    }
    for (i, f) in maps.iter().enumerate() {
        for (k, f2) in maps.iter().enumerate() {
            for phi in adj.graph_morphisms(f, f2) {
                graph_morphisms += 1;
                limits.check("graph morphism 2-cells", graph_morphisms)?;
                let jphi = adj.j_morphism(f, &phi)?;
                let icon = adj.icon("J(phi)", &js[i], &js[k], jphi.clone());
                v.extend(icon.validate().violations);
                if adj.r_icon(&jphi) != phi {
                    v.push(Violation::axiom("RJ=1", format!("phi@{i}->{k}"), "", ""));
                }
            }
        }
    }
    let lax = adj.space.enumerate(bb, false, limits)?;
    let nus: Vec<Vec<C2>> = lax.iter().map(|d| adj.nu(d)).collect::<Result<_>>()?;
    let jrs: Vec<LaxFunctorData> = lax.iter().map(|d| adj.j(&adj.r(d))).collect::<Result<_>>()?;
    for (i, d) in lax.iter().enumerate() {
        let icon = adj.icon("nu", &jrs[i], d, nus[i].clone());
        v.extend(icon.validate().violations);
        if !adj.r_icon(&nus[i]).iter().all(|&c| bb.is_id2(c)) {
            v.push(Violation::axiom("Rnu=1", format!("F{i}"), "", ""));
        }
        let pseudo = d.units.iter().chain(&d.cells).all(|&c| bb.is_invertible(c));
        if pseudo && !nus[i].iter().all(|&c| bb.is_invertible(c)) {
            v.push(Violation::axiom("nu-invertible", format!("F{i}"), "", ""));
        }
    }
    // naturality: Φ·ν_F = ν_G·JR(Φ)
    let mut icons = 0;
    for (i, d) in lax.iter().enumerate() {
        for (k, e) in lax.iter().enumerate() {
            for phi in adj.space.icons(bb, d, e) {
                icons += 1;
                limits.check("icons", icons)?;
                let jr = adj.j_morphism(&adj.r(d), &adj.r_icon(&phi))?;
                for m in 0..phi.len() {
                    let l = bb.v(phi[m], nus[i][m])?;
                    let r = bb.v(nus[k][m], jr[m])?;
                    if l != r {
                        v.push(Violation::axiom("nu-naturality", format!("F{i}->F{k}:{}", adj.category().label(m)), bb.c2_label(l), bb.c2_label(r)));
                    }
                }
            }
        }
    }
    v.sort();
    Ok(GraphAdjunctionData {
        graph_maps: maps.len(),
        graph_morphisms,
        lax_functors: lax.len(),
        icons,
        report: ValidationReport::new(format!("adjunction({})", b.name()), v),
        adjunction: adj,
    })
}

/// The category of lax functors `[p] → B` and icons between them.
#[derive(Clone, Debug)]
pub struct IconCategory {
    pub category: FiniteCategory,
    pub functors: Vec<Simplex>,
    /// `(source, target, components in pair layout)` for each morphism.
    pub icons: Vec<(usize, usize, Vec<C2>)>,
}

fn icon_in_pairs(sp: &LaxFunctorSpace, p: usize, cells: &[C2]) -> Vec<C2> {
    let c = &*sp.category;
    let mut out = Vec::new();
    for j in 0..=p {
        for i in 0..=j {
            out.push(cells[c.ordinal_arrow(i, j)]);
        }
    }
    out
}

pub fn icon_category(p: usize, b: &Arc<FiniteBicategory>, limits: Limits) -> Result<IconCategory> {
    let ords = OrdinalSpaces::new(p)?;
    icon_category_in(&ords, p, b, limits)
}

fn icon_category_in(ords: &OrdinalSpaces, p: usize, b: &Arc<FiniteBicategory>, limits: Limits) -> Result<IconCategory> {
    let sp = ords.get(p);
    let datas = sp.enumerate(b, false, limits)?;
    let functors: Vec<Simplex> = datas.iter().map(|d| ords.to_simplex(p, d)).collect();
    let mut cb = CategoryBuilder::new(format!("Icon[{p}]({})", b.name()));
    for x in &functors {
        cb.object(simplex_label(b, x, false));
    }
    let jobs: Vec<usize> = (0..datas.len()).collect();
    let found = exec::map(&jobs, |&i| {
        let mut out = Vec::new();
        for (k, e) in datas.iter().enumerate() {
            for phi in sp.icons(b, &datas[i], e) {
                out.push((i, k, icon_in_pairs(sp, p, &phi)));
            }
        }
        out
    });
    let icons: Vec<(usize, usize, Vec<C2>)> = found.into_iter().flatten().collect();
    limits.check("icons", icons.len())?;
    let index: HashMap<(usize, &[C2]), usize> = icons.iter().enumerate().map(|(m, (s, _, c))| ((*s, c.as_slice()), m)).collect();
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); functors.len()];
    for (m, (s, t, cells)) in icons.iter().enumerate() {
        let lab = format!("{}:{s}->{t}", tuple_label(&cells.iter().map(|&a| b.c2_label(a)).collect::<Vec<_>>()));
        cb.morphism(lab, *s, *t);
        by_src[*s].push(m);
    }
    for (i, x) in functors.iter().enumerate() {
        let ids: Vec<C2> = x.arrows.iter().map(|&f| b.id2(C1(f))).collect();
        let m = index.get(&(i, ids.as_slice())).ok_or_else(|| Error::Invalid("identity icon missing".into()))?;
        cb.identity(i, *m);
    }
    for (f, (s, t, c1)) in icons.iter().enumerate() {
        let _ = s;
        for &g in &by_src[*t] {
            let c2 = &icons[g].2;
            let comp: Vec<C2> = c2.iter().zip(c1).map(|(&y, &x)| b.v(y, x)).collect::<Result<_>>()?;
            let h = index.get(&(*s, comp.as_slice())).ok_or_else(|| Error::Invalid("composite icon missing".into()))?;
            cb.compose(g, f, *h);
        }
    }
    Ok(IconCategory { category: cb.build()?, functors, icons })
}

/// The lax simplicial functor `R` from the geometric nerve (lax functors
/// and icons) to the Grothendieck nerve: `R_p` restricts to the underlying
/// string, `R̂_a = R_q a* ν_p`.
#[derive(Clone, Debug)]
pub struct NerveProjection {
    pub bicategory: Arc<FiniteBicategory>,
    pub ner: GrothendieckNerve,
    pub icons: Vec<IconCategory>,
}

pub fn nerve_projection(b: &Arc<FiniteBicategory>, n: usize, limits: Limits) -> Result<NerveProjection> {
    let ordinals = OrdinalSpaces::new(n)?;
    let icons = (0..=n).map(|p| icon_category_in(&ordinals, p, b, limits)).collect::<Result<_>>()?;
    Ok(NerveProjection { bicategory: b.clone(), ner: grothendieck_nerve_with_limits(b, n, limits)?, icons })
}

impl NerveProjection {
    pub fn r(&self, x: &Simplex) -> NerObject {
        let p = x.dim();
        NerObject { objs: x.objs.iter().map(|&o| Obj(o)).collect(), cells: (1..=p).map(|i| C1(x.arrow(i - 1, i))).collect() }
    }

    pub fn r_icon(&self, x: &Simplex, cells: &[C2]) -> NerMorphism {
        let p = x.dim();
        NerMorphism {
            objs: x.objs.iter().map(|&o| Obj(o)).collect(),
            cells: (1..=p).map(|i| cells[super::sset::pair_index(i - 1, i)]).collect(),
        }
    }

    /// `R̂_a(F): Ner_a R_p F → R_q a* F`.
    pub fn r_hat(&self, a: &[usize], x: &Simplex) -> Result<NerMorphism> {
        let b = &*self.bicategory;
        Ok(NerMorphism {
            objs: a.iter().map(|&k| Obj(x.objs[k])).collect(),
            cells: a.windows(2).map(|w| nu(b, x, w[0], w[1])).collect::<Result<_>>()?,
        })
    }

    /// `R̂_1 = 1`, typing, naturality in icons and coherence with `χ`:
    /// `R̂_{ab}(F)·χ_{a,b}(R_p F) = R̂_b(a*F)·Ner_b(R̂_a F)`.
    pub fn violations(&self) -> Result<Vec<Violation>> {
        let n = self.ner.dim();
        let ner = &self.ner;
        let mut out = Vec::new();
        for p in 0..=n {
            let cat = &self.icons[p];
            for (xi, x) in cat.functors.iter().enumerate() {
                let inst = |w: &str| format!("{w}@[{p}]#{xi}");
                let rx = self.r(x);
                let ident: Vec<usize> = (0..=p).collect();
                if !ner.is_identity(&self.r_hat(&ident, x)?) {
                    out.push(Violation::axiom("R-unit", inst("R_1"), "", ""));
                }
                for q in 0..=n {
                    for a in monotone_maps(q, p) {
                        let ra = self.r_hat(&a, x)?;
                        let ax = x.reindex(&a);
                        if ner.source(&ra) != ner.apply(&a, &rx)? || ner.target(&ra) != self.r(&ax) {
                            out.push(Violation::axiom("R-typing", inst(&format!("R{a:?}")), "", ""));
                            continue;
                        }
                        for (s, t, cells) in &cat.icons {
                            if *s != xi {
                                continue;
                            }
                            let y = &cat.functors[*t];
                            // R_q(a*Φ)·R̂_a(F) = R̂_a(G)·Ner_a(R_p Φ)
                            let a_cells = Simplex { objs: x.objs.clone(), arrows: cells.iter().map(|c| c.0).collect(), units: vec![], cells: vec![] }.reindex(&a);
                            let a_cells: Vec<C2> = a_cells.arrows.iter().map(|&c| C2(c)).collect();
                            let l = ner.compose(&self.r_icon(&ax, &a_cells), &ra)?;
                            let r = ner.compose(&self.r_hat(&a, y)?, &ner.apply2(&a, &self.r_icon(x, cells))?)?;
                            if l != r {
                                out.push(Violation::axiom("R-naturality", inst(&format!("R{a:?}->{t}")), "", ""));
                            }
                        }
                        for m in 0..=n {
                            for bm in monotone_maps(m, q) {
                                let ab = compose_monotone(&a, &bm);
                                let l = ner.compose(&self.r_hat(&ab, x)?, &ner.chi(&a, &bm, &rx)?)?;
                                let r = ner.compose(&self.r_hat(&bm, &ax)?, &ner.apply2(&bm, &ra)?)?;
                                if l != r {
                                    out.push(Violation::axiom("R-coherence", inst(&format!("R{a:?}{bm:?}")), format!("{:?}", l.cells), format!("{:?}", r.cells)));
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

/// The bijection `Hom(J_p x, F) ≅ Hom(x, R_p F)`, `Φ ↦ R_p Φ`, checked by
/// enumerating both sides for every `x ∈ Ner_p` and lax `F: [p] → B` over
/// the same objects. Returns the number of pairs checked and the failures.
pub fn jr_bijection(b: &Arc<FiniteBicategory>, p: usize, limits: Limits) -> Result<(usize, Vec<Violation>)> {
    let ords = OrdinalSpaces::new(p)?;
    let sp = ords.get(p);
    let ner = grothendieck_nerve_with_limits(b, p, limits)?;
    let functors: Vec<Simplex> = sp.enumerate(b, false, limits)?.iter().map(|d| ords.to_simplex(p, d)).collect();
    let restrict = |cells: &[C2]| -> Vec<C2> { (1..=p).map(|i| cells[super::sset::pair_index(i - 1, i)]).collect() };
    let jobs: Vec<&NerObject> = ner.objects[p].iter().collect();
    let per = exec::map(&jobs, |x| -> Result<(usize, Vec<Violation>)> {
        let mut pairs = 0;
        let mut out = Vec::new();
        let jx = j_simplex(b, x)?;
        let jd = ords.from_simplex(&jx);
        for f in functors.iter().filter(|f| f.objs == jx.objs) {
            pairs += 1;
            let fd = ords.from_simplex(f);
            let mut images: Vec<Vec<C2>> = sp.icons(b, &jd, &fd).iter().map(|phi| restrict(&icon_in_pairs(sp, p, phi))).collect();
            let total = images.len();
            images.sort();
            images.dedup();
            let mut right: Vec<Vec<C2>> = vec![Vec::new()];
            for i in 1..=p {
                let (u, w) = (x.cells[i - 1], C1(f.arrow(i - 1, i)));
                right = right
                    .into_iter()
                    .flat_map(|m| {
                        b.hom2(u, w).iter().map(move |&a| {
                            let mut m2 = m.clone();
                            m2.push(a);
                            m2
                        })
                    })
                    .collect();
            }
            right.sort();
            if images.len() != total || images != right {
                out.push(Violation::axiom("J-R-bijection", format!("{}|{}", ner.object_label(x), simplex_label(b, f, false)), total.to_string(), right.len().to_string()));
            }
        }
        Ok((pairs, out))
    });
    let mut pairs = 0;
    let mut out = Vec::new();
    for r in per {
        let (n, v) = r?;
        pairs += n;
        out.extend(v);
    }
    Ok((pairs, out))
}

/// Convenience: the nerve projection report through dimension `n`.
pub fn nerve_projection_report(b: &Arc<FiniteBicategory>, n: usize, limits: Limits) -> Result<ValidationReport> {
    let r = nerve_projection(b, n, limits)?;
    let mut v = r.violations()?;
    for p in 0..=n {
        v.extend(jr_bijection(b, p, limits)?.1);
    }
    Ok(ValidationReport::new(format!("R({})", b.name()), v))
}
