use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use super::beta::{beta, offsets};
use super::crossed::CrossedModule;
use crate::bicat::Obj;
use crate::error::Result;
use crate::nerve::{compare_simplicial, geometric_nerve_with_limits, pair_count, pair_index, triple_index, GeometricNerve, NerveVariant, Simplex, TruncatedSimplicialSet};
use crate::report::{ValidationReport, Violation};
use crate::{exec, tuple_label, Limits};

/// The nerve of a crossed module. An `n`-simplex is `(g_{ijk}, p_{ij}, a_i)`
/// stored as a [`Simplex`]: `objs` are the `a_i`, `arrows` the `p_{ij}`
/// (identity on the diagonal) and `cells` the fiber elements `g_{ijk}`
/// (unit on degenerate triples).
#[derive(Clone, Debug)]
pub struct XmodNerve {
    pub xmod: Arc<CrossedModule>,
    pub simplices: Vec<Vec<Simplex>>,
    pub sset: TruncatedSimplicialSet,
}

pub fn xmod_nerve(x: &Arc<CrossedModule>, n: usize) -> Result<XmodNerve> {
    xmod_nerve_with_limits(x, n, Limits::default())
}

struct Search<'a> {
    x: &'a CrossedModule,
    /// `preimage[a][m]`: the `g ∈ 𝒢(a)` with `∂g = m`.
    preimage: Vec<HashMap<usize, Vec<usize>>>,
}

impl Search<'_> {
    fn extend(&self, s: &Simplex, out: &mut Vec<Simplex>) {
        let x = self.x;
        let p = s.dim() + 1;
        let base = x.base();
        for ap in 0..base.object_count() {
            let mut t = s.clone();
            t.objs.push(ap as u32);
            t.arrows.resize(pair_count(p), u32::MAX);
            t.arrows[pair_index(p, p)] = base.id(ap) as u32;
            t.cells.resize(triple_index(0, 0, p + 1), u32::MAX);
            for j in 0..=p {
                for i in 0..=j {
                    if i == j || j == p {
                        t.cells[triple_index(i, j, p)] = x.fiber(t.objs[i] as usize).identity() as u32;
                    }
                }
            }
            self.fill(&mut t, p, p - 1, p, out);
        }
    }

    /// Fills row `i` of the new vertex `p`: first `p_{ip}`, then `g_{ijp}`
    /// for `j` descending. `j == p` means the arrow is still open.
    fn fill(&self, t: &mut Simplex, p: usize, i: usize, j: usize, out: &mut Vec<Simplex>) {
        let x = self.x;
        let base = x.base();
        if j == i {
            if i == 0 {
                out.push(t.clone());
            } else {
                self.fill(t, p, i - 1, p, out);
            }
            return;
        }
        let ai = t.objs[i] as usize;
        if j == p {
            for &m in base.hom(ai, t.objs[p] as usize) {
                t.arrows[pair_index(i, p)] = m as u32;
                self.fill(t, p, i, p - 1, out);
            }
            return;
        }
        // ∂g_{ijp} = p_{ip}⁻¹ p_{jp} p_{ij}
        let (pij, pjp, pip) = (t.arrow(i, j) as usize, t.arrow(j, p) as usize, t.arrow(i, p) as usize);
        let need = base.comp(base.inv(pip), base.comp(pjp, pij));
        let Some(gs) = self.preimage[ai].get(&need) else { return };
        let g = x.fiber(ai);
        for &e in gs {
            t.cells[triple_index(i, j, p)] = e as u32;
            // g_{ijl}·^{p_ij⁻¹}g_{jkl} = g_{ikl}·g_{ijk} with l = p
            let ok = (j + 1..p).all(|k| {
                let l = g.mul(e, x.act(base.inv(pij), t.cell(j, k, p) as usize));
                let r = g.mul(t.cell(i, k, p) as usize, t.cell(i, j, k) as usize);
                l == r
            });
            if ok {
                self.fill(t, p, i, j - 1, out);
            }
        }
    }
}

fn dakin_label(x: &CrossedModule, s: &Simplex) -> String {
    let base = x.base();
    let p = s.dim();
    let mut out = tuple_label(&s.objs.iter().map(|&a| base.object_label(a as usize)).collect::<Vec<_>>());
    let mut parts = Vec::new();
    for j in 0..=p {
        for i in 0..j {
            parts.push(base.label(s.arrow(i, j) as usize));
        }
    }
    out.push_str(&tuple_label(&parts));
    parts.clear();
    for k in 0..=p {
        for j in 0..k {
            for i in 0..j {
                parts.push(x.fiber(s.objs[i] as usize).label(s.cell(i, j, k) as usize));
            }
        }
    }
    out.push_str(&tuple_label(&parts));
    out
}

/// Enumerates the nerve through dimension `n` by extending each simplex
/// with a last vertex, solving the boundary condition and checking the
/// cocycle condition as soon as its four indices are filled.
pub fn xmod_nerve_with_limits(x: &Arc<CrossedModule>, n: usize, limits: Limits) -> Result<XmodNerve> {
    let base = x.base();
    let preimage = (0..base.object_count())
        .map(|a| {
            let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
            for g in x.fiber(a).elements() {
                m.entry(x.d(a, g)).or_default().push(g);
            }
            m
        })
        .collect();
    let search = Search { x, preimage };
    let mut simplices: Vec<Vec<Simplex>> = vec![(0..base.object_count())
        .map(|a| Simplex { objs: vec![a as u32], arrows: vec![base.id(a) as u32], units: vec![], cells: vec![x.fiber(a).identity() as u32] })
        .collect()];
    for p in 1..=n {
        let found = AtomicUsize::new(0);
        let next: Vec<Simplex> = exec::map(&simplices[p - 1], |s| {
            let mut out = Vec::new();
            // stop early once the ceiling is passed
            if found.load(Ordering::Relaxed) <= limits.max_cells {
                search.extend(s, &mut out);
                found.fetch_add(out.len(), Ordering::Relaxed);
            }
            out
        })
        .into_iter()
        .flatten()
        .collect();
        limits.check(&format!("nerve of {} dimension {p}", x.name), found.into_inner())?;
        simplices.push(next);
    }
    let labels = simplices.iter().map(|xs| exec::map(xs, |s| dakin_label(x, s))).collect();
    let sset = TruncatedSimplicialSet::from_reindexing(format!("N{}", x.name), &simplices, labels, |s, a| s.reindex(a))?;
    Ok(XmodNerve { xmod: x.clone(), simplices, sset })
}

/// The dimensionwise comparison between the nerve of `X` and the normal lax
/// nerve of `β(X)`.
#[derive(Clone, Debug)]
pub struct NerveComparison {
    pub dakin: XmodNerve,
    pub beta: GeometricNerve,
    /// `maps[n][x]`: the normal lax simplex matching the `x`-th nerve simplex.
    pub maps: Vec<Vec<usize>>,
    pub report: ValidationReport,
}

impl NerveComparison {
    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.dakin.sset.counts().into_iter().zip(self.beta.sset.counts()).collect()
    }
}

pub fn compare_nerves(x: &Arc<CrossedModule>, n: usize) -> Result<NerveComparison> {
    compare_nerves_with_limits(x, n, Limits::default())
}

/// Sends `(g, p, a)` to the normal lax functor with the same objects and
/// arrows and constraint `F̂_{jk,ij}` the 2-cell `g_{ijk}: p_{jk}∘p_{ij} ⇒ p_{ik}`,
/// then checks that this is a bijection commuting with faces and degeneracies.
pub fn compare_nerves_with_limits(x: &Arc<CrossedModule>, n: usize, limits: Limits) -> Result<NerveComparison> {
    let dakin = xmod_nerve_with_limits(x, n, limits)?;
    let b = beta(x)?.bicategory().clone();
    let bn = geometric_nerve_with_limits(&b, NerveVariant::NormalLax, n, limits)?;
    let off = offsets(x);
    let base = x.base();
    let mut missing = Vec::new();
    let mut maps = Vec::with_capacity(n + 1);
    for (p, xs) in dakin.simplices.iter().enumerate() {
        let col = exec::map(xs, |s| {
            let units = s.objs.iter().map(|&a| b.id2(b.id1(Obj(a))).0).collect();
            let mut cells = Vec::with_capacity(s.cells.len());
            for k in 0..=p {
                for j in 0..=k {
                    for i in 0..=j {
                        let m = base.comp(s.arrow(j, k) as usize, s.arrow(i, j) as usize);
                        cells.push((off[m] + s.cell(i, j, k) as usize) as u32);
                    }
                }
            }
            let y = Simplex { objs: s.objs.clone(), arrows: s.arrows.clone(), units, cells };
            bn.find(&y)
        });
        let mut out = Vec::with_capacity(col.len());
        for (i, y) in col.into_iter().enumerate() {
            match y {
                Some(y) => out.push(y),
                None => missing.push(Violation::axiom("bijection", format!("dimension {p}: {}", dakin.sset.cells[p][i]), "normal lax simplex", "none")),
            }
        }
        maps.push(out);
    }
    let violations = if missing.is_empty() { compare_simplicial(&dakin.sset, &bn.sset, &maps) } else { missing };
    let report = ValidationReport::new(format!("N{} vs normal-lax nerve of B{}", x.name, x.name), violations);
    Ok(NerveComparison { dakin, beta: bn, maps, report })
}
