use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::algebra::FiniteCategory;
use crate::bicat::{discrete_bicategory, Claims, Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::exec;
use crate::Limits;

/// A lax functor out of a category (seen as a locally discrete
/// bicategory): an object per object, a 1-cell per morphism, a unit cell
/// `1 ⇒ F1_x` per object and a cell `Fv∘Fu ⇒ F(vu)` per composable pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaxFunctorData {
    pub objs: Vec<Obj>,
    pub arrows: Vec<C1>,
    pub units: Vec<C2>,
    pub cells: Vec<C2>,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Obj(usize),
    Ident(usize),
    Arrow(usize),
    Cell(usize),
}

#[derive(Clone, Copy, Debug)]
enum Check {
    Left(usize),
    Right(usize),
    Assoc(usize, usize, usize),
}

/// Lax functors and icons out of a fixed finite category, found by
/// solving the unit and associativity equations cell by cell.
#[derive(Clone, Debug)]
pub struct LaxFunctorSpace {
    pub category: Arc<FiniteCategory>,
    /// Composable pairs `(v, u)`, i.e. `v∘u`.
    pub pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    /// Composable triples `(w, v, u)`.
    triples: Vec<(usize, usize, usize)>,
    steps: Vec<Step>,
    checks: Vec<Vec<Check>>,
    discrete: Arc<FiniteBicategory>,
}

const NONE: u32 = u32::MAX;

#[derive(Clone)]
struct State {
    objs: Vec<u32>,
    arrows: Vec<u32>,
    units: Vec<u32>,
    cells: Vec<u32>,
}

impl LaxFunctorSpace {
    pub fn new(category: Arc<FiniteCategory>) -> Result<Self> {
        let c = &*category;
        let mut pairs = Vec::new();
        for u in 0..c.morphism_count() {
            for &v in c.out(c.dst(u)) {
                pairs.push((v, u));
            }
        }
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut triples = Vec::new();
        for &(v, u) in &pairs {
            for &w in c.out(c.dst(v)) {
                triples.push((w, v, u));
            }
        }

        // morphism steps: non-identities by (target, source descending),
        // endpoints and their identities first
        let mut order: Vec<usize> = (0..c.morphism_count()).filter(|&m| !c.is_identity(m)).collect();
        order.sort_by_key(|&m| (c.dst(m), std::cmp::Reverse(c.src(m)), m));
        let mut mseq = Vec::new();
        let mut obj_done = vec![false; c.object_count()];
        let mut touch = |o: usize, mseq: &mut Vec<Step>| {
            if !obj_done[o] {
                obj_done[o] = true;
                mseq.push(Step::Obj(o));
                mseq.push(Step::Ident(o));
            }
        };
        for &m in &order {
            touch(c.src(m), &mut mseq);
            touch(c.dst(m), &mut mseq);
            mseq.push(Step::Arrow(m));
        }
        for o in 0..c.object_count() {
            touch(o, &mut mseq);
        }
        let mut mpos = vec![0usize; c.morphism_count()];
        for (i, s) in mseq.iter().enumerate() {
            match *s {
                Step::Ident(o) => mpos[c.id(o)] = i,
                Step::Arrow(m) => mpos[m] = i,
                _ => {}
            }
        }
        let mut ready: Vec<Vec<usize>> = vec![Vec::new(); mseq.len()];
        for (pi, &(v, u)) in pairs.iter().enumerate() {
            let at = mpos[v].max(mpos[u]).max(mpos[c.comp(v, u)]);
            ready[at].push(pi);
        }
        let mut steps = Vec::new();
        let mut cell_pos = vec![0usize; pairs.len()];
        let mut ident_pos = vec![0usize; c.object_count()];
        for (i, s) in mseq.iter().enumerate() {
            if let Step::Ident(o) = *s {
                ident_pos[o] = steps.len();
            }
            steps.push(*s);
            let mut batch = ready[i].clone();
            batch.sort_by_key(|&pi| {
                let (v, u) = pairs[pi];
                (std::cmp::Reverse(mpos[u]), std::cmp::Reverse(mpos[v]))
            });
            for pi in batch {
                cell_pos[pi] = steps.len();
                steps.push(Step::Cell(pi));
            }
        }
        let mut checks: Vec<Vec<Check>> = vec![Vec::new(); steps.len()];
        for u in 0..c.morphism_count() {
            let (a, b) = (c.src(u), c.dst(u));
            let l = cell_pos[pair_index[&(c.id(b), u)]].max(ident_pos[b]);
            checks[l].push(Check::Left(u));
            let r = cell_pos[pair_index[&(u, c.id(a))]].max(ident_pos[a]);
            checks[r].push(Check::Right(u));
        }
        for &(w, v, u) in &triples {
            let deps = [(w, v), (c.comp(w, v), u), (v, u), (w, c.comp(v, u))];
            let at = deps.iter().map(|p| cell_pos[pair_index[p]]).max().unwrap();
            checks[at].push(Check::Assoc(w, v, u));
        }
        let discrete = Arc::new(discrete_bicategory(c)?);
        Ok(LaxFunctorSpace { category, pairs, pair_index, triples, steps, checks, discrete })
    }

    pub fn pair(&self, v: usize, u: usize) -> usize {
        self.pair_index[&(v, u)]
    }

    /// The locally discrete bicategory on the category.
    pub fn source(&self) -> &Arc<FiniteBicategory> {
        &self.discrete
    }

    pub fn composable_triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    fn choices(&self, b: &FiniteBicategory, normal: bool, st: &State, step: Step) -> Vec<State> {
        let c = &*self.category;
        let mut out = Vec::new();
        match step {
            Step::Obj(o) => {
                for x in b.objs() {
                    let mut s = st.clone();
                    s.objs[o] = x.0;
                    out.push(s);
                }
            }
            Step::Ident(o) => {
                let one = b.id1(Obj(st.objs[o]));
                let m = c.id(o);
                if normal {
                    let mut s = st.clone();
                    s.arrows[m] = one.0;
                    s.units[o] = b.id2(one).0;
                    out.push(s);
                } else {
                    for &a in b.out2(one) {
                        let mut s = st.clone();
                        s.arrows[m] = b.dst2(a).0;
                        s.units[o] = a.0;
                        out.push(s);
                    }
                }
            }
            Step::Arrow(m) => {
                for &f in b.hom1(Obj(st.objs[c.src(m)]), Obj(st.objs[c.dst(m)])) {
                    let mut s = st.clone();
                    s.arrows[m] = f.0;
                    out.push(s);
                }
            }
            Step::Cell(pi) => {
                let (v, u) = self.pairs[pi];
                let Some(gf) = b.try_hcomp1(C1(st.arrows[v]), C1(st.arrows[u])) else { return out };
                for &a in b.hom2(gf, C1(st.arrows[c.comp(v, u)])) {
                    let mut s = st.clone();
                    s.cells[pi] = a.0;
                    out.push(s);
                }
            }
        }
        out
    }

    fn holds(&self, b: &FiniteBicategory, st: &State, check: Check) -> bool {
        let c = &*self.category;
        let arrow = |m: usize| C1(st.arrows[m]);
        let cell = |v: usize, u: usize| C2(st.cells[self.pair_index[&(v, u)]]);
        let chain = |cs: &[Option<C2>]| -> Option<C2> {
            let mut acc = cs[0]?;
            for x in &cs[1..] {
                acc = b.try_vcomp((*x)?, acc)?;
            }
            Some(acc)
        };
        match check {
            Check::Left(u) => {
                let bb = c.dst(u);
                let l = chain(&[b.try_hcomp2(C2(st.units[bb]), b.id2(arrow(u))), Some(cell(c.id(bb), u))]);
                l == Some(b.lunit(arrow(u)))
            }
            Check::Right(u) => {
                let a = c.src(u);
                let l = chain(&[b.try_hcomp2(b.id2(arrow(u)), C2(st.units[a])), Some(cell(u, c.id(a)))]);
                l == Some(b.runit(arrow(u)))
            }
            Check::Assoc(w, v, u) => {
                let (fw, fv, fu) = (arrow(w), arrow(v), arrow(u));
                let l = chain(&[b.try_hcomp2(cell(w, v), b.id2(fu)), Some(cell(c.comp(w, v), u))]);
                let r = chain(&[b.try_assoc(fw, fv, fu), b.try_hcomp2(b.id2(fw), cell(v, u)), Some(cell(w, c.comp(v, u)))]);
                l.is_some() && l == r
            }
        }
    }

    fn empty_state(&self) -> State {
        let c = &*self.category;
        State {
            objs: vec![NONE; c.object_count()],
            arrows: vec![NONE; c.morphism_count()],
            units: vec![NONE; c.object_count()],
            cells: vec![NONE; self.pairs.len()],
        }
    }

    fn advance(&self, b: &FiniteBicategory, normal: bool, st: &State, s: usize) -> Vec<State> {
        self.choices(b, normal, st, self.steps[s])
            .into_iter()
            .filter(|n| self.checks[s].iter().all(|&k| self.holds(b, n, k)))
            .collect()
    }

    /// All lax functors into `b` (normal ones only if `normal`), in a
    /// deterministic order. Oplax functors are lax functors into `b^co`.
    pub fn enumerate(&self, b: &FiniteBicategory, normal: bool, limits: Limits) -> Result<Vec<LaxFunctorData>> {
        let mut frontier = vec![self.empty_state()];
        let mut s = 0;
        while s < self.steps.len() && frontier.len() < 64 {
            frontier = frontier.iter().flat_map(|st| self.advance(b, normal, st, s)).collect();
            s += 1;
            limits.check("lax functor search frontier", frontier.len())?;
        }
        if s == self.steps.len() {
            limits.check("lax functors", frontier.len())?;
            return Ok(frontier.into_iter().map(finish).collect());
        }
        let found = AtomicUsize::new(0);
        let parts = exec::map(&frontier, |st| {
            let mut out = Vec::new();
            self.dfs(b, normal, st.clone(), s, &mut out, &found, limits)?;
            Ok(out)
        });
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        Ok(all)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        b: &FiniteBicategory,
        normal: bool,
        st: State,
        s: usize,
        out: &mut Vec<LaxFunctorData>,
        found: &AtomicUsize,
        limits: Limits,
    ) -> Result<()> {
        if s == self.steps.len() {
            let n = found.fetch_add(1, Ordering::Relaxed) + 1;
            limits.check("lax functors", n)?;
            out.push(finish(st));
            return Ok(());
        }
        if found.load(Ordering::Relaxed) > limits.max_cells {
            return Err(Error::ResourceLimit { what: "lax functors".into(), limit: limits.max_cells });
        }
        for next in self.advance(b, normal, &st, s) {
            self.dfs(b, normal, next, s + 1, out, found, limits)?;
        }
        Ok(())
    }

    /// All icons `F ⇒ G` (one 2-cell `Fm ⇒ Gm` per morphism). Empty when
    /// `F` and `G` differ on objects.
    pub fn icons(&self, b: &FiniteBicategory, f: &LaxFunctorData, g: &LaxFunctorData) -> Vec<Vec<C2>> {
        let c = &*self.category;
        if f.objs != g.objs {
            return Vec::new();
        }
        let order: Vec<usize> = self
            .steps
            .iter()
            .filter_map(|s| match *s {
                Step::Ident(o) => Some(c.id(o)),
                Step::Arrow(m) => Some(m),
                _ => None,
            })
            .collect();
        let mut pos = vec![0; c.morphism_count()];
        for (i, &m) in order.iter().enumerate() {
            pos[m] = i;
        }
        // checks keyed by the step completing them
        let mut after: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
        for (pi, &(v, u)) in self.pairs.iter().enumerate() {
            let at = pos[v].max(pos[u]).max(pos[c.comp(v, u)]);
            after[at].push(pi);
        }
        let mut out = Vec::new();
        let mut cur = vec![C2(NONE); c.morphism_count()];
        self.icon_dfs(b, f, g, &order, &after, 0, &mut cur, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn icon_dfs(
        &self,
        b: &FiniteBicategory,
        f: &LaxFunctorData,
        g: &LaxFunctorData,
        order: &[usize],
        after: &[Vec<usize>],
        s: usize,
        cur: &mut Vec<C2>,
        out: &mut Vec<Vec<C2>>,
    ) {
        let c = &*self.category;
        if s == order.len() {
            out.push(cur.clone());
            return;
        }
        let m = order[s];
        for &phi in b.hom2(f.arrows[m], g.arrows[m]) {
            cur[m] = phi;
            let mut ok = true;
            if c.is_identity(m) {
                let o = c.src(m);
                ok = b.try_vcomp(phi, f.units[o]) == Some(g.units[o]);
            }
            for &pi in &after[s] {
                if !ok {
                    break;
                }
                let (v, u) = self.pairs[pi];
                let l = b.try_vcomp(cur[c.comp(v, u)], f.cells[pi]);
                let r = b.try_hcomp2(cur[v], cur[u]).and_then(|h| b.try_vcomp(g.cells[pi], h));
                ok = l.is_some() && l == r;
            }
            if ok {
                self.icon_dfs(b, f, g, order, after, s + 1, cur, out);
            }
        }
        cur[m] = C2(NONE);
    }

    /// The data as a [`LaxMorphism`] out of the locally discrete bicategory.
    /// For `Oplax` the cells are read in `target` with their direction
    /// reversed, which is how oplax functors come out of `target^co`.
    pub fn to_lax(&self, name: impl Into<String>, target: Arc<FiniteBicategory>, d: &LaxFunctorData, direction: Direction) -> LaxMorphism {
        let c = &*self.category;
        let mut comp = rustc_hash::FxHashMap::default();
        for (pi, &(v, u)) in self.pairs.iter().enumerate() {
            comp.insert((C1::from(v), C1::from(u)), d.cells[pi]);
        }
        LaxMorphism {
            name: name.into(),
            direction,
            source: self.discrete.clone(),
            map0: d.objs.clone(),
            map1: d.arrows.clone(),
            map2: (0..c.morphism_count()).map(|m| target.id2(d.arrows[m])).collect(),
            comp,
            unit: d.units.clone(),
            target,
            claims: Claims::default(),
        }
    }

    /// Reads back the data of a morphism out of the locally discrete bicategory.
    pub fn from_lax(&self, f: &LaxMorphism) -> LaxFunctorData {
        LaxFunctorData {
            objs: f.map0.clone(),
            arrows: f.map1.clone(),
            units: f.unit.clone(),
            cells: self.pairs.iter().map(|&(v, u)| f.comp_cell(C1::from(v), C1::from(u))).collect(),
        }
    }
}

fn finish(st: State) -> LaxFunctorData {
    LaxFunctorData {
        objs: st.objs.into_iter().map(Obj).collect(),
        arrows: st.arrows.into_iter().map(C1).collect(),
        units: st.units.into_iter().map(C2).collect(),
        cells: st.cells.into_iter().map(C2).collect(),
    }
}
