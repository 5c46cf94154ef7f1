use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::lax_search::{LaxFunctorData, LaxFunctorSpace};
use super::sset::{pair_count, Simplex, TruncatedSimplicialSet};
use crate::algebra::FiniteCategory;
use crate::bicat::{Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::{exec, Limits};

/// Which functors `[p] → B` count as `p`-simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NerveVariant {
    Lax,
    NormalLax,
    Oplax,
    NormalOplax,
}

impl NerveVariant {
    pub const ALL: [NerveVariant; 4] = [NerveVariant::Lax, NerveVariant::NormalLax, NerveVariant::Oplax, NerveVariant::NormalOplax];

    pub fn as_str(self) -> &'static str {
        match self {
            NerveVariant::Lax => "lax",
            NerveVariant::NormalLax => "normal-lax",
            NerveVariant::Oplax => "oplax",
            NerveVariant::NormalOplax => "normal-oplax",
        }
    }

    pub fn is_normal(self) -> bool {
        matches!(self, NerveVariant::NormalLax | NerveVariant::NormalOplax)
    }

    pub fn direction(self) -> Direction {
        match self {
            NerveVariant::Lax | NerveVariant::NormalLax => Direction::Lax,
            NerveVariant::Oplax | NerveVariant::NormalOplax => Direction::Oplax,
        }
    }

    /// The non-normal variant with the same direction.
    pub fn relaxed(self) -> Self {
        match self.direction() {
            Direction::Lax => NerveVariant::Lax,
            Direction::Oplax => NerveVariant::Oplax,
        }
    }
}

impl fmt::Display for NerveVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NerveVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NerveVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown nerve variant `{s}`")))
    }
}

/// Spaces of functors out of `[0], …, [n]`.
#[derive(Clone, Debug)]
pub struct OrdinalSpaces {
    pub spaces: Vec<LaxFunctorSpace>,
}

impl OrdinalSpaces {
    pub fn new(n: usize) -> Result<Self> {
        let spaces = (0..=n)
            .map(|p| LaxFunctorSpace::new(Arc::new(FiniteCategory::ordinal(p))))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrdinalSpaces { spaces })
    }

    pub fn get(&self, p: usize) -> &LaxFunctorSpace {
        &self.spaces[p]
    }

    /// Rewrites functor data out of `[p]` in the pair/triple layout.
    pub fn to_simplex(&self, p: usize, d: &LaxFunctorData) -> Simplex {
        let sp = &self.spaces[p];
        let c = &*sp.category;
        let arrow = |i: usize, j: usize| c.ordinal_arrow(i, j);
        let mut arrows = Vec::with_capacity(pair_count(p));
        let mut cells = Vec::new();
        for j in 0..=p {
            for i in 0..=j {
                arrows.push(d.arrows[arrow(i, j)].0);
            }
        }
        for k in 0..=p {
            for j in 0..=k {
                for i in 0..=j {
                    cells.push(d.cells[sp.pair(arrow(j, k), arrow(i, j))].0);
                }
            }
        }
        Simplex { objs: d.objs.iter().map(|o| o.0).collect(), arrows, units: d.units.iter().map(|u| u.0).collect(), cells }
    }

    pub fn from_simplex(&self, x: &Simplex) -> LaxFunctorData {
        let p = x.dim();
        let sp = &self.spaces[p];
        let c = &*sp.category;
        let mut arrows = vec![C1(0); c.morphism_count()];
        for j in 0..=p {
            for i in 0..=j {
                arrows[c.ordinal_arrow(i, j)] = C1(x.arrow(i, j));
            }
        }
        let mut cells = vec![C2(0); sp.pairs.len()];
        for (pi, &(v, u)) in sp.pairs.iter().enumerate() {
            let (i, j, k) = (c.src(u), c.dst(u), c.dst(v));
            cells[pi] = C2(x.cell(i, j, k));
        }
        LaxFunctorData { objs: x.objs.iter().map(|&o| Obj(o)).collect(), arrows, units: x.units.iter().map(|&u| C2(u)).collect(), cells }
    }

    /// A monotone map `[q] → [p]` as a strict functor of locally discrete
    /// bicategories.
    pub fn monotone_functor(&self, a: &[usize], p: usize, direction: Direction) -> Result<LaxMorphism> {
        let q = a.len() - 1;
        let (s, t) = (&self.spaces[q], &self.spaces[p]);
        let (cs, ct) = (&*s.category, &*t.category);
        let map1: Vec<C1> = (0..cs.morphism_count()).map(|m| C1::from(ct.ordinal_arrow(a[cs.src(m)], a[cs.dst(m)]))).collect();
        LaxMorphism::strict(
            format!("{a:?}"),
            s.source().clone(),
            t.source().clone(),
            a.iter().map(|&k| Obj::from(k)).collect(),
            map1.clone(),
            map1.iter().map(|f| C2::from(f.idx())).collect(),
            direction,
        )
    }
}

/// The truncated geometric nerve of a bicategory in one of four variants.
#[derive(Clone, Debug)]
pub struct GeometricNerve {
    pub variant: NerveVariant,
    pub bicategory: Arc<FiniteBicategory>,
    pub simplices: Vec<Vec<Simplex>>,
    pub sset: TruncatedSimplicialSet,
    pub ordinals: Arc<OrdinalSpaces>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl GeometricNerve {
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn find(&self, x: &Simplex) -> Option<usize> {
        self.index.get(x.dim())?.get(x).copied()
    }

    /// The `p`-simplex `x` as a morphism `[p] → B` of the variant's direction.
    pub fn as_lax(&self, x: &Simplex) -> LaxMorphism {
        let p = x.dim();
        let d = self.ordinals.from_simplex(x);
        self.ordinals.get(p).to_lax(format!("x{p}"), self.bicategory.clone(), &d, self.variant.direction())
    }

    pub fn from_lax(&self, f: &LaxMorphism) -> Simplex {
        let p = f.map0.len() - 1;
        self.ordinals.to_simplex(p, &self.ordinals.get(p).from_lax(f))
    }
}

pub(crate) fn simplex_label(b: &FiniteBicategory, x: &Simplex, normal: bool) -> String {
    let p = x.dim();
    if p == 0 && normal {
        return b.obj_label(Obj(x.objs[0])).to_string();
    }
    let mut parts: Vec<&str> = Vec::new();
    parts.extend(x.objs.iter().map(|&o| b.obj_label(Obj(o))));
    let mut s = crate::tuple_label(&parts);
    parts.clear();
    for j in 0..=p {
        for i in 0..j {
            parts.push(b.c1_label(C1(x.arrow(i, j))));
        }
    }
    s.push_str(&crate::tuple_label(&parts));
    parts.clear();
    if !normal {
        parts.extend(x.units.iter().map(|&u| b.c2_label(C2(u))));
        s.push_str(&crate::tuple_label(&parts));
        parts.clear();
    }
    for k in 0..=p {
        for j in 0..=k {
            for i in 0..=j {
                if !normal || (i < j && j < k) {
                    parts.push(b.c2_label(C2(x.cell(i, j, k))));
                }
            }
        }
    }
    s.push_str(&crate::tuple_label(&parts));
    s
}

pub fn geometric_nerve(b: &Arc<FiniteBicategory>, variant: NerveVariant, n: usize) -> Result<GeometricNerve> {
    geometric_nerve_with_limits(b, variant, n, Limits::default())
}

/// `p`-simplices are the (normal) lax or oplax functors `[p] → B`, found by
/// solving the coherence equations. Oplax functors are found as lax
/// functors into `B^co`.
pub fn geometric_nerve_with_limits(b: &Arc<FiniteBicategory>, variant: NerveVariant, n: usize, limits: Limits) -> Result<GeometricNerve> {
    let ordinals = Arc::new(OrdinalSpaces::new(n)?);
    geometric_nerve_in(b, variant, ordinals, limits)
}

/// Same, reusing prebuilt ordinal spaces.
pub fn geometric_nerve_in(b: &Arc<FiniteBicategory>, variant: NerveVariant, ordinals: Arc<OrdinalSpaces>, limits: Limits) -> Result<GeometricNerve> {
    let n = ordinals.spaces.len() - 1;
    let search_in = match variant.direction() {
        Direction::Lax => b.clone(),
        Direction::Oplax => Arc::new(b.co()?),
    };
    let mut simplices = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let found = ordinals.get(p).enumerate(&search_in, variant.is_normal(), limits)?;
        limits.check(&format!("{variant} nerve dimension {p}"), found.len())?;
        simplices.push(exec::map(&found, |d| ordinals.to_simplex(p, d)));
    }
    let labels = simplices.iter().map(|xs| exec::map(xs, |x| simplex_label(b, x, variant.is_normal()))).collect();
    let sset = TruncatedSimplicialSet::from_reindexing(format!("{}({})", variant, b.name()), &simplices, labels, |x, a| x.reindex(a))?;
    let index = simplices.iter().map(|xs| xs.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()).collect();
    Ok(GeometricNerve { variant, bicategory: b.clone(), simplices, sset, ordinals, index })
}

/// The dimensionwise inclusion of a normal nerve into the non-normal one
/// of the same direction.
pub fn nerve_inclusion(normal: &GeometricNerve, full: &GeometricNerve) -> Result<Vec<Vec<usize>>> {
    if !normal.variant.is_normal() || full.variant != normal.variant.relaxed() {
        return Err(Error::Mismatch(format!("no inclusion {} → {}", normal.variant, full.variant)));
    }
    normal
        .simplices
        .iter()
        .map(|xs| xs.iter().map(|x| full.find(x).ok_or_else(|| Error::Mismatch("normal simplex missing from the full nerve".into()))).collect())
        .collect()
}

/// The simplicial map `x ↦ F∘x` induced by a morphism `F: B → B′`
/// (of the nerves' direction).
pub fn nerve_map(f: &LaxMorphism, s: &GeometricNerve, t: &GeometricNerve) -> Result<Vec<Vec<usize>>> {
    if f.direction != s.variant.direction() || s.variant != t.variant {
        return Err(Error::Direction(format!("{} does not act between {} nerves", f.name, s.variant)));
    }
    s.simplices
        .iter()
        .map(|xs| {
            exec::map(xs, |x| {
                let fx = s.as_lax(x).then(f)?;
                let y = t.from_lax(&fx);
                t.find(&y).ok_or_else(|| Error::Mismatch(format!("{}: image of a simplex is not in the target nerve", f.name)))
            })
            .into_iter()
            .collect()
        })
        .collect()
}
