use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::crossed::{CrossedModule, XmodMorphism};
use super::pullback::{homotopy_pullback_xmod, HomotopyPullback};
use crate::algebra::{is_homomorphism, is_isomorphism, CategoryBuilder, FiniteGroup, FiniteGroupoid};
use crate::error::{Error, Result};
use crate::report::Violation;
use crate::tuple_label;

/// `π₁(X, a) = Aut(a) / Im ∂_a`, with cosets represented by the smallest
/// morphism id they contain.
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub group: FiniteGroup,
    /// Automorphisms of `a` as morphism ids, in increasing order.
    pub autos: Vec<usize>,
    class: HashMap<usize, usize>,
}

impl Pi1 {
    /// The coset of an automorphism of `a`.
    pub fn class(&self, p: usize) -> usize {
        self.class[&p]
    }
}

/// `π₂(X, a) = Ker ∂_a` with its inclusion into `𝒢(a)`.
#[derive(Clone, Debug)]
pub struct Pi2 {
    pub group: FiniteGroup,
    pub inclusion: Vec<usize>,
}

impl Pi2 {
    pub fn position(&self, g: usize) -> Option<usize> {
        self.inclusion.iter().position(|&x| x == g)
    }
}

/// Homotopy groups of a crossed module at every object.
#[derive(Clone, Debug)]
pub struct HomotopyProfile {
    /// Component of each object.
    pub components: Vec<usize>,
    pub component_count: usize,
    pub pi1: Vec<Pi1>,
    pub pi2: Vec<Pi2>,
}

impl HomotopyProfile {
    /// A short description at object `a`: `(|π₀|, |π₁(a)|, |π₂(a)|)`.
    pub fn orders(&self, a: usize) -> (usize, usize, usize) {
        (self.component_count, self.pi1[a].group.order(), self.pi2[a].group.order())
    }
}

pub fn pi(x: &CrossedModule) -> Result<HomotopyProfile> {
    let p = x.base();
    let (components, component_count) = p.components();
    let mut pi1 = Vec::new();
    let mut pi2 = Vec::new();
    for a in 0..p.object_count() {
        let (aut, autos) = p.aut_group(a);
        let g = x.fiber(a);
        let mut image = vec![false; aut.order()];
        for e in g.elements() {
            let m = x.d(a, e);
            image[autos.iter().position(|&y| y == m).ok_or_else(|| Error::Invalid("boundary leaves Aut".into()))?] = true;
        }
        let quotient = aut.quotient(&image)?;
        let class = autos.iter().enumerate().map(|(i, &m)| (m, quotient.projection[i])).collect();
        pi1.push(Pi1 { group: quotient.group, autos, class });
        let kernel: Vec<bool> = g.elements().map(|e| x.d(a, e) == p.id(a)).collect();
        let (group, inclusion) = g.subgroup(&kernel)?;
        if !group.is_abelian() {
            return Err(Error::Invalid(format!("{}: π₂ at `{}` is not abelian", x.name, p.object_label(a))));
        }
        pi2.push(Pi2 { group, inclusion });
    }
    Ok(HomotopyProfile { components, component_count, pi1, pi2 })
}

/// The maps a morphism induces on `π₀`, `π₁(a)` and `π₂(a)`.
#[derive(Clone, Debug)]
pub struct InducedPi {
    pub source: HomotopyProfile,
    pub target: HomotopyProfile,
    pub pi0: Vec<usize>,
    pub pi1: Vec<Vec<usize>>,
    pub pi2: Vec<Vec<usize>>,
    /// Well-definedness and homomorphism failures; empty for a valid morphism.
    pub violations: Vec<Violation>,
}

pub fn induced_pi(m: &XmodMorphism) -> Result<InducedPi> {
    let (x, y) = (&m.source, &m.target);
    let source = pi(x)?;
    let target = pi(y)?;
    let p = x.base();
    let mut violations = Vec::new();
    let mut pi0 = vec![usize::MAX; source.component_count];
    for a in 0..p.object_count() {
        let c = source.components[a];
        let d = target.components[m.ob(a)];
        if pi0[c] == usize::MAX {
            pi0[c] = d;
        } else if pi0[c] != d {
            violations.push(Violation::axiom("pi0-well-defined", p.object_label(a), pi0[c].to_string(), d.to_string()));
        }
    }
    let mut pi1 = Vec::new();
    let mut pi2 = Vec::new();
    for a in 0..p.object_count() {
        let (s1, t1) = (&source.pi1[a], &target.pi1[m.ob(a)]);
        let mut map = vec![usize::MAX; s1.group.order()];
        for &u in &s1.autos {
            let (c, d) = (s1.class(u), t1.class(m.mor(u)));
            if map[c] == usize::MAX {
                map[c] = d;
            } else if map[c] != d {
                violations.push(Violation::axiom("pi1-well-defined", format!("{}:{}", p.object_label(a), p.label(u)), "", ""));
            }
        }
        if !is_homomorphism(&s1.group, &t1.group, &map) {
            violations.push(Violation::axiom("pi1-homomorphism", p.object_label(a), "", ""));
        }
        pi1.push(map);
        let (s2, t2) = (&source.pi2[a], &target.pi2[m.ob(a)]);
        let mut map2 = Vec::new();
        for &g in &s2.inclusion {
            match t2.position(m.phi[a][g]) {
                Some(i) => map2.push(i),
                None => {
                    violations.push(Violation::axiom("pi2-well-defined", format!("{}:{}", p.object_label(a), x.fiber(a).label(g)), "", ""));
                    map2.push(0);
                }
            }
        }
        pi2.push(map2);
    }
    violations.sort();
    Ok(InducedPi { source, target, pi0, pi1, pi2, violations })
}

/// The verdict of [`weak_equivalence`] with each ingredient kept apart.
#[derive(Clone, Debug)]
pub struct WeakEquivalence {
    pub holds: bool,
    pub pi0_bijective: bool,
    /// Per source object: is the induced map on `π₁` an isomorphism.
    pub pi1_iso: Vec<bool>,
    pub pi2_iso: Vec<bool>,
    pub induced: InducedPi,
}

pub fn weak_equivalence(m: &XmodMorphism) -> Result<WeakEquivalence> {
    let induced = induced_pi(m)?;
    let pi0_bijective = crate::algebra::is_bijection(&induced.pi0, induced.target.component_count);
    let n = m.source.base().object_count();
    let mut pi1_iso = Vec::with_capacity(n);
    let mut pi2_iso = Vec::with_capacity(n);
    for a in 0..n {
        let b = m.ob(a);
        pi1_iso.push(is_isomorphism(&induced.source.pi1[a].group, &induced.target.pi1[b].group, &induced.pi1[a]));
        pi2_iso.push(is_isomorphism(&induced.source.pi2[a].group, &induced.target.pi2[b].group, &induced.pi2[a]));
    }
    let holds = induced.violations.is_empty() && pi0_bijective && pi1_iso.iter().all(|&b| b) && pi2_iso.iter().all(|&b| b);
    Ok(WeakEquivalence { holds, pi0_bijective, pi1_iso, pi2_iso, induced })
}

/// One joint of the long exact sequence: the image of the incoming map
/// against the kernel (preimage of the basepoint) of the outgoing one.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Joint {
    pub at: String,
    pub exact: bool,
    pub image: usize,
    pub kernel: usize,
}

#[derive(Clone, Debug)]
pub struct MvReport {
    pub joints: Vec<Joint>,
    pub hpb: HomotopyPullback,
}

impl MvReport {
    pub fn exact(&self) -> bool {
        self.joints.iter().all(|j| j.exact)
    }
}

fn joint(at: &str, size: usize, image: impl IntoIterator<Item = usize>, kernel: impl Fn(usize) -> bool) -> Joint {
    let mut im = vec![false; size];
    for i in image {
        im[i] = true;
    }
    let ker: Vec<bool> = (0..size).map(kernel).collect();
    Joint {
        at: at.to_string(),
        exact: im == ker,
        image: im.iter().filter(|&&b| b).count(),
        kernel: ker.iter().filter(|&&b| b).count(),
    }
}

/// Exactness of the Mayer–Vietoris sequence at the basepoint
/// `(a, 1, a′)` of the homotopy pullback:
///
/// `0 → π₂(hpb) → π₂X × π₂X′ → π₂Z → π₁(hpb) → π₁X × π₁X′ → π₁Z → π₀(hpb) → π₀X × π₀X′`
///
/// with `δ₂(h) = [(1_a, h, 1_{a′})]` and `δ₁[q] = component of (a, q, a′)`.
pub fn mv_check(m: &XmodMorphism, m2: &XmodMorphism, a: usize, a2: usize) -> Result<MvReport> {
    if m.ob(a) != m2.ob(a2) {
        return Err(Error::Invalid(format!("no basepoint over ({a},{a2}): images differ")));
    }
    let hpb = homotopy_pullback_xmod(m, m2)?;
    let (x, x2, z) = (&m.source, &m2.source, &m.target);
    let (p, p2, q) = (x.base(), x2.base(), z.base());
    let b = m.ob(a);
    let o = hpb.find_object(a, q.id(b), a2).unwrap();
    let (ph, pz) = (pi(&hpb.xmod)?, pi(z)?);
    let (px, px2) = (pi(x)?, pi(x2)?);
    let (h2, z2, xa2, xb2) = (&ph.pi2[o], &pz.pi2[b], &px.pi2[a], &px2.pi2[a2]);
    let (h1, z1, xa1, xb1) = (&ph.pi1[o], &pz.pi1[b], &px.pi1[a], &px2.pi1[a2]);
    let hz = z.fiber(b);
    let n2 = xb2.group.order();
    let n1 = xb1.group.order();
    let g2n = x2.fiber(a2).order();
    let mut joints = Vec::new();

    // π₂(hpb) → π₂X × π₂X′ is injective
    let to_pair2 = |e: usize| {
        let g = h2.inclusion[e];
        let (g1, g2) = (g / g2n, g % g2n);
        xa2.position(g1).unwrap() * n2 + xb2.position(g2).unwrap()
    };
    let ident2 = xa2.group.identity() * n2 + xb2.group.identity();
    joints.push(joint("pi2(hpb)", h2.group.order(), [h2.group.identity()], |e| to_pair2(e) == ident2));

    // (g, g′) ↦ φ′g′·(φg)⁻¹
    let diff2 = |e: usize| {
        let (i, j) = (e / n2, e % n2);
        let g = m.phi[a][xa2.inclusion[i]];
        let g2 = m2.phi[a2][xb2.inclusion[j]];
        z2.position(hz.mul(g2, hz.inv(g))).unwrap()
    };
    let pair2 = xa2.group.order() * n2;
    joints.push(joint("pi2xpi2", pair2, h2.group.elements().map(to_pair2), |e| diff2(e) == z2.group.identity()));

    // δ₂(h) = [(1_a, h, 1_{a′})]
    let delta2 = |k: usize| {
        let h = z2.inclusion[k];
        let mm = hpb.find_morphism(o, p.id(a), h, p2.id(a2)).unwrap();
        h1.class(mm)
    };
    joints.push(joint("pi2(Z)", z2.group.order(), (0..pair2).map(diff2), |k| delta2(k) == h1.group.identity()));

    // [(p, h, p′)] ↦ ([p], [p′])
    let rep = |cl: &crate::xmod::Pi1, c: usize| cl.autos.iter().copied().find(|&u| cl.class(u) == c).unwrap();
    let to_pair1 = |c: usize| {
        let mm = rep(h1, c);
        let (u, _, u2) = hpb.morphisms[mm];
        xa1.class(u) * n1 + xb1.class(u2)
    };
    let ident1 = xa1.group.identity() * n1 + xb1.group.identity();
    joints.push(joint("pi1(hpb)", h1.group.order(), z2.group.elements().map(delta2), |c| to_pair1(c) == ident1));

    // ([p], [p′]) ↦ [F′p′]·[Fp]⁻¹
    let diff1 = |e: usize| {
        let (u, u2) = (rep(xa1, e / n1), rep(xb1, e % n1));
        let g = &z1.group;
        g.mul(z1.class(m2.mor(u2)), g.inv(z1.class(m.mor(u))))
    };
    let pair1 = xa1.group.order() * n1;
    joints.push(joint("pi1xpi1", pair1, h1.group.elements().map(to_pair1), |e| diff1(e) == z1.group.identity()));

    // δ₁[q] = component of (a, q, a′)
    let delta1 = |c: usize| ph.components[hpb.find_object(a, rep(z1, c), a2).unwrap()];
    let base_comp = ph.components[o];
    joints.push(joint("pi1(Z)", z1.group.order(), (0..pair1).map(diff1), |c| delta1(c) == base_comp));

    // π₀(hpb) → π₀X × π₀X′, preimage of the basepoint pair
    let mut comp_pair = vec![(0, 0); ph.component_count];
    for (i, &(b0, _, b2)) in hpb.objects.iter().enumerate() {
        comp_pair[ph.components[i]] = (px.components[b0], px2.components[b2]);
    }
    let target = (px.components[a], px2.components[a2]);
    joints.push(joint("pi0(hpb)", ph.component_count, z1.group.elements().map(delta1), |c| comp_pair[c] == target));

    Ok(MvReport { joints, hpb })
}

/// The groupoid of automorphisms `p: a → a` with arrows `g: p → q` when
/// `p = q∘∂g`, and the two loop-space identifications.
#[derive(Clone, Debug)]
pub struct EndoGroupoid {
    pub groupoid: Arc<FiniteGroupoid>,
    /// Automorphism of `a` behind each object.
    pub autos: Vec<usize>,
    /// `π₀(endo) → π₁(X, a)`, `[p] ↦ [p]`, is a bijection.
    pub pi0_matches_pi1: bool,
    /// `Aut(1_a) → π₂(X, a)`, `g ↦ g`, is a group isomorphism.
    pub aut_matches_pi2: bool,
}

pub fn endo_groupoid(x: &CrossedModule, a: usize) -> Result<EndoGroupoid> {
    let p = x.base();
    let g = x.fiber(a);
    let autos: Vec<usize> = p.hom(a, a).to_vec();
    let pos = |m: usize| autos.iter().position(|&y| y == m).unwrap();
    let mut cb = CategoryBuilder::new(format!("End({},{})", x.name, p.object_label(a)));
    for &u in &autos {
        cb.object(p.label(u));
    }
    let n = g.order();
    // arrow (g, u): u → u∘∂g⁻¹, id = i*n + g
    let tgt = |u: usize, e: usize| p.comp(u, x.d(a, g.inv(e)));
    for (i, &u) in autos.iter().enumerate() {
        for e in g.elements() {
            cb.morphism(tuple_label(&[g.label(e), p.label(u)]), i, pos(tgt(u, e)));
        }
    }
    for i in 0..autos.len() {
        cb.identity(i, i * n + g.identity());
    }
    for (i, &u) in autos.iter().enumerate() {
        for e in g.elements() {
            let j = pos(tgt(u, e));
            for e2 in g.elements() {
                cb.compose(j * n + e2, i * n + e, i * n + g.mul(e2, e));
            }
        }
    }
    let groupoid = Arc::new(FiniteGroupoid::from_category(cb.build()?)?);
    let prof = pi(x)?;
    let pi1 = &prof.pi1[a];
    let (comps, count) = groupoid.components();
    let mut to_pi1 = vec![usize::MAX; count];
    let mut consistent = true;
    for (i, &u) in autos.iter().enumerate() {
        let c = pi1.class(u);
        if to_pi1[comps[i]] != usize::MAX && to_pi1[comps[i]] != c {
            consistent = false;
        }
        to_pi1[comps[i]] = c;
    }
    let pi0_matches_pi1 = consistent && crate::algebra::is_bijection(&to_pi1, pi1.group.order());

    let one = pos(p.id(a));
    let (aut, ends) = groupoid.aut_group(one);
    let pi2 = &prof.pi2[a];
    let map: Option<Vec<usize>> = ends.iter().map(|&mm| pi2.position(mm % n)).collect();
    let aut_matches_pi2 = map.is_some_and(|mp| is_isomorphism(&aut, &pi2.group, &mp));
    Ok(EndoGroupoid { groupoid, autos, pi0_matches_pi1, aut_matches_pi2 })
}
