use std::collections::HashMap;
use std::sync::Arc;

use super::crossed::{CrossedModule, XmodMorphism};
use crate::algebra::{groupoid_fibration, pullback_groupoid, CategoryBuilder, FiniteGroup, FiniteGroupoid, PGroup};
use crate::error::{Error, Result};
use crate::{tuple_label, Limits};

/// The homotopy pullback of `X → Z ← X′` with its two projections.
///
/// Objects are `(a, q, a′)` with `q: Fa → F′a′`; a morphism `(p, h, p′)`
/// out of `(a₀, q₀, a′₀)` ends at `(a₁, q₁, a′₁)` where
/// `∂h = Fp⁻¹∘q₁⁻¹∘F′p′∘q₀`.
#[derive(Clone, Debug)]
pub struct HomotopyPullback {
    pub xmod: Arc<CrossedModule>,
    pub proj: XmodMorphism,
    pub proj_prime: XmodMorphism,
    pub objects: Vec<(usize, usize, usize)>,
    pub morphisms: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize, usize), usize>,
    morphism_index: HashMap<(usize, usize, usize, usize), usize>,
}

impl HomotopyPullback {
    pub fn find_object(&self, a: usize, q: usize, a2: usize) -> Option<usize> {
        self.object_index.get(&(a, q, a2)).copied()
    }

    /// The morphism `(p, h, p′)` starting at object `src`.
    pub fn find_morphism(&self, src: usize, p: usize, h: usize, p2: usize) -> Option<usize> {
        self.morphism_index.get(&(src, p, h, p2)).copied()
    }
}

fn common_target(m: &XmodMorphism, m2: &XmodMorphism) -> Result<()> {
    if Arc::ptr_eq(&m.target, &m2.target) || *m.target == *m2.target {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{} and {} have different codomains", m.name, m2.name)))
    }
}

pub fn homotopy_pullback_xmod(m: &XmodMorphism, m2: &XmodMorphism) -> Result<HomotopyPullback> {
    homotopy_pullback_xmod_with_limits(m, m2, Limits::default())
}

pub fn homotopy_pullback_xmod_with_limits(m: &XmodMorphism, m2: &XmodMorphism, limits: Limits) -> Result<HomotopyPullback> {
    common_target(m, m2)?;
    let (x, x2, z) = (&m.source, &m2.source, &m.target);
    let (p, p2, q) = (x.base(), x2.base(), z.base());
    let name = format!("hpb({},{})", m.name, m2.name);
    let mut cb = CategoryBuilder::new(name.clone());

    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for a in 0..p.object_count() {
        for a2 in 0..p2.object_count() {
            for &qq in q.hom(m.ob(a), m2.ob(a2)) {
                let o = cb.object(tuple_label(&[p.object_label(a), q.label(qq), p2.object_label(a2)]));
                objects.push((a, qq, a2));
                object_index.insert((a, qq, a2), o);
            }
        }
    }
    limits.check("homotopy pullback objects", objects.len())?;

    let mut morphisms = Vec::new();
    let mut msrc = Vec::new();
    let mut morphism_index = HashMap::new();
    for (o, &(a, q0, a2)) in objects.iter().enumerate() {
        let h_grp = z.fiber(m.ob(a));
        for &u in p.out(a) {
            for &u2 in p2.out(a2) {
                for h in h_grp.elements() {
                    // q₁ = F′p′∘q₀∘∂h⁻¹∘Fp⁻¹
                    let dh_inv = z.d(m.ob(a), h_grp.inv(h));
                    let q1 = q.comp(m2.mor(u2), q.comp(q0, q.comp(dh_inv, q.inv(m.mor(u)))));
                    let d = object_index[&(p.dst(u), q1, p2.dst(u2))];
                    let lab = format!(
                        "{}:{}->{}",
                        tuple_label(&[p.label(u), h_grp.label(h), p2.label(u2)]),
                        cb_label(&objects, o, p, q, p2),
                        cb_label(&objects, d, p, q, p2)
                    );
                    let id = cb.morphism(lab, o, d);
                    morphisms.push((u, h, u2));
                    msrc.push(o);
                    morphism_index.insert((o, u, h, u2), id);
                }
            }
        }
        limits.check("homotopy pullback morphisms", morphisms.len())?;
    }
    for (o, &(a, _, a2)) in objects.iter().enumerate() {
        let e = z.fiber(m.ob(a)).identity();
        cb.identity(o, morphism_index[&(o, p.id(a), e, p2.id(a2))]);
    }
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (i, &o) in msrc.iter().enumerate() {
        by_src[o].push(i);
    }
    let dst_of = |i: usize| {
        let (u, h, u2) = morphisms[i];
        let (a, q0, _) = objects[msrc[i]];
        let hg = z.fiber(m.ob(a));
        let q1 = q.comp(m2.mor(u2), q.comp(q0, q.comp(z.d(m.ob(a), hg.inv(h)), q.inv(m.mor(u)))));
        object_index[&(p.dst(u), q1, p2.dst(u2))]
    };
    for i in 0..morphisms.len() {
        let (u1, h1, v1) = morphisms[i];
        let mid = dst_of(i);
        let a0 = objects[msrc[i]].0;
        let g0 = z.fiber(m.ob(a0));
        let back = q.inv(m.mor(u1));
        for &j in &by_src[mid] {
            let (u2, h2, v2) = morphisms[j];
            let h = g0.mul(z.act(back, h2), h1);
            let k = morphism_index[&(msrc[i], p.comp(u2, u1), h, p2.comp(v2, v1))];
            cb.compose(j, i, k);
        }
    }
    let base = Arc::new(FiniteGroupoid::from_category(cb.build()?)?);

    let fibers: Vec<FiniteGroup> =
        objects.iter().map(|&(a, _, a2)| FiniteGroup::product(x.fiber(a), x2.fiber(a2))).collect();
    let mut action = Vec::with_capacity(morphisms.len());
    for (i, &(u, _, u2)) in morphisms.iter().enumerate() {
        let (a, _, a2) = objects[msrc[i]];
        let (b2n, g2n) = (x2.fiber(p2.dst(u2)).order(), x2.fiber(a2).order());
        let row = (0..x.fiber(a).order() * g2n)
            .map(|e| x.act(u, e / g2n) * b2n + x2.act(u2, e % g2n))
            .collect();
        action.push(row);
    }
    let mut boundary = Vec::with_capacity(objects.len());
    for (o, &(a, qq, a2)) in objects.iter().enumerate() {
        let (g, g2) = (x.fiber(a), x2.fiber(a2));
        let hg = z.fiber(m.ob(a));
        let qi = q.inv(qq);
        let row = (0..g.order() * g2.order())
            .map(|e| {
                let (e1, e2) = (e / g2.order(), e % g2.order());
                let h = hg.mul(hg.inv(m.phi[a][e1]), z.act(qi, m2.phi[a2][e2]));
                morphism_index[&(o, x.d(a, e1), h, x2.d(a2, e2))]
            })
            .collect();
        boundary.push(row);
    }
    let xmod = Arc::new(CrossedModule::new(name.clone(), PGroup { base, fibers, action }, boundary)?);

    let projection = |first: bool| {
        let (src, n) = if first { (x.clone(), 0) } else { (x2.clone(), 1) };
        let obj = objects.iter().map(|t| if first { t.0 } else { t.2 }).collect();
        let mor = morphisms.iter().map(|t| if first { t.0 } else { t.2 }).collect();
        let phi = objects
            .iter()
            .map(|&(a, _, a2)| {
                let k = x2.fiber(a2).order();
                (0..x.fiber(a).order() * k).map(|e| if first { e / k } else { e % k }).collect()
            })
            .collect();
        XmodMorphism::new(format!("pr{n}"), xmod.clone(), src, obj, mor, phi)
    };
    Ok(HomotopyPullback {
        proj: projection(true),
        proj_prime: projection(false),
        xmod,
        objects,
        morphisms,
        object_index,
        morphism_index,
    })
}

fn cb_label(
    objects: &[(usize, usize, usize)],
    o: usize,
    p: &FiniteGroupoid,
    q: &FiniteGroupoid,
    p2: &FiniteGroupoid,
) -> String {
    let (a, qq, a2) = objects[o];
    tuple_label(&[p.object_label(a), q.label(qq), p2.object_label(a2)])
}

/// The strict pullback crossed module `(𝒢 ×_{ℋF} 𝒢′, 𝒫 ×_𝒬 𝒫′, ∂)` and
/// the canonical morphism `(ȷ, J)` into the homotopy pullback.
#[derive(Clone, Debug)]
pub struct StrictPullback {
    pub xmod: Arc<CrossedModule>,
    pub hpb: HomotopyPullback,
    pub canonical: XmodMorphism,
    /// Per object, the fiber pairs `(g, g′)` in element order.
    pub pairs: Vec<Vec<(usize, usize)>>,
}

pub fn pullback_xmod(m: &XmodMorphism, m2: &XmodMorphism) -> Result<StrictPullback> {
    pullback_xmod_with_limits(m, m2, Limits::default())
}

pub fn pullback_xmod_with_limits(m: &XmodMorphism, m2: &XmodMorphism, limits: Limits) -> Result<StrictPullback> {
    common_target(m, m2)?;
    let hpb = homotopy_pullback_xmod_with_limits(m, m2, limits)?;
    let (x, x2, z) = (&m.source, &m2.source, &m.target);
    let pb = pullback_groupoid(&m.functor, &m2.functor)?;
    let base = pb.groupoid.clone();

    let mut fibers = Vec::new();
    let mut pairs = Vec::new();
    for &(a, a2) in &pb.objects {
        let (g, g2) = (x.fiber(a), x2.fiber(a2));
        let prod = FiniteGroup::product(g, g2);
        let k = g2.order();
        let mask: Vec<bool> = prod.elements().map(|e| m.phi[a][e / k] == m2.phi[a2][e % k]).collect();
        let (sub, incl) = prod.subgroup(&mask)?;
        fibers.push(sub);
        pairs.push(incl.iter().map(|&e| (e / k, e % k)).collect::<Vec<_>>());
    }
    let find = |o: usize, pr: (usize, usize)| pairs[o].iter().position(|&t| t == pr).unwrap();
    let mut action = Vec::new();
    for (i, &(u, u2)) in pb.morphisms.iter().enumerate() {
        let (s, d) = (base.src(i), base.dst(i));
        action.push(pairs[s].iter().map(|&(g, g2)| find(d, (x.act(u, g), x2.act(u2, g2)))).collect());
    }
    let mut boundary = Vec::new();
    for (o, &(a, a2)) in pb.objects.iter().enumerate() {
        boundary.push(pairs[o].iter().map(|&(g, g2)| pb.morphism_index[&(x.d(a, g), x2.d(a2, g2))]).collect());
    }
    let name = format!("pb({},{})", m.name, m2.name);
    let xmod = Arc::new(CrossedModule::new(name, PGroup { base, fibers, action }, boundary)?);

    // (a, a′) ↦ (a, 1_{Fa}, a′), (p, p′) ↦ (p, 1, p′), fibers by inclusion
    let q = z.base();
    let obj_map: Vec<usize> = pb
        .objects
        .iter()
        .map(|&(a, a2)| hpb.find_object(a, q.id(m.ob(a)), a2).unwrap())
        .collect();
    let mor_map = pb
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, &(u, u2))| {
            let o = obj_map[pb.groupoid.src(i)];
            let e = z.fiber(m.ob(x.base().src(u))).identity();
            hpb.find_morphism(o, u, e, u2).unwrap()
        })
        .collect();
    let phi = pb
        .objects
        .iter()
        .enumerate()
        .map(|(o, &(_, a2))| pairs[o].iter().map(|&(g, g2)| g * x2.fiber(a2).order() + g2).collect())
        .collect();
    let canonical = XmodMorphism::new("canonical", xmod.clone(), hpb.xmod.clone(), obj_map, mor_map, phi);
    Ok(StrictPullback { xmod, hpb, canonical, pairs })
}

/// The two conditions making `(φ, F)` a fibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibrationConditions {
    pub base_fibration: bool,
    pub fibers_surjective: bool,
}

impl FibrationConditions {
    pub fn holds(self) -> bool {
        self.base_fibration && self.fibers_surjective
    }
}

pub fn fibration_conditions(m: &XmodMorphism) -> FibrationConditions {
    let y = &m.target;
    let surjective = m.phi.iter().enumerate().all(|(a, map)| {
        let mut hit = vec![false; y.fiber(m.ob(a)).order()];
        for &h in map {
            hit[h] = true;
        }
        hit.iter().all(|&b| b)
    });
    FibrationConditions { base_fibration: groupoid_fibration(&m.functor), fibers_surjective: surjective }
}

pub fn fibration_xmod(m: &XmodMorphism) -> bool {
    fibration_conditions(m).holds()
}
