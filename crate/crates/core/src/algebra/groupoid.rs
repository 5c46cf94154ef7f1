use std::collections::HashMap;
use std::ops::Deref;
use std::sync::Arc;

use super::category::{CategoryBuilder, FiniteCategory, Functor};
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};
use crate::tuple_label;

/// A finite category in which every morphism is invertible, with the
/// inverse table cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    cat: FiniteCategory,
    inverse: Vec<usize>,
}

impl Deref for FiniteGroupoid {
    type Target = FiniteCategory;
    fn deref(&self) -> &FiniteCategory {
        &self.cat
    }
}

impl FiniteGroupoid {
    pub fn from_category(cat: FiniteCategory) -> Result<Self> {
        let mut inverse = Vec::with_capacity(cat.morphism_count());
        for f in 0..cat.morphism_count() {
            match cat.inverse_of(f) {
                Some(g) => inverse.push(g),
                None => return Err(Error::Invalid(format!("morphism `{}` of {} is not invertible", cat.label(f), cat.name()))),
            }
        }
        Ok(FiniteGroupoid { cat, inverse })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inverse[f]
    }

    /// The one-object groupoid of a group; `g∘f` is the product `g·f`.
    pub fn from_group(name: &str, g: &FiniteGroup) -> Self {
        let mut b = CategoryBuilder::new(name);
        let o = b.object("*");
        for a in g.elements() {
            b.morphism(g.label(a), o, o);
        }
        b.identity(o, g.identity());
        for x in g.elements() {
            for y in g.elements() {
                b.compose(x, y, g.mul(x, y));
            }
        }
        Self::from_category(b.build().unwrap()).unwrap()
    }

    /// The groupoid with exactly one morphism between any two objects.
    pub fn indiscrete(name: &str, labels: &[&str]) -> Self {
        let n = labels.len();
        let mut b = CategoryBuilder::new(name);
        for l in labels {
            b.object(*l);
        }
        for i in 0..n {
            for j in 0..n {
                let m = b.morphism(format!("{}>{}", labels[i], labels[j]), i, j);
                if i == j {
                    b.identity(i, m);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    b.compose(j * n + k, i * n + j, i * n + k);
                }
            }
        }
        Self::from_category(b.build().unwrap()).unwrap()
    }

    pub fn discrete(name: &str, labels: &[&str]) -> Self {
        Self::from_category(FiniteCategory::discrete(name, labels)).unwrap()
    }

    pub fn terminal() -> Self {
        Self::discrete("1", &["*"])
    }

    /// Connected components: a component index per object (numbered in order
    /// of first appearance) and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.object_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for &f in self.out(a) {
                    let b = self.dst(f);
                    if comp[b] == usize::MAX {
                        comp[b] = count;
                        stack.push(b);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// `Aut(a)` as a group, with the map from group elements to morphisms.
    pub fn aut_group(&self, a: usize) -> (FiniteGroup, Vec<usize>) {
        let ends: Vec<usize> = self.hom(a, a).to_vec();
        let pos: HashMap<usize, usize> = ends.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let labels = ends.iter().map(|&f| self.label(f).to_string()).collect();
        let g = FiniteGroup::from_fn(labels, |x, y| pos[&self.comp(ends[x], ends[y])]).unwrap();
        (g, ends)
    }

    pub fn validate(&self) -> ValidationReport {
        self.cat.validate()
    }
}

/// A functor between finite groupoids.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(source: Arc<FiniteGroupoid>, target: Arc<FiniteGroupoid>, obj_map: Vec<usize>, mor_map: Vec<usize>) -> Self {
        GroupoidFunctor { source, target, obj_map, mor_map }
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor {
            obj_map: (0..g.object_count()).collect(),
            mor_map: (0..g.morphism_count()).collect(),
            source: g.clone(),
            target: g,
        }
    }

    /// The functor induced by a group homomorphism between one-object groupoids.
    pub fn from_group_hom(source: Arc<FiniteGroupoid>, target: Arc<FiniteGroupoid>, map: Vec<usize>) -> Self {
        GroupoidFunctor { obj_map: vec![0; source.object_count()], mor_map: map, source, target }
    }

    /// The unique functor to a one-object groupoid hitting the identity.
    pub fn trivial(source: Arc<FiniteGroupoid>, target: Arc<FiniteGroupoid>) -> Self {
        let id = target.id(0);
        GroupoidFunctor {
            obj_map: vec![0; source.object_count()],
            mor_map: vec![id; source.morphism_count()],
            source,
            target,
        }
    }

    pub fn ob(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn as_functor(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.category().clone()),
            target: Arc::new(self.target.category().clone()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        self.as_functor().violations()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if *self.target != *g.source {
            return Err(Error::Mismatch("functor codomain differs from the next domain".into()));
        }
        Ok(GroupoidFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            obj_map: self.obj_map.iter().map(|&a| g.ob(a)).collect(),
            mor_map: self.mor_map.iter().map(|&f| g.mor(f)).collect(),
        })
    }
}

/// True when `f` is a fibration of groupoids: every morphism of the target
/// starting at `F(a)` lifts to a morphism of the source starting at `a`.
pub fn groupoid_fibration(f: &GroupoidFunctor) -> bool {
    let (s, t) = (&f.source, &f.target);
    (0..s.object_count()).all(|a| {
        let fa = f.ob(a);
        t.out(fa).iter().all(|&q| s.out(a).iter().any(|&p| f.mor(p) == q))
    })
}

/// The strict pullback `P ×_Q P′` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub groupoid: Arc<FiniteGroupoid>,
    pub proj: GroupoidFunctor,
    pub proj_prime: GroupoidFunctor,
    pub objects: Vec<(usize, usize)>,
    pub morphisms: Vec<(usize, usize)>,
    pub object_index: HashMap<(usize, usize), usize>,
    pub morphism_index: HashMap<(usize, usize), usize>,
}

pub fn pullback_groupoid(f: &GroupoidFunctor, f2: &GroupoidFunctor) -> Result<Pullback> {
    if *f.target != *f2.target {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    let (p, p2) = (&f.source, &f2.source);
    let mut b = CategoryBuilder::new(format!("{}x{}", p.name(), p2.name()));
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for a in 0..p.object_count() {
        for a2 in 0..p2.object_count() {
            if f.ob(a) == f2.ob(a2) {
                let o = b.object(tuple_label(&[p.object_label(a), p2.object_label(a2)]));
                objects.push((a, a2));
                object_index.insert((a, a2), o);
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    for (o, &(a, a2)) in objects.iter().enumerate() {
        for &u in p.out(a) {
            for &u2 in p2.out(a2) {
                if f.mor(u) == f2.mor(u2) {
                    let d = object_index[&(p.dst(u), p2.dst(u2))];
                    let m = b.morphism(tuple_label(&[p.label(u), p2.label(u2)]), o, d);
                    morphisms.push((u, u2));
                    morphism_index.insert((u, u2), m);
                }
            }
        }
    }
    for (o, &(a, a2)) in objects.iter().enumerate() {
        b.identity(o, morphism_index[&(p.id(a), p2.id(a2))]);
    }
    for (m1, &(u, u2)) in morphisms.iter().enumerate() {
        for (m2, &(v, v2)) in morphisms.iter().enumerate() {
            if p.src(v) == p.dst(u) && p2.src(v2) == p2.dst(u2) {
                b.compose(m2, m1, morphism_index[&(p.comp(v, u), p2.comp(v2, u2))]);
            }
        }
    }
    let groupoid = Arc::new(FiniteGroupoid::from_category(b.build()?)?);
    let proj = GroupoidFunctor::new(
        groupoid.clone(),
        p.clone(),
        objects.iter().map(|x| x.0).collect(),
        morphisms.iter().map(|x| x.0).collect(),
    );
    let proj_prime = GroupoidFunctor::new(
        groupoid.clone(),
        p2.clone(),
        objects.iter().map(|x| x.1).collect(),
        morphisms.iter().map(|x| x.1).collect(),
    );
    Ok(Pullback { groupoid, proj, proj_prime, objects, morphisms, object_index, morphism_index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::from_group(&format!("Z{n}"), &FiniteGroup::cyclic(n)))
    }

    #[test]
    fn group_groupoid_is_valid() {
        assert!(z(2).validate().is_valid());
        assert!(FiniteGroupoid::indiscrete("I3", &["a", "b", "c"]).validate().is_valid());
    }

    #[test]
    fn components_of_disjoint_groupoid() {
        let g = FiniteGroupoid::discrete("d", &["x", "y", "z"]);
        assert_eq!(g.components(), (vec![0, 1, 2], 3));
    }

    #[test]
    fn pullback_of_mod_two_maps() {
        let z4 = z(4);
        let z2 = z(2);
        let f = GroupoidFunctor::from_group_hom(z4.clone(), z2.clone(), vec![0, 1, 0, 1]);
        let pb = pullback_groupoid(&f, &f).unwrap();
        assert_eq!(pb.groupoid.morphism_count(), 8);
        assert!(pb.groupoid.validate().is_valid());
        assert!(groupoid_fibration(&f));
        let g = GroupoidFunctor::trivial(z2.clone(), z4);
        assert!(!groupoid_fibration(&g));
    }
}
