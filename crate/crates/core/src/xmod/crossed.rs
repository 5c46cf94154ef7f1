use std::sync::Arc;

use crate::algebra::{is_homomorphism, FiniteGroup, FiniteGroupoid, GroupoidFunctor, PGroup};
use crate::error::{Error, Result};
use crate::exec;
use crate::report::{ValidationReport, Violation};

/// A crossed module of groupoids `(𝒢, 𝒫, ∂)`.
///
/// `boundary[a][g]` is the morphism id of `∂_a(g)`, an automorphism of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub name: String,
    pub group: PGroup,
    pub boundary: Vec<Vec<usize>>,
}

impl CrossedModule {
    /// Checks only that the tables have the right shape; the axioms are
    /// left to [`CrossedModule::validate`].
    pub fn new(name: impl Into<String>, group: PGroup, boundary: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let p = &group.base;
        if group.fibers.len() != p.object_count() || boundary.len() != p.object_count() {
            return Err(Error::schema("/boundary", format!("{name}: one fiber and one boundary map per object expected")));
        }
        for (a, d) in boundary.iter().enumerate() {
            if d.len() != group.fibers[a].order() {
                return Err(Error::schema(format!("/boundary/{a}"), format!("{name}: boundary map has the wrong length")));
            }
            if let Some(&m) = d.iter().find(|&&m| m >= p.morphism_count() || p.src(m) != a || p.dst(m) != a) {
                return Err(Error::schema(
                    format!("/boundary/{a}"),
                    format!("{name}: `{m}` is not an automorphism of `{}`", p.object_label(a)),
                ));
            }
        }
        Ok(CrossedModule { name, group, boundary })
    }

    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        &self.group.base
    }

    pub fn fiber(&self, a: usize) -> &FiniteGroup {
        &self.group.fibers[a]
    }

    /// `ᵖg`.
    pub fn act(&self, p: usize, g: usize) -> usize {
        self.group.action[p][g]
    }

    /// `∂_a(g)`.
    pub fn d(&self, a: usize, g: usize) -> usize {
        self.boundary[a][g]
    }

    /// `(1, P, 1)`: trivial fibers over a groupoid.
    pub fn discrete(p: Arc<FiniteGroupoid>) -> Self {
        let group = PGroup::trivial_action(p.clone(), FiniteGroup::trivial());
        let boundary = (0..p.object_count()).map(|a| vec![p.id(a)]).collect();
        CrossedModule { name: format!("(1,{},1)", p.name()), group, boundary }
    }

    /// `(A, 1, 0)` over the one-object trivial groupoid.
    pub fn abelian(name: &str, a: &FiniteGroup) -> Self {
        let p = Arc::new(FiniteGroupoid::terminal());
        let group = PGroup::trivial_action(p.clone(), a.clone());
        CrossedModule { name: format!("({name},1,0)"), group, boundary: vec![vec![p.id(0); a.order()]] }
    }

    /// A one-object crossed module `∂: G → P` given by group data.
    /// `action(p, g)` is `ᵖg` for `p ∈ P`, and `boundary[g]` is an element of `P`.
    pub fn from_groups(
        name: impl Into<String>,
        g: &FiniteGroup,
        p: &FiniteGroup,
        action: impl Fn(usize, usize) -> usize,
        boundary: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let base = Arc::new(FiniteGroupoid::from_group(&name, p));
        let action = p.elements().map(|x| g.elements().map(|y| action(x, y)).collect()).collect();
        let group = PGroup { base, fibers: vec![g.clone()], action };
        CrossedModule::new(name, group, vec![boundary])
    }

    /// `(G, G, id)` with `G` acting on itself by conjugation.
    pub fn conjugation(name: &str, g: &FiniteGroup) -> Self {
        Self::from_groups(format!("({name},{name},id)"), g, g, |x, y| g.conjugate(x, y), g.elements().collect()).unwrap()
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport::new(self.name.clone(), self.violations())
    }

    pub fn violations(&self) -> Vec<Violation> {
        let name = &self.name;
        let mut out = self.group.violations(name);
        if !out.is_empty() {
            return out;
        }
        let p = self.base().clone();
        out.extend(exec::flat_map_range(p.object_count(), |a| self.object_violations(a)));
        out
    }

    fn object_violations(&self, a: usize) -> Vec<Violation> {
        let p = self.base();
        let g = self.fiber(a);
        let name = &self.name;
        let ol = p.object_label(a);
        let mut out = Vec::new();
        let (aut, ends) = p.aut_group(a);
        let pos = |m: usize| ends.iter().position(|&e| e == m);
        let as_aut: Vec<usize> = match self.boundary[a].iter().map(|&m| pos(m)).collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => {
                out.push(Violation::schema(format!("/boundary/{a}"), format!("{name}: boundary leaves Aut({ol})")));
                return out;
            }
        };
        if !is_homomorphism(g, &aut, &as_aut) {
            out.push(Violation::axiom("boundary-homomorphism", format!("{name}:{ol}"), "", ""));
        }
        // equivariance for every p starting at a
        for &q in p.out(a) {
            let b = p.dst(q);
            for x in g.elements() {
                let l = self.d(b, self.act(q, x));
                let r = p.comp(q, p.comp(self.d(a, x), p.inv(q)));
                if l != r {
                    out.push(Violation::axiom(
                        "boundary-equivariance",
                        format!("{name}:({},{})", p.label(q), g.label(x)),
                        p.label(l),
                        p.label(r),
                    ));
                }
            }
        }
        for x in g.elements() {
            let dx = self.d(a, x);
            for y in g.elements() {
                let l = self.act(dx, y);
                let r = g.conjugate(x, y);
                if l != r {
                    out.push(Violation::axiom("peiffer", format!("{name}:{ol}:({},{})", g.label(x), g.label(y)), g.label(l), g.label(r)));
                }
            }
        }
        let id = p.id(a);
        for k in g.elements().filter(|&k| self.d(a, k) == id) {
            for y in g.elements() {
                if g.mul(k, y) != g.mul(y, k) {
                    out.push(Violation::axiom("kernel-central", format!("{name}:{ol}:({},{})", g.label(k), g.label(y)), "", ""));
                }
            }
        }
        let mut image = vec![false; aut.order()];
        for &i in &as_aut {
            image[i] = true;
        }
        if !aut.is_normal(&image) {
            out.push(Violation::axiom("image-normal", format!("{name}:{ol}"), "", ""));
        }
        out
    }
}

/// A morphism `(φ, F): X → Y` of crossed modules.
#[derive(Clone, Debug)]
pub struct XmodMorphism {
    pub name: String,
    pub source: Arc<CrossedModule>,
    pub target: Arc<CrossedModule>,
    pub functor: GroupoidFunctor,
    /// `phi[a][g]` is `φ_a(g) ∈ ℋ(Fa)`.
    pub phi: Vec<Vec<usize>>,
}

impl XmodMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<CrossedModule>,
        target: Arc<CrossedModule>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
        phi: Vec<Vec<usize>>,
    ) -> Self {
        let functor = GroupoidFunctor::new(source.base().clone(), target.base().clone(), obj_map, mor_map);
        XmodMorphism { name: name.into(), source, target, functor, phi }
    }

    pub fn identity(x: Arc<CrossedModule>) -> Self {
        let functor = GroupoidFunctor::identity(x.base().clone());
        let phi = x.group.fibers.iter().map(|g| g.elements().collect()).collect();
        XmodMorphism { name: format!("1_{}", x.name), source: x.clone(), target: x, functor, phi }
    }

    pub fn ob(&self, a: usize) -> usize {
        self.functor.ob(a)
    }

    pub fn mor(&self, p: usize) -> usize {
        self.functor.mor(p)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &XmodMorphism) -> Result<XmodMorphism> {
        if *self.target != *next.source {
            return Err(Error::Mismatch(format!("{} does not end where {} starts", self.name, next.name)));
        }
        let functor = self.functor.then(&next.functor)?;
        let phi = self
            .phi
            .iter()
            .enumerate()
            .map(|(a, m)| m.iter().map(|&h| next.phi[self.ob(a)][h]).collect())
            .collect();
        Ok(XmodMorphism {
            name: format!("{}.{}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            functor,
            phi,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport::new(self.name.clone(), self.violations())
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (x, y) = (&self.source, &self.target);
        let name = &self.name;
        let mut out = Vec::new();
        if *self.functor.source != **x.base() || *self.functor.target != **y.base() {
            out.push(Violation::schema("/functor", format!("{name}: functor is not between the base groupoids")));
            return out;
        }
        out.extend(self.functor.violations());
        if self.phi.len() != x.base().object_count() {
            out.push(Violation::schema("/phi", format!("{name}: one fiber map per object expected")));
        }
        if !out.is_empty() {
            return out;
        }
        let p = x.base();
        let q = y.base();
        for a in 0..p.object_count() {
            let (g, h) = (x.fiber(a), y.fiber(self.ob(a)));
            if !is_homomorphism(g, h, &self.phi[a]) {
                out.push(Violation::axiom("phi-homomorphism", format!("{name}:{}", p.object_label(a)), "", ""));
                continue;
            }
            for e in g.elements() {
                let l = y.d(self.ob(a), self.phi[a][e]);
                let r = self.mor(x.d(a, e));
                if l != r {
                    out.push(Violation::axiom("boundary-square", format!("{name}:{}:{}", p.object_label(a), g.label(e)), q.label(l), q.label(r)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for m in 0..p.morphism_count() {
            let (a, b) = (p.src(m), p.dst(m));
            for e in x.fiber(a).elements() {
                let l = self.phi[b][x.act(m, e)];
                let r = y.act(self.mor(m), self.phi[a][e]);
                if l != r {
                    let h = y.fiber(self.ob(b));
                    out.push(Violation::axiom(
                        "phi-naturality",
                        format!("{name}:({},{})", p.label(m), x.fiber(a).label(e)),
                        h.label(l),
                        h.label(r),
                    ));
                }
            }
        }
        out
    }

    /// True when the morphism is invertible: bijective on objects,
    /// morphisms and every fiber.
    pub fn is_isomorphism(&self) -> bool {
        let (x, y) = (&self.source, &self.target);
        let bij = |m: &[usize], n: usize| crate::algebra::is_bijection(m, n);
        bij(&self.functor.obj_map, y.base().object_count())
            && bij(&self.functor.mor_map, y.base().morphism_count())
            && self.phi.iter().enumerate().all(|(a, m)| bij(m, y.fiber(self.ob(a)).order()))
            && self.violations().is_empty()
            && x.base().object_count() == y.base().object_count()
    }
}
