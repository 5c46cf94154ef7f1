use std::sync::Arc;

use super::group::{is_homomorphism, FiniteGroup};
use super::groupoid::FiniteGroupoid;
use crate::report::Violation;

/// A `P`-group: a family of groups `G(a)` indexed by the objects of a
/// groupoid `P`, with an action `ᵖg` of each `p: a → b` as a homomorphism
/// `G(a) → G(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGroup {
    pub base: Arc<FiniteGroupoid>,
    pub fibers: Vec<FiniteGroup>,
    /// `action[p][g]` is `ᵖg`.
    pub action: Vec<Vec<usize>>,
}

impl PGroup {
    pub fn act(&self, p: usize, g: usize) -> usize {
        self.action[p][g]
    }

    pub fn fiber(&self, a: usize) -> &FiniteGroup {
        &self.fibers[a]
    }

    /// The trivial action: identities move nothing, and every morphism acts by
    /// the identity map between equal fibers.
    pub fn trivial_action(base: Arc<FiniteGroupoid>, fiber: FiniteGroup) -> Self {
        let fibers = vec![fiber.clone(); base.object_count()];
        let action = (0..base.morphism_count()).map(|_| fiber.elements().collect()).collect();
        PGroup { base, fibers, action }
    }

    pub fn violations(&self, name: &str) -> Vec<Violation> {
        let p = &self.base;
        let mut out = Vec::new();
        if self.fibers.len() != p.object_count() || self.action.len() != p.morphism_count() {
            out.push(Violation::schema("/pgroup", format!("{name}: fiber or action table has the wrong size")));
            return out;
        }
        for (a, g) in self.fibers.iter().enumerate() {
            out.extend(g.violations(&format!("{name}:G({})", p.object_label(a))));
        }
        for f in 0..p.morphism_count() {
            let (s, d) = (p.src(f), p.dst(f));
            let m = &self.action[f];
            if m.len() != self.fibers[s].order() || m.iter().any(|&x| x >= self.fibers[d].order()) {
                out.push(Violation::schema("/pgroup/action", format!("{name}: action of `{}` has the wrong shape", p.label(f))));
                continue;
            }
            if !is_homomorphism(&self.fibers[s], &self.fibers[d], m) {
                out.push(Violation::axiom("action-homomorphism", format!("{name}:{}", p.label(f)), "", "not a homomorphism"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..p.object_count() {
            let id = p.id(a);
            for g in self.fibers[a].elements() {
                if self.act(id, g) != g {
                    out.push(Violation::axiom("action-identity", format!("{name}:{}", p.object_label(a)), self.fibers[a].label(g), "moved"));
                }
            }
        }
        for (&(q, f), &qf) in p.composition_table() {
            for g in self.fibers[p.src(f)].elements() {
                let l = self.act(qf, g);
                let r = self.act(q, self.act(f, g));
                if l != r {
                    let fib = &self.fibers[p.dst(q)];
                    out.push(Violation::axiom(
                        "action-composition",
                        format!("{name}:({},{},{})", p.label(q), p.label(f), self.fibers[p.src(f)].label(g)),
                        fib.label(l),
                        fib.label(r),
                    ));
                }
            }
        }
        out
    }
}
