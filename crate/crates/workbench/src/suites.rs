//! The check suites. Each suite turns a corpus into a flat list of
//! independent checks; the checks run through `exec::map` (so in parallel
//! when that is enabled) and are reported in the order they were listed.

use std::sync::Arc;

use hofib_core::algebra::{FiniteCategory, FiniteGraph};
use hofib_core::bicat::{discrete_bicategory, Direction, FiniteBicategory, LaxMorphism};
use hofib_core::comma::{bar_lift, comma, comparison_transformation, hom_isomorphism, mediating, mediating_uniqueness, square_checks};
use hofib_core::monoidal::{monoidal_fibre, regularity_check, tensor_translation, Side};
use hofib_core::nerve::*;
use hofib_core::xmod::*;
use hofib_core::{exec, tuple_label, Error, Limits, Result, DEFAULT_MAX_CELLS};

use crate::corpus::Corpus;
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Axioms,
    Comma,
    Nerve,
    Appendix,
    Xmod,
    Mv,
    Monoidal,
    All,
}

impl Suite {
    /// The suites `all` runs, in order.
    pub const EACH: [Suite; 7] = [Suite::Axioms, Suite::Comma, Suite::Nerve, Suite::Appendix, Suite::Xmod, Suite::Mv, Suite::Monoidal];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Comma => "comma",
            Suite::Nerve => "nerve",
            Suite::Appendix => "appendix",
            Suite::Xmod => "xmod",
            Suite::Mv => "mv",
            Suite::Monoidal => "monoidal",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::EACH.into_iter().chain([Suite::All]).find(|x| x.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Ceiling on the number of cells enumerated in any one dimension.
    pub max_cells: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_cells: DEFAULT_MAX_CELLS, jobs: None }
    }
}

impl Options {
    fn limits(&self) -> Limits {
        Limits::new(self.max_cells)
    }
}

type Task<'a> = Box<dyn Fn() -> Check + Send + Sync + 'a>;

/// Runs `body` and turns an error into an errored or failed check.
fn guarded(base: Check, body: impl FnOnce(Check) -> Result<Check>) -> Check {
    match body(base.clone()) {
        Ok(c) => c,
        Err(e) => base.error(&e),
    }
}

fn task<'a>(base: Check, body: impl Fn(Check) -> Result<Check> + Send + Sync + 'a) -> Task<'a> {
    Box::new(move || guarded(base.clone(), &body))
}

fn sizes(b: &FiniteBicategory) -> String {
    format!("{} objects, {} 1-cells, {} 2-cells", b.obj_count(), b.c1_count(), b.c2_count())
}

fn counts(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(usize::to_string).collect();
    format!("simplices per dimension {}", parts.join("/"))
}

/// Lax 3-simplex count above which icon enumeration stops at dimension 2:
/// it is quadratic in the number of lax functors.
const ICON_HEAVY: usize = 500;

fn icon_dim(b: &Arc<FiniteBicategory>, limits: Limits) -> Result<usize> {
    let heavy = geometric_nerve_with_limits(b, NerveVariant::Lax, 3, limits)?.sset.count(3) > ICON_HEAVY;
    Ok(if heavy { 2 } else { 3 })
}

pub fn run_suite(suite: Suite, corpus: &Corpus, opts: &Options) -> Result<Report> {
    let run = || {
        let tasks = tasks(suite, corpus, opts);
        exec::map(&tasks, |t| t())
    };
    let checks = match opts.jobs {
        #[cfg(feature = "parallel")]
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(run),
        _ => run(),
    };
    Ok(Report { suite: suite.as_str().into(), seed: Some(corpus.seed), max_cells: opts.max_cells, checks })
}

fn tasks<'a>(suite: Suite, c: &'a Corpus, o: &'a Options) -> Vec<Task<'a>> {
    match suite {
        Suite::Axioms => axioms(c),
        Suite::Comma => comma_suite(c),
        Suite::Nerve => nerve(c, o),
        Suite::Appendix => appendix(c, o),
        Suite::Xmod => xmod(c, o),
        Suite::Mv => mv(c),
        Suite::Monoidal => monoidal(c),
        Suite::All => Suite::EACH.into_iter().flat_map(|s| tasks(s, c, o)).collect(),
    }
}

fn axioms(c: &Corpus) -> Vec<Task<'_>> {
    let mut t: Vec<Task<'_>> = Vec::new();
    for b in c.bicategories.iter().chain(&c.injected) {
        let base = Check::new("axioms", "bicategory-axioms", "associativity, unit and interchange tables, pentagon and triangle", b.name());
        t.push(task(base, move |k| Ok(k.with_report(&b.validate()).detail(sizes(b)))));
    }
    for m in &c.monoidal {
        let base = Check::new("axioms", "monoidal-axioms", "monoidal category coherence and its one-object delooping", &m.name);
        t.push(task(base, move |mut k| {
            k.absorb(&m.validate());
            k.absorb(&m.delooping().validate());
            Ok(k.detail(format!("{} objects, {} morphisms", m.object_count(), m.category.morphism_count())))
        }));
    }
    for (name, f, g) in &c.monoidal_pairs {
        let base = Check::new("axioms", "monoidal-functors", "lax monoidal functors and their deloopings as lax and oplax functors", name);
        t.push(task(base, move |mut k| {
            for h in [f, g] {
                k.absorb(&h.validate());
            }
            k.absorb(&f.sigma(Direction::Lax)?.validate());
            k.absorb(&g.sigma(Direction::Oplax)?.validate());
            Ok(k)
        }));
    }
    t
}

fn comma_suite(c: &Corpus) -> Vec<Task<'_>> {
    let mut t: Vec<Task<'_>> = Vec::new();
    for (name, f, g) in &c.lax_pairs {
        let base = Check::new("comma", "comma-axioms", "the comma of a lax and an oplax functor is a bicategory", name);
        t.push(task(base, move |k| {
            let cm = comma(f, g)?;
            let wf = cm.well_formedness_failures();
            let k = k.with_report(&cm.bicat.validate()).detail(sizes(&cm.bicat));
            Ok(k.expect(wf.is_empty(), || wf[0].clone()))
        }));
        let base = Check::new("comma", "comma-projections", "both projections are strict functors and the comparison is a lax transformation", name);
        t.push(task(base, move |mut k| {
            let cm = comma(f, g)?;
            for d in [Direction::Lax, Direction::Oplax] {
                let p = cm.projection(d)?;
                k.absorb(&p.validate());
                k = k.expect(p.is_strict(), || format!("{} projection is not strict", d.as_str()));
            }
            k.absorb(&comparison_transformation(&cm)?.validate());
            Ok(k)
        }));
        let base = Check::new("comma", "pullback-lemma", "bar lift squares commute and the mediating functor exists uniquely", name);
        t.push(task(base, move |k| {
            let cm = comma(f, g)?;
            let sq = square_checks(&cm)?;
            let k = k.expect(sq.is_empty(), || sq[0].clone());
            let (bl, fbar) = bar_lift(&cm)?;
            let k = k.with_report(&fbar.validate());
            let p = cm.projection(Direction::Lax)?;
            let n = mediating(&cm, &bl, &p, &fbar)?;
            let k = k.expect(n.then(&p)?.table_eq(&p), || "P∘N differs from L".into());
            let k = k.expect(n.then(&fbar)?.table_eq(&fbar), || "F̄∘N differs from M".into());
            let u = mediating_uniqueness(&cm, &fbar, &p, &fbar)?;
            Ok(k.expect(u == 1, || format!("{u} mediating functors")).detail(format!("{u} mediating functor")))
        }));
    }
    for b in &c.bicategories {
        let base = Check::new("comma", "hom-isomorphism", "the comma of two objects is isomorphic to their hom-category", b.name());
        t.push(task(base, move |k| {
            let mut v = Vec::new();
            for x in b.objs() {
                for y in b.objs() {
                    v.extend(hom_isomorphism(b, x, y)?.violations);
                }
            }
            let n = b.obj_count();
            Ok(k.with_violations(b.name(), v).detail(format!("{} object pairs", n * n)))
        }));
    }
    t
}

/// Faces and degeneracies of `Ner B` in low dimension, recomputed from
/// horizontal composition.
fn face_formula_violations(g: &GrothendieckNerve) -> Result<Vec<String>> {
    let b = &g.bicategory;
    let mut out = Vec::new();
    for x in g.objects.get(3).into_iter().flatten() {
        let u = &x.cells;
        for i in 0..=3 {
            let d = g.apply(&coface(3, i), x)?;
            let want = match i {
                0 => vec![u[1], u[2]],
                3 => vec![u[0], u[1]],
                _ => {
                    let mut w = u.clone();
                    w.splice(i - 1..=i, [b.h1(u[i], u[i - 1])?]);
                    w
                }
            };
            if d.cells != want {
                out.push(format!("d{i} at {}", g.object_label(x)));
            }
        }
    }
    for x in g.objects.get(2).into_iter().flatten() {
        for i in 0..=2 {
            let s = g.apply(&codegeneracy(2, i), x)?;
            let mut want = x.cells.clone();
            want.insert(i, b.id1(x.objs[i]));
            if s.cells != want {
                out.push(format!("s{i} at {}", g.object_label(x)));
            }
        }
    }
    Ok(out)
}

/// Maps each simplex of the geometric nerve of a discrete bicategory to the
/// ordinary nerve simplex with the same string of arrows.
fn discrete_maps(c: &FiniteCategory, g: &GeometricNerve, ordinary: &TruncatedSimplicialSet) -> Result<Vec<Vec<usize>>> {
    g.simplices
        .iter()
        .enumerate()
        .map(|(p, xs)| {
            xs.iter()
                .map(|x| {
                    let label = if p == 0 {
                        c.object_label(x.objs[0] as usize).to_string()
                    } else {
                        let parts: Vec<&str> = (1..=p).map(|i| c.label(x.arrow(i - 1, i) as usize)).collect();
                        tuple_label(&parts)
                    };
                    ordinary.find(p, &label).ok_or_else(|| Error::Invalid(format!("no simplex {label} in the ordinary nerve")))
                })
                .collect()
        })
        .collect()
}

fn nerve<'a>(c: &'a Corpus, o: &Options) -> Vec<Task<'a>> {
    let lim = o.limits();
    let mut t: Vec<Task<'_>> = Vec::new();
    for b in &c.bicategories {
        for v in NerveVariant::ALL {
            let base = Check::new("nerve", "simplicial-identities", "geometric nerves satisfy the simplicial identities through dimension 4", format!("{} {}", b.name(), v.as_str()));
            t.push(task(base, move |k| {
                let g = geometric_nerve_with_limits(b, v, 4, lim)?;
                Ok(k.with_report(&validate_simplicial(&g.sset)).detail(counts(&g.sset.counts())))
            }));
        }
    }
    for cat in &c.categories {
        let base = Check::new("nerve", "discrete-nerve-oracle", "nerves of a locally discrete bicategory agree with the ordinary nerve", cat.name());
        t.push(task(base, move |mut k| {
            let b = Arc::new(discrete_bicategory(cat)?);
            let ordinary = category_nerve_with_limits(cat, 4, lim)?;
            for v in NerveVariant::ALL {
                let g = geometric_nerve_with_limits(&b, v, 4, lim)?;
                let maps = discrete_maps(cat, &g, &ordinary)?;
                k = k.with_violations(cat.name(), compare_simplicial(&g.sset, &ordinary, &maps));
            }
            Ok(k.detail(counts(&ordinary.counts())))
        }));
    }
    for b in &c.bicategories {
        let base = Check::new("nerve", "grothendieck-nerve", "Ner B is a normal pseudo-simplicial category with invertible, coherent constraints", b.name());
        t.push(task(base, move |k| {
            let g = grothendieck_nerve_with_limits(b, 3, lim)?;
            let faces = face_formula_violations(&g)?;
            let k = k.with_report(&g.validate());
            let n: Vec<usize> = g.objects.iter().map(Vec::len).collect();
            Ok(k.expect(faces.is_empty(), || format!("face formula fails: {}", faces[0])).detail(format!("objects per dimension {}", n.iter().map(usize::to_string).collect::<Vec<_>>().join("/"))))
        }));
        let base = Check::new("nerve", "nerve-identity", "the nerve of an identity lax functor is the identity", b.name());
        t.push(task(base, move |k| Ok(k.with_violations(b.name(), nerve_identity_violations(b, 3)?))));
    }
    for (f, g) in &c.composable {
        let subject = format!("{} then {}", f.name, g.name);
        let base = Check::new("nerve", "nerve-functoriality", "the nerve of a composite lax functor is the composite of the nerves", subject.clone());
        t.push(task(base, move |k| {
            let k = k.with_violations(&subject, nerve_composite_violations(f, g, 3)?);
            let mut k = k;
            for h in [f, g] {
                k.absorb(&nerve_of_lax(h, 3)?.validate());
            }
            Ok(k)
        }));
    }
    for x in &c.xmods {
        let base = Check::new("nerve", "xmod-nerve-comparison", "the cocycle nerve of a crossed module is isomorphic to the nerve of its 2-groupoid", &x.name);
        t.push(task(base, move |k| {
            let cmp = compare_nerves_with_limits(x, 4, lim)?;
            let dims: Vec<usize> = cmp.counts().iter().map(|p| p.0).collect();
            let same = cmp.counts().iter().all(|(a, b)| a == b);
            Ok(k.with_report(&cmp.report).expect(same, || format!("simplex counts differ: {:?}", cmp.counts())).detail(counts(&dims)))
        }));
        let base = Check::new("nerve", "xmod-nerve-kan", "the nerve of a crossed module fills every horn up to dimension 3", &x.name);
        t.push(task(base, move |mut k| {
            let n = xmod_nerve_with_limits(x, 4, lim)?;
            for p in 1..=3 {
                for i in 0..=p {
                    let r = kan_check(&n.sset, p, i)?;
                    k = k.expect(r.all_fill(), || format!("horn Λ{p},{i} has unfilled instances"));
                }
            }
            Ok(k)
        }));
    }
    t
}

fn appendix<'a>(c: &'a Corpus, o: &Options) -> Vec<Task<'a>> {
    let lim = o.limits();
    let mut t: Vec<Task<'_>> = Vec::new();
    for b in &c.bicategories {
        let base = Check::new("appendix", "graph-adjunction", "RJ = 1, νJ = 1 and Rν = 1 on linear graphs, J sends graph maps to unitary pseudofunctors", b.name());
        t.push(task(base, move |mut k| {
            let top = icon_dim(b, lim)?;
            let mut seen = Vec::new();
            for p in 1..=top {
                let r = graph_adjunction(&FiniteGraph::linear(p), b)?;
                k.absorb(&r.report);
                k = k.expect(r.lax_functors > 0 && r.graph_maps > 0, || format!("no functors from [{p}]"));
                seen.push(format!("[{p}]: {} graph maps, {} lax functors", r.graph_maps, r.lax_functors));
            }
            Ok(k.detail(seen.join("; ")))
        }));
        let base = Check::new("appendix", "jr-bijection", "J_p ⊣ R_p is a bijection on hom-sets for p ≤ 3", b.name());
        t.push(task(base, move |mut k| {
            let mut pairs = Vec::new();
            for p in 0..=3 {
                let (n, v) = jr_bijection(b, p, lim)?;
                k = k.with_violations(b.name(), v);
                pairs.push(n.to_string());
            }
            Ok(k.detail(format!("pairs per dimension {}", pairs.join("/"))))
        }));
        let base = Check::new("appendix", "nerve-projection", "the projection from lax functors out of ordinals to Ner B is coherent and natural", b.name());
        t.push(task(base, move |k| {
            let r = nerve_projection(b, icon_dim(b, lim)?, lim)?;
            Ok(k.with_violations(b.name(), r.violations()?))
        }));
    }
    t
}

fn xmod<'a>(c: &'a Corpus, o: &Options) -> Vec<Task<'a>> {
    let _ = o;
    let mut t: Vec<Task<'_>> = Vec::new();
    for x in &c.xmods {
        let base = Check::new("xmod", "crossed-module-axioms", "crossed module axioms, with ker ∂ central and im ∂ normal", &x.name);
        t.push(task(base, move |k| Ok(k.with_report(&x.validate()))));
        let base = Check::new("xmod", "beta-roundtrip", "β gives a 2-groupoid and β⁻¹β, ββ⁻¹ are isomorphisms", &x.name);
        t.push(task(base, move |k| {
            let tg = beta(x)?;
            let k = k.with_violations(&x.name, two_groupoid_violations(tg.bicategory()));
            let (_, m, v) = roundtrip_xmod(x)?;
            let k = k.with_violations(&x.name, v).expect(m.is_isomorphism(), || "β⁻¹β is not an isomorphism".into());
            let (_, _, v2) = roundtrip_two_groupoid(&tg)?;
            Ok(k.with_violations(&x.name, v2).detail(sizes(tg.bicategory())))
        }));
        let base = Check::new("xmod", "loop-groupoid", "π₀ of the endomorphism groupoid is π₁ and its automorphism group is π₂", &x.name);
        t.push(task(base, move |mut k| {
            for a in 0..x.base().object_count() {
                let e = endo_groupoid(x, a)?;
                k = k.expect(e.pi0_matches_pi1, || format!("π₀ ≠ π₁ at {a}")).expect(e.aut_matches_pi2, || format!("Aut ≠ π₂ at {a}"));
            }
            Ok(k)
        }));
    }
    for (name, f, f2) in &c.cospans {
        let base = Check::new("xmod", "homotopy-pullback", "the homotopy pullback is a crossed module with valid projections", name);
        t.push(task(base, move |mut k| {
            let h = homotopy_pullback_xmod(f, f2)?;
            k.absorb(&h.xmod.validate());
            k.absorb(&h.proj.validate());
            k.absorb(&h.proj_prime.validate());
            Ok(k.detail(format!("{} objects", h.xmod.base().object_count())))
        }));
        if fibration_xmod(f) || fibration_xmod(f2) {
            let base = Check::new("xmod", "fibration-comparison", "with a fibration leg the strict pullback maps to the homotopy pullback by a weak equivalence", name);
            t.push(task(base, move |k| {
                let s = pullback_xmod(f, f2)?;
                let w = weak_equivalence(&s.canonical)?;
                Ok(k.expect(w.pi0_bijective, || "π₀ not bijective".into())
                    .expect(w.pi1_iso.iter().all(|&b| b), || "π₁ not an isomorphism".into())
                    .expect(w.pi2_iso.iter().all(|&b| b), || "π₂ not an isomorphism".into())
                    .expect(w.holds, || "not a weak equivalence".into()))
            }));
        }
    }
    t
}

fn mv(c: &Corpus) -> Vec<Task<'_>> {
    let mut t: Vec<Task<'_>> = Vec::new();
    for (name, f, f2) in &c.cospans {
        let base = Check::new("mv", "mayer-vietoris", "the six-term sequence of a homotopy pullback is exact at every basepoint", name);
        t.push(task(base, move |mut k| {
            let (p, p2) = (f.source.base(), f2.source.base());
            let mut based = 0;
            for a in 0..p.object_count() {
                for a2 in 0..p2.object_count() {
                    if f.ob(a) != f2.ob(a2) {
                        continue;
                    }
                    let r = mv_check(f, f2, a, a2)?;
                    if let Some(j) = r.joints.iter().find(|j| !j.exact) {
                        k = k.expect(false, || format!("not exact at {} from ({a},{a2}): image {} vs kernel {}", j.at, j.image, j.kernel));
                    }
                    based += 1;
                }
            }
            Ok(k.expect(based > 0, || "no compatible basepoints".into()).detail(format!("{based} basepoints")))
        }));
    }
    t
}

fn monoidal(c: &Corpus) -> Vec<Task<'_>> {
    let mut t: Vec<Task<'_>> = Vec::new();
    for (name, f, g) in &c.monoidal_pairs {
        let base = Check::new("monoidal", "fibre-equals-comma", "the homotopy fibre of monoidal functors is the comma of their deloopings", name);
        t.push(task(base, move |k| {
            let fib = monoidal_fibre(f, g)?;
            let cm = comma(&f.sigma(Direction::Lax)?, &g.sigma(Direction::Oplax)?)?;
            Ok(k.expect(*fib.bicat == *cm.bicat, || "cell tables differ".into()).detail(sizes(&fib.bicat)))
        }));
    }
    for m in &c.monoidal {
        let base = Check::new("monoidal", "regularity", "deloopings of groups are regular categorical groups", &m.name);
        let is_group = c.group_monoidal.contains(&m.name);
        t.push(task(base, move |k| {
            let r = regularity_check(m);
            let k = k.detail(format!("regular {}, categorical group {}", r.regular, r.categorical_group));
            if is_group {
                Ok(k.expect(r.regular && r.categorical_group, || r.witnesses.first().cloned().unwrap_or_default()))
            } else {
                Ok(k)
            }
        }));
        let base = Check::new("monoidal", "tensor-translation", "tensoring by an object is a strict endofunctor of the fibre", &m.name);
        t.push(task(base, move |mut k| {
            let id = hofib_core::monoidal::MonoidalFunctor::identity(m.clone());
            for x in 0..m.object_count() {
                for side in [Side::Left, Side::Right] {
                    let (_, tr) = tensor_translation(&id, x, side)?;
                    k.absorb(&tr.validate());
                }
            }
            Ok(k)
        }));
    }
    t
}

/// For callers that want a single lax functor checked in isolation.
pub fn check_lax(f: &LaxMorphism) -> Check {
    Check::new("validate", "lax-functor", "lax functor coherence", &f.name).with_report(&f.validate())
}
