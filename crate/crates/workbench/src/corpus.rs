//! Seeded generation of the structures the suites run on.
//!
//! A corpus always contains a fixed core (the two worked cospans, the small
//! non-strict monoidal examples, a few posets) and, per enabled generator,
//! some seeded picks: group orders, dihedral sizes, numbers of objects of
//! indiscrete groupoids. The same seed gives the same corpus on every
//! platform, since picks come from ChaCha.

use std::sync::Arc;

use hofib_core::algebra::{FiniteCategory, FiniteGroup, FiniteGroupoid, PGroup};
use hofib_core::bicat::{terminal_bicategory, Direction, FiniteBicategory, LaxMorphism};
use hofib_core::instances::*;
use hofib_core::monoidal::{unit_functor, MonoidalCategory, MonoidalFunctor};
use hofib_core::xmod::{beta, CrossedModule, XmodMorphism};
use hofib_core::{Error, Result, DEFAULT_MAX_CELLS};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::schema::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `ℤ/n` as deloopings, monoidal categories and crossed modules.
    Cyclic,
    /// Dihedral groups, likewise.
    Dihedral,
    /// Indiscrete groupoids as bicategories and as bases of crossed modules.
    Indiscrete,
    /// The two worked cospans and the other fixed cospans around them.
    Examples,
    /// Conjugation crossed modules `(G, G, id)`.
    Conjugation,
    /// Non-strict monoidal categories and their lax functors.
    Monoidal,
    /// Terminal and ordinal bicategories.
    Posets,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::Cyclic,
        Generator::Dihedral,
        Generator::Indiscrete,
        Generator::Examples,
        Generator::Conjugation,
        Generator::Monoidal,
        Generator::Posets,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Generator::Cyclic => "cyclic",
            Generator::Dihedral => "dihedral",
            Generator::Indiscrete => "indiscrete",
            Generator::Examples => "examples",
            Generator::Conjugation => "conjugation",
            Generator::Monoidal => "monoidal",
            Generator::Posets => "posets",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.as_str() == s)
    }
}

/// Size bounds for generated structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    /// Per hom-set of 1-cells, per hom-set of 2-cells, per fiber group.
    pub max_cells_per_hom: usize,
}

impl Bounds {
    /// The largest bounds the corpus supports.
    pub const MAX: Bounds = Bounds { max_objects: 4, max_cells_per_hom: 12 };
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::MAX
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub bounds: Bounds,
    pub generators: Vec<Generator>,
}

impl CorpusSpec {
    pub fn new(seed: u64) -> Self {
        CorpusSpec { seed, bounds: Bounds::default(), generators: Generator::ALL.to_vec() }
    }

    fn has(&self, g: Generator) -> bool {
        self.generators.contains(&g)
    }
}

pub type LaxPair = (String, LaxMorphism, LaxMorphism);
pub type MonoidalPair = (String, MonoidalFunctor, MonoidalFunctor);
pub type Cospan = (String, XmodMorphism, XmodMorphism);

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub seed: u64,
    pub bicategories: Vec<Arc<FiniteBicategory>>,
    pub monoidal: Vec<Arc<MonoidalCategory>>,
    /// Names of the monoidal categories that come from groups.
    pub group_monoidal: Vec<String>,
    pub monoidal_pairs: Vec<MonoidalPair>,
    /// `(F lax, F′ oplax)` with a common target, for comma bicategories.
    pub lax_pairs: Vec<LaxPair>,
    /// Composable lax functors `(F, G)`, for nerve functoriality.
    pub composable: Vec<(LaxMorphism, LaxMorphism)>,
    pub xmods: Vec<Arc<CrossedModule>>,
    pub cospans: Vec<Cospan>,
    /// Small categories, seen as locally discrete bicategories by the nerve
    /// oracle.
    pub categories: Vec<FiniteCategory>,
    /// Deliberately broken structures, only looked at by the axiom suite.
    pub injected: Vec<Arc<FiniteBicategory>>,
}

/// Faults that can be planted in a corpus to check that they are caught.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// One associator of `ΣM_ω` replaced so the pentagon fails.
    Pentagon,
}

impl Fault {
    pub fn parse(s: &str) -> Option<Self> {
        (s == "pentagon").then_some(Fault::Pentagon)
    }
}

/// Upper bound for the number of 4-simplices of the nerve of `x`:
/// `|objects|⁵·(max hom)⁴·(max fiber)⁶`.
fn nerve_estimate(x: &CrossedModule) -> f64 {
    let p = x.base();
    let n = p.object_count() as f64;
    let hom = (0..n as usize).flat_map(|a| (0..n as usize).map(move |b| (a, b))).map(|(a, b)| p.hom(a, b).len()).max().unwrap_or(1) as f64;
    let g = (0..n as usize).map(|a| x.fiber(a).order()).max().unwrap_or(1) as f64;
    n.powi(5) * hom.powi(4) * g.powi(6)
}

/// A crossed module with fiber `ℤ/m` over the indiscrete groupoid on `k`
/// objects, with trivial action and boundary.
pub fn indiscrete_abelian(k: usize, m: usize) -> CrossedModule {
    let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let base = Arc::new(FiniteGroupoid::indiscrete(&format!("I{k}"), &refs));
    let fiber = FiniteGroup::cyclic(m);
    let boundary = (0..k).map(|a| vec![base.id(a); m]).collect();
    CrossedModule::new(format!("(I{k},Z{m},0)"), PGroup::trivial_action(base, fiber), boundary).expect("shapes match")
}

/// `x ↦ x mod d` as a morphism of one-object crossed modules `(ℤ/n,ℤ/n,id)
/// → (ℤ/d,ℤ/d,id)`.
fn conjugation_quotient(n: usize, d: usize) -> Cospan {
    let (src, dst) = (xm_cyclic_conjugation(n), xm_cyclic_conjugation(d));
    let m: Vec<usize> = (0..n).map(|x| x % d).collect();
    let q = one_object_morphism(&format!("mod{d}"), &src, &dst, m.clone(), m);
    (format!("conj-mod{d}-of-Z{n}-vs-id"), q, XmodMorphism::identity(dst))
}

/// `ℤ/n → ℤ/d` reduction mod `d` as a strict monoidal functor between
/// discrete monoidal categories.
fn cyclic_quotient(n: usize, d: usize) -> Result<MonoidalFunctor> {
    MonoidalFunctor::discrete(&format!("mod{d}"), cyclic_monoidal(n), cyclic_monoidal(d), (0..n).map(|x| x % d).collect())
}

fn push_unique<T>(v: &mut Vec<T>, x: T, key: impl Fn(&T) -> String) {
    let k = key(&x);
    if !v.iter().any(|y| key(y) == k) {
        v.push(x);
    }
}

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let b = spec.bounds;
    if b.max_objects > Bounds::MAX.max_objects || b.max_cells_per_hom > Bounds::MAX.max_cells_per_hom {
        return Err(Error::ResourceLimit {
            what: format!("corpus bounds ({} objects, {} cells per hom)", b.max_objects, b.max_cells_per_hom),
            limit: if b.max_objects > Bounds::MAX.max_objects { Bounds::MAX.max_objects } else { Bounds::MAX.max_cells_per_hom },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut c = Corpus { seed: spec.seed, ..Corpus::default() };
    let cap = b.max_cells_per_hom;

    if spec.has(Generator::Posets) {
        c.bicategories.extend([terminal_bicategory(), ordinal_bicategory(1), ordinal_bicategory(2)]);
        c.categories.extend([FiniteCategory::terminal(), FiniteCategory::ordinal(1), FiniteCategory::ordinal(2), two_chain()]);
    }

    if spec.has(Generator::Cyclic) {
        // fixed small orders plus two seeded ones
        let mut orders = vec![2, 3];
        let mut pool: Vec<usize> = (4..=cap).collect();
        pool.shuffle(&mut rng);
        orders.extend(pool.into_iter().take(2));
        for &n in &orders {
            c.bicategories.push(cyclic_delooping(n));
            c.monoidal.push(cyclic_monoidal(n));
            c.group_monoidal.push(cyclic_monoidal(n).name.clone());
            c.xmods.push(xm_group(&format!("Z{n}"), &FiniteGroup::cyclic(n)));
        }
        let z2 = cyclic_monoidal(2);
        let id2 = MonoidalFunctor::identity(z2.clone());
        c.monoidal_pairs.push(("Z2:id,id".into(), id2.clone(), id2));
        // a seeded quotient ℤ/n → ℤ/d against the identity of ℤ/d
        let n = rng.gen_range(4..=6usize.min(cap).max(4));
        let divisors: Vec<usize> = (2..n).filter(|d| n % d == 0).collect();
        let d = *divisors.choose(&mut rng).expect("n ≥ 4 has a proper divisor");
        let q = cyclic_quotient(n, d)?;
        c.monoidal_pairs.push((format!("Z{n}:mod{d},id"), q, MonoidalFunctor::identity(cyclic_monoidal(d))));
        for k in [2, 3, rng.gen_range(4..=7usize.min(cap).max(4))] {
            c.xmods.push(xm_abelian(k));
        }
    }

    if spec.has(Generator::Dihedral) {
        let n = rng.gen_range(3..=(cap / 2).max(3));
        let g = FiniteGroup::dihedral(n);
        let m = group_monoidal(&format!("D{n}"), &g);
        c.bicategories.push(m.delooping());
        c.group_monoidal.push(m.name.clone());
        c.monoidal.push(m.clone());
        c.xmods.push(xm_group(&format!("D{n}"), &g));
        // the fibre of a group of order 2n has (2n)³ 1-cells, so the fibre
        // pair uses S3 rather than the seeded dihedral group
        let s3 = group_monoidal("S3", &FiniteGroup::symmetric3());
        c.group_monoidal.push(s3.name.clone());
        c.monoidal.push(s3.clone());
        let id = MonoidalFunctor::identity(s3);
        c.monoidal_pairs.push(("S3:id,id".into(), id.clone(), id));
    }

    if spec.has(Generator::Indiscrete) {
        let k = rng.gen_range(2..=b.max_objects.max(2));
        for j in [2, k] {
            push_unique(&mut c.bicategories, indiscrete_bicategory(j), |x| x.name().to_string());
        }
        c.xmods.push(xm_indiscrete2());
        let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        c.categories.push(FiniteGroupoid::indiscrete(&format!("I{k}"), &refs).category().clone());
        let m = rng.gen_range(2..=3);
        c.xmods.push(Arc::new(indiscrete_abelian(k, m)));
    }

    if spec.has(Generator::Conjugation) {
        // (G,G,id) has |G|^10 nerve 4-simplices, so only |G| ≤ 3 fits
        for n in [2, 3] {
            c.xmods.push(xm_cyclic_conjugation(n));
        }
        let n = *[4usize, 6].choose(&mut rng).expect("non-empty");
        c.cospans.push(conjugation_quotient(n, 2));
        c.categories.push(FiniteGroupoid::from_group("Z3", &FiniteGroup::cyclic(3)).category().clone());
    }

    if spec.has(Generator::Monoidal) {
        for m in [m_omega(), m_max(), m_min(), truncated_nat(2)] {
            c.bicategories.push(m.delooping());
            c.monoidal.push(m);
        }
        c.bicategories.push(beta(&xm_zero_boundary())?.bicategory().clone());
        c.xmods.extend([xm_zero_boundary(), xm_mod2()]);
        let th = m_omega_theta();
        let idw = MonoidalFunctor::identity(m_omega());
        c.monoidal_pairs.extend([
            ("Mw:theta,theta".to_string(), th.clone(), th.clone()),
            ("Mw:theta,id".to_string(), th.clone(), idw),
            ("Mw:theta,unit".to_string(), th.clone(), unit_functor(m_omega())?),
            ("Mmax:id,unit".to_string(), MonoidalFunctor::identity(m_max()), unit_functor(m_max())?),
        ]);
        let lax = th.sigma(Direction::Lax)?;
        let b_om = lax.source.clone();
        let id = LaxMorphism::identity(b_om.clone(), Direction::Lax);
        c.composable.push((lax.clone(), lax.clone()));
        c.composable.push((id.clone(), lax.clone()));
        c.composable.push((lax.clone(), id));
    }

    if spec.has(Generator::Examples) {
        for cs in xmod_cospans() {
            c.cospans.push(cs);
        }
    }

    // comma pairs: every monoidal pair whose comma stays small, and the
    // identity pair on each small bicategory
    for (name, f, g) in &c.monoidal_pairs {
        if f.source.category.morphism_count() * g.source.category.morphism_count() <= 18 {
            c.lax_pairs.push((format!("Σ({name})"), f.sigma(Direction::Lax)?, g.sigma(Direction::Oplax)?));
        }
    }
    for bi in &c.bicategories {
        let widest = bi.objs().flat_map(|x| bi.objs().map(move |y| bi.hom1(x, y).len())).max().unwrap_or(0);
        if widest <= 3 && bi.c1_count() <= 8 {
            c.lax_pairs.push((
                format!("id({})", bi.name()),
                LaxMorphism::identity(bi.clone(), Direction::Lax),
                LaxMorphism::identity(bi.clone(), Direction::Oplax),
            ));
        }
    }

    c.enforce_bounds(b);
    Ok(c)
}

impl Corpus {
    /// Drops the structures that exceed the bounds, or whose nerve would
    /// exceed the default cell ceiling at dimension 4.
    fn enforce_bounds(&mut self, b: Bounds) {
        let bicat_ok = |x: &FiniteBicategory| {
            x.obj_count() <= b.max_objects
                && x.objs().all(|u| x.objs().all(|v| x.hom1(u, v).len() <= b.max_cells_per_hom))
                && x.hom2_keys().all(|(_, v)| v.len() <= b.max_cells_per_hom)
        };
        let xmod_ok = |x: &CrossedModule| {
            let p = x.base();
            let n = p.object_count();
            n <= b.max_objects
                && (0..n).all(|a| (0..n).all(|c| p.hom(a, c).len() <= b.max_cells_per_hom))
                && (0..n).all(|a| x.fiber(a).order() <= b.max_cells_per_hom)
                && nerve_estimate(x) <= DEFAULT_MAX_CELLS as f64
        };
        let mono_ok = |m: &MonoidalCategory| m.object_count() <= b.max_cells_per_hom;
        self.bicategories.retain(|x| bicat_ok(x));
        self.xmods.retain(|x| xmod_ok(x));
        self.monoidal.retain(|m| mono_ok(m));
        self.monoidal_pairs.retain(|(_, f, g)| mono_ok(&f.source) && mono_ok(&g.source) && mono_ok(&f.target));
        self.lax_pairs.retain(|(_, f, g)| bicat_ok(&f.source) && bicat_ok(&g.source) && bicat_ok(&f.target));
        self.cospans.retain(|(_, f, g)| xmod_ok(&f.source) && xmod_ok(&g.source) && xmod_ok(&f.target));
        self.categories.retain(|c| c.object_count() <= b.max_objects);
    }

    pub fn inject(&mut self, fault: Fault) -> Result<()> {
        match fault {
            Fault::Pentagon => {
                let b = m_omega().delooping();
                let mut bld = b.to_builder();
                let (zero, one) = (b.find_c1("0"), b.find_c1("1"));
                let (Some(zero), Some(one), Some(bad)) = (zero, one, b.find_c2("0:1")) else {
                    return Err(Error::Invalid("unexpected cell labels in ΣM_ω".into()));
                };
                bld.set_assoc(one, one, zero, bad);
                self.injected.push(Arc::new(bld.build()?.renamed(format!("{}+pentagon-fault", b.name()))));
            }
        }
        Ok(())
    }

    /// Canonical text of every structure, in corpus order; equal corpora
    /// give equal fingerprints.
    pub fn fingerprint(&self) -> String {
        let mut s = String::new();
        for b in &self.bicategories {
            s.push_str(&Document::Bicategory(b.clone()).render());
        }
        for m in &self.monoidal {
            s.push_str(&Document::Monoidal(m.clone()).render());
        }
        for x in &self.xmods {
            s.push_str(&Document::Xmod(x.clone()).render());
        }
        for (n, f, g) in &self.lax_pairs {
            s.push_str(&format!("{n}:{}:{}\n", f.name, g.name));
        }
        for (n, f, g) in &self.cospans {
            s.push_str(&format!("{n}:{}:{}\n", f.name, g.name));
        }
        s
    }

    /// One line per family, for `hofib run --list`.
    pub fn summary(&self) -> String {
        let names = |v: Vec<String>| v.join(", ");
        format!(
            "seed {}\nbicategories: {}\nmonoidal: {}\nmonoidal pairs: {}\ncomma pairs: {}\ncrossed modules: {}\ncospans: {}\n",
            self.seed,
            names(self.bicategories.iter().map(|b| b.name().to_string()).collect()),
            names(self.monoidal.iter().map(|m| m.name.clone()).collect()),
            names(self.monoidal_pairs.iter().map(|p| p.0.clone()).collect()),
            names(self.lax_pairs.iter().map(|p| p.0.clone()).collect()),
            names(self.xmods.iter().map(|x| x.name.clone()).collect()),
            names(self.cospans.iter().map(|p| p.0.clone()).collect()),
        )
    }
}
