use std::sync::Arc;

use rustc_hash::FxHashMap as Map;

use crate::algebra::{CategoryBuilder, FiniteCategory, FiniteGroup};
use crate::bicat::{BicategoryBuilder, Claims, Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use crate::error::{Error, Result};
use crate::exec;
use crate::report::{ValidationReport, Violation};
use crate::tuple_label;

/// A finite monoidal category. Tables are dense: `tensor_obj[x*n + y]` is
/// `x⊗y`, `tensor_mor[f*m + g]` is `f⊗g`, `assoc[(x*n + y)*n + z]` is
/// `a: (x⊗y)⊗z → x⊗(y⊗z)`, `lunit[x]: I⊗x → x` and `runit[x]: x⊗I → x`.
#[derive(Clone, Debug)]
pub struct MonoidalCategory {
    pub name: String,
    pub category: Arc<FiniteCategory>,
    pub tensor_obj: Vec<usize>,
    pub tensor_mor: Vec<usize>,
    pub unit: usize,
    pub assoc: Vec<usize>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
    sigma: Arc<FiniteBicategory>,
}

impl PartialEq for MonoidalCategory {
    fn eq(&self, o: &Self) -> bool {
        self.category == o.category
            && self.tensor_obj == o.tensor_obj
            && self.tensor_mor == o.tensor_mor
            && self.unit == o.unit
            && self.assoc == o.assoc
            && self.lunit == o.lunit
            && self.runit == o.runit
    }
}

impl MonoidalCategory {
    /// Assembles a monoidal category, checking table shapes and typing. The
    /// coherence axioms are checked by [`MonoidalCategory::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        category: Arc<FiniteCategory>,
        tensor_obj: Vec<usize>,
        tensor_mor: Vec<usize>,
        unit: usize,
        assoc: Vec<usize>,
        lunit: Vec<usize>,
        runit: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let c = &category;
        let (n, m) = (c.object_count(), c.morphism_count());
        let shape = |ptr: &str, len: usize, want: usize, bound: usize, v: &[usize]| -> Result<()> {
            if len != want {
                return Err(Error::schema(ptr, format!("expected {want} entries, found {len}")));
            }
            if v.iter().any(|&x| x >= bound) {
                return Err(Error::schema(ptr, "dangling id"));
            }
            Ok(())
        };
        shape("/tensor_obj", tensor_obj.len(), n * n, n, &tensor_obj)?;
        shape("/tensor_mor", tensor_mor.len(), m * m, m, &tensor_mor)?;
        shape("/assoc", assoc.len(), n * n * n, m, &assoc)?;
        shape("/lunit", lunit.len(), n, m, &lunit)?;
        shape("/runit", runit.len(), n, m, &runit)?;
        if unit >= n {
            return Err(Error::schema("/unit", "dangling unit object"));
        }
        let t = |x: usize, y: usize| tensor_obj[x * n + y];
        for f in 0..m {
            for g in 0..m {
                let fg = tensor_mor[f * m + g];
                if c.src(fg) != t(c.src(f), c.src(g)) || c.dst(fg) != t(c.dst(f), c.dst(g)) {
                    return Err(Error::schema("/tensor_mor", format!("`{}⊗{}` is ill-typed", c.label(f), c.label(g))));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = assoc[(x * n + y) * n + z];
                    if c.src(a) != t(t(x, y), z) || c.dst(a) != t(x, t(y, z)) {
                        return Err(Error::schema("/assoc", format!("associator at ({},{},{}) is ill-typed", c.object_label(x), c.object_label(y), c.object_label(z))));
                    }
                }
            }
            if c.src(lunit[x]) != t(unit, x) || c.dst(lunit[x]) != x {
                return Err(Error::schema("/lunit", format!("left unitor at `{}` is ill-typed", c.object_label(x))));
            }
            if c.src(runit[x]) != t(x, unit) || c.dst(runit[x]) != x {
                return Err(Error::schema("/runit", format!("right unitor at `{}` is ill-typed", c.object_label(x))));
            }
        }
        let mut mc = MonoidalCategory {
            name,
            category,
            tensor_obj,
            tensor_mor,
            unit,
            assoc,
            lunit,
            runit,
            sigma: crate::bicat::terminal_bicategory(),
        };
        mc.sigma = Arc::new(mc.build_delooping()?);
        Ok(mc)
    }

    pub fn object_count(&self) -> usize {
        self.category.object_count()
    }

    pub fn t(&self, x: usize, y: usize) -> usize {
        self.tensor_obj[x * self.object_count() + y]
    }

    pub fn tm(&self, f: usize, g: usize) -> usize {
        self.tensor_mor[f * self.category.morphism_count() + g]
    }

    pub fn a(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.object_count();
        self.assoc[(x * n + y) * n + z]
    }

    pub fn l(&self, x: usize) -> usize {
        self.lunit[x]
    }

    pub fn r(&self, x: usize) -> usize {
        self.runit[x]
    }

    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.category.comp(g, f)
    }

    pub fn id(&self, x: usize) -> usize {
        self.category.id(x)
    }

    pub fn inv(&self, f: usize) -> Result<usize> {
        self.category.inverse_of(f).ok_or_else(|| Error::NotInvertible(self.category.label(f).into()))
    }

    /// Composite in diagrammatic order.
    pub fn chain(&self, fs: &[usize]) -> usize {
        fs[1..].iter().fold(fs[0], |acc, &f| self.comp(f, acc))
    }

    /// The discrete monoidal category of a group (or of a monoid given by a
    /// table), strict, with identity constraints.
    pub fn discrete_from_group(name: &str, g: &FiniteGroup) -> Self {
        Self::discrete_monoid(name, g.labels().to_vec(), g.table().to_vec(), g.identity()).unwrap()
    }

    pub fn discrete_monoid(name: &str, labels: Vec<String>, table: Vec<usize>, unit: usize) -> Result<Self> {
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let cat = Arc::new(FiniteCategory::discrete(name, &refs));
        let n = labels.len();
        // in a discrete category morphism i is the identity of object i
        let tensor_mor = table.clone();
        let mut assoc = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = table[table[x * n + y] * n + z];
                    let r = table[x * n + table[y * n + z]];
                    if l != r {
                        return Err(Error::Invalid(format!("{name}: monoid table is not associative")));
                    }
                    assoc.push(l);
                }
            }
        }
        let lunit = (0..n).map(|x| table[unit * n + x]).collect();
        let runit = (0..n).map(|x| table[x * n + unit]).collect();
        Self::new(name, cat, table, tensor_mor, unit, assoc, lunit, runit)
    }

    /// `ΣM`: one object `*`, 1-cells the objects of `M`, 2-cells its
    /// morphisms, `g∘f = g⊗f`, constraints those of `M`.
    pub fn delooping(&self) -> Arc<FiniteBicategory> {
        self.sigma.clone()
    }

    fn build_delooping(&self) -> Result<FiniteBicategory> {
        let c = &self.category;
        let mut b = BicategoryBuilder::new(format!("Σ{}", self.name));
        let star = b.object("*");
        for x in 0..c.object_count() {
            b.cell1(c.object_label(x), star, star);
        }
        for m in c.morphisms() {
            b.cell2(m.label.clone(), C1::from(m.src), C1::from(m.dst));
        }
        b.set_id1(star, C1::from(self.unit));
        let n = c.object_count();
        for x in 0..n {
            b.set_id2(C1::from(x), C2::from(c.id(x)));
            b.set_lunit(C1::from(x), C2::from(self.l(x)));
            b.set_runit(C1::from(x), C2::from(self.r(x)));
            for y in 0..n {
                b.set_hcomp1(C1::from(x), C1::from(y), C1::from(self.t(x, y)));
                for z in 0..n {
                    b.set_assoc(C1::from(x), C1::from(y), C1::from(z), C2::from(self.a(x, y, z)));
                }
            }
        }
        for (&(g, f), &h) in c.composition_table() {
            b.set_vcomp(C2::from(g), C2::from(f), C2::from(h));
        }
        let m = c.morphism_count();
        for f in 0..m {
            for g in 0..m {
                b.set_hcomp2(C2::from(f), C2::from(g), C2::from(self.tm(f, g)));
            }
        }
        b.build()
    }

    /// Monoidal category axioms, checked directly on the tables.
    pub fn validate(&self) -> ValidationReport {
        let mut v: Vec<Violation> = self.category.violations();
        if v.is_empty() {
            v.extend(self.axiom_violations());
        }
        ValidationReport::new(self.name.clone(), v)
    }

    fn axiom_violations(&self) -> Vec<Violation> {
        let c = &*self.category;
        let (n, m) = (c.object_count(), c.morphism_count());
        let lab = |f: usize| c.label(f).to_string();
        let ol = |x: usize| c.object_label(x);
        let mut out = exec::flat_map_range(m, |f| {
            let mut out = Vec::new();
            for g in 0..m {
                // bifunctoriality of ⊗
                for &f2 in c.out(c.dst(f)) {
                    for &g2 in c.out(c.dst(g)) {
                        let l = self.tm(c.comp(f2, f), c.comp(g2, g));
                        let r = c.comp(self.tm(f2, g2), self.tm(f, g));
                        if l != r {
                            out.push(Violation::axiom("tensor-functoriality", tuple_label(&[c.label(f2), c.label(f), c.label(g2), c.label(g)]), lab(l), lab(r)));
                        }
                    }
                }
            }
            // naturality of a, l, r in each variable
            let (x, x2) = (c.src(f), c.dst(f));
            for y in 0..n {
                for z in 0..n {
                    let (iy, iz) = (c.id(y), c.id(z));
                    let checks = [
                        (self.a(x2, y, z), self.a(x, y, z), self.tm(self.tm(f, iy), iz), self.tm(f, self.tm(iy, iz)), [ol(x2), ol(y), ol(z)]),
                        (self.a(y, x2, z), self.a(y, x, z), self.tm(self.tm(iy, f), iz), self.tm(iy, self.tm(f, iz)), [ol(y), ol(x2), ol(z)]),
                        (self.a(y, z, x2), self.a(y, z, x), self.tm(self.tm(iy, iz), f), self.tm(iy, self.tm(iz, f)), [ol(y), ol(z), ol(x2)]),
                    ];
                    for (a2, a1, before, after, inst) in checks {
                        let l = c.comp(a2, before);
                        let r = c.comp(after, a1);
                        if l != r {
                            out.push(Violation::axiom("assoc-naturality", format!("{}@{}", tuple_label(&inst), c.label(f)), lab(l), lab(r)));
                        }
                    }
                }
            }
            let iu = c.id(self.unit);
            let l = c.comp(self.l(x2), self.tm(iu, f));
            let r = c.comp(f, self.l(x));
            if l != r {
                out.push(Violation::axiom("lunit-naturality", lab(f), lab(l), lab(r)));
            }
            let l = c.comp(self.r(x2), self.tm(f, iu));
            let r = c.comp(f, self.r(x));
            if l != r {
                out.push(Violation::axiom("runit-naturality", lab(f), lab(l), lab(r)));
            }
            out
        });
        for x in 0..n {
            if c.inverse_of(self.l(x)).is_none() {
                out.push(Violation::axiom("lunit-invertible", ol(x), lab(self.l(x)), "no inverse"));
            }
            if c.inverse_of(self.r(x)).is_none() {
                out.push(Violation::axiom("runit-invertible", ol(x), lab(self.r(x)), "no inverse"));
            }
            for y in 0..n {
                let l = self.tm(c.id(x), c.id(y));
                if l != c.id(self.t(x, y)) {
                    out.push(Violation::axiom("tensor-identity", tuple_label(&[ol(x), ol(y)]), lab(l), lab(c.id(self.t(x, y)))));
                }
                // triangle: (1_x⊗l_y)∘a_{x,I,y} = r_x⊗1_y
                let l = c.comp(self.tm(c.id(x), self.l(y)), self.a(x, self.unit, y));
                let r = self.tm(self.r(x), c.id(y));
                if l != r {
                    out.push(Violation::axiom("triangle", tuple_label(&[ol(x), ol(y)]), lab(l), lab(r)));
                }
                for z in 0..n {
                    let a = self.a(x, y, z);
                    if c.inverse_of(a).is_none() {
                        out.push(Violation::axiom("assoc-invertible", tuple_label(&[ol(x), ol(y), ol(z)]), lab(a), "no inverse"));
                    }
                    for w in 0..n {
                        // a_{w,x,y⊗z}∘a_{w⊗x,y,z} = (1_w⊗a_{x,y,z})∘a_{w,x⊗y,z}∘(a_{w,x,y}⊗1_z)
                        let l = c.comp(self.a(w, x, self.t(y, z)), self.a(self.t(w, x), y, z));
                        let r = c.comp(
                            self.tm(c.id(w), self.a(x, y, z)),
                            c.comp(self.a(w, self.t(x, y), z), self.tm(self.a(w, x, y), c.id(z))),
                        );
                        if l != r {
                            out.push(Violation::axiom("pentagon", tuple_label(&[ol(w), ol(x), ol(y), ol(z)]), lab(l), lab(r)));
                        }
                    }
                }
            }
        }
        out
    }
}

/// A monoidal functor `F: M → M′` with structure maps
/// `comp[x*n + y]: Fx⊗Fy → F(x⊗y)` and `unit: I′ → FI`.
#[derive(Clone, Debug)]
pub struct MonoidalFunctor {
    pub name: String,
    pub source: Arc<MonoidalCategory>,
    pub target: Arc<MonoidalCategory>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
    pub comp: Vec<usize>,
    pub unit: usize,
}

impl MonoidalFunctor {
    pub fn identity(m: Arc<MonoidalCategory>) -> Self {
        let n = m.object_count();
        let comp = (0..n * n).map(|i| m.id(m.t(i / n, i % n))).collect();
        MonoidalFunctor {
            name: format!("1_{}", m.name),
            obj_map: (0..n).collect(),
            mor_map: (0..m.category.morphism_count()).collect(),
            comp,
            unit: m.id(m.unit),
            source: m.clone(),
            target: m,
        }
    }

    /// A strict monoidal functor between discrete monoidal categories given
    /// by a map on objects (for example a group homomorphism).
    pub fn discrete(name: &str, source: Arc<MonoidalCategory>, target: Arc<MonoidalCategory>, obj_map: Vec<usize>) -> Result<Self> {
        let n = source.object_count();
        let mut comp = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let fxy = obj_map[source.t(x, y)];
                if target.t(obj_map[x], obj_map[y]) != fxy {
                    return Err(Error::Invalid(format!("{name}: not a homomorphism")));
                }
                comp.push(target.id(fxy));
            }
        }
        if obj_map[source.unit] != target.unit {
            return Err(Error::Invalid(format!("{name}: unit not preserved")));
        }
        let mor_map = (0..source.category.morphism_count())
            .map(|f| target.id(obj_map[source.category.src(f)]))
            .collect();
        Ok(MonoidalFunctor { name: name.into(), unit: target.id(target.unit), source, target, obj_map, mor_map, comp })
    }

    /// `ΣF` as a lax morphism of deloopings. Monoidal functors here are
    /// strong, so the result is pseudo and can be turned oplax by inverting
    /// its structure cells.
    pub fn sigma(&self, direction: Direction) -> Result<LaxMorphism> {
        let (s, t) = (self.source.delooping(), self.target.delooping());
        let n = self.source.object_count();
        let mut comp = Map::default();
        for x in 0..n {
            for y in 0..n {
                comp.insert((C1::from(x), C1::from(y)), C2::from(self.comp[x * n + y]));
            }
        }
        let lax = LaxMorphism {
            name: format!("Σ{}", self.name),
            direction: Direction::Lax,
            source: s,
            target: t,
            map0: vec![Obj(0)],
            map1: self.obj_map.iter().map(|&x| C1::from(x)).collect(),
            map2: self.mor_map.iter().map(|&f| C2::from(f)).collect(),
            comp,
            unit: vec![C2::from(self.unit)],
            claims: Claims { normal: false, pseudo: true, strict: false },
        };
        lax.with_direction(direction)
    }

    pub fn validate(&self) -> ValidationReport {
        match self.sigma(Direction::Lax) {
            Ok(l) => {
                let mut r = l.validate();
                r.subject = self.name.clone();
                r
            }
            Err(e) => ValidationReport::from_error(self.name.clone(), &e),
        }
    }
}

/// Builds a monoidal category whose morphisms are all automorphisms,
/// labelled `x:α`, from an object monoid and an abelian coefficient group
/// acting trivially, with associator given by `omega` (a normalized
/// 3-cocycle). Used for the non-strict test instances.
pub(crate) fn cocycle_monoidal(
    name: &str,
    objects: &FiniteGroup,
    coeff: &FiniteGroup,
    omega: impl Fn(usize, usize, usize) -> usize,
) -> Result<MonoidalCategory> {
    let (n, k) = (objects.order(), coeff.order());
    let mut cb = CategoryBuilder::new(name);
    for x in objects.elements() {
        cb.object(objects.label(x));
    }
    for x in objects.elements() {
        for a in coeff.elements() {
            cb.morphism(format!("{}:{}", objects.label(x), coeff.label(a)), x, x);
        }
    }
    let mor = |x: usize, a: usize| x * k + a;
    for x in objects.elements() {
        cb.identity(x, mor(x, coeff.identity()));
        for a in coeff.elements() {
            for b in coeff.elements() {
                cb.compose(mor(x, b), mor(x, a), mor(x, coeff.mul(b, a)));
            }
        }
    }
    let cat = Arc::new(cb.build()?);
    let m = n * k;
    let mut tensor_mor = vec![0; m * m];
    for f in 0..m {
        for g in 0..m {
            let (x, a) = (f / k, f % k);
            let (y, b) = (g / k, g % k);
            tensor_mor[f * m + g] = mor(objects.mul(x, y), coeff.mul(a, b));
        }
    }
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc.push(mor(objects.mul(objects.mul(x, y), z), omega(x, y, z)));
            }
        }
    }
    let e = coeff.identity();
    let lunit = (0..n).map(|x| mor(x, e)).collect();
    let runit = (0..n).map(|x| mor(x, e)).collect();
    MonoidalCategory::new(
        name,
        cat,
        objects.table().to_vec(),
        tensor_mor,
        objects.identity(),
        assoc,
        lunit,
        runit,
    )
}
