//! The JSON interchange formats.
//!
//! Every document carries a `schema` field naming its format and version.
//! Cells are referred to by label, never by position, and the saved form is
//! canonical: keys sorted, arrays of ids and table rows sorted. Loading
//! therefore accepts any order, and `save(load(x)) == x` whenever `x` is
//! already canonical.

use std::path::Path;
use std::sync::Arc;

use hofib_core::algebra::{CategoryBuilder, FiniteCategory, FiniteGroup, FiniteGroupoid, PGroup};
use hofib_core::bicat::{BicategoryBuilder, Claims, Direction, FiniteBicategory, LaxMorphism, Obj, C1, C2};
use hofib_core::monoidal::MonoidalCategory;
use hofib_core::nerve::TruncatedSimplicialSet;
use hofib_core::xmod::CrossedModule;
use hofib_core::{Error, Result};
use serde_json::{json, Value};

use crate::json::{sorted_rows, sorted_strings, string_map, to_canonical_string, Labels, Node};
use crate::report::Report;

pub const GROUPOID: &str = "groupoid.v1";
pub const BICATEGORY: &str = "bicategory.v1";
pub const XMOD: &str = "xmod.v1";
pub const MONOIDAL: &str = "monoidal.v1";
pub const SSET: &str = "sset.v1";
pub const REPORT: &str = "report.v1";
/// Lax and oplax functors, needed by the `comma` and `fibre` commands.
pub const LAX: &str = "lax.v1";

pub const SCHEMAS: [&str; 7] = [GROUPOID, BICATEGORY, XMOD, MONOIDAL, SSET, REPORT, LAX];

#[derive(Clone, Debug)]
pub enum Document {
    Groupoid(Arc<FiniteGroupoid>),
    Bicategory(Arc<FiniteBicategory>),
    Xmod(Arc<CrossedModule>),
    Monoidal(Arc<MonoidalCategory>),
    Sset(TruncatedSimplicialSet),
    Lax(LaxMorphism),
    Report(Report),
}

impl Document {
    pub fn schema(&self) -> &'static str {
        match self {
            Document::Groupoid(_) => GROUPOID,
            Document::Bicategory(_) => BICATEGORY,
            Document::Xmod(_) => XMOD,
            Document::Monoidal(_) => MONOIDAL,
            Document::Sset(_) => SSET,
            Document::Lax(_) => LAX,
            Document::Report(_) => REPORT,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Groupoid(g) => tagged(GROUPOID, g.name(), category_body(g.category())),
            Document::Bicategory(b) => tagged(BICATEGORY, b.name(), bicategory_body(b)),
            Document::Xmod(x) => tagged(XMOD, &x.name, xmod_body(x)),
            Document::Monoidal(m) => tagged(MONOIDAL, &m.name, monoidal_body(m)),
            Document::Sset(s) => tagged(SSET, &s.name, sset_body(s)),
            Document::Lax(f) => tagged(LAX, &f.name, lax_body(f)),
            Document::Report(r) => r.to_value(),
        }
    }

    /// The canonical text of the document.
    pub fn render(&self) -> String {
        to_canonical_string(self.to_value())
    }
}

fn tagged(schema: &str, name: &str, mut body: Value) -> Value {
    let m = body.as_object_mut().expect("bodies are objects");
    m.insert("schema".into(), json!(schema));
    m.insert("name".into(), json!(name));
    body
}

/// Checks the `schema` field against the known formats. A known kind with
/// another version is a version error; anything else a schema error.
fn schema_of(root: &Node<'_>) -> Result<&'static str> {
    let node = root.field("schema")?;
    let found = node.str()?;
    if let Some(s) = SCHEMAS.iter().find(|s| **s == found) {
        return Ok(s);
    }
    let kind = found.split('.').next().unwrap_or(found);
    match SCHEMAS.iter().find(|s| s.split('.').next() == Some(kind)) {
        Some(expected) => Err(Error::SchemaVersion { found: found.to_string(), expected: expected.to_string() }),
        None => Err(node.err(format!("unknown schema `{found}`"))),
    }
}

pub fn from_value(v: &Value) -> Result<Document> {
    let root = Node::root(v);
    let schema = schema_of(&root)?;
    let name = root.field("name")?.str()?;
    Ok(match schema {
        GROUPOID => Document::Groupoid(Arc::new(parse_groupoid(&root, name)?)),
        BICATEGORY => Document::Bicategory(Arc::new(parse_bicategory(&root, name)?)),
        XMOD => Document::Xmod(Arc::new(parse_xmod(&root, name)?)),
        MONOIDAL => Document::Monoidal(Arc::new(parse_monoidal(&root, name)?)),
        SSET => Document::Sset(parse_sset(&root, name)?),
        LAX => Document::Lax(parse_lax(&root, name)?),
        REPORT => Document::Report(Report::parse(&root)?),
        _ => unreachable!("schema_of only returns known schemas"),
    })
}

pub fn parse(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("/", format!("invalid JSON: {e}")))?;
    from_value(&v)
}

pub fn load(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn save(path: impl AsRef<Path>, doc: &Document) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, doc.render()).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn wrong_kind(doc: &Document, expected: &str) -> Error {
    Error::SchemaVersion { found: doc.schema().to_string(), expected: expected.to_string() }
}

pub fn load_bicategory(path: impl AsRef<Path>) -> Result<Arc<FiniteBicategory>> {
    match load(path)? {
        Document::Bicategory(b) => Ok(b),
        d => Err(wrong_kind(&d, BICATEGORY)),
    }
}

pub fn load_lax(path: impl AsRef<Path>) -> Result<LaxMorphism> {
    match load(path)? {
        Document::Lax(f) => Ok(f),
        d => Err(wrong_kind(&d, LAX)),
    }
}

pub fn load_xmod(path: impl AsRef<Path>) -> Result<Arc<CrossedModule>> {
    match load(path)? {
        Document::Xmod(x) => Ok(x),
        d => Err(wrong_kind(&d, XMOD)),
    }
}

pub fn load_monoidal(path: impl AsRef<Path>) -> Result<Arc<MonoidalCategory>> {
    match load(path)? {
        Document::Monoidal(m) => Ok(m),
        d => Err(wrong_kind(&d, MONOIDAL)),
    }
}

/// Prefixes the pointer of a schema error raised by a core builder, which
/// only knows pointers relative to the structure it was building.
fn nested(at: &Node<'_>, e: Error) -> Error {
    match e {
        Error::Schema { pointer, message } if at.pointer() != "/" => {
            let p = if pointer == "/" { String::new() } else { pointer };
            Error::Schema { pointer: format!("{}{p}", at.pointer()), message }
        }
        other => other,
    }
}

// ---------------------------------------------------------------- categories

fn category_body(c: &FiniteCategory) -> Value {
    let mor = |f: usize| c.label(f).to_string();
    let morphisms: Vec<Value> = {
        let mut ms: Vec<&hofib_core::algebra::Morphism> = c.morphisms().iter().collect();
        ms.sort_by(|a, b| a.label.cmp(&b.label));
        ms.iter()
            .map(|m| json!({"id": m.label, "src": c.object_label(m.src), "dst": c.object_label(m.dst)}))
            .collect()
    };
    let compose = c.composition_table().iter().map(|(&(g, f), &h)| vec![mor(g), mor(f), mor(h)]).collect();
    json!({
        "objects": sorted_strings(c.objects().to_vec()),
        "morphisms": morphisms,
        "identity": string_map((0..c.object_count()).map(|o| (c.object_label(o).to_string(), mor(c.id(o))))),
        "compose": sorted_rows(compose),
    })
}

fn parse_category(n: &Node<'_>, name: &str) -> Result<FiniteCategory> {
    let objects = n.field("objects")?.strings()?;
    let objs = Labels::new("object", &objects)?;
    let mut cb = CategoryBuilder::new(name);
    for (l, _) in &objects {
        cb.object(*l);
    }
    let morphisms = n.field("morphisms")?.items()?;
    let mut ids = Vec::with_capacity(morphisms.len());
    for m in &morphisms {
        let id = m.field("id")?;
        let (s, d) = (m.field("src")?, m.field("dst")?);
        let (src, dst) = (objs.get(s.str()?, &s)?, objs.get(d.str()?, &d)?);
        cb.morphism(id.str()?, src, dst);
        ids.push((id.str()?, id));
    }
    let mors = Labels::new("morphism", &ids)?;
    for (o, x) in n.field("identity")?.entries()? {
        cb.identity(objs.get(o, &x)?, mors.get(x.str()?, &x)?);
    }
    let mut seen = std::collections::HashSet::new();
    for row in n.field("compose")?.items()? {
        let r = row.row(3)?;
        let (g, f) = (mors.get(r[0].0, &r[0].1)?, mors.get(r[1].0, &r[1].1)?);
        if !seen.insert((g, f)) {
            return Err(row.err(format!("duplicate composite ({},{})", r[0].0, r[1].0)));
        }
        cb.compose(g, f, mors.get(r[2].0, &r[2].1)?);
    }
    cb.build().map_err(|e| nested(n, e))
}

fn parse_groupoid(n: &Node<'_>, name: &str) -> Result<FiniteGroupoid> {
    let c = parse_category(n, name)?;
    FiniteGroupoid::from_category(c).map_err(|e| n.err(e.to_string()))
}

// ---------------------------------------------------------------- bicategories

fn bicategory_body(b: &FiniteBicategory) -> Value {
    let l1 = |f: C1| b.c1_label(f).to_string();
    let l2 = |a: C2| b.c2_label(a).to_string();
    let mut cells1: Vec<Value> = b
        .c1s()
        .map(|f| json!({"id": l1(f), "src": b.obj_label(b.src1(f)), "dst": b.obj_label(b.dst1(f))}))
        .collect();
    cells1.sort_by(|x, y| x["id"].as_str().cmp(&y["id"].as_str()));
    let mut cells2: Vec<Value> = b.c2s().map(|a| json!({"id": l2(a), "src": l1(b.src2(a)), "dst": l1(b.dst2(a))})).collect();
    cells2.sort_by(|x, y| x["id"].as_str().cmp(&y["id"].as_str()));
    let vcomp = b.vcomp_table().iter().map(|(&(x, y), &r)| vec![l2(x), l2(y), l2(r)]).collect();
    let hcomp1 = b.hcomp1_table().iter().map(|(&(g, f), &r)| vec![l1(g), l1(f), l1(r)]).collect();
    let hcomp2 = b.hcomp2_table().iter().map(|(&(x, y), &r)| vec![l2(x), l2(y), l2(r)]).collect();
    let assoc = b.assoc_table().iter().map(|(&(h, g, f), &a)| vec![l1(h), l1(g), l1(f), l2(a)]).collect();
    json!({
        "objects": sorted_strings(b.objects().to_vec()),
        "cells1": cells1,
        "cells2": cells2,
        "id1": string_map(b.objs().map(|o| (b.obj_label(o).to_string(), l1(b.id1(o))))),
        "id2": string_map(b.c1s().map(|f| (l1(f), l2(b.id2(f))))),
        "vcomp": sorted_rows(vcomp),
        "hcomp1": sorted_rows(hcomp1),
        "hcomp2": sorted_rows(hcomp2),
        "assoc": sorted_rows(assoc),
        "lunit": string_map(b.c1s().map(|f| (l1(f), l2(b.lunit(f))))),
        "runit": string_map(b.c1s().map(|f| (l1(f), l2(b.runit(f))))),
    })
}

/// Reads the cell lists of a bicategory body, returning the builder with
/// all cells declared plus the label tables.
struct BicatCells<'s> {
    builder: BicategoryBuilder,
    objs: Labels<'s>,
    c1: Labels<'s>,
    c2: Labels<'s>,
}

fn bicategory_cells<'s>(n: &Node<'s>, name: &str) -> Result<BicatCells<'s>> {
    let objects = n.field("objects")?.strings()?;
    let objs = Labels::new("object", &objects)?;
    let mut bb = BicategoryBuilder::new(name);
    for (l, _) in &objects {
        bb.object(*l);
    }
    let mut ids1 = Vec::new();
    for c in n.field("cells1")?.items()? {
        let id = c.field("id")?;
        let (s, d) = (c.field("src")?, c.field("dst")?);
        bb.cell1(id.str()?, Obj::from(objs.get(s.str()?, &s)?), Obj::from(objs.get(d.str()?, &d)?));
        ids1.push((id.str()?, id));
    }
    let c1 = Labels::new("1-cell", &ids1)?;
    let mut ids2 = Vec::new();
    for c in n.field("cells2")?.items()? {
        let id = c.field("id")?;
        let (s, d) = (c.field("src")?, c.field("dst")?);
        bb.cell2(id.str()?, C1::from(c1.get(s.str()?, &s)?), C1::from(c1.get(d.str()?, &d)?));
        ids2.push((id.str()?, id));
    }
    let c2 = Labels::new("2-cell", &ids2)?;
    Ok(BicatCells { builder: bb, objs, c1, c2 })
}

fn parse_bicategory(n: &Node<'_>, name: &str) -> Result<FiniteBicategory> {
    let BicatCells { builder: mut bb, objs, c1, c2 } = bicategory_cells(n, name)?;
    let one = |x: &(&str, Node<'_>)| c1.get(x.0, &x.1).map(C1::from);
    let two = |x: &(&str, Node<'_>)| c2.get(x.0, &x.1).map(C2::from);
    for (o, x) in n.field("id1")?.entries()? {
        bb.set_id1(Obj::from(objs.get(o, &x)?), C1::from(c1.get(x.str()?, &x)?));
    }
    for (f, x) in n.field("id2")?.entries()? {
        bb.set_id2(C1::from(c1.get(f, &x)?), C2::from(c2.get(x.str()?, &x)?));
    }
    let mut seen = std::collections::HashSet::new();
    for row in n.field("vcomp")?.items()? {
        let r = row.row(3)?;
        let (x, y) = (two(&r[0])?, two(&r[1])?);
        if !seen.insert(("v", x.idx(), y.idx(), 0)) {
            return Err(row.err(format!("duplicate composite ({},{})", r[0].0, r[1].0)));
        }
        bb.set_vcomp(x, y, two(&r[2])?);
    }
    for row in n.field("hcomp1")?.items()? {
        let r = row.row(3)?;
        let (g, f) = (one(&r[0])?, one(&r[1])?);
        if !seen.insert(("h1", g.idx(), f.idx(), 0)) {
            return Err(row.err(format!("duplicate composite ({},{})", r[0].0, r[1].0)));
        }
        bb.set_hcomp1(g, f, one(&r[2])?);
    }
    for row in n.field("hcomp2")?.items()? {
        let r = row.row(3)?;
        let (x, y) = (two(&r[0])?, two(&r[1])?);
        if !seen.insert(("h2", x.idx(), y.idx(), 0)) {
            return Err(row.err(format!("duplicate composite ({},{})", r[0].0, r[1].0)));
        }
        bb.set_hcomp2(x, y, two(&r[2])?);
    }
    for row in n.field("assoc")?.items()? {
        let r = row.row(4)?;
        let (h, g, f) = (one(&r[0])?, one(&r[1])?, one(&r[2])?);
        if !seen.insert(("a", h.idx(), g.idx(), f.idx())) {
            return Err(row.err(format!("duplicate associator ({},{},{})", r[0].0, r[1].0, r[2].0)));
        }
        bb.set_assoc(h, g, f, two(&r[3])?);
    }
    for (f, x) in n.field("lunit")?.entries()? {
        bb.set_lunit(C1::from(c1.get(f, &x)?), C2::from(c2.get(x.str()?, &x)?));
    }
    for (f, x) in n.field("runit")?.entries()? {
        bb.set_runit(C1::from(c1.get(f, &x)?), C2::from(c2.get(x.str()?, &x)?));
    }
    bb.build().map_err(|e| nested(n, e))
}

// ---------------------------------------------------------------- lax functors

fn lax_body(f: &LaxMorphism) -> Value {
    let (s, t) = (&f.source, &f.target);
    let comp = f
        .comp
        .iter()
        .map(|(&(g, h), &c)| vec![s.c1_label(g).to_string(), s.c1_label(h).to_string(), t.c2_label(c).to_string()])
        .collect();
    json!({
        "direction": f.direction.as_str(),
        "claims": {"normal": f.claims.normal, "pseudo": f.claims.pseudo, "strict": f.claims.strict},
        "source": tagged(BICATEGORY, s.name(), bicategory_body(s)),
        "target": tagged(BICATEGORY, t.name(), bicategory_body(t)),
        "map0": string_map(s.objs().map(|o| (s.obj_label(o).to_string(), t.obj_label(f.ob(o)).to_string()))),
        "map1": string_map(s.c1s().map(|u| (s.c1_label(u).to_string(), t.c1_label(f.c1(u)).to_string()))),
        "map2": string_map(s.c2s().map(|a| (s.c2_label(a).to_string(), t.c2_label(f.c2(a)).to_string()))),
        "comp": sorted_rows(comp),
        "unit": string_map(s.objs().map(|o| (s.obj_label(o).to_string(), t.c2_label(f.unit_cell(o)).to_string()))),
    })
}

fn parse_lax(n: &Node<'_>, name: &str) -> Result<LaxMorphism> {
    let dir = n.field("direction")?;
    let direction = match dir.str()? {
        "lax" => Direction::Lax,
        "oplax" => Direction::Oplax,
        other => return Err(dir.err(format!("unknown direction `{other}`"))),
    };
    let claims = match n.opt_field("claims")? {
        Some(c) => Claims { normal: c.field("normal")?.bool()?, pseudo: c.field("pseudo")?.bool()?, strict: c.field("strict")?.bool()? },
        None => Claims::default(),
    };
    let part = |key: &str| -> Result<Arc<FiniteBicategory>> {
        let node = n.field(key)?;
        if schema_of(&node)? != BICATEGORY {
            return Err(node.field("schema")?.err(format!("expected `{BICATEGORY}`")));
        }
        Ok(Arc::new(parse_bicategory(&node, node.field("name")?.str()?)?))
    };
    let (s, t) = (part("source")?, part("target")?);
    let lookup = |node: &Node<'_>, what: &str, total: usize, find: &dyn Fn(&str) -> Option<usize>, tfind: &dyn Fn(&str) -> Option<usize>| -> Result<Vec<usize>> {
        let mut out = vec![None; total];
        for (k, v) in node.entries()? {
            let i = find(k).ok_or_else(|| v.err(format!("unknown source {what} `{k}`")))?;
            let vl = v.str()?;
            out[i] = Some(tfind(vl).ok_or_else(|| v.err(format!("unknown target {what} `{vl}`")))?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| node.err(format!("missing image of {what} #{i}"))))
            .collect()
    };
    let so = |l: &str| s.find_obj(l).map(|o| o.idx());
    let s1 = |l: &str| s.find_c1(l).map(|o| o.idx());
    let s2 = |l: &str| s.find_c2(l).map(|o| o.idx());
    let to = |l: &str| t.find_obj(l).map(|o| o.idx());
    let t1 = |l: &str| t.find_c1(l).map(|o| o.idx());
    let t2 = |l: &str| t.find_c2(l).map(|o| o.idx());
    let map0 = lookup(&n.field("map0")?, "object", s.obj_count(), &so, &to)?;
    let map1 = lookup(&n.field("map1")?, "1-cell", s.c1_count(), &s1, &t1)?;
    let map2 = lookup(&n.field("map2")?, "2-cell", s.c2_count(), &s2, &t2)?;
    let unit = lookup(&n.field("unit")?, "object", s.obj_count(), &so, &t2)?;
    let mut f = LaxMorphism {
        name: name.to_string(),
        direction,
        source: s.clone(),
        target: t.clone(),
        map0: map0.into_iter().map(Obj::from).collect(),
        map1: map1.into_iter().map(C1::from).collect(),
        map2: map2.into_iter().map(C2::from).collect(),
        comp: Default::default(),
        unit: unit.into_iter().map(C2::from).collect(),
        claims,
    };
    let cn = n.field("comp")?;
    for row in cn.items()? {
        let r = row.row(3)?;
        let g = s.find_c1(r[0].0).ok_or_else(|| r[0].1.err(format!("unknown source 1-cell `{}`", r[0].0)))?;
        let h = s.find_c1(r[1].0).ok_or_else(|| r[1].1.err(format!("unknown source 1-cell `{}`", r[1].0)))?;
        let c = t.find_c2(r[2].0).ok_or_else(|| r[2].1.err(format!("unknown target 2-cell `{}`", r[2].0)))?;
        if s.src1(g) != s.dst1(h) {
            return Err(row.err(format!("({},{}) is not composable", r[0].0, r[1].0)));
        }
        if f.comp.insert((g, h), c).is_some() {
            return Err(row.err(format!("duplicate structure cell for ({},{})", r[0].0, r[1].0)));
        }
    }
    for h in s.c1s() {
        for &g in s.out1(s.dst1(h)) {
            if !f.comp.contains_key(&(g, h)) {
                return Err(cn.err(format!("missing structure cell ({},{})", s.c1_label(g), s.c1_label(h))));
            }
        }
    }
    Ok(f)
}

// ---------------------------------------------------------------- monoidal

fn monoidal_body(m: &MonoidalCategory) -> Value {
    let c = &m.category;
    let (n, k) = (c.object_count(), c.morphism_count());
    let ol = |x: usize| c.object_label(x).to_string();
    let ml = |f: usize| c.label(f).to_string();
    let tensor_objects = (0..n * n).map(|i| vec![ol(i / n), ol(i % n), ol(m.tensor_obj[i])]).collect();
    let tensor_morphisms = (0..k * k).map(|i| vec![ml(i / k), ml(i % k), ml(m.tensor_mor[i])]).collect();
    let assoc = (0..n * n * n).map(|i| vec![ol(i / (n * n)), ol((i / n) % n), ol(i % n), ml(m.assoc[i])]).collect();
    json!({
        "category": category_body(c),
        "unit": ol(m.unit),
        "tensor_objects": sorted_rows(tensor_objects),
        "tensor_morphisms": sorted_rows(tensor_morphisms),
        "assoc": sorted_rows(assoc),
        "lunit": string_map((0..n).map(|x| (ol(x), ml(m.lunit[x])))),
        "runit": string_map((0..n).map(|x| (ol(x), ml(m.runit[x])))),
    })
}

fn parse_monoidal(n: &Node<'_>, name: &str) -> Result<MonoidalCategory> {
    let cn = n.field("category")?;
    let c = Arc::new(parse_category(&cn, name)?);
    let (no, nm) = (c.object_count(), c.morphism_count());
    let obj = |x: &(&str, Node<'_>)| c.find_object(x.0).ok_or_else(|| x.1.err(format!("unknown object `{}`", x.0)));
    let mor = |x: &(&str, Node<'_>)| c.find_morphism(x.0).ok_or_else(|| x.1.err(format!("unknown morphism `{}`", x.0)));
    // dense tables indexed by a row-major key; every slot must be filled once
    let dense = |key: &str, arity: usize, size: usize, idx: &dyn Fn(&[(&str, Node<'_>)]) -> Result<usize>, val: &dyn Fn(&(&str, Node<'_>)) -> Result<usize>| -> Result<Vec<usize>> {
        let node = n.field(key)?;
        let mut out = vec![None; size];
        for row in node.items()? {
            let r = row.row(arity + 1)?;
            let i = idx(&r[..arity])?;
            if out[i].replace(val(&r[arity])?).is_some() {
                return Err(row.err("duplicate entry"));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| node.err(format!("missing entry #{i}"))))
            .collect()
    };
    let tensor_obj = dense("tensor_objects", 2, no * no, &|r| Ok(obj(&r[0])? * no + obj(&r[1])?), &obj)?;
    let tensor_mor = dense("tensor_morphisms", 2, nm * nm, &|r| Ok(mor(&r[0])? * nm + mor(&r[1])?), &mor)?;
    let assoc = dense("assoc", 3, no * no * no, &|r| Ok((obj(&r[0])? * no + obj(&r[1])?) * no + obj(&r[2])?), &mor)?;
    let unary = |key: &str| -> Result<Vec<usize>> {
        let node = n.field(key)?;
        let mut out = vec![None; no];
        for (x, v) in node.entries()? {
            let at = v.clone();
            out[obj(&(x, at))?] = Some(mor(&(v.str()?, v.clone()))?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| node.err(format!("missing component at `{}`", c.object_label(i)))))
            .collect()
    };
    let (lunit, runit) = (unary("lunit")?, unary("runit")?);
    let un = n.field("unit")?;
    let unit = obj(&(un.str()?, un.clone()))?;
    MonoidalCategory::new(name, c.clone(), tensor_obj, tensor_mor, unit, assoc, lunit, runit).map_err(|e| nested(n, e))
}

// ---------------------------------------------------------------- crossed modules

fn xmod_body(x: &CrossedModule) -> Value {
    let p = x.base();
    let mut fibers = serde_json::Map::new();
    let mut boundary = Vec::new();
    for a in 0..p.object_count() {
        let g = x.fiber(a);
        let table = g.elements().flat_map(|i| g.elements().map(move |j| (i, j))).map(|(i, j)| {
            vec![g.label(i).to_string(), g.label(j).to_string(), g.label(g.mul(i, j)).to_string()]
        });
        fibers.insert(
            p.object_label(a).to_string(),
            json!({"elements": sorted_strings(g.labels().to_vec()), "table": sorted_rows(table.collect())}),
        );
        for e in g.elements() {
            boundary.push(vec![p.object_label(a).to_string(), g.label(e).to_string(), p.label(x.d(a, e)).to_string()]);
        }
    }
    let mut action = Vec::new();
    for m in 0..p.morphism_count() {
        let (gs, gt) = (x.fiber(p.src(m)), x.fiber(p.dst(m)));
        for e in gs.elements() {
            action.push(vec![p.label(m).to_string(), gs.label(e).to_string(), gt.label(x.act(m, e)).to_string()]);
        }
    }
    json!({
        "base": category_body(p.category()),
        "fibers": Value::Object(fibers),
        "action": sorted_rows(action),
        "boundary": sorted_rows(boundary),
    })
}

fn parse_group(n: &Node<'_>) -> Result<FiniteGroup> {
    let elements = n.field("elements")?.strings()?;
    let labels = Labels::new("element", &elements)?;
    let k = labels.len();
    let tn = n.field("table")?;
    let mut table = vec![None; k * k];
    for row in tn.items()? {
        let r = row.row(3)?;
        let i = labels.get(r[0].0, &r[0].1)? * k + labels.get(r[1].0, &r[1].1)?;
        if table[i].replace(labels.get(r[2].0, &r[2].1)?).is_some() {
            return Err(row.err(format!("duplicate product ({},{})", r[0].0, r[1].0)));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| tn.err(format!("missing product ({},{})", elements[i / k].0, elements[i % k].0))))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_table(elements.iter().map(|(l, _)| l.to_string()).collect(), table).map_err(|e| n.err(e.to_string()))
}

fn parse_xmod(n: &Node<'_>, name: &str) -> Result<CrossedModule> {
    let bn = n.field("base")?;
    let base = Arc::new(parse_groupoid(&bn, &format!("{name}.base"))?);
    let fn_ = n.field("fibers")?;
    let mut fibers: Vec<Option<FiniteGroup>> = vec![None; base.object_count()];
    for (o, g) in fn_.entries()? {
        let a = base.find_object(o).ok_or_else(|| g.err(format!("unknown object `{o}`")))?;
        fibers[a] = Some(parse_group(&g)?);
    }
    let fibers = fibers
        .into_iter()
        .enumerate()
        .map(|(a, g)| g.ok_or_else(|| fn_.err(format!("missing fiber over `{}`", base.object_label(a)))))
        .collect::<Result<Vec<_>>>()?;
    let elem = |a: usize, x: &(&str, Node<'_>)| {
        fibers[a].find(x.0).ok_or_else(|| x.1.err(format!("`{}` is not an element of the fiber over `{}`", x.0, base.object_label(a))))
    };
    let mor = |x: &(&str, Node<'_>)| base.find_morphism(x.0).ok_or_else(|| x.1.err(format!("unknown morphism `{}`", x.0)));
    let an = n.field("action")?;
    let mut action: Vec<Vec<Option<usize>>> = (0..base.morphism_count()).map(|m| vec![None; fibers[base.src(m)].order()]).collect();
    for row in an.items()? {
        let r = row.row(3)?;
        let m = mor(&r[0])?;
        let g = elem(base.src(m), &r[1])?;
        if action[m][g].replace(elem(base.dst(m), &r[2])?).is_some() {
            return Err(row.err(format!("duplicate action of `{}` on `{}`", r[0].0, r[1].0)));
        }
    }
    let action = action
        .into_iter()
        .enumerate()
        .map(|(m, col)| {
            col.into_iter()
                .enumerate()
                .map(|(g, x)| x.ok_or_else(|| an.err(format!("missing action of `{}` on `{}`", base.label(m), fibers[base.src(m)].label(g)))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dn = n.field("boundary")?;
    let mut boundary: Vec<Vec<Option<usize>>> = fibers.iter().map(|g| vec![None; g.order()]).collect();
    for row in dn.items()? {
        let r = row.row(3)?;
        let a = base.find_object(r[0].0).ok_or_else(|| r[0].1.err(format!("unknown object `{}`", r[0].0)))?;
        let g = elem(a, &r[1])?;
        if boundary[a][g].replace(mor(&r[2])?).is_some() {
            return Err(row.err(format!("duplicate boundary of `{}`", r[1].0)));
        }
    }
    let boundary = boundary
        .into_iter()
        .enumerate()
        .map(|(a, col)| {
            col.into_iter()
                .enumerate()
                .map(|(g, x)| x.ok_or_else(|| dn.err(format!("missing boundary of `{}` over `{}`", fibers[a].label(g), base.object_label(a)))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CrossedModule::new(name, PGroup { base, fibers, action }, boundary).map_err(|e| nested(n, e))
}

// ---------------------------------------------------------------- simplicial sets

fn sset_body(s: &TruncatedSimplicialSet) -> Value {
    let top = s.dim();
    let levels: Vec<Value> = (0..=top)
        .map(|n| {
            let mut xs: Vec<(String, Value)> = (0..s.count(n))
                .map(|x| {
                    let faces: Vec<&str> = if n == 0 { Vec::new() } else { (0..=n).map(|i| s.cells[n - 1][s.face(n, i, x)].as_str()).collect() };
                    let degs: Vec<&str> = if n == top { Vec::new() } else { (0..=n).map(|i| s.cells[n + 1][s.degeneracy(n, i, x)].as_str()).collect() };
                    let id = s.cells[n][x].clone();
                    (id.clone(), json!({"id": id, "faces": faces, "degeneracies": degs}))
                })
                .collect();
            xs.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Array(xs.into_iter().map(|(_, v)| v).collect())
        })
        .collect();
    json!({"dim": top, "simplices": levels})
}

fn parse_sset(n: &Node<'_>, name: &str) -> Result<TruncatedSimplicialSet> {
    let dn = n.field("dim")?;
    let top = dn.u64()? as usize;
    let ln = n.field("simplices")?;
    let levels = ln.items()?;
    if levels.len() != top + 1 {
        return Err(ln.err(format!("expected {} levels for dimension {top}", top + 1)));
    }
    let mut cells = Vec::new();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for level in &levels {
        let xs = level.items()?;
        let ids = xs.iter().map(|x| Ok((x.field("id")?.str()?, x.field("id")?))).collect::<Result<Vec<_>>>()?;
        labels.push(Labels::new("simplex", &ids)?);
        cells.push(ids.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>());
        rows.push(xs);
    }
    let mut faces = vec![Vec::new()];
    let mut degeneracies = Vec::new();
    for k in 0..=top {
        let read = |key: &str, want: usize, into: Option<usize>| -> Result<Vec<Vec<usize>>> {
            let mut cols = vec![vec![0; rows[k].len()]; want];
            for (x, row) in rows[k].iter().enumerate() {
                let fs = row.field(key)?.strings()?;
                if fs.len() != want {
                    return Err(row.field(key)?.err(format!("expected {want} entries, found {}", fs.len())));
                }
                if let Some(level) = into {
                    for (i, (l, at)) in fs.iter().enumerate() {
                        cols[i][x] = labels[level].get(l, at)?;
                    }
                }
            }
            Ok(cols)
        };
        if k > 0 {
            faces.push(read("faces", k + 1, Some(k - 1))?);
        } else {
            read("faces", 0, None)?;
        }
        if k < top {
            degeneracies.push(read("degeneracies", k + 1, Some(k + 1))?);
        } else {
            read("degeneracies", 0, None)?;
        }
    }
    Ok(TruncatedSimplicialSet { name: name.to_string(), cells, faces, degeneracies })
}
