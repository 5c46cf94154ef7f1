use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec;
use crate::report::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category with explicit composition table. `compose(g, f)` is
/// `g∘f` and is defined exactly when `dst(f) == src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
}

#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Option<usize>>,
    compose: HashMap<(usize, usize), usize>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder { name: name.into(), ..Default::default() }
    }

    pub fn object(&mut self, label: impl Into<String>) -> usize {
        self.objects.push(label.into());
        self.identity.push(None);
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, label: impl Into<String>, src: usize, dst: usize) -> usize {
        self.morphisms.push(Morphism { label: label.into(), src, dst });
        self.morphisms.len() - 1
    }

    pub fn identity(&mut self, obj: usize, mor: usize) {
        self.identity[obj] = Some(mor);
    }

    pub fn compose(&mut self, g: usize, f: usize, gf: usize) {
        self.compose.insert((g, f), gf);
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    /// Every schema problem: dangling ids, duplicate labels, missing or
    /// ill-typed table entries.
    pub fn schema_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let no = self.objects.len();
        let nm = self.morphisms.len();
        dup_labels("/objects", self.objects.iter(), &mut out);
        dup_labels("/morphisms", self.morphisms.iter().map(|m| &m.label), &mut out);
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.src >= no || m.dst >= no {
                out.push(Violation::schema(format!("/morphisms/{i}"), format!("`{}` has a dangling endpoint", m.label)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (o, id) in self.identity.iter().enumerate() {
            match id {
                None => out.push(Violation::schema("/identity", format!("missing identity for `{}`", self.objects[o]))),
                Some(i) if *i >= nm => out.push(Violation::schema("/identity", format!("dangling identity for `{}`", self.objects[o]))),
                Some(i) if self.morphisms[*i].src != o || self.morphisms[*i].dst != o => out.push(Violation::schema(
                    "/identity",
                    format!("identity of `{}` is not an endomorphism of it", self.objects[o]),
                )),
                _ => {}
            }
        }
        for (&(g, f), &h) in &self.compose {
            if g >= nm || f >= nm || h >= nm {
                out.push(Violation::schema("/compose", "dangling morphism id"));
                continue;
            }
            let (mg, mf, mh) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[h]);
            if mf.dst != mg.src {
                out.push(Violation::schema("/compose", format!("entry for non-composable pair ({},{})", mg.label, mf.label)));
            } else if mh.src != mf.src || mh.dst != mg.dst {
                out.push(Violation::schema("/compose", format!("ill-typed composite for ({},{})", mg.label, mf.label)));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                if mg.src == mf.dst && !self.compose.contains_key(&(g, f)) {
                    out.push(Violation::schema("/compose", format!("missing composite ({},{})", mg.label, mf.label)));
                }
            }
        }
        out
    }

    pub fn build(self) -> Result<FiniteCategory> {
        if let Some(v) = self.schema_violations().into_iter().next() {
            return Err(Error::schema(v.instance, v.lhs));
        }
        let mut out = vec![Vec::new(); self.objects.len()];
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            out[m.src].push(i);
            hom.entry((m.src, m.dst)).or_default().push(i);
        }
        let obj_index = self.objects.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mor_index = self.morphisms.iter().enumerate().map(|(i, m)| (m.label.clone(), i)).collect();
        Ok(FiniteCategory {
            name: self.name,
            objects: self.objects,
            morphisms: self.morphisms,
            identity: self.identity.into_iter().map(|x| x.unwrap()).collect(),
            compose: self.compose,
            out,
            hom,
            obj_index,
            mor_index,
        })
    }
}

pub(crate) fn dup_labels<'a>(pointer: &str, labels: impl Iterator<Item = &'a String>, out: &mut Vec<Violation>) {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            out.push(Violation::schema(pointer, format!("duplicate id `{l}`")));
        }
    }
}

impl FiniteCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_label(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn label(&self, f: usize) -> &str {
        &self.morphisms[f].label
    }

    pub fn find_object(&self, label: &str) -> Option<usize> {
        self.obj_index.get(label).copied()
    }

    pub fn find_morphism(&self, label: &str) -> Option<usize> {
        self.mor_index.get(label).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn id(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src(f)] == f
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// `g∘f`; panics if the pair is not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        match self.compose.get(&(g, f)) {
            Some(&h) => h,
            None => panic!("{}: `{}` and `{}` are not composable", self.name, self.label(g), self.label(f)),
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn out(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.dst(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == self.id(a) && self.comp(f, g) == self.id(b))
    }

    pub fn builder_from(&self) -> CategoryBuilder {
        CategoryBuilder {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identity: self.identity.iter().map(|&i| Some(i)).collect(),
            compose: self.compose.clone(),
        }
    }

    /// The discrete category on the given object labels.
    pub fn discrete(name: &str, labels: &[&str]) -> Self {
        let mut b = CategoryBuilder::new(name);
        for l in labels {
            let o = b.object(*l);
            let i = b.morphism(format!("1_{l}"), o, o);
            b.identity(o, i);
            b.compose(i, i, i);
        }
        b.build().unwrap()
    }

    pub fn terminal() -> Self {
        Self::discrete("[0]", &["0"])
    }

    /// The ordinal `[p]` as the free category on the linear graph
    /// `0 → 1 → ⋯ → p`. See [`FiniteCategory::ordinal_arrow`].
    pub fn ordinal(p: usize) -> Self {
        free_category(&FiniteGraph::linear(p)).unwrap().with_name(format!("[{p}]"))
    }

    /// The unique morphism `i → j` (for `i ≤ j`) of an ordinal built by
    /// [`FiniteCategory::ordinal`].
    pub fn ordinal_arrow(&self, i: usize, j: usize) -> usize {
        let h = self.hom(i, j);
        debug_assert_eq!(h.len(), 1);
        h[0]
    }

    /// Associativity and unit failures.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.morphism_count();
        exec::flat_map_range(n, |f| {
            let mut out = Vec::new();
            let a = self.src(f);
            let b = self.dst(f);
            if self.comp(f, self.id(a)) != f || self.comp(self.id(b), f) != f {
                out.push(Violation::axiom("category-unit", format!("{}:{}", self.name, self.label(f)), self.label(f), "unit law fails"));
            }
            for &g in self.out(b) {
                let gf = self.comp(g, f);
                for &h in self.out(self.dst(g)) {
                    let l = self.comp(h, gf);
                    let r = self.comp(self.comp(h, g), f);
                    if l != r {
                        out.push(Violation::axiom(
                            "category-associativity",
                            format!("{}:({},{},{})", self.name, self.label(h), self.label(g), self.label(f)),
                            self.label(l),
                            self.label(r),
                        ));
                    }
                }
            }
            out
        })
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport::new(self.name.clone(), self.violations())
    }

    /// True when the assignment `obj_map`, `mor_map` is an isomorphism of
    /// categories `self → other`.
    pub fn is_isomorphism(&self, other: &FiniteCategory, obj_map: &[usize], mor_map: &[usize]) -> bool {
        if self.object_count() != other.object_count() || self.morphism_count() != other.morphism_count() {
            return false;
        }
        let f = Functor { source: Arc::new(self.clone()), target: Arc::new(other.clone()), obj_map: obj_map.to_vec(), mor_map: mor_map.to_vec() };
        f.violations().is_empty() && is_bijection(obj_map, other.object_count()) && is_bijection(mor_map, other.morphism_count())
    }
}

pub(crate) fn is_bijection(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct Functor {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl Functor {
    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        Functor {
            obj_map: (0..c.object_count()).collect(),
            mor_map: (0..c.morphism_count()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn ob(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        if self.obj_map.len() != s.object_count() || self.mor_map.len() != s.morphism_count() {
            out.push(Violation::schema("/functor", "map sizes do not match the source"));
            return out;
        }
        if self.obj_map.iter().any(|&x| x >= t.object_count()) || self.mor_map.iter().any(|&x| x >= t.morphism_count()) {
            out.push(Violation::schema("/functor", "dangling target id"));
            return out;
        }
        for f in 0..s.morphism_count() {
            let ff = self.mor(f);
            if t.src(ff) != self.ob(s.src(f)) || t.dst(ff) != self.ob(s.dst(f)) {
                out.push(Violation::axiom("functor-typing", s.label(f), t.label(ff), "endpoints not preserved"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..s.object_count() {
            if self.mor(s.id(a)) != t.id(self.ob(a)) {
                out.push(Violation::axiom("functor-identity", s.object_label(a), t.label(self.mor(s.id(a))), t.label(t.id(self.ob(a)))));
            }
        }
        for (&(g, f), &gf) in s.composition_table() {
            let l = self.mor(gf);
            let r = t.comp(self.mor(g), self.mor(f));
            if l != r {
                out.push(Violation::axiom("functor-composition", format!("({},{})", s.label(g), s.label(f)), t.label(l), t.label(r)));
            }
        }
        out
    }

    pub fn compose(&self, g: &Functor) -> Result<Functor> {
        // g ∘ self
        if *self.target != *g.source {
            return Err(Error::Mismatch("functor codomain differs from the next domain".into()));
        }
        Ok(Functor {
            source: self.source.clone(),
            target: g.target.clone(),
            obj_map: self.obj_map.iter().map(|&a| g.ob(a)).collect(),
            mor_map: self.mor_map.iter().map(|&f| g.mor(f)).collect(),
        })
    }
}

/// A finite directed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, usize, usize)>,
}

impl FiniteGraph {
    /// `𝒢ₚ`: vertices `0..=p`, edges `i-1 → i` labelled `e{i}`.
    pub fn linear(p: usize) -> Self {
        FiniteGraph {
            vertices: (0..=p).map(|i| i.to_string()).collect(),
            edges: (1..=p).map(|i| (format!("e{i}"), i - 1, i)).collect(),
        }
    }

    pub fn edge_src(&self, e: usize) -> usize {
        self.edges[e].1
    }

    pub fn edge_dst(&self, e: usize) -> usize {
        self.edges[e].2
    }

    /// A vertex lying on a directed cycle, if any.
    pub fn find_cycle(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, _, d) in &self.edges {
            indeg[d] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = vec![false; n];
        while let Some(v) = queue.pop() {
            removed[v] = true;
            for &(_, s, d) in &self.edges {
                if s == v {
                    indeg[d] -= 1;
                    if indeg[d] == 0 {
                        queue.push(d);
                    }
                }
            }
        }
        (0..n).find(|&v| !removed[v])
    }
}

/// The free category on an acyclic graph. Morphisms are paths; a path is
/// labelled by its edges in traversal order joined with `.`, and the empty
/// path at `v` is `1_v`.
pub fn free_category(g: &FiniteGraph) -> Result<FiniteCategory> {
    free_category_with_paths(g).map(|(c, _)| c)
}

/// [`free_category`] together with the edge path behind each morphism.
pub fn free_category_with_paths(g: &FiniteGraph) -> Result<(FiniteCategory, Vec<Vec<usize>>)> {
    if let Some(v) = g.find_cycle() {
        return Err(Error::CyclicGraph(g.vertices[v].clone()));
    }
    let mut b = CategoryBuilder::new("free");
    for v in &g.vertices {
        b.object(v.clone());
    }
    // paths as edge sequences
    let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for v in 0..g.vertices.len() {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(v, Vec::new())];
        while let Some((end, path)) = stack.pop() {
            paths.push((v, end, path.clone()));
            for (e, &(_, s, d)) in g.edges.iter().enumerate().rev() {
                if s == end {
                    let mut p = path.clone();
                    p.push(e);
                    stack.push((d, p));
                }
            }
        }
    }
    paths.sort_by(|x, y| (x.0, x.2.len(), &x.2).cmp(&(y.0, y.2.len(), &y.2)));
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut ids = vec![0; g.vertices.len()];
    for (s, d, p) in &paths {
        let label = if p.is_empty() {
            format!("1_{}", g.vertices[*s])
        } else {
            p.iter().map(|&e| g.edges[e].0.as_str()).collect::<Vec<_>>().join(".")
        };
        let m = b.morphism(label, *s, *d);
        if p.is_empty() {
            ids[*s] = m;
            b.identity(*s, m);
        } else {
            index.insert(p.clone(), m);
        }
    }
    let key = |m: usize, paths: &[(usize, usize, Vec<usize>)]| paths[m].2.clone();
    let n = paths.len();
    for f in 0..n {
        for g2 in 0..n {
            if paths[g2].0 != paths[f].1 {
                continue;
            }
            let mut p = key(f, &paths);
            p.extend(key(g2, &paths));
            let h = if p.is_empty() { ids[paths[f].0] } else { index[&p] };
            b.compose(g2, f, h);
        }
    }
    Ok((b.build()?, paths.into_iter().map(|t| t.2).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_graph_is_rejected() {
        let g = FiniteGraph { vertices: vec!["x".into()], edges: vec![("l".into(), 0, 0)] };
        assert!(matches!(free_category(&g), Err(Error::CyclicGraph(_))));
    }

    #[test]
    fn ordinal_two_has_six_morphisms() {
        let c = FiniteCategory::ordinal(2);
        assert_eq!(c.morphism_count(), 6);
        assert!(c.violations().is_empty());
        assert_eq!(c.label(c.ordinal_arrow(0, 2)), "e1.e2");
    }

    #[test]
    fn missing_composite_is_a_schema_error() {
        let mut b = CategoryBuilder::new("broken");
        let x = b.object("x");
        let i = b.morphism("1", x, x);
        let f = b.morphism("f", x, x);
        b.identity(x, i);
        b.compose(i, i, i);
        b.compose(f, i, f);
        b.compose(i, f, f);
        let v = b.schema_violations();
        assert!(v.iter().any(|v| v.lhs.contains("missing composite (f,f)")));
    }
}
