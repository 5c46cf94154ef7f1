use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteCategory;
use crate::error::{Error, Result};
use crate::exec;
use crate::report::{ValidationReport, Violation};
use crate::Limits;

/// Index of the pair `i ≤ j` in a simplex's arrow table. Stable under
/// adding vertices at the end.
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

/// Index of the triple `i ≤ j ≤ k` in a simplex's 2-cell table.
pub fn triple_index(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i <= j && j <= k);
    k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i
}

pub fn pair_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

pub fn triple_count(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// `δ_i: [n-1] → [n]`, the injection missing `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// `σ_i: [n+1] → [n]`, the surjection hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect()
}

/// All monotone maps `[q] → [p]`, as value lists, in lexicographic order.
pub fn monotone_maps(q: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q + 1);
    fn go(q: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=p {
            cur.push(v);
            go(q, p, cur, out);
            cur.pop();
        }
    }
    go(q, p, &mut cur, &mut out);
    out
}

/// `a∘b` for monotone maps given as value lists.
pub fn compose_monotone(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&k| a[k]).collect()
}

/// The data of a functor-like simplex `[n] → X`: an object per vertex, an
/// arrow per pair `i ≤ j`, an optional unit cell per vertex and an optional
/// 2-cell per triple `i ≤ j ≤ k`, all as raw ids. Faces and degeneracies are
/// precomposition with monotone maps, which is pure reindexing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub objs: Vec<u32>,
    pub arrows: Vec<u32>,
    pub units: Vec<u32>,
    pub cells: Vec<u32>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.objs.len() - 1
    }

    pub fn arrow(&self, i: usize, j: usize) -> u32 {
        self.arrows[pair_index(i, j)]
    }

    pub fn cell(&self, i: usize, j: usize, k: usize) -> u32 {
        self.cells[triple_index(i, j, k)]
    }

    /// The simplex `x∘a` for a monotone `a: [m] → [n]`.
    pub fn reindex(&self, a: &[usize]) -> Simplex {
        let m = a.len() - 1;
        let objs = a.iter().map(|&k| self.objs[k]).collect();
        let mut arrows = Vec::with_capacity(pair_count(m));
        for j in 0..=m {
            for i in 0..=j {
                arrows.push(self.arrow(a[i], a[j]));
            }
        }
        let units = if self.units.is_empty() { Vec::new() } else { a.iter().map(|&k| self.units[k]).collect() };
        let mut cells = Vec::new();
        if !self.cells.is_empty() {
            cells.reserve(triple_count(m));
            for k in 0..=m {
                for j in 0..=k {
                    for i in 0..=j {
                        cells.push(self.cell(a[i], a[j], a[k]));
                    }
                }
            }
        }
        Simplex { objs, arrows, units, cells }
    }
}

/// A simplicial set truncated at dimension `N`. `faces[n][i][x]` is `d_i x`
/// for an `n`-simplex `x` (`n ≥ 1`), `degeneracies[n][i][x]` is `s_i x`
/// (`n < N`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSimplicialSet {
    pub name: String,
    pub cells: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSimplicialSet {
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }

    pub fn find(&self, n: usize, label: &str) -> Option<usize> {
        self.cells[n].iter().position(|l| l == label)
    }

    /// Builds the face and degeneracy tables from keys that know how to
    /// reindex themselves along monotone maps. Fails if some face or
    /// degeneracy falls outside the given cells.
    pub fn from_reindexing<K, R>(name: impl Into<String>, keys: &[Vec<K>], labels: Vec<Vec<String>>, reindex: R) -> Result<Self>
    where
        K: Hash + Eq + Sync,
        R: Fn(&K, &[usize]) -> K + Sync + Send,
    {
        let name = name.into();
        let top = keys.len() - 1;
        let index: Vec<HashMap<&K, usize>> = keys.iter().map(|ks| ks.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let lookup = |n: usize, k: &K, what: &str| -> Result<usize> {
            index[n].get(k).copied().ok_or_else(|| Error::Mismatch(format!("{name}: {what} of a {}-simplex is missing", n)))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut per = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let d = coface(n, i);
                let col = exec::map(&keys[n], |k| lookup(n - 1, &reindex(k, &d), "face"));
                per.push(col.into_iter().collect::<Result<Vec<_>>>()?);
            }
            faces.push(per);
        }
        let mut degeneracies = Vec::new();
        for n in 0..top {
            let mut per = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let s = codegeneracy(n, i);
                let col = exec::map(&keys[n], |k| lookup(n + 1, &reindex(k, &s), "degeneracy"));
                per.push(col.into_iter().collect::<Result<Vec<_>>>()?);
            }
            degeneracies.push(per);
        }
        Ok(TruncatedSimplicialSet { name, cells: labels, faces, degeneracies })
    }

    /// The sub-object spanned by dimensions `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        TruncatedSimplicialSet {
            name: self.name.clone(),
            cells: self.cells[..=n].to_vec(),
            faces: self.faces[..=n].to_vec(),
            degeneracies: self.degeneracies[..n].to_vec(),
        }
    }
}

fn schema_violations(s: &TruncatedSimplicialSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let top = s.cells.len();
    if top == 0 {
        out.push(Violation::schema("/cells", format!("{}: no dimensions", s.name)));
        return out;
    }
    if s.faces.len() != top || s.degeneracies.len() + 1 != top {
        out.push(Violation::schema("/", format!("{}: table counts do not match the truncation", s.name)));
        return out;
    }
    for n in 1..top {
        if s.faces[n].len() != n + 1 {
            out.push(Violation::schema(format!("/faces/{n}"), format!("{}: expected {} face maps", s.name, n + 1)));
            continue;
        }
        for (i, col) in s.faces[n].iter().enumerate() {
            if col.len() != s.count(n) || col.iter().any(|&y| y >= s.count(n - 1)) {
                out.push(Violation::schema(format!("/faces/{n}/{i}"), format!("{}: face map d{i} is malformed", s.name)));
            }
        }
    }
    for n in 0..top - 1 {
        if s.degeneracies[n].len() != n + 1 {
            out.push(Violation::schema(format!("/degeneracies/{n}"), format!("{}: expected {} degeneracies", s.name, n + 1)));
            continue;
        }
        for (i, col) in s.degeneracies[n].iter().enumerate() {
            if col.len() != s.count(n) || col.iter().any(|&y| y >= s.count(n + 1)) {
                out.push(Violation::schema(format!("/degeneracies/{n}/{i}"), format!("{}: degeneracy s{i} is malformed", s.name)));
            }
        }
    }
    out
}

/// Every simplicial identity that fits inside the truncation.
pub fn validate_simplicial(s: &TruncatedSimplicialSet) -> ValidationReport {
    let mut v = schema_violations(s);
    if v.is_empty() {
        v = identity_violations(s);
    }
    ValidationReport::new(s.name.clone(), v)
}

fn identity_violations(s: &TruncatedSimplicialSet) -> Vec<Violation> {
    let top = s.dim();
    let d = |n: usize, i: usize, x: usize| s.faces[n][i][x];
    let sd = |n: usize, i: usize, x: usize| s.degeneracies[n][i][x];
    let mut out = Vec::new();
    let mut fail = |axiom: &str, inst: String, l: usize, r: usize| {
        if l != r {
            out.push(Violation::axiom(axiom, inst, l.to_string(), r.to_string()));
        }
    };
    for n in 2..=top {
        for x in 0..s.count(n) {
            for j in 1..=n {
                for i in 0..j {
                    fail("face-face", format!("d{i}d{j}@{n}:{}", s.cells[n][x]), d(n - 1, i, d(n, j, x)), d(n - 1, j - 1, d(n, i, x)));
                }
            }
        }
    }
    for n in 0..top {
        for x in 0..s.count(n) {
            let inst = |w: &str| format!("{w}@{n}:{}", s.cells[n][x]);
            for j in 0..=n {
                let y = sd(n, j, x);
                for i in 0..=n + 1 {
                    let l = d(n + 1, i, y);
                    let r = if i < j {
                        sd(n - 1, j - 1, d(n, i, x))
                    } else if i == j || i == j + 1 {
                        x
                    } else {
                        sd(n - 1, j, d(n, i - 1, x))
                    };
                    fail("face-degeneracy", inst(&format!("d{i}s{j}")), l, r);
                }
                if n + 1 < top {
                    for i in 0..=j {
                        let l = sd(n + 1, i, sd(n, j, x));
                        let r = sd(n + 1, j + 1, sd(n, i, x));
                        fail("degeneracy-degeneracy", inst(&format!("s{i}s{j}")), l, r);
                    }
                }
            }
        }
    }
    out
}

/// Checks that `maps[n]` (one per dimension) commute with all faces and
/// degeneracies and are bijections.
pub fn compare_simplicial(s: &TruncatedSimplicialSet, t: &TruncatedSimplicialSet, maps: &[Vec<usize>]) -> Vec<Violation> {
    let mut out = Vec::new();
    let top = s.dim();
    if t.dim() != top || maps.len() != top + 1 {
        out.push(Violation::schema("/", format!("{} and {} have different truncations", s.name, t.name)));
        return out;
    }
    for n in 0..=top {
        if maps[n].len() != s.count(n) || maps[n].iter().any(|&y| y >= t.count(n)) {
            out.push(Violation::schema(format!("/maps/{n}"), "map has the wrong shape".to_string()));
            return out;
        }
        if !crate::algebra::is_bijection(&maps[n], t.count(n)) {
            out.push(Violation::axiom("bijection", format!("dimension {n}"), s.count(n).to_string(), t.count(n).to_string()));
        }
    }
    for n in 0..=top {
        for x in 0..s.count(n) {
            let fx = maps[n][x];
            if n > 0 {
                for i in 0..=n {
                    let l = maps[n - 1][s.face(n, i, x)];
                    let r = t.face(n, i, fx);
                    if l != r {
                        out.push(Violation::axiom("commutes-with-face", format!("d{i}@{n}:{}", s.cells[n][x]), t.cells[n - 1][l].clone(), t.cells[n - 1][r].clone()));
                    }
                }
            }
            if n < top {
                for i in 0..=n {
                    let l = maps[n + 1][s.degeneracy(n, i, x)];
                    let r = t.degeneracy(n, i, fx);
                    if l != r {
                        out.push(Violation::axiom("commutes-with-degeneracy", format!("s{i}@{n}:{}", s.cells[n][x]), t.cells[n + 1][l].clone(), t.cells[n + 1][r].clone()));
                    }
                }
            }
        }
    }
    out
}

/// Checks that `maps` is a simplicial map (without asking for bijectivity).
pub fn simplicial_map_violations(s: &TruncatedSimplicialSet, t: &TruncatedSimplicialSet, maps: &[Vec<usize>]) -> Vec<Violation> {
    compare_simplicial(s, t, maps).into_iter().filter(|v| v.axiom != "bijection").collect()
}

/// Result of searching fillers for all `(n, k)`-horns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanReport {
    pub n: usize,
    pub k: usize,
    pub horns: usize,
    pub filled: usize,
    /// A few unfilled horns, as lists of face labels.
    pub unfilled: Vec<Vec<String>>,
}

impl KanReport {
    pub fn all_fill(&self) -> bool {
        self.horns == self.filled
    }
}

/// Enumerates the `(n, k)`-horns of `s` (families `(y_i)_{i≠k}` of
/// `(n-1)`-simplices with `d_i y_j = d_{j-1} y_i` for `i < j`) and checks
/// which are the boundary of some `n`-simplex.
pub fn kan_check(s: &TruncatedSimplicialSet, n: usize, k: usize) -> Result<KanReport> {
    kan_check_with_limits(s, n, k, Limits::default())
}

pub fn kan_check_with_limits(s: &TruncatedSimplicialSet, n: usize, k: usize, limits: Limits) -> Result<KanReport> {
    if n == 0 || n > s.dim() || k > n {
        return Err(Error::Invalid(format!("no ({n},{k})-horns inside a {}-truncated set", s.dim())));
    }
    let filled_set: HashSet<Vec<usize>> = (0..s.count(n))
        .map(|x| (0..=n).filter(|&i| i != k).map(|i| s.face(n, i, x)).collect())
        .collect();
    let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    let m = n - 1;
    // faces of (n-1)-simplices, grouped by (face index, value)
    let mut by_face: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    if m > 0 {
        for y in 0..s.count(m) {
            for i in 0..=m {
                by_face.entry((i, s.face(m, i, y))).or_default().push(y);
            }
        }
    }
    let all: Vec<usize> = (0..s.count(m)).collect();
    let mut horns = 0usize;
    let mut filled = 0usize;
    let mut unfilled = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(slots.len());
    // depth-first over slots; the first assigned slot constrains the rest
    fn go(
        s: &TruncatedSimplicialSet,
        m: usize,
        slots: &[usize],
        by_face: &HashMap<(usize, usize), Vec<usize>>,
        all: &[usize],
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let t = cur.len();
        if t == slots.len() {
            return visit(cur);
        }
        let j = slots[t];
        let empty = Vec::new();
        let cands: &[usize] = if t == 0 || m == 0 {
            all
        } else {
            // d_i y_j = d_{j-1} y_i with i = slots[0] < j
            let i = slots[0];
            by_face.get(&(i, s.face(m, j - 1, cur[0]))).unwrap_or(&empty)
        };
        for &y in cands {
            let ok = (0..t).all(|u| {
                let i = slots[u];
                m == 0 || s.face(m, i, y) == s.face(m, j - 1, cur[u])
            });
            if ok {
                cur.push(y);
                go(s, m, slots, by_face, all, cur, visit)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut visit = |h: &[usize]| -> Result<()> {
        horns += 1;
        limits.check("horns", horns)?;
        if filled_set.contains(h) {
            filled += 1;
        } else if unfilled.len() < 5 {
            unfilled.push(h.iter().map(|&y| s.cells[m][y].clone()).collect());
        }
        Ok(())
    };
    go(s, m, &slots, &by_face, &all, &mut cur, &mut visit)?;
    Ok(KanReport { n, k, horns, filled, unfilled })
}

/// The ordinary nerve of a category: `n`-simplices are strings of `n`
/// composable morphisms, labelled by the morphisms in order (`(f₁,…,fₙ)`),
/// 0-simplices by objects.
pub fn category_nerve(c: &FiniteCategory, n: usize) -> Result<TruncatedSimplicialSet> {
    category_nerve_with_limits(c, n, Limits::default())
}

pub fn category_nerve_with_limits(c: &FiniteCategory, n: usize, limits: Limits) -> Result<TruncatedSimplicialSet> {
    let mut keys: Vec<Vec<Simplex>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    keys.push((0..c.object_count()).map(|o| Simplex { objs: vec![o as u32], arrows: vec![c.id(o) as u32], units: vec![], cells: vec![] }).collect());
    labels.push(c.objects().to_vec());
    for d in 1..=n {
        let mut next = Vec::new();
        for x in &keys[d - 1] {
            let last = x.objs[d - 1] as usize;
            for &f in c.out(last) {
                let mut y = x.clone();
                y.objs.push(c.dst(f) as u32);
                for i in 0..d {
                    y.arrows.push(c.comp(f, x.arrow(i, d - 1) as usize) as u32);
                }
                y.arrows.push(c.id(c.dst(f)) as u32);
                next.push(y);
            }
        }
        limits.check(&format!("nerve dimension {d}"), next.len())?;
        labels.push(
            next.iter()
                .map(|y| {
                    let parts: Vec<&str> = (1..=d).map(|j| c.label(y.arrow(j - 1, j) as usize)).collect();
                    crate::tuple_label(&parts)
                })
                .collect(),
        );
        keys.push(next);
    }
    TruncatedSimplicialSet::from_reindexing(format!("N{}", c.name()), &keys, labels, |k, a| k.reindex(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_are_prefix_stable() {
        let mut seen = Vec::new();
        for k in 0..5 {
            for j in 0..=k {
                for i in 0..=j {
                    seen.push(triple_index(i, j, k));
                }
            }
        }
        assert_eq!(seen, (0..triple_count(4)).collect::<Vec<_>>());
        assert_eq!(pair_index(0, 3), 6);
    }

    #[test]
    fn monotone_map_counts_are_binomial() {
        assert_eq!(monotone_maps(3, 3).len(), 35);
        assert_eq!(monotone_maps(1, 2).len(), 6);
        assert_eq!(compose_monotone(&coface(2, 1), &codegeneracy(1, 0)), vec![0, 0, 2]);
    }
}
