use crate::error::{Error, Result};
use crate::report::Violation;

/// A finite group given by its multiplication table. Elements are
/// `0..order()`; `mul(a, b)` is the product `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// A quotient `G/N` with its projection. Each coset is represented by its
/// smallest element, and cosets are numbered in increasing order of their
/// representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table. The identity and
    /// inverses are located; associativity is left to [`FiniteGroup::violations`].
    pub fn from_table(labels: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("a group needs at least one element".into()));
        }
        if table.len() != n * n {
            return Err(Error::schema("/table", format!("expected {} entries, found {}", n * n, table.len())));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::schema("/table", format!("entry {bad} out of range")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or_else(|| Error::Invalid("multiplication table has no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {} has no inverse", labels[a])))?;
        }
        Ok(FiniteGroup { labels, table, identity, inverse })
    }

    pub fn from_fn(labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        Self::from_table(labels, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n).unwrap()
    }

    /// The dihedral group of order `2n`; element `k` is a rotation for
    /// `k < n` and the reflection `s·r^(k-n)` otherwise.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let labels = (0..2 * n)
            .map(|k| if k < n { format!("r{k}") } else { format!("s{}", k - n) })
            .collect();
        Self::from_fn(labels, |a, b| {
            let (fa, ra) = (a >= n, a % n);
            let (fb, rb) = (b >= n, b % n);
            // s^fa r^ra s^fb r^rb = s^(fa+fb) r^(±ra + rb)
            let r = if fb { (n - ra + rb) % n } else { (ra + rb) % n };
            if fa ^ fb { n + r } else { r }
        })
        .unwrap()
    }

    /// The symmetric group on three letters, elements as permutations in
    /// one-line notation, composed as functions (`(a·b)(x) = a(b(x))`).
    pub fn symmetric3() -> Self {
        Self::symmetric(3)
    }

    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        Self::from_fn(labels, |a, b| {
            let c: Vec<usize> = (0..k).map(|x| perms[a][perms[b][x]]).collect();
            index(&c)
        })
        .unwrap()
    }

    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order();
        let labels = (0..g.order() * m)
            .map(|i| crate::tuple_label(&[g.label(i / m), h.label(i % m)]))
            .collect();
        Self::from_fn(labels, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m)).unwrap()
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Associativity failures (the other group axioms are enforced by
    /// [`FiniteGroup::from_table`]).
    pub fn violations(&self, name: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    let l = self.mul(ab, c);
                    let r = self.mul(a, self.mul(b, c));
                    if l != r {
                        out.push(Violation::axiom(
                            "group-associativity",
                            format!("{name}:({},{},{})", self.label(a), self.label(b), self.label(c)),
                            self.label(l),
                            self.label(r),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn is_subgroup(&self, set: &[bool]) -> bool {
        set[self.identity]
            && self.elements().all(|a| {
                !set[a] || (set[self.inv(a)] && self.elements().all(|b| !set[b] || set[self.mul(a, b)]))
            })
    }

    pub fn is_normal(&self, set: &[bool]) -> bool {
        self.is_subgroup(set)
            && self.elements().all(|g| self.elements().all(|x| !set[x] || set[self.conjugate(g, x)]))
    }

    /// The subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut set = vec![false; self.order()];
        set[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set[y] {
                    set[y] = true;
                    stack.push(y);
                }
            }
        }
        set
    }

    /// Restricts the group to a subgroup mask, returning the subgroup and
    /// the inclusion (elements listed in increasing order).
    pub fn subgroup(&self, set: &[bool]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(set) {
            return Err(Error::Invalid("subset is not a subgroup".into()));
        }
        let incl: Vec<usize> = self.elements().filter(|&a| set[a]).collect();
        let pos = |x: usize| incl.iter().position(|&y| y == x).unwrap();
        let labels = incl.iter().map(|&a| self.labels[a].clone()).collect();
        let g = FiniteGroup::from_fn(labels, |a, b| pos(self.mul(incl[a], incl[b])))?;
        Ok((g, incl))
    }

    pub fn quotient(&self, normal: &[bool]) -> Result<Quotient> {
        if !self.is_normal(normal) {
            return Err(Error::Invalid("subgroup is not normal".into()));
        }
        let n = self.order();
        let mut projection = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for g in self.elements() {
            if projection[g] != usize::MAX {
                continue;
            }
            let k = representatives.len();
            representatives.push(g);
            for h in self.elements().filter(|&h| normal[h]) {
                projection[self.mul(g, h)] = k;
            }
        }
        let labels = representatives.iter().map(|&r| format!("[{}]", self.labels[r])).collect();
        let group = FiniteGroup::from_fn(labels, |a, b| {
            projection[self.mul(representatives[a], representatives[b])]
        })?;
        Ok(Quotient { group, projection, representatives })
    }
}

pub fn is_homomorphism(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> bool {
    map.len() == g.order()
        && map.iter().all(|&x| x < h.order())
        && g.elements().all(|a| g.elements().all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

pub fn is_isomorphism(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> bool {
    if g.order() != h.order() || !is_homomorphism(g, h, map) {
        return false;
    }
    let mut seen = vec![false; h.order()];
    map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_are_groups() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(5),
            FiniteGroup::dihedral(3),
            FiniteGroup::symmetric3(),
            FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        ] {
            assert!(g.violations("g").is_empty());
        }
        assert!(!FiniteGroup::symmetric3().is_abelian());
        assert_eq!(FiniteGroup::dihedral(3).order(), 6);
    }

    #[test]
    fn quotient_of_z4_by_z2() {
        let g = FiniteGroup::cyclic(4);
        let n = g.generated(&[2]);
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.representatives, vec![0, 1]);
        assert!(is_homomorphism(&g, &q.group, &q.projection));
    }

    #[test]
    fn non_normal_subgroup_rejected() {
        let s3 = FiniteGroup::symmetric3();
        let t = s3.elements().find(|&a| a != s3.identity() && s3.mul(a, a) == s3.identity()).unwrap();
        let h = s3.generated(&[t]);
        assert!(s3.is_subgroup(&h));
        assert!(!s3.is_normal(&h));
    }
}
