use super::category::MonoidalCategory;

/// Result of the sufficient test for homotopy regularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    /// Every `m⊗−` and `−⊗m` is an equivalence of the underlying category.
    pub regular: bool,
    /// Additionally every morphism is invertible and every object has a
    /// tensor inverse up to isomorphism.
    pub categorical_group: bool,
    pub witnesses: Vec<String>,
}

fn iso(m: &MonoidalCategory, x: usize, y: usize) -> bool {
    m.category.hom(x, y).iter().any(|&f| m.category.inverse_of(f).is_some())
}

/// Checks whether `tensor(x)`, as an endofunctor, is full, faithful and
/// essentially surjective.
fn translation_failures(m: &MonoidalCategory, name: &str, ob: impl Fn(usize) -> usize, mor: impl Fn(usize) -> usize) -> Vec<String> {
    let c = &*m.category;
    let n = c.object_count();
    let mut out = Vec::new();
    for y in 0..n {
        for z in 0..n {
            let mut img: Vec<usize> = c.hom(y, z).iter().map(|&f| mor(f)).collect();
            let k = img.len();
            img.sort_unstable();
            img.dedup();
            if img.len() != k {
                out.push(format!("{name} not faithful on ({},{})", c.object_label(y), c.object_label(z)));
            }
            if img.len() != c.hom(ob(y), ob(z)).len() {
                out.push(format!("{name} not full on ({},{})", c.object_label(y), c.object_label(z)));
            }
        }
    }
    for z in 0..n {
        if !(0..n).any(|y| iso(m, ob(y), z)) {
            out.push(format!("{name} misses `{}` up to isomorphism", c.object_label(z)));
        }
    }
    out
}

pub fn regularity_check(m: &MonoidalCategory) -> Regularity {
    let c = &*m.category;
    let n = c.object_count();
    let mut witnesses = Vec::new();
    for x in 0..n {
        let lab = c.object_label(x);
        let ix = c.id(x);
        witnesses.extend(translation_failures(m, &format!("{lab}⊗-"), |y| m.t(x, y), |f| m.tm(ix, f)));
        witnesses.extend(translation_failures(m, &format!("-⊗{lab}"), |y| m.t(y, x), |f| m.tm(f, ix)));
    }
    let regular = witnesses.is_empty();
    let mut group = regular;
    for f in 0..c.morphism_count() {
        if c.inverse_of(f).is_none() {
            witnesses.push(format!("morphism `{}` is not invertible", c.label(f)));
            group = false;
        }
    }
    for x in 0..n {
        if !(0..n).any(|y| iso(m, m.t(x, y), m.unit) && iso(m, m.t(y, x), m.unit)) {
            witnesses.push(format!("object `{}` has no tensor inverse", c.object_label(x)));
            group = false;
        }
    }
    Regularity { regular, categorical_group: group, witnesses }
}
