use super::construction::{comma, Comma};
use crate::bicat::{Direction, LaxMorphism, Obj, C1};
use crate::error::{Error, Result};
use rustc_hash::FxHashMap as Map;

/// `F̄: F↓F′ → B↓F′`, applying `F` to first components. Its structure cells
/// are `(F̂_{u₂,u₁}, 1)` and `(F̂_a, 1)`. Returns `B↓F′` as well.
pub fn bar_lift(c: &Comma) -> Result<(Comma, LaxMorphism)> {
    let (f, fp) = (&c.lax, &c.oplax);
    let b = &f.target;
    let t = comma(&LaxMorphism::identity(b.clone(), Direction::Lax), fp)?;
    let ap = &fp.source;
    let map0 = c.objects.iter().map(|&(a, h, a2)| t.need_obj(f.ob(a), h, a2)).collect::<Result<Vec<_>>>()?;
    let map1 = c
        .bicat
        .c1s()
        .map(|k| {
            let (u, beta, u2) = c.cell1(k);
            t.need_c1(map0[c.bicat.src1(k).idx()], f.c1(u), beta, u2, map0[c.bicat.dst1(k).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let map2 = c
        .bicat
        .c2s()
        .map(|z| {
            let (al, al2) = c.cell2(z);
            t.need_c2(map1[c.bicat.src2(z).idx()], f.c2(al), al2, map1[c.bicat.dst2(z).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut comp = Map::default();
    for k1 in c.bicat.c1s() {
        for &k2 in c.bicat.out1(c.bicat.dst1(k1)) {
            let (u1, _, v1) = c.cell1(k1);
            let (u2, _, v2) = c.cell1(k2);
            let src = t.bicat.h1(map1[k2.idx()], map1[k1.idx()])?;
            let dst = map1[c.bicat.h1(k2, k1)?.idx()];
            comp.insert((k2, k1), t.need_c2(src, f.comp_cell(u2, u1), ap.id2(ap.h1(v2, v1)?), dst)?);
        }
    }
    let unit = c
        .bicat
        .objs()
        .map(|x| {
            let (a, _, a2) = c.object(x);
            t.need_c2(t.bicat.id1(map0[x.idx()]), f.unit_cell(a), ap.id2(ap.id1(a2)), map1[c.bicat.id1(x).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let lift = LaxMorphism {
        name: format!("{}bar", f.name),
        direction: Direction::Lax,
        source: c.bicat.clone(),
        target: t.bicat.clone(),
        map0,
        map1,
        map2,
        comp,
        unit,
        claims: f.claims,
    };
    Ok((t, lift))
}

/// `F̄′: F↓F′ → F↓B`, oplax, applying `F′` to last components with
/// structure cells `(1, F̂′_{u₂′,u₁′})` and `(1, F̂′_{a′})`.
pub fn bar_lift_prime(c: &Comma) -> Result<(Comma, LaxMorphism)> {
    let (f, fp) = (&c.lax, &c.oplax);
    let b = &f.target;
    let t = comma(f, &LaxMorphism::identity(b.clone(), Direction::Oplax))?;
    let a = &f.source;
    let map0 = c.objects.iter().map(|&(x, h, a2)| t.need_obj(x, h, fp.ob(a2))).collect::<Result<Vec<_>>>()?;
    let map1 = c
        .bicat
        .c1s()
        .map(|k| {
            let (u, beta, u2) = c.cell1(k);
            t.need_c1(map0[c.bicat.src1(k).idx()], u, beta, fp.c1(u2), map0[c.bicat.dst1(k).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let map2 = c
        .bicat
        .c2s()
        .map(|z| {
            let (al, al2) = c.cell2(z);
            t.need_c2(map1[c.bicat.src2(z).idx()], al, fp.c2(al2), map1[c.bicat.dst2(z).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut comp = Map::default();
    for k1 in c.bicat.c1s() {
        for &k2 in c.bicat.out1(c.bicat.dst1(k1)) {
            let (u1, _, v1) = c.cell1(k1);
            let (u2, _, v2) = c.cell1(k2);
            // oplax: F̄′(k₂∘k₁) ⇒ F̄′k₂∘F̄′k₁
            let src = map1[c.bicat.h1(k2, k1)?.idx()];
            let dst = t.bicat.h1(map1[k2.idx()], map1[k1.idx()])?;
            comp.insert((k2, k1), t.need_c2(src, a.id2(a.h1(u2, u1)?), fp.comp_cell(v2, v1), dst)?);
        }
    }
    let unit = c
        .bicat
        .objs()
        .map(|x| {
            let (o, _, a2) = c.object(x);
            t.need_c2(map1[c.bicat.id1(x).idx()], a.id2(a.id1(o)), fp.unit_cell(a2), t.bicat.id1(map0[x.idx()]))
        })
        .collect::<Result<Vec<_>>>()?;
    let lift = LaxMorphism {
        name: format!("{}bar", fp.name),
        direction: Direction::Oplax,
        source: c.bicat.clone(),
        target: t.bicat.clone(),
        map0,
        map1,
        map2,
        comp,
        unit,
        claims: fp.claims,
    };
    Ok((t, lift))
}

/// Checks that both pullback squares commute on the nose:
/// `P∘F̄ = F∘P`, `P′∘F̄ = P′`, `P∘F̄′ = P` and `P′∘F̄′ = F′∘P′`.
/// Returns the failing equations.
pub fn square_checks(c: &Comma) -> Result<Vec<String>> {
    let (bl, fbar) = bar_lift(c)?;
    let (bo, fbar2) = bar_lift_prime(c)?;
    let p = c.projection(Direction::Lax)?;
    let p2 = c.projection_prime(Direction::Lax)?;
    let po = c.projection(Direction::Oplax)?;
    let p2o = c.projection_prime(Direction::Oplax)?;
    let mut out = Vec::new();
    let eqs = [
        ("P.Fbar = F.P", fbar.then(&bl.projection(Direction::Lax)?)?, p.then(&c.lax)?),
        ("P'.Fbar = P'", fbar.then(&bl.projection_prime(Direction::Lax)?)?, p2),
        ("P.F'bar = P", fbar2.then(&bo.projection(Direction::Oplax)?)?, po),
        ("P'.F'bar = F'.P'", fbar2.then(&bo.projection_prime(Direction::Oplax)?)?, p2o.then(&c.oplax)?),
    ];
    for (name, l, r) in eqs {
        if !l.table_eq(&r) {
            out.push(name.to_string());
        }
    }
    Ok(out)
}

/// The mediating lax morphism `N: C → F↓F′` with `PN = L` and `F̄N = M`,
/// for lax `L: C → A`, `M: C → B↓F′` with `FL = PM`. `bl` is the comma
/// `B↓F′` returned by [`bar_lift`].
pub fn mediating(c: &Comma, bl: &Comma, l: &LaxMorphism, m: &LaxMorphism) -> Result<LaxMorphism> {
    if !l.then(&c.lax)?.table_eq(&m.then(&bl.projection(Direction::Lax)?)?) {
        return Err(Error::Mismatch("F∘L and P∘M differ".into()));
    }
    let s = &l.source;
    let map0 = s
        .objs()
        .map(|o| {
            let (_, h, a2) = bl.object(m.ob(o));
            c.need_obj(l.ob(o), h, a2)
        })
        .collect::<Result<Vec<_>>>()?;
    let map1 = s
        .c1s()
        .map(|d| {
            let (_, beta, u2) = bl.cell1(m.c1(d));
            c.need_c1(map0[s.src1(d).idx()], l.c1(d), beta, u2, map0[s.dst1(d).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    let map2 = s
        .c2s()
        .map(|z| c.need_c2(map1[s.src2(z).idx()], l.c2(z), bl.cell2(m.c2(z)).1, map1[s.dst2(z).idx()]))
        .collect::<Result<Vec<_>>>()?;
    let mut comp = Map::default();
    for (&(d2, d1), &cell) in &l.comp {
        let src = c.bicat.h1(map1[d2.idx()], map1[d1.idx()])?;
        let dst = map1[s.h1(d2, d1)?.idx()];
        comp.insert((d2, d1), c.need_c2(src, cell, bl.cell2(m.comp_cell(d2, d1)).1, dst)?);
    }
    let unit = s
        .objs()
        .map(|o| {
            c.need_c2(c.bicat.id1(map0[o.idx()]), l.unit_cell(o), bl.cell2(m.unit_cell(o)).1, map1[s.id1(o).idx()])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaxMorphism {
        name: format!("<{},{}>", l.name, m.name),
        direction: Direction::Lax,
        source: s.clone(),
        target: c.bicat.clone(),
        map0,
        map1,
        map2,
        comp,
        unit,
        claims: crate::bicat::Claims {
            normal: l.claims.normal && m.claims.normal,
            pseudo: l.claims.pseudo && m.claims.pseudo,
            strict: l.claims.strict && m.claims.strict,
        },
    })
}

/// Counts the lax morphisms `N` with `PN = L` and `F̄N = M` by searching
/// each component of `N` over all cells of `F↓F′`. The data of `N` splits
/// into independent components, so the count is the product of the
/// per-component counts; uniqueness means the result is 1.
pub fn mediating_uniqueness(c: &Comma, fbar: &LaxMorphism, l: &LaxMorphism, m: &LaxMorphism) -> Result<usize> {
    let s = &l.source;
    let cb = &c.bicat;
    let tb = &fbar.target;
    let mut total: usize = 1;
    let mut n0 = Vec::new();
    for o in s.objs() {
        let hits: Vec<Obj> = cb.objs().filter(|&x| c.object(x).0 == l.ob(o) && fbar.ob(x) == m.ob(o)).collect();
        total = total.saturating_mul(hits.len());
        n0.push(hits.first().copied());
    }
    let mut n1 = Vec::new();
    for d in s.c1s() {
        let hits: Vec<C1> = cb
            .c1s()
            .filter(|&k| {
                c.cell1(k).0 == l.c1(d)
                    && fbar.c1(k) == m.c1(d)
                    && Some(cb.src1(k)) == n0[s.src1(d).idx()]
                    && Some(cb.dst1(k)) == n0[s.dst1(d).idx()]
            })
            .collect();
        total = total.saturating_mul(hits.len());
        n1.push(hits.first().copied());
    }
    for z in s.c2s() {
        let hits = cb
            .c2s()
            .filter(|&y| {
                c.cell2(y).0 == l.c2(z)
                    && fbar.c2(y) == m.c2(z)
                    && Some(cb.src2(y)) == n1[s.src2(z).idx()]
                    && Some(cb.dst2(y)) == n1[s.dst2(z).idx()]
            })
            .count();
        total = total.saturating_mul(hits);
    }
    if total == 0 {
        return Ok(0);
    }
    let n1: Vec<C1> = n1.into_iter().map(|x| x.unwrap()).collect();
    let n0: Vec<Obj> = n0.into_iter().map(|x| x.unwrap()).collect();
    // structure cells: N̂ must project to L̂ and satisfy F̄(N̂)·F̄̂ = M̂
    for (&(d2, d1), &lc) in &l.comp {
        let src = cb.h1(n1[d2.idx()], n1[d1.idx()])?;
        let dst = n1[s.h1(d2, d1)?.idx()];
        let want = m.comp_cell(d2, d1);
        let fhat = fbar.comp_cell(n1[d2.idx()], n1[d1.idx()]);
        let hits = cb
            .hom2(src, dst)
            .iter()
            .filter(|&&y| c.cell2(y).0 == lc && tb.try_vcomp(fbar.c2(y), fhat) == Some(want))
            .count();
        total = total.saturating_mul(hits);
    }
    for o in s.objs() {
        let src = cb.id1(n0[o.idx()]);
        let dst = n1[s.id1(o).idx()];
        let want = m.unit_cell(o);
        let fhat = fbar.unit_cell(n0[o.idx()]);
        let hits = cb
            .hom2(src, dst)
            .iter()
            .filter(|&&y| c.cell2(y).0 == l.unit_cell(o) && tb.try_vcomp(fbar.c2(y), fhat) == Some(want))
            .count();
        total = total.saturating_mul(hits);
    }
    Ok(total)
}

