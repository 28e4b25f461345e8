use super::{DiagramVector, JacobiGraph, Kind};
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};
use crate::tensor::next_permutation;

fn expect_kind(v: &DiagramVector, kind: Kind) -> Result<()> {
    if v.kind() != kind {
        return Err(Error::KindMismatch { expected: kind.name(), found: v.kind().name() });
    }
    Ok(())
}

/// Places `h` beside `g`. Vertices and legs of `g` come first; the result
/// has the given kind and loop order (indices into the combined legs).
pub fn union_graphs(g: &JacobiGraph, h: &JacobiGraph, kind: Kind, loop_order: Vec<u32>) -> JacobiGraph {
    let nt = g.n_tri + h.n_tri;
    let map_g = |p: usize| if p < 3 * g.n_tri { p } else { 3 * nt + (p - 3 * g.n_tri) };
    let map_h = |p: usize| if p < 3 * h.n_tri { p + 3 * g.n_tri } else { 3 * nt + g.n_leg + (p - 3 * h.n_tri) };
    let mut mate = vec![0u32; g.n_ports() + h.n_ports()];
    for p in 0..g.n_ports() {
        mate[map_g(p)] = map_g(g.mate[p] as usize) as u32;
    }
    for p in 0..h.n_ports() {
        mate[map_h(p)] = map_h(h.mate[p] as usize) as u32;
    }
    JacobiGraph::from_parts_unchecked(kind, nt, g.n_leg + h.n_leg, mate, loop_order, g.circles + h.circles)
}

/// `a ⊔ b` in `B`.
pub fn disjoint_union(a: &DiagramVector, b: &DiagramVector) -> Result<DiagramVector> {
    expect_kind(a, Kind::B)?;
    expect_kind(b, Kind::B)?;
    let mut out = DiagramVector::zero(Kind::B);
    for (g, x) in a.terms() {
        for (h, y) in b.terms() {
            out.add_term(&union_graphs(g, h, Kind::B, Vec::new()), &(x * y));
        }
    }
    Ok(out)
}

/// Connected sum of two loop diagrams, cutting the loop of `g` just before
/// loop position `cut_g` and that of `h` before `cut_h`.
pub fn connect_sum_at(g: &JacobiGraph, h: &JacobiGraph, cut_g: usize, cut_h: usize) -> Result<JacobiGraph> {
    if g.kind != Kind::A || h.kind != Kind::A {
        return Err(Error::KindMismatch { expected: "A", found: "B" });
    }
    let rot = |lo: &[u32], k: usize| -> Vec<u32> {
        if lo.is_empty() {
            return Vec::new();
        }
        let k = k % lo.len();
        lo[k..].iter().chain(&lo[..k]).copied().collect()
    };
    let mut order = rot(&g.loop_order, cut_g);
    order.extend(rot(&h.loop_order, cut_h).into_iter().map(|l| l + g.n_leg as u32));
    Ok(union_graphs(g, h, Kind::A, order))
}

/// `a # b`, cutting each canonical loop at its base point.
pub fn connect_sum(a: &DiagramVector, b: &DiagramVector) -> Result<DiagramVector> {
    expect_kind(a, Kind::A)?;
    expect_kind(b, Kind::A)?;
    let mut out = DiagramVector::zero(Kind::A);
    for (g, x) in a.terms() {
        for (h, y) in b.terms() {
            out.add_term(&connect_sum_at(g, h, 0, 0)?, &(x * y));
        }
    }
    Ok(out)
}

/// The symmetrization map `B -> A`: the average over all orders of
/// attaching the legs to the loop.
pub fn chi(b: &DiagramVector) -> Result<DiagramVector> {
    expect_kind(b, Kind::B)?;
    let mut out = DiagramVector::zero(Kind::A);
    for (g, c) in b.terms() {
        let l = g.n_leg;
        let mut a = g.clone();
        a.kind = Kind::A;
        if l == 0 {
            a.loop_order = Vec::new();
            out.add_term(&a, c);
            continue;
        }
        // orders differing by a rotation give the same diagram: fix leg 0 first
        let w = c / Q::from_integer(factorial(l - 1));
        let mut rest: Vec<u32> = (1..l as u32).collect();
        loop {
            a.loop_order = std::iter::once(0).chain(rest.iter().copied()).collect();
            out.add_term(&a, &w);
            if !next_permutation(&mut rest) {
                break;
            }
        }
    }
    Ok(out)
}

/// Glues leg `i` of `c` to leg `target[i]` of `d` for every `i`; the
/// remaining legs of `d` stay legs, in their original order.
pub fn glue_legs(c: &JacobiGraph, d: &JacobiGraph, target: &[usize]) -> Result<JacobiGraph> {
    if c.kind != Kind::B || d.kind != Kind::B {
        return Err(Error::KindMismatch { expected: "B", found: "A" });
    }
    if target.len() != c.n_leg || target.iter().any(|&t| t >= d.n_leg) {
        return Err(Error::structural("gluing must send every leg to an existing leg"));
    }
    let u = union_graphs(c, d, Kind::B, Vec::new());
    let nt = u.n_tri;
    let base = 3 * nt;
    let mut mate: Vec<u32> = u.mate.clone();
    let mut removed = vec![false; u.n_leg];
    let mut circles = u.circles;
    for (i, &t) in target.iter().enumerate() {
        let (p, q) = (base + i, base + c.n_leg + t);
        if removed[q - base] {
            return Err(Error::structural("gluing is not injective"));
        }
        let (a, b) = (mate[p] as usize, mate[q] as usize);
        if a == q {
            circles += 1;
        } else {
            mate[a] = b as u32;
            mate[b] = a as u32;
        }
        removed[p - base] = true;
        removed[q - base] = true;
    }
    let mut newport: Vec<usize> = (0..u.n_ports()).collect();
    let mut next = base;
    for l in 0..u.n_leg {
        if !removed[l] {
            newport[base + l] = next;
            next += 1;
        }
    }
    let n_leg = next - base;
    let mut out = vec![0u32; base + n_leg];
    for p in 0..u.n_ports() {
        if p >= base && removed[p - base] {
            continue;
        }
        out[newport[p]] = newport[mate[p] as usize] as u32;
    }
    Ok(JacobiGraph::from_parts_unchecked(Kind::B, nt, n_leg, out, Vec::new(), circles))
}

/// Calls `f` with every injection `0..k -> 0..n`.
pub(crate) fn for_each_injection(k: usize, n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                cur.push(t);
                rec(k, n, cur, used, f);
                cur.pop();
                used[t] = false;
            }
        }
    }
    if k <= n {
        rec(k, n, &mut Vec::with_capacity(k), &mut vec![false; n], f);
    }
}

/// `c ∩ d`: the sum over all ways of gluing every leg of `c` to a distinct leg of `d`.
pub fn cap(c: &DiagramVector, d: &DiagramVector) -> Result<DiagramVector> {
    expect_kind(c, Kind::B)?;
    expect_kind(d, Kind::B)?;
    let mut out = DiagramVector::zero(Kind::B);
    for (g, x) in c.terms() {
        for (h, y) in d.terms() {
            if g.n_leg > h.n_leg {
                continue;
            }
            let w = x * y;
            let mut err = None;
            for_each_injection(g.n_leg, h.n_leg, &mut |t| match glue_legs(g, h, t) {
                Ok(r) => out.add_term(&r, &w),
                Err(e) => err = Some(e),
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
    }
    Ok(out)
}
