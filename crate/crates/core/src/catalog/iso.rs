//! Brute-force ring isomorphism by backtracking over images of additive generators.

use crate::error::{Error, Result};
use crate::ring::TableRing;

pub const DEFAULT_ISO_CAP: usize = 16;

/// Per-element invariants preserved by any isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    additive_order: usize,
    ann_size: usize,
    square_zero: bool,
    idempotent: bool,
    unit: bool,
}

fn signatures(r: &TableRing) -> Vec<Signature> {
    let zero = r.zero();
    r.elements()
        .map(|x| {
            let sq = r.mul(x, x);
            Signature {
                additive_order: r.additive_order(x),
                ann_size: r.mul_row(x).iter().filter(|&&p| p as usize == zero).count(),
                square_zero: sq == zero,
                idempotent: sq == x,
                unit: r.is_unit(x),
            }
        })
        .collect()
}

/// Characteristic plus the sorted signature multiset. The multiset fixes the
/// additive order multiset, `|Z(R)|`, the annihilator sizes and `|Ann_2(R)|`.
fn fingerprint(r: &TableRing, sigs: &[Signature]) -> (usize, Vec<Signature>) {
    let mut sorted = sigs.to_vec();
    sorted.sort_unstable();
    (r.characteristic(), sorted)
}

/// Generators of the additive group, starting with 1 and then greedily taking
/// an element of largest additive order outside the current span.
fn additive_generators(r: &TableRing) -> Vec<usize> {
    let n = r.order();
    let mut in_span = vec![false; n];
    in_span[r.zero()] = true;
    let mut span = vec![r.zero()];
    let mut gens = Vec::new();
    let mut next = Some(r.one());
    while let Some(g) = next {
        gens.push(g);
        let old = span.clone();
        let mut shift = g;
        while !in_span[shift] {
            for &h in &old {
                let t = r.add(h, shift);
                in_span[t] = true;
                span.push(t);
            }
            shift = r.add(shift, g);
        }
        next = r
            .elements()
            .filter(|&x| !in_span[x])
            .max_by_key(|&x| (r.additive_order(x), std::cmp::Reverse(x)));
    }
    gens
}

/// Extends `gens[i] -> images[i]` additively over the span of the assigned
/// generators. Returns `None` if the extension is inconsistent, not injective
/// or fails to preserve a product that stays inside the span.
fn extend(a: &TableRing, b: &TableRing, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut map: Vec<Option<usize>> = vec![None; a.order()];
    let mut used = vec![false; b.order()];
    map[a.zero()] = Some(b.zero());
    used[b.zero()] = true;
    let mut queue = vec![a.zero()];
    let mut head = 0;
    while head < queue.len() {
        let s = queue[head];
        head += 1;
        let fs = map[s]?;
        for (&g, &y) in gens.iter().zip(images) {
            let t = a.add(s, g);
            let ft = b.add(fs, y);
            match map[t] {
                Some(existing) if existing != ft => return None,
                Some(_) => {}
                None => {
                    if used[ft] {
                        return None;
                    }
                    used[ft] = true;
                    map[t] = Some(ft);
                    queue.push(t);
                }
            }
        }
    }
    for &x in &queue {
        for &y in &queue {
            if let Some(fxy) = map[a.mul(x, y)] {
                if fxy != b.mul(map[x]?, map[y]?) {
                    return None;
                }
            }
        }
    }
    Some(map)
}

fn search(
    a: &TableRing,
    b: &TableRing,
    sa: &[Signature],
    sb: &[Signature],
    gens: &[usize],
    images: &mut Vec<usize>,
) -> bool {
    let i = images.len();
    if i == gens.len() {
        // span is all of `a`, so `extend` has checked every product
        return extend(a, b, gens, images).is_some();
    }
    let candidates: Vec<usize> =
        if i == 0 { vec![b.one()] } else { b.elements().filter(|&y| sb[y] == sa[gens[i]]).collect() };
    for y in candidates {
        images.push(y);
        if extend(a, b, gens, images).is_some() && search(a, b, sa, sb, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Whether `r1` and `r2` are isomorphic, for orders up to [`DEFAULT_ISO_CAP`].
pub fn iso_check(r1: &TableRing, r2: &TableRing) -> Result<bool> {
    iso_check_capped(r1, r2, DEFAULT_ISO_CAP)
}

/// Rings of different orders are never isomorphic; equal orders above `cap`
/// are a capacity error.
pub fn iso_check_capped(r1: &TableRing, r2: &TableRing, cap: usize) -> Result<bool> {
    if r1.order() != r2.order() {
        return Ok(false);
    }
    if r1.order() > cap {
        return Err(Error::Capacity {
            what: "isomorphism test order",
            requested: r1.order() as u128,
            cap: cap as u128,
        });
    }
    let (s1, s2) = (signatures(r1), signatures(r2));
    if fingerprint(r1, &s1) != fingerprint(r2, &s2) || s1[r1.one()] != s2[r2.one()] {
        return Ok(false);
    }
    let gens = additive_generators(r1);
    Ok(search(r1, r2, &s1, &s2, &gens, &mut Vec::with_capacity(gens.len())))
}
