use super::{Elem, FiniteRing, ISOMORPHISM_BUDGET};
use crate::error::{Error, Result};

type Signature = (usize, bool, bool, bool);

/// Additive order, unit status, idempotence, and whether the square is zero.
fn signature(r: &FiniteRing, a: Elem) -> Signature {
    let sq = r.mul(a, a);
    (r.additive_order(a), r.is_unit(a), sq == a, sq == r.zero())
}

/// Decides whether two rings of at most [`ISOMORPHISM_BUDGET`] elements are
/// isomorphic by backtracking over bijections that respect element
/// signatures.
pub fn ring_isomorphic(r: &FiniteRing, s: &FiniteRing) -> Result<bool> {
    let n = r.size();
    for size in [r.size(), s.size()] {
        if size > ISOMORPHISM_BUDGET {
            return Err(Error::Size {
                what: "ring isomorphism",
                size,
                budget: ISOMORPHISM_BUDGET,
            });
        }
    }
    if n != s.size() || r.units().len() != s.units().len() {
        return Ok(false);
    }
    let sig_r: Vec<_> = r.elements().map(|a| signature(r, a)).collect();
    let sig_s: Vec<_> = s.elements().map(|a| signature(s, a)).collect();
    let mut a = sig_r.clone();
    let mut b = sig_s.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(false);
    }

    let mut map: Vec<Option<Elem>> = vec![None; n];
    let mut used = vec![false; n];
    map[r.zero().index()] = Some(s.zero());
    map[r.one().index()] = Some(s.one());
    used[s.zero().index()] = true;
    used[s.one().index()] = true;
    let order: Vec<Elem> = r
        .elements()
        .filter(|&x| x != r.zero() && x != r.one())
        .collect();
    Ok(extend(r, s, &sig_r, &sig_s, &order, 0, &mut map, &mut used))
}

fn consistent(r: &FiniteRing, s: &FiniteRing, map: &[Option<Elem>]) -> bool {
    for x in r.elements() {
        let Some(fx) = map[x.index()] else { continue };
        for y in r.elements() {
            let Some(fy) = map[y.index()] else { continue };
            if let Some(f) = map[r.add(x, y).index()] {
                if f != s.add(fx, fy) {
                    return false;
                }
            }
            if let Some(f) = map[r.mul(x, y).index()] {
                if f != s.mul(fx, fy) {
                    return false;
                }
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn extend(
    r: &FiniteRing,
    s: &FiniteRing,
    sig_r: &[Signature],
    sig_s: &[Signature],
    order: &[Elem],
    depth: usize,
    map: &mut Vec<Option<Elem>>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(&x) = order.get(depth) else {
        return consistent(r, s, map);
    };
    for y in s.elements() {
        if used[y.index()] || sig_r[x.index()] != sig_s[y.index()] {
            continue;
        }
        map[x.index()] = Some(y);
        used[y.index()] = true;
        if consistent(r, s, map) && extend(r, s, sig_r, sig_s, order, depth + 1, map, used) {
            return true;
        }
        map[x.index()] = None;
        used[y.index()] = false;
    }
    false
}
