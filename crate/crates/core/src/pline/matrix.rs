use serde::Serialize;

use crate::linalg::FieldMatrix;
use crate::ring::{Elem, FiniteRing};

/// A 2x2 matrix over a finite ring, rows (a, b) and (c, d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Matrix2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn from_rows(top: (Elem, Elem), bottom: (Elem, Elem)) -> Self {
        Matrix2::new(top.0, top.1, bottom.0, bottom.1)
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Matrix2::new(ring.one(), ring.zero(), ring.zero(), ring.one())
    }

    pub fn top(&self) -> (Elem, Elem) {
        (self.a, self.b)
    }

    pub fn bottom(&self) -> (Elem, Elem) {
        (self.c, self.d)
    }

    pub fn mul(&self, ring: &FiniteRing, rhs: &Matrix2) -> Matrix2 {
        let dot = |x: Elem, y: Elem, z: Elem, w: Elem| ring.add(ring.mul(x, y), ring.mul(z, w));
        Matrix2::new(
            dot(self.a, rhs.a, self.b, rhs.c),
            dot(self.a, rhs.b, self.b, rhs.d),
            dot(self.c, rhs.a, self.d, rhs.c),
            dot(self.c, rhs.b, self.d, rhs.d),
        )
    }

    /// Row vector times matrix: (x, y) M.
    pub fn apply_row(&self, ring: &FiniteRing, (x, y): (Elem, Elem)) -> (Elem, Elem) {
        (
            ring.add(ring.mul(x, self.a), ring.mul(y, self.c)),
            ring.add(ring.mul(x, self.b), ring.mul(y, self.d)),
        )
    }

    /// Multiplies the rows on the left by `s` and `t`.
    pub fn scale_rows(&self, ring: &FiniteRing, s: Elem, t: Elem) -> Matrix2 {
        Matrix2::new(
            ring.mul(s, self.a),
            ring.mul(s, self.b),
            ring.mul(t, self.c),
            ring.mul(t, self.d),
        )
    }
}

/// Two-sided inverse found by solving M N = I column by column with a direct
/// scan over R^2, then confirming N M = I. Costs O(|R|^2).
pub fn inverse_by_search(ring: &FiniteRing, m: &Matrix2) -> Option<Matrix2> {
    let solve = |target: (Elem, Elem)| {
        ring.elements()
            .flat_map(|x| ring.elements().map(move |z| (x, z)))
            .find(|&(x, z)| {
                ring.add(ring.mul(m.a, x), ring.mul(m.b, z)) == target.0
                    && ring.add(ring.mul(m.c, x), ring.mul(m.d, z)) == target.1
            })
    };
    let (x, z) = solve((ring.one(), ring.zero()))?;
    let (y, w) = solve((ring.zero(), ring.one()))?;
    let n = Matrix2::new(x, y, z, w);
    (n.mul(ring, m) == Matrix2::identity(ring)).then_some(n)
}

/// Rank test of the K-linear map v -> M v on R^2 (columns), which is
/// bijective exactly when M is invertible.
fn invertible_by_flattening(ring: &FiniteRing, m: &Matrix2) -> Option<bool> {
    let alg = ring.algebra()?;
    let field = alg.field();
    let d = alg.dim();
    let mut mat = FieldMatrix::zeros(field, 2 * d, 2 * d);
    for (j, &e) in alg.basis().iter().enumerate() {
        let columns = [
            (j, ring.mul(m.a, e), ring.mul(m.c, e)),
            (d + j, ring.mul(m.b, e), ring.mul(m.d, e)),
        ];
        for (col, top, bottom) in columns {
            for (i, &k) in alg.coords(top).iter().enumerate() {
                mat.set(i, col, k);
            }
            for (i, &k) in alg.coords(bottom).iter().enumerate() {
                mat.set(d + i, col, k);
            }
        }
    }
    Some(mat.rank(field) == 2 * d)
}

/// Whether M lies in GL_2(R).
pub fn is_invertible(ring: &FiniteRing, m: &Matrix2) -> bool {
    if ring.is_commutative() {
        let det = ring.sub(ring.mul(m.a, m.d), ring.mul(m.b, m.c));
        return ring.is_unit(det);
    }
    if ring.size() > 16 {
        if let Some(result) = invertible_by_flattening(ring, m) {
            return result;
        }
    }
    inverse_by_search(ring, m).is_some()
}

pub fn inverse(ring: &FiniteRing, m: &Matrix2) -> Option<Matrix2> {
    inverse_by_search(ring, m)
}

/// (a, b) is the first row of some invertible matrix. The obvious completions
/// are tried first, then every (c, d) in R^2.
pub fn is_admissible(ring: &FiniteRing, a: Elem, b: Elem) -> bool {
    if ring.is_unit(a) || ring.is_unit(b) {
        return true;
    }
    ring.elements().any(|c| {
        ring.elements()
            .any(|d| is_invertible(ring, &Matrix2::new(a, b, c, d)))
    })
}

/// a x + b y = 1 has a solution.
pub fn is_unimodular(ring: &FiniteRing, a: Elem, b: Elem) -> bool {
    ring.elements().any(|x| {
        let ax = ring.mul(a, x);
        ring.elements()
            .any(|y| ring.add(ax, ring.mul(b, y)) == ring.one())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_gf, make_matrix_ring, make_ternions, make_zn};

    fn e(i: usize) -> Elem {
        Elem::from(i)
    }

    #[test]
    fn z4_examples() {
        let z4 = make_zn(4).unwrap();
        assert!(is_invertible(&z4, &Matrix2::identity(&z4)));
        let m = Matrix2::new(e(1), e(0), e(2), e(1));
        assert!(is_invertible(&z4, &m));
        assert_eq!(inverse(&z4, &m), Some(Matrix2::new(e(1), e(0), e(2), e(1))));
        assert!(!is_invertible(&z4, &Matrix2::new(e(2), e(0), e(0), e(1))));
        assert!(is_admissible(&z4, e(1), e(3)) && is_unimodular(&z4, e(1), e(3)));
        assert!(!is_admissible(&z4, e(2), e(2)) && !is_unimodular(&z4, e(2), e(2)));
    }

    #[test]
    fn routes_agree_on_noncommutative_rings() {
        let k2 = make_gf(2).unwrap();
        let k3 = make_gf(3).unwrap();
        let t3 = make_ternions(&k2, 3).unwrap();
        let m23 = make_matrix_ring(&k3, 2).unwrap();
        for ring in [&t3, &m23] {
            let n = ring.size();
            // A deterministic sweep through a slice of M_2(R).
            for i in 0..4000usize {
                let m = Matrix2::new(
                    e((i * 7) % n),
                    e((i * 13 + 1) % n),
                    e((i * 31 + 5) % n),
                    e((i * 17 + 3) % n),
                );
                let flat = invertible_by_flattening(ring, &m).unwrap();
                assert_eq!(flat, inverse_by_search(ring, &m).is_some(), "{ring} {m:?}");
            }
        }
    }

    #[test]
    fn gl2_of_gf2_has_six_elements() {
        let k2 = make_gf(2).unwrap();
        let mut count = 0;
        for a in k2.elements() {
            for b in k2.elements() {
                for c in k2.elements() {
                    for d in k2.elements() {
                        count += is_invertible(&k2, &Matrix2::new(a, b, c, d)) as usize;
                    }
                }
            }
        }
        assert_eq!(count, 6);
    }
}
