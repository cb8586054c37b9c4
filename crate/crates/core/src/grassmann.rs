//! The projective line over M_n(K) as the Grassmannian of n-subspaces of
//! K^2n: R(A, B) corresponds to the row space of the n x 2n matrix (A | B).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;
use crate::pline::{ProjPoint, ProjectiveLine};
use crate::ring::{Elem, FiniteRing, RingKind};

/// A subspace of K^ambient given by its reduced row echelon basis.
#[derive(Clone)]
pub struct Subspace {
    field: Arc<FiniteRing>,
    basis: FieldMatrix,
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(field: Arc<FiniteRing>, mut m: FieldMatrix) -> Self {
        let rank = m.rref(&field).len();
        let basis = FieldMatrix::from_rows((0..rank).map(|i| m.row(i).to_vec()).collect());
        let basis = if rank == 0 {
            FieldMatrix::zeros(&field, 0, m.cols)
        } else {
            basis
        };
        Subspace { field, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Vec<u16>> {
        (0..self.basis.rows)
            .map(|i| self.basis.row(i).iter().map(|e| e.0).collect())
            .collect()
    }

    fn key(&self) -> (usize, &FieldMatrix) {
        (self.field.size(), &self.basis)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.rows())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.basis.rows {
            let row: Vec<&str> = self
                .basis
                .row(i)
                .iter()
                .map(|&e| self.field.label(e))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The matrix size n and field K when `ring` is M_n(K) (a field counts as
/// M_1(K)).
pub fn matrix_shape(ring: &Arc<FiniteRing>) -> Result<(usize, Arc<FiniteRing>)> {
    match ring.kind() {
        RingKind::Matrix { n, field } => Ok((*n, field.clone())),
        _ if ring.is_field() => Ok((1, ring.clone())),
        _ => Err(Error::WrongRingKind(format!(
            "{} is not a full matrix ring over a field",
            ring.name()
        ))),
    }
}

/// Row space of (A | B) for the point R(A, B).
pub fn to_subspace(line: &ProjectiveLine, p: &ProjPoint) -> Result<Subspace> {
    line.index_of(p)?;
    let ring = line.ring();
    let (n, field) = matrix_shape(ring)?;
    let entries = |x: Elem| -> Vec<Elem> { ring.matrix_entries(x).unwrap_or_else(|| vec![x]) };
    let (a, b) = (entries(p.a), entries(p.b));
    let rows = (0..n)
        .map(|i| {
            a[i * n..(i + 1) * n]
                .iter()
                .chain(&b[i * n..(i + 1) * n])
                .copied()
                .collect()
        })
        .collect();
    let s = Subspace::row_space(field, FieldMatrix::from_rows(rows));
    if s.dim() != n {
        return Err(Error::Internal(
            "admissible pair has a rank-deficient block".into(),
        ));
    }
    Ok(s)
}

/// Whether U + V is the whole ambient space and U, V meet trivially.
pub fn is_complementary(u: &Subspace, v: &Subspace) -> Result<bool> {
    if u.ambient() != v.ambient() || u.field.size() != v.field.size() {
        return Err(Error::DimensionMismatch(
            "subspaces live in different spaces".into(),
        ));
    }
    if u.dim() != v.dim() || 2 * u.dim() != u.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "expected two {}-subspaces of a {}-space",
            u.ambient() / 2,
            u.ambient()
        )));
    }
    Ok(u.basis.stack(&v.basis).rank(&u.field) == u.ambient())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// Every k-subspace of K^ambient, listed through its reduced echelon form:
/// choose pivot columns, then fill each free slot right of a pivot with every
/// field element.
pub fn all_subspaces(field: &Arc<FiniteRing>, ambient: usize, k: usize) -> Vec<Subspace> {
    let q = field.size();
    let mut out = Vec::new();
    for pivots in combinations(ambient, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = pivots.clone();
                (pivots[i] + 1..ambient)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        for code in 0..q.pow(free.len() as u32) {
            let mut m = FieldMatrix::zeros(field, k, ambient);
            for (i, &c) in pivots.iter().enumerate() {
                m.set(i, c, field.one());
            }
            let mut rest = code;
            for &(i, c) in &free {
                m.set(i, c, Elem::from(rest % q));
                rest /= q;
            }
            out.push(Subspace {
                field: field.clone(),
                basis: m,
            });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_gf, make_matrix_ring, make_zn};

    fn gaussian_binomial(q: usize, n: usize, k: usize) -> usize {
        let num: usize = (0..k).map(|i| q.pow((n - i) as u32) - 1).product();
        let den: usize = (0..k).map(|i| q.pow((k - i) as u32) - 1).product();
        num / den
    }

    #[test]
    fn echelon_enumeration_counts() {
        let f2 = Arc::new(make_gf(2).unwrap());
        let f3 = Arc::new(make_gf(3).unwrap());
        assert_eq!(all_subspaces(&f2, 4, 2).len(), gaussian_binomial(2, 4, 2));
        assert_eq!(all_subspaces(&f2, 4, 2).len(), 35);
        assert_eq!(all_subspaces(&f3, 4, 2).len(), 130);
        assert_eq!(all_subspaces(&f2, 2, 1).len(), 3);
    }

    #[test]
    fn identity_block_maps_to_first_coordinates() {
        let m = Arc::new(make_matrix_ring(&make_gf(2).unwrap(), 2).unwrap());
        let l = ProjectiveLine::new(m.clone()).unwrap();
        let p = l.canonical(m.one(), m.zero()).unwrap();
        let s = to_subspace(&l, &p).unwrap();
        assert_eq!(s.rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let q = l.canonical(m.zero(), m.one()).unwrap();
        let t = to_subspace(&l, &q).unwrap();
        assert!(is_complementary(&s, &t).unwrap());
        assert!(!is_complementary(&s, &s).unwrap());
    }

    #[test]
    fn classical_line_over_gf2() {
        let f = Arc::new(make_gf(2).unwrap());
        let l = ProjectiveLine::new(f.clone()).unwrap();
        let mut image: Vec<Subspace> = l
            .points()
            .iter()
            .map(|p| to_subspace(&l, p).unwrap())
            .collect();
        image.sort();
        assert_eq!(image, all_subspaces(&f, 2, 1));
    }

    #[test]
    fn rejects_other_rings() {
        let l = ProjectiveLine::new(Arc::new(make_zn(4).unwrap())).unwrap();
        assert!(matches!(
            to_subspace(&l, &l.point(0)),
            Err(Error::WrongRingKind(_))
        ));
        let f2 = Arc::new(make_gf(2).unwrap());
        let a = &all_subspaces(&f2, 4, 2)[0];
        let b = &all_subspaces(&f2, 2, 1)[0];
        assert!(matches!(
            is_complementary(a, b),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
