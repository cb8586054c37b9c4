//! The projective line over a finite ring.
//!
//! Points are orbits of admissible pairs (first rows of invertible 2x2
//! matrices) under left multiplication by units. Each orbit is represented by
//! its lexicographically least member, ordered by element index with the first
//! coordinate major.
//!
//! In a finite ring a one-sided inverse is two-sided, so the nested-point
//! phenomena that occur over rings with one-sided inverses cannot arise here;
//! every admissible pair lies in exactly one orbit.

mod graph;
mod matrix;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

pub use graph::{graph_isomorphic, ComponentStats, Graph, GraphStats, ISOMORPHISM_VERTEX_BUDGET};
pub use matrix::{
    inverse, inverse_by_search, is_admissible, is_invertible, is_unimodular, Matrix2,
};

/// Largest projective line (and distant graph) that will be built.
pub const POINT_BUDGET: usize = 1024;

/// A point R(a, b) of the projective line, stored as its canonical pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    ring: u64,
    pub a: Elem,
    pub b: Elem,
}

impl ProjPoint {
    pub fn pair(&self) -> (Elem, Elem) {
        (self.a, self.b)
    }

    pub fn ring_id(&self) -> u64 {
        self.ring
    }
}

/// Canonical pair written as element indices, for JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairIndices(pub u16, pub u16);

impl From<ProjPoint> for PairIndices {
    fn from(p: ProjPoint) -> Self {
        PairIndices(p.a.0, p.b.0)
    }
}

/// All points of P(R) together with a lookup from every admissible pair to
/// its point.
pub struct ProjectiveLine {
    ring: Arc<FiniteRing>,
    points: Vec<ProjPoint>,
    lookup: HashMap<(Elem, Elem), usize>,
    distant: OnceLock<Vec<bool>>,
}

impl fmt::Debug for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectiveLine")
            .field("ring", &self.ring.name())
            .field("points", &self.points.len())
            .finish()
    }
}

impl ProjectiveLine {
    pub fn new(ring: Arc<FiniteRing>) -> Result<Self> {
        let n = ring.size();
        let units = ring.units();
        let mut seen = vec![false; n * n];
        let mut points = Vec::new();
        let mut lookup = HashMap::new();
        // Pairs are visited in lexicographic order, so the first unvisited
        // member of an orbit is its least element.
        for a in ring.elements() {
            for b in ring.elements() {
                if seen[a.index() * n + b.index()] {
                    continue;
                }
                let orbit: Vec<(Elem, Elem)> = units
                    .iter()
                    .map(|&u| (ring.mul(u, a), ring.mul(u, b)))
                    .collect();
                for &(x, y) in &orbit {
                    seen[x.index() * n + y.index()] = true;
                }
                if !is_admissible(&ring, a, b) {
                    continue;
                }
                if points.len() == POINT_BUDGET {
                    return Err(Error::Size {
                        what: "projective line",
                        size: POINT_BUDGET + 1,
                        budget: POINT_BUDGET,
                    });
                }
                for pair in orbit {
                    lookup.insert(pair, points.len());
                }
                points.push(ProjPoint {
                    ring: ring.id(),
                    a,
                    b,
                });
            }
        }
        Ok(ProjectiveLine {
            ring,
            points,
            lookup,
            distant: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        self.points[i]
    }

    fn check(&self, p: &ProjPoint) -> Result<()> {
        if p.ring != self.ring.id() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn index_of(&self, p: &ProjPoint) -> Result<usize> {
        self.check(p)?;
        self.lookup
            .get(&p.pair())
            .copied()
            .ok_or(Error::NotAdmissible)
    }

    /// Index of the point R(a, b), or `None` when (a, b) is not admissible.
    pub fn index_of_pair(&self, a: Elem, b: Elem) -> Option<usize> {
        self.lookup.get(&(a, b)).copied()
    }

    /// The point R(a, b).
    pub fn canonical(&self, a: Elem, b: Elem) -> Result<ProjPoint> {
        self.index_of_pair(a, b)
            .map(|i| self.points[i])
            .ok_or(Error::NotAdmissible)
    }

    /// Every admissible pair representing `p` (its unit orbit).
    pub fn representatives(&self, p: &ProjPoint) -> Vec<(Elem, Elem)> {
        let r = &self.ring;
        let mut reps: Vec<(Elem, Elem)> = r
            .units()
            .into_iter()
            .map(|u| (r.mul(u, p.a), r.mul(u, p.b)))
            .collect();
        reps.sort();
        reps.dedup();
        reps
    }

    fn distant_table(&self) -> &[bool] {
        self.distant.get_or_init(|| {
            let n = self.points.len();
            (0..n * n)
                .into_par_iter()
                .map(|k| {
                    let (p, q) = (self.points[k / n], self.points[k % n]);
                    is_invertible(&self.ring, &Matrix2::from_rows(p.pair(), q.pair()))
                })
                .collect()
        })
    }

    /// Distant relation by point index.
    pub fn distant_idx(&self, i: usize, j: usize) -> bool {
        self.distant_table()[i * self.points.len() + j]
    }

    /// p and q are the two rows of an invertible matrix.
    pub fn distant(&self, p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
        let (i, j) = (self.index_of(p)?, self.index_of(q)?);
        Ok(self.distant_idx(i, j))
    }

    /// The image of p under the right action of an invertible matrix.
    pub fn act(&self, m: &Matrix2, p: &ProjPoint) -> Result<ProjPoint> {
        self.check(p)?;
        if !is_invertible(&self.ring, m) {
            return Err(Error::NotInvertible);
        }
        let (x, y) = m.apply_row(&self.ring, p.pair());
        self.canonical(x, y)
            .map_err(|_| Error::Internal("image of an admissible pair is not admissible".into()))
    }

    /// Index-level action of an invertible matrix, as a permutation.
    pub fn act_permutation(&self, m: &Matrix2) -> Result<Vec<usize>> {
        self.points
            .iter()
            .map(|p| self.act(m, p).and_then(|q| self.index_of(&q)))
            .collect()
    }

    pub fn distant_graph(&self) -> Graph {
        let n = self.points.len();
        let adj = (0..n)
            .map(|i| (0..n).map(|j| self.distant_idx(i, j)).collect())
            .collect();
        Graph::new(self.points.iter().map(|p| self.label(p)).collect(), adj)
    }

    /// Points whose distant neighbourhood equals that of R(1, 0).
    pub fn radical_points(&self) -> Vec<ProjPoint> {
        let base = self
            .index_of_pair(self.ring.one(), self.ring.zero())
            .expect("R(1,0) is a point");
        let n = self.points.len();
        let row = |i: usize| (0..n).map(move |j| self.distant_idx(i, j));
        (0..n)
            .filter(|&q| row(q).eq(row(base)))
            .map(|q| self.points[q])
            .collect()
    }

    pub fn label(&self, p: &ProjPoint) -> String {
        format!("R({},{})", self.ring.label(p.a), self.ring.label(p.b))
    }
}

/// Every admissible pair of R, by exhaustive completion search.
pub fn admissible_pairs(ring: &FiniteRing) -> Vec<(Elem, Elem)> {
    ring.elements()
        .flat_map(|a| ring.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| is_admissible(ring, a, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{builtin_rings, make_double, make_dual, make_gf, make_ternions, make_zn};

    fn line(r: FiniteRing) -> ProjectiveLine {
        ProjectiveLine::new(Arc::new(r)).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(line(make_zn(4).unwrap()).len(), 6);
        assert_eq!(line(make_double(&make_gf(2).unwrap()).unwrap()).len(), 9);
        assert_eq!(line(make_gf(3).unwrap()).len(), 4);
    }

    #[test]
    fn dual_pair_is_admissible() {
        let d = make_dual(&make_gf(2).unwrap()).unwrap();
        let eps = d.elem_by_label("e").unwrap();
        let one_eps = d.elem_by_label("1+e").unwrap();
        assert!(is_admissible(&d, eps, one_eps));
    }

    #[test]
    fn distant_examples_z4() {
        let l = line(make_zn(4).unwrap());
        let p10 = l.canonical(Elem(1), Elem(0)).unwrap();
        let p01 = l.canonical(Elem(0), Elem(1)).unwrap();
        let p12 = l.canonical(Elem(1), Elem(2)).unwrap();
        assert!(l.distant(&p10, &p01).unwrap());
        assert!(!l.distant(&p10, &p12).unwrap());
    }

    #[test]
    fn ring_mismatch_detected() {
        let a = line(make_zn(4).unwrap());
        let b = line(make_zn(4).unwrap());
        let p = a.point(0);
        let q = b.point(1);
        assert_eq!(a.distant(&p, &q), Err(Error::RingMismatch));
    }

    #[test]
    fn act_examples() {
        let z4 = Arc::new(make_zn(4).unwrap());
        let l = ProjectiveLine::new(z4.clone()).unwrap();
        let id = Matrix2::identity(&z4);
        for p in l.points() {
            assert_eq!(l.act(&id, p).unwrap(), *p);
        }
        let swap = Matrix2::new(Elem(0), Elem(1), Elem(1), Elem(0));
        let p10 = l.canonical(Elem(1), Elem(0)).unwrap();
        assert_eq!(
            l.act(&swap, &p10).unwrap(),
            l.canonical(Elem(0), Elem(1)).unwrap()
        );
        let singular = Matrix2::new(Elem(2), Elem(0), Elem(0), Elem(1));
        assert_eq!(l.act(&singular, &p10), Err(Error::NotInvertible));

        // The orbit of R(1,0) under all of GL_2(Z4) is the whole line.
        let mut orbit = std::collections::BTreeSet::new();
        for a in z4.elements() {
            for b in z4.elements() {
                for c in z4.elements() {
                    for d in z4.elements() {
                        let m = Matrix2::new(a, b, c, d);
                        if is_invertible(&z4, &m) {
                            orbit.insert(l.act(&m, &p10).unwrap());
                        }
                    }
                }
            }
        }
        assert_eq!(orbit.into_iter().collect::<Vec<_>>(), l.points().to_vec());
    }

    #[test]
    fn radical_points_examples() {
        let l = line(make_zn(4).unwrap());
        let got: Vec<_> = l.radical_points().iter().map(|p| l.label(p)).collect();
        assert_eq!(got, vec!["R(1,0)", "R(1,2)"]);

        let l = line(make_double(&make_gf(2).unwrap()).unwrap());
        assert_eq!(l.radical_points().len(), 1);

        let t2 = make_ternions(&make_gf(2).unwrap(), 2).unwrap();
        let l = line(t2);
        let r = l.ring().clone();
        let strict: Vec<ProjPoint> = r
            .jacobson_radical()
            .into_iter()
            .map(|j| l.canonical(r.one(), j).unwrap())
            .collect();
        assert_eq!(strict.len(), 2);
        assert_eq!(l.radical_points(), {
            let mut s = strict;
            s.sort();
            s
        });
    }

    #[test]
    fn admissible_equals_unimodular_on_builtins() {
        for r in builtin_rings() {
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(
                        is_admissible(&r, a, b),
                        is_unimodular(&r, a, b),
                        "{r} ({a:?},{b:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        for r in builtin_rings() {
            let l = line(r);
            for p in l.points() {
                let reps = l.representatives(p);
                assert_eq!(reps[0], p.pair());
                for &(x, y) in &reps {
                    assert_eq!(l.canonical(x, y).unwrap(), *p);
                }
            }
        }
    }
}
