//! Chain geometries over finite K-algebras.
//!
//! A chain is the image of the embedded projective line over K under an
//! invertible 2x2 matrix over R. Through any three mutually distant points
//! there is exactly one chain.

mod jordan;

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pline::{inverse, Matrix2, PairIndices, ProjPoint, ProjectiveLine};
use crate::ring::{Elem, FiniteRing};

pub use jordan::{
    algebra_iso_map, antiiso_map, is_antiisomorphism, is_isomorphism, is_jordan_isomorphism,
    is_strong_jordan_system, jordan_induced_map, jordan_subspace_points, JordanMap, PointMap,
    SystemCheck,
};

/// Largest projective line for which [`ChainGeometry::all_chains`] enumerates
/// every mutually distant triple.
pub const CHAIN_POINT_BUDGET: usize = 64;

/// A chain: its points in canonical order and a matrix taking the standard
/// chain onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    points: Vec<ProjPoint>,
    witness: Matrix2,
}

impl Chain {
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn witness(&self) -> &Matrix2 {
        &self.witness
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn pairs(&self) -> Vec<PairIndices> {
        self.points.iter().map(|&p| p.into()).collect()
    }
}

/// Cross ratio of four points: a conjugacy class of R, or a marker when the
/// fourth point is not distant from the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CrossRatio {
    Affine(Vec<Elem>),
    NonAffine,
}

impl CrossRatio {
    /// Whether the class contains an element of the embedded field.
    pub fn meets_field(&self, ring: &FiniteRing) -> bool {
        match (self, ring.algebra()) {
            (CrossRatio::Affine(class), Some(alg)) => class.iter().any(|&x| alg.is_scalar(x)),
            _ => false,
        }
    }
}

/// The chain geometry of a finite K-algebra R.
#[derive(Debug)]
pub struct ChainGeometry {
    line: ProjectiveLine,
    standard: Chain,
}

impl ChainGeometry {
    pub fn new(line: ProjectiveLine) -> Result<Self> {
        let ring = line.ring().clone();
        let alg = ring.require_algebra()?;
        let mut points: Vec<ProjPoint> = alg
            .scalars()
            .iter()
            .map(|&k| line.canonical(ring.one(), k))
            .chain([line.canonical(ring.zero(), ring.one())])
            .collect::<Result<_>>()?;
        points.sort();
        let standard = Chain {
            points,
            witness: Matrix2::identity(&ring),
        };
        Ok(ChainGeometry { line, standard })
    }

    pub fn line(&self) -> &ProjectiveLine {
        &self.line
    }

    pub fn ring(&self) -> &FiniteRing {
        self.line.ring()
    }

    /// {R(1, k) : k in K} together with R(0, 1).
    pub fn standard_chain(&self) -> &Chain {
        &self.standard
    }

    /// Image of the standard chain under an invertible matrix.
    pub fn chain_image(&self, m: &Matrix2) -> Result<Chain> {
        let mut points: Vec<ProjPoint> = self
            .standard
            .points
            .iter()
            .map(|p| self.line.act(m, p))
            .collect::<Result<_>>()?;
        points.sort();
        Ok(Chain {
            points,
            witness: *m,
        })
    }

    /// A matrix taking R(1,0), R(0,1), R(1,1) to p, q, r.
    fn standard_frame(&self, p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<Matrix2> {
        let ring = self.ring();
        for (x, y) in [(p, q), (p, r), (q, r)] {
            if !self.line.distant(x, y)? {
                return Err(Error::NotDistant);
            }
        }
        let m = Matrix2::from_rows(p.pair(), q.pair());
        let m_inv = inverse(ring, &m)
            .ok_or_else(|| Error::Internal("distant rows not invertible".into()))?;
        let (x, y) = m_inv.apply_row(ring, r.pair());
        if !ring.is_unit(x) || !ring.is_unit(y) {
            return Err(Error::Internal("frame coefficients are not units".into()));
        }
        Ok(m.scale_rows(ring, x, y))
    }

    /// The unique chain through three mutually distant points.
    pub fn chain_through(&self, p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<Chain> {
        let frame = self.standard_frame(p, q, r)?;
        let chain = self.chain_image(&frame)?;
        debug_assert!(chain.contains(p) && chain.contains(q) && chain.contains(r));
        Ok(chain)
    }

    /// Mutually distant triples of point indices, i < j < k.
    pub fn distant_triples(&self) -> Vec<[usize; 3]> {
        let n = self.line.len();
        let d = |i, j| self.line.distant_idx(i, j);
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| d(i, j))
            .flat_map(|(i, j)| {
                (j + 1..n)
                    .filter(move |&k| d(i, k) && d(j, k))
                    .map(move |k| [i, j, k])
            })
            .collect()
    }

    /// Every chain exactly once, in order of their sorted point lists.
    pub fn all_chains(&self) -> Result<Vec<Chain>> {
        if self.line.len() > CHAIN_POINT_BUDGET {
            return Err(Error::Size {
                what: "chain enumeration",
                size: self.line.len(),
                budget: CHAIN_POINT_BUDGET,
            });
        }
        let pts = self.line.points();
        let found: Vec<Chain> = self
            .distant_triples()
            .into_par_iter()
            .map(|[i, j, k]| self.chain_through(&pts[i], &pts[j], &pts[k]))
            .collect::<Result<_>>()?;
        let mut unique: HashMap<Vec<ProjPoint>, Chain> = HashMap::new();
        for c in found {
            unique.entry(c.points.clone()).or_insert(c);
        }
        let mut chains: Vec<Chain> = unique.into_values().collect();
        chains.sort_by(|a, b| a.points.cmp(&b.points));
        Ok(chains)
    }

    /// The cross ratio of (p1, p2; p3, p4) as a conjugacy class.
    ///
    /// p1, p2, p3 are sent to R(1,0), R(0,1), R(1,1); if p4 lands on R(a, b)
    /// with b a unit, the class of a b^-1 is returned.
    pub fn cross_ratio(
        &self,
        p1: &ProjPoint,
        p2: &ProjPoint,
        p3: &ProjPoint,
        p4: &ProjPoint,
    ) -> Result<CrossRatio> {
        let ring = self.ring();
        self.line.index_of(p4)?;
        let frame = self.standard_frame(p1, p2, p3)?;
        let back = inverse(ring, &frame).ok_or(Error::NotInvertible)?;
        let (a, b) = back.apply_row(ring, p4.pair());
        let Some(b_inv) = ring.inverse(b) else {
            return Ok(CrossRatio::NonAffine);
        };
        Ok(CrossRatio::Affine(conjugacy_class(
            ring,
            ring.mul(a, b_inv),
        )))
    }
}

/// {u x u^-1 : u a unit}, sorted.
pub fn conjugacy_class(ring: &FiniteRing, x: Elem) -> Vec<Elem> {
    let class: BTreeSet<Elem> = ring
        .units()
        .into_iter()
        .map(|u| ring.mul(ring.mul(u, x), ring.inverse(u).expect("unit")))
        .collect();
    class.into_iter().collect()
}

/// {R(xy - 1, x) : x, y in R}, each pair checked for admissibility.
pub fn bartolone_points(line: &ProjectiveLine) -> Result<Vec<ProjPoint>> {
    let ring = line.ring();
    parametrized_points(line, &ring.elements().collect::<Vec<_>>())
}

pub(crate) fn parametrized_points(
    line: &ProjectiveLine,
    params: &[Elem],
) -> Result<Vec<ProjPoint>> {
    let ring = line.ring();
    let mut out = BTreeSet::new();
    for &x in params {
        for &y in params {
            let first = ring.sub(ring.mul(x, y), ring.one());
            out.insert(line.canonical(first, x)?);
        }
    }
    Ok(out.into_iter().collect())
}
