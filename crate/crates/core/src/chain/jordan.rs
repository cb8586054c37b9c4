//! Maps of chain geometries induced by isomorphisms, antiisomorphisms and
//! Jordan isomorphisms of the underlying algebras, and point sets of Jordan
//! systems.

use std::sync::Arc;

use serde::Serialize;

use super::{parametrized_points, Chain};
use crate::error::{Error, Result};
use crate::pline::{ProjPoint, ProjectiveLine};
use crate::ring::{is_additive, is_bijection, is_k_linear, Elem, FiniteRing};

/// A bijection between the element sets of two rings, as an index table.
#[derive(Debug, Clone)]
pub struct JordanMap {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    table: Vec<Elem>,
}

impl JordanMap {
    /// Wraps `table` after checking it is a Jordan isomorphism.
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, table: Vec<Elem>) -> Result<Self> {
        if !is_jordan_isomorphism(&source, &target, &table) {
            return Err(Error::InvalidMap("a Jordan isomorphism"));
        }
        Ok(JordanMap {
            source,
            target,
            table,
        })
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }
}

fn is_linear(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    match (src.algebra(), dst.algebra()) {
        (Some(a), Some(b)) if a.field().size() == b.field().size() => {
            is_k_linear(src, dst, alpha).unwrap_or(false)
        }
        _ => is_additive(src, dst, alpha),
    }
}

fn is_linear_unital_bijection(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    is_bijection(src, dst, alpha)
        && alpha[src.one().index()] == dst.one()
        && is_linear(src, dst, alpha)
}

/// Unital linear bijection with (aba)^alpha = a^alpha b^alpha a^alpha.
pub fn is_jordan_isomorphism(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    if !is_linear_unital_bijection(src, dst, alpha) {
        return false;
    }
    let f = |x: Elem| alpha[x.index()];
    src.elements().all(|a| {
        src.elements().all(|b| {
            let aba = src.mul(src.mul(a, b), a);
            f(aba) == dst.mul(dst.mul(f(a), f(b)), f(a))
        })
    })
}

pub fn is_isomorphism(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    is_linear_unital_bijection(src, dst, alpha)
        && src.elements().all(|a| {
            src.elements().all(|b| {
                alpha[src.mul(a, b).index()] == dst.mul(alpha[a.index()], alpha[b.index()])
            })
        })
}

pub fn is_antiisomorphism(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    is_linear_unital_bijection(src, dst, alpha)
        && src.elements().all(|a| {
            src.elements().all(|b| {
                alpha[src.mul(a, b).index()] == dst.mul(alpha[b.index()], alpha[a.index()])
            })
        })
}

/// A map between two projective lines, by point index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointMap {
    pub images: Vec<usize>,
}

impl PointMap {
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_bijective(&self, target_len: usize) -> bool {
        if self.images.len() != target_len {
            return false;
        }
        let mut seen = vec![false; target_len];
        self.images
            .iter()
            .all(|&j| j < target_len && !std::mem::replace(&mut seen[j], true))
    }

    /// p distant q  iff  image(p) distant image(q), for all pairs.
    pub fn preserves_distant(&self, src: &ProjectiveLine, dst: &ProjectiveLine) -> bool {
        let n = self.images.len();
        (0..n).all(|i| {
            (0..n).all(|j| src.distant_idx(i, j) == dst.distant_idx(self.images[i], self.images[j]))
        })
    }

    /// The image of every source chain is a target chain, and the images
    /// exhaust the target chains.
    pub fn maps_chains_onto(
        &self,
        src: &ProjectiveLine,
        dst: &ProjectiveLine,
        src_chains: &[Chain],
        dst_chains: &[Chain],
    ) -> Result<bool> {
        let mut targets: Vec<Vec<ProjPoint>> =
            dst_chains.iter().map(|c| c.points().to_vec()).collect();
        targets.sort();
        let mut images = Vec::with_capacity(src_chains.len());
        for c in src_chains {
            let mut img: Vec<ProjPoint> = c
                .points()
                .iter()
                .map(|p| src.index_of(p).map(|i| dst.point(self.images[i])))
                .collect::<Result<_>>()?;
            img.sort();
            if targets.binary_search(&img).is_err() {
                return Ok(false);
            }
            images.push(img);
        }
        images.sort();
        images.dedup();
        Ok(images == targets)
    }
}

fn check_lines(map: &JordanMap, src: &ProjectiveLine, dst: &ProjectiveLine) -> Result<()> {
    if src.ring().id() != map.source.id() || dst.ring().id() != map.target.id() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// The point map R(xy - 1, x) -> R'(x' y' - 1', x') with x' = x^alpha.
///
/// Every parametrisation of every point is evaluated and the images are
/// required to agree.
pub fn jordan_induced_map(
    map: &JordanMap,
    src: &ProjectiveLine,
    dst: &ProjectiveLine,
) -> Result<PointMap> {
    check_lines(map, src, dst)?;
    let (r, s) = (src.ring(), dst.ring());
    let mut images: Vec<Option<usize>> = vec![None; src.len()];
    for x in r.elements() {
        for y in r.elements() {
            let p = src
                .index_of_pair(r.sub(r.mul(x, y), r.one()), x)
                .ok_or(Error::NotAdmissible)?;
            let (xa, ya) = (map.apply(x), map.apply(y));
            let q = dst
                .index_of_pair(s.sub(s.mul(xa, ya), s.one()), xa)
                .ok_or(Error::NotAdmissible)?;
            match images[p] {
                None => images[p] = Some(q),
                Some(prev) if prev == q => {}
                Some(_) => {
                    return Err(Error::WellDefinedness {
                        point: src.label(&src.point(p)),
                    })
                }
            }
        }
    }
    let images = images
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("parametrised points do not cover the line".into()))?;
    Ok(PointMap { images })
}

/// R(a, b) -> R'(a^alpha, b^alpha) for an algebra isomorphism alpha.
pub fn algebra_iso_map(
    map: &JordanMap,
    src: &ProjectiveLine,
    dst: &ProjectiveLine,
) -> Result<PointMap> {
    check_lines(map, src, dst)?;
    if !is_isomorphism(&map.source, &map.target, &map.table) {
        return Err(Error::InvalidMap("an algebra isomorphism"));
    }
    let images = src
        .points()
        .iter()
        .map(|p| {
            dst.index_of_pair(map.apply(p.a), map.apply(p.b))
                .ok_or(Error::NotAdmissible)
        })
        .collect::<Result<_>>()?;
    Ok(PointMap { images })
}

/// Point map of an antiisomorphism of local algebras, via the normalised
/// representatives (1, b) -> (1', b^alpha) and (a, 1) -> (a^alpha, 1').
pub fn antiiso_map(
    map: &JordanMap,
    src: &ProjectiveLine,
    dst: &ProjectiveLine,
) -> Result<PointMap> {
    check_lines(map, src, dst)?;
    let (r, s) = (src.ring(), dst.ring());
    if !r.is_local() {
        return Err(Error::NotLocal(r.name().to_string()));
    }
    if !is_antiisomorphism(r, s, &map.table) {
        return Err(Error::InvalidMap("an antiisomorphism"));
    }
    let mut images = Vec::with_capacity(src.len());
    for p in src.points() {
        let mut candidates = Vec::new();
        if let Some(ai) = r.inverse(p.a) {
            candidates.push((s.one(), map.apply(r.mul(ai, p.b))));
        }
        if let Some(bi) = r.inverse(p.b) {
            candidates.push((map.apply(r.mul(bi, p.a)), s.one()));
        }
        let idx: Vec<usize> = candidates
            .into_iter()
            .map(|(a, b)| dst.index_of_pair(a, b).ok_or(Error::NotAdmissible))
            .collect::<Result<_>>()?;
        match idx.as_slice() {
            [q] => images.push(*q),
            [q1, q2] if q1 == q2 => images.push(*q1),
            [_, _] => {
                return Err(Error::WellDefinedness {
                    point: src.label(p),
                })
            }
            _ => {
                return Err(Error::Internal(
                    "point of a local ring without unit coordinate".into(),
                ))
            }
        }
    }
    Ok(PointMap { images })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SystemCheck {
    pub is_system: bool,
    pub is_strong: bool,
}

/// Checks that S is a K-subspace containing 1 and closed under inverses of
/// its units, and whether every coset x + K is more than half invertible.
pub fn is_strong_jordan_system(ring: &FiniteRing, subset: &[Elem]) -> Result<SystemCheck> {
    let alg = ring.require_algebra()?;
    let mut member = vec![false; ring.size()];
    for &s in subset {
        member[s.index()] = true;
    }
    let inside = |x: Elem| member[x.index()];
    let subspace = inside(ring.zero())
        && subset
            .iter()
            .all(|&a| subset.iter().all(|&b| inside(ring.add(a, b))))
        && subset
            .iter()
            .all(|&a| alg.scalars().iter().all(|&k| inside(ring.mul(k, a))));
    let inverse_closed = subset.iter().all(|&a| ring.inverse(a).is_none_or(inside));
    let is_system = subspace && inside(ring.one()) && inverse_closed;

    let q = alg.scalars().len();
    let majority = ring.elements().all(|x| {
        let units = alg
            .scalars()
            .iter()
            .filter(|&&k| ring.is_unit(ring.add(x, k)))
            .count();
        2 * units > q
    });
    Ok(SystemCheck {
        is_system,
        is_strong: is_system && majority,
    })
}

/// P(S) = {R(xy - 1, x) : x, y in S}. For strong systems the Jordan triple
/// closure aba in S is asserted as well.
pub fn jordan_subspace_points(line: &ProjectiveLine, subset: &[Elem]) -> Result<Vec<ProjPoint>> {
    let ring = line.ring();
    let check = is_strong_jordan_system(ring, subset)?;
    if !check.is_system {
        return Err(Error::NotASystem);
    }
    if check.is_strong {
        let mut member = vec![false; ring.size()];
        for &s in subset {
            member[s.index()] = true;
        }
        for &a in subset {
            for &b in subset {
                if !member[ring.mul(ring.mul(a, b), a).index()] {
                    return Err(Error::Internal(format!(
                        "strong Jordan system not closed under aba at a={}, b={}",
                        ring.label(a),
                        ring.label(b)
                    )));
                }
            }
        }
    }
    parametrized_points(line, subset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{bartolone_points, ChainGeometry};
    use crate::ring::{make_dual, make_gf, make_matrix_ring, make_product, make_zn};

    fn identity(r: &FiniteRing) -> Vec<Elem> {
        r.elements().collect()
    }

    fn transpose(m: &FiniteRing) -> Vec<Elem> {
        m.elements()
            .map(|x| {
                let e = m.matrix_entries(x).unwrap();
                m.matrix_from_entries(&[e[0], e[2], e[1], e[3]]).unwrap()
            })
            .collect()
    }

    #[test]
    fn jordan_examples() {
        let m = make_matrix_ring(&make_gf(2).unwrap(), 2).unwrap();
        assert!(is_jordan_isomorphism(&m, &m, &identity(&m)));
        let t = transpose(&m);
        assert!(is_jordan_isomorphism(&m, &m, &t));
        assert!(is_antiisomorphism(&m, &m, &t));
        assert!(!is_isomorphism(&m, &m, &t));
    }

    #[test]
    fn proper_jordan_map_on_product() {
        let m = make_matrix_ring(&make_gf(2).unwrap(), 2).unwrap();
        let p = make_product(&m, &m).unwrap();
        let t = transpose(&m);
        let n = m.size();
        let alpha: Vec<Elem> = p
            .elements()
            .map(|x| Elem::from((x.index() / n) * n + t[x.index() % n].index()))
            .collect();
        assert!(is_jordan_isomorphism(&p, &p, &alpha));
        assert!(!is_isomorphism(&p, &p, &alpha));
        assert!(!is_antiisomorphism(&p, &p, &alpha));
    }

    #[test]
    fn non_jordan_bijection_rejected() {
        let z4 = make_zn(4).unwrap();
        let swap = vec![Elem(0), Elem(3), Elem(2), Elem(1)];
        // x -> -x is additive but does not fix 1.
        assert!(!is_jordan_isomorphism(&z4, &z4, &swap));
        let arc = Arc::new(z4);
        assert!(JordanMap::new(arc.clone(), arc, swap).is_err());
    }

    #[test]
    fn identity_induces_identity() {
        let r = Arc::new(make_dual(&make_gf(3).unwrap()).unwrap());
        let l = ProjectiveLine::new(r.clone()).unwrap();
        let map = JordanMap::new(r.clone(), r.clone(), identity(&r)).unwrap();
        assert!(jordan_induced_map(&map, &l, &l).unwrap().is_identity());
        assert!(algebra_iso_map(&map, &l, &l).unwrap().is_identity());
        assert!(antiiso_map(&map, &l, &l).unwrap().is_identity());
    }

    #[test]
    fn transpose_needs_jordan_route() {
        let m = Arc::new(make_matrix_ring(&make_gf(2).unwrap(), 2).unwrap());
        let l = ProjectiveLine::new(m.clone()).unwrap();
        let map = JordanMap::new(m.clone(), m.clone(), transpose(&m)).unwrap();
        assert_eq!(
            antiiso_map(&map, &l, &l),
            Err(Error::NotLocal("M2(GF(2))".into()))
        );
        assert!(matches!(
            algebra_iso_map(&map, &l, &l),
            Err(Error::InvalidMap(_))
        ));
        let induced = jordan_induced_map(&map, &l, &l).unwrap();
        assert_eq!(l.len(), 35);
        assert!(induced.is_bijective(35));
        assert!(induced.preserves_distant(&l, &l));
    }

    #[test]
    fn strong_systems() {
        let k3 = make_gf(3).unwrap();
        let d3 = make_dual(&k3).unwrap();
        let all: Vec<Elem> = d3.elements().collect();
        assert_eq!(
            is_strong_jordan_system(&d3, &all).unwrap(),
            SystemCheck {
                is_system: true,
                is_strong: true
            }
        );
        let d2 = make_dual(&make_gf(2).unwrap()).unwrap();
        let all2: Vec<Elem> = d2.elements().collect();
        assert!(!is_strong_jordan_system(&d2, &all2).unwrap().is_strong);

        let m3 = make_matrix_ring(&k3, 2).unwrap();
        let sym: Vec<Elem> = m3
            .elements()
            .filter(|&x| {
                let e = m3.matrix_entries(x).unwrap();
                e[1] == e[2]
            })
            .collect();
        assert_eq!(
            is_strong_jordan_system(&m3, &sym).unwrap(),
            SystemCheck {
                is_system: true,
                is_strong: false
            }
        );

        // Not containing 1.
        let eps = d3.elem_by_label("e").unwrap();
        let span_eps = vec![d3.zero(), eps, d3.add(eps, eps)];
        assert!(!is_strong_jordan_system(&d3, &span_eps).unwrap().is_system);
        let l = ProjectiveLine::new(Arc::new(d3.clone())).unwrap();
        assert_eq!(
            jordan_subspace_points(&l, &span_eps),
            Err(Error::NotASystem)
        );
    }

    #[test]
    fn subspace_points_examples() {
        let d3 = Arc::new(make_dual(&make_gf(3).unwrap()).unwrap());
        let l = ProjectiveLine::new(d3.clone()).unwrap();
        let all: Vec<Elem> = d3.elements().collect();
        assert_eq!(
            jordan_subspace_points(&l, &all).unwrap(),
            bartolone_points(&l).unwrap()
        );
        let k: Vec<Elem> = d3.algebra().unwrap().scalars().to_vec();
        let g = ChainGeometry::new(ProjectiveLine::new(d3.clone()).unwrap()).unwrap();
        let pts = jordan_subspace_points(&l, &k).unwrap();
        let labels = |ps: &[ProjPoint], l: &ProjectiveLine| -> Vec<String> {
            ps.iter().map(|p| l.label(p)).collect()
        };
        assert_eq!(
            labels(&pts, &l),
            labels(g.standard_chain().points(), g.line())
        );
    }
}
