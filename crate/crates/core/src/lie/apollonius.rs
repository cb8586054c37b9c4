//! Cycles touching three given cycles: intersect the three tangent
//! hyperplanes of the quadric at their images, then meet the resulting line
//! with the quadric.

use nalgebra::{SMatrix, SVector};
use serde::Serialize;

use super::{from_pentacyclic, lie_form, to_pentacyclic, LieCycle, QuadricPoint};
use crate::error::{Error, Result};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-8;
/// Ratios inside this band are too close to [`RANK_TOL`] to call.
const AMBIGUOUS_BAND: (f64, f64) = (1e-10, 1e-6);
/// Coefficients of the restricted quadratic below this are zero.
const QUADRATIC_TOL: f64 = 1e-10;
/// Dedup threshold across orientation patterns.
pub const DEDUP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Degeneracy {
    /// The tangent hyperplanes meet in a projective subspace of this
    /// dimension, greater than one.
    SolutionSpace { dim: usize },
    /// The line of common conjugates lies entirely on the quadric, so every
    /// point of it is a solution.
    LineOnQuadric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub cycle: LieCycle,
    /// The line touches the quadric here instead of cutting it.
    pub double: bool,
}

impl Solution {
    /// The solution is a point, spear or infinity rather than a circle.
    pub fn is_degenerate(&self) -> bool {
        !matches!(self.cycle, LieCycle::Circle(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApolloniusResult {
    pub solutions: Vec<Solution>,
    pub degeneracy: Option<Degeneracy>,
}

fn unit_point(c: &LieCycle) -> SVector<f64, 5> {
    SVector::from(to_pentacyclic(c).normalized().0)
}

fn quad(u: &SVector<f64, 5>, v: &SVector<f64, 5>) -> f64 {
    lie_form(&QuadricPoint((*u).into()), &QuadricPoint((*v).into()))
}

/// Oriented cycles in contact with each of `c1`, `c2`, `c3`.
pub fn apollonius(c1: &LieCycle, c2: &LieCycle, c3: &LieCycle) -> Result<ApolloniusResult> {
    let mut m = SMatrix::<f64, 5, 5>::zeros();
    for (i, c) in [c1, c2, c3].into_iter().enumerate() {
        let p = unit_point(c);
        let hyperplane = [-p[0], p[1], p[2], p[3], -p[4]];
        for (j, h) in hyperplane.into_iter().enumerate() {
            m[(i, j)] = h;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Internal("SVD did not return V".into()))?;
    let sigma_max = svd.singular_values.max();
    let mut null = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        let ratio = s / sigma_max;
        if ratio > AMBIGUOUS_BAND.0 && ratio < AMBIGUOUS_BAND.1 {
            return Err(Error::RankAmbiguous { ratio });
        }
        if ratio <= RANK_TOL {
            null.push(v_t.row(k).transpose());
        }
    }
    if null.len() > 2 {
        return Ok(ApolloniusResult {
            solutions: Vec::new(),
            degeneracy: Some(Degeneracy::SolutionSpace {
                dim: null.len() - 1,
            }),
        });
    }
    if null.len() < 2 {
        return Err(Error::Internal(
            "three hyperplanes cannot have rank above 3".into(),
        ));
    }
    let (u, v) = (null[0], null[1]);

    // Q(s u + t v) = s^2 a + 2 s t b + t^2 c
    let (a, b, c) = (quad(&u, &u), quad(&u, &v), quad(&v, &v));
    if a.abs().max(b.abs()).max(c.abs()) <= QUADRATIC_TOL {
        return Ok(ApolloniusResult {
            solutions: Vec::new(),
            degeneracy: Some(Degeneracy::LineOnQuadric),
        });
    }
    let disc = b * b - a * c;
    let roots: Vec<(f64, f64)> = if disc < -QUADRATIC_TOL {
        Vec::new()
    } else if disc <= QUADRATIC_TOL {
        let q = -b;
        if q.abs() <= QUADRATIC_TOL {
            if a.abs() <= c.abs() {
                vec![(1.0, 0.0)]
            } else {
                vec![(0.0, 1.0)]
            }
        } else if a.abs() >= c.abs() {
            vec![(q, a)]
        } else {
            vec![(c, q)]
        }
    } else {
        let q = -(b + b.signum() * disc.sqrt());
        vec![(q, a), (c, q)]
    };
    let double = roots.len() == 1;
    let solutions = roots
        .into_iter()
        .map(|(s, t)| {
            let x = u * s + v * t;
            let cycle = from_pentacyclic(&QuadricPoint(x.into()))?;
            Ok(Solution { cycle, double })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ApolloniusResult {
        solutions,
        degeneracy: None,
    })
}

/// A circle without orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnorientedCircle {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllOrientations {
    pub solutions: Vec<Solution>,
    /// Orientation signs of the three inputs together with the degeneracy
    /// met for that pattern.
    pub degeneracies: Vec<([i8; 3], Degeneracy)>,
}

/// All oriented cycles touching some orientation of each input. The first
/// circle is kept counterclockwise; reversing all three inputs only reverses
/// the solutions.
pub fn apollonius_all_orientations(circles: &[UnorientedCircle; 3]) -> Result<AllOrientations> {
    for (i, c) in circles.iter().enumerate() {
        if !(c.radius > 0.0) {
            return Err(Error::InvalidCycle(format!(
                "circle {i} needs a positive radius"
            )));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if circles[i] == circles[j] {
                return Err(Error::InvalidCycle(format!("circles {i} and {j} coincide")));
            }
        }
    }
    let mut out = AllOrientations {
        solutions: Vec::new(),
        degeneracies: Vec::new(),
    };
    let mut seen: Vec<QuadricPoint> = Vec::new();
    for signs in [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
        let oriented: Vec<LieCycle> = circles
            .iter()
            .zip(signs)
            .map(|(c, s)| LieCycle::circle(c.center, f64::from(s) * c.radius))
            .collect::<Result<_>>()?;
        let r = apollonius(&oriented[0], &oriented[1], &oriented[2])?;
        if let Some(d) = r.degeneracy {
            out.degeneracies.push((signs, d));
        }
        for sol in r.solutions {
            let q = to_pentacyclic(&sol.cycle);
            if !seen.iter().any(|p| p.approx_eq(&q, DEDUP_TOL)) {
                seen.push(q);
                out.solutions.push(sol);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::in_contact;

    fn circle(x: f64, y: f64, r: f64) -> LieCycle {
        LieCycle::circle([x, y], r).unwrap()
    }

    fn radius_at(s: &Solution) -> ([f64; 2], f64) {
        match s.cycle {
            LieCycle::Circle(c) => (c.center(), c.radius()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn soddy_circles() {
        let t = 3f64.sqrt();
        let inputs = [
            circle(0.0, 0.0, 1.0),
            circle(2.0, 0.0, 1.0),
            circle(1.0, t, 1.0),
        ];
        let r = apollonius(&inputs[0], &inputs[1], &inputs[2]).unwrap();
        assert_eq!(r.degeneracy, None);
        assert_eq!(r.solutions.len(), 2);
        let mut found: Vec<_> = r.solutions.iter().map(radius_at).collect();
        found.sort_by(|a, b| a.1.total_cmp(&b.1));
        let inner = 2.0 / t - 1.0;
        let outer = 2.0 / t + 1.0;
        // Externally touching circles carry opposite orientations.
        assert!((found[0].1 + inner).abs() < 1e-9);
        assert!((found[1].1 - outer).abs() < 1e-9);
        for (m, _) in &found {
            assert!((m[0] - 1.0).abs() < 1e-9 && (m[1] - 1.0 / t).abs() < 1e-9);
        }
        for s in &r.solutions {
            assert!(inputs.iter().all(|c| in_contact(&s.cycle, c)));
        }
    }

    #[test]
    fn repeated_input_is_degenerate() {
        let c = circle(0.0, 0.0, 1.0);
        let r = apollonius(&c, &c, &circle(3.0, 0.0, 1.0)).unwrap();
        assert_eq!(r.degeneracy, Some(Degeneracy::SolutionSpace { dim: 2 }));
        assert!(r.solutions.is_empty());
    }

    #[test]
    fn nested_circles_have_no_common_contact() {
        // The small circle sits strictly inside the others, so no oriented
        // circle touches all three with these orientations.
        let r = apollonius(
            &circle(0.0, 0.0, 1.0),
            &circle(0.0, 0.0, 2.0),
            &circle(0.0, 0.0, 3.0),
        )
        .unwrap();
        assert!(r.solutions.is_empty());
    }

    #[test]
    fn concentric_all_orientations_is_empty() {
        let cs = [1.0, 2.0, 3.0].map(|r| UnorientedCircle {
            center: [0.0, 0.0],
            radius: r,
        });
        let r = apollonius_all_orientations(&cs).unwrap();
        assert!(r.solutions.is_empty());
        assert!(r.degeneracies.is_empty());
    }

    #[test]
    fn general_position_has_eight() {
        let cs = [[0.0, 0.0], [6.0, 0.0], [3.0, 5.0]].map(|m| UnorientedCircle {
            center: m,
            radius: 1.0,
        });
        let r = apollonius_all_orientations(&cs).unwrap();
        assert_eq!(r.solutions.len(), 8);
        assert!(r.degeneracies.is_empty());
        for s in &r.solutions {
            assert!(!s.is_degenerate());
            for c in &cs {
                let (m, rho) = radius_at(s);
                let d = (m[0] - c.center[0]).hypot(m[1] - c.center[1]);
                let touches = (d - (rho.abs() + c.radius)).abs() < 1e-9
                    || (d - (rho.abs() - c.radius).abs()).abs() < 1e-9;
                assert!(touches);
            }
        }
    }

    #[test]
    fn spear_solutions_are_flagged() {
        // Three equal counterclockwise circles on a line share two common
        // oriented tangents.
        let r = apollonius(
            &circle(0.0, 0.0, 1.0),
            &circle(3.0, 0.0, 1.0),
            &circle(7.0, 0.0, 1.0),
        )
        .unwrap();
        let spears = r
            .solutions
            .iter()
            .filter(|s| matches!(s.cycle, LieCycle::Spear(_)))
            .count();
        assert_eq!(spears, 2);
        assert!(r.solutions.iter().all(Solution::is_degenerate));
    }
}
