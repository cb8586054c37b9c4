//! Lie's oriented circle geometry of the Euclidean plane.
//!
//! Oriented circles, points, oriented lines (spears) and the point at
//! infinity are mapped to points of the Lie quadric
//! `-x0^2 + x1^2 + x2^2 + x3^2 - x4^2 = 0` in real projective 4-space. Two
//! cycles are in oriented contact exactly when their images are conjugate
//! under the bilinear form `diag(-1, 1, 1, 1, -1)`.

mod apollonius;
mod scene;
mod svg;

use std::fmt;

use crate::error::{Error, Result};

pub use apollonius::{
    apollonius, apollonius_all_orientations, AllOrientations, ApolloniusResult, Degeneracy,
    Solution, UnorientedCircle,
};
pub use scene::{CycleJson, Scene};
pub use svg::{render_svg, DrawStyle};

/// Contact decisions on unit-normalised representatives.
pub const CONTACT_TOL: f64 = 1e-9;
/// Quadric residual accepted by [`from_pentacyclic`].
pub const QUADRIC_TOL: f64 = 1e-12;
/// Zero test for coordinates when choosing the branch in [`from_pentacyclic`].
pub const BRANCH_TOL: f64 = 1e-10;

const HESSE_TOL: f64 = 1e-12;

/// An oriented circle; a positive radius means counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    center: [f64; 2],
    radius: f64,
}

impl Circle {
    pub fn center(&self) -> [f64; 2] {
        self.center
    }

    /// Signed radius, never zero.
    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// An oriented line `a0 + a1 x + a2 y = 0` with `a1^2 + a2^2 = 1`; its
/// direction is `(-a2, a1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spear {
    a: [f64; 3],
}

impl Spear {
    pub fn coefficients(&self) -> [f64; 3] {
        self.a
    }

    pub fn direction(&self) -> [f64; 2] {
        [-self.a[2], self.a[1]]
    }

    /// The point of the line closest to the origin.
    pub fn foot(&self) -> [f64; 2] {
        [-self.a[0] * self.a[1], -self.a[0] * self.a[2]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LieCycle {
    Circle(Circle),
    Point([f64; 2]),
    Spear(Spear),
    Infinity,
}

fn finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidCycle("non-finite coordinate".into()))
    }
}

impl LieCycle {
    pub fn circle(center: [f64; 2], radius: f64) -> Result<Self> {
        finite(&[center[0], center[1], radius])?;
        if radius == 0.0 {
            return Err(Error::InvalidCycle("circle radius must be nonzero".into()));
        }
        Ok(LieCycle::Circle(Circle { center, radius }))
    }

    pub fn point(at: [f64; 2]) -> Result<Self> {
        finite(&at)?;
        Ok(LieCycle::Point(at))
    }

    /// The line through `point` oriented along `dir`.
    pub fn spear_through(point: [f64; 2], dir: [f64; 2]) -> Result<Self> {
        finite(&[point[0], point[1], dir[0], dir[1]])?;
        let len = dir[0].hypot(dir[1]);
        if len == 0.0 {
            return Err(Error::InvalidCycle(
                "spear direction must be nonzero".into(),
            ));
        }
        let (t1, t2) = (dir[0] / len, dir[1] / len);
        // (-a2, a1) = (t1, t2)
        let (a1, a2) = (t2, -t1);
        let a0 = -(a1 * point[0] + a2 * point[1]);
        Ok(LieCycle::Spear(Spear { a: [a0, a1, a2] }))
    }

    /// The line `a0 + a1 x + a2 y = 0`, rescaled to Hesse normal form with the
    /// sign chosen so that `(-a2, a1)` points along `dir`.
    pub fn spear_from_equation(a: [f64; 3], dir: [f64; 2]) -> Result<Self> {
        finite(&[a[0], a[1], a[2], dir[0], dir[1]])?;
        let len = a[1].hypot(a[2]);
        if len == 0.0 {
            return Err(Error::InvalidCycle("line equation has zero normal".into()));
        }
        let along = -a[2] * dir[0] + a[1] * dir[1];
        if along == 0.0 {
            return Err(Error::InvalidCycle(
                "direction is perpendicular to the line".into(),
            ));
        }
        let s = along.signum() / len;
        Ok(LieCycle::Spear(Spear {
            a: [a[0] * s, a[1] * s, a[2] * s],
        }))
    }

    /// A spear from coefficients already in Hesse normal form.
    pub fn spear_hesse(a: [f64; 3]) -> Result<Self> {
        finite(&a)?;
        if (a[1] * a[1] + a[2] * a[2] - 1.0).abs() > HESSE_TOL {
            return Err(Error::InvalidCycle("a1^2 + a2^2 must equal 1".into()));
        }
        Ok(LieCycle::Spear(Spear { a }))
    }

    /// Same cycle with the opposite orientation (points and infinity are
    /// unchanged).
    pub fn flipped(&self) -> Self {
        match *self {
            LieCycle::Circle(c) => LieCycle::Circle(Circle {
                radius: -c.radius,
                ..c
            }),
            LieCycle::Spear(s) => LieCycle::Spear(Spear {
                a: [-s.a[0], -s.a[1], -s.a[2]],
            }),
            other => other,
        }
    }

    /// Points and infinity, the carriers of Möbius geometry.
    pub fn is_mobius_point(&self) -> bool {
        matches!(self, LieCycle::Point(_) | LieCycle::Infinity)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LieCycle::Circle(_) => "circle",
            LieCycle::Point(_) => "point",
            LieCycle::Spear(_) => "spear",
            LieCycle::Infinity => "infinity",
        }
    }
}

impl fmt::Display for LieCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieCycle::Circle(c) => write!(
                f,
                "circle m=({}, {}) r={}",
                c.center[0], c.center[1], c.radius
            ),
            LieCycle::Point(p) => write!(f, "point ({}, {})", p[0], p[1]),
            LieCycle::Spear(s) => write!(f, "spear {} + {} x + {} y = 0", s.a[0], s.a[1], s.a[2]),
            LieCycle::Infinity => f.write_str("infinity"),
        }
    }
}

/// A point of real projective 4-space as a nonzero 5-tuple up to scale.
#[derive(Debug, Clone, Copy)]
pub struct QuadricPoint(pub [f64; 5]);

impl QuadricPoint {
    pub fn coords(&self) -> [f64; 5] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Representative with Euclidean norm 1.
    pub fn normalized(&self) -> QuadricPoint {
        let n = self.norm();
        QuadricPoint(self.0.map(|x| x / n))
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn canonical(&self) -> QuadricPoint {
        let unit = self.normalized();
        let lead = unit
            .0
            .iter()
            .copied()
            .find(|x| x.abs() > BRANCH_TOL)
            .unwrap_or(1.0);
        QuadricPoint(self.0.map(|x| x / (lead * self.norm())))
    }

    /// `-x0^2 + x1^2 + x2^2 + x3^2 - x4^2` of the unit representative.
    pub fn residual(&self) -> f64 {
        let u = self.normalized();
        lie_form(&u, &u)
    }

    /// Equal as projective points: unit representatives agree up to sign.
    pub fn approx_eq(&self, other: &QuadricPoint, tol: f64) -> bool {
        let (u, v) = (self.normalized().0, other.normalized().0);
        let same = u.iter().zip(&v).all(|(a, b)| (a - b).abs() <= tol);
        let opposite = u.iter().zip(&v).all(|(a, b)| (a + b).abs() <= tol);
        same || opposite
    }
}

impl PartialEq for QuadricPoint {
    /// Projective equality at [`BRANCH_TOL`].
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, BRANCH_TOL)
    }
}

/// The pseudo-Euclidean product `-p0 q0 + p1 q1 + p2 q2 + p3 q3 - p4 q4` of
/// the stored representatives.
pub fn lie_form(p: &QuadricPoint, q: &QuadricPoint) -> f64 {
    let (p, q) = (p.0, q.0);
    -p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3] - p[4] * q[4]
}

/// Pentacyclic coordinates of a cycle.
pub fn to_pentacyclic(c: &LieCycle) -> QuadricPoint {
    match *c {
        LieCycle::Circle(Circle { center, radius }) => circle_coords(center, radius),
        LieCycle::Point(at) => circle_coords(at, 0.0),
        LieCycle::Spear(Spear { a }) => QuadricPoint([-a[0], a[0], a[1], a[2], 1.0]),
        LieCycle::Infinity => QuadricPoint([-1.0, 1.0, 0.0, 0.0, 0.0]),
    }
}

fn circle_coords(m: [f64; 2], r: f64) -> QuadricPoint {
    let n = m[0] * m[0] + m[1] * m[1] - r * r;
    QuadricPoint([(1.0 + n) / 2.0, (1.0 - n) / 2.0, m[0], m[1], 0.0 - r])
}

/// The cycle whose image is `q`.
pub fn from_pentacyclic(q: &QuadricPoint) -> Result<LieCycle> {
    if !q.0.iter().all(|x| x.is_finite()) || q.norm() == 0.0 {
        return Err(Error::InvalidCycle(
            "quadric point must be finite and nonzero".into(),
        ));
    }
    let residual = q.residual();
    if residual.abs() > QUADRIC_TOL {
        return Err(Error::NotOnQuadric { residual });
    }
    let u = q.normalized().0;
    let s = u[0] + u[1];
    if s.abs() > BRANCH_TOL {
        let center = [u[2] / s, u[3] / s];
        if u[4].abs() <= BRANCH_TOL {
            return LieCycle::point(center);
        }
        return LieCycle::circle(center, -u[4] / s);
    }
    if u[4].abs() > BRANCH_TOL {
        let a = [u[1] / u[4], u[2] / u[4], u[3] / u[4]];
        let len = a[1].hypot(a[2]);
        return Ok(LieCycle::Spear(Spear {
            a: [a[0] / len, a[1] / len, a[2] / len],
        }));
    }
    Ok(LieCycle::Infinity)
}

/// Oriented contact: the unit-normalised images are conjugate.
pub fn in_contact(c1: &LieCycle, c2: &LieCycle) -> bool {
    let (p, q) = (
        to_pentacyclic(c1).normalized(),
        to_pentacyclic(c2).normalized(),
    );
    lie_form(&p, &q).abs() <= CONTACT_TOL
}

/// Membership of a point (or infinity) `x` in the Möbius circle determined by
/// the non-point cycle `y`.
pub fn mobius_chain_contains(x: &LieCycle, y: &LieCycle) -> Result<bool> {
    if !x.is_mobius_point() {
        return Err(Error::Domain(format!(
            "{} is not a point or infinity",
            x.kind()
        )));
    }
    if y.is_mobius_point() {
        return Err(Error::Domain(
            "the chain must be given by a circle or spear".into(),
        ));
    }
    Ok(in_contact(x, y))
}

/// Membership of the spear `x` in the Laguerre chain of spears touching the
/// circle or point `y`.
pub fn laguerre_chain_contains(x: &LieCycle, y: &LieCycle) -> Result<bool> {
    if !matches!(x, LieCycle::Spear(_)) {
        return Err(Error::Domain(format!("{} is not a spear", x.kind())));
    }
    if !matches!(y, LieCycle::Circle(_) | LieCycle::Point(_)) {
        return Err(Error::Domain(
            "the chain must be given by a circle or point".into(),
        ));
    }
    Ok(in_contact(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: [f64; 5], b: [f64; 5]) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-15)
    }

    #[test]
    fn coordinate_examples() {
        assert!(close(
            to_pentacyclic(&LieCycle::Infinity).0,
            [-1.0, 1.0, 0.0, 0.0, 0.0]
        ));
        let unit = LieCycle::circle([0.0, 0.0], 1.0).unwrap();
        assert!(close(to_pentacyclic(&unit).0, [0.0, 1.0, 0.0, 0.0, -1.0]));
        let x_axis = LieCycle::spear_through([0.0, 0.0], [1.0, 0.0]).unwrap();
        match x_axis {
            LieCycle::Spear(s) => assert_eq!(s.coefficients(), [0.0, 0.0, -1.0]),
            _ => unreachable!(),
        }
        // -0.0 from the Hesse coefficients compares equal to 0.0.
        assert!(close(to_pentacyclic(&x_axis).0, [0.0, 0.0, 0.0, -1.0, 1.0]));
    }

    #[test]
    fn inverse_examples() {
        let c = from_pentacyclic(&QuadricPoint([0.0, 1.0, 0.0, 0.0, -1.0])).unwrap();
        assert_eq!(c, LieCycle::circle([0.0, 0.0], 1.0).unwrap());
        assert_eq!(
            from_pentacyclic(&QuadricPoint([-2.0, 2.0, 0.0, 0.0, 0.0])).unwrap(),
            LieCycle::Infinity
        );
        match from_pentacyclic(&QuadricPoint([1.0, 1.0, 1.0, 1.0, 0.0])) {
            Err(Error::NotOnQuadric { residual }) => assert!((residual - 0.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn form_with_infinity() {
        let inf = to_pentacyclic(&LieCycle::Infinity);
        let spear = LieCycle::spear_through([3.0, -1.0], [0.6, 0.8]).unwrap();
        assert_eq!(lie_form(&inf, &to_pentacyclic(&spear)), 0.0);
        let circle = LieCycle::circle([2.0, 5.0], -3.0).unwrap();
        let q = to_pentacyclic(&circle);
        let s = q.0[0] + q.0[1];
        let scaled = QuadricPoint(q.0.map(|x| x / s));
        assert!((lie_form(&inf, &scaled) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn contact_examples() {
        let s1 = LieCycle::spear_through([0.0, 0.0], [1.0, 0.0]).unwrap();
        let s2 = LieCycle::spear_through([0.0, 4.0], [2.0, 0.0]).unwrap();
        assert!(in_contact(&s1, &s2));
        assert!(!in_contact(&s1, &s2.flipped()));
        let p = LieCycle::point([1.0, 0.0]).unwrap();
        let unit = LieCycle::circle([0.0, 0.0], 1.0).unwrap();
        assert!(in_contact(&p, &unit) && in_contact(&p, &unit.flipped()));
        assert!(!in_contact(&LieCycle::Infinity, &unit));
        assert!(in_contact(&LieCycle::Infinity, &LieCycle::Infinity));
    }

    #[test]
    fn chain_predicates() {
        let unit = LieCycle::circle([0.0, 0.0], 1.0).unwrap();
        let on = LieCycle::point([1.0, 0.0]).unwrap();
        let off = LieCycle::point([2.0, 0.0]).unwrap();
        let spear = LieCycle::spear_through([7.0, 1.0], [-1.0, 3.0]).unwrap();
        assert!(mobius_chain_contains(&on, &unit).unwrap());
        assert!(!mobius_chain_contains(&off, &unit).unwrap());
        assert!(mobius_chain_contains(&LieCycle::Infinity, &spear).unwrap());
        assert!(mobius_chain_contains(&unit, &unit).is_err());
        assert!(mobius_chain_contains(&on, &off).is_err());

        // Tangent at (0, 1) to the counterclockwise unit circle, moving left.
        let tangent = LieCycle::spear_through([0.0, 1.0], [-1.0, 0.0]).unwrap();
        assert!(laguerre_chain_contains(&tangent, &unit).unwrap());
        assert!(!laguerre_chain_contains(&tangent.flipped(), &unit).unwrap());
        let x_axis = LieCycle::spear_through([0.0, 0.0], [1.0, 0.0]).unwrap();
        assert!(!laguerre_chain_contains(&x_axis, &LieCycle::point([0.0, 5.0]).unwrap()).unwrap());
        assert!(laguerre_chain_contains(&unit, &unit).is_err());
        assert!(laguerre_chain_contains(&x_axis, &LieCycle::Infinity).is_err());
    }

    #[test]
    fn spear_constructors_agree() {
        let a = LieCycle::spear_from_equation([-2.0, 0.0, 2.0], [-5.0, 0.0]).unwrap();
        let b = LieCycle::spear_through([3.0, 1.0], [-1.0, 0.0]).unwrap();
        assert!(to_pentacyclic(&a).approx_eq(&to_pentacyclic(&b), 1e-15));
        let c = LieCycle::spear_from_equation([-2.0, 0.0, 2.0], [5.0, 0.0]).unwrap();
        assert!(to_pentacyclic(&c).approx_eq(&to_pentacyclic(&b.flipped()), 1e-15));
        assert!(LieCycle::spear_hesse([0.0, 0.6, 0.8]).is_ok());
        assert!(LieCycle::spear_hesse([0.0, 0.6, 0.7]).is_err());
        assert!(LieCycle::circle([0.0, 0.0], 0.0).is_err());
        assert!(LieCycle::spear_from_equation([1.0, 1.0, 0.0], [1.0, 0.0]).is_err());
    }

    #[test]
    fn canonical_representative() {
        let q = QuadricPoint([0.0, -2.0, 0.0, 0.0, 2.0]).canonical();
        assert_eq!(q.0, [0.0, 1.0, 0.0, 0.0, -1.0]);
        assert_eq!(q, QuadricPoint([0.0, 3.0, 0.0, 0.0, -3.0]));
    }
}
