//! Partially truncated triangles in the hyperbolic plane.
//!
//! A quadrilateral here has one compact side on a line `P = {v∘y = 0}`, two right angles at
//! its ends and two ideal vertices at the centres of horoballs `x0`, `x1`. A pentagon has
//! four right angles: a common perpendicular `w0 w1` between ultraparallel lines `P0`, `P1`,
//! legs `w_i v_i` along `P_i`, and feet `v_i` dropped from one ideal vertex `x`. The laws
//! are also exposed on bare scalars so measured and predicted values can be compared.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::lorentz::LVec;
use crate::objects::{Geodesic, HPoint, HalfSpace, Horoball};
use crate::pairings::{dist_point_point, horocyclic_distance, tangent_toward_ideal};
use crate::tol::{TOL_INDEPENDENT, TOL_PARALLEL};

const PLANE_LEN: usize = 3;

fn check_plane(v: &LVec) -> Result<()> {
    if v.len() != PLANE_LEN {
        return Err(GeomError::DimensionMismatch { expected: PLANE_LEN, found: v.len() });
    }
    Ok(())
}

/// `x∘y`, required to be negative: the ideal point must lie inside the half-space.
fn ideal_side(x: &Horoball, y: &HalfSpace) -> Result<f64> {
    let xy = x.vec().dot(y.vec());
    if xy >= -TOL_INDEPENDENT * x.vec().euclidean_norm() {
        return Err(GeomError::WrongSide(xy));
    }
    Ok(xy)
}

/// Foot on `{v∘y = 0}` of the perpendicular towards the ideal point `x`.
fn plane_foot(x: &LVec, y: &LVec, xy: f64) -> HPoint {
    HPoint::trusted(LVec::combine(-1.0 / xy, x, 1.0, y))
}

/// Point at distance `ln(-x∘y)` from the plane foot along the perpendicular: the meeting
/// point of the perpendicular with the horosphere.
fn horosphere_hit(x: &LVec, y: &LVec, xy: f64) -> HPoint {
    HPoint::trusted(LVec::combine(0.5 * (1.0 + 1.0 / (xy * xy)), x, -1.0 / xy, y))
}

fn tangent(p: &HPoint, q: &HPoint) -> Result<LVec> {
    Ok(Geodesic::through(p, q)?.tangent().clone())
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadData {
    pub x0: Horoball,
    pub x1: Horoball,
    pub y: HalfSpace,
    /// Length of the compact side `v0 v1`.
    pub ell: f64,
    pub a0: f64,
    pub a1: f64,
    pub d: f64,
    /// Horocyclic arc on the horosphere of `x0` between `u0` and `u0p`.
    pub theta0: f64,
    pub theta1: f64,
    pub v0: HPoint,
    pub v1: HPoint,
    /// Where the side through `v0` meets the horosphere of `x0`.
    pub u0: HPoint,
    /// Where the side `x0 x1` meets the horosphere of `x0`.
    pub u0p: HPoint,
    pub u1: HPoint,
    pub u1p: HPoint,
}

pub fn quad_build(x0: &Horoball, x1: &Horoball, y: &HalfSpace) -> Result<QuadData> {
    for v in [x0.vec(), x1.vec(), y.vec()] {
        check_plane(v)?;
    }
    let c0 = ideal_side(x0, y)?;
    let c1 = ideal_side(x1, y)?;
    let p01 = x0.vec().dot(x1.vec());
    if -p01 <= TOL_INDEPENDENT * x0.vec().euclidean_norm() * x1.vec().euclidean_norm() {
        return Err(GeomError::DependentIdealPoints);
    }
    let (xv0, xv1, yv) = (x0.vec(), x1.vec(), y.vec());
    let v0 = plane_foot(xv0, yv, c0);
    let v1 = plane_foot(xv1, yv, c1);
    let u0 = horosphere_hit(xv0, yv, c0);
    let u1 = horosphere_hit(xv1, yv, c1);
    let u0p = HPoint::trusted(LVec::combine(0.5, xv0, -1.0 / p01, xv1));
    let u1p = HPoint::trusted(LVec::combine(-1.0 / p01, xv0, 0.5, xv1));
    let theta0 = horocyclic_distance(x0, &u0, &u0p)?;
    let theta1 = horocyclic_distance(x1, &u1, &u1p)?;
    Ok(QuadData {
        x0: x0.clone(),
        x1: x1.clone(),
        y: y.clone(),
        ell: dist_point_point(&v0, &v1),
        a0: (-c0).ln(),
        a1: (-c1).ln(),
        d: (-0.5 * p01).ln(),
        theta0,
        theta1,
        v0,
        v1,
        u0,
        u0p,
        u1,
        u1p,
    })
}

/// Arcs from the pairings alone: `θ0 = √(1/(x0∘y)² − 2(x1∘y)/((x0∘x1)(x0∘y)))`, and
/// symmetrically for `θ1`.
pub fn quad_arcs_radical(x0: &Horoball, x1: &Horoball, y: &HalfSpace) -> (f64, f64) {
    let c0 = x0.vec().dot(y.vec());
    let c1 = x1.vec().dot(y.vec());
    let p = x0.vec().dot(x1.vec());
    let one = |ci: f64, cj: f64| (1.0 / (ci * ci) - 2.0 * cj / (p * ci)).max(0.0).sqrt();
    (one(c0, c1), one(c1, c0))
}

/// `ℓ = 2 asinh(e^{(d − a0 − a1)/2})`.
pub fn quad_side(d: f64, a0: f64, a1: f64) -> f64 {
    2.0 * (0.5 * (d - a0 - a1)).exp().asinh()
}

/// `θ0 = e^{a1} sinh ℓ / (2e^d)`, `θ1 = e^{a0} sinh ℓ / (2e^d)`. Meaningful for `ℓ > 0`.
pub fn quad_arcs(ell: f64, d: f64, a0: f64, a1: f64) -> (f64, f64) {
    let k = 0.5 * ell.sinh();
    (k * (a1 - d).exp(), k * (a0 - d).exp())
}

/// Discrepancies between a measured quadrilateral and the laws; all relative except the
/// right-angle and radical entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResiduals {
    pub cosine: f64,
    /// Pairwise relative gaps among `θ0/e^{a1}`, `θ1/e^{a0}`, `sinh ℓ/(2e^d)`.
    pub sine: [f64; 3],
    pub radical: f64,
    pub right_angle: f64,
}

impl QuadResiduals {
    pub fn max_law(&self) -> f64 {
        self.sine.iter().copied().fold(self.cosine, f64::max)
    }
}

impl QuadData {
    pub fn residuals(&self) -> Result<QuadResiduals> {
        let rhs = (0.5 * (self.d - self.a0 - self.a1)).exp();
        let cosine = ((0.5 * self.ell).sinh() - rhs).abs() / rhs.max(1.0);
        let r = [
            self.theta0 * (-self.a1).exp(),
            self.theta1 * (-self.a0).exp(),
            0.5 * self.ell.sinh() * (-self.d).exp(),
        ];
        let (t0, t1) = quad_arcs_radical(&self.x0, &self.x1, &self.y);
        let radical = (t0 - self.theta0).abs().max((t1 - self.theta1).abs());
        let mut right_angle = 0.0f64;
        for (v, w, x) in [(&self.v0, &self.v1, &self.x0), (&self.v1, &self.v0, &self.x1)] {
            let along = tangent(v, w)?;
            let up = tangent_toward_ideal(v, x.vec())?;
            right_angle = right_angle.max(along.dot(&up).abs());
        }
        Ok(QuadResiduals {
            cosine,
            sine: [rel(r[0], r[1]), rel(r[0], r[2]), rel(r[1], r[2])],
            radical,
            right_angle,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PentData {
    pub x: Horoball,
    pub y0: HalfSpace,
    pub y1: HalfSpace,
    /// Length of the common perpendicular `w0 w1`.
    pub d: f64,
    /// Leg lengths `d(w_i, v_i)`.
    pub ell0: f64,
    pub ell1: f64,
    pub a0: f64,
    pub a1: f64,
    pub theta: f64,
    pub w0: HPoint,
    pub w1: HPoint,
    pub v0: HPoint,
    pub v1: HPoint,
    pub u0: HPoint,
    pub u1: HPoint,
}

pub fn pent_build(x: &Horoball, y0: &HalfSpace, y1: &HalfSpace) -> Result<PentData> {
    for v in [x.vec(), y0.vec(), y1.vec()] {
        check_plane(v)?;
    }
    let c0 = ideal_side(x, y0)?;
    let c1 = ideal_side(x, y1)?;
    let (xv, yv0, yv1) = (x.vec(), y0.vec(), y1.vec());
    let p = yv0.dot(yv1);
    if p.abs() <= 1.0 + TOL_PARALLEL {
        return Err(GeomError::NotUltraparallel(p.abs()));
    }
    if p > 0.0 {
        return Err(GeomError::OrientationError(format!(
            "normals pair to {p}; the pentagon needs y0∘y1 < -1"
        )));
    }
    let root = (p * p - 1.0).sqrt();
    let w = |a: &LVec, b: &LVec| -> Result<HPoint> {
        let w = LVec::combine(-p / root, a, 1.0 / root, b);
        if w.time() <= 0.0 {
            return Err(GeomError::OrientationError(format!(
                "perpendicular foot has first coordinate {}",
                w.time()
            )));
        }
        Ok(HPoint::trusted(w))
    };
    let w0 = w(yv0, yv1)?;
    let w1 = w(yv1, yv0)?;
    let d = (-p).acosh();
    let check = -w0.vec().dot(w1.vec());
    if (check - (-p)).abs() > 1e-8 * (-p) {
        return Err(GeomError::InconsistentInputs(format!(
            "-w0∘w1 = {check} differs from -y0∘y1 = {}",
            -p
        )));
    }
    let v0 = plane_foot(xv, yv0, c0);
    let v1 = plane_foot(xv, yv1, c1);
    let u0 = horosphere_hit(xv, yv0, c0);
    let u1 = horosphere_hit(xv, yv1, c1);
    Ok(PentData {
        x: x.clone(),
        y0: y0.clone(),
        y1: y1.clone(),
        d,
        ell0: dist_point_point(&w0, &v0),
        ell1: dist_point_point(&w1, &v1),
        a0: (-c0).ln(),
        a1: (-c1).ln(),
        theta: horocyclic_distance(x, &u0, &u1)?,
        w0,
        w1,
        v0,
        v1,
        u0,
        u1,
    })
}

/// `θ = √((x∘y0)² + (x∘y1)² − 2(y0∘y1)(x∘y0)(x∘y1)) / ((x∘y0)(x∘y1))`.
pub fn pent_arc_radical(x: &Horoball, y0: &HalfSpace, y1: &HalfSpace) -> f64 {
    let c0 = x.vec().dot(y0.vec());
    let c1 = x.vec().dot(y1.vec());
    let p = y0.vec().dot(y1.vec());
    (c0 * c0 + c1 * c1 - 2.0 * p * c0 * c1).max(0.0).sqrt() / (c0 * c1)
}

/// `cosh ℓ_i = (e^{a_i} cosh d + e^{a_{1−i}}) / (e^{a_i} sinh d)`.
pub fn pent_sides(d: f64, a0: f64, a1: f64) -> Result<(f64, f64)> {
    if !(d > 0.0) {
        return Err(GeomError::DomainError(format!("d = {d} must be positive")));
    }
    let side = |ai: f64, aj: f64| -> Result<f64> {
        let q = (d.cosh() + (aj - ai).exp()) / d.sinh();
        if q < 1.0 {
            return Err(GeomError::NotRealizable(q));
        }
        Ok(q.acosh())
    };
    Ok((side(a0, a1)?, side(a1, a0)?))
}

/// `θ = sinh d · sinh ℓ0 / e^{a1}`, after checking it agrees with `sinh d · sinh ℓ1 / e^{a0}`.
pub fn pent_arc(d: f64, a0: f64, a1: f64, ell0: f64, ell1: f64) -> Result<f64> {
    let r0 = ell0.sinh() * (-a1).exp();
    let r1 = ell1.sinh() * (-a0).exp();
    if rel(r0, r1) > 1e-6 {
        return Err(GeomError::InconsistentInputs(format!(
            "sinh ℓ0/e^a1 = {r0} but sinh ℓ1/e^a0 = {r1}"
        )));
    }
    Ok(d.sinh() * r0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PentResiduals {
    /// Relative gap of `cosh ℓ0`, `cosh ℓ1` from the side law.
    pub sides: [f64; 2],
    /// Pairwise relative gaps among `θ/sinh d`, `sinh ℓ0/e^{a1}`, `sinh ℓ1/e^{a0}`.
    pub sine: [f64; 3],
    pub radical: f64,
    pub right_angle: f64,
}

impl PentResiduals {
    pub fn max_law(&self) -> f64 {
        self.sides.iter().chain(&self.sine).copied().fold(0.0, f64::max)
    }
}

impl PentData {
    pub fn residuals(&self) -> Result<PentResiduals> {
        let law = |ai: f64, aj: f64| (self.d.cosh() + (aj - ai).exp()) / self.d.sinh();
        let sides = [
            rel(self.ell0.cosh(), law(self.a0, self.a1)),
            rel(self.ell1.cosh(), law(self.a1, self.a0)),
        ];
        let r = [
            self.theta / self.d.sinh(),
            self.ell0.sinh() * (-self.a1).exp(),
            self.ell1.sinh() * (-self.a0).exp(),
        ];
        let radical = (pent_arc_radical(&self.x, &self.y0, &self.y1) - self.theta).abs();
        let mut right_angle = 0.0f64;
        for (w, w_other, v) in [(&self.w0, &self.w1, &self.v0), (&self.w1, &self.w0, &self.v1)] {
            let a = tangent(w, w_other)?.dot(&tangent(w, v)?);
            let b = tangent(v, w)?.dot(&tangent_toward_ideal(v, self.x.vec())?);
            right_angle = right_angle.max(a.abs()).max(b.abs());
        }
        Ok(PentResiduals {
            sides,
            sine: [rel(r[0], r[1]), rel(r[0], r[2]), rel(r[1], r[2])],
            radical,
            right_angle,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairings::perp_foot_plane_plane;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::SQRT_2;

    fn v(c: &[f64]) -> LVec {
        LVec::new(c.to_vec()).unwrap()
    }
    fn ball(c: &[f64]) -> Horoball {
        Horoball::new(v(c)).unwrap()
    }
    fn half(c: &[f64]) -> HalfSpace {
        HalfSpace::new(v(c)).unwrap()
    }

    fn symmetric_quad() -> QuadData {
        quad_build(&ball(&[SQRT_2, 1., -1.]), &ball(&[SQRT_2, -1., -1.]), &half(&[0., 0., 1.]))
            .unwrap()
    }

    #[test]
    fn symmetric_quadrilateral() {
        let q = symmetric_quad();
        assert_abs_diff_eq!(q.a0, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.a1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.d, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.ell.cosh(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q.theta0, SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(q.theta1, SQRT_2, epsilon = 1e-12);
        assert!(q.v0.vec().euclidean_distance(&v(&[SQRT_2, 1., 0.])) < 1e-15);
        assert!(q.v1.vec().euclidean_distance(&v(&[SQRT_2, -1., 0.])) < 1e-15);
        let r = q.residuals().unwrap();
        assert!(r.max_law() < 1e-12 && r.radical < 1e-12 && r.right_angle < 1e-12, "{r:?}");
    }

    #[test]
    fn quad_scaling_and_swap() {
        let q = symmetric_quad();
        for c in [0.3, 5.0f64] {
            let s = quad_build(&q.x0.rescaled(c).unwrap(), &q.x1, &q.y).unwrap();
            assert_abs_diff_eq!(s.a0, q.a0 + c.ln(), epsilon = 1e-13);
            assert_abs_diff_eq!(s.d, q.d + c.ln(), epsilon = 1e-13);
            // The horosphere of x1 and both its feet are untouched; θ0 shrinks like e^{-a0}.
            assert_abs_diff_eq!(s.theta1, q.theta1, epsilon = 1e-12);
            assert_abs_diff_eq!(s.theta0 * s.a0.exp(), q.theta0 * q.a0.exp(), epsilon = 1e-12);
            assert_abs_diff_eq!(s.ell, q.ell, epsilon = 1e-12);
        }
        let x0 = ball(&[2.0, 2.0 * 0.6, -2.0 * 0.8]);
        let x1 = ball(&[0.5, -0.5, 0.0]);
        let y = HalfSpace::from_spacelike(&v(&[0.3, 0.1, 1.0])).unwrap();
        let a = quad_build(&x0, &x1, &y).unwrap();
        let b = quad_build(&x1, &x0, &y).unwrap();
        assert_abs_diff_eq!(a.a0, b.a1, epsilon = 1e-14);
        assert_abs_diff_eq!(a.theta0, b.theta1, epsilon = 1e-12);
        assert_abs_diff_eq!(a.ell, b.ell, epsilon = 1e-12);
        assert_abs_diff_eq!(a.d, b.d, epsilon = 1e-14);
    }

    #[test]
    fn quad_errors() {
        let y = half(&[0., 0., 1.]);
        let good = ball(&[SQRT_2, 1., -1.]);
        assert!(matches!(
            quad_build(&good, &ball(&[SQRT_2, 1., 1.]), &y),
            Err(GeomError::WrongSide(_))
        ));
        assert_eq!(
            quad_build(&good, &good.rescaled(3.0).unwrap(), &y),
            Err(GeomError::DependentIdealPoints)
        );
    }

    #[test]
    fn quad_scalar_laws() {
        assert_abs_diff_eq!(quad_side(0., 0., 0.), 2.0 * 1f64.asinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(quad_side(0., 0., 0.).cosh(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(quad_side(1.0, 0.2, -0.4), quad_side(3.0, 1.2, 0.6), epsilon = 1e-14);
        let (t0, t1) = quad_arcs(quad_side(0., 0., 0.), 0., 0., 0.);
        assert_abs_diff_eq!(t0, SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(t1, SQRT_2, epsilon = 1e-12);
        let (t0, t1) = quad_arcs(1.3, 0.2, 0.7, 0.7);
        assert_eq!(t0, t1);
    }

    fn sample_pent(s: f64) -> PentData {
        // y0 through the origin, y1 at distance 1 on the other side of the origin.
        let y0 = half(&[0., 1., 0.]);
        let y1 = half(&[1f64.sinh(), -(1f64.cosh()), 0.]);
        let x = ball(&[s, -0.3 * s, 0.91f64.sqrt() * s]);
        pent_build(&x, &y0, &y1).unwrap()
    }

    #[test]
    fn pentagon_basics() {
        let p = sample_pent(1.0);
        assert_abs_diff_eq!(p.d, 1.0, epsilon = 1e-12);
        let (f0, f1) = perp_foot_plane_plane(&p.y0, &p.y1).unwrap();
        assert!(p.w0.vec().euclidean_distance(f0.vec()) < 1e-12);
        assert!(p.w1.vec().euclidean_distance(f1.vec()) < 1e-12);
        let r = p.residuals().unwrap();
        assert!(r.max_law() < 1e-12 && r.radical < 1e-12 && r.right_angle < 1e-10, "{r:?}");
        let (l0, l1) = pent_sides(p.d, p.a0, p.a1).unwrap();
        assert_abs_diff_eq!(l0, p.ell0, epsilon = 1e-10);
        assert_abs_diff_eq!(l1, p.ell1, epsilon = 1e-10);
        let th = pent_arc(p.d, p.a0, p.a1, p.ell0, p.ell1).unwrap();
        assert_abs_diff_eq!(th, p.theta, epsilon = 1e-10);
    }

    #[test]
    fn symmetric_pentagon_with_zero_offsets() {
        // x on the bisector of the strip, scaled so both a_i vanish.
        let y0 = half(&[0., 1., 0.]);
        let y1 = half(&[1f64.sinh(), -(1f64.cosh()), 0.]);
        // Ideal point straight off the midpoint of the common perpendicular.
        let mid = v(&[(0.5f64).cosh(), -(0.5f64).sinh(), 0.]);
        let raw = &mid + &v(&[0., 0., 1.]);
        let c = -raw.dot(y0.vec());
        let x = Horoball::new(raw.scaled(1.0 / c)).unwrap();
        let p = pent_build(&x, &y0, &y1).unwrap();
        assert_abs_diff_eq!(p.a0, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.a1, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.ell0, p.ell1, epsilon = 1e-12);
        let want = (1f64.cosh() + 1.0) / 1f64.sinh();
        assert_abs_diff_eq!(p.ell0.cosh(), want, epsilon = 1e-10);
        assert_abs_diff_eq!(want, 1.0 / (0.5f64).tanh(), epsilon = 1e-14);
        let (l0, l1) = pent_sides(1.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(l0.cosh(), want, epsilon = 1e-14);
        assert_eq!(l0, l1);
    }

    #[test]
    fn pentagon_errors() {
        let x = ball(&[1., -0.3, 0.91f64.sqrt()]);
        let y0 = half(&[0., 1., 0.]);
        assert!(matches!(
            pent_build(&x, &y0, &half(&[0., 0., 1.])),
            Err(GeomError::WrongSide(_))
        ));
        assert!(matches!(
            pent_build(&x, &y0, &half(&[0., 0., -1.])),
            Err(GeomError::NotUltraparallel(_))
        ));
        assert!(matches!(
            pent_build(&x, &y0, &half(&[1f64.sinh(), 1f64.cosh(), 0.])),
            Err(GeomError::OrientationError(_))
        ));
        assert!(matches!(pent_sides(0.0, 0.0, 0.0), Err(GeomError::DomainError(_))));
        assert!(matches!(
            pent_arc(1.0, 0.0, 0.0, 1.0, 2.0),
            Err(GeomError::InconsistentInputs(_))
        ));
    }
}
