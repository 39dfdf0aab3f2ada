//! Distances and angles read off Lorentzian pairings between points, horoballs and
//! half-spaces, with the foot points and witness geodesics that realize them.
//!
//! Sign conventions:
//!
//! | pairing                | formula              | negative when                 |
//! |------------------------|----------------------|-------------------------------|
//! | point–horosphere       | `e^d = -v∘x`         | point inside the horoball     |
//! | horosphere–horosphere  | `e^d = -½ x₀∘x₁`     | horoballs overlap             |
//! | point–plane            | `sinh d = v∘y`       | point inside the half-space   |
//! | plane–horosphere       | `e^h = -x∘y`         | plane meets the horoball      |

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::lorentz::LVec;
use crate::objects::{Geodesic, HPoint, HalfSpace, Horoball};
use crate::tol::{TOL_INDEPENDENT, TOL_OBJ, TOL_PARALLEL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    PointHorosphere,
    HorosphereHorosphere,
    PointPlane,
    PlaneHorosphere,
}

impl Convention {
    /// Human-readable name of the pairing, as printed by the CLI.
    pub fn label(self) -> &'static str {
        match self {
            Convention::PointHorosphere => "point–horosphere",
            Convention::HorosphereHorosphere => "horosphere–horosphere",
            Convention::PointPlane => "point–plane",
            Convention::PlaneHorosphere => "plane–horosphere",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedDistance {
    pub value: f64,
    pub convention: Convention,
}

/// `cosh d(p, q) = -p∘q`, evaluated as `2 asinh(|p - q| / 2)` since
/// `(p - q)∘(p - q) = 4 sinh²(d/2)`; this keeps short distances accurate.
pub fn dist_point_point(p: &HPoint, q: &HPoint) -> f64 {
    let delta = p.vec() - q.vec();
    2.0 * (0.5 * delta.norm_squared().max(0.0).sqrt()).asinh()
}

/// Unit tangent at `p` of the geodesic towards `q`; `None` when the points coincide.
pub fn tangent_toward(p: &HPoint, q: &HPoint) -> Option<LVec> {
    Geodesic::through(p, q).ok().map(|g| g.tangent().clone())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointHorosphere {
    pub distance: SignedDistance,
    /// Nearest point of the horosphere.
    pub foot: HPoint,
    /// Geodesic through the point in the direction of the horoball's centre:
    /// `γ(0) = p`, `γ(d) = foot`.
    pub witness: Geodesic,
}

pub fn sdist_point_horosphere(p: &HPoint, b: &Horoball) -> Result<PointHorosphere> {
    let (v, x) = (p.vec(), b.vec());
    v.check_same_len(x)?;
    let vx = v.dot(x);
    let d = (-vx).ln();
    let foot = LVec::combine(0.5 * (1.0 - 1.0 / (vx * vx)), x, -1.0 / vx, v);
    // γ(t) = e^{-t} v + e^{-d} sinh t · x, i.e. base v with velocity e^{-d} x - v.
    let u = LVec::combine(-1.0 / vx, x, -1.0, v);
    Ok(PointHorosphere {
        distance: SignedDistance { value: d, convention: Convention::PointHorosphere },
        foot: HPoint::trusted(foot),
        witness: Geodesic::trusted(p.clone(), u),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorosphereHorosphere {
    pub distance: SignedDistance,
    /// `feet.0` lies on the horosphere of `b0`, `feet.1` on that of `b1`.
    pub feet: (HPoint, HPoint),
    /// `γ(t) = ½e^{-d/2}(e^t x₀ + e^{-t} x₁)`, running from `x₁` to `x₀`; the feet are at
    /// `t = +d/2` (on `S₀`) and `t = -d/2` (on `S₁`).
    pub witness: Geodesic,
}

fn check_independent_lightlike(x0: &LVec, x1: &LVec) -> Result<f64> {
    let p = x0.dot(x1);
    // For positive light-like vectors -x0∘x1 >= 0, vanishing exactly on proportional pairs.
    if -p <= TOL_INDEPENDENT * x0.euclidean_norm() * x1.euclidean_norm() {
        return Err(GeomError::DependentIdealPoints);
    }
    Ok(p)
}

pub fn sdist_horosphere_horosphere(b0: &Horoball, b1: &Horoball) -> Result<HorosphereHorosphere> {
    let (x0, x1) = (b0.vec(), b1.vec());
    x0.check_same_len(x1)?;
    let p = check_independent_lightlike(x0, x1)?;
    let d = (-0.5 * p).ln();
    let foot0 = LVec::combine(0.5, x0, -1.0 / p, x1);
    let foot1 = LVec::combine(-1.0 / p, x0, 0.5, x1);
    let k = 0.5 * (-0.5 * d).exp();
    let base = LVec::combine(k, x0, k, x1);
    let vel = LVec::combine(k, x0, -k, x1);
    Ok(HorosphereHorosphere {
        distance: SignedDistance { value: d, convention: Convention::HorosphereHorosphere },
        feet: (HPoint::trusted(foot0), HPoint::trusted(foot1)),
        witness: Geodesic::trusted(HPoint::trusted(base), vel),
    })
}

/// `sinh d = v∘y`: negative inside the half-space.
pub fn sdist_point_plane(p: &HPoint, h: &HalfSpace) -> Result<SignedDistance> {
    p.vec().check_same_len(h.vec())?;
    Ok(SignedDistance { value: p.vec().dot(h.vec()).asinh(), convention: Convention::PointPlane })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneHorosphere {
    pub distance: SignedDistance,
    /// Point of the plane nearest the horosphere.
    pub foot_on_plane: HPoint,
    /// `γ(t) = e^{-h} cosh t · x + e^{-t} y`: `γ(0)` is the foot and `γ(h)` lies on the
    /// horosphere.
    pub witness: Geodesic,
}

/// Requires the horoball's centre to lie in the open ideal boundary of the half-space.
pub fn sdist_plane_horosphere(h: &HalfSpace, b: &Horoball) -> Result<PlaneHorosphere> {
    let (y, x) = (h.vec(), b.vec());
    y.check_same_len(x)?;
    let xy = x.dot(y);
    if xy >= -TOL_INDEPENDENT * x.euclidean_norm() {
        return Err(GeomError::IdealPointNotInterior(xy));
    }
    let hval = (-xy).ln();
    let foot = HPoint::trusted(LVec::combine(-1.0 / xy, x, 1.0, y));
    Ok(PlaneHorosphere {
        distance: SignedDistance { value: hval, convention: Convention::PlaneHorosphere },
        witness: Geodesic::trusted(foot.clone(), y.scaled(-1.0)),
        foot_on_plane: foot,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "kebab-case")]
pub enum PlanePairRelation {
    /// The planes cross at dihedral angle `angle` between the normals.
    Intersecting { angle: f64 },
    /// Disjoint with a common perpendicular of length `distance`; `opposed` when the
    /// normals point in opposite directions along it (`y₁∘y₂ < 0`).
    Ultraparallel { distance: f64, opposed: bool },
    Parallel,
}

fn check_independent_normals(y1: &LVec, y2: &LVec) -> Result<()> {
    let scale = y1.euclidean_norm().max(y2.euclidean_norm());
    let same = y1.euclidean_distance(y2);
    let opp = (y1 + y2).euclidean_norm();
    if same.min(opp) <= TOL_INDEPENDENT * scale {
        return Err(GeomError::DependentNormals);
    }
    Ok(())
}

pub fn plane_pair_relation(h1: &HalfSpace, h2: &HalfSpace) -> Result<PlanePairRelation> {
    plane_pair_relation_with(h1, h2, TOL_PARALLEL)
}

pub fn plane_pair_relation_with(
    h1: &HalfSpace,
    h2: &HalfSpace,
    tol_parallel: f64,
) -> Result<PlanePairRelation> {
    let (y1, y2) = (h1.vec(), h2.vec());
    y1.check_same_len(y2)?;
    check_independent_normals(y1, y2)?;
    let p = y1.dot(y2);
    Ok(if (p.abs() - 1.0).abs() <= tol_parallel {
        PlanePairRelation::Parallel
    } else if p.abs() < 1.0 {
        PlanePairRelation::Intersecting { angle: p.acos() }
    } else {
        PlanePairRelation::Ultraparallel { distance: p.abs().acosh(), opposed: p < 0.0 }
    })
}

/// Feet of the common perpendicular of two ultraparallel planes: `v₁` on the plane of `h1`,
/// `v₂` on that of `h2`.
pub fn perp_foot_plane_plane(h1: &HalfSpace, h2: &HalfSpace) -> Result<(HPoint, HPoint)> {
    match plane_pair_relation(h1, h2)? {
        PlanePairRelation::Ultraparallel { .. } => {}
        _ => return Err(GeomError::NotUltraparallel(h1.vec().dot(h2.vec()).abs())),
    }
    let (y1, y2) = (h1.vec(), h2.vec());
    let p = y1.dot(y2);
    let root = (p * p - 1.0).sqrt();
    let foot = |a: &LVec, b: &LVec| {
        // ±[(a∘b) a - b]/√((a∘b)² - 1); the positive branch is the point of H^n.
        let cand = LVec::combine(p / root, a, -1.0 / root, b);
        let sign = if cand.time() > 0.0 { 1.0 } else { -1.0 };
        let v = cand.scaled(sign);
        // v∘b = sign·√(p² - 1): the minus branch is taken exactly when v lies in the
        // half-space bounded by b's plane.
        debug_assert!((v.dot(b) - sign * root).abs() <= 1e-8 * root.max(1.0) * v.euclidean_norm_squared());
        HPoint::trusted(v)
    };
    Ok((foot(y1, y2), foot(y2, y1)))
}

/// Intrinsic flat distance `√(-2(1 + u₀∘u₁))` between two points of a horosphere.
pub fn horocyclic_distance(b: &Horoball, u0: &HPoint, u1: &HPoint) -> Result<f64> {
    for u in [u0, u1] {
        b.vec().check_same_len(u.vec())?;
        let on = u.vec().dot(b.vec());
        if (on + 1.0).abs() > TOL_OBJ {
            return Err(GeomError::NotOnHorosphere(on));
        }
    }
    // -2(1 + u0∘u1) = (u0 - u1)∘(u0 - u1) on the hyperboloid; the difference form keeps
    // short arcs accurate.
    let delta = u0.vec() - u1.vec();
    Ok(delta.norm_squared().max(0.0).sqrt())
}

/// Unit tangent at `p` pointing at the ideal point of the positive light-like vector `x`.
pub fn tangent_toward_ideal(p: &HPoint, x: &LVec) -> Result<LVec> {
    p.vec().check_same_len(x)?;
    let px = p.vec().dot(x);
    if px >= 0.0 {
        return Err(GeomError::NotPositive(px));
    }
    // x + (x∘p)p is tangent at p with self-pairing (x∘p)².
    Ok(LVec::combine(-1.0 / px, x, -1.0, p.vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{geodesic_eval, horosphere_chart, on_horosphere, on_polar_plane};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn v(c: &[f64]) -> LVec {
        LVec::new(c.to_vec()).unwrap()
    }
    fn pt(c: &[f64]) -> HPoint {
        HPoint::new(v(c)).unwrap()
    }
    fn ball(c: &[f64]) -> Horoball {
        Horoball::new(v(c)).unwrap()
    }
    fn half(c: &[f64]) -> HalfSpace {
        HalfSpace::new(v(c)).unwrap()
    }
    fn close(a: &LVec, b: &LVec, eps: f64) -> bool {
        a.euclidean_distance(b) <= eps
    }

    #[test]
    fn point_point_examples() {
        let o = HPoint::origin(2);
        assert_eq!(dist_point_point(&o, &o), 0.0);
        let q = pt(&[1f64.cosh(), 1f64.sinh(), 0.]);
        assert_abs_diff_eq!(dist_point_point(&o, &q), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn point_horosphere_examples() {
        let b = ball(&[1., 1., 0.]);
        let r = sdist_point_horosphere(&HPoint::origin(2), &b).unwrap();
        assert_abs_diff_eq!(r.distance.value, 0.0, epsilon = 1e-15);
        assert!(close(r.foot.vec(), HPoint::origin(2).vec(), 1e-15));

        let outside = pt(&[1f64.cosh(), -1f64.sinh(), 0.]);
        let r = sdist_point_horosphere(&outside, &b).unwrap();
        assert_abs_diff_eq!(r.distance.value, 1.0, epsilon = 1e-12);
        assert!(on_horosphere(&b, &r.foot));
        assert!(close(geodesic_eval(&r.witness, 0.0).vec(), outside.vec(), 1e-14));
        assert!(close(geodesic_eval(&r.witness, 1.0).vec(), r.foot.vec(), 1e-12));

        let inside = pt(&[1f64.cosh(), 1f64.sinh(), 0.]);
        let r = sdist_point_horosphere(&inside, &b).unwrap();
        assert_abs_diff_eq!(r.distance.value, -1.0, epsilon = 1e-12);
        assert!(close(geodesic_eval(&r.witness, -1.0).vec(), r.foot.vec(), 1e-12));
    }

    #[test]
    fn point_horosphere_witness_matches_closed_form_curve() {
        let b = ball(&[2., 1.2, -1.6]);
        let p = pt(&[1.5f64.cosh(), 0., 1.5f64.sinh()]);
        let r = sdist_point_horosphere(&p, &b).unwrap();
        let e_minus_d = (-r.distance.value).exp();
        for t in [-2.0, -0.3, 0.0, 0.7, 3.0f64] {
            let want = LVec::combine((-t).exp(), p.vec(), e_minus_d * t.sinh(), b.vec());
            assert!(close(geodesic_eval(&r.witness, t).vec(), &want, 1e-12));
        }
    }

    #[test]
    fn horosphere_horosphere_examples() {
        let b0 = ball(&[1., 1., 0.]);
        let b1 = ball(&[1., -1., 0.]);
        let r = sdist_horosphere_horosphere(&b0, &b1).unwrap();
        assert_abs_diff_eq!(r.distance.value, 0.0, epsilon = 1e-15);
        for c in [0.2, 3.0, 40.0f64] {
            let r = sdist_horosphere_horosphere(&b0, &b1.rescaled(c).unwrap()).unwrap();
            assert_abs_diff_eq!(r.distance.value, c.ln(), epsilon = 1e-13);
        }
        assert_eq!(
            sdist_horosphere_horosphere(&b0, &b0.rescaled(2.0).unwrap()),
            Err(GeomError::DependentIdealPoints)
        );
    }

    #[test]
    fn horosphere_feet_are_self_consistent() {
        let b0 = ball(&[0.7, 0.7 * 0.6, 0.7 * 0.8]);
        let b1 = ball(&[3., -3., 0.]);
        let r = sdist_horosphere_horosphere(&b0, &b1).unwrap();
        let d = r.distance.value;
        assert!(on_horosphere(&b0, &r.feet.0));
        assert!(on_horosphere(&b1, &r.feet.1));
        // Each foot sits at signed distance d from the opposite horosphere.
        let a = sdist_point_horosphere(&r.feet.1, &b0).unwrap();
        assert_abs_diff_eq!(a.distance.value, d, epsilon = 1e-10);
        assert!(close(a.foot.vec(), r.feet.0.vec(), 1e-10));
        let b = sdist_point_horosphere(&r.feet.0, &b1).unwrap();
        assert_abs_diff_eq!(b.distance.value, d, epsilon = 1e-10);
        assert!(close(b.foot.vec(), r.feet.1.vec(), 1e-10));
        assert!(close(geodesic_eval(&r.witness, d / 2.0).vec(), r.feet.0.vec(), 1e-10));
        assert!(close(geodesic_eval(&r.witness, -d / 2.0).vec(), r.feet.1.vec(), 1e-10));
    }

    #[test]
    fn point_plane_examples() {
        let h = half(&[0., 1., 0.]);
        let d = |p: &HPoint| sdist_point_plane(p, &h).unwrap().value;
        assert_eq!(d(&HPoint::origin(2)), 0.0);
        assert_abs_diff_eq!(d(&pt(&[1f64.cosh(), 1f64.sinh(), 0.])), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d(&pt(&[1f64.cosh(), -1f64.sinh(), 0.])), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn plane_horosphere_examples() {
        let h = half(&[0., -1., 0.]);
        let b = ball(&[1., 1., 0.]);
        let r = sdist_plane_horosphere(&h, &b).unwrap();
        assert_abs_diff_eq!(r.distance.value, 0.0, epsilon = 1e-15);
        assert!(close(r.foot_on_plane.vec(), HPoint::origin(2).vec(), 1e-15));
        for c in [0.1, 7.0f64] {
            let r = sdist_plane_horosphere(&h, &b.rescaled(c).unwrap()).unwrap();
            assert_abs_diff_eq!(r.distance.value, c.ln(), epsilon = 1e-13);
            assert!(on_polar_plane(&h, &r.foot_on_plane));
            let hit = geodesic_eval(&r.witness, r.distance.value);
            assert!(on_horosphere(&b.rescaled(c).unwrap(), &hit));
        }
        assert!(matches!(
            sdist_plane_horosphere(&half(&[0., 1., 0.]), &b),
            Err(GeomError::IdealPointNotInterior(_))
        ));
    }

    #[test]
    fn plane_relation_examples() {
        let r = plane_pair_relation(&half(&[0., 1., 0.]), &half(&[0., 0., 1.])).unwrap();
        match r {
            PlanePairRelation::Intersecting { angle } => {
                assert_abs_diff_eq!(angle, FRAC_PI_2, epsilon = 1e-15)
            }
            other => panic!("{other:?}"),
        }
        let r = plane_pair_relation(&half(&[0., 1., 0.]), &half(&[1f64.sinh(), -1f64.cosh(), 0.]))
            .unwrap();
        match r {
            PlanePairRelation::Ultraparallel { distance, opposed } => {
                assert_abs_diff_eq!(distance, 1.0, epsilon = 1e-12);
                assert!(opposed);
            }
            other => panic!("{other:?}"),
        }
        let r = plane_pair_relation(&half(&[0., 1., 0.]), &half(&[1., -1., 1.])).unwrap();
        assert_eq!(r, PlanePairRelation::Parallel);
        assert_eq!(
            plane_pair_relation(&half(&[0., 1., 0.]), &half(&[0., -1., 0.])),
            Err(GeomError::DependentNormals)
        );
    }

    #[test]
    fn perp_feet_example() {
        let h1 = half(&[0., 1., 0.]);
        let h2 = half(&[1f64.sinh(), -1f64.cosh(), 0.]);
        let (v1, v2) = perp_foot_plane_plane(&h1, &h2).unwrap();
        assert!(close(v1.vec(), HPoint::origin(2).vec(), 1e-12));
        assert_abs_diff_eq!(v1.vec().dot(h1.vec()), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v2.vec().dot(h2.vec()), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dist_point_point(&v1, &v2), 1.0, epsilon = 1e-10);
        // The perpendicular leaves v1 along ±y1.
        let t = tangent_toward(&v1, &v2).unwrap();
        assert_abs_diff_eq!(t.dot(h1.vec()).abs(), 1.0, epsilon = 1e-10);
        assert!(matches!(
            perp_foot_plane_plane(&h1, &half(&[0., 0., 1.])),
            Err(GeomError::NotUltraparallel(_))
        ));
    }

    #[test]
    fn horocyclic_examples() {
        let b = ball(&[1., 1., 0.]);
        let u0 = HPoint::origin(2);
        assert_eq!(horocyclic_distance(&b, &u0, &u0).unwrap(), 0.0);
        for s in [0.25, 1.0, -4.0f64] {
            let u1 = horosphere_chart(&b, &u0, &v(&[0., 0., s])).unwrap();
            assert_abs_diff_eq!(horocyclic_distance(&b, &u0, &u1).unwrap(), s.abs(), epsilon = 1e-12);
        }
        let off = pt(&[2f64.cosh(), 0., 2f64.sinh()]);
        assert!(matches!(horocyclic_distance(&b, &u0, &off), Err(GeomError::NotOnHorosphere(_))));
    }
}
