//! Validated objects of `H^n`: points, horoballs, half-spaces and geodesics.
//!
//! Points and half-space normals are rescaled onto their unit level sets at construction.
//! Horoball vectors are kept as given, because scaling a light-like vector moves the
//! horosphere it determines.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::lorentz::{classify, CausalKind, LVec};
use crate::tol::{TOL_CLASS, TOL_OBJ};

/// A point of the hyperboloid: `v∘v = -1`, first coordinate positive.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    v: LVec,
}

impl HPoint {
    pub fn new(v: LVec) -> Result<Self> {
        Self::new_with(v, TOL_OBJ)
    }

    pub fn new_with(v: LVec, tol_obj: f64) -> Result<Self> {
        let q = v.norm_squared();
        if (q + 1.0).abs() > tol_obj {
            return Err(GeomError::NotOnHyperboloid(q));
        }
        if v.time() <= 0.0 {
            return Err(GeomError::NotPositive(v.time()));
        }
        Ok(Self { v: v.scaled(1.0 / (-q).sqrt()) })
    }

    /// Wraps a vector known to lie on the hyperboloid up to roundoff.
    pub(crate) fn trusted(v: LVec) -> Self {
        debug_assert!(v.time() > 0.0, "trusted point has non-positive time coordinate: {v:?}");
        Self { v }
    }

    /// The point `(1, 0, …, 0)` of `H^n`.
    pub fn origin(n: usize) -> Self {
        Self { v: LVec::basis(n + 1, 0) }
    }

    pub fn vec(&self) -> &LVec {
        &self.v
    }

    pub fn into_vec(self) -> LVec {
        self.v
    }

    pub fn dim(&self) -> usize {
        self.v.hyperbolic_dim()
    }
}

/// Rescales a positive time-like vector onto the hyperboloid.
pub fn normalize_point(v: &LVec) -> Result<HPoint> {
    let class = classify(v, TOL_CLASS);
    if class.kind != CausalKind::TimeLike {
        return Err(GeomError::NotTimeLike(v.norm_squared()));
    }
    if class.positive != Some(true) {
        return Err(GeomError::NotPositive(v.time()));
    }
    Ok(HPoint { v: v.scaled(1.0 / (-v.norm_squared()).sqrt()) })
}

/// A horoball, encoded by a positive light-like vector `x`: the horosphere is
/// `{v : v∘x = -1}` and the horoball `{v : v∘x >= -1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Horoball {
    x: LVec,
}

impl Horoball {
    pub fn new(x: LVec) -> Result<Self> {
        Self::new_with(x, TOL_OBJ)
    }

    pub fn new_with(x: LVec, tol_obj: f64) -> Result<Self> {
        let e2 = x.euclidean_norm_squared();
        if e2 == 0.0 {
            return Err(GeomError::NotPositive(0.0));
        }
        let q = x.norm_squared();
        if q.abs() > tol_obj * e2 {
            return Err(GeomError::NotLightLike(q));
        }
        if x.time() <= 0.0 {
            return Err(GeomError::NotPositive(x.time()));
        }
        Ok(Self { x })
    }

    /// The horoball centred at the ideal point in spatial direction `dir`, with scale
    /// `scale`: `x = scale · (1, dir/|dir|)`.
    pub fn from_direction(dir: &[f64], scale: f64) -> Result<Self> {
        let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        if !(norm > 0.0) || !(scale > 0.0) {
            return Err(GeomError::DomainError("direction and scale must be non-zero".into()));
        }
        let mut c = Vec::with_capacity(dir.len() + 1);
        c.push(scale);
        c.extend(dir.iter().map(|d| scale * d / norm));
        Self::new(LVec::new(c)?)
    }

    pub fn vec(&self) -> &LVec {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.x.hyperbolic_dim()
    }

    /// The same ideal point with vector `c·x`.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(GeomError::DomainError(format!("horoball scale {c} must be positive")));
        }
        Ok(Self { x: self.x.scaled(c) })
    }
}

/// A half-space, encoded by its unit outward normal `y`: `{v : v∘y <= 0}`. Its boundary is
/// the polar hyperplane `{v : v∘y = 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    y: LVec,
}

impl HalfSpace {
    pub fn new(y: LVec) -> Result<Self> {
        Self::new_with(y, TOL_OBJ)
    }

    pub fn new_with(y: LVec, tol_obj: f64) -> Result<Self> {
        let q = y.norm_squared();
        if (q - 1.0).abs() > tol_obj {
            return Err(GeomError::NotUnitSpaceLike(q));
        }
        Ok(Self { y: y.scaled(1.0 / q.sqrt()) })
    }

    /// Rescales any space-like vector to a unit normal.
    pub fn from_spacelike(y: &LVec) -> Result<Self> {
        let q = y.norm_squared();
        if classify(y, TOL_CLASS).kind != CausalKind::SpaceLike {
            return Err(GeomError::NotUnitSpaceLike(q));
        }
        Ok(Self { y: y.scaled(1.0 / q.sqrt()) })
    }

    pub(crate) fn trusted(y: LVec) -> Self {
        Self { y }
    }

    pub fn vec(&self) -> &LVec {
        &self.y
    }

    pub fn dim(&self) -> usize {
        self.y.hyperbolic_dim()
    }

    /// The complementary half-space (same plane, opposite side).
    pub fn opposite(&self) -> Self {
        Self { y: self.y.scaled(-1.0) }
    }
}

/// A unit-speed geodesic `t ↦ cosh t · p + sinh t · u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic {
    p: HPoint,
    u: LVec,
}

impl Geodesic {
    pub fn new(p: HPoint, u: LVec) -> Result<Self> {
        Self::new_with(p, u, TOL_OBJ)
    }

    pub fn new_with(p: HPoint, u: LVec, tol_obj: f64) -> Result<Self> {
        p.vec().check_same_len(&u)?;
        let q = u.norm_squared();
        if (q - 1.0).abs() > tol_obj {
            return Err(GeomError::NotUnitSpaceLike(q));
        }
        let r = p.vec().dot(&u);
        if r.abs() > tol_obj {
            return Err(GeomError::NotTangent(r));
        }
        Ok(Self { p, u })
    }

    pub(crate) fn trusted(p: HPoint, u: LVec) -> Self {
        Self { p, u }
    }

    /// The geodesic from `p` towards `q` (unit speed, `γ(d(p,q)) = q`).
    pub fn through(p: &HPoint, q: &HPoint) -> Result<Self> {
        // With h = sinh(d/2) = |q - p|/2: q + (q∘p)p = (q - p) - 2h²p, of length sinh d.
        let delta = q.vec() - p.vec();
        let h = 0.5 * delta.norm_squared().max(0.0).sqrt();
        if h <= 1e-15 {
            return Err(GeomError::DomainError("geodesic through coincident points".into()));
        }
        let dir = LVec::combine(1.0, &delta, -2.0 * h * h, p.vec());
        let u = dir.scaled(1.0 / (2.0 * h * (1.0 + h * h).sqrt()));
        Ok(Self { p: p.clone(), u })
    }

    pub fn base(&self) -> &HPoint {
        &self.p
    }

    pub fn tangent(&self) -> &LVec {
        &self.u
    }

    pub fn eval(&self, t: f64) -> HPoint {
        geodesic_eval(self, t)
    }

    /// Velocity `γ'(t) = sinh t · p + cosh t · u`.
    pub fn velocity(&self, t: f64) -> LVec {
        LVec::combine(t.sinh(), self.p.vec(), t.cosh(), &self.u)
    }
}

pub fn geodesic_eval(g: &Geodesic, t: f64) -> HPoint {
    HPoint::trusted(LVec::combine(t.cosh(), g.p.vec(), t.sinh(), &g.u))
}

/// Below this Lorentzian norm a tangent vector is treated as zero.
pub const EXP_MAP_CUTOFF: f64 = 1e-14;

/// `exp_p(w) = cosh|w| · p + sinh|w|/|w| · w` for `w` tangent at `p`.
pub fn exp_map(p: &HPoint, w: &LVec) -> Result<HPoint> {
    p.vec().check_same_len(w)?;
    let r = p.vec().dot(w);
    if r.abs() > TOL_OBJ * w.euclidean_norm().max(1.0) {
        return Err(GeomError::NotTangent(r));
    }
    let norm = w.norm_squared().max(0.0).sqrt();
    if norm <= EXP_MAP_CUTOFF {
        return Ok(p.clone());
    }
    Ok(HPoint::trusted(LVec::combine(norm.cosh(), p.vec(), norm.sinh() / norm, w)))
}

/// The flat chart `F(w) = u0 + w + (w∘w/2)·x` of the horosphere of `x`, based at `u0`.
/// `w` must be tangent to the horosphere at `u0` (`w∘u0 = 0 = w∘x`).
pub fn horosphere_chart(b: &Horoball, u0: &HPoint, w: &LVec) -> Result<HPoint> {
    let x = b.vec();
    x.check_same_len(u0.vec())?;
    x.check_same_len(w)?;
    let on = u0.vec().dot(x);
    if (on + 1.0).abs() > TOL_OBJ {
        return Err(GeomError::NotOnHorosphere(on));
    }
    let scale = w.euclidean_norm().max(1.0);
    let r0 = w.dot(u0.vec());
    if r0.abs() > TOL_OBJ * scale {
        return Err(GeomError::NotTangent(r0));
    }
    let r1 = w.dot(x);
    if r1.abs() > TOL_OBJ * scale * x.euclidean_norm().max(1.0) {
        return Err(GeomError::NotTangent(r1));
    }
    let half = 0.5 * w.norm_squared();
    let v = &(u0.vec() + w) + &x.scaled(half);
    Ok(HPoint::trusted(v))
}

pub fn on_horosphere(b: &Horoball, p: &HPoint) -> bool {
    (p.vec().dot(b.vec()) + 1.0).abs() <= TOL_OBJ
}

pub fn in_horoball(b: &Horoball, p: &HPoint) -> bool {
    p.vec().dot(b.vec()) >= -1.0 - TOL_OBJ
}

pub fn in_halfspace(h: &HalfSpace, p: &HPoint) -> bool {
    p.vec().dot(h.vec()) <= TOL_OBJ
}

pub fn on_polar_plane(h: &HalfSpace, p: &HPoint) -> bool {
    p.vec().dot(h.vec()).abs() <= TOL_OBJ
}

/// JSON form of an object, `{"kind": "...", "coords": [...]}`. Geodesics carry an extra
/// `tangent` array; `coords` is then the base point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectJson {
    Vector { coords: Vec<f64> },
    Point { coords: Vec<f64> },
    Horoball { coords: Vec<f64> },
    Halfspace { coords: Vec<f64> },
    Geodesic { coords: Vec<f64>, tangent: Vec<f64> },
}

/// A validated object decoded from [`ObjectJson`].
#[derive(Debug, Clone, PartialEq)]
pub enum GeomObject {
    Vector(LVec),
    Point(HPoint),
    Horoball(Horoball),
    HalfSpace(HalfSpace),
    Geodesic(Geodesic),
}

impl GeomObject {
    pub fn kind(&self) -> &'static str {
        match self {
            GeomObject::Vector(_) => "vector",
            GeomObject::Point(_) => "point",
            GeomObject::Horoball(_) => "horoball",
            GeomObject::HalfSpace(_) => "halfspace",
            GeomObject::Geodesic(_) => "geodesic",
        }
    }

    pub fn to_json(&self) -> ObjectJson {
        let c = |v: &LVec| v.coords().to_vec();
        match self {
            GeomObject::Vector(v) => ObjectJson::Vector { coords: c(v) },
            GeomObject::Point(p) => ObjectJson::Point { coords: c(p.vec()) },
            GeomObject::Horoball(b) => ObjectJson::Horoball { coords: c(b.vec()) },
            GeomObject::HalfSpace(h) => ObjectJson::Halfspace { coords: c(h.vec()) },
            GeomObject::Geodesic(g) => {
                ObjectJson::Geodesic { coords: c(g.base().vec()), tangent: c(g.tangent()) }
            }
        }
    }
}

impl TryFrom<ObjectJson> for GeomObject {
    type Error = GeomError;
    fn try_from(j: ObjectJson) -> Result<Self> {
        Ok(match j {
            ObjectJson::Vector { coords } => GeomObject::Vector(LVec::new(coords)?),
            ObjectJson::Point { coords } => GeomObject::Point(HPoint::new(LVec::new(coords)?)?),
            ObjectJson::Horoball { coords } => {
                GeomObject::Horoball(Horoball::new(LVec::new(coords)?)?)
            }
            ObjectJson::Halfspace { coords } => {
                GeomObject::HalfSpace(HalfSpace::new(LVec::new(coords)?)?)
            }
            ObjectJson::Geodesic { coords, tangent } => GeomObject::Geodesic(Geodesic::new(
                HPoint::new(LVec::new(coords)?)?,
                LVec::new(tangent)?,
            )?),
        })
    }
}

impl From<&HPoint> for ObjectJson {
    fn from(p: &HPoint) -> Self {
        ObjectJson::Point { coords: p.vec().coords().to_vec() }
    }
}

impl From<&Horoball> for ObjectJson {
    fn from(b: &Horoball) -> Self {
        ObjectJson::Horoball { coords: b.vec().coords().to_vec() }
    }
}

impl From<&HalfSpace> for ObjectJson {
    fn from(h: &HalfSpace) -> Self {
        ObjectJson::Halfspace { coords: h.vec().coords().to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> LVec {
        LVec::new(c.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p = normalize_point(&v(&[2., 0., 0.])).unwrap();
        assert_eq!(p.vec().coords(), &[1., 0., 0.]);
        let p = normalize_point(&v(&[2., 1., 1.])).unwrap();
        let r = 2f64.sqrt();
        for (a, b) in p.vec().coords().iter().zip([2. / r, 1. / r, 1. / r]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert!(matches!(normalize_point(&v(&[1., 1., 0.])), Err(GeomError::NotTimeLike(_))));
        assert!(matches!(normalize_point(&v(&[-2., 0., 0.])), Err(GeomError::NotPositive(_))));
        assert!(matches!(normalize_point(&v(&[0., 1., 0.])), Err(GeomError::NotTimeLike(_))));
    }

    #[test]
    fn geodesic_examples() {
        let g = Geodesic::new(HPoint::origin(2), v(&[0., 1., 0.])).unwrap();
        assert_eq!(geodesic_eval(&g, 0.0).vec().coords(), &[1., 0., 0.]);
        let p = geodesic_eval(&g, 1.0);
        assert_abs_diff_eq!(p.vec()[0], 1f64.cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.vec()[1], 1f64.sinh(), epsilon = 1e-15);
        assert_eq!(p.vec()[2], 0.0);
    }

    #[test]
    fn geodesic_rejects_non_tangent() {
        let p = HPoint::origin(2);
        assert!(matches!(Geodesic::new(p.clone(), v(&[1., 1., 0.])), Err(GeomError::NotUnitSpaceLike(_))));
        let b = 0.3f64;
        let tilted = v(&[b.sinh(), b.cosh(), 0.]);
        assert!(matches!(Geodesic::new(p, tilted), Err(GeomError::NotTangent(_))));
    }

    #[test]
    fn exp_map_examples() {
        let p = HPoint::origin(2);
        assert_eq!(exp_map(&p, &LVec::zeros(3)).unwrap(), p);
        let q = exp_map(&p, &v(&[0., 2., 0.])).unwrap();
        assert_abs_diff_eq!(q.vec()[0], 2f64.cosh(), epsilon = 1e-14);
        assert_abs_diff_eq!(q.vec()[1], 2f64.sinh(), epsilon = 1e-14);
        assert!(matches!(exp_map(&p, &v(&[1., 0., 0.])), Err(GeomError::NotTangent(_))));
        // Tiny tangents fall back to the base point.
        assert_eq!(exp_map(&p, &v(&[0., 1e-16, 0.])).unwrap(), p);
    }

    #[test]
    fn chart_examples() {
        let b = Horoball::new(v(&[1., 1., 0.])).unwrap();
        let u0 = HPoint::origin(2);
        assert_eq!(horosphere_chart(&b, &u0, &LVec::zeros(3)).unwrap(), u0);
        for s in [0.5, -1.5, 3.0] {
            let f = horosphere_chart(&b, &u0, &v(&[0., 0., s])).unwrap();
            let want = [1. + s * s / 2., s * s / 2., s];
            for (a, w) in f.vec().coords().iter().zip(want) {
                assert_abs_diff_eq!(*a, w, epsilon = 1e-14);
            }
            assert_abs_diff_eq!(f.vec().norm_squared(), -1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(f.vec().dot(b.vec()), -1.0, epsilon = 1e-12);
        }
        let off = HPoint::new(v(&[1f64.cosh(), 1f64.sinh(), 0.])).unwrap();
        assert!(matches!(
            horosphere_chart(&b, &off, &v(&[0., 0., 1.])),
            Err(GeomError::NotOnHorosphere(_))
        ));
        assert!(matches!(
            horosphere_chart(&b, &u0, &v(&[0., 1., 0.])),
            Err(GeomError::NotTangent(_))
        ));
    }

    #[test]
    fn membership_examples() {
        let b = Horoball::new(v(&[1., 1., 0.])).unwrap();
        let o = HPoint::origin(2);
        assert!(on_horosphere(&b, &o));
        assert!(in_horoball(&b, &o));
        let h = HalfSpace::new(v(&[0., 1., 0.])).unwrap();
        assert!(on_polar_plane(&h, &o));
        assert!(in_halfspace(&h, &o));
        let inside = HPoint::new(v(&[1f64.cosh(), 1f64.sinh(), 0.])).unwrap();
        assert!(in_horoball(&b, &inside));
        assert!(!on_horosphere(&b, &inside));
        assert!(!in_halfspace(&h, &inside));
        let outside = HPoint::new(v(&[1f64.cosh(), -1f64.sinh(), 0.])).unwrap();
        assert!(!in_horoball(&b, &outside));
        assert!(in_halfspace(&h, &outside));
    }

    #[test]
    fn constructors_respect_band() {
        // Perturb the defining constraint by 10·tol (reject) and 0.1·tol (accept).
        for (k, ok) in [(10.0, false), (0.1, true)] {
            let eps = k * TOL_OBJ;
            // Point: v∘v = -1 - eps.
            let p = v(&[(1.0 + eps).sqrt(), 0., 0.]);
            assert_eq!(HPoint::new(p).is_ok(), ok);
            // Half-space: y∘y = 1 + eps.
            let y = v(&[0., (1.0 + eps).sqrt(), 0.]);
            assert_eq!(HalfSpace::new(y).is_ok(), ok);
            // Horoball: x∘x = eps·|x|² with |x|² ≈ 2.
            let x = v(&[1., (1.0 + 2.0 * eps).sqrt(), 0.]);
            assert_eq!(Horoball::new(x).is_ok(), ok);
        }
    }

    #[test]
    fn normalizes_points_and_normals() {
        let eps = 0.5 * TOL_OBJ;
        let p = HPoint::new(v(&[(1.0 + eps).sqrt(), 0., 0.])).unwrap();
        assert_abs_diff_eq!(p.vec().norm_squared(), -1.0, epsilon = 1e-15);
        let y = HalfSpace::new(v(&[0., (1.0 + eps).sqrt(), 0.])).unwrap();
        assert_abs_diff_eq!(y.vec().norm_squared(), 1.0, epsilon = 1e-15);
        let x = v(&[3., 3., 0.]);
        assert_eq!(Horoball::new(x.clone()).unwrap().vec(), &x);
        assert!(Horoball::new(v(&[-1., 1., 0.])).is_err());
        assert!(Horoball::new(LVec::zeros(3)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let objs = vec![
            GeomObject::Point(HPoint::origin(2)),
            GeomObject::Horoball(Horoball::new(v(&[1., 1., 0.])).unwrap()),
            GeomObject::HalfSpace(HalfSpace::new(v(&[0., 0., 1.])).unwrap()),
            GeomObject::Geodesic(Geodesic::new(HPoint::origin(2), v(&[0., 1., 0.])).unwrap()),
            GeomObject::Vector(v(&[1., 2., 3.])),
        ];
        for o in objs {
            let s = serde_json::to_string(&o.to_json()).unwrap();
            let back: ObjectJson = serde_json::from_str(&s).unwrap();
            assert_eq!(GeomObject::try_from(back).unwrap(), o);
        }
        let j: ObjectJson = serde_json::from_str(r#"{"kind":"point","coords":[1,0,0]}"#).unwrap();
        assert_eq!(j, ObjectJson::Point { coords: vec![1., 0., 0.] });
        let bad: ObjectJson = serde_json::from_str(r#"{"kind":"point","coords":[1,1,0]}"#).unwrap();
        assert!(GeomObject::try_from(bad).is_err());
    }
}
