//! Batch verification suites.
//!
//! Each check draws its instances from [`instance_rng`] keyed by index, evaluates them in
//! parallel and reduces in index order, so a report depends only on the seed and count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::lorentz::{classify, gram, realize_gram, CausalKind, GramMatrix, LVec};
use crate::objects::{
    exp_map, geodesic_eval, horosphere_chart, normalize_point, on_horosphere, Geodesic, HPoint,
    HalfSpace, Horoball,
};
use crate::oracle::{fd_gradient, fd_step, minimize_2d, sample_min_distance};
use crate::pairings::{
    dist_point_point, horocyclic_distance, perp_foot_plane_plane, plane_pair_relation,
    sdist_horosphere_horosphere, sdist_plane_horosphere, sdist_point_horosphere, sdist_point_plane,
    PlanePairRelation,
};
use crate::polygons::{pent_arc, pent_build, pent_sides, quad_arcs, quad_build, quad_side};
use crate::sampling::{
    edge_matrix, instance_rng, pent_instance, quad_instance, random_halfspace, random_horoball,
    random_horosphere_point, random_horosphere_tangent, random_isometry, random_plane_point,
    random_point, symmetric_pent_instance, symmetric_triple, unit_direction, InstanceRng,
};
use crate::tetra::{
    critical_point, transversal_bound, EdgeMatrix, Pairings, TruncatedTetrahedron, OPPOSITE_PAIRS,
};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Largest residual observed (or number of failing instances for yes/no checks).
    pub worst: f64,
    pub threshold: f64,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn residual(name: &str, outcomes: Vec<Result<f64>>, threshold: f64) -> Self {
        let instances = outcomes.len();
        let mut worst = 0.0f64;
        let mut note = None;
        for o in outcomes {
            match o {
                Ok(v) if v.is_nan() => {
                    worst = f64::INFINITY;
                    note.get_or_insert_with(|| "NaN residual".to_string());
                }
                Ok(v) => worst = worst.max(v),
                Err(e) => {
                    worst = f64::INFINITY;
                    note.get_or_insert_with(|| e.to_string());
                }
            }
        }
        Self { name: name.into(), passed: worst <= threshold, worst, threshold, instances, note }
    }

    /// Yes/no per instance; `worst` counts the failures.
    fn flags(name: &str, outcomes: Vec<Result<bool>>) -> Self {
        let as_res = outcomes
            .into_iter()
            .map(|o| o.map(|ok| if ok { 0.0 } else { 1.0 }))
            .collect::<Vec<_>>();
        let instances = as_res.len();
        let mut failures = 0.0;
        let mut note = None;
        for o in as_res {
            match o {
                Ok(v) => failures += v,
                Err(e) => {
                    failures += 1.0;
                    note.get_or_insert_with(|| e.to_string());
                }
            }
        }
        Self {
            name: name.into(),
            passed: failures == 0.0,
            worst: failures,
            threshold: 0.0,
            instances,
            note,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        let n = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{n}; {old}"),
            None => n,
        });
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: worst {:.3e} (limit {:.1e}, {} instances)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.threshold,
            self.instances
        )?;
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lorentz,
    Objects,
    Pairings,
    Quad,
    Pent,
    Tetra,
    TetraOracle,
    Minimizers,
    Comparison,
    Realize,
    Isometry,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 11] = [
        Suite::Lorentz,
        Suite::Objects,
        Suite::Pairings,
        Suite::Quad,
        Suite::Pent,
        Suite::Tetra,
        Suite::TetraOracle,
        Suite::Minimizers,
        Suite::Comparison,
        Suite::Realize,
        Suite::Isometry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lorentz => "lorentz",
            Suite::Objects => "objects",
            Suite::Pairings => "pairings",
            Suite::Quad => "quad",
            Suite::Pent => "pent",
            Suite::Tetra => "tetra",
            Suite::TetraOracle => "tetra-oracle",
            Suite::Minimizers => "minimizers",
            Suite::Comparison => "comparison",
            Suite::Realize => "realize",
            Suite::Isometry => "isometry",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::INDIVIDUAL
            .iter()
            .chain(&[Suite::All])
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> =
                    Suite::INDIVIDUAL.iter().map(|x| x.name()).chain(["all"]).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Instance count for every check in the suite; `None` uses each check's default.
    pub count: Option<usize>,
    pub tol: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 7, count: None, tol: Tolerances::default() }
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<SuiteReport> {
    let targets: Vec<Suite> =
        if suite == Suite::All { Suite::INDIVIDUAL.to_vec() } else { vec![suite] };
    targets
        .into_iter()
        .map(|s| SuiteReport { suite: s.name().into(), seed: cfg.seed, checks: suite_checks(s, cfg) })
        .collect()
}

fn suite_checks(suite: Suite, cfg: &RunConfig) -> Vec<Check> {
    let n = |default: usize| cfg.count.unwrap_or(default);
    let (seed, tol) = (cfg.seed, &cfg.tol);
    match suite {
        Suite::Lorentz => lorentz_checks(n(1000), seed),
        Suite::Objects => object_checks(n(1000), seed, tol),
        Suite::Pairings => pairing_checks(n(500), seed),
        Suite::Quad => {
            let mut v = vec![quad_cosine_law(n(1000), seed), quad_sine_law(n(1000), seed)];
            v.extend(quad_extra_checks(n(1000), seed));
            v
        }
        Suite::Pent => {
            let mut v = vec![pent_laws(n(1000), seed), pent_symmetric(n(1000), seed)];
            v.extend(pent_extra_checks(n(1000), seed));
            v
        }
        Suite::Tetra => {
            let mut v = vec![quadratic_structure(n(500), seed, tol)];
            v.extend(symmetric_equality(n(50), seed, tol));
            v.extend(symmetry_and_monotonicity(n(200), seed, tol));
            v.extend(tetra_extra_checks(n(500), seed, tol));
            v
        }
        Suite::TetraOracle => {
            let mut v = transversal_vs_oracle(n(500), seed, tol);
            v.push(analytic_gradient(n(500), seed, tol));
            v
        }
        Suite::Minimizers => feet_are_minimizers(n(200), seed),
        Suite::Comparison => vec![comparison_equation(n(1000), seed)],
        Suite::Realize => realize_round_trip(n(500), seed, tol),
        Suite::Isometry => isometry_invariance(n(20), seed, tol),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Maps instance indices to outcomes in parallel, keeping index order.
fn par_map<T, F>(count: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut InstanceRng) -> T + Sync,
{
    (0..count as u64).into_par_iter().map(|i| f(&mut instance_rng(seed, i))).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    (a - b).abs() / s
}

fn rel1(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

// Sub-seeds keep unrelated checks from sharing instance streams.
const QUAD: u64 = 0x51;
const PENT: u64 = 0x52;
const PENT_SYM: u64 = 0x53;
const TETRA: u64 = 0x54;
const TETRA_SYM: u64 = 0x55;
const TETRA_PERM: u64 = 0x56;
const FEET: u64 = 0x57;
const HORO: u64 = 0x58;
const REALIZE: u64 = 0x59;
const ISO: u64 = 0x5a;
const BASIC: u64 = 0x5b;

fn sub(seed: u64, tag: u64) -> u64 {
    seed.wrapping_mul(0x100_0000_01b3) ^ tag.wrapping_mul(0xff51_afd7_ed55_8ccd)
}

// ---------------------------------------------------------------- lorentz & objects

fn random_vec<R: Rng>(rng: &mut R, len: usize, scale: f64) -> LVec {
    LVec::new((0..len).map(|_| rng.random_range(-scale..=scale)).collect::<Vec<_>>())
        .expect("finite")
}

fn random_positive<R: Rng>(rng: &mut R, len: usize) -> LVec {
    // Time-like or light-like with positive first coordinate.
    let dir = unit_direction(rng, len - 1);
    let r = rng.random_range(0.0..=3.0);
    let light = rng.random_bool(0.3);
    let t = if light { r } else { r + rng.random_range(0.01..=2.0) };
    let mut c = vec![t];
    c.extend(dir.iter().map(|x| x * r));
    LVec::new(c).expect("finite")
}

fn lorentz_checks(count: usize, seed: u64) -> Vec<Check> {
    let s = sub(seed, BASIC);
    let bil = par_map(count, s, |rng| {
        let len = rng.random_range(2..=5);
        let (a, b, c) = (random_vec(rng, len, 10.0), random_vec(rng, len, 10.0), random_vec(rng, len, 10.0));
        let (al, be) = (rng.random_range(-5.0..=5.0), rng.random_range(-5.0..=5.0));
        let lhs = LVec::combine(al, &a, be, &b).dot(&c);
        let rhs = al * a.dot(&c) + be * b.dot(&c);
        let scale = (al.abs() * a.euclidean_norm() + be.abs() * b.euclidean_norm()) * c.euclidean_norm();
        Ok((lhs - rhs).abs() / scale.max(1.0))
    });
    let sym = par_map(count, s ^ 1, |rng| {
        let len = rng.random_range(2..=5);
        let (a, b) = (random_vec(rng, len, 10.0), random_vec(rng, len, 10.0));
        Ok(a.dot(&b) == b.dot(&a))
    });
    let rcs = par_map(count, s ^ 2, |rng| {
        let len = rng.random_range(3..=5);
        let (x, y) = (random_positive(rng, len), random_positive(rng, len));
        let bound = -((x.norm_squared() * y.norm_squared()).max(0.0)).sqrt();
        let scale = x.euclidean_norm() * y.euclidean_norm();
        Ok(((x.dot(&y) - bound) / scale.max(1.0)).max(0.0))
    });
    let band = par_map(count, s ^ 3, |rng| {
        // Light-like vectors nudged inside / outside the classification band.
        let len = rng.random_range(3..=5);
        let dir = unit_direction(rng, len - 1);
        let r = rng.random_range(0.1..=5.0);
        let mut c = vec![r];
        c.extend(dir.iter().map(|x| x * r));
        let x = LVec::new(c).expect("finite");
        let e2 = x.euclidean_norm_squared().max(1.0);
        let tol = crate::tol::TOL_CLASS;
        let shift = |k: f64| {
            let mut c = x.coords().to_vec();
            // x∘x becomes k·tol·max(1, ‖x‖²).
            c[0] = (c[0] * c[0] - k * tol * e2).sqrt();
            LVec::new(c).expect("finite")
        };
        let inside = classify(&shift(0.1), tol).kind == CausalKind::LightLike;
        let outside = classify(&shift(10.0), tol).kind == CausalKind::SpaceLike;
        Ok(inside && outside)
    });
    let small = par_map(count, s ^ 4, |rng| {
        let n = rng.random_range(2..=3);
        let k = rng.random_range(1..=n);
        let vs: Vec<LVec> = (0..k)
            .map(|_| random_halfspace(rng, n, 2.0).vec().clone())
            .collect();
        let g = gram(&vs)?;
        let back = gram(&realize_gram(&g, n, crate::tol::TOL_SIGNATURE)?)?;
        Ok(back.max_abs_diff(&g))
    });
    vec![
        Check::residual("ldot bilinearity", bil, 1e-12),
        Check::flags("ldot symmetry", sym),
        Check::residual("reverse Cauchy-Schwarz", rcs, 1e-12),
        Check::flags("light-like band", band),
        Check::residual("realize_gram round trip (k <= n)", small, 1e-9),
    ]
}

fn object_checks(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let s = sub(seed, BASIC) ^ 0x10;
    let band = par_map(count, s, |rng| {
        let n = rng.random_range(2..=4);
        let p = random_point(rng, n, 3.0);
        let y = random_halfspace(rng, n, 2.0);
        let scale_pt = |k: f64| {
            // v∘v = -(1 + k·tol) by scaling.
            HPoint::new_with(p.vec().scaled((1.0 + k * tol.obj).sqrt()), tol.obj).is_ok()
        };
        let scale_y = |k: f64| HalfSpace::new_with(y.vec().scaled((1.0 + k * tol.obj).sqrt()), tol.obj).is_ok();
        Ok(scale_pt(0.1) && !scale_pt(10.0) && scale_y(0.1) && !scale_y(10.0))
    });
    let geo = par_map(count, s ^ 1, |rng| {
        let n = rng.random_range(2..=4);
        let p = random_point(rng, n, 2.0);
        let q = random_point(rng, n, 2.0);
        let g = Geodesic::through(&p, &q)?;
        let t = rng.random_range(-5.0..=5.0);
        let x = geodesic_eval(&g, t);
        let v = g.velocity(t);
        let unit = (x.vec().norm_squared() + 1.0).abs();
        let tangent = x.vec().dot(&v).abs();
        let speed = (v.norm_squared() - 1.0).abs();
        let hit = rel1(dist_point_point(&p, &q), {
            let d = dist_point_point(&p, &q);
            dist_point_point(&geodesic_eval(&g, d), &q) + d
        });
        Ok(unit.max(tangent).max(speed).max(hit) / x.vec().euclidean_norm_squared().max(1.0))
    });
    let expm = par_map(count, s ^ 2, |rng| {
        let n = rng.random_range(2..=4);
        let p = random_point(rng, n, 2.0);
        let dir = random_isometry(rng, n, 0.0).apply(&LVec::basis(n + 1, 1));
        // Tangent at p: project dir.
        let w = LVec::combine(1.0, &dir, dir.dot(p.vec()), p.vec());
        let len = rng.random_range(0.0..=4.0);
        let w = w.scaled(len / w.norm_squared().sqrt());
        let q = exp_map(&p, &w)?;
        Ok((dist_point_point(&p, &q) - len).abs())
    });
    let chart = par_map(count, s ^ 3, |rng| {
        let n = rng.random_range(2..=4);
        let b = random_horoball(rng, n, 2.0);
        let u = random_horosphere_point(rng, &b, 3.0, 2.0);
        Ok(on_horosphere(&b, &u))
    });
    vec![
        Check::flags("constructor bands accept 0.1 tol, reject 10 tol", band),
        Check::residual("geodesic unit speed and tangency", geo, 1e-10),
        Check::residual("exp_map distance = |w|", expm, 1e-10),
        Check::flags("horosphere chart stays on the horosphere", chart),
    ]
}

// ---------------------------------------------------------------- pairings

fn plane_foot_of_point(p: &HPoint, y: &HalfSpace) -> Result<HPoint> {
    let vy = p.vec().dot(y.vec());
    normalize_point(&LVec::combine(1.0, p.vec(), -vy, y.vec()))
}

fn pairing_checks(count: usize, seed: u64) -> Vec<Check> {
    let s = sub(seed, FEET) ^ 0x20;
    let ph = par_map(count, s, |rng| {
        let n = rng.random_range(2..=3);
        let p = random_point(rng, n, 3.0);
        let b = random_horoball(rng, n, 2.0);
        let r = sdist_point_horosphere(&p, &b)?;
        let d = r.distance.value;
        let hit = geodesic_eval(&r.witness, d);
        Ok(hit.vec().euclidean_distance(r.foot.vec()) / r.foot.vec().euclidean_norm()
            + (r.foot.vec().dot(b.vec()) + 1.0).abs()
            + (dist_point_point(&p, &r.foot) - d.abs()).abs())
    });
    let hh = par_map(count, s ^ 1, |rng| {
        let n = rng.random_range(2..=3);
        let (b0, b1) = (random_horoball(rng, n, 2.0), random_horoball(rng, n, 2.0));
        let r = sdist_horosphere_horosphere(&b0, &b1)?;
        let d = r.distance.value;
        let a = geodesic_eval(&r.witness, 0.5 * d);
        let b = geodesic_eval(&r.witness, -0.5 * d);
        let scale = r.feet.0.vec().euclidean_norm().max(r.feet.1.vec().euclidean_norm());
        Ok((a.vec().euclidean_distance(r.feet.0.vec()) + b.vec().euclidean_distance(r.feet.1.vec())) / scale
            + (r.feet.0.vec().dot(b0.vec()) + 1.0).abs()
            + (r.feet.1.vec().dot(b1.vec()) + 1.0).abs()
            + (dist_point_point(&r.feet.0, &r.feet.1) - d.abs()).abs())
    });
    let pp = par_map(count, s ^ 2, |rng| {
        let n = rng.random_range(2..=3);
        let p = random_point(rng, n, 3.0);
        let y = random_halfspace(rng, n, 2.0);
        let d = sdist_point_plane(&p, &y)?.value;
        let foot = plane_foot_of_point(&p, &y)?;
        Ok((dist_point_point(&p, &foot) - d.abs()).abs())
    });
    let hp = par_map(count, s ^ 3, |rng| {
        let n = rng.random_range(2..=3);
        loop {
            let y = random_halfspace(rng, n, 2.0);
            let b = random_horoball(rng, n, 2.0);
            if b.vec().dot(y.vec()) >= -1e-3 {
                continue;
            }
            let r = sdist_plane_horosphere(&y, &b)?;
            let h = r.distance.value;
            let hit = geodesic_eval(&r.witness, h);
            return Ok((hit.vec().dot(b.vec()) + 1.0).abs()
                + r.foot_on_plane.vec().dot(y.vec()).abs()
                + (sdist_point_horosphere(&r.foot_on_plane, &b)?.distance.value - h).abs());
        }
    });
    let perp = par_map(count, s ^ 4, |rng| {
        let n = rng.random_range(2..=3);
        loop {
            let (y1, y2) = (random_halfspace(rng, n, 2.0), random_halfspace(rng, n, 2.0));
            match plane_pair_relation(&y1, &y2) {
                Ok(PlanePairRelation::Ultraparallel { distance, .. }) if distance > 1e-3 => {
                    let (v1, v2) = perp_foot_plane_plane(&y1, &y2)?;
                    return Ok((dist_point_point(&v1, &v2) - distance).abs()
                        + v1.vec().dot(y1.vec()).abs()
                        + v2.vec().dot(y2.vec()).abs());
                }
                _ => continue,
            }
        }
    });
    vec![
        Check::residual("point-horosphere foot and witness", ph, 1e-9),
        Check::residual("horosphere-horosphere feet and witness", hh, 1e-9),
        Check::residual("point-plane foot distance", pp, 1e-9),
        Check::residual("plane-horosphere foot and witness", hp, 1e-9),
        Check::residual("plane-plane perpendicular feet", perp, 1e-9),
    ]
}

// ---------------------------------------------------------------- polygons

/// Criterion: `sinh(ℓ/2) = e^{(d − a0 − a1)/2}` on measured quadrilaterals.
pub fn quad_cosine_law(count: usize, seed: u64) -> Check {
    let out = par_map(count, sub(seed, QUAD), |rng| {
        let (x0, x1, y) = quad_instance(rng);
        Ok(quad_build(&x0, &x1, &y)?.residuals()?.cosine)
    });
    Check::residual("quadrilateral cosine law", out, 1e-9)
}

/// Criterion: the three ratios `θ0/e^{a1}`, `θ1/e^{a0}`, `sinh ℓ/(2e^d)` agree.
pub fn quad_sine_law(count: usize, seed: u64) -> Check {
    let out = par_map(count, sub(seed, QUAD), |rng| {
        let (x0, x1, y) = quad_instance(rng);
        let r = quad_build(&x0, &x1, &y)?.residuals()?;
        Ok(r.sine.iter().copied().fold(0.0, f64::max))
    });
    Check::residual("quadrilateral sine law", out, 1e-9)
}

fn quad_extra_checks(count: usize, seed: u64) -> Vec<Check> {
    let data = par_map(count, sub(seed, QUAD), |rng| {
        let (x0, x1, y) = quad_instance(rng);
        let q = quad_build(&x0, &x1, &y)?;
        let r = q.residuals()?;
        let side = rel1(quad_side(q.d, q.a0, q.a1), q.ell);
        let (t0, t1) = quad_arcs(q.ell, q.d, q.a0, q.a1);
        Ok((r.right_angle, r.radical, side, rel(t0, q.theta0).max(rel(t1, q.theta1))))
    });
    let pick = |f: fn(&(f64, f64, f64, f64)) -> f64| {
        data.iter().map(|r| r.as_ref().map(f).map_err(Clone::clone)).collect::<Vec<_>>()
    };
    vec![
        Check::residual("quadrilateral right angles", pick(|r| r.0), 1e-8),
        Check::residual("quadrilateral arc radical vs horocyclic distance", pick(|r| r.1), 1e-10),
        Check::residual("quad_side agrees with measured side", pick(|r| r.2), 1e-9),
        Check::residual("quad_arcs agrees with measured arcs", pick(|r| r.3), 1e-9),
    ]
}

/// Criterion: both pentagon identities on measured pentagons.
pub fn pent_laws(count: usize, seed: u64) -> Check {
    let out = par_map(count, sub(seed, PENT), |rng| {
        let (x, y0, y1) = pent_instance(rng);
        Ok(pent_build(&x, &y0, &y1)?.residuals()?.max_law())
    });
    Check::residual("pentagon laws", out, 1e-9)
}

/// Criterion: with `a0 = a1` the legs satisfy `cosh ℓ = coth(d/2)`.
pub fn pent_symmetric(count: usize, seed: u64) -> Check {
    let out = par_map(count, sub(seed, PENT_SYM), |rng| {
        let (x, lo, hi) = symmetric_pent_instance(rng);
        let p = pent_build(&x, &lo, &hi)?;
        // The ideal vertex is moved by an isometry, so a0 - a1 is only zero up to roundoff;
        // rescale x so both offsets vanish exactly.
        let c = x.rescaled((-p.a0).exp())?;
        let p = pent_build(&c, &lo, &hi)?;
        let want = 1.0 / (0.5 * p.d).tanh();
        Ok(rel(p.ell0.cosh(), want).max(rel(p.ell1.cosh(), want)))
    });
    Check::residual("symmetric pentagon cosh l = coth(d/2)", out, 1e-10)
}

fn pent_extra_checks(count: usize, seed: u64) -> Vec<Check> {
    let data = par_map(count, sub(seed, PENT), |rng| {
        let (x, y0, y1) = pent_instance(rng);
        let p = pent_build(&x, &y0, &y1)?;
        let r = p.residuals()?;
        let (f0, f1) = perp_foot_plane_plane(&y0, &y1)?;
        let feet = p.w0.vec().euclidean_distance(f0.vec()).max(p.w1.vec().euclidean_distance(f1.vec()))
            / p.w0.vec().euclidean_norm().max(p.w1.vec().euclidean_norm());
        let (l0, l1) = pent_sides(p.d, p.a0, p.a1)?;
        let sides = rel1(l0, p.ell0).max(rel1(l1, p.ell1));
        let arc = rel(pent_arc(p.d, p.a0, p.a1, p.ell0, p.ell1)?, p.theta);
        Ok((r.right_angle, r.radical, feet, sides.max(arc)))
    });
    let pick = |f: fn(&(f64, f64, f64, f64)) -> f64| {
        data.iter().map(|r| r.as_ref().map(f).map_err(Clone::clone)).collect::<Vec<_>>()
    };
    vec![
        Check::residual("pentagon right angles", pick(|r| r.0), 1e-8),
        Check::residual("pentagon arc radical vs horocyclic distance", pick(|r| r.1), 1e-10),
        Check::residual("pentagon w_i match perpendicular feet", pick(|r| r.2), 1e-10),
        Check::residual("pent_sides and pent_arc agree with measurements", pick(|r| r.3), 1e-9),
    ]
}

// ---------------------------------------------------------------- tetra

fn oracle_instances(count: usize, seed: u64, tol: &Tolerances) -> Vec<Result<TruncatedTetrahedron>> {
    par_map(count, sub(seed, TETRA), |rng| {
        let l = edge_matrix(rng, 0.1, 5.0);
        TruncatedTetrahedron::from_edge_lengths_with(&l, *tol)
    })
}

/// `D(s, t)` through the realized normals, with the curve bases precomputed.
fn geometric_objective(
    t: &TruncatedTetrahedron,
    pair: crate::tetra::EdgePair,
) -> Result<impl Fn(f64, f64) -> f64 + '_> {
    let ((i, j), (k, l)) = pair;
    let vi = t.foot(i, j)?.into_vec();
    let vk = t.foot(k, l)?.into_vec();
    let yi = t.normals()[i].vec();
    let yk = t.normals()[k].vec();
    let (a, b, c, d) = (vi.dot(&vk), vi.dot(yk), yi.dot(&vk), yi.dot(yk));
    // Pairings taken from the realized vectors, not from the edge-matrix formulas.
    Ok(move |s: f64, u: f64| {
        let (cs, ss, cu, su) = (s.cosh(), s.sinh(), u.cosh(), u.sinh());
        -(cs * cu * a - cs * su * b - ss * cu * c + ss * su * d)
    })
}

/// Criterion: closed-form transversal length vs grid oracle, and vanishing gradient.
pub fn transversal_vs_oracle(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let insts = oracle_instances(count, seed, tol);
    let rows: Vec<Result<(f64, f64, f64)>> = insts
        .par_iter()
        .map(|t| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut worst = (0.0f64, 0.0f64, 0.0f64);
            for pair in OPPOSITE_PAIRS {
                let tr = t.transversal(pair)?;
                let f = geometric_objective(t, pair)?;
                let rep = minimize_2d(&f, (tr.s0, tr.t0), 5.0, 1e-6)?;
                let t_oracle = rep.value.max(1.0).acosh();
                let t_closed = tr.cosh_t.max(1.0).acosh();
                let h = fd_step((tr.s0, tr.t0));
                let (gs, gt) = fd_gradient(&f, (tr.s0, tr.t0), h);
                let d0 = f(tr.s0, tr.t0);
                worst.0 = worst.0.max((t_closed - t_oracle).abs());
                worst.1 = worst.1.max(gs.hypot(gt));
                worst.2 = worst.2.max(d0 - rep.value);
            }
            Ok(worst)
        })
        .collect();
    let pick = |f: fn(&(f64, f64, f64)) -> f64| {
        rows.iter().map(|r| r.as_ref().map(f).map_err(Clone::clone)).collect::<Vec<_>>()
    };
    vec![
        Check::residual("transversal closed form vs oracle |T - T_oracle|", pick(|r| r.0), 1e-6),
        Check::residual("finite-difference gradient at (s0, t0)", pick(|r| r.1), 1e-6),
        Check::residual("no grid value below D(s0, t0) over [s0 +- 5] x [t0 +- 5]", pick(|r| r.2), 1e-8),
    ]
}

fn analytic_gradient(count: usize, seed: u64, tol: &Tolerances) -> Check {
    let insts = oracle_instances(count, seed, tol);
    let out = insts
        .par_iter()
        .enumerate()
        .map(|(idx, t)| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut rng = instance_rng(sub(seed, TETRA) ^ 0x77, idx as u64);
            let pair = OPPOSITE_PAIRS[idx % 3];
            let p = Pairings::from_edges(t.edges(), pair);
            let (s, u) = (rng.random_range(-2.0..=4.0), rng.random_range(-2.0..=4.0));
            let (gs, gu) = p.gradient(s, u);
            let (fs, fu) = fd_gradient(|a, b| p.distance(a, b), (s, u), fd_step((s, u)));
            let scale = p.distance(s, u).abs().max(1.0);
            Ok((gs - fs).abs().max((gu - fu).abs()) / scale)
        })
        .collect();
    Check::residual("analytic dD/ds, dD/dt vs finite differences", out, 1e-6)
}

/// Criterion: `a < 0`, `b + 2a > 0`, root product 1, smaller root in (0, 1).
pub fn quadratic_structure(count: usize, seed: u64, tol: &Tolerances) -> Check {
    let insts = oracle_instances(count, seed, tol);
    let out = insts
        .par_iter()
        .map(|t| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut worst = 0.0f64;
            for pair in OPPOSITE_PAIRS {
                let tr = t.transversal(pair)?;
                let (a, b) = (tr.quad_a, tr.quad_b);
                let (r0, r1) = tr.roots;
                if !(a < 0.0 && b + 2.0 * a > 0.0 && r0 > 0.0 && r0 < 1.0) {
                    return Err(GeomError::InconsistentInputs(format!(
                        "pair {pair:?}: a = {a}, b = {b}, roots = ({r0}, {r1})"
                    )));
                }
                worst = worst.max((r0 * r1 - 1.0).abs());
            }
            Ok(worst)
        })
        .collect();
    Check::residual("critical-point quadratic structure", out, 1e-10)
}

fn closed_t(l: &EdgeMatrix, tol: &Tolerances) -> Result<f64> {
    Ok(critical_point(l, OPPOSITE_PAIRS[0], tol.quad)?.length())
}

/// Criterion: equality case `a = b = c = d = L` and strict increase under bumps.
pub fn symmetric_equality(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let rows = par_map(count, sub(seed, TETRA_SYM), |rng| -> Result<(f64, f64)> {
        let (x, y, big_l) = symmetric_triple(rng, 0.1, 5.0);
        let pair = OPPOSITE_PAIRS[0];
        let l = EdgeMatrix::from_args(pair, x, y, [big_l; 4])?;
        let t = TruncatedTetrahedron::from_edge_lengths_with(&l, *tol)?;
        let tr = t.transversal(pair)?;
        let bound = transversal_bound(x, y, big_l)?;
        let base = closed_t(&l, tol)?;
        let mut min_gain = f64::INFINITY;
        for m in 0..4 {
            let mut abcd = [big_l; 4];
            abcd[m] += 0.01;
            let bumped = closed_t(&EdgeMatrix::from_args(pair, x, y, abcd)?, tol)?;
            min_gain = min_gain.min(bumped - base);
        }
        Ok((rel(tr.cosh_t, bound), min_gain))
    });
    let eq = rows.iter().map(|r| r.as_ref().map(|v| v.0).map_err(Clone::clone)).collect();
    let mono = rows
        .iter()
        .map(|r| r.as_ref().map(|v| v.1 > 1e-12).map_err(Clone::clone))
        .collect();
    vec![
        Check::residual("symmetric case cosh T = 2L/sqrt((x-1)(y-1))", eq, 1e-10),
        Check::flags("symmetric case: +0.01 on any of a,b,c,d increases T", mono),
    ]
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Criterion: permutation invariance of `T(x, y; a, b, c, d)` and monotonicity.
///
/// Reports the full symmetric group, the subgroup of relabelings that fix the edge pair,
/// and single-entry increases separately.
pub fn symmetry_and_monotonicity(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let perms = permutations4();
    // (a,b,c,d) = (L_ik, L_il, L_jk, L_jl); swapping i<->j and/or k<->l permutes them as:
    let relabelings: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let rows = par_map(count, sub(seed, TETRA_PERM), |rng| -> Result<(f64, f64, usize, bool)> {
        let l = edge_matrix(rng, 0.1, 5.0);
        let pair = OPPOSITE_PAIRS[0];
        let (x, y, abcd) = l.args(pair);
        let base = closed_t(&l, tol)?;
        let mut all_worst = 0.0f64;
        let mut used = 0usize;
        let mut relabel_worst = 0.0f64;
        for p in &perms {
            let q = [abcd[p[0]], abcd[p[1]], abcd[p[2]], abcd[p[3]]];
            let lp = EdgeMatrix::from_args(pair, x, y, q)?;
            if lp.normal_gram_det() >= 0.0 {
                continue;
            }
            used += 1;
            let d = rel1(closed_t(&lp, tol)?, base);
            all_worst = all_worst.max(d);
            if relabelings.contains(p) {
                relabel_worst = relabel_worst.max(d);
            }
        }
        let mut increasing = true;
        for m in 0..4 {
            let mut q = abcd;
            q[m] += 0.01;
            let bumped = closed_t(&EdgeMatrix::from_args(pair, x, y, q)?, tol)?;
            increasing &= bumped - base > 1e-12;
        }
        Ok((all_worst, relabel_worst, used, increasing))
    });
    let used: usize = rows.iter().filter_map(|r| r.as_ref().ok()).map(|r| r.2).sum();
    let all = rows.iter().map(|r| r.as_ref().map(|v| v.0).map_err(Clone::clone)).collect();
    let rel4 = rows.iter().map(|r| r.as_ref().map(|v| v.1).map_err(Clone::clone)).collect();
    let mono = rows.iter().map(|r| r.as_ref().map(|v| v.3).map_err(Clone::clone)).collect();
    vec![
        Check::residual("T invariant under all 24 permutations of (a,b,c,d)", all, 1e-9)
            .with_note(format!("{used} realizable permutations compared")),
        Check::residual("T invariant under relabelings fixing the edge pair", rel4, 1e-9),
        Check::flags("+0.01 on any of a,b,c,d increases T", mono),
    ]
}

fn point_in_all_halfspaces(t: &TruncatedTetrahedron, p: &HPoint, skip: usize) -> f64 {
    (0..4)
        .filter(|&i| i != skip)
        .map(|i| p.vec().dot(t.normals()[i].vec()))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn tetra_extra_checks(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let insts = oracle_instances(count, seed, tol);
    let bound = insts
        .par_iter()
        .map(|t| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut worst = f64::NEG_INFINITY;
            for pair in OPPOSITE_PAIRS {
                let (x, y, abcd) = t.edges().args(pair);
                let lo = abcd.iter().copied().fold(f64::INFINITY, f64::min);
                let b = transversal_bound(x, y, lo)?;
                let tr = t.transversal(pair)?;
                worst = worst.max((b - tr.cosh_t) / b);
            }
            Ok(worst.max(0.0))
        })
        .collect();
    let depend = insts
        .par_iter()
        .enumerate()
        .map(|(idx, t)| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut rng = instance_rng(sub(seed, TETRA) ^ 0x31, idx as u64);
            let mut lens = Vec::new();
            for _ in 0..2 {
                let g = random_isometry(&mut rng, 3, 1.0);
                let ys = t.normals().clone().map(|h| HalfSpace::trusted(g.apply(h.vec())));
                let moved = TruncatedTetrahedron::from_normals_with(ys, *t.tolerances())?;
                lens.push(moved.transversals()?.map(|x| x.length));
            }
            Ok((0..3).map(|k| (lens[0][k] - lens[1][k]).abs()).fold(0.0, f64::max))
        })
        .collect();
    let contain = insts
        .par_iter()
        .enumerate()
        .map(|(idx, t)| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut rng = instance_rng(sub(seed, TETRA) ^ 0x32, idx as u64);
            let mut ok = true;
            for j in 0..4 {
                for k in 0..4 {
                    if k == j {
                        continue;
                    }
                    let foot = t.foot(j, k)?;
                    ok &= point_in_all_halfspaces(t, &foot, j) <= t.tolerances().obj;
                    // A few more points of P_j near the foot: P_j must stay inside every H_i.
                    for _ in 0..4 {
                        let p = random_plane_point(&mut rng, &t.normals()[j], &foot, 3.0);
                        ok &= point_in_all_halfspaces(t, &p, j) <= 1e-9 * p.vec().euclidean_norm_squared();
                    }
                }
                for i in 0..4 {
                    if i != j {
                        let e = t.internal_edge(i, j)?;
                        let mid = t.edge_point(i, j, 0.5 * e.length)?;
                        ok &= t.member(&mid)?;
                    }
                }
            }
            Ok(ok)
        })
        .collect();
    let routes = insts
        .par_iter()
        .enumerate()
        .map(|(idx, t)| {
            let t = t.as_ref().map_err(Clone::clone)?;
            let mut rng = instance_rng(sub(seed, TETRA) ^ 0x33, idx as u64);
            let mut worst = 0.0f64;
            for pair in OPPOSITE_PAIRS {
                for _ in 0..4 {
                    let (s, u) = (rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0));
                    let a = t.distance_function(pair, s, u)?;
                    let b = t.distance_geometric(pair, s, u)?;
                    worst = worst.max(rel1(a, b));
                    if a < 1.0 - 1e-12 {
                        return Err(GeomError::InconsistentInputs(format!("D = {a} < 1")));
                    }
                }
            }
            Ok(worst)
        })
        .collect();
    vec![
        Check::residual("cosh T >= 2L/sqrt((x-1)(y-1)) with L = min(a,b,c,d)", bound, 1e-9),
        Check::residual("T depends only on edge lengths (two random conjugations)", depend, 1e-9),
        Check::flags("each P_j lies in every H_i; internal edge midpoints are members", contain),
        Check::residual("D(s,t) from edge matrix vs curve points", routes, 1e-10),
        degeneracy_coherence(count, seed, tol),
    ]
}

/// Normals of four lines of `H²` (as planes of `H³` orthogonal to `x₃ = 0`) at distance `r`
/// from the origin, tilted out of that plane by `eps`.
fn near_octagon<R: Rng>(rng: &mut R, eps: f64) -> Option<[HalfSpace; 4]> {
    let r: f64 = rng.random_range(1.0..=2.5);
    let base = rng.random_range(0.0..std::f64::consts::TAU);
    let ys: Vec<HalfSpace> = (0..4)
        .map(|k| {
            let phi = base + k as f64 * std::f64::consts::FRAC_PI_2 + rng.random_range(-0.2..=0.2);
            let tilt = eps * rng.random_range(-1.0..=1.0);
            let v = LVec::new(vec![r.sinh(), r.cosh() * phi.cos(), r.cosh() * phi.sin(), tilt * r.cosh()])
                .expect("finite");
            HalfSpace::from_spacelike(&v).expect("space-like")
        })
        .collect();
    ys.try_into().ok()
}

/// Degeneracy verdicts from the hat planes and from the transversals agree on near-octagon
/// configurations, excluding instances whose deciding quantity lies within a factor 10 of
/// `tol.deg`.
fn degeneracy_coherence(count: usize, seed: u64, tol: &Tolerances) -> Check {
    let rows = par_map(count, sub(seed, TETRA) ^ 0x34, |rng| -> Result<Option<bool>> {
        let eps = 10f64.powf(rng.random_range(-12.0..=-1.0));
        let Some(ys) = near_octagon(rng, eps) else { return Ok(None) };
        let t = match TruncatedTetrahedron::from_normals_with(ys, *tol) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let hat_metric = (0..4)
            .map(|i| t.hat_plane(i).map(|h| h.z.vec().dot(t.normals()[i].vec()).abs()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let trs = t.transversals()?;
        let tr_metric = trs.iter().map(|x| x.cosh_t - 1.0).fold(f64::INFINITY, f64::min);
        let near = |m: f64| m > tol.deg / 10.0 && m < tol.deg * 10.0;
        if near(hat_metric) || near(tr_metric) {
            return Ok(None);
        }
        let by_hat = t.is_degenerate();
        let by_transversal = trs.iter().any(|x| x.degenerate);
        Ok(Some(by_hat == by_transversal))
    });
    let used = rows.iter().filter(|r| matches!(r, Ok(Some(_)))).count();
    let outcomes: Vec<Result<bool>> = rows
        .into_iter()
        .filter_map(|r| match r {
            Ok(Some(b)) => Some(Ok(b)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect();
    Check::flags("degeneracy: hat planes agree with transversals", outcomes)
        .with_note(format!("{used} instances outside the exclusion band"))
}

// ---------------------------------------------------------------- oracle criteria

fn multiscale<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-8.0f64..=1.5).exp()
}

/// Criterion: no sampled configuration beats a closed-form foot distance.
pub fn feet_are_minimizers(count: usize, seed: u64) -> Vec<Check> {
    const SAMPLES: usize = 1000;
    let s = sub(seed, FEET);
    let ph = par_map(count, s, |rng| {
        let n = 2 + (rng.random_range(0..2) as usize);
        let p = random_point(rng, n, 3.0);
        let b = random_horoball(rng, n, 2.0);
        let r = sdist_point_horosphere(&p, &b)?;
        let closed = r.distance.value.abs();
        let mut first = true;
        let min = sample_min_distance(
            || {
                if std::mem::take(&mut first) {
                    return r.foot.clone();
                }
                let len = multiscale(rng);
                let w = random_horosphere_tangent(rng, &b, &r.foot, len);
                horosphere_chart(&b, &r.foot, &w).expect("tangent")
            },
            |u| dist_point_point(&p, u),
            SAMPLES,
        );
        Ok(closed - min)
    });
    let hh = par_map(count, s ^ 1, |rng| {
        let n = 2 + (rng.random_range(0..2) as usize);
        let (b0, b1, r) = loop {
            let (b0, b1) = (random_horoball(rng, n, 2.0), random_horoball(rng, n, 2.0));
            let r = sdist_horosphere_horosphere(&b0, &b1)?;
            if r.distance.value > 0.05 {
                break (b0, b1, r);
            }
        };
        let closed = r.distance.value;
        let mut first = true;
        let min = sample_min_distance(
            || {
                if std::mem::take(&mut first) {
                    return (r.feet.0.clone(), r.feet.1.clone());
                }
                let (l0, l1) = (multiscale(rng), multiscale(rng));
                let w0 = random_horosphere_tangent(rng, &b0, &r.feet.0, l0);
                let w1 = random_horosphere_tangent(rng, &b1, &r.feet.1, l1);
                (
                    horosphere_chart(&b0, &r.feet.0, &w0).expect("tangent"),
                    horosphere_chart(&b1, &r.feet.1, &w1).expect("tangent"),
                )
            },
            |(u, v)| dist_point_point(u, v),
            SAMPLES,
        );
        Ok(closed - min)
    });
    let pp = par_map(count, s ^ 2, |rng| {
        let n = 2 + (rng.random_range(0..2) as usize);
        let p = random_point(rng, n, 3.0);
        let y = random_halfspace(rng, n, 2.0);
        let closed = sdist_point_plane(&p, &y)?.value.abs();
        let foot = plane_foot_of_point(&p, &y)?;
        let mut first = true;
        let min = sample_min_distance(
            || {
                if std::mem::take(&mut first) {
                    return foot.clone();
                }
                let r = multiscale(rng);
                random_plane_point(rng, &y, &foot, r)
            },
            |u| dist_point_point(&p, u),
            SAMPLES,
        );
        Ok(closed - min)
    });
    let hp = par_map(count, s ^ 3, |rng| {
        let n = 2 + (rng.random_range(0..2) as usize);
        let (y, b, r) = loop {
            let y = random_halfspace(rng, n, 2.0);
            let b = random_horoball(rng, n, 2.0);
            if b.vec().dot(y.vec()) >= 0.0 {
                continue;
            }
            let r = sdist_plane_horosphere(&y, &b)?;
            if r.distance.value > 0.05 {
                break (y, b, r);
            }
        };
        let closed = r.distance.value;
        let hit = geodesic_eval(&r.witness, closed);
        let mut first = true;
        let min = sample_min_distance(
            || {
                if std::mem::take(&mut first) {
                    return (r.foot_on_plane.clone(), hit.clone());
                }
                let rp = multiscale(rng);
                let a = random_plane_point(rng, &y, &r.foot_on_plane, rp);
                let len = multiscale(rng);
                let w = random_horosphere_tangent(rng, &b, &hit, len);
                (a, horosphere_chart(&b, &hit, &w).expect("tangent"))
            },
            |(u, v)| dist_point_point(u, v),
            SAMPLES,
        );
        Ok(closed - min)
    });
    vec![
        Check::residual("point-horosphere foot is the nearest point", ph, 1e-8),
        Check::residual("horosphere-horosphere feet are the nearest pair", hh, 1e-8),
        Check::residual("point-plane foot is the nearest point", pp, 1e-8),
        Check::residual("plane-horosphere feet are the nearest pair", hp, 1e-8),
    ]
}

/// Criterion: `d_S / 2 = sinh(d_H / 2)` for pairs of points on a horosphere.
pub fn comparison_equation(count: usize, seed: u64) -> Check {
    let out = par_map(count, sub(seed, HORO), |rng| {
        let n = 2 + (rng.random_range(0..2) as usize);
        let b = random_horoball(rng, n, 2.0);
        let u0 = random_horosphere_point(rng, &b, 3.0, 1.5);
        let len = rng.random_range(-6.0f64..=2.3).exp();
        let w = random_horosphere_tangent(rng, &b, &u0, len);
        let u1 = horosphere_chart(&b, &u0, &w)?;
        let ds = horocyclic_distance(&b, &u0, &u1)?;
        let dh = dist_point_point(&u0, &u1);
        Ok((0.5 * ds - (0.5 * dh).sinh()).abs())
    });
    Check::residual("comparison equation d_S/2 = sinh(d_H/2)", out, 1e-9)
}

/// Criterion: Gram realization round trip and rejection of bad signatures.
pub fn realize_round_trip(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let s = sub(seed, REALIZE);
    let good = par_map(count, s, |rng| {
        let l = edge_matrix(rng, 0.1, 5.0);
        let g = l.normal_gram();
        let vs = realize_gram(&g, 3, tol.signature)?;
        Ok(gram(&vs)?.max_abs_diff(&g))
    });
    let bad = par_map(count, s ^ 1, |rng| {
        // Edge matrices with det(2I − L) > 0 have two negative eigenvalues.
        loop {
            let mut m = [[1.0; 4]; 4];
            for i in 0..4 {
                for j in i + 1..4 {
                    let v = rng.random_range(0.1f64..=5.0).cosh();
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            let l = EdgeMatrix::new(m)?;
            if l.normal_gram_det() <= 0.0 {
                continue;
            }
            let g: GramMatrix = l.normal_gram();
            return Ok(matches!(realize_gram(&g, 3, tol.signature), Err(GeomError::SignatureError(_)))
                && matches!(
                    TruncatedTetrahedron::from_edge_lengths_with(&l, *tol),
                    Err(GeomError::SignatureError(_))
                ));
        }
    });
    vec![
        Check::residual("Gram realization round trip", good, 1e-9),
        Check::flags("two-negative-eigenvalue matrices rejected with SignatureError", bad),
    ]
}

/// Criterion: distances and transversal lengths are invariant under `O⁺(1, n)`.
pub fn isometry_invariance(count: usize, seed: u64, tol: &Tolerances) -> Vec<Check> {
    const CONJUGATIONS: usize = 50;
    let s = sub(seed, ISO);
    type Measure = fn(&mut InstanceRng, &Tolerances) -> Result<Box<dyn Fn(&crate::lorentz::LorentzTransform) -> Result<Vec<f64>>>>;
    let classes: Vec<(&str, usize, Measure)> = vec![
        ("point-point", 3, |rng, _| {
            let (p, q) = (random_point(rng, 3, 3.0), random_point(rng, 3, 3.0));
            Ok(Box::new(move |g| {
                Ok(vec![dist_point_point(&HPoint::new(g.apply(p.vec()))?, &HPoint::new(g.apply(q.vec()))?)])
            }))
        }),
        ("point-horosphere", 3, |rng, _| {
            let (p, b) = (random_point(rng, 3, 3.0), random_horoball(rng, 3, 2.0));
            Ok(Box::new(move |g| {
                let r = sdist_point_horosphere(&HPoint::new(g.apply(p.vec()))?, &Horoball::new(g.apply(b.vec()))?)?;
                Ok(vec![r.distance.value])
            }))
        }),
        ("horosphere-horosphere", 3, |rng, _| {
            let (a, b) = (random_horoball(rng, 3, 2.0), random_horoball(rng, 3, 2.0));
            Ok(Box::new(move |g| {
                let r = sdist_horosphere_horosphere(&Horoball::new(g.apply(a.vec()))?, &Horoball::new(g.apply(b.vec()))?)?;
                Ok(vec![r.distance.value])
            }))
        }),
        ("point-plane", 3, |rng, _| {
            let (p, y) = (random_point(rng, 3, 3.0), random_halfspace(rng, 3, 2.0));
            Ok(Box::new(move |g| {
                Ok(vec![sdist_point_plane(&HPoint::new(g.apply(p.vec()))?, &HalfSpace::new(g.apply(y.vec()))?)?.value])
            }))
        }),
        ("plane-horosphere", 3, |rng, _| {
            let (y, b) = loop {
                let (y, b) = (random_halfspace(rng, 3, 2.0), random_horoball(rng, 3, 2.0));
                if b.vec().dot(y.vec()) < -1e-3 {
                    break (y, b);
                }
            };
            Ok(Box::new(move |g| {
                let r = sdist_plane_horosphere(&HalfSpace::new(g.apply(y.vec()))?, &Horoball::new(g.apply(b.vec()))?)?;
                Ok(vec![r.distance.value])
            }))
        }),
        ("plane-plane", 3, |rng, _| {
            let (a, b) = (random_halfspace(rng, 3, 2.0), random_halfspace(rng, 3, 2.0));
            Ok(Box::new(move |g| {
                let r = plane_pair_relation(&HalfSpace::new(g.apply(a.vec()))?, &HalfSpace::new(g.apply(b.vec()))?)?;
                Ok(match r {
                    PlanePairRelation::Intersecting { angle } => vec![angle],
                    PlanePairRelation::Ultraparallel { distance, .. } => vec![distance],
                    PlanePairRelation::Parallel => vec![0.0],
                })
            }))
        }),
        ("quadrilateral", 2, |rng, _| {
            let (x0, x1, y) = quad_instance(rng);
            Ok(Box::new(move |g| {
                let q = quad_build(&Horoball::new(g.apply(x0.vec()))?, &Horoball::new(g.apply(x1.vec()))?, &HalfSpace::new(g.apply(y.vec()))?)?;
                Ok(vec![q.ell, q.a0, q.a1, q.d, q.theta0, q.theta1])
            }))
        }),
        ("pentagon", 2, |rng, _| {
            let (x, y0, y1) = pent_instance(rng);
            Ok(Box::new(move |g| {
                let p = pent_build(&Horoball::new(g.apply(x.vec()))?, &HalfSpace::new(g.apply(y0.vec()))?, &HalfSpace::new(g.apply(y1.vec()))?)?;
                Ok(vec![p.d, p.ell0, p.ell1, p.a0, p.a1, p.theta])
            }))
        }),
        ("tetrahedron transversals", 3, |rng, tol| {
            let l = edge_matrix(rng, 0.1, 5.0);
            let t = TruncatedTetrahedron::from_edge_lengths_with(&l, *tol)?;
            let tol = *tol;
            Ok(Box::new(move |g| {
                let ys = t.normals().clone().map(|h| HalfSpace::trusted(g.apply(h.vec())));
                let moved = TruncatedTetrahedron::from_normals_with(ys, tol)?;
                Ok(moved.transversals()?.iter().map(|x| x.length).collect())
            }))
        }),
    ];
    classes
        .into_iter()
        .enumerate()
        .map(|(c, (name, n, make))| {
            let out = par_map(count, s ^ (c as u64), |rng| {
                let measure = make(rng, tol)?;
                let base = measure(&crate::lorentz::LorentzTransform::identity(n + 1))?;
                let mut worst = 0.0f64;
                for _ in 0..CONJUGATIONS {
                    let g = random_isometry(rng, n, 1.0);
                    let moved = measure(&g)?;
                    for (a, b) in base.iter().zip(&moved) {
                        worst = worst.max(rel1(*a, *b));
                    }
                }
                Ok(worst)
            });
            Check::residual(&format!("isometry invariance: {name}"), out, 1e-9)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::INDIVIDUAL.iter().chain(&[Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = RunConfig { seed: 11, count: Some(20), tol: Tolerances::default() };
        let a = run_suite(Suite::Quad, &cfg);
        let b = run_suite(Suite::Quad, &cfg);
        assert_eq!(a, b);
        assert!(a[0].passed(), "{:?}", a[0].checks);
    }

    #[test]
    fn permutation_table_is_complete() {
        let p = permutations4();
        assert_eq!(p.len(), 24);
    }
}
