//! Seeded random instances.
//!
//! Every instance draws from its own xoshiro256++ stream, keyed by `(seed, index)` through
//! SplitMix64, so batch results do not depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::Result;
use crate::lorentz::{LVec, LorentzTransform};
use crate::objects::{exp_map, horosphere_chart, HPoint, HalfSpace, Horoball};
use crate::pairings::sdist_point_horosphere;
use crate::tetra::{EdgeMatrix, TruncatedTetrahedron};
use crate::tol::Tolerances;

pub type InstanceRng = Xoshiro256PlusPlus;

/// Stream for instance `index` of a batch seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> InstanceRng {
    Xoshiro256PlusPlus::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Uniform direction on the unit sphere of `R^n`.
pub fn unit_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r2: f64 = v.iter().map(|x| x * x).sum();
        if r2 > 1e-4 && r2 <= 1.0 {
            let r = r2.sqrt();
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

/// Tangent vector at the origin `(0, dir·len)`.
fn origin_tangent(dir: &[f64], len: f64) -> LVec {
    let mut c = vec![0.0];
    c.extend(dir.iter().map(|x| x * len));
    LVec::new(c).expect("finite")
}

/// Point at hyperbolic distance uniform in `[0, max_r]` from the origin.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, max_r: f64) -> HPoint {
    let r = rng.random_range(0.0..=max_r);
    let dir = unit_direction(rng, n);
    exp_map(&HPoint::origin(n), &origin_tangent(&dir, r)).expect("tangent at origin")
}

/// Horoball with uniformly random centre and `ln` of its scale uniform in `[-s, s]`.
pub fn random_horoball<R: Rng>(rng: &mut R, n: usize, log_scale: f64) -> Horoball {
    let dir = unit_direction(rng, n);
    let scale = rng.random_range(-log_scale..=log_scale).exp();
    Horoball::from_direction(&dir, scale).expect("valid direction")
}

/// Half-space whose plane passes at signed distance uniform in `[-r, r]` from the origin.
pub fn random_halfspace<R: Rng>(rng: &mut R, n: usize, max_r: f64) -> HalfSpace {
    let r = rng.random_range(-max_r..=max_r);
    let dir = unit_direction(rng, n);
    let mut c = vec![r.sinh()];
    c.extend(dir.iter().map(|x| x * r.cosh()));
    HalfSpace::new(LVec::new(c).expect("finite")).expect("unit space-like")
}

/// Element of `O⁺(1, n)`: a boost along every axis followed by a rotation in every
/// coordinate plane, with rapidities uniform in `[-max_rapidity, max_rapidity]`.
pub fn random_isometry<R: Rng>(rng: &mut R, n: usize, max_rapidity: f64) -> LorentzTransform {
    let len = n + 1;
    let mut g = LorentzTransform::identity(len);
    for axis in 1..len {
        let b = LorentzTransform::boost(len, axis, rng.random_range(-max_rapidity..=max_rapidity));
        g = b.compose(&g);
    }
    for i in 1..len {
        for j in i + 1..len {
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            g = LorentzTransform::rotation(len, i, j, angle).compose(&g);
        }
    }
    g
}

/// Random point of the horosphere of `b`, at horocyclic distance `e^{U[-lo, hi]}` from the
/// horosphere point nearest the origin.
pub fn random_horosphere_point<R: Rng>(rng: &mut R, b: &Horoball, lo: f64, hi: f64) -> HPoint {
    let n = b.dim();
    let base = sdist_point_horosphere(&HPoint::origin(n), b).expect("same dimension").foot;
    let len = rng.random_range(-lo..=hi).exp();
    let w = random_horosphere_tangent(rng, b, &base, len);
    horosphere_chart(b, &base, &w).expect("tangent to horosphere")
}

/// Vector of Lorentz length `len` tangent to the horosphere of `b` at `u`.
pub fn random_horosphere_tangent<R: Rng>(rng: &mut R, b: &Horoball, u: &HPoint, len: f64) -> LVec {
    let n = b.dim();
    loop {
        let raw = origin_tangent(&unit_direction(rng, n), 1.0);
        // Remove the span{u, x} component: w = raw - αu - βx with w∘x = 0 and w∘u = 0.
        let (x, uv) = (b.vec(), u.vec());
        let ux = uv.dot(x);
        let alpha = raw.dot(x) / ux;
        let beta = (raw.dot(uv) + alpha) / ux;
        let w = LVec::combine(1.0, &raw, -alpha, uv);
        let w = LVec::combine(1.0, &w, -beta, x);
        let ww = w.norm_squared();
        if ww > 1e-6 {
            return w.scaled(len / ww.sqrt());
        }
    }
}

/// A random point of `{v∘y = 0}` within distance `max_r` of `base`, itself on the plane.
pub fn random_plane_point<R: Rng>(rng: &mut R, y: &HalfSpace, base: &HPoint, max_r: f64) -> HPoint {
    let n = y.dim();
    loop {
        let raw = origin_tangent(&unit_direction(rng, n), 1.0);
        let (b, yy) = (base.vec(), y.vec());
        // Tangent at base orthogonal to y (base lies on the plane, so b∘y = 0).
        let w = LVec::combine(1.0, &raw, raw.dot(b), b);
        let w = LVec::combine(1.0, &w, -w.dot(yy), yy);
        let ww = w.norm_squared();
        if ww > 1e-6 {
            let r = rng.random_range(0.0..=max_r);
            return exp_map(base, &w.scaled(r / ww.sqrt())).expect("tangent");
        }
    }
}

/// `(x0, x1, y)` in `H²` with `x_i∘y < 0`, `|a_i| ≤ 3`, `|d| ≤ 4`.
pub fn quad_instance<R: Rng>(rng: &mut R) -> (Horoball, Horoball, HalfSpace) {
    loop {
        let y = random_halfspace(rng, 2, 1.5);
        let x0 = random_horoball(rng, 2, 2.0);
        let x1 = random_horoball(rng, 2, 2.0);
        let (c0, c1) = (x0.vec().dot(y.vec()), x1.vec().dot(y.vec()));
        let p = x0.vec().dot(x1.vec());
        if c0 >= 0.0 || c1 >= 0.0 || p >= 0.0 {
            continue;
        }
        let (a0, a1, d) = ((-c0).ln(), (-c1).ln(), (-0.5 * p).ln());
        if a0.abs() <= 3.0 && a1.abs() <= 3.0 && d.abs() <= 4.0 {
            return (x0, x1, y);
        }
    }
}

/// `(x, y0, y1)` in `H²` with `y0∘y1 = -cosh d`, `d ∈ [0.1, 3]`, `x∘y_i < 0`, `|a_i| ≤ 3`,
/// moved by a random isometry.
pub fn pent_instance<R: Rng>(rng: &mut R) -> (Horoball, HalfSpace, HalfSpace) {
    loop {
        let d: f64 = rng.random_range(0.1..=3.0);
        let y0 = LVec::new(vec![0.0, 1.0, 0.0]).expect("finite");
        let y1 = LVec::new(vec![d.sinh(), -d.cosh(), 0.0]).expect("finite");
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        let scale = rng.random_range(-2.0f64..=2.0).exp();
        let x = LVec::new(vec![scale, scale * phi.cos(), scale * phi.sin()]).expect("finite");
        let (c0, c1) = (x.dot(&y0), x.dot(&y1));
        if c0 >= 0.0 || c1 >= 0.0 || (-c0).ln().abs() > 3.0 || (-c1).ln().abs() > 3.0 {
            continue;
        }
        let g = random_isometry(rng, 2, 1.0);
        return (
            Horoball::new(g.apply(&x)).expect("isometry keeps light-like"),
            HalfSpace::new(g.apply(&y0)).expect("isometry keeps unit"),
            HalfSpace::new(g.apply(&y1)).expect("isometry keeps unit"),
        );
    }
}

/// Like [`pent_instance`] but with the ideal vertex on the bisector, so `a0 = a1`.
pub fn symmetric_pent_instance<R: Rng>(rng: &mut R) -> (Horoball, HalfSpace, HalfSpace) {
    let d: f64 = rng.random_range(0.1..=3.0);
    let y0 = LVec::new(vec![0.0, 1.0, 0.0]).expect("finite");
    let y1 = LVec::new(vec![d.sinh(), -d.cosh(), 0.0]).expect("finite");
    let h = 0.5 * d;
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let scale = rng.random_range(-2.0f64..=2.0).exp();
    let x = LVec::new(vec![h.cosh(), -h.sinh(), sign]).expect("finite").scaled(scale);
    let g = random_isometry(rng, 2, 1.0);
    (
        Horoball::new(g.apply(&x)).expect("light-like"),
        HalfSpace::new(g.apply(&y0)).expect("unit"),
        HalfSpace::new(g.apply(&y1)).expect("unit"),
    )
}

/// Edge matrix with off-diagonals `cosh(U[lo, hi])`, resampled until `det(2I − L) < 0`.
pub fn edge_matrix<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> EdgeMatrix {
    loop {
        let mut m = [[1.0; 4]; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                let v = rng.random_range(lo..=hi).cosh();
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        if let Ok(l) = EdgeMatrix::new(m) {
            if l.normal_gram_det() < 0.0 {
                return l;
            }
        }
    }
}

/// A realized tetrahedron from [`edge_matrix`], resampling if realization fails.
pub fn tetra_instance<R: Rng>(rng: &mut R, lo: f64, hi: f64, tol: Tolerances) -> (EdgeMatrix, Result<TruncatedTetrahedron>) {
    let l = edge_matrix(rng, lo, hi);
    let t = TruncatedTetrahedron::from_edge_lengths_with(&l, tol);
    (l, t)
}

/// `(x, y, L)` each `cosh(U[lo, hi])` with the symmetric matrix `a = b = c = d = L`
/// realizable.
pub fn symmetric_triple<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> (f64, f64, f64) {
    loop {
        let x = rng.random_range(lo..=hi).cosh();
        let y = rng.random_range(lo..=hi).cosh();
        let l = rng.random_range(lo..=hi).cosh();
        let ok = EdgeMatrix::from_args(crate::tetra::OPPOSITE_PAIRS[0], x, y, [l; 4])
            .map(|m| m.normal_gram_det() < 0.0)
            .unwrap_or(false);
        if ok {
            return (x, y, l);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{on_horosphere, on_polar_plane};

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| instance_rng(7, 3).random()).collect();
        let b: Vec<u64> = (0..4).map(|_| instance_rng(7, 3).random()).collect();
        assert_eq!(a, b);
        let c: u64 = instance_rng(7, 4).random();
        assert_ne!(a[0], c);
    }

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = instance_rng(1, 0);
        for _ in 0..200 {
            for n in [2, 3] {
                let b = random_horoball(&mut rng, n, 2.0);
                let u = random_horosphere_point(&mut rng, &b, 3.0, 2.0);
                assert!(on_horosphere(&b, &u));
                let y = random_halfspace(&mut rng, n, 2.0);
                let o = HPoint::origin(n);
                let base = LVec::combine(1.0, o.vec(), -o.vec().dot(y.vec()), y.vec());
                let base = crate::objects::normalize_point(&base).unwrap();
                let p = random_plane_point(&mut rng, &y, &base, 3.0);
                assert!(on_polar_plane(&y, &p));
                let g = random_isometry(&mut rng, n, 1.0);
                assert!(g.form_defect() < 1e-11);
                assert!(g.matrix()[(0, 0)] > 0.0);
            }
        }
    }

    #[test]
    fn instance_generators_meet_preconditions() {
        let mut rng = instance_rng(2, 0);
        for _ in 0..50 {
            let (x0, x1, y) = quad_instance(&mut rng);
            assert!(crate::polygons::quad_build(&x0, &x1, &y).is_ok());
            let (x, y0, y1) = pent_instance(&mut rng);
            assert!(crate::polygons::pent_build(&x, &y0, &y1).is_ok());
            let (x, y0, y1) = symmetric_pent_instance(&mut rng);
            let p = crate::polygons::pent_build(&x, &y0, &y1).unwrap();
            assert!((p.a0 - p.a1).abs() < 1e-9);
            let (_, t) = tetra_instance(&mut rng, 0.1, 5.0, Tolerances::default());
            assert!(t.is_ok());
        }
    }
}
