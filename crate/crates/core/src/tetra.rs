//! Truncated tetrahedra in `H³` cut out by four pairwise ultraparallel planes, and the
//! transversals joining opposite internal edges.
//!
//! Planes are indexed `0..4`. For an edge pair `((i, j), (k, l))` the internal edge `λ_ij`
//! is parametrized by arclength from its foot on `P_i` into `H_i`:
//! `λ̃_ij(s) = cosh s · v_i − sinh s · y_i`, and likewise `λ̃_kl(t)` from `v_k`.

use nalgebra::{Matrix3, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::lorentz::{realize_gram, GramMatrix, LVec};
use crate::objects::{normalize_point, HPoint, HalfSpace};
use crate::tol::Tolerances;

const SPACE_LEN: usize = 4;

/// A pair of opposite internal edges `((i, j), (k, l))`.
pub type EdgePair = ((usize, usize), (usize, usize));

/// The three ways of splitting `{0,1,2,3}` into opposite edges.
pub const OPPOSITE_PAIRS: [EdgePair; 3] = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];

pub fn check_pair(pair: EdgePair) -> Result<()> {
    let ((i, j), (k, l)) = pair;
    let idx = [i, j, k, l];
    if idx.iter().any(|&m| m >= 4) {
        return Err(GeomError::InvalidEdgePair(format!("index out of range in {pair:?}")));
    }
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] == idx[b] {
                return Err(GeomError::InvalidEdgePair(format!(
                    "{pair:?} does not use four distinct planes"
                )));
            }
        }
    }
    Ok(())
}

/// `L[i][j] = cosh d(P_i, P_j)`, unit diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct EdgeMatrix([[f64; 4]; 4]);

impl EdgeMatrix {
    pub fn new(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new_with(rows, &Tolerances::default())
    }

    /// Checks finiteness, unit diagonal, symmetry and off-diagonals `> 1 + tol.parallel`.
    pub fn new_with(rows: [[f64; 4]; 4], tol: &Tolerances) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                let x = rows[i][j];
                if !x.is_finite() {
                    return Err(GeomError::NonFinite);
                }
                if i == j && (x - 1.0).abs() > tol.obj {
                    return Err(GeomError::InconsistentInputs(format!(
                        "diagonal entry L[{i}][{i}] = {x}, expected 1"
                    )));
                }
                if i < j {
                    let y = rows[j][i];
                    if (x - y).abs() > 1e-12 * x.abs().max(y.abs()).max(1.0) {
                        return Err(GeomError::InconsistentInputs(format!(
                            "L[{i}][{j}] = {x} but L[{j}][{i}] = {y}"
                        )));
                    }
                    if x <= 1.0 + tol.parallel {
                        return Err(GeomError::NotUltraparallel(x));
                    }
                }
            }
        }
        let mut m = rows;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
            return Err(GeomError::DimensionMismatch {
                expected: 4,
                found: rows.iter().map(Vec::len).find(|&n| n != 4).unwrap_or(rows.len()),
            });
        }
        let mut m = [[0.0; 4]; 4];
        for (dst, src) in m.iter_mut().zip(rows) {
            dst.copy_from_slice(src);
        }
        Self::new(m)
    }

    /// Every off-diagonal entry equal to `c`.
    pub fn constant(c: f64) -> Result<Self> {
        let mut m = [[c; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self::new(m)
    }

    /// The matrix with `x = L[i][j]`, `y = L[k][l]`, `a = L[i][k]`, `b = L[i][l]`,
    /// `c = L[j][k]`, `d = L[j][l]` for the pair `((i, j), (k, l))`.
    pub fn from_args(pair: EdgePair, x: f64, y: f64, abcd: [f64; 4]) -> Result<Self> {
        check_pair(pair)?;
        let ((i, j), (k, l)) = pair;
        let mut m = [[1.0; 4]; 4];
        let mut put = |p: usize, q: usize, v: f64| {
            m[p][q] = v;
            m[q][p] = v;
        };
        put(i, j, x);
        put(k, l, y);
        put(i, k, abcd[0]);
        put(i, l, abcd[1]);
        put(j, k, abcd[2]);
        put(j, l, abcd[3]);
        Self::new(m)
    }

    /// Inverse of [`EdgeMatrix::from_args`]: `(x, y, [a, b, c, d])`.
    pub fn args(&self, pair: EdgePair) -> (f64, f64, [f64; 4]) {
        let ((i, j), (k, l)) = pair;
        let m = &self.0;
        (m[i][j], m[k][l], [m[i][k], m[i][l], m[j][k], m[j][l]])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        self.0
    }

    /// `[L01, L02, L03, L12, L13, L23]`.
    pub fn upper_triangle(&self) -> [f64; 6] {
        let m = &self.0;
        [m[0][1], m[0][2], m[0][3], m[1][2], m[1][3], m[2][3]]
    }

    /// Gram matrix `G = 2I − L` of the outward normals.
    pub fn normal_gram(&self) -> GramMatrix {
        let rows: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { -self.0[i][j] }).collect())
            .collect();
        GramMatrix::from_rows(&rows).expect("edge matrix is symmetric and finite")
    }

    /// `det(2I − L)`; negative exactly for configurations realizable in `H³`.
    pub fn normal_gram_det(&self) -> f64 {
        Matrix4::from_fn(|i, j| if i == j { 1.0 } else { -self.0[i][j] }).determinant()
    }

    pub fn max_abs_diff(&self, other: &EdgeMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

impl TryFrom<Vec<Vec<f64>>> for EdgeMatrix {
    type Error = GeomError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<EdgeMatrix> for Vec<Vec<f64>> {
    fn from(m: EdgeMatrix) -> Self {
        m.0.iter().map(|r| r.to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InternalEdge {
    pub foot_i: HPoint,
    pub foot_j: HPoint,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HatPlane {
    /// Unit normal Lorentz-orthogonal to the three other normals, with `z∘y_i < 0` unless
    /// the plane is orthogonal to `P_i`.
    pub z: HalfSpace,
    pub orthogonal_to_pi: bool,
}

/// The four pairings that determine `D(s, t)` for an edge pair, read off the edge matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pairings {
    /// `v_i∘v_k`
    pub vv: f64,
    /// `v_i∘y_k`
    pub vy: f64,
    /// `y_i∘v_k`
    pub yv: f64,
    /// `y_i∘y_k`
    pub yy: f64,
}

impl Pairings {
    pub fn from_edges(l: &EdgeMatrix, pair: EdgePair) -> Self {
        let ((i, j), (k, m)) = pair;
        let g = |p, q| l.get(p, q);
        let rij = (g(i, j) * g(i, j) - 1.0).sqrt();
        let rkl = (g(k, m) * g(k, m) - 1.0).sqrt();
        Self {
            vv: -(g(i, j) * g(i, k) * g(k, m) + g(j, k) * g(k, m) + g(i, j) * g(i, m) + g(j, m))
                / (rij * rkl),
            vy: -(g(i, j) * g(i, k) + g(j, k)) / rij,
            yv: -(g(i, k) * g(k, m) + g(i, m)) / rkl,
            yy: -g(i, k),
        }
    }

    /// `D(s,t) = −λ̃_ij(s)∘λ̃_kl(t)`.
    pub fn distance(&self, s: f64, t: f64) -> f64 {
        let (cs, ss) = (s.cosh(), s.sinh());
        let (ct, st) = (t.cosh(), t.sinh());
        -cs * ct * self.vv + cs * st * self.vy + ss * ct * self.yv - ss * st * self.yy
    }

    /// `(∂D/∂s, ∂D/∂t)`.
    pub fn gradient(&self, s: f64, t: f64) -> (f64, f64) {
        let (cs, ss) = (s.cosh(), s.sinh());
        let (ct, st) = (t.cosh(), t.sinh());
        (
            -ss * ct * self.vv + ss * st * self.vy + cs * ct * self.yv - cs * st * self.yy,
            -cs * st * self.vv + cs * ct * self.vy + ss * st * self.yv - ss * ct * self.yy,
        )
    }

    /// Coefficients of `a τ² + b τ + a = 0` satisfied by `τ = tanh t` at a critical point.
    pub fn quadratic(&self) -> (f64, f64) {
        let a = self.yy * self.yv - self.vy * self.vv;
        let b = self.vv * self.vv + self.vy * self.vy - self.yv * self.yv - self.yy * self.yy;
        (a, b)
    }
}

/// The critical point of `D` and its value, computed from the edge matrix alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub s0: f64,
    pub t0: f64,
    pub cosh_t: f64,
    pub quad_a: f64,
    pub quad_b: f64,
    /// Roots of the quadratic, smaller first.
    pub roots: (f64, f64),
}

impl CriticalPoint {
    pub fn length(&self) -> f64 {
        self.cosh_t.max(1.0).acosh()
    }
}

pub fn critical_point(l: &EdgeMatrix, pair: EdgePair, tol_quad: f64) -> Result<CriticalPoint> {
    check_pair(pair)?;
    let p = Pairings::from_edges(l, pair);
    let (a, b) = p.quadratic();
    let disc = b * b - 4.0 * a * a;
    if a.abs() <= tol_quad * b.abs() || !(disc >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(GeomError::IllConditioned { a, b });
    }
    let root = disc.sqrt();
    // Stable pair of roots; the product is exactly 1 in exact arithmetic.
    let q = -0.5 * (b + b.signum() * root);
    let (r1, r2) = (q / a, a / q);
    let roots = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    let tau = roots.0;
    let tanh_s = (p.yv - tau * p.yy) / (p.vv - tau * p.vy);
    if !(tau.abs() < 1.0 && tanh_s.abs() < 1.0) {
        return Err(GeomError::DomainError(format!(
            "critical point has tanh t0 = {tau}, tanh s0 = {tanh_s}"
        )));
    }
    let (s0, t0) = (tanh_s.atanh(), tau.atanh());
    Ok(CriticalPoint { s0, t0, cosh_t: p.distance(s0, t0), quad_a: a, quad_b: b, roots })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transversal {
    pub pair: EdgePair,
    pub s0: f64,
    pub t0: f64,
    pub cosh_t: f64,
    /// Length `T = arccosh(cosh_t)`, set to 0 when degenerate.
    pub length: f64,
    pub endpoints: (HPoint, HPoint),
    pub degenerate: bool,
    /// Whether `s0 ∈ [0, ℓ_ij]` and `t0 ∈ [0, ℓ_kl]`.
    pub within_edges: bool,
    pub quad_a: f64,
    pub quad_b: f64,
    pub roots: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedTetrahedron {
    normals: [HalfSpace; 4],
    l: EdgeMatrix,
    hats: [HatPlane; 4],
    tol: Tolerances,
}

fn edge_foot(yi: &LVec, yj: &LVec, lij: f64) -> LVec {
    let r = (lij * lij - 1.0).sqrt();
    LVec::combine(lij / r, yi, 1.0 / r, yj)
}

impl TruncatedTetrahedron {
    pub fn from_normals(ys: [HalfSpace; 4]) -> Result<Self> {
        Self::from_normals_with(ys, Tolerances::default())
    }

    /// Flips individual normals so all pairings are negative, then flips all of them if
    /// needed so the edge feet land on the upper sheet.
    pub fn from_normals_with(ys: [HalfSpace; 4], tol: Tolerances) -> Result<Self> {
        for y in &ys {
            if y.vec().len() != SPACE_LEN {
                return Err(GeomError::DimensionMismatch { expected: SPACE_LEN, found: y.vec().len() });
            }
        }
        let p = |i: usize, j: usize| ys[i].vec().dot(ys[j].vec());
        for i in 0..4 {
            for j in i + 1..4 {
                if p(i, j).abs() <= 1.0 + tol.parallel {
                    return Err(GeomError::NotUltraparallel(p(i, j).abs()));
                }
            }
        }
        let mut sign = [1.0f64; 4];
        for j in 1..4 {
            sign[j] = -p(0, j).signum();
        }
        for i in 1..4 {
            for j in i + 1..4 {
                if sign[i] * sign[j] * p(i, j) >= 0.0 {
                    return Err(GeomError::InconsistentOrientation(format!(
                        "planes {i} and {j} cannot be given opposed normals consistently"
                    )));
                }
            }
        }
        let mut vecs: Vec<LVec> = ys.iter().zip(sign).map(|(y, s)| y.vec().scaled(s)).collect();
        let l01 = -vecs[0].dot(&vecs[1]);
        if edge_foot(&vecs[0], &vecs[1], l01).time() < 0.0 {
            vecs = vecs.iter().map(|v| v.scaled(-1.0)).collect();
        }
        let mut rows = [[1.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    rows[i][j] = -vecs[i].dot(&vecs[j]);
                }
            }
        }
        // Exact symmetry regardless of summation order.
        for i in 0..4 {
            for j in 0..i {
                rows[i][j] = rows[j][i];
            }
        }
        let l = EdgeMatrix::new_with(rows, &tol)?;
        Self::assemble(vecs, l, tol)
    }

    pub fn from_edge_lengths(l: &EdgeMatrix) -> Result<Self> {
        Self::from_edge_lengths_with(l, Tolerances::default())
    }

    /// Realizes the normals from `G = 2I − L` and reflects the time axis if the feet come out
    /// on the lower sheet.
    pub fn from_edge_lengths_with(l: &EdgeMatrix, tol: Tolerances) -> Result<Self> {
        let l = EdgeMatrix::new_with(l.rows(), &tol)?;
        let mut vecs = realize_gram(&l.normal_gram(), 3, tol.signature)?;
        if edge_foot(&vecs[0], &vecs[1], l.get(0, 1)).time() < 0.0 {
            vecs = vecs.iter().map(LVec::time_flipped).collect();
        }
        Self::assemble(vecs, l, tol)
    }

    fn assemble(vecs: Vec<LVec>, l: EdgeMatrix, tol: Tolerances) -> Result<Self> {
        let normals: Vec<HalfSpace> = vecs
            .into_iter()
            .map(|v| HalfSpace::new_with(v, tol.obj))
            .collect::<Result<_>>()?;
        let normals: [HalfSpace; 4] = normals.try_into().expect("four normals");
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let f = edge_foot(normals[i].vec(), normals[j].vec(), l.get(i, j));
                    if f.time() <= 0.0 {
                        return Err(GeomError::InconsistentOrientation(format!(
                            "foot of edge ({i},{j}) on plane {i} is not on the upper sheet"
                        )));
                    }
                }
            }
        }
        let hats = [0, 1, 2, 3].map(|i| compute_hat(&normals, i, &tol));
        let hats: Vec<HatPlane> = hats.into_iter().collect::<Result<_>>()?;
        Ok(Self { normals, l, hats: hats.try_into().expect("four hat planes"), tol })
    }

    pub fn normals(&self) -> &[HalfSpace; 4] {
        &self.normals
    }

    pub fn edges(&self) -> &EdgeMatrix {
        &self.l
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    fn check_edge(i: usize, j: usize) -> Result<()> {
        if i >= 4 || j >= 4 || i == j {
            return Err(GeomError::InvalidEdgePair(format!("({i},{j}) is not an edge")));
        }
        Ok(())
    }

    /// Foot on `P_i` of the common perpendicular to `P_i` and `P_j`.
    pub fn foot(&self, i: usize, j: usize) -> Result<HPoint> {
        Self::check_edge(i, j)?;
        normalize_point(&edge_foot(self.normals[i].vec(), self.normals[j].vec(), self.l.get(i, j)))
    }

    pub fn internal_edge(&self, i: usize, j: usize) -> Result<InternalEdge> {
        Ok(InternalEdge {
            foot_i: self.foot(i, j)?,
            foot_j: self.foot(j, i)?,
            length: self.l.get(i, j).acosh(),
        })
    }

    /// `λ̃_ij(s) = cosh s · v_i − sinh s · y_i`.
    pub fn edge_point(&self, i: usize, j: usize, s: f64) -> Result<HPoint> {
        let v = self.foot(i, j)?;
        Ok(HPoint::trusted(LVec::combine(s.cosh(), v.vec(), -s.sinh(), self.normals[i].vec())))
    }

    pub fn hat_plane(&self, i: usize) -> Result<&HatPlane> {
        self.hats.get(i).ok_or_else(|| GeomError::InvalidEdgePair(format!("no plane {i}")))
    }

    pub fn is_degenerate(&self) -> bool {
        self.hats.iter().any(|h| h.orthogonal_to_pi)
    }

    /// Membership in `⋂ H_i ∩ ⋂ Ĥ_i`, with boundary slack `tol.obj`.
    pub fn member(&self, p: &HPoint) -> Result<bool> {
        if self.is_degenerate() {
            return Err(GeomError::DegenerateTetrahedron);
        }
        p.vec().check_same_len(self.normals[0].vec())?;
        let inside = |n: &HalfSpace| p.vec().dot(n.vec()) <= self.tol.obj;
        Ok(self.normals.iter().all(inside) && self.hats.iter().all(|h| inside(&h.z)))
    }

    /// `D(s, t)` from the edge matrix.
    pub fn distance_function(&self, pair: EdgePair, s: f64, t: f64) -> Result<f64> {
        check_pair(pair)?;
        Ok(Pairings::from_edges(&self.l, pair).distance(s, t))
    }

    /// `D(s, t)` by pairing the two curve points built from the realized normals.
    pub fn distance_geometric(&self, pair: EdgePair, s: f64, t: f64) -> Result<f64> {
        check_pair(pair)?;
        let ((i, j), (k, l)) = pair;
        Ok(-self.edge_point(i, j, s)?.vec().dot(self.edge_point(k, l, t)?.vec()))
    }

    pub fn transversal(&self, pair: EdgePair) -> Result<Transversal> {
        let cp = critical_point(&self.l, pair, self.tol.quad)?;
        let ((i, j), (k, l)) = pair;
        let p = self.edge_point(i, j, cp.s0)?;
        let q = self.edge_point(k, l, cp.t0)?;
        let degenerate = cp.cosh_t <= 1.0 + self.tol.deg;
        let (length, endpoints) = if degenerate {
            let mid = normalize_point(&(p.vec() + q.vec()))?;
            (0.0, (mid.clone(), mid))
        } else {
            (cp.length(), (p, q))
        };
        let slack = 1e-12;
        let within = |x: f64, len: f64| x >= -slack * len.max(1.0) && x <= len * (1.0 + slack);
        Ok(Transversal {
            pair,
            s0: cp.s0,
            t0: cp.t0,
            cosh_t: cp.cosh_t,
            length,
            endpoints,
            degenerate,
            within_edges: within(cp.s0, self.l.get(i, j).acosh())
                && within(cp.t0, self.l.get(k, l).acosh()),
            quad_a: cp.quad_a,
            quad_b: cp.quad_b,
            roots: cp.roots,
        })
    }

    pub fn transversals(&self) -> Result<[Transversal; 3]> {
        let v: Vec<Transversal> =
            OPPOSITE_PAIRS.iter().map(|&p| self.transversal(p)).collect::<Result<_>>()?;
        Ok(v.try_into().expect("three pairs"))
    }
}

/// Unit normal to the hat plane opposite `P_i`: the Lorentz-orthogonal complement of the
/// other three normals, via the four-dimensional cross product.
fn compute_hat(normals: &[HalfSpace; 4], i: usize, tol: &Tolerances) -> Result<HatPlane> {
    let others: Vec<&LVec> = (0..4).filter(|&j| j != i).map(|j| normals[j].vec()).collect();
    let mut w = [0.0; 4];
    for (c, wc) in w.iter_mut().enumerate() {
        let cols: Vec<usize> = (0..4).filter(|&m| m != c).collect();
        let minor = Matrix3::from_fn(|r, q| others[r][cols[q]]);
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        *wc = sign * minor.determinant();
    }
    // w is Euclidean-orthogonal to the three normals; J w is Lorentz-orthogonal to them.
    let z = LVec::raw(&[-w[0], w[1], w[2], w[3]]);
    let zz = z.norm_squared();
    if zz <= tol.class * z.euclidean_norm_squared() {
        return Err(GeomError::DegenerateComplement(zz / z.euclidean_norm_squared().max(f64::MIN_POSITIVE)));
    }
    let mut z = z.scaled(1.0 / zz.sqrt());
    let zy = z.dot(normals[i].vec());
    if zy > 0.0 {
        z = z.scaled(-1.0);
    }
    Ok(HatPlane { z: HalfSpace::trusted(z), orthogonal_to_pi: zy.abs() <= tol.deg })
}

/// `2L / √((x − 1)(y − 1))`.
pub fn transversal_bound(x: f64, y: f64, l: f64) -> Result<f64> {
    if !(x > 1.0 && y > 1.0) {
        return Err(GeomError::DomainError(format!("need x, y > 1, got x = {x}, y = {y}")));
    }
    if !(l > 1.0) {
        return Err(GeomError::DomainError(format!("need L > 1, got {l}")));
    }
    Ok(2.0 * l / ((x - 1.0) * (y - 1.0)).sqrt())
}
