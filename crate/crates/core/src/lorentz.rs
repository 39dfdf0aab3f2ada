//! Lorentzian linear algebra on `R^{n+1}`.
//!
//! The form is `x∘y = -x₁y₁ + x₂y₂ + … + x_{n+1}y_{n+1}`: the first coordinate is the
//! time direction.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{GeomError, Result};

/// A vector of `R^{n+1}` carrying the Lorentzian form.
///
/// Coordinates are stored inline for `n + 1 <= 4`, which covers every object in
/// `H^2` and `H^3`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LVec(SmallVec<[f64; 4]>);

impl LVec {
    /// Validates finiteness and length (at least two coordinates).
    pub fn new(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let coords: Vec<f64> = coords.into();
        if coords.len() < 2 {
            return Err(GeomError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Self(SmallVec::from_vec(coords)))
    }

    /// Builds a vector without validation. Only for values produced by this crate's own
    /// arithmetic on already-validated inputs.
    pub(crate) fn raw(coords: &[f64]) -> Self {
        Self(SmallVec::from_slice(coords))
    }

    pub fn zeros(len: usize) -> Self {
        Self(SmallVec::from_elem(0.0, len))
    }

    /// The `k`-th standard basis vector (0-based, so `basis(len, 0)` is the time axis).
    pub fn basis(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[k] = 1.0;
        v
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Number of coordinates, `n + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The dimension `n` of the hyperbolic space this vector lives over.
    pub fn hyperbolic_dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    /// Lorentzian pairing. Panics on a dimension mismatch; use [`ldot`] for a checked
    /// version.
    #[inline]
    pub fn dot(&self, other: &LVec) -> f64 {
        assert_eq!(self.len(), other.len(), "Lorentzian pairing of vectors with different lengths");
        let mut acc = -self.0[0] * other.0[0];
        for (a, b) in self.0[1..].iter().zip(&other.0[1..]) {
            acc += a * b;
        }
        acc
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn euclidean_norm_squared(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.euclidean_norm_squared().sqrt()
    }

    pub fn scaled(&self, k: f64) -> LVec {
        LVec(self.0.iter().map(|c| c * k).collect())
    }

    /// `a·x + b·y`.
    #[inline]
    pub fn combine(a: f64, x: &LVec, b: f64, y: &LVec) -> LVec {
        debug_assert_eq!(x.len(), y.len());
        LVec(x.0.iter().zip(&y.0).map(|(p, q)| a * p + b * q).collect())
    }

    /// The vector with its first coordinate negated (the Euclidean gradient of `x ↦ x∘v`
    /// is this flip of `v`).
    pub fn time_flipped(&self) -> LVec {
        let mut v = self.clone();
        v.0[0] = -v.0[0];
        v
    }

    pub fn euclidean_distance(&self, other: &LVec) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn check_same_len(&self, other: &LVec) -> Result<()> {
        if self.len() != other.len() {
            return Err(GeomError::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }
}

impl fmt::Debug for LVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl TryFrom<Vec<f64>> for LVec {
    type Error = GeomError;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        LVec::new(v)
    }
}

impl From<LVec> for Vec<f64> {
    fn from(v: LVec) -> Self {
        v.0.into_vec()
    }
}

impl Index<usize> for LVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &LVec {
    type Output = LVec;
    fn add(self, rhs: &LVec) -> LVec {
        LVec::combine(1.0, self, 1.0, rhs)
    }
}

impl Sub for &LVec {
    type Output = LVec;
    fn sub(self, rhs: &LVec) -> LVec {
        LVec::combine(1.0, self, -1.0, rhs)
    }
}

impl Mul<&LVec> for f64 {
    type Output = LVec;
    fn mul(self, rhs: &LVec) -> LVec {
        rhs.scaled(self)
    }
}

impl Neg for &LVec {
    type Output = LVec;
    fn neg(self) -> LVec {
        self.scaled(-1.0)
    }
}

/// Checked Lorentzian pairing.
pub fn ldot(a: &LVec, b: &LVec) -> Result<f64> {
    a.check_same_len(b)?;
    Ok(a.dot(b))
}

pub fn norm_squared(a: &LVec) -> f64 {
    a.norm_squared()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalKind {
    SpaceLike,
    LightLike,
    TimeLike,
}

/// Causal type of a vector; `positive` is only meaningful (and only set) for light-like
/// and time-like vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub positive: Option<bool>,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            CausalKind::SpaceLike => "space-like",
            CausalKind::LightLike => "light-like",
            CausalKind::TimeLike => "time-like",
        };
        match self.positive {
            Some(true) => write!(f, "{kind}, positive"),
            Some(false) => write!(f, "{kind}, negative"),
            None => write!(f, "{kind}"),
        }
    }
}

/// Classifies `a` with the light-like band `|a∘a| <= tol_class · max(1, |a|²)`.
pub fn classify(a: &LVec, tol_class: f64) -> CausalClass {
    let q = a.norm_squared();
    let band = tol_class * a.euclidean_norm_squared().max(1.0);
    let kind = if q.abs() <= band {
        CausalKind::LightLike
    } else if q > 0.0 {
        CausalKind::SpaceLike
    } else {
        CausalKind::TimeLike
    };
    let positive = match kind {
        CausalKind::SpaceLike => None,
        _ => Some(a.time() > 0.0),
    };
    CausalClass { kind, positive }
}

/// Symmetric matrix of pairwise Lorentzian products.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(DMatrix<f64>);

impl GramMatrix {
    /// Wraps a square matrix, checking finiteness and symmetry (relative `1e-12`).
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(GeomError::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let scale = m.amax().max(1.0);
        for i in 0..m.nrows() {
            for j in 0..i {
                if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                    return Err(GeomError::InconsistentInputs(format!(
                        "Gram matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != k) {
            return Err(GeomError::DimensionMismatch { expected: k, found: bad.len() });
        }
        Self::new(DMatrix::from_fn(k, k, |i, j| rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.size()).map(|i| (0..self.size()).map(|j| self.0[(i, j)]).collect()).collect()
    }

    pub fn max_abs_diff(&self, other: &GramMatrix) -> f64 {
        (&self.0 - &other.0).amax()
    }

    /// Eigenpairs sorted by descending eigenvalue.
    fn sorted_eigen(&self) -> Vec<(f64, Vec<f64>)> {
        let eig = SymmetricEigen::new(self.0.clone());
        let mut pairs: Vec<(f64, Vec<f64>)> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(c, &lambda)| (lambda, eig.eigenvectors.column(c).iter().copied().collect()))
            .collect();
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        pairs
    }
}

pub fn gram(vs: &[LVec]) -> Result<GramMatrix> {
    if let Some(first) = vs.first() {
        for v in vs {
            first.check_same_len(v)?;
        }
    }
    let k = vs.len();
    Ok(GramMatrix(DMatrix::from_fn(k, k, |i, j| vs[i].dot(&vs[j]))))
}

/// Inertia of a symmetric matrix: counts of negative, zero and positive eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// Eigenvalues within `±tol·scale` count as zero, where `scale` is the largest
/// `|eigenvalue|` (or 1 when every eigenvalue is tiny).
pub fn signature(g: &GramMatrix, tol: f64) -> Signature {
    let eig = SymmetricEigen::new(g.0.clone()).eigenvalues;
    let mut scale = eig.amax();
    if scale < f64::MIN_POSITIVE.sqrt() {
        scale = 1.0;
    }
    let band = tol * scale;
    let mut s = Signature { negative: 0, zero: 0, positive: 0 };
    for &l in eig.iter() {
        if l < -band {
            s.negative += 1;
        } else if l > band {
            s.positive += 1;
        } else {
            s.zero += 1;
        }
    }
    s
}

/// Realizes a Gram matrix by vectors of `R^{n+1}`.
///
/// Each eigenvector is scaled by `√|λ|`; the (single) negative direction goes to the time
/// coordinate and positive directions fill coordinates `1..` in descending order. When
/// `k = n + 1` the matrix must be non-singular, since a rank-deficient configuration would
/// fit in a proper subspace.
pub fn realize_gram(g: &GramMatrix, n: usize, tol: f64) -> Result<Vec<LVec>> {
    let k = g.size();
    if n < 1 {
        return Err(GeomError::DimensionTooSmall(n + 1));
    }
    if k > n + 1 {
        return Err(GeomError::SignatureError(format!(
            "{k} vectors cannot be independent in R^{}",
            n + 1
        )));
    }
    let sig = signature(g, tol);
    if sig.negative > 1 {
        return Err(GeomError::SignatureError(format!(
            "{} negative eigenvalues (at most one allowed)",
            sig.negative
        )));
    }
    if sig.positive > n {
        return Err(GeomError::SignatureError(format!(
            "{} positive eigenvalues exceed the {n} space-like directions",
            sig.positive
        )));
    }
    if k == n + 1 && sig.zero > 0 {
        return Err(GeomError::SignatureError(format!(
            "{} zero eigenvalue(s) in a full-size configuration",
            sig.zero
        )));
    }
    let eig = g.sorted_eigen();
    let mut scale = eig.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max);
    if scale < f64::MIN_POSITIVE.sqrt() {
        scale = 1.0;
    }
    let band = tol * scale;
    let mut out = vec![vec![0.0; n + 1]; k];
    let mut next_space = 1;
    for (lambda, vec) in &eig {
        let slot = if *lambda > band {
            let s = next_space;
            next_space += 1;
            s
        } else if *lambda < -band {
            0
        } else {
            continue;
        };
        let root = lambda.abs().sqrt();
        for (row, q) in out.iter_mut().zip(vec) {
            row[slot] = root * q;
        }
    }
    out.into_iter().map(LVec::new).collect()
}

/// A linear map of `R^{n+1}` preserving the Lorentzian form; the ones built here are also
/// orthochronous, i.e. elements of `O⁺(1,n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform(DMatrix<f64>);

impl LorentzTransform {
    pub fn identity(len: usize) -> Self {
        Self(DMatrix::identity(len, len))
    }

    /// Boost mixing the time axis with space axis `axis` (1-based coordinate index).
    pub fn boost(len: usize, axis: usize, rapidity: f64) -> Self {
        assert!(axis >= 1 && axis < len);
        let mut m = DMatrix::identity(len, len);
        let (c, s) = (rapidity.cosh(), rapidity.sinh());
        m[(0, 0)] = c;
        m[(axis, axis)] = c;
        m[(0, axis)] = s;
        m[(axis, 0)] = s;
        Self(m)
    }

    /// Rotation in the plane of space axes `i` and `j`.
    pub fn rotation(len: usize, i: usize, j: usize, angle: f64) -> Self {
        assert!(i >= 1 && j >= 1 && i < len && j < len && i != j);
        let mut m = DMatrix::identity(len, len);
        let (c, s) = (angle.cos(), angle.sin());
        m[(i, i)] = c;
        m[(j, j)] = c;
        m[(i, j)] = -s;
        m[(j, i)] = s;
        Self(m)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LorentzTransform) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn apply(&self, v: &LVec) -> LVec {
        let len = v.len();
        assert_eq!(len, self.0.nrows());
        let mut out = SmallVec::<[f64; 4]>::from_elem(0.0, len);
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..len).map(|j| self.0[(i, j)] * v[j]).sum();
        }
        LVec(out)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Largest entry of `Mᵀ J M - J`.
    pub fn form_defect(&self) -> f64 {
        let len = self.0.nrows();
        let mut j = DMatrix::identity(len, len);
        j[(0, 0)] = -1.0;
        (self.0.transpose() * &j * &self.0 - j).amax()
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
    fn pairing_examples() {
        assert_eq!(ldot(&v(&[1., 0., 0.]), &v(&[1., 0., 0.])).unwrap(), -1.0);
        assert_eq!(ldot(&v(&[1., 1., 0.]), &v(&[1., -1., 0.])).unwrap(), -2.0);
        assert_eq!(ldot(&v(&[0., 1., 0.]), &v(&[0., 0., 1.])).unwrap(), 0.0);
        assert!(matches!(
            ldot(&v(&[1., 0.]), &v(&[1., 0., 0.])),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_coordinates() {
        assert_eq!(LVec::new(vec![1.0]), Err(GeomError::DimensionTooSmall(1)));
        assert_eq!(LVec::new(vec![1.0, f64::NAN]), Err(GeomError::NonFinite));
        assert_eq!(LVec::new(vec![f64::INFINITY, 0.0]), Err(GeomError::NonFinite));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&v(&[1., 0., 0.]), 1e-10);
        assert_eq!(c, CausalClass { kind: CausalKind::TimeLike, positive: Some(true) });
        let c = classify(&v(&[1., 1., 0.]), 1e-10);
        assert_eq!(c, CausalClass { kind: CausalKind::LightLike, positive: Some(true) });
        assert_eq!(c.to_string(), "light-like, positive");
        let c = classify(&v(&[0., 1., 0.]), 1e-10);
        assert_eq!(c, CausalClass { kind: CausalKind::SpaceLike, positive: None });
        let c = classify(&v(&[-2., 1., 0.]), 1e-10);
        assert_eq!(c.positive, Some(false));
    }

    #[test]
    fn gram_examples() {
        let g = gram(&[LVec::basis(3, 0)]).unwrap();
        assert_eq!(g.to_rows(), vec![vec![-1.0]]);
        let g = gram(&[LVec::basis(3, 1), LVec::basis(3, 2)]).unwrap();
        assert_eq!(g.to_rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let g = gram(&[v(&[1., 1., 0.]), v(&[1., -1., 0.])]).unwrap();
        assert_eq!(g.to_rows(), vec![vec![0.0, -2.0], vec![-2.0, 0.0]]);
        assert!(gram(&[v(&[1., 0.]), v(&[1., 0., 0.])]).is_err());
    }

    #[test]
    fn signature_examples() {
        let g = GramMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            -1., 1., 1., 1.,
        ])))
        .unwrap();
        assert_eq!(signature(&g, 1e-10), Signature { negative: 1, zero: 0, positive: 3 });
        let z = GramMatrix::new(DMatrix::zeros(2, 2)).unwrap();
        assert_eq!(signature(&z, 1e-10), Signature { negative: 0, zero: 2, positive: 0 });
        let m = GramMatrix::from_rows(&[vec![1., -2.], vec![-2., 1.]]).unwrap();
        assert_eq!(signature(&m, 1e-10), Signature { negative: 1, zero: 0, positive: 1 });
    }

    #[test]
    fn rejects_asymmetric_gram() {
        assert!(GramMatrix::from_rows(&[vec![1., 2.], vec![0., 1.]]).is_err());
        assert!(GramMatrix::from_rows(&[vec![1., 2.]]).is_err());
    }

    #[test]
    fn realize_minkowski_plane() {
        let g = GramMatrix::from_rows(&[vec![-1., 0.], vec![0., 1.]]).unwrap();
        let vs = realize_gram(&g, 1, 1e-10).unwrap();
        let back = gram(&vs).unwrap();
        assert!(back.max_abs_diff(&g) < 1e-14);
        assert_abs_diff_eq!(vs[0].time().abs(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vs[1][1].abs(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn realize_ultraparallel_pair() {
        let c = 1f64.cosh();
        let g = GramMatrix::from_rows(&[vec![1., -c], vec![-c, 1.]]).unwrap();
        let vs = realize_gram(&g, 2, 1e-10).unwrap();
        assert_eq!(vs.len(), 2);
        assert!(vs.iter().all(|v| v.len() == 3));
        assert!(gram(&vs).unwrap().max_abs_diff(&g) < 1e-12);
    }

    #[test]
    fn realize_rejects_two_negative_directions() {
        let g = GramMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            -1., -1., 1., 1.,
        ])))
        .unwrap();
        assert!(matches!(realize_gram(&g, 3, 1e-10), Err(GeomError::SignatureError(_))));
    }

    #[test]
    fn realize_rejects_singular_full_size() {
        let g = GramMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            -1., 0., 1., 1.,
        ])))
        .unwrap();
        assert!(matches!(realize_gram(&g, 3, 1e-10), Err(GeomError::SignatureError(_))));
        // The same matrix is fine one dimension up.
        assert!(realize_gram(&g, 4, 1e-10).is_ok());
    }

    #[test]
    fn transforms_preserve_form() {
        let t = LorentzTransform::boost(4, 2, 0.7)
            .compose(&LorentzTransform::rotation(4, 1, 3, 1.1))
            .compose(&LorentzTransform::boost(4, 3, -1.3));
        assert!(t.form_defect() < 1e-12);
        let a = v(&[2., 0.3, -1., 0.5]);
        let b = v(&[0.1, 1., 2., -3.]);
        assert_abs_diff_eq!(t.apply(&a).dot(&t.apply(&b)), a.dot(&b), epsilon = 1e-12);
        assert!(t.apply(&LVec::basis(4, 0)).time() > 0.0);
    }
}
