//! Numerical tolerances.
//!
//! Every band used by a constructor or classifier lives here so the CLI can override
//! them by name (`--tol.<name> <value>`).

use serde::{Deserialize, Serialize};

/// Light-like band, relative to the squared Euclidean norm.
pub const TOL_CLASS: f64 = 1e-10;
/// Absolute band on unit-scale object constraints (`v∘v = -1`, `y∘y = 1`, tangency).
pub const TOL_OBJ: f64 = 1e-9;
/// Band around `|y1∘y2| = 1` inside which two planes are reported parallel.
pub const TOL_PARALLEL: f64 = 1e-9;
/// Degeneracy threshold on `cosh T - 1` and on `|z_i∘y_i|`.
pub const TOL_DEG: f64 = 1e-8;
/// The critical-point quadratic is ill-conditioned when `|a| <= TOL_QUAD * |b|`.
pub const TOL_QUAD: f64 = 1e-14;
/// Relative eigenvalue band treated as zero by [`crate::lorentz::signature`].
pub const TOL_SIGNATURE: f64 = 1e-10;
/// Relative threshold below which two light-like or space-like vectors count as proportional.
pub const TOL_INDEPENDENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub class: f64,
    pub obj: f64,
    pub parallel: f64,
    pub deg: f64,
    pub quad: f64,
    pub signature: f64,
    pub independent: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            class: TOL_CLASS,
            obj: TOL_OBJ,
            parallel: TOL_PARALLEL,
            deg: TOL_DEG,
            quad: TOL_QUAD,
            signature: TOL_SIGNATURE,
            independent: TOL_INDEPENDENT,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 7] =
        ["class", "obj", "parallel", "deg", "quad", "signature", "independent"];

    /// Overrides one tolerance by name. Returns `false` for an unknown name or a
    /// non-positive value.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        if !(value.is_finite() && value > 0.0) {
            return false;
        }
        let slot = match name {
            "class" => &mut self.class,
            "obj" => &mut self.obj,
            "parallel" => &mut self.parallel,
            "deg" => &mut self.deg,
            "quad" => &mut self.quad,
            "signature" => &mut self.signature,
            "independent" => &mut self.independent,
            _ => return false,
        };
        *slot = value;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_by_name() {
        let mut t = Tolerances::default();
        assert!(t.set("deg", 1e-6));
        assert_eq!(t.deg, 1e-6);
        assert!(!t.set("nope", 1.0));
        assert!(!t.set("obj", -1.0));
        assert_eq!(t.obj, TOL_OBJ);
        for name in Tolerances::NAMES {
            assert!(Tolerances::default().set(name, 0.5));
        }
    }
}
