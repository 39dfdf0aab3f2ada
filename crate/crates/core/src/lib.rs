//! Hyperbolic geometry on the hyperboloid model.
//!
//! Points, horoballs and half-spaces of `H^n` are vectors of `R^{n+1}` under the
//! Lorentzian form `x∘y = -x₀y₀ + Σ xₖyₖ`. On top of the pairings sit the right-angled
//! polygon laws, the truncated-tetrahedron transversal solver and a brute-force oracle
//! used to audit the closed forms.

pub mod error;
pub mod lorentz;
pub mod objects;
pub mod oracle;
pub mod pairings;
pub mod polygons;
pub mod sampling;
pub mod tetra;
pub mod tol;
pub mod verify;

pub use error::{GeomError, Result};
pub use lorentz::{
    classify, gram, ldot, realize_gram, signature, CausalClass, CausalKind, GramMatrix, LVec,
    LorentzTransform, Signature,
};
pub use objects::{Geodesic, GeomObject, HPoint, HalfSpace, Horoball, ObjectJson};
pub use pairings::{PlanePairRelation, SignedDistance};
pub use polygons::{PentData, QuadData};
pub use tetra::{EdgeMatrix, EdgePair, Transversal, TruncatedTetrahedron};
pub use tol::Tolerances;
