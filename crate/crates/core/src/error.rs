use thiserror::Error;

/// Everything that can go wrong when building or pairing geometric objects.
///
/// Variant names are stable: the CLI prints them verbatim so scripts can match on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("DimensionMismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("DimensionTooSmall: need at least 2 coordinates, got {0}")]
    DimensionTooSmall(usize),
    #[error("NonFinite: coordinates must be finite")]
    NonFinite,
    #[error("NotTimeLike: self-pairing {0} is not negative")]
    NotTimeLike(f64),
    #[error("NotLightLike: self-pairing {0} is outside the light-like band")]
    NotLightLike(f64),
    #[error("NotUnitSpaceLike: self-pairing {0} is not 1")]
    NotUnitSpaceLike(f64),
    #[error("NotOnHyperboloid: self-pairing {0} is not -1")]
    NotOnHyperboloid(f64),
    #[error("NotPositive: first coordinate {0} is not positive")]
    NotPositive(f64),
    #[error("NotTangent: residual pairing {0}")]
    NotTangent(f64),
    #[error("NotOnHorosphere: pairing with the horoball vector is {0}, expected -1")]
    NotOnHorosphere(f64),
    #[error("DependentIdealPoints: the two light-like vectors are proportional")]
    DependentIdealPoints,
    #[error("IdealPointNotInterior: pairing {0} is not negative")]
    IdealPointNotInterior(f64),
    #[error("DependentNormals: the two normals are proportional")]
    DependentNormals,
    #[error("NotUltraparallel: |pairing| = {0} is not greater than 1")]
    NotUltraparallel(f64),
    #[error("SignatureError: {0}")]
    SignatureError(String),
    #[error("WrongSide: pairing {0} of an ideal vertex with a side normal is not negative")]
    WrongSide(f64),
    #[error("OrientationError: {0}")]
    OrientationError(String),
    #[error("NotRealizable: cosh of a side would be {0} < 1")]
    NotRealizable(f64),
    #[error("InconsistentInputs: {0}")]
    InconsistentInputs(String),
    #[error("InconsistentOrientation: {0}")]
    InconsistentOrientation(String),
    #[error("DegenerateComplement: orthogonal complement has self-pairing {0}")]
    DegenerateComplement(f64),
    #[error("DegenerateTetrahedron: the four planes share a common perpendicular plane")]
    DegenerateTetrahedron,
    #[error("IllConditioned: critical-point quadratic a = {a}, b = {b}")]
    IllConditioned { a: f64, b: f64 },
    #[error("DomainError: {0}")]
    DomainError(String),
    #[error("BudgetExceeded: more than {0} evaluations")]
    BudgetExceeded(u64),
    #[error("InvalidEdgePair: {0}")]
    InvalidEdgePair(String),
}

impl GeomError {
    /// The variant name, e.g. `"SignatureError"`.
    pub fn name(&self) -> &'static str {
        use GeomError::*;
        match self {
            DimensionMismatch { .. } => "DimensionMismatch",
            DimensionTooSmall(_) => "DimensionTooSmall",
            NonFinite => "NonFinite",
            NotTimeLike(_) => "NotTimeLike",
            NotLightLike(_) => "NotLightLike",
            NotUnitSpaceLike(_) => "NotUnitSpaceLike",
            NotOnHyperboloid(_) => "NotOnHyperboloid",
            NotPositive(_) => "NotPositive",
            NotTangent(_) => "NotTangent",
            NotOnHorosphere(_) => "NotOnHorosphere",
            DependentIdealPoints => "DependentIdealPoints",
            IdealPointNotInterior(_) => "IdealPointNotInterior",
            DependentNormals => "DependentNormals",
            NotUltraparallel(_) => "NotUltraparallel",
            SignatureError(_) => "SignatureError",
            WrongSide(_) => "WrongSide",
            OrientationError(_) => "OrientationError",
            NotRealizable(_) => "NotRealizable",
            InconsistentInputs(_) => "InconsistentInputs",
            InconsistentOrientation(_) => "InconsistentOrientation",
            DegenerateComplement(_) => "DegenerateComplement",
            DegenerateTetrahedron => "DegenerateTetrahedron",
            IllConditioned { .. } => "IllConditioned",
            DomainError(_) => "DomainError",
            BudgetExceeded(_) => "BudgetExceeded",
            InvalidEdgePair(_) => "InvalidEdgePair",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
