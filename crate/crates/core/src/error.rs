use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is not on the Lie quadric (residual {residual:e})")]
    NotOnQuadric { residual: f64 },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical rank is ambiguous (singular value ratio {ratio:e})")]
    RankAmbiguous { ratio: f64 },

    #[error("ring construction failed: {0}")]
    Construction(String),

    #[error("size {size} exceeds budget {budget} for {what}")]
    Size {
        what: &'static str,
        size: usize,
        budget: usize,
    },

    #[error("ring {0} has no algebra structure")]
    NoAlgebraStructure(String),

    #[error("points belong to different rings")]
    RingMismatch,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("points are not mutually distant")]
    NotDistant,

    #[error("pair is not admissible")]
    NotAdmissible,

    #[error("ring {0} is not local")]
    NotLocal(String),

    #[error("map is not {0}")]
    InvalidMap(&'static str),

    #[error("induced map is not well defined at point {point}")]
    WellDefinedness { point: String },

    #[error("subset is not a Jordan system")]
    NotASystem,

    #[error("wrong ring kind: {0}")]
    WrongRingKind(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cannot parse ring spec {input:?} at position {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },

    #[error("invalid scene: {0}")]
    Scene(String),

    #[error("{0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotOnQuadric { .. } => "not_on_quadric",
            Error::InvalidCycle(_) => "invalid_cycle",
            Error::Domain(_) => "domain",
            Error::RankAmbiguous { .. } => "rank_ambiguous",
            Error::Construction(_) => "construction",
            Error::Size { .. } => "size",
            Error::NoAlgebraStructure(_) => "no_algebra_structure",
            Error::RingMismatch => "ring_mismatch",
            Error::NotInvertible => "not_invertible",
            Error::NotDistant => "not_distant",
            Error::NotAdmissible => "not_admissible",
            Error::NotLocal(_) => "not_local",
            Error::InvalidMap(_) => "invalid_map",
            Error::WellDefinedness { .. } => "well_definedness",
            Error::NotASystem => "not_a_system",
            Error::WrongRingKind(_) => "wrong_ring_kind",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Parse { .. } => "parse",
            Error::Scene(_) => "scene",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        }
    }
}
