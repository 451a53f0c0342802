use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid bundle: {0}")]
    InvalidSpec(String),

    #[error("{op} requires {expected}")]
    WrongCase {
        op: &'static str,
        expected: &'static str,
    },

    #[error("{0} needs a split bundle (explicit degrees)")]
    NonSplit(&'static str),

    #[error("splitting gap b - a = {gap} exceeds 4; no smooth anticanonical threefold exists")]
    Inadmissible { gap: i64 },

    #[error("gamma = {0} exceeds the bound 16")]
    GammaTooLarge(i64),

    #[error("{quantity}: closed form {closed_form} disagrees with oracle {oracle}")]
    OracleMismatch {
        quantity: String,
        closed_form: String,
        oracle: String,
    },

    #[error("{quantity} = {value} is not an integer")]
    NotIntegral { quantity: String, value: String },

    #[error("Picard number is {picard}, not 2: {reason}")]
    PicardNotTwo { picard: i64, reason: String },

    #[error("{quantity} = {value} should be positive")]
    NotPositive { quantity: String, value: i64 },

    #[error("cubic form is identically zero")]
    ZeroForm,

    #[error("{which} has degree {found:?}, expected homogeneous of degree {expected}")]
    DegreeMismatch {
        which: &'static str,
        expected: u32,
        found: Option<u32>,
    },

    #[error("the zero vector is not a point of projective space")]
    ZeroPoint,

    #[error("cohomology index {index} out of range for P^{base_dim}")]
    CohomologyIndex { index: usize, base_dim: u32 },
}

impl Error {
    /// Stable machine-readable tag for reports and exit codes.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::BothZero => "both_zero",
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::WrongCase { .. } => "wrong_case",
            Error::NonSplit(_) => "non_split",
            Error::Inadmissible { .. } => "inadmissible",
            Error::GammaTooLarge(_) => "gamma_too_large",
            Error::OracleMismatch { .. } => "oracle_mismatch",
            Error::NotIntegral { .. } => "not_integral",
            Error::PicardNotTwo { .. } => "picard_not_two",
            Error::NotPositive { .. } => "not_positive",
            Error::ZeroForm => "zero_form",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::ZeroPoint => "zero_point",
            Error::CohomologyIndex { .. } => "cohomology_index",
        }
    }
}
