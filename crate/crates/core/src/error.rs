//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input lies outside the domain of the requested operation.
    #[error("domain error: {quantity} = {value} violates \"{constraint}\"")]
    Domain {
        quantity: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Young's equation has no solution: the cosine argument left (-1, 1).
    #[error("no equilibrium contact angle: (S_sa - S_ls)/S_al = {cos_theta} lies outside (-1, 1)")]
    NoEquilibriumAngle { cos_theta: f64 },

    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// A spin-coating fit produced a non-negative exponent; film thickness
    /// must decrease with spin speed.
    #[error("non-physical fit: exponent {exponent} is not negative")]
    NonPhysicalFit { exponent: f64 },

    #[error("degenerate fit: samples are collinear")]
    DegenerateFit,

    /// A fitted circle implies a sag height outside the sphere.
    #[error("profile inconsistent: implied sag {sag_um} um outside (0, {sphere_diameter_um}) um")]
    ProfileInconsistent { sag_um: f64, sphere_diameter_um: f64 },

    /// An element of a batch input was rejected; `index` is its position.
    #[error("invalid entry at index {index}: {source}")]
    InvalidEntry {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// A recipe step is structurally malformed (missing or stray fields).
    #[error("recipe step {step_index} is malformed: {message}")]
    MalformedStep { step_index: usize, message: String },

    #[error("recipe has no steps")]
    EmptyRecipe,

    /// A CSV or other text input did not match the expected layout.
    #[error("format error: {0}")]
    Format(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by out-of-domain values or inconsistent data,
    /// as opposed to I/O and parse failures.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Format(_) | Error::Csv(_) | Error::Json(_) | Error::Io(_)
        )
    }
}
