use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("n = {n} exceeds the enumeration cap of {max_n}")]
    CapExceeded { n: u64, max_n: u64 },

    #[error("element {a}x+{b} is not reduced modulo {n}")]
    InvalidElement { a: u64, b: u64, n: u64 },

    #[error("element {a}x+{b} is zero or a unit and has no ideal class")]
    NotAVertex { a: u64, b: u64 },

    #[error("n = {0} is not in a supported family (p, p^2, p^3, pq, p^2q, pqr)")]
    UnsupportedFamily(u64),

    #[error("closed form for {family} does not apply at {params}: {reason}")]
    DegenerateParameters {
        family: &'static str,
        params: String,
        reason: String,
    },

    #[error("eigensolver did not converge after {iterations} iterations (residual off-diagonal {off_norm:e})")]
    NoConvergence { iterations: usize, off_norm: f64 },

    #[error("eigenpair residual {residual:e} exceeds bound {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },

    #[error("component spectrum {index} has no zero eigenvalue to remove")]
    InvalidComponentSpectrum { index: usize },

    #[error("invalid join instance: {0}")]
    InvalidInstance(String),

    #[error("spectra describe matrices of different dimension ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("spectrum needs at least two eigenvalues, got {0}")]
    SpectrumTooSmall(usize),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}
