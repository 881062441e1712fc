use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported spin magnitude {twice}/2; only 1/2 and 1 are modelled")]
    UnsupportedSpin { twice: u8 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("site index {0} outside the four-site layout")]
    SiteIndex(usize),
    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("Hamiltonian couples sectors: |H[{row}][{col}]| = {value:e}")]
    SectorLeak { row: usize, col: usize, value: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("2x2 discriminant {0:e} is negative beyond tolerance")]
    NegativeDiscriminant(f64),
    #[error("inverse temperature {0} outside the supported range [0, 1e4]")]
    BetaOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
