//! Sampling, export and verification front end for `zmc-core`.

use thiserror::Error;

pub mod cli;
pub mod descriptor;
pub mod export;
pub mod grid;
pub mod verify;

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("descriptor: {0}")]
    Descriptor(String),
    #[error("{0}")]
    Compute(String),
    #[error("verification failed: {failed} of {total} checks")]
    VerificationFailed { failed: usize, total: usize },
}

impl ForgeError {
    /// 1 for failed verification, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            ForgeError::VerificationFailed { .. } => 1,
            _ => 2,
        }
    }
}

macro_rules! compute_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for ForgeError {
            fn from(e: $t) -> Self {
                ForgeError::Compute(e.to_string())
            }
        }
    )*};
}

compute_errors!(
    zmc_core::curve::CurveError,
    zmc_core::graph::GraphError,
    zmc_core::bjorling::BjorlingError,
    zmc_core::catalog::CatalogError,
    zmc_core::fluid::FluidError,
    zmc_core::weierstrass::WeierstrassError
);
