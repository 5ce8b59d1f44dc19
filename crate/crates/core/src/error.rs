use thiserror::Error;

/// Errors raised by the numeric kernels, the simulator and the test machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested law lives on a boundary stratum of the support, where
    /// it is uniform on the stratum and has no density in `u`.
    #[error("singular stratum: dim={dim}, n={n} events keep the particle on the boundary")]
    SingularStratum { dim: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
