use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by domain validation, file parsing, and computation
/// entry points.
#[derive(Debug, Error)]
pub enum Error {
    /// A lattice shape was empty or had a zero extent.
    #[error("shape must have at least one axis, every extent >= 1")]
    InvalidShape,

    /// The number of samples does not match what the shape or graph implies.
    #[error("value count {got} does not match expected count {want}")]
    LengthMismatch { got: usize, want: usize },

    /// A sample was NaN or infinite where a finite value is required.
    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    /// An edge endpoint referred to a vertex outside the graph.
    #[error("edge ({i}, {j}) out of range for {vertices} vertices")]
    EdgeOutOfRange { i: usize, j: usize, vertices: usize },

    /// A self-loop was supplied; the flag complex has no use for them.
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    /// A filtration matrix was not square of the declared size.
    #[error("matrix entry count {got} does not match size {size} squared")]
    MatrixShape { got: usize, size: usize },

    /// A filtration matrix broke symmetry.
    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },

    /// A diagonal entry (vertex filtration value) was not finite.
    #[error("matrix diagonal entry {0} is not finite")]
    DiagonalNotFinite(usize),

    /// A finite off-diagonal entry was smaller than one of its endpoints,
    /// which would break filtration monotonicity.
    #[error("matrix entry ({i}, {j}) is below one of its endpoint values")]
    EdgeBelowEndpoint { i: usize, j: usize },

    /// NaN anywhere in a filtration matrix.
    #[error("matrix entry ({i}, {j}) is NaN")]
    MatrixNan { i: usize, j: usize },

    /// Homology degree request beyond what the complex can carry.
    #[error("max degree {max_dim} too large for {context} of size {size}")]
    DegreeTooLarge {
        max_dim: usize,
        context: &'static str,
        size: usize,
    },

    /// Two inputs that must share a domain do not.
    #[error("domain mismatch: {0}")]
    DomainMismatch(&'static str),

    /// A configuration parameter (divergence setup, metric order) was
    /// unusable.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A synthetic-generator parameter was out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An iterative numerical routine failed to reach its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(&'static str),

    /// The oracle refused an instance too large for brute force.
    #[error("oracle instance too large: {cells} cells exceeds the {limit} cell cap")]
    OracleTooLarge { cells: usize, limit: usize },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A file did not conform to the expected on-disk format.
    #[error("{path}: {reason}")]
    Format { path: String, reason: String },
}

impl Error {
    pub(crate) fn format(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
