//! smax-core: a desk-scale numerical laboratory for Schrodinger means.
//!
//! The crate evolves band-limited data under the dispersive multiplier
//! `exp(it|xi|^a)`, measures Sobolev norms, counts anisotropic covers of
//! space-time sets by `r x r^a` boxes, and assembles maximal fields
//! `sup_(y,t) |S_t f(x+y)|` so that covering-weighted L2 bounds can be
//! checked numerically.
//!
//! Conventions used throughout:
//!
//! * Fourier transform `fhat(xi) = INT exp(-i xi.x) f(x) dx`, inverted with a
//!   `(2 pi)^-n` weight.  On the torus `[-L/2, L/2)^n` the integrals become
//!   quadrature sums with weights `h^n` (physical side, `h = L/N`) and
//!   `(2 pi / L)^n` (frequency side).
//! * Frequencies live on `(2 pi / L) * {-N/2, ..., N/2 - 1}` per axis.
//! * `||f||_{H_s}^2 = INT (1+|xi|^2)^s |fhat|^2 d xi`, so
//!   `||f||_{H_0} = (2 pi)^{n/2} ||f||_2`.
//!
//! Core modules are generic over the floating scalar via [`Scalar`]
//! (`f32`/`f64`); the harness and CLI run on [`Real`] = `f64`.

// Validation guards are written `!(x > 0)` on purpose: the negation also
// rejects NaN, which `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// FFT line reorderings index two buffers through a modular offset; an
// iterator chain would obscure the index arithmetic.
#![allow(clippy::needless_range_loop)]

pub mod covering;
pub mod grid;
pub mod harness;
pub mod maximal;
pub mod propagator;
pub mod settools;

mod ksum;
mod scalar;

pub use scalar::Scalar;

/// Default scalar for the harness and CLI.
pub type Real = f64;

/// Complex number over the default scalar.
pub type Cplx = num_complex::Complex<Real>;

/// Errors shared by every module of the laboratory.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("undersampled set: {0}")]
    Undersampled(String),
    #[error("unsupported set for this operation: {0}")]
    UnsupportedSet(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
