use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating scalar the core modules are generic over.
///
/// Bundles what the numerics actually use: IEEE float arithmetic, the usual
/// constants, conversion from literals, and rustfft's requirements.  Implemented
/// for `f32` and `f64`; the crate-root aliases pin `f64` for the harness.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + rustfft::FftNum + std::fmt::LowerExp + Send + Sync + 'static
{
    /// Lossy cast from an `f64` literal or precomputed constant.
    fn of(v: f64) -> Self;

    /// Exact cast from a lattice index.
    fn of_usize(v: usize) -> Self;

    /// Round-trip into `f64` for reporting.
    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    fn of(v: f64) -> Self {
        v as f32
    }
    fn of_usize(v: usize) -> Self {
        v as f32
    }
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn of(v: f64) -> Self {
        v
    }
    fn of_usize(v: usize) -> Self {
        v as f64
    }
    fn as_f64(self) -> f64 {
        self
    }
}
