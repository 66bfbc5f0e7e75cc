//! Maximal functions: pointwise suprema of evolved data over sample sets.
//!
//! The field
//!
//! ```text
//!   S* f(x) = sup_{(y, t) in S} |S_t f(x + y)|
//! ```
//!
//! is evaluated by propagating once per sample and folding an elementwise
//! maximum.  Sampling a finite subset of `S` under-estimates the supremum,
//! so measured left-hand sides err on the safe side of every inequality.
//! The ratio report compares `||S* f||_2` with the covering-weighted bound
//! `sqrt(SUM_m N(2^-m) 2^(-2ms)) ||f||_{H_s}` at the natural exponent `b = a`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::covering::{covering_profile, rhs_sum, SumMode};
use crate::grid::{FftEngine, GridSpec, SpectralFunction};
use crate::ksum;
use crate::propagator::{apply_multiplier, sobolev_norm};
use crate::settools::{
    estimate_stream_len, sample_set, SetSpec, SpaceTimeSamples, StreamPolicy, SAMPLE_BUDGET,
};
use crate::{Error, Result, Scalar};

/// Cap on supremum samples; each one costs an inverse transform.
pub(crate) const MAX_SUP_SAMPLES: usize = 4096;

// ─── The maximal field ───────────────────────────────────────────────────────

/// Nonnegative grid samples of `sup |S_t f(. + y)|` over a sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalField<T> {
    spec: GridSpec<T>,
    values: Vec<T>,
    sample_count: usize,
}

impl<T: Scalar> MaximalField<T> {
    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// How many space-time samples fed the supremum.
    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// Quadrature `L^2` norm `(SUM |v|^2 h^n)^(1/2)`.
    pub fn l2_norm(&self) -> T {
        let h = self.spec.spacing().powi(self.spec.dimension() as i32);
        (ksum::sum(self.values.iter().map(|&v| v * v)) * h).sqrt()
    }
}

/// Evolve the spectrum to every sample of `samples` and keep the pointwise
/// maximum modulus.
pub fn maximal_field<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    samples: &SpaceTimeSamples<T>,
    a: T,
) -> Result<MaximalField<T>> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::arg(format!(
            "dispersion exponent must be positive, got {:e}",
            a.as_f64()
        )));
    }
    let spec = *spectrum.spec();
    // time-only samples carry no offset and work on any grid
    if samples.spatial_dimension() != 0 && samples.spatial_dimension() != spec.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "samples have spatial dimension {}, grid has {}",
            samples.spatial_dimension(),
            spec.dimension()
        )));
    }
    if samples.is_empty() {
        return Err(Error::arg("supremum over an empty sample set"));
    }
    let engine = FftEngine::new(spec);
    let coefficients = spectrum.coefficients();
    let len = spec.point_count();
    let zeros = || vec![T::zero(); len];
    let values = (0..samples.len())
        .into_par_iter()
        .fold(
            || {
                (
                    zeros(),
                    engine.make_work(),
                    vec![Complex::new(T::zero(), T::zero()); len],
                )
            },
            |(mut field, mut work, mut buf), i| {
                buf.copy_from_slice(coefficients);
                apply_multiplier(&spec, &mut buf, a, samples.t(i), samples.y(i));
                engine.inverse_in_place(&mut buf, &mut work);
                for (m, z) in field.iter_mut().zip(buf.iter()) {
                    *m = m.max(z.norm());
                }
                (field, work, buf)
            },
        )
        .map(|(field, _, _)| field)
        .reduce(zeros, |mut acc, field| {
            for (m, v) in acc.iter_mut().zip(field) {
                *m = m.max(v);
            }
            acc
        });
    Ok(MaximalField {
        spec,
        values,
        sample_count: samples.len(),
    })
}

// ─── The covering-weighted ratio ─────────────────────────────────────────────

/// Measured supremum norm against the covering-weighted Sobolev bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport<T> {
    pub a: T,
    pub s: T,
    /// Finest scale index actually counted.
    pub m_max: u32,
    /// `||S* f||_2` over the sampled set.
    pub lhs: T,
    /// `||f||_{H_s}`.
    pub sobolev: T,
    /// Truncated `SUM N(2^-m) 2^(-2ms)`.
    pub covering_sum: T,
    /// `sqrt(covering_sum) * sobolev`.
    pub rhs: T,
    pub ratio: T,
    pub sample_count: usize,
    /// Whether the covering series met the convergence rule; the inequality
    /// verdict is only conclusive when it did.
    pub series_converged: bool,
    pub holds: bool,
}

/// Supremum sampling at the finest counted scale, coarsened to the FFT budget.
pub(crate) fn sup_samples<T: Scalar>(
    set: &SetSpec<T>,
    b: T,
    m_max: u32,
) -> Result<SpaceTimeSamples<T>> {
    if matches!(set, SetSpec::Points(_)) {
        return sample_set(set, T::one());
    }
    let mut resolution = T::of(2.0).powi(-(m_max as i32)).powf(b);
    loop {
        let policy = StreamPolicy {
            parameter_step: resolution,
            sequence_cutoff: resolution,
            sequence_head: 10,
            budget: SAMPLE_BUDGET,
        };
        if estimate_stream_len(set, &policy) <= MAX_SUP_SAMPLES {
            break;
        }
        resolution = resolution * T::of(2.0);
    }
    sample_set(set, resolution)
}

/// Compare `||S* f||_2` with `sqrt(SUM_m N(2^-m) 2^(-2ms)) ||f||_{H_s}`,
/// counting the set at the natural exponent `b = a` up to scale `2^-m_max`.
pub fn maximal_ratio<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    set: &SetSpec<T>,
    a: T,
    s: T,
    m_max: u32,
) -> Result<RatioReport<T>> {
    let profile = covering_profile(set, a, 0..=m_max)?;
    let sum = rhs_sum(&profile, s, SumMode::Thm1)?;
    let sobolev = sobolev_norm(spectrum, s)?;
    let samples = sup_samples(set, a, profile.effective_max())?;
    let field = maximal_field(spectrum, &samples, a)?;
    let lhs = field.l2_norm();
    let rhs = sum.total().sqrt() * sobolev;
    Ok(RatioReport {
        a,
        s,
        m_max: profile.effective_max(),
        lhs,
        sobolev,
        covering_sum: sum.total(),
        rhs,
        ratio: lhs / rhs,
        sample_count: samples.len(),
        series_converged: sum.converged(),
        holds: lhs <= rhs,
    })
}
