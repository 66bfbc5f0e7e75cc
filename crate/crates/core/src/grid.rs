//! Uniform torus grids and quadrature-scaled discrete Fourier transforms.
//!
//! The torus `[-L/2, L/2)^n` stands in for `R^n`; test functions are expected
//! to decay fast enough that wrap-around is below tolerance.  The forward
//! transform approximates `fhat(xi) = INT exp(-i xi.x) f(x) dx` by the
//! trapezoid rule on the periodic grid,
//!
//! ```text
//!   F(xi_k) = h^n SUM_j exp(-i xi_k . x_j) f(x_j),      h = L/N,
//! ```
//!
//! on the frequency lattice `xi in (2 pi / L) {-N/2, ..., N/2 - 1}^n`, and the
//! inverse applies the `(2 pi)^-n` convention, which on the lattice reduces to
//! a `L^-n` weight per axis.  Both directions ride on rustfft with an index
//! reordering and an alternating-sign twist (the grid origin sits mid-array),
//! so a round trip is exact to rounding and Parseval holds in the form
//!
//! ```text
//!   ||f||_2^2 = (2 pi)^-n SUM_k |F(xi_k)|^2 (2 pi / L)^n .
//! ```

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::ksum;
use crate::{Error, Result, Scalar};

/// Cap on total grid points; keeps accidental `N^n` blowups from allocating.
const MAX_POINTS: usize = 1 << 28;

// ─── Grid geometry ───────────────────────────────────────────────────────────

/// Uniform periodic grid: `samples` points per axis on `[-L/2, L/2)^dimension`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    dimension: usize,
    length: T,
    samples: usize,
}

impl<T: Scalar> GridSpec<T> {
    /// Validates: `dimension >= 1`, `length > 0`, `samples` a power of two `>= 16`.
    pub fn new(dimension: usize, length: T, samples: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidGrid("dimension must be >= 1".into()));
        }
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "length must be positive and finite, got {:e}",
                length.as_f64()
            )));
        }
        if samples < 16 || !samples.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "samples must be a power of two >= 16, got {samples}"
            )));
        }
        let mut total: usize = 1;
        for _ in 0..dimension {
            total = total
                .checked_mul(samples)
                .filter(|&t| t <= MAX_POINTS)
                .ok_or_else(|| {
                    Error::InvalidGrid(format!(
                        "grid of {samples}^{dimension} points exceeds the {MAX_POINTS} cap"
                    ))
                })?;
        }
        Ok(GridSpec {
            dimension,
            length,
            samples,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Grid spacing `h = L/N`.
    pub fn spacing(&self) -> T {
        self.length / T::of_usize(self.samples)
    }

    /// Frequency spacing `2 pi / L`.
    pub fn freq_step(&self) -> T {
        T::of(2.0) * T::PI() / self.length
    }

    /// Largest representable frequency magnitude per axis, `pi N / L`.
    pub fn nyquist(&self) -> T {
        T::PI() * T::of_usize(self.samples) / self.length
    }

    /// Total number of grid points `N^n`.
    pub fn point_count(&self) -> usize {
        self.samples.pow(self.dimension as u32)
    }

    /// Physical coordinate of axis index `j`: `-L/2 + j h`.
    pub fn axis_coord(&self, j: usize) -> T {
        -self.length / T::of(2.0) + T::of_usize(j) * self.spacing()
    }

    /// Frequency of centered axis index `j`: `(2 pi / L)(j - N/2)`.
    pub fn axis_freq(&self, j: usize) -> T {
        let k = j as i64 - (self.samples / 2) as i64;
        self.freq_step() * T::of(k as f64)
    }

    /// Decode a flat row-major index into per-axis indices.
    pub fn unravel(&self, idx: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.dimension);
        let mut rest = idx;
        for d in (0..self.dimension).rev() {
            out[d] = rest % self.samples;
            rest /= self.samples;
        }
    }

    /// Physical coordinates of the flat index `idx`.
    pub fn point(&self, idx: usize, out: &mut [T]) {
        let mut rest = idx;
        for d in (0..self.dimension).rev() {
            out[d] = self.axis_coord(rest % self.samples);
            rest /= self.samples;
        }
    }

    /// Frequency vector of the flat index `idx` (centered layout).
    pub fn freq(&self, idx: usize, out: &mut [T]) {
        let mut rest = idx;
        for d in (0..self.dimension).rev() {
            out[d] = self.axis_freq(rest % self.samples);
            rest /= self.samples;
        }
    }

    /// `|xi|^2` at the flat index `idx`.
    pub fn freq_norm_sq(&self, idx: usize) -> T {
        let mut rest = idx;
        let mut acc = T::zero();
        for _ in 0..self.dimension {
            let f = self.axis_freq(rest % self.samples);
            acc = acc + f * f;
            rest /= self.samples;
        }
        acc
    }

    /// Flat index of the integer frequency vector `k` (per-axis `-N/2 <= k_d < N/2`).
    pub fn freq_flat_index(&self, k: &[i64]) -> Option<usize> {
        if k.len() != self.dimension {
            return None;
        }
        let half = (self.samples / 2) as i64;
        let mut idx = 0usize;
        for &kd in k {
            if kd < -half || kd >= half {
                return None;
            }
            idx = idx * self.samples + (kd + half) as usize;
        }
        Some(idx)
    }

    fn check_values_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.point_count() {
            return Err(Error::DimensionMismatch(format!(
                "{what} carries {len} values but the grid has {} points",
                self.point_count()
            )));
        }
        Ok(())
    }
}

fn check_finite<T: Scalar>(values: &[Complex<T>], what: &str) -> Result<()> {
    if let Some(i) = values
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::arg(format!("{what} has a non-finite entry at {i}")));
    }
    Ok(())
}

// ─── Sampled functions ───────────────────────────────────────────────────────

/// Complex samples on the physical grid, row-major, last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    spec: GridSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(spec: GridSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        spec.check_values_len(values.len(), "grid function")?;
        check_finite(&values, "grid function")?;
        Ok(GridFunction { spec, values })
    }

    /// Sample a closure over the grid points.
    pub fn from_fn(spec: GridSpec<T>, mut f: impl FnMut(&[T]) -> Complex<T>) -> Self {
        let mut coords = vec![T::zero(); spec.dimension()];
        let values = (0..spec.point_count())
            .map(|idx| {
                spec.point(idx, &mut coords);
                f(&coords)
            })
            .collect();
        GridFunction { spec, values }
    }

    pub(crate) fn from_raw(spec: GridSpec<T>, values: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(values.len(), spec.point_count());
        GridFunction { spec, values }
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }
}

/// Fourier coefficients on the centered frequency lattice, same layout as
/// [`GridFunction`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction<T> {
    spec: GridSpec<T>,
    coefficients: Vec<Complex<T>>,
}

impl<T: Scalar> SpectralFunction<T> {
    pub fn new(spec: GridSpec<T>, coefficients: Vec<Complex<T>>) -> Result<Self> {
        spec.check_values_len(coefficients.len(), "spectrum")?;
        check_finite(&coefficients, "spectrum")?;
        Ok(SpectralFunction { spec, coefficients })
    }

    /// Build a spectrum from a closure over frequency vectors.
    pub fn from_fn(spec: GridSpec<T>, mut f: impl FnMut(&[T]) -> Complex<T>) -> Self {
        let mut xi = vec![T::zero(); spec.dimension()];
        let coefficients = (0..spec.point_count())
            .map(|idx| {
                spec.freq(idx, &mut xi);
                f(&xi)
            })
            .collect();
        SpectralFunction { spec, coefficients }
    }

    pub(crate) fn from_raw(spec: GridSpec<T>, coefficients: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(coefficients.len(), spec.point_count());
        SpectralFunction { spec, coefficients }
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Complex<T>> {
        self.coefficients
    }

    /// Largest `|xi|` carrying a nonzero coefficient, if any.
    pub fn support_radius(&self) -> Option<T> {
        let mut best: Option<T> = None;
        for (idx, z) in self.coefficients.iter().enumerate() {
            if z.re != T::zero() || z.im != T::zero() {
                let r = self.spec.freq_norm_sq(idx).sqrt();
                best = Some(match best {
                    Some(b) if b >= r => b,
                    _ => r,
                });
            }
        }
        best
    }
}

// ─── FFT engine ──────────────────────────────────────────────────────────────

/// Planned transforms for one grid size, shareable across threads.
pub(crate) struct FftEngine<T: Scalar> {
    spec: GridSpec<T>,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
}

/// Per-thread scratch for [`FftEngine`] passes.
pub(crate) struct FftWork<T> {
    line: Vec<Complex<T>>,
    twist: Vec<Complex<T>>,
    fft: Vec<Complex<T>>,
}

impl<T: Scalar> FftEngine<T> {
    pub fn new(spec: GridSpec<T>) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(spec.samples());
        let inv = planner.plan_fft_inverse(spec.samples());
        FftEngine { spec, fwd, inv }
    }

    pub fn make_work(&self) -> FftWork<T> {
        let n = self.spec.samples();
        let scratch = self
            .fwd
            .get_inplace_scratch_len()
            .max(self.inv.get_inplace_scratch_len());
        FftWork {
            line: vec![Complex::new(T::zero(), T::zero()); n],
            twist: vec![Complex::new(T::zero(), T::zero()); n],
            fft: vec![Complex::new(T::zero(), T::zero()); scratch],
        }
    }

    /// Forward pass over every axis: physical samples -> centered coefficients.
    pub fn forward_in_place(&self, data: &mut [Complex<T>], work: &mut FftWork<T>) {
        let h = self.spec.spacing();
        self.each_axis(data, work, |line, twist, scratch| {
            self.fwd.process_with_scratch(line, scratch);
            reorder_forward(line, twist, h);
        });
    }

    /// Inverse pass over every axis: centered coefficients -> physical samples.
    pub fn inverse_in_place(&self, data: &mut [Complex<T>], work: &mut FftWork<T>) {
        let inv_l = T::one() / self.spec.length();
        self.each_axis(data, work, |line, twist, scratch| {
            reorder_inverse(line, twist, inv_l);
            self.inv.process_with_scratch(twist, scratch);
            line.copy_from_slice(twist);
        });
    }

    fn each_axis(
        &self,
        data: &mut [Complex<T>],
        work: &mut FftWork<T>,
        mut line_op: impl FnMut(&mut [Complex<T>], &mut [Complex<T>], &mut [Complex<T>]),
    ) {
        let n = self.spec.samples();
        let dim = self.spec.dimension();
        let total = self.spec.point_count();
        let FftWork { line, twist, fft } = work;
        for d in 0..dim {
            let stride = n.pow((dim - 1 - d) as u32);
            let block = stride * n;
            for chunk in (0..total).step_by(block) {
                for offset in 0..stride {
                    let base = chunk + offset;
                    for j in 0..n {
                        line[j] = data[base + j * stride];
                    }
                    line_op(line, twist, fft);
                    for j in 0..n {
                        data[base + j * stride] = line[j];
                    }
                }
            }
        }
    }
}

/// Forward line finish: `line` holds the raw DFT; write back in centered order
/// with the `h (-1)^k` twist.  `N/2` is even for every admitted `N`, so the
/// sign alternates with the centered index itself.
fn reorder_forward<T: Scalar>(line: &mut [Complex<T>], twist: &mut [Complex<T>], h: T) {
    let n = line.len();
    for jc in 0..n {
        let m = (jc + n / 2) % n;
        let s = if jc % 2 == 0 { h } else { -h };
        twist[jc] = line[m] * s;
    }
    line.copy_from_slice(twist);
}

/// Inverse line prep: `line` holds centered coefficients; fill `twist` with the
/// FFT-ordered, sign-twisted, `1/L`-scaled input for the unnormalized inverse DFT.
fn reorder_inverse<T: Scalar>(line: &[Complex<T>], twist: &mut [Complex<T>], inv_l: T) {
    let n = line.len();
    for jc in 0..n {
        let m = (jc + n / 2) % n;
        let s = if jc % 2 == 0 { inv_l } else { -inv_l };
        twist[m] = line[jc] * s;
    }
}

// ─── Public transforms and norms ─────────────────────────────────────────────

/// Forward transform: trapezoid-rule Fourier coefficients of `f`.
pub fn to_spectrum<T: Scalar>(f: &GridFunction<T>) -> SpectralFunction<T> {
    let engine = FftEngine::new(*f.spec());
    let mut work = engine.make_work();
    let mut data = f.values().to_vec();
    engine.forward_in_place(&mut data, &mut work);
    SpectralFunction {
        spec: *f.spec(),
        coefficients: data,
    }
}

/// Inverse transform under the `(2 pi)^-n` convention.
pub fn from_spectrum<T: Scalar>(spectrum: &SpectralFunction<T>) -> GridFunction<T> {
    let engine = FftEngine::new(*spectrum.spec());
    let mut work = engine.make_work();
    let mut data = spectrum.coefficients().to_vec();
    engine.inverse_in_place(&mut data, &mut work);
    GridFunction {
        spec: *spectrum.spec(),
        values: data,
    }
}

/// `L^2` norm by compensated quadrature: `(SUM |f|^2 h^n)^{1/2}`.
pub fn l2_norm<T: Scalar>(f: &GridFunction<T>) -> T {
    let hn = f.spec().spacing().powi(f.spec().dimension() as i32);
    let sum = ksum::sum(f.values().iter().map(|z| z.norm_sqr()));
    (sum * hn).sqrt()
}

/// `L^2` norm of a spectrum under the same convention,
/// `((2 pi)^-n SUM |F|^2 (2 pi / L)^n)^{1/2}`; equals [`l2_norm`] by Parseval.
pub fn l2_norm_spectral<T: Scalar>(spectrum: &SpectralFunction<T>) -> T {
    let spec = spectrum.spec();
    let n = spec.dimension() as i32;
    let weight = (spec.freq_step() / (T::of(2.0) * T::PI())).powi(n);
    let sum = ksum::sum(spectrum.coefficients().iter().map(|z| z.norm_sqr()));
    (sum * weight).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_grid_function(spec: GridSpec<f64>, seed: u64) -> GridFunction<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..spec.point_count())
            .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GridFunction::new(spec, values).unwrap()
    }

    /// O(N^2) quadrature DFT, sharing nothing with the FFT path.
    fn direct_forward(f: &GridFunction<f64>) -> Vec<Complex64> {
        let spec = f.spec();
        assert_eq!(spec.dimension(), 1, "oracle is one-dimensional");
        let n = spec.samples();
        let h = spec.spacing();
        (0..n)
            .map(|jc| {
                let xi = spec.axis_freq(jc);
                let mut acc = cx(0.0, 0.0);
                for j in 0..n {
                    let x = spec.axis_coord(j);
                    acc += f.values()[j] * cx(0.0, -xi * x).exp();
                }
                acc * h
            })
            .collect()
    }

    #[test]
    fn spec_validation() {
        assert!(GridSpec::<f64>::new(1, 40.0, 4096).is_ok());
        assert!(matches!(
            GridSpec::<f64>::new(0, 40.0, 64),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            GridSpec::<f64>::new(1, 0.0, 64),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            GridSpec::<f64>::new(1, 40.0, 20),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            GridSpec::<f64>::new(1, 40.0, 8),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn frequency_layout() {
        let spec = GridSpec::<f64>::new(1, 40.0, 64).unwrap();
        let step = 2.0 * std::f64::consts::PI / 40.0;
        assert!((spec.axis_freq(0) + 32.0 * step).abs() < 1e-14);
        assert!((spec.axis_freq(32)).abs() < 1e-14, "index N/2 is frequency 0");
        assert!((spec.nyquist() - 32.0 * step).abs() < 1e-12);
        let idx = spec.freq_flat_index(&[5]).unwrap();
        assert!((spec.axis_freq(idx) - 5.0 * step).abs() < 1e-13);
        assert_eq!(spec.freq_flat_index(&[32]), None, "N/2 not representable");
    }

    #[test]
    fn constant_function_has_coefficient_l_at_zero() {
        let spec = GridSpec::<f64>::new(1, 40.0, 256).unwrap();
        let f = GridFunction::from_fn(spec, |_| cx(1.0, 0.0));
        let spectrum = to_spectrum(&f);
        let zero = spec.freq_flat_index(&[0]).unwrap();
        let err = (spectrum.coefficients()[zero] - cx(40.0, 0.0)).norm();
        assert!(err < 1e-12 * 40.0, "F(0) off by {err:.3e}");
        for (idx, z) in spectrum.coefficients().iter().enumerate() {
            if idx != zero {
                assert!(z.norm() < 1e-11, "leakage {:.3e} at {idx}", z.norm());
            }
        }
    }

    #[test]
    fn matches_direct_quadrature_dft() {
        let spec = GridSpec::<f64>::new(1, 5.0, 16).unwrap();
        let f = random_grid_function(spec, 7);
        let fast = to_spectrum(&f);
        let slow = direct_forward(&f);
        let mut worst = 0.0f64;
        for (a, b) in fast.coefficients().iter().zip(&slow) {
            worst = worst.max((a - b).norm());
        }
        // tolerance: O(N) rounding on an O(1) signal
        assert!(worst < 1e-13, "FFT vs direct DFT mismatch {worst:.3e}");
    }

    #[test]
    fn round_trip_is_identity() {
        for (dim, len, n, seed) in [(1usize, 40.0, 4096usize, 1u64), (2, 20.0, 64, 2)] {
            let spec = GridSpec::<f64>::new(dim, len, n).unwrap();
            let f = random_grid_function(spec, seed);
            let back = from_spectrum(&to_spectrum(&f));
            let mut worst = 0.0f64;
            for (a, b) in back.values().iter().zip(f.values()) {
                worst = worst.max((a - b).norm());
            }
            assert!(
                worst < 1e-13,
                "round trip error {worst:.3e} on {dim}-d grid"
            );
        }
    }

    #[test]
    fn gaussian_transform_closed_form() {
        let spec = GridSpec::<f64>::new(1, 40.0, 4096).unwrap();
        let f = GridFunction::from_fn(spec, |x| cx((-x[0] * x[0] / 2.0).exp(), 0.0));
        let spectrum = to_spectrum(&f);
        let root_2pi = (2.0 * std::f64::consts::PI).sqrt();
        let mut worst = 0.0f64;
        for (idx, z) in spectrum.coefficients().iter().enumerate() {
            let xi = spec.axis_freq(idx);
            let exact = root_2pi * (-xi * xi / 2.0).exp();
            worst = worst.max((z - cx(exact, 0.0)).norm());
        }
        // periodization error of exp(-x^2/2) on L = 40 is ~exp(-200)
        assert!(worst < 1e-8, "gaussian pair error {worst:.3e}");
    }

    #[test]
    fn parseval_on_200_random_band_limited_functions() {
        let spec = GridSpec::<f64>::new(1, 20.0, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let spectrum = SpectralFunction::from_fn(spec, |xi| {
                if xi[0].abs() <= 6.0 {
                    cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                } else {
                    cx(0.0, 0.0)
                }
            });
            let f = from_spectrum(&spectrum);
            let phys = l2_norm(&f);
            let freq = l2_norm_spectral(&spectrum);
            let gap = (phys * phys - freq * freq).abs();
            assert!(
                gap <= 1e-12 * phys * phys,
                "Parseval gap {gap:.3e} vs norm^2 {:.3e}",
                phys * phys
            );
        }
    }

    #[test]
    fn l2_norm_oracles() {
        let spec = GridSpec::<f64>::new(1, 40.0, 4096).unwrap();
        let one = GridFunction::from_fn(spec, |_| cx(1.0, 0.0));
        let root_l = 40.0f64.sqrt();
        assert!((l2_norm(&one) - root_l).abs() < 1e-12 * root_l);

        let gauss = GridFunction::from_fn(spec, |x| cx((-x[0] * x[0] / 2.0).exp(), 0.0));
        let exact = std::f64::consts::PI.powf(0.25); // (INT exp(-x^2) dx)^(1/2)
        assert!(
            (l2_norm(&gauss) - exact).abs() < 1e-12,
            "gaussian L2 norm {:.15} vs {:.15}",
            l2_norm(&gauss),
            exact
        );
    }

    #[test]
    fn two_dimensional_constant_coefficient() {
        let spec = GridSpec::<f64>::new(2, 10.0, 32).unwrap();
        let f = GridFunction::from_fn(spec, |_| cx(1.0, 0.0));
        let spectrum = to_spectrum(&f);
        let zero = spec.freq_flat_index(&[0, 0]).unwrap();
        let err = (spectrum.coefficients()[zero] - cx(100.0, 0.0)).norm();
        assert!(err < 1e-10, "F(0,0) should be L^2 = 100, off by {err:.3e}");
    }

    #[test]
    fn value_count_and_finiteness_are_checked() {
        let spec = GridSpec::<f64>::new(1, 10.0, 16).unwrap();
        assert!(matches!(
            GridFunction::new(spec, vec![cx(0.0, 0.0); 15]),
            Err(Error::DimensionMismatch(_))
        ));
        let mut vals = vec![cx(0.0, 0.0); 16];
        vals[3] = cx(f64::NAN, 0.0);
        assert!(matches!(
            GridFunction::new(spec, vals),
            Err(Error::InvalidArgument(_))
        ));
    }

    proptest! {
        #[test]
        fn transform_is_linear(
            re in proptest::collection::vec(-1.0f64..1.0, 16),
            im in proptest::collection::vec(-1.0f64..1.0, 16),
            scale in -2.0f64..2.0,
        ) {
            let spec = GridSpec::<f64>::new(1, 8.0, 16).unwrap();
            let f = GridFunction::new(
                spec,
                re.iter().zip(&im).map(|(&a, &b)| cx(a, b)).collect(),
            )
            .unwrap();
            let g = random_grid_function(spec, 99);
            let combined = GridFunction::new(
                spec,
                f.values()
                    .iter()
                    .zip(g.values())
                    .map(|(a, b)| a * scale + b)
                    .collect(),
            )
            .unwrap();
            let lhs = to_spectrum(&combined);
            let rhs_f = to_spectrum(&f);
            let rhs_g = to_spectrum(&g);
            for ((l, a), b) in lhs
                .coefficients()
                .iter()
                .zip(rhs_f.coefficients())
                .zip(rhs_g.coefficients())
            {
                prop_assert!((l - (a * scale + b)).norm() < 1e-12);
            }
        }
    }
}
