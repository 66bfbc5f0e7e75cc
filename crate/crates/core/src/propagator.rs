//! Dispersive evolution, Sobolev norms, and dyadic frequency decompositions.
//!
//! The propagator applies the unimodular multiplier
//!
//! ```text
//!   S_t f(x + y) = (2 pi)^-n INT exp(i xi.(x+y)) exp(i t |xi|^a) fhat(xi) d xi
//! ```
//!
//! on the grid spectrum, folding the spatial offset `y` in as the phase
//! `exp(i xi.y)` so off-lattice offsets cost nothing.  `|xi|^a` is evaluated as
//! `(|xi|^2)^(a/2)`, with the zero mode left untouched for every `a > 0`.
//!
//! Sobolev norms use the inhomogeneous weight `(1 + |xi|^2)^s`; under the
//! crate's transform convention `||f||_{H_0} = (2 pi)^{n/2} ||f||_2`.

use num_complex::Complex;

use crate::grid::{FftEngine, GridFunction, GridSpec, SpectralFunction};
use crate::ksum;
use crate::{Error, Result, Scalar};

/// Evolution parameters: dispersion exponent `a > 0`, time `t`, spatial offset.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorParams<T> {
    a: T,
    t: T,
    shift: Vec<T>,
}

impl<T: Scalar> PropagatorParams<T> {
    /// Validates `a > 0` and finite `t`; the offset defaults to zero.
    pub fn new(a: T, t: T) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(Error::arg(format!(
                "dispersion exponent must be positive, got {:e}",
                a.as_f64()
            )));
        }
        if !t.is_finite() {
            return Err(Error::arg("time must be finite"));
        }
        Ok(PropagatorParams {
            a,
            t,
            shift: Vec::new(),
        })
    }

    /// Attach a spatial offset `y`; length must match the grid dimension at use.
    pub fn with_shift(mut self, shift: Vec<T>) -> Result<Self> {
        if shift.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("shift has a non-finite entry"));
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn shift(&self) -> &[T] {
        &self.shift
    }

    fn check_dimension(&self, dim: usize) -> Result<()> {
        if !self.shift.is_empty() && self.shift.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "shift has {} components on a {dim}-dimensional grid",
                self.shift.len()
            )));
        }
        Ok(())
    }
}

/// Multiply the coefficient array by `exp(i(t |xi|^a + xi.y))` in place.
pub(crate) fn apply_multiplier<T: Scalar>(
    spec: &GridSpec<T>,
    coefficients: &mut [Complex<T>],
    a: T,
    t: T,
    shift: &[T],
) {
    let dim = spec.dimension();
    let half_a = a / T::of(2.0);
    let mut xi = vec![T::zero(); dim];
    for (idx, z) in coefficients.iter_mut().enumerate() {
        spec.freq(idx, &mut xi);
        let mut norm_sq = T::zero();
        let mut dot = T::zero();
        for (d, &x) in xi.iter().enumerate() {
            norm_sq = norm_sq + x * x;
            if let Some(&y) = shift.get(d) {
                dot = dot + x * y;
            }
        }
        let omega = if norm_sq == T::zero() {
            T::zero()
        } else {
            norm_sq.powf(half_a)
        };
        let phase = t * omega + dot;
        *z = *z * Complex::new(phase.cos(), phase.sin());
    }
}

/// Evolve a spectrum: returns the physical-space field `S_t f(. + y)`.
pub fn propagate<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    params: &PropagatorParams<T>,
) -> Result<GridFunction<T>> {
    params.check_dimension(spectrum.spec().dimension())?;
    let engine = FftEngine::new(*spectrum.spec());
    let mut work = engine.make_work();
    let mut data = spectrum.coefficients().to_vec();
    apply_multiplier(spectrum.spec(), &mut data, params.a, params.t, &params.shift);
    engine.inverse_in_place(&mut data, &mut work);
    Ok(GridFunction::from_raw(*spectrum.spec(), data))
}

/// `(SUM (1+|xi|^2)^s |F(xi)|^2 (2 pi / L)^n)^{1/2}` by compensated summation.
pub fn sobolev_norm<T: Scalar>(spectrum: &SpectralFunction<T>, s: T) -> Result<T> {
    if !s.is_finite() {
        return Err(Error::arg("Sobolev order must be finite"));
    }
    let spec = spectrum.spec();
    let weight = spec.freq_step().powi(spec.dimension() as i32);
    let one = T::one();
    let sum = ksum::sum(
        spectrum
            .coefficients()
            .iter()
            .enumerate()
            .map(|(idx, z)| (one + spec.freq_norm_sq(idx)).powf(s) * z.norm_sqr()),
    );
    Ok((sum * weight).sqrt())
}

// ─── Dyadic decomposition ────────────────────────────────────────────────────

/// Dyadic frequency pieces: piece 0 holds `|xi| <= 1`, piece `k >= 1` holds
/// `2^(k-1) < |xi| <= 2^k`.  Every lattice frequency lands in exactly one
/// piece, so the pieces sum back to the original spectrum exactly.
#[derive(Debug, Clone)]
pub struct DyadicDecomposition<T> {
    pieces: Vec<SpectralFunction<T>>,
}

impl<T: Scalar> DyadicDecomposition<T> {
    pub fn pieces(&self) -> &[SpectralFunction<T>] {
        &self.pieces
    }

    /// Number of pieces, `K + 1`.
    pub fn count(&self) -> usize {
        self.pieces.len()
    }

    /// Coefficient-wise sum of all pieces.
    pub fn reconstruct(&self) -> SpectralFunction<T> {
        let spec = *self.pieces[0].spec();
        let mut acc = vec![Complex::new(T::zero(), T::zero()); spec.point_count()];
        for piece in &self.pieces {
            for (a, b) in acc.iter_mut().zip(piece.coefficients()) {
                *a = *a + *b;
            }
        }
        SpectralFunction::from_raw(spec, acc)
    }
}

/// Index of the dyadic shell containing `|xi|`, decided on `|xi|^2` against
/// exact powers of four so shell boundaries are unambiguous.
fn shell_index<T: Scalar>(norm_sq: T) -> usize {
    let four = T::of(4.0);
    let mut k = 0usize;
    let mut bound = T::one();
    while norm_sq > bound {
        k += 1;
        bound = bound * four;
    }
    k
}

/// Split a spectrum into its dyadic pieces; `K` is the smallest `k` with
/// `2^k` at least the largest representable `|xi|`.
pub fn dyadic_split<T: Scalar>(spectrum: &SpectralFunction<T>) -> DyadicDecomposition<T> {
    let spec = *spectrum.spec();
    let corner_sq = spec.nyquist() * spec.nyquist() * T::of_usize(spec.dimension());
    let k_max = shell_index(corner_sq);
    let zero = Complex::new(T::zero(), T::zero());
    let mut buffers = vec![vec![zero; spec.point_count()]; k_max + 1];
    for (idx, z) in spectrum.coefficients().iter().enumerate() {
        let k = shell_index(spec.freq_norm_sq(idx));
        buffers[k][idx] = *z;
    }
    DyadicDecomposition {
        pieces: buffers
            .into_iter()
            .map(|b| SpectralFunction::from_raw(spec, b))
            .collect(),
    }
}

/// Zero out every coefficient with `|xi| > A`.  `A` must lie in `(0, Nyquist]`.
pub fn band_limit<T: Scalar>(spectrum: &SpectralFunction<T>, a_band: T) -> Result<SpectralFunction<T>> {
    let spec = spectrum.spec();
    if !(a_band > T::zero()) || !(a_band <= spec.nyquist()) {
        return Err(Error::arg(format!(
            "band limit must lie in (0, {:e}], got {:e}",
            spec.nyquist().as_f64(),
            a_band.as_f64()
        )));
    }
    let cut_sq = a_band * a_band;
    let zero = Complex::new(T::zero(), T::zero());
    let coefficients = spectrum
        .coefficients()
        .iter()
        .enumerate()
        .map(|(idx, z)| {
            if spec.freq_norm_sq(idx) > cut_sq {
                zero
            } else {
                *z
            }
        })
        .collect();
    Ok(SpectralFunction::from_raw(*spec, coefficients))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{from_spectrum, l2_norm, l2_norm_spectral, to_spectrum};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Random spectrum supported in `|xi| <= cut`, deterministic in `seed`.
    fn random_band_limited(spec: GridSpec<f64>, cut: f64, seed: u64) -> SpectralFunction<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SpectralFunction::from_fn(spec, |xi| {
            if xi.iter().map(|v| v * v).sum::<f64>() <= cut * cut {
                cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            } else {
                cx(0.0, 0.0)
            }
        })
    }

    #[test]
    fn params_are_validated() {
        assert!(PropagatorParams::new(2.0f64, 0.5).is_ok());
        assert!(PropagatorParams::new(0.0f64, 0.5).is_err());
        assert!(PropagatorParams::new(-1.0f64, 0.5).is_err());
        assert!(PropagatorParams::new(f64::NAN, 0.5).is_err());
        assert!(PropagatorParams::new(2.0f64, f64::INFINITY).is_err());
        assert!(PropagatorParams::new(2.0f64, 0.5)
            .unwrap()
            .with_shift(vec![f64::NAN])
            .is_err());

        let spec = GridSpec::<f64>::new(1, 10.0, 16).unwrap();
        let spectrum = random_band_limited(spec, 2.0, 0);
        let params = PropagatorParams::new(2.0, 0.5)
            .unwrap()
            .with_shift(vec![0.1, 0.2])
            .unwrap();
        assert!(matches!(
            propagate(&spectrum, &params),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn gaussian_evolution_matches_closed_form() {
        // For f(x) = exp(-x^2/2) and a = 2 the evolution stays gaussian:
        //   S_t f(x) = (1 - 2it)^(-1/2) exp(-x^2 / (2(1 - 2it))).
        let spec = GridSpec::<f64>::new(1, 40.0, 4096).unwrap();
        let f = GridFunction::from_fn(spec, |x| cx((-x[0] * x[0] / 2.0).exp(), 0.0));
        let spectrum = to_spectrum(&f);
        for t in [0.1, 0.5, 1.0] {
            let params = PropagatorParams::new(2.0, t).unwrap();
            let evolved = propagate(&spectrum, &params).unwrap();
            let denom = cx(1.0, -2.0 * t);
            let front = denom.sqrt().inv();
            let mut worst = 0.0f64;
            for (idx, v) in evolved.values().iter().enumerate() {
                let x = spec.axis_coord(idx);
                let exact = front * (cx(-x * x / 2.0, 0.0) / denom).exp();
                worst = worst.max((v - exact).norm());
            }
            assert!(worst < 1e-6, "t = {t}: gaussian evolution error {worst:.3e}");
        }
    }

    #[test]
    fn gaussian_central_value_oracle() {
        // |S_{1/2} f(0)| = |1 - i|^(-1/2) = 2^(-1/4) for the unit gaussian.
        let spec = GridSpec::<f64>::new(1, 40.0, 4096).unwrap();
        let f = GridFunction::from_fn(spec, |x| cx((-x[0] * x[0] / 2.0).exp(), 0.0));
        let spectrum = to_spectrum(&f);
        let params = PropagatorParams::new(2.0, 0.5).unwrap();
        let evolved = propagate(&spectrum, &params).unwrap();
        let center = evolved.values()[spec.samples() / 2].norm();
        let exact = 0.8408964152537145f64;
        assert!(
            (center - exact).abs() < 1e-10,
            "central value {center:.15} vs 2^(-1/4) = {exact:.15}"
        );
    }

    #[test]
    fn evolution_is_a_group_in_time() {
        let spec = GridSpec::<f64>::new(1, 20.0, 256).unwrap();
        let spectrum = random_band_limited(spec, 10.0, 3);
        for a in [1.0, 2.0] {
            let one_step = propagate(
                &spectrum,
                &PropagatorParams::new(a, 0.7).unwrap(),
            )
            .unwrap();
            let two_step = propagate(
                &to_spectrum(&propagate(&spectrum, &PropagatorParams::new(a, 0.3).unwrap()).unwrap()),
                &PropagatorParams::new(a, 0.4).unwrap(),
            )
            .unwrap();
            let mut worst = 0.0f64;
            for (u, v) in one_step.values().iter().zip(two_step.values()) {
                worst = worst.max((u - v).norm());
            }
            assert!(worst < 1e-11, "a = {a}: group law gap {worst:.3e}");
        }
    }

    #[test]
    fn evolution_is_unitary_for_each_exponent() {
        let spec = GridSpec::<f64>::new(1, 20.0, 128).unwrap();
        let spectrum = random_band_limited(spec, 8.0, 5);
        let before = l2_norm_spectral(&spectrum);
        for a in [0.5, 1.0, 2.0, 3.0] {
            let params = PropagatorParams::new(a, 0.8)
                .unwrap()
                .with_shift(vec![0.37])
                .unwrap();
            let after = l2_norm(&propagate(&spectrum, &params).unwrap());
            assert!(
                (after - before).abs() < 1e-12 * before,
                "a = {a}: L2 norm drifted from {before:.15} to {after:.15}"
            );
        }
    }

    #[test]
    fn zero_mode_is_fixed() {
        // A pure zero-frequency spectrum inverts to the constant 1 and must be
        // fixed by every evolution, shifts included.
        let spec = GridSpec::<f64>::new(1, 10.0, 32).unwrap();
        let mut coefficients = vec![cx(0.0, 0.0); spec.point_count()];
        coefficients[spec.freq_flat_index(&[0]).unwrap()] = cx(10.0, 0.0);
        let spectrum = SpectralFunction::new(spec, coefficients).unwrap();
        let params = PropagatorParams::new(0.5, 3.0)
            .unwrap()
            .with_shift(vec![1.234])
            .unwrap();
        let evolved = propagate(&spectrum, &params).unwrap();
        for v in evolved.values() {
            assert!((v - cx(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn lattice_shift_permutes_samples() {
        // A shift by 5h at t = 0 is exactly a cyclic index shift on the torus.
        let spec = GridSpec::<f64>::new(1, 20.0, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = GridFunction::new(
            spec,
            (0..64).map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        )
        .unwrap();
        let spectrum = to_spectrum(&f);
        let params = PropagatorParams::new(2.0, 0.0)
            .unwrap()
            .with_shift(vec![5.0 * spec.spacing()])
            .unwrap();
        let shifted = propagate(&spectrum, &params).unwrap();
        let n = spec.samples();
        let mut worst = 0.0f64;
        for j in 0..n {
            worst = worst.max((shifted.values()[j] - f.values()[(j + 5) % n]).norm());
        }
        assert!(worst < 1e-12, "lattice shift error {worst:.3e}");
    }

    #[test]
    fn sobolev_zero_is_scaled_l2() {
        // ||f||_{H_0} = (2 pi)^{n/2} ||f||_2 under the crate convention.
        for (dim, len, n, cut, seed) in [(1usize, 20.0, 64usize, 6.0, 21u64), (2, 10.0, 32, 4.0, 22)]
        {
            let spec = GridSpec::<f64>::new(dim, len, n).unwrap();
            let spectrum = random_band_limited(spec, cut, seed);
            let h0 = sobolev_norm(&spectrum, 0.0).unwrap();
            let scaled =
                (2.0 * std::f64::consts::PI).powf(dim as f64 / 2.0) * l2_norm(&from_spectrum(&spectrum));
            assert!(
                (h0 - scaled).abs() < 1e-10 * scaled,
                "{dim}-d: H_0 = {h0:.15} vs scaled L2 = {scaled:.15}"
            );
        }
    }

    #[test]
    fn sobolev_norm_of_spectral_indicator() {
        // F = 1 on [-1, 1]: ||f||_{H_1}^2 = INT_{-1}^{1} (1 + xi^2) d xi = 8/3,
        // and ||f||_{H_0}^2 = 2.  The grid length puts the jump at a lattice
        // midpoint, so the quadrature error is the midpoint-rule error.
        let spec = GridSpec::<f64>::new(1, 2.0 * std::f64::consts::PI * 650.5, 4096).unwrap();
        let spectrum = SpectralFunction::from_fn(spec, |xi| {
            if xi[0].abs() <= 1.0 {
                cx(1.0, 0.0)
            } else {
                cx(0.0, 0.0)
            }
        });
        let h1 = sobolev_norm(&spectrum, 1.0).unwrap();
        let h0 = sobolev_norm(&spectrum, 0.0).unwrap();
        assert!(
            (h1 - 1.632993161855452).abs() < 1e-6,
            "H_1 norm {h1:.15} vs (8/3)^(1/2)"
        );
        assert!(
            (h0 - 2.0f64.sqrt()).abs() < 1e-6,
            "H_0 norm {h0:.15} vs 2^(1/2)"
        );
        assert!(sobolev_norm(&spectrum, f64::NAN).is_err());
    }

    #[test]
    fn dyadic_split_reconstructs_exactly() {
        let spec = GridSpec::<f64>::new(2, 10.0, 32).unwrap();
        let spectrum = random_band_limited(spec, 9.0, 31);
        let split = dyadic_split(&spectrum);
        assert_eq!(
            split.reconstruct().coefficients(),
            spectrum.coefficients(),
            "disjoint shells must sum back bit for bit"
        );
    }

    #[test]
    fn dyadic_shells_partition_frequencies() {
        let spec = GridSpec::<f64>::new(1, 20.0, 128).unwrap();
        let spectrum = random_band_limited(spec, 20.0, 33);
        let split = dyadic_split(&spectrum);
        for (k, piece) in split.pieces().iter().enumerate() {
            let lower = if k == 0 { -1.0 } else { 4.0f64.powi(k as i32 - 1) };
            let upper = 4.0f64.powi(k as i32);
            for (idx, z) in piece.coefficients().iter().enumerate() {
                if z.norm_sqr() > 0.0 {
                    let q = spec.freq_norm_sq(idx);
                    assert!(
                        q > lower && q <= upper,
                        "piece {k} holds |xi|^2 = {q:.6} outside (4^{}, 4^{k}]",
                        k as i32 - 1
                    );
                }
            }
        }
        // Disjoint supports make the Sobolev energies add exactly.
        let s = 0.75;
        let whole = sobolev_norm(&spectrum, s).unwrap().powi(2);
        let parts: f64 = split
            .pieces()
            .iter()
            .map(|p| sobolev_norm(p, s).unwrap().powi(2))
            .sum();
        assert!(
            (whole - parts).abs() < 1e-12 * whole,
            "H_s energy of pieces {parts:.15} vs whole {whole:.15}"
        );
    }

    #[test]
    fn dyadic_shell_indices_on_integer_lattice() {
        // L = 2 pi puts frequencies on the integers; place unit coefficients at
        // xi = 0, 1, 2, 3, 5 and read off their shells: 0, 0, 1, 2, 3.
        let spec = GridSpec::<f64>::new(1, 2.0 * std::f64::consts::PI, 64).unwrap();
        let mut coefficients = vec![cx(0.0, 0.0); spec.point_count()];
        for k in [0i64, 1, 2, 3, 5] {
            coefficients[spec.freq_flat_index(&[k]).unwrap()] = cx(1.0, 0.0);
        }
        let spectrum = SpectralFunction::new(spec, coefficients).unwrap();
        let split = dyadic_split(&spectrum);
        assert_eq!(split.count(), 6, "corner frequency 32 = 2^5 gives shells 0..=5");
        let nonzero = |k: usize| {
            split.pieces()[k]
                .coefficients()
                .iter()
                .filter(|z| z.norm_sqr() > 0.0)
                .count()
        };
        assert_eq!(nonzero(0), 2, "xi = 0 and xi = 1 share shell 0");
        assert_eq!(nonzero(1), 1, "xi = 2 sits in shell 1");
        assert_eq!(nonzero(2), 1, "xi = 3 sits in shell 2");
        assert_eq!(nonzero(3), 1, "xi = 5 sits in shell 3");
        assert_eq!(nonzero(4) + nonzero(5), 0);
    }

    #[test]
    fn band_limit_truncates_and_is_idempotent() {
        let spec = GridSpec::<f64>::new(1, 2.0 * std::f64::consts::PI, 64).unwrap();
        let ones = SpectralFunction::from_fn(spec, |_| cx(1.0, 0.0));
        let cut = band_limit(&ones, 5.0).unwrap();
        let kept = cut.coefficients().iter().filter(|z| z.norm_sqr() > 0.0).count();
        assert_eq!(kept, 11, "integer frequencies -5..=5 survive");
        assert!(cut.support_radius().unwrap() <= 5.0);
        assert_eq!(
            band_limit(&cut, 5.0).unwrap().coefficients(),
            cut.coefficients(),
            "band limiting is idempotent"
        );
        assert!(band_limit(&ones, 0.0).is_err());
        assert!(band_limit(&ones, -1.0).is_err());
        assert!(band_limit(&ones, spec.nyquist()).is_ok());
        assert!(band_limit(&ones, spec.nyquist() + 0.1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evolution_preserves_l2(
            seed in 0u64..1000,
            a in 0.2f64..3.5,
            t in -2.0f64..2.0,
        ) {
            let spec = GridSpec::<f64>::new(1, 8.0, 16).unwrap();
            let spectrum = random_band_limited(spec, 6.0, seed);
            let before = l2_norm_spectral(&spectrum);
            let after = l2_norm(
                &propagate(&spectrum, &PropagatorParams::new(a, t).unwrap()).unwrap(),
            );
            prop_assert!((after - before).abs() <= 1e-12 * before.max(1.0));
        }

        #[test]
        fn sobolev_norm_is_monotone_in_s(
            seed in 0u64..1000,
            s_low in -2.0f64..2.0,
            gap in 0.0f64..2.0,
        ) {
            let spec = GridSpec::<f64>::new(1, 8.0, 16).unwrap();
            let spectrum = random_band_limited(spec, 6.0, seed);
            let lo = sobolev_norm(&spectrum, s_low).unwrap();
            let hi = sobolev_norm(&spectrum, s_low + gap).unwrap();
            prop_assert!(lo <= hi * (1.0 + 1e-13), "weights grow with s on 1 + |xi|^2 >= 1");
        }

        #[test]
        fn dyadic_split_never_loses_mass(seed in 0u64..1000) {
            let spec = GridSpec::<f64>::new(1, 8.0, 16).unwrap();
            let spectrum = random_band_limited(spec, 6.0, seed);
            let rebuilt = dyadic_split(&spectrum).reconstruct();
            prop_assert_eq!(rebuilt.coefficients(), spectrum.coefficients());
        }
    }
}
