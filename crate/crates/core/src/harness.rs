//! Experiment harness: named verifications wiring grids, propagators, sets,
//! coverings, and maximal fields together, plus plain-text configuration and
//! machine-readable reports.
//!
//! Inequality checks against explicit-constant bounds use zero slack: finite
//! sampling only under-estimates suprema, so a measured left-hand side above
//! the bound is a genuine violation.  Comparability checks without explicit
//! constants report ratios and leave thresholds to the caller.  All reports
//! serialize to JSON and headered CSV with 17 significant digits; output
//! files are written atomically.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::covering::{
    cover_aniso, covering_profile, rhs_sum, CoveringProfile, SumMode, SumReport,
};
use crate::grid::{from_spectrum, l2_norm, GridFunction, SpectralFunction};
use crate::ksum;
use crate::maximal::{
    maximal_field, maximal_ratio, sup_samples, MaximalField, RatioReport, MAX_SUP_SAMPLES,
};
use crate::propagator::{propagate, sobolev_norm, PropagatorParams};
use crate::settools::{estimate_stream_len, sample_set, SetSpec, StreamPolicy, SAMPLE_BUDGET};
use crate::{Error, Result, Scalar};

/// Version stamp carried by every serialized report.
pub const REPORT_SCHEMA: u32 = 1;

/// Hard ceiling on propagations for cover verification sampling.
const COVER_SAMPLE_CAP: usize = 8 * MAX_SUP_SAMPLES;

// ─── Configuration ───────────────────────────────────────────────────────────

pub mod config {
    //! Plain-text experiment configuration: `key = value` entries grouped in
    //! `[grid]`, `[function]`, `[set]`, and `[params]` sections.  Every key
    //! has a default; unknown keys are errors.

    use serde::{Deserialize, Serialize};

    use crate::grid::{to_spectrum, GridFunction, GridSpec, SpectralFunction};
    use crate::settools::{
        load_curve_file, load_sequence_file, CurveSpec, PointSet, SequenceSpec, SetSpec,
    };
    use crate::{Cplx, Error, Real, Result};

    /// One experiment: which verification to run and on what.
    #[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct ExperimentConfig {
        /// Experiment name for `run`: one of the CLI subcommands
        /// (`cover`, `rhs-sum`, `propagate`, `maximal`, `verify-cube`,
        /// `verify-cover`, `verify-thmA`, `verify-thm1`, `scan-s`, `converge`).
        pub experiment: String,
        /// Stem for output files; empty means derive from the experiment name.
        pub output: String,
        pub grid: GridConfig,
        pub function: FunctionConfig,
        pub set: SetConfig,
        pub params: ParamsConfig,
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct GridConfig {
        pub dimension: usize,
        pub length: Real,
        pub samples: usize,
    }

    impl Default for GridConfig {
        fn default() -> Self {
            GridConfig {
                dimension: 1,
                length: 40.0,
                samples: 4096,
            }
        }
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct FunctionConfig {
        /// `gaussian`, `modulated-gaussian`, `bandlimited`, or `spectrum-file`.
        pub family: String,
        /// Modulation frequency for `modulated-gaussian`.
        pub lambda: Real,
        /// Spectral radius for the `bandlimited` indicator family.
        pub band_limit: Real,
        /// Coefficient file for `spectrum-file`.
        pub path: String,
    }

    impl Default for FunctionConfig {
        fn default() -> Self {
            FunctionConfig {
                family: "gaussian".into(),
                lambda: 4.0,
                band_limit: 8.0,
                path: String::new(),
            }
        }
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct SetConfig {
        /// `time-interval`, `time-sequence`, `curve-graph`, `curve-sequence`,
        /// `box`, or `points`.
        pub kind: String,
        /// Right endpoint for `time-interval`.
        pub end: Real,
        pub sequence: SequenceConfig,
        pub curve: CurveConfig,
        /// Space-time corner `(y_1..y_n, t_0)` for `box`.
        pub corner: Vec<Real>,
        /// Spatial side for `box`; the time side is `side^exponent`.
        pub side: Real,
        pub exponent: Real,
        /// Inline rows `(y_1..y_n, t)` for `points`.
        pub points: Vec<Vec<Real>>,
    }

    impl Default for SetConfig {
        fn default() -> Self {
            SetConfig {
                kind: "time-interval".into(),
                end: 1.0,
                sequence: SequenceConfig::default(),
                curve: CurveConfig::default(),
                corner: vec![0.0, 0.0],
                side: 1.0,
                exponent: 2.0,
                points: Vec::new(),
            }
        }
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct SequenceConfig {
        /// `geometric`, `power-decay`, or `explicit` (terms from `path`).
        pub kind: String,
        pub ratio: Real,
        pub delta: Real,
        pub count: usize,
        /// Summability exponent tag; 0 means untagged.
        pub gamma: Real,
        pub path: String,
    }

    impl Default for SequenceConfig {
        fn default() -> Self {
            SequenceConfig {
                kind: "geometric".into(),
                ratio: 0.5,
                delta: 1.0,
                count: 100,
                gamma: 0.0,
                path: String::new(),
            }
        }
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct CurveConfig {
        /// `power`, `weierstrass`, `constant`, or `samples` (from `path`).
        pub kind: String,
        pub beta: Real,
        pub amplitude: Real,
        /// Frequency levels for `weierstrass`.
        pub levels: usize,
        pub direction: Vec<Real>,
        pub path: String,
    }

    impl Default for CurveConfig {
        fn default() -> Self {
            CurveConfig {
                kind: "power".into(),
                beta: 0.5,
                amplitude: 1.0,
                levels: 20,
                direction: vec![1.0],
                path: String::new(),
            }
        }
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    #[serde(deny_unknown_fields, default)]
    pub struct ParamsConfig {
        pub a: Real,
        pub s: Real,
        /// Evolution time for the `propagate` experiment.
        pub t: Real,
        pub m_min: u32,
        pub m_max: u32,
        /// Cube scale for `verify-cube` and `verify-cover`.
        pub r: Real,
        /// Declared spectral radius `A` for the band-limited checks.
        pub band_limit: Real,
        /// Spatial cube corner for `verify-cube`.
        pub cube_corner: Vec<Real>,
        /// Cube time corner for `verify-cube`.
        pub cube_time: Real,
        /// Parameter pitch for the `maximal` experiment sampling.
        pub resolution: Real,
        pub s_min: Real,
        pub s_max: Real,
        pub s_steps: usize,
    }

    impl Default for ParamsConfig {
        fn default() -> Self {
            ParamsConfig {
                a: 2.0,
                s: 1.1,
                t: 0.5,
                m_min: 0,
                m_max: 20,
                r: 0.125,
                band_limit: 8.0,
                cube_corner: vec![0.0],
                cube_time: 0.0,
                resolution: 0.01,
                s_min: 0.5,
                s_max: 1.5,
                s_steps: 21,
            }
        }
    }

    impl ExperimentConfig {
        /// Parse a configuration document.
        pub fn parse(text: &str) -> Result<Self> {
            toml::from_str(text).map_err(|e| Error::Config(format!("bad config: {e}")))
        }

        /// Read and parse a configuration file.
        pub fn load(path: &std::path::Path) -> Result<Self> {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            Self::parse(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        }

        pub fn grid_spec(&self) -> Result<GridSpec<Real>> {
            GridSpec::new(self.grid.dimension, self.grid.length, self.grid.samples)
        }

        /// Build the configured initial datum as a spectrum.
        pub fn spectrum(&self, spec: &GridSpec<Real>) -> Result<SpectralFunction<Real>> {
            let f = &self.function;
            match f.family.as_str() {
                "gaussian" => {
                    let g = GridFunction::from_fn(*spec, |x: &[Real]| {
                        let q: Real = x.iter().map(|v| v * v).sum();
                        Cplx::new((-q / 2.0).exp(), 0.0)
                    });
                    Ok(to_spectrum(&g))
                }
                "modulated-gaussian" => {
                    let lambda = f.lambda;
                    if !lambda.is_finite() {
                        return Err(Error::Config("lambda must be finite".into()));
                    }
                    let g = GridFunction::from_fn(*spec, |x: &[Real]| {
                        let q: Real = x.iter().map(|v| v * v).sum();
                        Cplx::from_polar((-q / 2.0).exp(), lambda * x[0])
                    });
                    Ok(to_spectrum(&g))
                }
                "bandlimited" => {
                    let radius = f.band_limit;
                    if !(radius > 0.0) || radius > spec.nyquist() {
                        return Err(Error::Config(format!(
                            "band limit must lie in (0, {:.3}], got {radius}",
                            spec.nyquist()
                        )));
                    }
                    let r2 = radius * radius;
                    Ok(SpectralFunction::from_fn(*spec, |xi: &[Real]| {
                        let q: Real = xi.iter().map(|v| v * v).sum();
                        if q <= r2 {
                            Cplx::new(1.0, 0.0)
                        } else {
                            Cplx::new(0.0, 0.0)
                        }
                    }))
                }
                "spectrum-file" => load_spectrum_file(spec, &f.path),
                other => Err(Error::Config(format!(
                    "unknown function family {other:?}; expected gaussian, \
                     modulated-gaussian, bandlimited, or spectrum-file"
                ))),
            }
        }

        fn sequence_spec(&self) -> Result<SequenceSpec<Real>> {
            let sq = &self.set.sequence;
            let seq = match sq.kind.as_str() {
                "geometric" => SequenceSpec::geometric(sq.ratio, sq.count)?,
                "power-decay" => SequenceSpec::power_decay(sq.delta, sq.count)?,
                "explicit" => load_sequence_file(std::path::Path::new(&sq.path))?,
                other => {
                    return Err(Error::Config(format!(
                        "unknown sequence kind {other:?}; expected geometric, \
                         power-decay, or explicit"
                    )))
                }
            };
            if sq.gamma > 0.0 {
                seq.with_gamma(sq.gamma)
            } else {
                Ok(seq)
            }
        }

        fn curve_spec(&self) -> Result<CurveSpec<Real>> {
            let cv = &self.set.curve;
            match cv.kind.as_str() {
                "power" => CurveSpec::power(cv.beta, cv.amplitude, cv.direction.clone()),
                "weierstrass" => {
                    CurveSpec::weierstrass(cv.beta, cv.amplitude, cv.levels, cv.direction.clone())
                }
                "constant" => CurveSpec::constant(cv.amplitude, cv.direction.clone()),
                "samples" => load_curve_file(std::path::Path::new(&cv.path), cv.beta),
                other => Err(Error::Config(format!(
                    "unknown curve kind {other:?}; expected power, weierstrass, \
                     constant, or samples"
                ))),
            }
        }

        /// Build the configured space-time set.
        pub fn set_spec(&self) -> Result<SetSpec<Real>> {
            let spec = match self.set.kind.as_str() {
                "time-interval" => SetSpec::TimeInterval { end: self.set.end },
                "time-sequence" => SetSpec::TimeSequence(self.sequence_spec()?),
                "curve-graph" => SetSpec::CurveGraph(self.curve_spec()?),
                "curve-sequence" => {
                    SetSpec::CurveSequence(self.curve_spec()?, self.sequence_spec()?)
                }
                "box" => SetSpec::Box {
                    corner: self.set.corner.clone(),
                    side: self.set.side,
                    exponent: self.set.exponent,
                },
                "points" => {
                    let rows = &self.set.points;
                    if rows.is_empty() {
                        return Err(Error::Config("points set needs at least one row".into()));
                    }
                    let mut pts = Vec::with_capacity(rows.len());
                    for (i, row) in rows.iter().enumerate() {
                        if row.len() < 2 {
                            return Err(Error::Config(format!(
                                "points row {i} needs at least (y, t)"
                            )));
                        }
                        let (y, t) = row.split_at(row.len() - 1);
                        pts.push((y.to_vec(), t[0]));
                    }
                    SetSpec::Points(PointSet::new(pts)?)
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown set kind {other:?}; expected time-interval, \
                         time-sequence, curve-graph, curve-sequence, box, or points"
                    )))
                }
            };
            spec.validate()?;
            Ok(spec)
        }

        /// The regularity grid `s_min..s_max` with `s_steps` points.
        pub fn s_grid(&self) -> Result<Vec<Real>> {
            let p = &self.params;
            if !(p.s_min > 0.0) || !(p.s_max >= p.s_min) || p.s_steps < 2 {
                return Err(Error::Config(format!(
                    "need 0 < s_min <= s_max and s_steps >= 2, got [{}, {}] x {}",
                    p.s_min, p.s_max, p.s_steps
                )));
            }
            let step = (p.s_max - p.s_min) / (p.s_steps - 1) as Real;
            Ok((0..p.s_steps).map(|i| p.s_min + step * i as Real).collect())
        }
    }

    /// Read complex coefficients, one `re im` pair per line; `#` comments and
    /// blank lines are skipped.  The file must match the grid point count.
    fn load_spectrum_file(
        spec: &GridSpec<Real>,
        path: &str,
    ) -> Result<SpectralFunction<Real>> {
        if path.is_empty() {
            return Err(Error::Config(
                "function family spectrum-file needs function.path".into(),
            ));
        }
        let text = std::fs::read_to_string(path)?;
        let mut values = Vec::with_capacity(spec.point_count());
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (re, im) = match (parts.next(), parts.next(), parts.next()) {
                (Some(re), Some(im), None) => (re, im),
                _ => {
                    return Err(Error::Config(format!(
                        "{path}:{}: expected two columns `re im`",
                        lineno + 1
                    )))
                }
            };
            let parse = |token: &str| -> Result<Real> {
                token.parse().map_err(|_| {
                    Error::Config(format!(
                        "{path}:{}: bad number {token:?}",
                        lineno + 1
                    ))
                })
            };
            values.push(Cplx::new(parse(re)?, parse(im)?));
        }
        if values.len() != spec.point_count() {
            return Err(Error::Config(format!(
                "{path}: {} coefficients for a grid of {}",
                values.len(),
                spec.point_count()
            )));
        }
        SpectralFunction::new(*spec, values)
    }
}

// ─── Reports ─────────────────────────────────────────────────────────────────

/// One named inequality check: `pass` iff `measured <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub schema: u32,
    pub name: String,
    /// Echo of the resolved inputs, formatted to 17 significant digits.
    pub inputs: Vec<(String, String)>,
    pub measured: T,
    pub bound: T,
    pub pass: bool,
    #[serde(skip)]
    pub runtime: Duration,
}

/// One regularity value of a [`ScanReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow<T> {
    pub s: T,
    /// Truncated covering series.
    pub total: T,
    /// Whether the series met the 5-term convergence rule.
    pub converged: bool,
    /// Fitted `log2` growth exponent of the terms; negative means decaying.
    pub growth_exponent: T,
    /// `lhs / (sqrt(total) * ||f||_{H_s})`, reported when the terms decay.
    pub ratio: Option<T>,
}

/// Covering series behaviour across a regularity grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport<T> {
    /// Time exponent used for the counts (1 for time-only sets, else `a`).
    pub b: T,
    pub mode: SumMode<T>,
    pub m_max: u32,
    /// `||sup field||_2`, shared by every row.
    pub lhs: T,
    pub sample_count: usize,
    pub rows: Vec<ScanRow<T>>,
    /// Interpolated regularity where the fitted exponent changes sign.
    pub boundary: Option<T>,
}

/// One sequence term of a [`DecayTable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRow<T> {
    pub k: usize,
    pub t: T,
    /// `|Gamma(t_k)|`, zero without a curve.
    pub shift: T,
    /// `max_x |S_{t_k} f(x + Gamma(t_k)) - f(x)|`.
    pub d: T,
    /// `d / (t + shift)`.
    pub ratio: T,
}

/// Decay of the evolved field back to the datum along a time sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayTable<T> {
    pub a: T,
    /// Quadrature constant `(2 pi)^-n SUM |xi|^a |fhat|`, the time-shift rate.
    pub c_time: T,
    /// Quadrature constant `(2 pi)^-n SUM |xi| |fhat|`, the space-shift rate.
    pub c_space: T,
    /// `d_1 / (t_1 + shift_1)`, the constant fitted at the first term.
    pub c_fitted: T,
    pub rows: Vec<DecayRow<T>>,
    /// `d_k <= c_time t_k + c_space shift_k` for every row (rigorous rate).
    pub oracle_bounded: bool,
    /// `d_k <= c_fitted (t_k + shift_k)` for every row.
    pub fitted_bounded: bool,
    /// `d_k` strictly decreasing from the third term on.
    pub tail_decreasing: bool,
}

fn sig17<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x.as_f64())
}

// ─── Band-limited local bounds ───────────────────────────────────────────────

/// Common band-limit admissibility checks; returns `r A`.
fn check_banded<T: Scalar>(spectrum: &SpectralFunction<T>, r: T, band: T) -> Result<T> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::arg(format!(
            "cube scale must be positive, got {:e}",
            r.as_f64()
        )));
    }
    if !(band >= T::one()) {
        return Err(Error::arg(format!(
            "spectral radius must be at least 1, got {:e}",
            band.as_f64()
        )));
    }
    if band > spectrum.spec().nyquist() {
        return Err(Error::arg(format!(
            "spectral radius {:e} exceeds the grid Nyquist frequency {:e}",
            band.as_f64(),
            spectrum.spec().nyquist().as_f64()
        )));
    }
    let slack = T::one() + T::of(1e-12);
    let support = spectrum
        .support_radius()
        .ok_or_else(|| Error::arg("the zero spectrum has no band"))?;
    if support > band * slack {
        return Err(Error::arg(format!(
            "spectrum reaches |xi| = {:e}, outside the declared radius {:e}",
            support.as_f64(),
            band.as_f64()
        )));
    }
    let ra = r * band;
    if ra > slack {
        return Err(Error::arg(format!(
            "need r A <= 1, got {:e}",
            ra.as_f64()
        )));
    }
    Ok(ra)
}

/// Check `||sup over one a-cube of side r|S_t f(x+y)|||_2` against the
/// product bound `(1 + rA)^n (1 + (rA)^a) ||f||_2` for data banded to `A`.
pub fn verify_cube<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    a: T,
    r: T,
    corner: &[T],
    t0: T,
    band: T,
) -> Result<VerificationReport<T>> {
    let start = Instant::now();
    PropagatorParams::new(a, t0)?;
    let dim = spectrum.spec().dimension();
    if corner.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "cube corner has {} components on a {dim}-dimensional grid",
            corner.len()
        )));
    }
    let ra = check_banded(spectrum, r, band)?;
    let mut box_corner = corner.to_vec();
    box_corner.push(t0);
    let cube = SetSpec::Box {
        corner: box_corner,
        side: r,
        exponent: a,
    };
    let mut resolution = r.min(r.powf(a)) / T::of(16.0);
    loop {
        let policy = StreamPolicy {
            parameter_step: resolution,
            sequence_cutoff: resolution,
            sequence_head: 10,
            budget: SAMPLE_BUDGET,
        };
        if estimate_stream_len(&cube, &policy) <= MAX_SUP_SAMPLES {
            break;
        }
        resolution = resolution * T::of(2.0);
    }
    let samples = sample_set(&cube, resolution)?;
    let field = maximal_field(spectrum, &samples, a)?;
    let measured = field.l2_norm();
    let norm = l2_norm(&from_spectrum(spectrum));
    let one = T::one();
    let bound = (one + ra).powi(dim as i32) * (one + ra.powf(a)) * norm;
    Ok(VerificationReport {
        schema: REPORT_SCHEMA,
        name: "verify-cube".into(),
        inputs: vec![
            ("dimension".into(), format!("{dim}")),
            ("a".into(), sig17(a)),
            ("r".into(), sig17(r)),
            ("band_limit".into(), sig17(band)),
            ("rA".into(), sig17(ra)),
            ("t0".into(), sig17(t0)),
            ("samples".into(), format!("{}", samples.len())),
            ("f_l2".into(), sig17(norm)),
        ],
        measured,
        bound,
        pass: measured <= bound,
        runtime: start.elapsed(),
    })
}

/// Check `INT sup over the sampled set |S_t f(x+y)|^2 dx` against
/// `2^(2n+2) N ||f||_2^2`, where the `N` cells of the scale-`r` lattice
/// cover exactly the points that fed the supremum.
pub fn verify_cover_bound<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    set: &SetSpec<T>,
    a: T,
    r: T,
    band: T,
) -> Result<VerificationReport<T>> {
    let start = Instant::now();
    PropagatorParams::new(a, T::zero())?;
    set.validate()?;
    let ra = check_banded(spectrum, r, band)?;
    let rb = r.powf(a);
    // parameter pitch fine enough for the lattice density precondition
    let base = match set.curve() {
        Some(curve) if curve.holder_constant() > T::zero() => {
            rb.min((r / curve.holder_constant()).powf(T::one() / curve.beta()))
        }
        _ => r.min(rb),
    };
    let resolution = base / T::of(2.0);
    let policy = StreamPolicy {
        parameter_step: resolution,
        sequence_cutoff: resolution,
        sequence_head: 10,
        budget: SAMPLE_BUDGET,
    };
    let estimate = estimate_stream_len(set, &policy);
    if estimate > COVER_SAMPLE_CAP {
        return Err(Error::arg(format!(
            "cover verification at scale {:e} needs about {estimate} propagations \
             (cap {COVER_SAMPLE_CAP}); use a coarser scale",
            r.as_f64()
        )));
    }
    let samples = sample_set(set, resolution)?;
    let n_cover = cover_aniso(&samples, a, r)?;
    let field = maximal_field(spectrum, &samples, a)?;
    let measured = field.l2_norm().powi(2);
    let norm = l2_norm(&from_spectrum(spectrum));
    let dim = spectrum.spec().dimension();
    let bound = T::of(2.0).powi(2 * dim as i32 + 2) * T::of_usize(n_cover) * norm * norm;
    Ok(VerificationReport {
        schema: REPORT_SCHEMA,
        name: "verify-cover".into(),
        inputs: vec![
            ("dimension".into(), format!("{dim}")),
            ("a".into(), sig17(a)),
            ("r".into(), sig17(r)),
            ("band_limit".into(), sig17(band)),
            ("rA".into(), sig17(ra)),
            ("cubes".into(), format!("{n_cover}")),
            ("samples".into(), format!("{}", samples.len())),
            ("f_l2".into(), sig17(norm)),
        ],
        measured,
        bound,
        pass: measured <= bound,
        runtime: start.elapsed(),
    })
}

// ─── Global ratio verifications ──────────────────────────────────────────────

/// Ratio report with time-only covering numbers and weights `2^(-2ms/a)`.
///
/// The set must be time-only; space-time sets take the `thm1` route.
#[allow(non_snake_case)]
pub fn verify_thmA<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    set: &SetSpec<T>,
    a: T,
    s: T,
    m_max: u32,
) -> Result<RatioReport<T>> {
    if !set.is_time_only() {
        return Err(Error::UnsupportedSet(
            "the thmA weighting applies to time-only sets; use verify-thm1 \
             for space-time sets"
                .into(),
        ));
    }
    let one = T::one();
    let profile = covering_profile(set, one, 0..=m_max)?;
    let sum = rhs_sum(&profile, s, SumMode::ThmA { a })?;
    let sobolev = sobolev_norm(spectrum, s)?;
    let samples = sup_samples(set, one, profile.effective_max())?;
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

/// Full space-time ratio report at the natural exponent `b = a`.
pub fn verify_thm1<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    set: &SetSpec<T>,
    a: T,
    s: T,
    m_max: u32,
) -> Result<RatioReport<T>> {
    maximal_ratio(spectrum, set, a, s, m_max)
}

// ─── Regularity scans ────────────────────────────────────────────────────────

/// Sweep the covering series over a regularity grid and locate the
/// convergence boundary as the sign change of the fitted term exponent.
///
/// Time-only sets are counted at `b = 1` with `2^(-2ms/a)` weights; all
/// others at `b = a` with `2^(-2ms)` weights.
pub fn scan_s<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    set: &SetSpec<T>,
    a: T,
    s_values: &[T],
    m_max: u32,
) -> Result<ScanReport<T>> {
    if s_values.is_empty() {
        return Err(Error::arg("regularity grid is empty"));
    }
    let four = T::of(4.0);
    for pair in s_values.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::arg("regularity grid must increase strictly"));
        }
    }
    if !(s_values[0] > T::zero()) || !(s_values[s_values.len() - 1] <= four) {
        return Err(Error::arg("regularity grid must lie in (0, 4]"));
    }
    let (b, mode) = if set.is_time_only() {
        (T::one(), SumMode::ThmA { a })
    } else {
        (a, SumMode::Thm1)
    };
    let profile = covering_profile(set, b, 0..=m_max)?;
    let samples = sup_samples(set, b, profile.effective_max())?;
    let field = maximal_field(spectrum, &samples, a)?;
    let lhs = field.l2_norm();
    let mut rows = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let sum = rhs_sum(&profile, s, mode)?;
        let growth = sum.growth_exponent().ok_or_else(|| {
            Error::arg("the scan needs at least three feasible scales to fit exponents")
        })?;
        let ratio = if growth < T::zero() {
            Some(lhs / (sum.total().sqrt() * sobolev_norm(spectrum, s)?))
        } else {
            None
        };
        rows.push(ScanRow {
            s,
            total: sum.total(),
            converged: sum.converged(),
            growth_exponent: growth,
            ratio,
        });
    }
    let boundary = rows.windows(2).find_map(|w| {
        let (lo, hi) = (w[0], w[1]);
        if lo.growth_exponent > T::zero() && hi.growth_exponent <= T::zero() {
            let span = lo.growth_exponent - hi.growth_exponent;
            Some(lo.s + (hi.s - lo.s) * lo.growth_exponent / span)
        } else {
            None
        }
    });
    Ok(ScanReport {
        b,
        mode,
        m_max: profile.effective_max(),
        lhs,
        sample_count: samples.len(),
        rows,
        boundary,
    })
}

// ─── Convergence experiments ─────────────────────────────────────────────────

/// Most sequence terms worth propagating in one decay table.
const DECAY_TERM_CAP: usize = 64;

/// Track `max_x |S_{t_k} f(x + Gamma(t_k)) - f(x)|` down a time sequence.
///
/// The triangle-inequality rate `c_time t + c_space |Gamma(t)|` is exact for
/// the discrete transform, so `oracle_bounded` holds up to rounding whenever
/// the implementation is sound.
pub fn convergence_experiment<T: Scalar>(
    spectrum: &SpectralFunction<T>,
    set: &SetSpec<T>,
    a: T,
) -> Result<DecayTable<T>> {
    let (curve, seq) = match set {
        SetSpec::TimeSequence(seq) => (None, seq),
        SetSpec::CurveSequence(curve, seq) => (Some(curve), seq),
        _ => {
            return Err(Error::UnsupportedSet(
                "convergence experiments need a time or curve sequence".into(),
            ))
        }
    };
    PropagatorParams::new(a, T::zero())?;
    let spec = *spectrum.spec();
    if let Some(c) = curve {
        if c.spatial_dimension() != spec.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "curve lives in dimension {}, grid in {}",
                c.spatial_dimension(),
                spec.dimension()
            )));
        }
    }
    // quadrature rates (2 pi)^-n SUM w(xi) |fhat| dxi over the grid
    let dim = spec.dimension();
    let weight = spec.freq_step().powi(dim as i32)
        / (T::of(2.0) * T::PI()).powi(dim as i32);
    let coefficients = spectrum.coefficients();
    let c_time = ksum::sum((0..coefficients.len()).map(|idx| {
        let q = spec.freq_norm_sq(idx);
        let w = if q == T::zero() {
            T::zero()
        } else {
            q.powf(a / T::of(2.0))
        };
        w * coefficients[idx].norm()
    })) * weight;
    let c_space = ksum::sum(
        (0..coefficients.len())
            .map(|idx| spec.freq_norm_sq(idx).sqrt() * coefficients[idx].norm()),
    ) * weight;
    let base = from_spectrum(spectrum);
    let terms = seq.count().min(DECAY_TERM_CAP);
    let mut shift = vec![T::zero(); dim];
    let mut rows = Vec::with_capacity(terms);
    for k in 1..=terms {
        let t = seq.term(k);
        let shift_norm = match curve {
            Some(c) => {
                c.position(t, &mut shift);
                ksum::sum(shift.iter().map(|&v| v * v)).sqrt()
            }
            None => T::zero(),
        };
        let params = PropagatorParams::new(a, t)?.with_shift(if curve.is_some() {
            shift.clone()
        } else {
            Vec::new()
        })?;
        let evolved = propagate(spectrum, &params)?;
        let d = evolved
            .values()
            .iter()
            .zip(base.values())
            .map(|(u, f)| (u - f).norm())
            .fold(T::zero(), T::max);
        rows.push(DecayRow {
            k,
            t,
            shift: shift_norm,
            d,
            ratio: d / (t + shift_norm),
        });
    }
    let slack = T::one() + T::of(1e-9);
    let c_fitted = rows[0].d / (rows[0].t + rows[0].shift);
    let oracle_bounded = rows
        .iter()
        .all(|row| row.d <= (c_time * row.t + c_space * row.shift) * slack + T::of(1e-14));
    let fitted_bounded = rows
        .iter()
        .all(|row| row.d <= c_fitted * (row.t + row.shift) * slack);
    let tail_decreasing = rows
        .windows(2)
        .filter(|w| w[0].k >= 3)
        .all(|w| w[1].d < w[0].d);
    Ok(DecayTable {
        a,
        c_time,
        c_space,
        c_fitted,
        rows,
        oracle_bounded,
        fitted_bounded,
        tail_decreasing,
    })
}

// ─── Serialization ───────────────────────────────────────────────────────────

/// Pretty JSON with a trailing newline.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Write via a sibling temporary file and rename, so readers never observe
/// a half-written report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let mut tmp_name = path.as_os_str().to_os_string();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn method_str(method: crate::covering::CountMethod) -> &'static str {
    match method {
        crate::covering::CountMethod::Greedy => "greedy",
        crate::covering::CountMethod::Grid => "grid",
        crate::covering::CountMethod::Brute => "brute",
    }
}

/// CSV of a covering profile: `m,r,count,method`.
pub fn profile_csv<T: Scalar>(profile: &CoveringProfile<T>) -> String {
    let mut out = String::from("m,r,count,method\n");
    for e in profile.entries() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.m,
            sig17(e.r),
            e.count,
            method_str(e.method)
        );
    }
    out
}

/// CSV of a weighted covering series: `m,term,partial`.
pub fn sum_csv<T: Scalar>(report: &SumReport<T>) -> String {
    let mut out = String::from("m,term,partial\n");
    for e in report.entries() {
        let _ = writeln!(out, "{},{},{}", e.m, sig17(e.term), sig17(e.partial));
    }
    out
}

/// Single-row CSV of a ratio report.
pub fn ratio_csv<T: Scalar>(report: &RatioReport<T>) -> String {
    let mut out = String::from(
        "a,s,m_max,lhs,sobolev,covering_sum,rhs,ratio,sample_count,series_converged,holds\n",
    );
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        sig17(report.a),
        sig17(report.s),
        report.m_max,
        sig17(report.lhs),
        sig17(report.sobolev),
        sig17(report.covering_sum),
        sig17(report.rhs),
        sig17(report.ratio),
        report.sample_count,
        report.series_converged,
        report.holds
    );
    out
}

/// CSV of a regularity scan: `s,total,growth_exponent,converged,ratio`.
pub fn scan_csv<T: Scalar>(report: &ScanReport<T>) -> String {
    let mut out = String::from("s,total,growth_exponent,converged,ratio\n");
    for row in &report.rows {
        let ratio = row.ratio.map(sig17).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            sig17(row.s),
            sig17(row.total),
            sig17(row.growth_exponent),
            row.converged,
            ratio
        );
    }
    out
}

/// CSV of a decay table: `k,t,shift,d,ratio`.
pub fn decay_csv<T: Scalar>(table: &DecayTable<T>) -> String {
    let mut out = String::from("k,t,shift,d,ratio\n");
    for row in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.k,
            sig17(row.t),
            sig17(row.shift),
            sig17(row.d),
            sig17(row.ratio)
        );
    }
    out
}

/// Single-row CSV of a verification report.
pub fn verification_csv<T: Scalar>(report: &VerificationReport<T>) -> String {
    let mut out = String::from("name,measured,bound,pass\n");
    let _ = writeln!(
        out,
        "{},{},{},{}",
        report.name,
        sig17(report.measured),
        sig17(report.bound),
        report.pass
    );
    out
}

/// CSV dump of a complex grid field: `index,x..,re,im,abs`.
pub fn complex_field_csv<T: Scalar>(f: &GridFunction<T>) -> String {
    let spec = f.spec();
    let dim = spec.dimension();
    let mut out = String::from("index");
    for d in 0..dim {
        let _ = write!(out, ",x{d}");
    }
    out.push_str(",re,im,abs\n");
    let mut x = vec![T::zero(); dim];
    for (idx, z) in f.values().iter().enumerate() {
        spec.point(idx, &mut x);
        let _ = write!(out, "{idx}");
        for &c in &x {
            let _ = write!(out, ",{}", sig17(c));
        }
        let _ = writeln!(out, ",{},{},{}", sig17(z.re), sig17(z.im), sig17(z.norm()));
    }
    out
}

/// CSV dump of a maximal field: `index,x..,value`.
pub fn real_field_csv<T: Scalar>(field: &MaximalField<T>) -> String {
    let spec = field.spec();
    let dim = spec.dimension();
    let mut out = String::from("index");
    for d in 0..dim {
        let _ = write!(out, ",x{d}");
    }
    out.push_str(",value\n");
    let mut x = vec![T::zero(); dim];
    for (idx, v) in field.values().iter().enumerate() {
        spec.point(idx, &mut x);
        let _ = write!(out, "{idx}");
        for &c in &x {
            let _ = write!(out, ",{}", sig17(c));
        }
        let _ = writeln!(out, ",{}", sig17(*v));
    }
    out
}

/// Two-column plot data, one `abscissa value` pair per line.
pub fn two_column<T: Scalar>(pairs: impl IntoIterator<Item = (T, T)>) -> String {
    let mut out = String::new();
    for (x, y) in pairs {
        let _ = writeln!(out, "{} {}", sig17(x), sig17(y));
    }
    out
}
