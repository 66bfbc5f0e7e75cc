//! Space-time set descriptions and their exact finite samplings.
//!
//! Sets live in `R^n x R` as (shift, time) pairs.  Continuum variants (time
//! intervals, curve graphs, boxes) are sampled on parameter lattices whose
//! pitch is recorded alongside the points; discrete variants (sequences and
//! explicit point lists) are reproduced exactly.  Every emitted point belongs
//! to the underlying set by construction, so finite sampling can only
//! under-estimate suprema and covering counts, which is the safe direction
//! when checking upper bounds.
//!
//! Curves `Gamma(t) = gamma(t) e` act along a unit direction `e` and carry a
//! certified constant `C` with `|gamma(t1) - gamma(t2)| <= C |t1 - t2|^beta`
//! on `[0, 1]`.  Time sequences satisfy `1 >= t_1 > t_2 > ... > 0`; the
//! leading term may equal 1 so unit-time heads are representable.

use std::path::Path;

use crate::ksum::Kahan;
use crate::{Error, Result, Scalar};

/// Hard cap on points any single sampling pass may emit.
pub(crate) const SAMPLE_BUDGET: usize = 1 << 24;

// ─── Curves ──────────────────────────────────────────────────────────────────

/// Curve family tag; see [`CurveSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Power,
    Weierstrass,
    Constant,
    Samples,
}

#[derive(Debug, Clone, PartialEq)]
enum CurveForm<T> {
    Power,
    Weierstrass { terms: usize },
    Constant,
    Samples { values: Vec<T> },
}

/// Curve `Gamma(t) = gamma(t) e` on `[0, 1]` along a unit direction `e`.
///
/// Profiles: `power` is `c t^beta`; `weierstrass` is
/// `c SUM_{j=1..J} 2^(-beta j) cos(2^j t)`; `constant` is `c`; `samples`
/// interpolates a value list linearly over a uniform parameter lattice.
/// Construction certifies the Holder bound and stores its constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec<T> {
    form: CurveForm<T>,
    beta: T,
    amplitude: T,
    direction: Vec<T>,
    holder_constant: T,
}

fn unit_direction<T: Scalar>(direction: Vec<T>) -> Result<Vec<T>> {
    if direction.is_empty() {
        return Err(Error::arg("curve direction must have at least one component"));
    }
    if direction.iter().any(|v| !v.is_finite()) {
        return Err(Error::arg("curve direction has a non-finite component"));
    }
    let norm = direction
        .iter()
        .fold(T::zero(), |acc, &v| acc + v * v)
        .sqrt();
    if !(norm > T::zero()) {
        return Err(Error::arg("curve direction must be nonzero"));
    }
    Ok(direction.into_iter().map(|v| v / norm).collect())
}

fn check_holder_exponent<T: Scalar>(beta: T) -> Result<()> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::arg(format!(
            "Holder exponent must be positive, got {:e}",
            beta.as_f64()
        )));
    }
    if beta > T::one() {
        return Err(Error::arg(format!(
            "Holder exponent {:e} > 1 admits only constant curves",
            beta.as_f64()
        )));
    }
    Ok(())
}

fn check_amplitude<T: Scalar>(amplitude: T) -> Result<()> {
    if !amplitude.is_finite() {
        return Err(Error::arg("curve amplitude must be finite"));
    }
    Ok(())
}

impl<T: Scalar> CurveSpec<T> {
    /// `gamma(t) = c t^beta` with certified constant `|c|`.
    pub fn power(beta: T, amplitude: T, direction: Vec<T>) -> Result<Self> {
        check_holder_exponent(beta)?;
        check_amplitude(amplitude)?;
        Ok(CurveSpec {
            form: CurveForm::Power,
            beta,
            amplitude,
            direction: unit_direction(direction)?,
            holder_constant: amplitude.abs(),
        })
    }

    /// Truncated lacunary cosine series; the constant comes from summing the
    /// series split at the scale `2^j ~ 1/|t1 - t2|`:
    /// `2^(1-beta)/(2^(1-beta) - 1) + 2/(1 - 2^(-beta))` for `beta < 1`,
    /// degenerating to `J + 4` at `beta = 1`.
    pub fn weierstrass(beta: T, amplitude: T, terms: usize, direction: Vec<T>) -> Result<Self> {
        check_holder_exponent(beta)?;
        check_amplitude(amplitude)?;
        if terms == 0 {
            return Err(Error::arg("weierstrass curve needs at least one term"));
        }
        let one = T::one();
        let two = T::of(2.0);
        let shoulder = if beta < one {
            let head = two.powf(one - beta);
            head / (head - one) + two / (one - two.powf(-beta))
        } else {
            T::of_usize(terms + 4)
        };
        Ok(CurveSpec {
            form: CurveForm::Weierstrass { terms },
            beta,
            amplitude,
            direction: unit_direction(direction)?,
            holder_constant: amplitude.abs() * shoulder,
        })
    }

    /// Fixed position `c e`; Holder constant 0, exponent pinned to 1.
    pub fn constant(amplitude: T, direction: Vec<T>) -> Result<Self> {
        check_amplitude(amplitude)?;
        Ok(CurveSpec {
            form: CurveForm::Constant,
            beta: T::one(),
            amplitude,
            direction: unit_direction(direction)?,
            holder_constant: T::zero(),
        })
    }

    /// Piecewise-linear profile through `values` at uniform parameters.  With
    /// slope bound `L` and oscillation `osc`, `min(L h, osc) <= C h^beta` for
    /// `C = L^beta osc^(1-beta)`, which is the stored constant.
    pub fn samples(values: Vec<T>, beta: T, direction: Vec<T>) -> Result<Self> {
        check_holder_exponent(beta)?;
        if values.len() < 2 {
            return Err(Error::arg("sampled curve needs at least two values"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("sampled curve has a non-finite value"));
        }
        let segments = T::of_usize(values.len() - 1);
        let mut slope = T::zero();
        let mut lo = values[0];
        let mut hi = values[0];
        for pair in values.windows(2) {
            slope = slope.max((pair[1] - pair[0]).abs() * segments);
            lo = lo.min(pair[1]);
            hi = hi.max(pair[1]);
        }
        let osc = hi - lo;
        let holder_constant = if osc > T::zero() {
            slope.powf(beta) * osc.powf(T::one() - beta)
        } else {
            T::zero()
        };
        Ok(CurveSpec {
            form: CurveForm::Samples { values },
            beta,
            amplitude: T::one(),
            direction: unit_direction(direction)?,
            holder_constant,
        })
    }

    pub fn kind(&self) -> CurveKind {
        match self.form {
            CurveForm::Power => CurveKind::Power,
            CurveForm::Weierstrass { .. } => CurveKind::Weierstrass,
            CurveForm::Constant => CurveKind::Constant,
            CurveForm::Samples { .. } => CurveKind::Samples,
        }
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    /// Unit direction `e`; its length is the spatial dimension.
    pub fn direction(&self) -> &[T] {
        &self.direction
    }

    pub fn spatial_dimension(&self) -> usize {
        self.direction.len()
    }

    /// Certified constant `C` in `|gamma(t1) - gamma(t2)| <= C |t1 - t2|^beta`.
    pub fn holder_constant(&self) -> T {
        self.holder_constant
    }

    /// Scalar profile `gamma(t)`; the parameter is clamped to `[0, 1]`.
    pub fn value(&self, t: T) -> T {
        let t = t.max(T::zero()).min(T::one());
        match &self.form {
            CurveForm::Power => self.amplitude * t.powf(self.beta),
            CurveForm::Weierstrass { terms } => {
                let two = T::of(2.0);
                let decay = two.powf(-self.beta);
                let mut weight = T::one();
                let mut freq = T::one();
                let mut acc = T::zero();
                for _ in 0..*terms {
                    weight = weight * decay;
                    freq = freq * two;
                    acc = acc + weight * (freq * t).cos();
                }
                self.amplitude * acc
            }
            CurveForm::Constant => self.amplitude,
            CurveForm::Samples { values } => {
                let u = t * T::of_usize(values.len() - 1);
                let i = (u.floor().as_f64() as usize).min(values.len() - 2);
                let frac = u - T::of_usize(i);
                self.amplitude * (values[i] * (T::one() - frac) + values[i + 1] * frac)
            }
        }
    }

    /// `Gamma(t) = gamma(t) e`, written into `out`.
    pub fn position(&self, t: T, out: &mut [T]) {
        debug_assert_eq!(out.len(), self.direction.len());
        let v = self.value(t);
        for (o, &e) in out.iter_mut().zip(&self.direction) {
            *o = v * e;
        }
    }
}

// ─── Time sequences ──────────────────────────────────────────────────────────

/// Sequence family tag; see [`SequenceSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    Geometric,
    PowerDecay,
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
enum SequenceForm<T> {
    Geometric { ratio: T },
    PowerDecay { delta: T },
    Explicit { values: Vec<T> },
}

/// Strictly decreasing times `t_1 > t_2 > ... > 0` in `(0, 1]`, truncated at
/// `count` terms; an optional exponent `gamma` tags the intended summability
/// class of `SUM t_k^gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec<T> {
    form: SequenceForm<T>,
    count: usize,
    gamma: Option<T>,
}

impl<T: Scalar> SequenceSpec<T> {
    /// `t_k = ratio^k` with `0 < ratio < 1`.
    pub fn geometric(ratio: T, count: usize) -> Result<Self> {
        if !(ratio > T::zero() && ratio < T::one()) {
            return Err(Error::arg(format!(
                "geometric ratio must lie in (0, 1), got {:e}",
                ratio.as_f64()
            )));
        }
        Self::with_count(SequenceForm::Geometric { ratio }, count)
    }

    /// `t_k = k^(-delta)` with `delta > 0`; note `t_1 = 1`.
    pub fn power_decay(delta: T, count: usize) -> Result<Self> {
        if !(delta > T::zero()) || !delta.is_finite() {
            return Err(Error::arg(format!(
                "decay exponent must be positive, got {:e}",
                delta.as_f64()
            )));
        }
        Self::with_count(SequenceForm::PowerDecay { delta }, count)
    }

    /// Explicit strictly decreasing values in `(0, 1]`.
    pub fn explicit(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::arg("explicit sequence must be nonempty"));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > T::zero() && v <= T::one()) || !v.is_finite() {
                return Err(Error::arg(format!(
                    "sequence entry {i} = {:e} is outside (0, 1]",
                    v.as_f64()
                )));
            }
            if i > 0 && !(v < values[i - 1]) {
                return Err(Error::arg(format!(
                    "sequence must be strictly decreasing, broken at entry {i}"
                )));
            }
        }
        let count = values.len();
        Ok(SequenceSpec {
            form: SequenceForm::Explicit { values },
            count,
            gamma: None,
        })
    }

    fn with_count(form: SequenceForm<T>, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::arg("sequence needs at least one term"));
        }
        Ok(SequenceSpec {
            form,
            count,
            gamma: None,
        })
    }

    /// Attach the summability exponent tag `gamma > 0`.
    pub fn with_gamma(mut self, gamma: T) -> Result<Self> {
        if !(gamma > T::zero()) || !gamma.is_finite() {
            return Err(Error::arg("summability exponent must be positive"));
        }
        self.gamma = Some(gamma);
        Ok(self)
    }

    pub fn kind(&self) -> SequenceKind {
        match self.form {
            SequenceForm::Geometric { .. } => SequenceKind::Geometric,
            SequenceForm::PowerDecay { .. } => SequenceKind::PowerDecay,
            SequenceForm::Explicit { .. } => SequenceKind::Explicit,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn gamma(&self) -> Option<T> {
        self.gamma
    }

    /// `t_k` for `1 <= k <= count`.
    pub fn term(&self, k: usize) -> T {
        debug_assert!(1 <= k && k <= self.count, "term index {k} out of range");
        match &self.form {
            SequenceForm::Geometric { ratio } => ratio.powi(k as i32),
            SequenceForm::PowerDecay { delta } => T::of_usize(k).powf(-*delta),
            SequenceForm::Explicit { values } => values[k - 1],
        }
    }

    /// All terms in order, `t_1, t_2, ...`.
    pub fn terms(&self) -> impl Iterator<Item = T> + '_ {
        (1..=self.count).map(move |k| self.term(k))
    }

    /// Number of leading terms with `t_k >= threshold` (exact).
    pub fn kept_above(&self, threshold: T) -> usize {
        if !(threshold > T::zero()) {
            return self.count;
        }
        if let SequenceForm::Explicit { values } = &self.form {
            return values.partition_point(|v| *v >= threshold);
        }
        let guess = match &self.form {
            SequenceForm::Geometric { ratio } => {
                threshold.as_f64().ln() / ratio.as_f64().ln()
            }
            SequenceForm::PowerDecay { delta } => {
                threshold.as_f64().powf(-1.0 / delta.as_f64())
            }
            SequenceForm::Explicit { .. } => unreachable!(),
        };
        let mut k = if guess.is_finite() && guess > 0.0 {
            (guess as usize).min(self.count)
        } else {
            0
        };
        while k < self.count && self.term(k + 1) >= threshold {
            k += 1;
        }
        while k > 0 && self.term(k) < threshold {
            k -= 1;
        }
        k
    }
}

// ─── Explicit point sets ─────────────────────────────────────────────────────

/// Finite list of space-time points (shift, time), validated once.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    spatial_dimension: usize,
    ys: Vec<T>,
    ts: Vec<T>,
}

impl<T: Scalar> PointSet<T> {
    pub fn new(points: Vec<(Vec<T>, T)>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::arg("point set must be nonempty"))?;
        let spatial_dimension = first.0.len();
        let mut ys = Vec::with_capacity(points.len() * spatial_dimension);
        let mut ts = Vec::with_capacity(points.len());
        for (i, (y, t)) in points.iter().enumerate() {
            if y.len() != spatial_dimension {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} has {} spatial components, expected {spatial_dimension}",
                    y.len()
                )));
            }
            if y.iter().any(|v| !v.is_finite()) || !t.is_finite() {
                return Err(Error::arg(format!("point {i} has a non-finite component")));
            }
            ys.extend_from_slice(y);
            ts.push(*t);
        }
        Ok(PointSet {
            spatial_dimension,
            ys,
            ts,
        })
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    pub fn spatial_dimension(&self) -> usize {
        self.spatial_dimension
    }

    pub fn y(&self, i: usize) -> &[T] {
        &self.ys[i * self.spatial_dimension..(i + 1) * self.spatial_dimension]
    }

    pub fn t(&self, i: usize) -> T {
        self.ts[i]
    }
}

// ─── Set specifications ──────────────────────────────────────────────────────

/// Symbolic description of a bounded space-time set.
///
/// `TimeInterval` and `TimeSequence` are time-only (no spatial extent);
/// `Box` has `side` in each spatial coordinate and `side^exponent` in time.
#[derive(Debug, Clone, PartialEq)]
pub enum SetSpec<T> {
    TimeInterval { end: T },
    TimeSequence(SequenceSpec<T>),
    CurveGraph(CurveSpec<T>),
    CurveSequence(CurveSpec<T>, SequenceSpec<T>),
    Box { corner: Vec<T>, side: T, exponent: T },
    Points(PointSet<T>),
}

impl<T: Scalar> SetSpec<T> {
    /// Checks the raw-field variants; the wrapped types are validated at
    /// construction already.
    pub fn validate(&self) -> Result<()> {
        match self {
            SetSpec::TimeInterval { end } => {
                if !(*end > T::zero()) || !end.is_finite() {
                    return Err(Error::arg(format!(
                        "time interval end must be positive, got {:e}",
                        end.as_f64()
                    )));
                }
            }
            SetSpec::Box {
                corner,
                side,
                exponent,
            } => {
                if corner.len() < 2 {
                    return Err(Error::arg(
                        "box corner needs a spatial part and a time component",
                    ));
                }
                if corner.iter().any(|v| !v.is_finite()) {
                    return Err(Error::arg("box corner has a non-finite component"));
                }
                if !(*side > T::zero()) || !side.is_finite() {
                    return Err(Error::arg("box side must be positive"));
                }
                if !(*exponent > T::zero()) || !exponent.is_finite() {
                    return Err(Error::arg("box time exponent must be positive"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Spatial dimension; 0 for time-only sets.
    pub fn spatial_dimension(&self) -> usize {
        match self {
            SetSpec::TimeInterval { .. } | SetSpec::TimeSequence(_) => 0,
            SetSpec::CurveGraph(curve) | SetSpec::CurveSequence(curve, _) => {
                curve.spatial_dimension()
            }
            SetSpec::Box { corner, .. } => corner.len() - 1,
            SetSpec::Points(ps) => ps.spatial_dimension(),
        }
    }

    pub fn is_time_only(&self) -> bool {
        matches!(
            self,
            SetSpec::TimeInterval { .. } | SetSpec::TimeSequence(_)
        )
    }

    pub fn curve(&self) -> Option<&CurveSpec<T>> {
        match self {
            SetSpec::CurveGraph(curve) | SetSpec::CurveSequence(curve, _) => Some(curve),
            _ => None,
        }
    }

    pub fn sequence(&self) -> Option<&SequenceSpec<T>> {
        match self {
            SetSpec::TimeSequence(seq) | SetSpec::CurveSequence(_, seq) => Some(seq),
            _ => None,
        }
    }
}

// ─── Sampling ────────────────────────────────────────────────────────────────

/// Finite sampling of a [`SetSpec`]: flat spatial shifts, times, the source
/// set, and the realized sampling pitch (0 for exactly reproduced discrete
/// sets).
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSamples<T> {
    spatial_dimension: usize,
    ys: Vec<T>,
    ts: Vec<T>,
    source: SetSpec<T>,
    parameter_step: T,
    max_step_y: T,
    max_step_t: T,
}

impl<T: Scalar> SpaceTimeSamples<T> {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    pub fn spatial_dimension(&self) -> usize {
        self.spatial_dimension
    }

    pub fn y(&self, i: usize) -> &[T] {
        &self.ys[i * self.spatial_dimension..(i + 1) * self.spatial_dimension]
    }

    pub fn t(&self, i: usize) -> T {
        self.ts[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[T], T)> + '_ {
        (0..self.len()).map(move |i| (self.y(i), self.t(i)))
    }

    pub fn source(&self) -> &SetSpec<T> {
        &self.source
    }

    /// Parameter resolution the sampling honored.
    pub fn parameter_step(&self) -> T {
        self.parameter_step
    }

    /// Largest per-coordinate spatial move between parameter-adjacent samples.
    pub fn max_step_y(&self) -> T {
        self.max_step_y
    }

    /// Largest time move between parameter-adjacent samples.
    pub fn max_step_t(&self) -> T {
        self.max_step_t
    }
}

/// Knobs for one streaming pass over a set.
pub(crate) struct StreamPolicy<T> {
    /// Parameter lattice pitch for continuum variants.
    pub parameter_step: T,
    /// Smallest sequence term kept (the tail below is truncated).
    pub sequence_cutoff: T,
    /// Leading sequence terms kept regardless of the cutoff.
    pub sequence_head: usize,
    /// Upper bound on emitted points; exceeding it is an error.
    pub budget: usize,
}

/// What a streaming pass actually did.
pub(crate) struct StreamStats<T> {
    pub max_step_y: T,
    pub max_step_t: T,
}

fn step_count<T: Scalar>(extent: T, step: T) -> usize {
    ((extent / step).as_f64().ceil() as usize).max(1)
}

fn kept_with_head<T: Scalar>(seq: &SequenceSpec<T>, policy: &StreamPolicy<T>) -> usize {
    seq.kept_above(policy.sequence_cutoff)
        .max(policy.sequence_head.min(seq.count()))
}

/// Points the pass would emit, saturating; cheap (no enumeration).
pub(crate) fn estimate_stream_len<T: Scalar>(
    spec: &SetSpec<T>,
    policy: &StreamPolicy<T>,
) -> usize {
    match spec {
        SetSpec::TimeInterval { end } => {
            step_count(*end, policy.parameter_step).saturating_add(1)
        }
        SetSpec::TimeSequence(seq) | SetSpec::CurveSequence(_, seq) => kept_with_head(seq, policy),
        SetSpec::CurveGraph(_) => step_count(T::one(), policy.parameter_step).saturating_add(1),
        SetSpec::Box {
            corner,
            side,
            exponent,
        } => {
            let n = corner.len().saturating_sub(1);
            let per_axis = step_count(*side, policy.parameter_step).saturating_add(1);
            let time_axis =
                step_count(side.powf(*exponent), policy.parameter_step).saturating_add(1);
            let mut total = time_axis;
            for _ in 0..n {
                total = total.saturating_mul(per_axis);
            }
            total
        }
        SetSpec::Points(ps) => ps.len(),
    }
}

/// Stream the sampling of `spec` through `emit` without materializing it.
///
/// Emission order is deterministic; for time-only sets the times arrive in
/// ascending order, which downstream greedy sweeps rely on.
pub(crate) fn visit_samples<T: Scalar>(
    spec: &SetSpec<T>,
    policy: &StreamPolicy<T>,
    mut emit: impl FnMut(&[T], T),
) -> Result<StreamStats<T>> {
    spec.validate()?;
    if !(policy.parameter_step > T::zero()) || !policy.parameter_step.is_finite() {
        return Err(Error::arg("sampling resolution must be positive and finite"));
    }
    let estimate = estimate_stream_len(spec, policy);
    if estimate > policy.budget {
        return Err(Error::arg(format!(
            "sampling would emit about {estimate} points, over the {} budget",
            policy.budget
        )));
    }
    let zero = T::zero();
    match spec {
        SetSpec::TimeInterval { end } => {
            let steps = step_count(*end, policy.parameter_step);
            let dt = *end / T::of_usize(steps);
            for i in 0..=steps {
                emit(&[], T::of_usize(i) * dt);
            }
            Ok(StreamStats {
                max_step_y: zero,
                max_step_t: dt,
            })
        }
        SetSpec::TimeSequence(seq) => {
            let kept = kept_with_head(seq, policy);
            for k in (1..=kept).rev() {
                emit(&[], seq.term(k));
            }
            Ok(StreamStats {
                max_step_y: zero,
                max_step_t: zero,
            })
        }
        SetSpec::CurveGraph(curve) => {
            let steps = step_count(T::one(), policy.parameter_step);
            let dt = T::one() / T::of_usize(steps);
            let dim = curve.spatial_dimension();
            let mut y = vec![zero; dim];
            let mut prev = vec![zero; dim];
            let mut max_dy = zero;
            for i in 0..=steps {
                let t = T::of_usize(i) * dt;
                curve.position(t, &mut y);
                if i > 0 {
                    for d in 0..dim {
                        max_dy = max_dy.max((y[d] - prev[d]).abs());
                    }
                }
                prev.copy_from_slice(&y);
                emit(&y, t);
            }
            Ok(StreamStats {
                max_step_y: max_dy,
                max_step_t: dt,
            })
        }
        SetSpec::CurveSequence(curve, seq) => {
            let kept = kept_with_head(seq, policy);
            let mut y = vec![zero; curve.spatial_dimension()];
            for k in (1..=kept).rev() {
                let t = seq.term(k);
                curve.position(t, &mut y);
                emit(&y, t);
            }
            Ok(StreamStats {
                max_step_y: zero,
                max_step_t: zero,
            })
        }
        SetSpec::Box {
            corner,
            side,
            exponent,
        } => {
            let n = corner.len() - 1;
            let time_side = side.powf(*exponent);
            let ky = step_count(*side, policy.parameter_step);
            let kt = step_count(time_side, policy.parameter_step);
            let dy = *side / T::of_usize(ky);
            let dt = time_side / T::of_usize(kt);
            let mut y = vec![zero; n];
            let mut idx = vec![0usize; n];
            'grid: loop {
                for d in 0..n {
                    y[d] = corner[d] + T::of_usize(idx[d]) * dy;
                }
                for i in 0..=kt {
                    emit(&y, corner[n] + T::of_usize(i) * dt);
                }
                let mut d = 0;
                loop {
                    if d == n {
                        break 'grid;
                    }
                    idx[d] += 1;
                    if idx[d] <= ky {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                }
            }
            Ok(StreamStats {
                max_step_y: dy,
                max_step_t: dt,
            })
        }
        SetSpec::Points(ps) => {
            for i in 0..ps.len() {
                emit(ps.y(i), ps.t(i));
            }
            Ok(StreamStats {
                max_step_y: zero,
                max_step_t: zero,
            })
        }
    }
}

/// Materialize a deterministic sampling of `spec`.
///
/// Continuum variants use a parameter pitch at most `resolution`; sequence
/// variants keep every term at least `resolution` plus the first 10 terms.
pub fn sample_set<T: Scalar>(spec: &SetSpec<T>, resolution: T) -> Result<SpaceTimeSamples<T>> {
    if !(resolution > T::zero()) || !resolution.is_finite() {
        return Err(Error::arg(format!(
            "sampling resolution must be positive, got {:e}",
            resolution.as_f64()
        )));
    }
    let policy = StreamPolicy {
        parameter_step: resolution,
        sequence_cutoff: resolution,
        sequence_head: 10,
        budget: SAMPLE_BUDGET,
    };
    let dim = spec.spatial_dimension();
    let mut ys = Vec::new();
    let mut ts = Vec::new();
    let stats = visit_samples(spec, &policy, |y, t| {
        ys.extend_from_slice(y);
        ts.push(t);
    })?;
    Ok(SpaceTimeSamples {
        spatial_dimension: dim,
        ys,
        ts,
        source: spec.clone(),
        parameter_step: resolution,
        max_step_y: stats.max_step_y,
        max_step_t: stats.max_step_t,
    })
}

// ─── Projections, block counts, exponents ────────────────────────────────────

/// Sorted, deduplicated times of the sampling: the projection to the time axis.
pub fn project_time<T: Scalar>(samples: &SpaceTimeSamples<T>) -> Vec<T> {
    let mut ts = samples.ts.clone();
    ts.sort_by(|a, b| a.partial_cmp(b).expect("times are finite"));
    ts.dedup();
    ts
}

/// Exact counts of terms in the dyadic blocks `(2^(-j-1), 2^(-j)]`, `j = 0..=j_max`.
pub fn dyadic_block_counts<T: Scalar>(seq: &SequenceSpec<T>, j_max: usize) -> Vec<usize> {
    let mut counts = vec![0usize; j_max + 1];
    let half = T::of(0.5);
    for t in seq.terms() {
        let mut hi = T::one();
        let mut j = 0usize;
        loop {
            let lo = hi * half;
            if t > lo {
                if t <= hi {
                    counts[j] += 1;
                }
                break;
            }
            j += 1;
            if j > j_max {
                break;
            }
            hi = lo;
        }
    }
    counts
}

/// `(a_1, a_2) = (1/beta, max(a, 1/beta))` for sets with a curve component.
pub fn effective_exponents<T: Scalar>(spec: &SetSpec<T>, a: T) -> Result<(T, T)> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::arg("dispersion exponent must be positive"));
    }
    let curve = spec.curve().ok_or_else(|| {
        Error::UnsupportedSet("effective exponents need a curve component; time-only sets have no Holder exponent".into())
    })?;
    let a1 = T::one() / curve.beta();
    Ok((a1, a1.max(a)))
}

/// Partial sums of `SUM t_k^gamma` at dyadic checkpoints with a convergence
/// classification.
#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityReport<T> {
    gamma: T,
    checkpoints: Vec<(usize, T)>,
    converged: bool,
}

impl<T: Scalar> SummabilityReport<T> {
    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// `(k, partial sum through t_k)` at `k = 1, 2, 4, ...`.
    pub fn checkpoints(&self) -> &[(usize, T)] {
        &self.checkpoints
    }

    pub fn converged(&self) -> bool {
        self.converged
    }
}

/// Classify `SUM t_k^gamma` by the decay of dyadic-block increments: the sum
/// converges when consecutive block sums shrink geometrically (ratio < 0.97
/// over the last three blocks), and diverges when they plateau.
pub fn summability<T: Scalar>(seq: &SequenceSpec<T>, gamma: T) -> Result<SummabilityReport<T>> {
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(Error::arg("summability exponent must be positive"));
    }
    if seq.count() < 16 {
        return Err(Error::arg(
            "summability classification needs at least 16 terms",
        ));
    }
    let levels = seq.count().ilog2() as usize;
    let mut acc = Kahan::new();
    let mut checkpoints = Vec::with_capacity(levels + 1);
    let mut next = 1usize;
    for k in 1..=(1usize << levels) {
        acc.add(seq.term(k).powf(gamma));
        if k == next {
            checkpoints.push((k, acc.total()));
            next *= 2;
        }
    }
    let increments: Vec<T> = checkpoints
        .windows(2)
        .map(|pair| pair[1].1 - pair[0].1)
        .collect();
    let threshold = T::of(0.97);
    let converged = increments
        .windows(2)
        .rev()
        .take(3)
        .all(|pair| pair[0] <= T::zero() || pair[1] < threshold * pair[0]);
    Ok(SummabilityReport {
        gamma,
        checkpoints,
        converged,
    })
}

// ─── Plain-text loaders ──────────────────────────────────────────────────────

fn read_values<T: Scalar>(path: &Path) -> Result<Vec<T>> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|e| {
            Error::Config(format!(
                "{}:{}: expected one number per line, got {line:?} ({e})",
                path.display(),
                lineno + 1
            ))
        })?;
        values.push(T::of(v));
    }
    Ok(values)
}

/// Load an explicit time sequence: one value per line, `#` comments allowed.
pub fn load_sequence_file<T: Scalar>(path: impl AsRef<Path>) -> Result<SequenceSpec<T>> {
    SequenceSpec::explicit(read_values(path.as_ref())?)
}

/// Load a sampled curve profile (uniform parameters on `[0, 1]`, direction
/// along the first coordinate axis) with the given Holder exponent.
pub fn load_curve_file<T: Scalar>(path: impl AsRef<Path>, beta: T) -> Result<CurveSpec<T>> {
    CurveSpec::samples(read_values(path.as_ref())?, beta, vec![T::one()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::io::Write;

    fn root_t() -> CurveSpec<f64> {
        CurveSpec::power(0.5, 1.0, vec![1.0]).unwrap()
    }

    #[test]
    fn curve_constructors_validate() {
        assert!(CurveSpec::power(0.5, 1.0, vec![1.0]).is_ok());
        assert!(CurveSpec::power(0.0, 1.0, vec![1.0]).is_err());
        assert!(CurveSpec::power(1.5, 1.0, vec![1.0]).is_err(), "beta > 1 rejected");
        assert!(CurveSpec::power(0.5, f64::NAN, vec![1.0]).is_err());
        assert!(CurveSpec::power(0.5, 1.0, vec![]).is_err());
        assert!(CurveSpec::power(0.5, 1.0, vec![0.0, 0.0]).is_err());
        assert!(CurveSpec::weierstrass(0.5, 1.0, 0, vec![1.0]).is_err());
        assert!(CurveSpec::samples(vec![1.0], 0.5, vec![1.0]).is_err());
        assert!(CurveSpec::samples(vec![1.0, f64::NAN], 0.5, vec![1.0]).is_err());
    }

    #[test]
    fn curve_values_match_formulas() {
        let identity: CurveSpec<f64> = CurveSpec::power(1.0, 1.0, vec![1.0]).unwrap();
        assert_eq!(identity.value(0.75), 0.75);

        let root: CurveSpec<f64> = CurveSpec::power(0.5, 2.0, vec![1.0]).unwrap();
        assert!((root.value(0.25) - 1.0).abs() < 1e-15);
        assert_eq!(root.value(0.0), 0.0);

        let flat: CurveSpec<f64> = CurveSpec::constant(3.0, vec![1.0]).unwrap();
        assert_eq!(flat.value(0.9), 3.0);
        assert_eq!(flat.holder_constant(), 0.0);

        let w: CurveSpec<f64> = CurveSpec::weierstrass(0.5, 1.0, 1, vec![1.0]).unwrap();
        let expect = 0.5f64.sqrt() * (2.0f64 * 0.3).cos();
        assert!((w.value(0.3) - expect).abs() < 1e-15, "single-term series");

        let poly: CurveSpec<f64> = CurveSpec::samples(vec![0.0, 1.0, 0.0], 0.5, vec![1.0]).unwrap();
        assert!((poly.value(0.25) - 0.5).abs() < 1e-15);
        assert!((poly.value(0.5) - 1.0).abs() < 1e-15);
        assert!((poly.value(1.0) - 0.0).abs() < 1e-15);
    }

    #[test]
    fn curve_direction_is_normalized() {
        let c: CurveSpec<f64> = CurveSpec::power(0.5, 1.0, vec![3.0, 4.0]).unwrap();
        assert_eq!(c.spatial_dimension(), 2);
        assert!((c.direction()[0] - 0.6).abs() < 1e-15);
        assert!((c.direction()[1] - 0.8).abs() < 1e-15);
        let mut out = [0.0; 2];
        c.position(0.25, &mut out);
        assert!((out[0] - 0.3).abs() < 1e-15);
        assert!((out[1] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn holder_constants_match_formulas() {
        assert_eq!(
            CurveSpec::<f64>::power(0.5, -2.0, vec![1.0]).unwrap().holder_constant(),
            2.0
        );
        // beta = 1/2: 2^(1/2)/(2^(1/2)-1) + 2/(1-2^(-1/2)) = 3(2+sqrt 2)
        let w: CurveSpec<f64> = CurveSpec::weierstrass(0.5, 1.0, 20, vec![1.0]).unwrap();
        assert!(
            (w.holder_constant() - 10.242640687119284).abs() < 1e-12,
            "got {:.15}",
            w.holder_constant()
        );
        let w1: CurveSpec<f64> = CurveSpec::weierstrass(1.0, 1.0, 20, vec![1.0]).unwrap();
        assert_eq!(w1.holder_constant(), 24.0, "J + 4 at beta = 1");
        // samples: slope 2, oscillation 1, beta 1/2 gives sqrt 2
        let poly: CurveSpec<f64> = CurveSpec::samples(vec![0.0, 1.0, 0.0], 0.5, vec![1.0]).unwrap();
        assert!((poly.holder_constant() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn holder_certificate_on_1000_random_pairs() {
        let curves: Vec<CurveSpec<f64>> = vec![
            CurveSpec::power(0.3, 1.0, vec![1.0]).unwrap(),
            CurveSpec::power(0.5, -2.0, vec![1.0]).unwrap(),
            CurveSpec::power(1.0, 1.0, vec![1.0]).unwrap(),
            CurveSpec::weierstrass(0.5, 1.0, 20, vec![1.0]).unwrap(),
            CurveSpec::weierstrass(0.9, 1.5, 12, vec![1.0]).unwrap(),
            CurveSpec::weierstrass(1.0, 1.0, 20, vec![1.0]).unwrap(),
            CurveSpec::constant(5.0, vec![1.0]).unwrap(),
            CurveSpec::samples(vec![0.0, 1.0, 0.0], 0.5, vec![1.0]).unwrap(),
            CurveSpec::samples(vec![0.2, -0.4, 0.9, 0.1, 0.3], 0.7, vec![1.0]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for curve in &curves {
            let c = curve.holder_constant();
            let beta = curve.beta();
            for _ in 0..1000 {
                let t1: f64 = rng.gen_range(0.0..=1.0);
                let t2: f64 = rng.gen_range(0.0..=1.0);
                let lhs = (curve.value(t1) - curve.value(t2)).abs();
                let rhs = c * (t1 - t2).abs().powf(beta);
                assert!(
                    lhs <= rhs + 1e-9 * (1.0 + c),
                    "{:?}: |gamma({t1}) - gamma({t2})| = {lhs:.6} > C h^beta = {rhs:.6}",
                    curve.kind()
                );
            }
        }
    }

    #[test]
    fn sequence_generators_and_validation() {
        let geo = SequenceSpec::geometric(0.5, 5).unwrap();
        let terms: Vec<f64> = geo.terms().collect();
        assert_eq!(terms, vec![0.5, 0.25, 0.125, 0.0625, 0.03125]);

        let pow = SequenceSpec::power_decay(1.0, 3).unwrap();
        assert_eq!(pow.term(1), 1.0, "leading term 1 is admitted");
        assert_eq!(pow.term(2), 0.5);

        assert!(SequenceSpec::<f64>::geometric(1.0, 5).is_err());
        assert!(SequenceSpec::<f64>::geometric(0.5, 0).is_err());
        assert!(SequenceSpec::<f64>::power_decay(0.0, 5).is_err());
        assert!(SequenceSpec::explicit(Vec::<f64>::new()).is_err());
        assert!(SequenceSpec::explicit(vec![0.5, 0.5]).is_err());
        assert!(SequenceSpec::explicit(vec![0.3, 0.4]).is_err());
        assert!(SequenceSpec::explicit(vec![0.5, 0.0]).is_err());
        assert!(SequenceSpec::explicit(vec![1.5, 0.5]).is_err());
        assert!(SequenceSpec::explicit(vec![1.0, 0.5]).is_ok());
        assert!(SequenceSpec::geometric(0.5, 5).unwrap().with_gamma(0.0).is_err());
    }

    #[test]
    fn kept_above_is_exact() {
        let geo = SequenceSpec::geometric(0.5, 40).unwrap();
        assert_eq!(geo.kept_above(2.0f64.powi(-5)), 5);
        assert_eq!(geo.kept_above(0.6), 0);
        assert_eq!(geo.kept_above(0.0), 40);

        let pow = SequenceSpec::power_decay(1.0, 1000).unwrap();
        assert_eq!(pow.kept_above(0.1), 10, "1/k >= 1/10 up to k = 10");
        assert_eq!(pow.kept_above(1.0 / 7.0), 7, "boundary term kept");

        let expl = SequenceSpec::explicit(vec![0.9, 0.5, 0.1]).unwrap();
        assert_eq!(expl.kept_above(0.5), 2);
    }

    #[test]
    fn box_sampling_hits_corners() {
        let spec = SetSpec::Box {
            corner: vec![0.0, 0.0],
            side: 1.0,
            exponent: 2.0,
        };
        let samples = sample_set(&spec, 0.5).unwrap();
        assert_eq!(samples.len(), 9, "3 x 3 lattice");
        let has = |y0: f64, t0: f64| samples.iter().any(|(y, t)| y[0] == y0 && t == t0);
        assert!(has(0.0, 0.0), "low corner sampled");
        assert!(has(1.0, 1.0), "high corner sampled");
        assert_eq!(samples.max_step_y(), 0.5);
        assert_eq!(samples.max_step_t(), 0.5);
    }

    #[test]
    fn identity_graph_sampling_matches_lattice() {
        let spec = SetSpec::CurveGraph(CurveSpec::power(1.0, 1.0, vec![1.0]).unwrap());
        let samples = sample_set(&spec, 0.25).unwrap();
        assert_eq!(samples.len(), 5);
        for (i, (y, t)) in samples.iter().enumerate() {
            let expect = i as f64 * 0.25;
            assert!((t - expect).abs() < 1e-15);
            assert!((y[0] - expect).abs() < 1e-15, "graph point is (t, t)");
        }
        assert!((samples.max_step_t() - 0.25).abs() < 1e-15);
        assert!((samples.max_step_y() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sequence_sampling_keeps_tail_head() {
        let spec = SetSpec::TimeSequence(SequenceSpec::geometric(0.5, 30).unwrap());
        let samples = sample_set(&spec, 2.0f64.powi(-5)).unwrap();
        // 5 terms clear the cutoff; the guaranteed head extends to 10.
        assert_eq!(samples.len(), 10);
        let times = project_time(&samples);
        assert_eq!(times.len(), 10);
        assert!((times[0] - 2.0f64.powi(-10)).abs() < 1e-18);
        assert!((times[9] - 0.5).abs() < 1e-15);
        assert_eq!(samples.max_step_t(), 0.0, "discrete sets are exact");

        let short = SetSpec::TimeSequence(SequenceSpec::geometric(0.5, 4).unwrap());
        assert_eq!(sample_set(&short, 2.0f64.powi(-5)).unwrap().len(), 4);
    }

    #[test]
    fn curve_sequence_sampling_is_exact() {
        let spec = SetSpec::CurveSequence(root_t(), SequenceSpec::power_decay(1.0, 12).unwrap());
        let samples = sample_set(&spec, 0.05).unwrap();
        assert_eq!(samples.len(), 12, "cutoff 0.05 keeps 1/k down to k = 20, capped at count");
        for (y, t) in samples.iter() {
            assert!((y[0] - t.sqrt()).abs() < 1e-15, "points sit on the curve exactly");
        }
        let times = project_time(&samples);
        assert_eq!(times.len(), 12);
        assert!(times.windows(2).all(|w| w[0] < w[1]), "sorted ascending");
    }

    #[test]
    fn sampling_rejects_bad_resolution_and_budget() {
        let spec = SetSpec::TimeInterval { end: 1.0 };
        assert!(sample_set(&spec, 0.0).is_err());
        assert!(sample_set(&spec, -0.1).is_err());
        assert!(sample_set(&spec, f64::NAN).is_err());
        assert!(matches!(
            SetSpec::TimeInterval { end: -1.0 }.validate(),
            Err(Error::InvalidArgument(_))
        ));

        let huge = SetSpec::TimeSequence(SequenceSpec::power_decay(1.0, 1 << 26).unwrap());
        assert!(
            sample_set(&huge, 1e-9).is_err(),
            "streams beyond the budget are refused"
        );
    }

    #[test]
    fn project_time_of_box_is_the_time_lattice() {
        let spec = SetSpec::Box {
            corner: vec![0.0, 0.0],
            side: 1.0,
            exponent: 2.0,
        };
        let times = project_time(&sample_set(&spec, 0.5).unwrap());
        assert_eq!(times, vec![0.0, 0.5, 1.0], "deduplicated across spatial rows");
    }

    #[test]
    fn dyadic_block_count_oracles() {
        // t_k = 1/k: block j holds 2^j terms (k = 2^j .. 2^(j+1) - 1).
        let harmonic = SequenceSpec::power_decay(1.0, 100_000).unwrap();
        let counts = dyadic_block_counts(&harmonic, 12);
        let expect: Vec<usize> = (0..=12).map(|j| 1usize << j).collect();
        assert_eq!(counts, expect);

        // t_k = 2^-k: exactly one term per block j >= 1, none in block 0.
        let geo = SequenceSpec::geometric(0.5, 30).unwrap();
        let counts = dyadic_block_counts(&geo, 12);
        assert_eq!(counts[0], 0);
        assert!(counts[1..].iter().all(|&c| c == 1));

        // the boundary t = 2^-j belongs to block j, and t = 1 to block 0
        let edge = SequenceSpec::explicit(vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(dyadic_block_counts(&edge, 3), vec![1, 1, 1, 0]);
    }

    #[test]
    fn effective_exponent_formulas() {
        let graph = |beta| SetSpec::CurveGraph(CurveSpec::power(beta, 1.0, vec![1.0]).unwrap());
        assert_eq!(effective_exponents(&graph(0.5), 2.0).unwrap(), (2.0, 2.0));
        assert_eq!(effective_exponents(&graph(0.25), 2.0).unwrap(), (4.0, 4.0));
        assert_eq!(effective_exponents(&graph(1.0), 3.0).unwrap(), (1.0, 3.0));
        assert!(matches!(
            effective_exponents(&SetSpec::TimeInterval { end: 1.0 }, 2.0),
            Err(Error::UnsupportedSet(_))
        ));
        assert!(effective_exponents(&graph(0.5), 0.0).is_err());
    }

    #[test]
    fn summability_classification() {
        let k = 1 << 20;
        let geo = SequenceSpec::geometric(0.5, k).unwrap();
        assert!(summability(&geo, 0.5).unwrap().converged(), "geometric, any gamma");

        let harmonic = SequenceSpec::power_decay(1.0, k).unwrap();
        assert!(!summability(&harmonic, 1.0).unwrap().converged(), "gamma delta = 1 diverges");
        assert!(summability(&harmonic, 1.2).unwrap().converged(), "gamma delta > 1 converges");

        let square = SequenceSpec::power_decay(2.0, k).unwrap();
        assert!(summability(&square, 1.0).unwrap().converged());
        assert!(!summability(&square, 0.4).unwrap().converged(), "gamma delta = 0.8 diverges");

        assert!(summability(&geo, 0.0).is_err());
        assert!(summability(&SequenceSpec::geometric(0.5, 8).unwrap(), 1.0).is_err());
    }

    #[test]
    fn point_sets_validate_and_index() {
        let ps = PointSet::new(vec![(vec![0.0, 1.0], 0.5), (vec![2.0, 3.0], 0.25)]).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.y(1), &[2.0, 3.0]);
        assert_eq!(ps.t(0), 0.5);
        assert!(PointSet::<f64>::new(vec![]).is_err());
        assert!(PointSet::new(vec![(vec![0.0], 0.0), (vec![0.0, 1.0], 0.0)]).is_err());
        assert!(PointSet::new(vec![(vec![f64::NAN], 0.0)]).is_err());

        let spec = SetSpec::Points(ps);
        assert_eq!(spec.spatial_dimension(), 2);
        let samples = sample_set(&spec, 1.0).unwrap();
        assert_eq!(samples.len(), 2);
        assert_eq!(samples.max_step_y(), 0.0);
    }

    #[test]
    fn loaders_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let seq_path = dir.path().join("seq.txt");
        std::fs::write(&seq_path, "# head comment\n0.5\n\n0.25\n0.125\n").unwrap();
        let seq: SequenceSpec<f64> = load_sequence_file(&seq_path).unwrap();
        assert_eq!(seq.terms().collect::<Vec<_>>(), vec![0.5, 0.25, 0.125]);

        let curve_path = dir.path().join("curve.txt");
        let mut f = std::fs::File::create(&curve_path).unwrap();
        writeln!(f, "0.0\n1.0\n0.0").unwrap();
        drop(f);
        let curve: CurveSpec<f64> = load_curve_file(&curve_path, 0.5).unwrap();
        assert_eq!(curve.kind(), CurveKind::Samples);
        assert!((curve.holder_constant() - 2.0f64.sqrt()).abs() < 1e-15);

        let bad_path = dir.path().join("bad.txt");
        std::fs::write(&bad_path, "0.5\nnot-a-number\n").unwrap();
        assert!(matches!(
            load_sequence_file::<f64>(&bad_path),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            load_sequence_file::<f64>(dir.path().join("missing.txt")),
            Err(Error::Io(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generated_sequences_strictly_decrease(
            ratio in 0.05f64..0.95,
            delta in 0.1f64..4.0,
            count in 1usize..200,
        ) {
            for seq in [
                SequenceSpec::geometric(ratio, count).unwrap(),
                SequenceSpec::power_decay(delta, count).unwrap(),
            ] {
                let terms: Vec<f64> = seq.terms().collect();
                prop_assert!(terms[0] <= 1.0);
                prop_assert!(terms.iter().all(|&t| t > 0.0));
                prop_assert!(terms.windows(2).all(|w| w[1] < w[0]));
            }
        }

        #[test]
        fn graph_samples_lie_on_the_curve(
            beta in 0.2f64..1.0,
            c in -2.0f64..2.0,
            resolution in 0.01f64..0.5,
        ) {
            let curve = CurveSpec::power(beta, c, vec![1.0]).unwrap();
            let samples = sample_set(&SetSpec::CurveGraph(curve.clone()), resolution).unwrap();
            prop_assert!(samples.max_step_t() <= resolution + 1e-15);
            for (y, t) in samples.iter() {
                prop_assert!((y[0] - curve.value(t)).abs() < 1e-13);
            }
        }

        #[test]
        fn projection_is_sorted_and_unique(count in 1usize..40) {
            let spec = SetSpec::TimeSequence(SequenceSpec::geometric(0.7, count).unwrap());
            let times = project_time(&sample_set(&spec, 1e-9).unwrap());
            prop_assert!(times.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
