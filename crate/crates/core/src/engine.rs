//! Projection representation: iterative line projection toward a class's affine hull.
//!
//! Starting from the class sample nearest to the query, each iteration projects the query
//! orthogonally onto the line through the current anchor and a "far" model point. The
//! projection overwrites the far point and becomes the next anchor. Far points are drawn
//! by cycling through column indices in ascending order, skipping the anchor. Every
//! iterate is an affine combination of the original samples, and the distance to the query
//! never increases.
//!
//! Iteration stops when the relative gap between consecutive distances drops below
//! `delta0`, when the query is hit exactly, when no non-degenerate line through the anchor
//! remains, or when the iteration budget runs out.

use crate::error::{Error, Result};
use crate::linalg::{dist, norm, Matrix, Vector};

/// Lines whose endpoints are closer than `DEGENERATE_TOL * (1 + ‖anchor‖)` are skipped.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Distances at or below `EXACT_HIT_TOL * (1 + ‖x‖)` count as an exact hit.
pub const EXACT_HIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrcConfig {
    /// Relative-gap threshold. Zero disables the gap test so only the budget stops iteration.
    pub delta0: f64,
    /// Iteration budget.
    pub max_iters: usize,
}

impl Default for PrcConfig {
    fn default() -> Self {
        PrcConfig {
            delta0: 0.01,
            max_iters: 100,
        }
    }
}

impl PrcConfig {
    pub fn new(delta0: f64, max_iters: usize) -> Result<Self> {
        let config = PrcConfig { delta0, max_iters };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta0.is_finite() && self.delta0 >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "delta0 must be finite and non-negative, got {}",
                self.delta0
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    GapBelowThreshold,
    MaxItersExhausted,
    ExactHit,
    SingleSample,
    DegenerateModel,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::GapBelowThreshold => "gap_below_threshold",
            StopReason::MaxItersExhausted => "max_iters_exhausted",
            StopReason::ExactHit => "exact_hit",
            StopReason::SingleSample => "single_sample",
            StopReason::DegenerateModel => "degenerate_model",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// Final iterate, an affine combination of the class samples.
    pub representation: Vector,
    /// `‖x - representation‖`
    pub distance: f64,
    /// Distance from the query to the nearest class sample (the first anchor).
    pub initial_distance: f64,
    pub iterations_used: usize,
    pub stop_reason: StopReason,
    /// Distance after each projection. When no projection ran (single sample, a query on
    /// a sample, or a fully degenerate model) this holds the anchor distance alone, so the trace always ends
    /// with `distance`.
    pub trace: Vec<f64>,
}

/// Mutable working copy of a class's samples.
#[derive(Debug, Clone)]
pub struct ClassModel {
    points: Vec<Vec<f64>>,
    anchor_index: usize,
    cycle_pointer: usize,
}

impl ClassModel {
    pub fn from_columns<V: AsRef<[f64]>>(columns: &[V]) -> Result<Self> {
        let first = columns.first().ok_or(Error::EmptyModel)?.as_ref().len();
        let mut points = Vec::with_capacity(columns.len());
        for c in columns {
            let c = c.as_ref();
            if c.len() != first {
                return Err(Error::DimensionMismatch {
                    expected: first,
                    found: c.len(),
                });
            }
            points.push(c.to_vec());
        }
        Ok(ClassModel {
            points,
            anchor_index: 0,
            cycle_pointer: 0,
        })
    }

    pub fn from_matrix(samples: &Matrix) -> Self {
        let q = samples.rows();
        let n = samples.cols();
        let data = samples.as_slice();
        let points = (0..n)
            .map(|j| (0..q).map(|i| data[i * n + j]).collect())
            .collect();
        ClassModel {
            points,
            anchor_index: 0,
            cycle_pointer: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn anchor_index(&self) -> usize {
        self.anchor_index
    }

    pub fn cycle_pointer(&self) -> usize {
        self.cycle_pointer
    }

    /// Runs the projection procedure for `x`, consuming the working copy.
    pub fn project(mut self, x: &[f64], config: &PrcConfig) -> Result<ProjectionResult> {
        config.validate()?;
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let n = self.len();
        if n == 1 {
            let d = dist(x, &self.points[0]);
            return Ok(ProjectionResult {
                representation: Vector::from(self.points.swap_remove(0)),
                distance: d,
                initial_distance: d,
                iterations_used: 0,
                stop_reason: StopReason::SingleSample,
                trace: vec![d],
            });
        }

        self.anchor_index = nearest_index(x, &self)?;
        self.cycle_pointer = 0;
        let initial_distance = dist(x, &self.points[self.anchor_index]);
        let exact_tol = EXACT_HIT_TOL * (1.0 + norm(x));

        let mut d_prev = initial_distance;
        let mut anchor_norm = norm(&self.points[self.anchor_index]);
        let mut trace = Vec::new();
        let mut stop_reason = StopReason::MaxItersExhausted;
        let budget = if initial_distance <= exact_tol {
            stop_reason = StopReason::ExactHit;
            0
        } else {
            config.max_iters
        };

        for _ in 0..budget {
            let Some((far, t)) = self.next_far_point(x, anchor_norm) else {
                stop_reason = StopReason::DegenerateModel;
                break;
            };
            let (anchor, far_point) = pair_mut(&mut self.points, self.anchor_index, far);
            for (f, a) in far_point.iter_mut().zip(anchor.iter()) {
                *f = a + t * (*f - a);
            }
            anchor_norm = norm(far_point);
            let d = dist(x, far_point);
            self.anchor_index = far;
            self.cycle_pointer = (far + 1) % n;
            trace.push(d);

            if d <= exact_tol {
                stop_reason = StopReason::ExactHit;
                break;
            }
            if relative_gap(d_prev, d) < config.delta0 {
                stop_reason = StopReason::GapBelowThreshold;
                break;
            }
            d_prev = d;
        }

        let iterations_used = trace.len();
        let representation = Vector::from(self.points.swap_remove(self.anchor_index));
        let distance = dist(x, &representation);
        if trace.is_empty() {
            trace.push(distance);
        }
        Ok(ProjectionResult {
            representation,
            distance,
            initial_distance,
            iterations_used,
            stop_reason,
            trace,
        })
    }

    /// Finds the next usable far column starting at the cycle pointer, returning it with the
    /// line position of the query's foot.
    fn next_far_point(&self, x: &[f64], anchor_norm: f64) -> Option<(usize, f64)> {
        let n = self.len();
        let anchor = &self.points[self.anchor_index];
        let min_len = DEGENERATE_TOL * (1.0 + anchor_norm);
        (0..n)
            .map(|step| (self.cycle_pointer + step) % n)
            .filter(|&cand| cand != self.anchor_index)
            .find_map(|cand| {
                let (num, len_sq) = line_terms(x, anchor, &self.points[cand]);
                (len_sq.sqrt() > min_len).then(|| (cand, num / len_sq))
            })
    }
}

fn pair_mut(points: &mut [Vec<f64>], a: usize, b: usize) -> (&[f64], &mut [f64]) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = points.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = points.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

/// `((x - a)ᵀ(b - a), ‖b - a‖²)` in one pass.
fn line_terms(x: &[f64], a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut num = 0.0;
    let mut len_sq = 0.0;
    for ((&xi, &ai), &bi) in x.iter().zip(a).zip(b) {
        let dir = bi - ai;
        num += (xi - ai) * dir;
        len_sq += dir * dir;
    }
    (num, len_sq)
}

/// Index of the model point nearest to `x`; ties go to the lowest index.
pub fn nearest_index(x: &[f64], model: &ClassModel) -> Result<usize> {
    if x.len() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: x.len(),
        });
    }
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in model.points.iter().enumerate() {
        let d = dist(x, p);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    Ok(best)
}

/// Orthogonal projection of `x` onto the infinite line through `anchor` and `other`.
///
/// Returns the position parameter `t` and the foot `anchor + t (other - anchor)`.
pub fn project_onto_line(x: &[f64], anchor: &[f64], other: &[f64]) -> Result<(f64, Vector)> {
    let q = anchor.len();
    for len in [x.len(), other.len()] {
        if len != q {
            return Err(Error::DimensionMismatch {
                expected: q,
                found: len,
            });
        }
    }
    let (num, len_sq) = line_terms(x, anchor, other);
    if len_sq.sqrt() <= DEGENERATE_TOL * (1.0 + norm(anchor)) {
        return Err(Error::DegenerateLine);
    }
    let t = num / len_sq;
    let p = anchor
        .iter()
        .zip(other)
        .map(|(a, b)| a + t * (b - a))
        .collect::<Vec<_>>();
    Ok((t, Vector::from(p)))
}

/// `|d_prev - d_curr| / (d_prev + d_curr)`, or 0 when both distances are 0.
pub fn relative_gap(d_prev: f64, d_curr: f64) -> f64 {
    let s = d_prev + d_curr;
    if s == 0.0 {
        0.0
    } else {
        (d_prev - d_curr).abs() / s
    }
}

/// Projection representation of `x` with respect to the columns of `class_samples` (q×N_c).
pub fn run_projection(
    x: &[f64],
    class_samples: &Matrix,
    config: &PrcConfig,
) -> Result<ProjectionResult> {
    if x.len() != class_samples.rows() {
        return Err(Error::DimensionMismatch {
            expected: class_samples.rows(),
            found: x.len(),
        });
    }
    ClassModel::from_matrix(class_samples).project(x, config)
}
