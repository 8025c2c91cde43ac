//! Projected-gradient minimization of perimeter at fixed area.
//!
//! Each step moves along `d = -(grad L - lambda_hat grad A)`, which is
//! orthogonal to `grad A` to first order. It then restores the area exactly
//! by a similarity scaling about the centroid, and a candidate is kept only
//! if it is simple, keeps every edge above a fraction of the mean edge, and
//! passes an Armijo sufficient-decrease test.

use serde::{Deserialize, Serialize};

use crate::compensated::Compensated;
use crate::geometry::{perimeter_compensated, signed_area_compensated, Polygon, Vec2};
use crate::gradients::GradientField;
use crate::optimality::{kkt_report_from_field, KktReport};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct OptimizerConfig<T> {
    pub area_target: T,
    /// Upper bound on step attempts (accepted or rejected).
    pub max_iters: usize,
    /// Initial step length in length units; `None` means a tenth of the
    /// starting polygon's mean edge.
    pub step_init: Option<T>,
    pub armijo_c: T,
    pub armijo_shrink: T,
    /// Stop once `residual_relative` is at or below this.
    pub kkt_tol: T,
    /// Reject steps that make an edge shorter than this fraction of the
    /// mean edge.
    pub min_edge_frac: T,
    /// Replace the iterate by its convex hull every this many iterations
    /// (0 disables).
    pub convexify_every: usize,
    /// Seed for polygon generators; the solver itself is deterministic.
    pub seed: u64,
}

impl<T: Scalar> Default for OptimizerConfig<T> {
    fn default() -> Self {
        Self {
            area_target: T::one(),
            max_iters: 10_000,
            step_init: None,
            armijo_c: T::lit(1e-4),
            armijo_shrink: T::lit(0.5),
            kkt_tol: T::default_kkt_tol(),
            min_edge_frac: T::lit(1e-3),
            convexify_every: 0,
            seed: 0,
        }
    }
}

impl<T: Scalar> OptimizerConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: T| x > T::zero() && x.is_finite();
        let open_unit = |x: T| x > T::zero() && x < T::one();
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !positive(self.area_target) {
            return bad("area_target must be positive");
        }
        if let Some(s) = self.step_init {
            if !positive(s) {
                return bad("step_init must be positive");
            }
        }
        if !open_unit(self.armijo_c) {
            return bad("armijo_c must lie in (0, 1)");
        }
        if !open_unit(self.armijo_shrink) {
            return bad("armijo_shrink must lie in (0, 1)");
        }
        if !positive(self.kkt_tol) {
            return bad("kkt_tol must be positive");
        }
        if !positive(self.min_edge_frac) {
            return bad("min_edge_frac must be positive");
        }
        Ok(())
    }
}

fn normalized_perimeter_compensated<T: Scalar>(p: &Polygon<T>, area_target: T) -> Compensated<T> {
    let perimeter = perimeter_compensated(p.vertices());
    let ratio = Compensated::from(area_target).div(signed_area_compensated(p.vertices()));
    perimeter.mul(ratio.sqrt())
}

/// Perimeter of `p` after rescaling it to exactly `area_target`:
/// `L sqrt(area_target / A)`.
///
/// Similarity-invariant, so the rounding left by the area projection does
/// not show up in it. For an iterate on the constraint it agrees with
/// `p.perimeter()` to a few units in the last place.
pub fn normalized_perimeter<T: Scalar>(p: &Polygon<T>, area_target: T) -> T {
    normalized_perimeter_compensated(p, area_target).value()
}

/// One row of the optimization trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord<T> {
    pub iter: usize,
    /// [`normalized_perimeter`] of the iterate; this is the merit the line
    /// search decreases.
    pub perimeter: T,
    pub area: T,
    pub residual_relative: T,
    pub lambda_hat: T,
    pub step_len: T,
    pub edge_cv: T,
    pub angle_cv: T,
}

impl<T: Scalar> IterationRecord<T> {
    fn new(iter: usize, p: &Polygon<T>, area_target: T, report: &KktReport<T>, step_len: T) -> Self {
        Self {
            iter,
            perimeter: normalized_perimeter(p, area_target),
            area: p.signed_area(),
            residual_relative: report.residual_relative,
            lambda_hat: report.lambda_hat,
            step_len,
            edge_cv: report.edge_cv,
            angle_cv: report.angle_cv,
        }
    }
}

/// Similarity scaling about the centroid onto the target area.
pub fn project_area<T: Scalar>(p: &Polygon<T>, area_target: T) -> Result<Polygon<T>> {
    let area = p.signed_area();
    if !area.is_positive_finite() {
        return Err(Error::NonPositiveArea(area.to_f64().unwrap_or(f64::NAN)));
    }
    if !area_target.is_positive_finite() {
        return Err(Error::NonPositiveArea(area_target.to_f64().unwrap_or(f64::NAN)));
    }
    if area == area_target {
        return Ok(p.clone());
    }
    let factor = (area_target / area).sqrt();
    Ok(p.scaled_about(p.centroid(), factor))
}

fn direction_from_field<T: Scalar>(field: &GradientField<T>, lambda_hat: T) -> Vec<Vec2<T>> {
    field
        .perim_grad
        .iter()
        .zip(&field.area_grad)
        .map(|(w, v)| -(*w - *v * lambda_hat))
        .collect()
}

/// `d_i = -(w_i - lambda_hat v_i)`: the negative KKT residual, orthogonal to
/// the area gradient.
pub fn descent_direction<T: Scalar>(p: &Polygon<T>) -> Result<Vec<Vec2<T>>> {
    let field = GradientField::compute(p);
    let lambda = crate::optimality::best_fit_lambda(&field.perim_grad, &field.area_grad)?;
    Ok(direction_from_field(&field, lambda))
}

/// Gradients, report and direction for one iterate.
struct Analysis<T> {
    report: KktReport<T>,
    direction: Vec<Vec2<T>>,
    direction_norm_sq: T,
    grad_perim_norm: T,
}

fn analyze<T: Scalar>(p: &Polygon<T>) -> Result<Analysis<T>> {
    let field = GradientField::compute(p);
    let report = kkt_report_from_field(p, &field)?;
    let direction = direction_from_field(&field, report.lambda_hat);
    let direction_norm_sq = direction.iter().map(Vec2::norm_sq).sum();
    let grad_perim_norm = field.perim_grad.iter().map(Vec2::norm_sq).sum::<T>().sqrt();
    Ok(Analysis {
        report,
        direction,
        direction_norm_sq,
        grad_perim_norm,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<T> {
    pub accepted: bool,
    /// The accepted candidate, or the input polygon on rejection.
    pub polygon: Polygon<T>,
    /// Diagnostics of `polygon`.
    pub record: IterationRecord<T>,
}

/// Tries one projected step of length `step_len` from `p`.
///
/// `p` should already have area `cfg.area_target`.
pub fn step<T: Scalar>(p: &Polygon<T>, cfg: &OptimizerConfig<T>, step_len: T) -> Result<StepOutcome<T>> {
    let here = analyze(p)?;
    let (accepted, polygon) = match try_step(p, &here, cfg, step_len) {
        Some(candidate) => (true, candidate),
        None => (false, p.clone()),
    };
    let report = if accepted {
        analyze(&polygon)?.report
    } else {
        here.report
    };
    let record = IterationRecord::new(0, &polygon, cfg.area_target, &report, step_len);
    Ok(StepOutcome {
        accepted,
        polygon,
        record,
    })
}

/// Candidate polygon if the step is accepted.
fn try_step<T: Scalar>(
    p: &Polygon<T>,
    here: &Analysis<T>,
    cfg: &OptimizerConfig<T>,
    step_len: T,
) -> Option<Polygon<T>> {
    // Direction at round-off level: the iterate is already critical.
    if here.direction_norm_sq.sqrt() <= T::lit(64.0) * T::epsilon() * here.grad_perim_norm {
        return Some(p.clone());
    }

    let moved: Vec<_> = p
        .vertices()
        .iter()
        .zip(&here.direction)
        .map(|(&a, &d)| a + d * step_len)
        .collect();
    let moved = Polygon::with_orientation(moved).ok()?;
    if !moved.signed_area().is_positive_finite() {
        return None;
    }
    let candidate = project_area(&moved, cfg.area_target).ok()?;
    if !candidate.is_simple() {
        return None;
    }
    if candidate.min_edge() < cfg.min_edge_frac * candidate.mean_edge() {
        return None;
    }

    let change = normalized_perimeter_compensated(&candidate, cfg.area_target)
        .sub(normalized_perimeter_compensated(p, cfg.area_target))
        .value();
    let predicted = cfg.armijo_c * step_len * here.direction_norm_sq;
    (change <= -predicted).then_some(candidate)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult<T> {
    pub polygon: Polygon<T>,
    /// Starting record (`iter = 0`) followed by one record per accepted step.
    pub trace: Vec<IterationRecord<T>>,
    pub converged: bool,
    /// Step attempts performed.
    pub iterations: usize,
}

impl<T: Scalar> OptimizeResult<T> {
    pub fn final_record(&self) -> &IterationRecord<T> {
        self.trace.last().expect("trace holds at least the start")
    }
}

/// Minimizes perimeter over polygons with `cfg.area_target` area, starting
/// from `p0` (which is first projected onto that area).
pub fn optimize<T: Scalar>(p0: &Polygon<T>, cfg: &OptimizerConfig<T>) -> Result<OptimizeResult<T>> {
    cfg.validate()?;
    if !p0.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = p0.len();
    let mut polygon = project_area(p0, cfg.area_target)?;
    let step_init = cfg
        .step_init
        .unwrap_or_else(|| T::lit(0.1) * polygon.mean_edge());
    let mut step_len = step_init;

    let mut here = analyze(&polygon)?;
    let mut trace = vec![IterationRecord::new(0, &polygon, cfg.area_target, &here.report, T::zero())];
    let mut converged = here.report.residual_relative <= cfg.kkt_tol;
    let mut iterations = 0;

    while !converged && iterations < cfg.max_iters {
        iterations += 1;

        if cfg.convexify_every > 0 && iterations % cfg.convexify_every == 0 && !polygon.is_convex() {
            let hull = convexify(&polygon, cfg.area_target)?;
            let padded = pad_with_midpoints(hull, n);
            // re-pad can land on the target only up to rounding
            polygon = project_area(&padded, cfg.area_target)?;
            here = analyze(&polygon)?;
            step_len = step_init;
            trace.push(IterationRecord::new(iterations, &polygon, cfg.area_target, &here.report, T::zero()));
            converged = here.report.residual_relative <= cfg.kkt_tol;
            continue;
        }

        match try_step(&polygon, &here, cfg, step_len) {
            Some(candidate) => {
                polygon = candidate;
                here = analyze(&polygon)?;
                trace.push(IterationRecord::new(iterations, &polygon, cfg.area_target, &here.report, step_len));
                converged = here.report.residual_relative <= cfg.kkt_tol;
                step_len = step_init;
            }
            None => {
                step_len *= cfg.armijo_shrink;
                if step_len < T::epsilon() * step_init {
                    step_len = step_init;
                }
            }
        }
    }

    Ok(OptimizeResult {
        polygon,
        trace,
        converged,
        iterations,
    })
}

/// Convex hull of `p`, rescaled to `area_target`. May have fewer vertices
/// than `p`; see [`pad_with_midpoints`].
pub fn convexify<T: Scalar>(p: &Polygon<T>, area_target: T) -> Result<Polygon<T>> {
    let hull = p.convex_hull()?;
    project_area(&hull, area_target)
}

/// Inserts the midpoint of edge `(a_i, a_{i+1})` as a new vertex after `a_i`.
pub fn insert_midpoint<T: Scalar>(p: &Polygon<T>, i: usize) -> Result<Polygon<T>> {
    if i >= p.len() {
        return Err(Error::IndexOutOfRange { index: i, n: p.len() });
    }
    let mid = p.vertex(i).midpoint(&p.vertex(i + 1));
    let mut vertices = p.vertices().to_vec();
    vertices.insert(i + 1, mid);
    Polygon::with_orientation(vertices)
}

/// Index of the longest edge, ties to the lowest index.
pub fn longest_edge<T: Scalar>(p: &Polygon<T>) -> usize {
    let lengths = p.edge_lengths();
    let mut best = 0;
    for (i, &l) in lengths.iter().enumerate() {
        if l > lengths[best] {
            best = i;
        }
    }
    best
}

/// Splits longest edges at their midpoints until `p` has `n` vertices.
pub fn pad_with_midpoints<T: Scalar>(mut p: Polygon<T>, n: usize) -> Polygon<T> {
    while p.len() < n {
        let i = longest_edge(&p);
        p = insert_midpoint(&p, i).expect("midpoint of a valid edge is a valid vertex");
    }
    p
}
