//! First-order optimality of "minimize perimeter subject to fixed area".
//!
//! Convention: `grad L = lambda * grad A`. The least-squares multiplier
//! `lambda_hat = <grad L, grad A> / <grad A, grad A>` turns the Lagrange
//! condition into a residual that vanishes exactly at critical polygons.
//! Alongside the residual, the report carries the regularity measures that
//! the condition forces at a critical point: equal edges, equal angles and
//! a constant `tan(theta_i / 2)`.

use serde::{Deserialize, Deserializer, Serialize};

use crate::geometry::{Polygon, Vec2};
use crate::gradients::GradientField;
use crate::{Error, Result, Scalar};

/// KKT residual and regularity diagnostics of one polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct KktReport<T> {
    pub lambda_hat: T,
    /// `|grad L - lambda_hat grad A|` over all `2n` coordinates.
    pub residual_norm: T,
    /// `residual_norm / |grad L|` (zero when `grad L` vanishes).
    pub residual_relative: T,
    /// `|w_i x v_i| / (|w_i| |v_i|)`; `None` where either vector is zero.
    pub per_vertex_misalignment: Vec<Option<T>>,
    pub edge_cv: T,
    pub angle_cv: T,
    /// `max - min` of `tan(theta_i / 2)`; infinite if any vertex has
    /// `theta_i >= pi`. Written as `null` in JSON.
    #[serde(deserialize_with = "null_as_infinity")]
    pub tan_half_spread: T,
}

fn null_as_infinity<'de, D, T>(de: D) -> std::result::Result<T, D::Error>
where
    D: Deserializer<'de>,
    T: Scalar,
{
    Ok(Option::<T>::deserialize(de)?.unwrap_or_else(T::infinity))
}

impl<T: Scalar> KktReport<T> {
    /// Worst per-vertex misalignment, ignoring undefined entries.
    pub fn max_misalignment(&self) -> T {
        self.per_vertex_misalignment
            .iter()
            .flatten()
            .fold(T::zero(), |m, &x| m.max(x))
    }
}

/// Least-squares multiplier for `grad L ~ lambda grad A`.
pub fn best_fit_lambda<T: Scalar>(grad_perim: &[Vec2<T>], grad_area: &[Vec2<T>]) -> Result<T> {
    if grad_perim.len() != grad_area.len() {
        return Err(Error::LengthMismatch(grad_perim.len(), grad_area.len()));
    }
    let num: T = grad_perim.iter().zip(grad_area).map(|(w, v)| w.dot(v)).sum();
    let den: T = grad_area.iter().map(Vec2::norm_sq).sum();
    if den == T::zero() {
        return Err(Error::ZeroAreaGradient);
    }
    Ok(num / den)
}

/// Population mean and standard deviation.
fn mean_and_std<T: Scalar>(xs: &[T]) -> (T, T) {
    let n = T::from_usize_lossy(xs.len());
    let mean = xs.iter().copied().sum::<T>() / n;
    let var = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / n;
    (mean, var.sqrt())
}

/// Coefficient of variation, `std / mean` over the whole population.
pub fn coefficient_of_variation<T: Scalar>(xs: &[T]) -> T {
    let (mean, std) = mean_and_std(xs);
    std / mean
}

/// Spread of `tan(theta_i / 2)`; infinite when some angle reaches `pi`.
pub fn tan_half_spread<T: Scalar>(angles: &[T]) -> T {
    if angles.iter().any(|&a| a >= T::PI() - T::angle_tol()) {
        return T::infinity();
    }
    let half = T::lit(0.5);
    let (lo, hi) = angles.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &a| {
        let t = (a * half).tan();
        (lo.min(t), hi.max(t))
    });
    hi - lo
}

pub fn kkt_residual<T: Scalar>(p: &Polygon<T>) -> Result<KktReport<T>> {
    let field = GradientField::compute(p);
    kkt_report_from_field(p, &field)
}

pub(crate) fn kkt_report_from_field<T: Scalar>(
    p: &Polygon<T>,
    field: &GradientField<T>,
) -> Result<KktReport<T>> {
    let (v, w) = (&field.area_grad, &field.perim_grad);
    let lambda_hat = best_fit_lambda(w, v)?;

    let residual_norm = w
        .iter()
        .zip(v)
        .map(|(wi, vi)| (*wi - *vi * lambda_hat).norm_sq())
        .sum::<T>()
        .sqrt();
    let grad_perim_norm = w.iter().map(Vec2::norm_sq).sum::<T>().sqrt();
    let residual_relative = if grad_perim_norm > T::zero() {
        residual_norm / grad_perim_norm
    } else {
        T::zero()
    };

    let per_vertex_misalignment = w
        .iter()
        .zip(v)
        .map(|(wi, vi)| {
            let scale = wi.norm() * vi.norm();
            (scale > T::zero()).then(|| wi.cross(vi).abs() / scale)
        })
        .collect();

    let angles = p.interior_angles();
    Ok(KktReport {
        lambda_hat,
        residual_norm,
        residual_relative,
        per_vertex_misalignment,
        edge_cv: coefficient_of_variation(&p.edge_lengths()),
        angle_cv: coefficient_of_variation(&angles),
        tan_half_spread: tan_half_spread(&angles),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VertexKind {
    Convex,
    Reflex,
    Straight,
}

/// Labels each vertex by its interior angle. A vertex is straight when its
/// perimeter gradient vanishes within `Scalar::angle_tol()` (equivalently
/// `|theta - pi|` is below that tolerance).
pub fn classify_vertices<T: Scalar>(p: &Polygon<T>) -> Vec<VertexKind> {
    let w = crate::gradients::perimeter_gradient(p);
    p.interior_angles()
        .into_iter()
        .zip(w)
        .map(|(theta, wi)| {
            if wi.norm() <= T::angle_tol() {
                VertexKind::Straight
            } else if theta < T::PI() {
                VertexKind::Convex
            } else {
                VertexKind::Reflex
            }
        })
        .collect()
}

/// Closed-form data of the regular `n`-gon with a given area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularReference<T> {
    pub n: usize,
    pub area: T,
    pub edge: T,
    /// Interior angle `(n - 2) pi / n`.
    pub angle: T,
    pub perimeter: T,
    /// `2 / (edge tan(angle / 2))`, the reciprocal of the apothem.
    pub lambda_star: T,
}

impl<T: Scalar> RegularReference<T> {
    /// Distance from the centre to an edge midpoint.
    pub fn apothem(&self) -> T {
        self.edge * T::lit(0.5) * (self.angle * T::lit(0.5)).tan()
    }

    /// The value `edge tan(angle / 2) / 4`, which is sometimes quoted as the
    /// multiplier. It does not satisfy `grad L = lambda grad A` (on the unit
    /// square it gives 1/4 instead of 2) and is kept only for comparison.
    pub fn quarter_edge_tan_half(&self) -> T {
        T::lit(0.25) * self.edge * (self.angle * T::lit(0.5)).tan()
    }
}

pub fn regular_reference<T: Scalar>(n: usize, area: T) -> Result<RegularReference<T>> {
    if n < 3 {
        return Err(Error::InvalidVertexCount(n));
    }
    if !area.is_positive_finite() {
        return Err(Error::NonPositiveArea(area.to_f64().unwrap_or(f64::NAN)));
    }
    let nf = T::from_usize_lossy(n);
    let angle = (nf - T::lit(2.0)) * T::PI() / nf;
    let tan_half = (angle * T::lit(0.5)).tan();
    let edge = (T::lit(4.0) * area / (nf * tan_half)).sqrt();
    Ok(RegularReference {
        n,
        area,
        edge,
        angle,
        perimeter: nf * edge,
        lambda_star: T::lit(2.0) / (edge * tan_half),
    })
}
