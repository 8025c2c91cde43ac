//! Analytic gradients of area and perimeter with respect to the `2n` vertex
//! coordinates, plus a central finite-difference oracle.
//!
//! For vertex `a_i` with neighbours `a_{i-1}`, `a_{i+1}`:
//!
//! * area: `v_i = 1/2 R(-pi/2) (a_{i+1} - a_{i-1})`, orthogonal to the chord
//!   `a_{i-1} a_{i+1}`, half its length, pointing outward on a CCW polygon;
//! * perimeter: `w_i = (a_i - a_{i-1}) / |a_i - a_{i-1}| + (a_i - a_{i+1}) / |a_i - a_{i+1}|`,
//!   the sum of two unit vectors, along the angle bisector with length
//!   `2 cos(theta_i / 2)`.

use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, Polygon, Vec2};
use crate::{Error, Result, Scalar};

/// Per-vertex gradients, indexed like the polygon's vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct GradientField<T> {
    /// Area gradient `v_i`.
    #[serde(rename = "v")]
    pub area_grad: Vec<Vec2<T>>,
    /// Perimeter gradient `w_i`.
    #[serde(rename = "w")]
    pub perim_grad: Vec<Vec2<T>>,
}

impl<T: Scalar> GradientField<T> {
    pub fn compute(p: &Polygon<T>) -> Self {
        Self {
            area_grad: area_gradient(p),
            perim_grad: perimeter_gradient(p),
        }
    }

    pub fn len(&self) -> usize {
        self.area_grad.len()
    }

    pub fn is_empty(&self) -> bool {
        self.area_grad.is_empty()
    }
}

pub fn area_gradient<T: Scalar>(p: &Polygon<T>) -> Vec<Vec2<T>> {
    let half = T::lit(0.5);
    (0..p.len())
        .map(|i| (p.vertex(i + 1) - p.vertex(p.prev_index(i))).rot_neg_quarter() * half)
        .collect()
}

/// Perimeter gradient at one vertex. Exactly zero when the vertex lies on the
/// open segment between its neighbours.
fn perimeter_gradient_at<T: Scalar>(prev: Point2<T>, cur: Point2<T>, next: Point2<T>) -> Vec2<T> {
    let from_prev = cur - prev;
    let from_next = cur - next;
    if from_prev.cross(&from_next) == T::zero() && from_prev.dot(&from_next) < T::zero() {
        return Vec2::zero();
    }
    from_prev / from_prev.norm() + from_next / from_next.norm()
}

/// Polygon invariants rule out zero-length edges, so this is total on
/// valid polygons.
pub fn perimeter_gradient<T: Scalar>(p: &Polygon<T>) -> Vec<Vec2<T>> {
    (0..p.len())
        .map(|i| perimeter_gradient_at(p.vertex(p.prev_index(i)), p.vertex(i), p.vertex(i + 1)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    Area,
    Perimeter,
}

impl Functional {
    pub fn eval<T: Scalar>(self, p: &Polygon<T>) -> T {
        match self {
            Functional::Area => p.signed_area(),
            Functional::Perimeter => p.perimeter(),
        }
    }
}

/// Central differences `(f(x + h e_k) - f(x - h e_k)) / 2h` over each of the
/// `2n` coordinates. Uses only function values.
///
/// Fails if `h` is not positive or if the stencil could push a vertex
/// onto a neighbour (shortest edge not longer than `2h`).
pub fn fd_gradient<T: Scalar>(functional: Functional, p: &Polygon<T>, h: T) -> Result<Vec<Vec2<T>>> {
    if !h.is_positive_finite() {
        return Err(Error::InvalidStep(h.to_f64().unwrap_or(f64::NAN)));
    }
    let min_edge = p.min_edge();
    if min_edge <= T::lit(2.0) * h {
        return Err(Error::InvalidPerturbation {
            step: h.to_f64().unwrap_or(f64::NAN),
            min_edge: min_edge.to_f64().unwrap_or(f64::NAN),
        });
    }
    let base = p.vertices().to_vec();
    let eval_shifted = |i: usize, shift: Vec2<T>| -> Result<T> {
        let mut verts = base.clone();
        verts[i] = verts[i] + shift;
        Ok(functional.eval(&Polygon::with_orientation(verts)?))
    };
    let two_h = T::lit(2.0) * h;
    let mut grad = Vec::with_capacity(base.len());
    for i in 0..base.len() {
        let ex = Vec2::new(h, T::zero());
        let ey = Vec2::new(T::zero(), h);
        let gx = (eval_shifted(i, ex)? - eval_shifted(i, -ex)?) / two_h;
        let gy = (eval_shifted(i, ey)? - eval_shifted(i, -ey)?) / two_h;
        grad.push(Vec2::new(gx, gy));
    }
    Ok(grad)
}

/// Outcome of comparing analytic and finite-difference gradients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradCheckReport<T> {
    /// Largest componentwise absolute error of the area gradient.
    pub max_abs_err_area: T,
    /// Largest componentwise `|analytic - fd| / max(1, |analytic|)` of the
    /// perimeter gradient.
    pub max_rel_err_perim: T,
    pub pass: bool,
}

pub fn gradcheck<T: Scalar>(p: &Polygon<T>, h: T, tol: T) -> Result<GradCheckReport<T>> {
    let fd_area = fd_gradient(Functional::Area, p, h)?;
    let fd_perim = fd_gradient(Functional::Perimeter, p, h)?;
    let field = GradientField::compute(p);

    let mut max_abs_err_area = T::zero();
    for (a, f) in field.area_grad.iter().zip(&fd_area) {
        max_abs_err_area = max_abs_err_area
            .max((a.dx - f.dx).abs())
            .max((a.dy - f.dy).abs());
    }
    let rel = |a: T, f: T| (a - f).abs() / a.abs().max(T::one());
    let mut max_rel_err_perim = T::zero();
    for (a, f) in field.perim_grad.iter().zip(&fd_perim) {
        max_rel_err_perim = max_rel_err_perim.max(rel(a.dx, f.dx)).max(rel(a.dy, f.dy));
    }
    Ok(GradCheckReport {
        max_abs_err_area,
        max_rel_err_perim,
        pass: max_abs_err_area <= tol && max_rel_err_perim <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular_ngon;

    fn poly(c: &[(f64, f64)]) -> Polygon<f64> {
        Polygon::from_xy(c).unwrap()
    }

    fn unit_square() -> Polygon<f64> {
        poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
    }

    #[test]
    fn square_area_gradient_matches_fd() {
        let v = area_gradient(&unit_square());
        let fd = fd_gradient(Functional::Area, &unit_square(), 1e-6).unwrap();
        assert_eq!(v[1], Vec2::new(0.5, -0.5));
        for (a, f) in v.iter().zip(&fd) {
            assert!((a.dx - f.dx).abs() <= 1e-9 && (a.dy - f.dy).abs() <= 1e-9);
        }
    }

    #[test]
    fn square_perimeter_gradient_matches_fd() {
        let w = perimeter_gradient(&unit_square());
        assert_eq!(w[1], Vec2::new(1.0, -1.0));
        assert!((w[1].norm() - 2.0 * (std::f64::consts::FRAC_PI_4).cos()).abs() < 1e-15);
        let fd = fd_gradient(Functional::Perimeter, &unit_square(), 1e-6).unwrap();
        for (a, f) in w.iter().zip(&fd) {
            assert!((a.dx - f.dx).abs() <= 1e-6 * a.dx.abs().max(1.0));
            assert!((a.dy - f.dy).abs() <= 1e-6 * a.dy.abs().max(1.0));
        }
    }

    #[test]
    fn collinear_vertex() {
        let p = poly(&[(0., 0.), (1., 0.), (2., 0.), (1., 1.)]);
        let v = area_gradient(&p);
        let w = perimeter_gradient(&p);
        assert_eq!(v[1], Vec2::new(0.0, -1.0));
        assert_eq!(w[1], Vec2::zero());
        let fd = fd_gradient(Functional::Area, &p, 1e-6).unwrap();
        assert!((fd[1].dx - 0.0).abs() < 1e-9 && (fd[1].dy + 1.0).abs() < 1e-9);
        // inexact unit vectors still cancel to exactly zero
        let q = poly(&[(0., 0.), (1., 1.), (3., 3.), (0., 3.)]);
        assert_eq!(perimeter_gradient(&q)[1], Vec2::zero());
    }

    #[test]
    fn equilateral_apex_magnitude() {
        let tri = poly(&[(0., 0.), (1., 0.), (0.5, 3f64.sqrt() / 2.)]);
        let w = perimeter_gradient(&tri);
        for wi in &w {
            assert!((wi.norm() - 3f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn sums_vanish() {
        let p = poly(&[(0., 0.), (3., -1.), (4., 2.), (1.5, 0.8), (0.2, 3.)]);
        let field = GradientField::compute(&p);
        let sv = field.area_grad.iter().fold(Vec2::zero(), |s, v| s + *v);
        let sw = field.perim_grad.iter().fold(Vec2::zero(), |s, v| s + *v);
        assert!(sv.norm() < 1e-12 && sw.norm() < 1e-12);
    }

    #[test]
    fn fd_area_scales_linearly() {
        let p = poly(&[(0., 0.), (3., -1.), (4., 2.), (1.5, 0.8), (0.2, 3.)]);
        let big = p.scaled_about(Point2::default(), 10.0);
        let g = fd_gradient(Functional::Area, &p, 1e-6).unwrap();
        let g10 = fd_gradient(Functional::Area, &big, 1e-6).unwrap();
        for (a, b) in g.iter().zip(&g10) {
            assert!((b.dx - 10.0 * a.dx).abs() < 1e-7 && (b.dy - 10.0 * a.dy).abs() < 1e-7);
        }
    }

    #[test]
    fn gradcheck_passes_and_rejects() {
        let r = gradcheck(&unit_square(), 1e-6, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
        let tiny = poly(&[(0., 0.), (1., 0.), (1. + 1e-9, 1e-9), (1., 1.), (0., 1.)]);
        assert!(matches!(
            gradcheck(&tiny, 1e-6, 1e-6),
            Err(Error::InvalidPerturbation { .. })
        ));
        assert_eq!(
            fd_gradient(Functional::Area, &unit_square(), 0.0).unwrap_err(),
            Error::InvalidStep(0.0)
        );
    }

    #[test]
    fn json_layout() {
        let field = GradientField::compute(&unit_square());
        let s = serde_json::to_string(&field).unwrap();
        assert!(s.starts_with("{\"v\":[[-0.5,-0.5],[0.5,-0.5]"), "{s}");
        let back: GradientField<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, field);
    }

    #[test]
    fn f32_gradients() {
        let p = regular_ngon::<f32>(6, 1.0, Point2::default(), 0.0).unwrap();
        let field = GradientField::compute(&p);
        for (v, w) in field.area_grad.iter().zip(&field.perim_grad) {
            let c = v.cross(w).abs() / (v.norm() * w.norm());
            assert!(c < 1e-5);
        }
    }
}
