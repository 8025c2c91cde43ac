use super::predicates::{orient_vectors, segments_intersect, Orientation};
use super::{Point2, Vec2};
use crate::compensated::Compensated;
use crate::{Error, Result, Scalar};

/// Shoelace signed area of a closed vertex loop; positive when the loop is
/// counter-clockwise. Accumulated in double-word arithmetic.
pub fn signed_area<T: Scalar>(vertices: &[Point2<T>]) -> T {
    signed_area_compensated(vertices).value()
}

pub(crate) fn signed_area_compensated<T: Scalar>(vertices: &[Point2<T>]) -> Compensated<T> {
    let n = vertices.len();
    let mut twice = Compensated::zero();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        twice = twice
            .add(Compensated::prod(a.x, b.y))
            .sub(Compensated::prod(b.x, a.y));
    }
    twice.scale(T::lit(0.5))
}

pub(crate) fn perimeter_compensated<T: Scalar>(vertices: &[Point2<T>]) -> Compensated<T> {
    let n = vertices.len();
    let mut total = Compensated::zero();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let dx = Compensated::diff(b.x, a.x);
        let dy = Compensated::diff(b.y, a.y);
        total = total.add(dx.mul(dx).add(dy.mul(dy)).sqrt());
    }
    total
}

/// Result of the convexity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convexity {
    /// No turn goes against the polygon's orientation and the boundary
    /// winds exactly once. Straight (collinear) vertices are allowed.
    pub convex: bool,
    /// At least one vertex sits on the segment joining its neighbours.
    pub has_collinear_triple: bool,
}

/// A closed polygon `a_0, ..., a_{n-1}` with indices taken modulo `n`.
///
/// Construction guarantees `n >= 3`, finite coordinates and no coincident
/// consecutive vertices. Collinear vertices are allowed. [`Polygon::new`]
/// normalizes to counter-clockwise order and remembers whether it had to
/// reverse the input.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<T> {
    vertices: Vec<Point2<T>>,
    flipped: bool,
}

impl<T: Scalar> Polygon<T> {
    /// Validates and reorders to counter-clockwise if the signed area is
    /// negative.
    pub fn new(mut vertices: Vec<Point2<T>>) -> Result<Self> {
        validate(&vertices)?;
        let flipped = signed_area(&vertices) < T::zero();
        if flipped {
            vertices.reverse();
        }
        Ok(Self { vertices, flipped })
    }

    /// Validates but keeps the given vertex order, whatever its orientation.
    pub fn with_orientation(vertices: Vec<Point2<T>>) -> Result<Self> {
        validate(&vertices)?;
        Ok(Self {
            vertices,
            flipped: false,
        })
    }

    pub fn from_xy(coords: &[(T, T)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2<T>> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; a valid polygon has at least three vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True if [`Polygon::new`] reversed the input to make it CCW.
    pub fn was_flipped(&self) -> bool {
        self.flipped
    }

    /// Vertex `i` modulo `n`.
    pub fn vertex(&self, i: usize) -> Point2<T> {
        self.vertices[i % self.len()]
    }

    pub fn prev_index(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// Edge vector `a_{i+1} - a_i`.
    pub fn edge(&self, i: usize) -> Vec2<T> {
        self.vertex(i + 1) - self.vertex(i)
    }

    pub fn edge_lengths(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.edge(i).norm()).collect()
    }

    pub fn min_edge(&self) -> T {
        self.edge_lengths()
            .into_iter()
            .fold(T::infinity(), |m, l| m.min(l))
    }

    pub fn mean_edge(&self) -> T {
        self.perimeter() / T::from_usize_lossy(self.len())
    }

    pub fn signed_area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    /// Sum of edge lengths, accumulated in double-word arithmetic so the
    /// result is accurate to the last bit in practice.
    pub fn perimeter(&self) -> T {
        perimeter_compensated(&self.vertices).value()
    }

    /// Area centroid; falls back to the vertex mean for zero-area loops.
    pub fn centroid(&self) -> Point2<T> {
        let n = self.len();
        let a = self.signed_area();
        if a == T::zero() {
            let inv = T::one() / T::from_usize_lossy(n);
            let (sx, sy) = self
                .vertices
                .iter()
                .fold((T::zero(), T::zero()), |(sx, sy), p| (sx + p.x, sy + p.y));
            return Point2::new(sx * inv, sy * inv);
        }
        // shift to the first vertex to limit cancellation
        let o = self.vertices[0];
        let (mut cx, mut cy) = (T::zero(), T::zero());
        for i in 0..n {
            let p = self.vertex(i) - o;
            let q = self.vertex(i + 1) - o;
            let c = p.cross(&q);
            cx += (p.dx + q.dx) * c;
            cy += (p.dy + q.dy) * c;
        }
        let k = T::one() / (T::lit(6.0) * a);
        Point2::new(o.x + cx * k, o.y + cy * k)
    }

    /// Oriented turn angle at vertex `i`, in `(-pi, pi]`; positive for a
    /// left turn.
    fn turn(&self, i: usize) -> T {
        let e_in = self.vertex(i) - self.vertex(self.prev_index(i));
        let e_out = self.vertex(i + 1) - self.vertex(i);
        e_in.cross(&e_out).atan2(e_in.dot(&e_out))
    }

    /// Interior angle at vertex `i`, in `[0, 2pi]`, measured on the inside
    /// of the polygon (reflex vertices give values above pi).
    pub fn interior_angle(&self, i: usize) -> Result<T> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.len(),
            });
        }
        Ok(self.interior_angle_unchecked(i))
    }

    fn interior_angle_unchecked(&self, i: usize) -> T {
        let turn = self.turn(i);
        if self.signed_area() >= T::zero() {
            T::PI() - turn
        } else {
            T::PI() + turn
        }
    }

    pub fn interior_angles(&self) -> Vec<T> {
        (0..self.len())
            .map(|i| self.interior_angle_unchecked(i))
            .collect()
    }

    /// True iff vertex `i` lies strictly between its neighbours on a line.
    pub fn is_straight(&self, i: usize) -> bool {
        let e_in = self.vertex(i) - self.vertex(self.prev_index(i));
        let e_out = self.vertex(i + 1) - self.vertex(i);
        orient_vectors(e_in, e_out) == Orientation::Collinear && e_in.dot(&e_out) > T::zero()
    }

    pub fn convexity(&self) -> Convexity {
        let n = self.len();
        let mut has_collinear_triple = false;
        let mut saw_left = false;
        let mut saw_right = false;
        let mut folds = false;
        let mut total_turn = T::zero();
        for i in 0..n {
            let e_in = self.vertex(i) - self.vertex(self.prev_index(i));
            let e_out = self.vertex(i + 1) - self.vertex(i);
            match orient_vectors(e_in, e_out) {
                Orientation::CounterClockwise => saw_left = true,
                Orientation::Clockwise => saw_right = true,
                Orientation::Collinear => {
                    if e_in.dot(&e_out) > T::zero() {
                        has_collinear_triple = true;
                    } else {
                        folds = true;
                    }
                }
            }
            total_turn += self.turn(i);
        }
        let winds_once = (total_turn.abs() - T::TAU()).abs() <= T::lit(1e-6);
        Convexity {
            convex: !folds && (saw_left != saw_right) && winds_once,
            has_collinear_triple,
        }
    }

    pub fn is_convex(&self) -> bool {
        self.convexity().convex
    }

    pub fn has_collinear_triple(&self) -> bool {
        self.convexity().has_collinear_triple
    }

    /// True iff non-adjacent edges are disjoint and adjacent edges share
    /// only their common vertex. O(n^2).
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            // adjacent pair (i-1, i): reject a fold back along the same line
            let e_in = self.vertex(i) - self.vertex(self.prev_index(i));
            let e_out = self.vertex(i + 1) - self.vertex(i);
            if orient_vectors(e_in, e_out) == Orientation::Collinear && e_in.dot(&e_out) <= T::zero()
            {
                return false;
            }
        }
        for i in 0..n {
            let (p1, q1) = (self.vertex(i), self.vertex(i + 1));
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (p2, q2) = (self.vertex(j), self.vertex(j + 1));
                if segments_intersect(p1, q1, p2, q2) {
                    return false;
                }
            }
        }
        true
    }

    pub fn translated(&self, by: Vec2<T>) -> Self {
        self.map_points(|p| p + by)
    }

    /// Uniform scaling about `center`. `factor` must be positive so the
    /// result stays valid and keeps its orientation.
    pub fn scaled_about(&self, center: Point2<T>, factor: T) -> Self {
        self.map_points(|p| center + (p - center) * factor)
    }

    pub fn rotated_about(&self, center: Point2<T>, theta: T) -> Self {
        self.map_points(|p| center + (p - center).rotate(theta))
    }

    /// Same loop traversed the other way; keeps the reversed orientation.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            flipped: false,
        }
    }

    /// Maps every vertex through `f`, re-validating the result.
    pub fn try_map_points(&self, f: impl Fn(Point2<T>) -> Point2<T>) -> Result<Self> {
        Self::with_orientation(self.vertices.iter().map(|&p| f(p)).collect())
    }

    // Similarity transforms keep validity, so no re-check is needed.
    fn map_points(&self, f: impl Fn(Point2<T>) -> Point2<T>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            flipped: self.flipped,
        }
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(b));
            }
        }
        d
    }
}

fn validate<T: Scalar>(vertices: &[Point2<T>]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        if vertices[i] == vertices[j] {
            return Err(Error::ZeroLengthEdge(i, j));
        }
    }
    Ok(())
}

/// Counter-clockwise regular `n`-gon of the given area:
/// vertex `k` is `center + R (cos(phase + 2 pi k / n), sin(phase + 2 pi k / n))`
/// with circumradius `R = sqrt(2 area / (n sin(2 pi / n)))`.
pub fn regular_ngon<T: Scalar>(n: usize, area: T, center: Point2<T>, phase: T) -> Result<Polygon<T>> {
    if n < 3 {
        return Err(Error::InvalidVertexCount(n));
    }
    if !area.is_positive_finite() {
        return Err(Error::NonPositiveArea(area.to_f64().unwrap_or(f64::NAN)));
    }
    let nf = T::from_usize_lossy(n);
    let step = T::TAU() / nf;
    let radius = (T::lit(2.0) * area / (nf * step.sin())).sqrt();
    let vertices = (0..n)
        .map(|k| {
            let (s, c) = (phase + step * T::from_usize_lossy(k)).sin_cos();
            Point2::new(center.x + radius * c, center.y + radius * s)
        })
        .collect();
    Polygon::new(vertices)
}
