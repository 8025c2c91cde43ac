//! Orientation and segment-intersection predicates.
//!
//! Plain floating point with a relative epsilon: the cross product of
//! `b - a` and `c - a` is treated as zero when it is below
//! `Scalar::orient_eps() * |b - a| * |c - a|`.

use std::cmp::Ordering;

use super::{Point2, Vec2};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Orientation of the turn `a -> b -> c` measured on `b - a` and `c - a`.
pub fn orient<T: Scalar>(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> Orientation {
    orient_vectors(b - a, c - a)
}

/// Orientation of `v` relative to `u`.
pub fn orient_vectors<T: Scalar>(u: Vec2<T>, v: Vec2<T>) -> Orientation {
    let cross = u.cross(&v);
    let scale = u.norm() * v.norm();
    if cross.abs() <= T::orient_eps() * scale {
        Orientation::Collinear
    } else if cross > T::zero() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// True if `p` lies on the closed segment `[a, b]`, given that the three
/// points were already found collinear.
fn within_box<T: Scalar>(a: Point2<T>, b: Point2<T>, p: Point2<T>) -> bool {
    let in_range = |lo: T, hi: T, v: T| {
        let (lo, hi) = match lo.partial_cmp(&hi) {
            Some(Ordering::Greater) => (hi, lo),
            _ => (lo, hi),
        };
        let slack = T::orient_eps() * (hi - lo).abs().max(T::one());
        v >= lo - slack && v <= hi + slack
    };
    in_range(a.x, b.x, p.x) && in_range(a.y, b.y, p.y)
}

/// Closed-segment intersection test (touching counts).
pub fn segments_intersect<T: Scalar>(
    p1: Point2<T>,
    q1: Point2<T>,
    p2: Point2<T>,
    q2: Point2<T>,
) -> bool {
    use Orientation::Collinear;
    let o1 = orient(p1, q1, p2);
    let o2 = orient(p1, q1, q2);
    let o3 = orient(p2, q2, p1);
    let o4 = orient(p2, q2, q1);

    if o1 != o2 && o3 != o4 && o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear
    {
        return true;
    }
    (o1 == Collinear && within_box(p1, q1, p2))
        || (o2 == Collinear && within_box(p1, q1, q2))
        || (o3 == Collinear && within_box(p2, q2, p1))
        || (o4 == Collinear && within_box(p2, q2, q1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orient(p(0., 0.), p(1., 0.), p(0., 1.)), Orientation::CounterClockwise);
        assert_eq!(orient(p(0., 0.), p(0., 1.), p(1., 0.)), Orientation::Clockwise);
        assert_eq!(orient(p(0., 0.), p(1., 1.), p(2., 2.)), Orientation::Collinear);
        assert_eq!(orient(p(0., 0.), p(1., 0.), p(2., 1e-14)), Orientation::Collinear);
    }

    #[test]
    fn crossing_and_touching() {
        assert!(segments_intersect(p(0., 0.), p(1., 1.), p(1., 0.), p(0., 1.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.)));
        // T-junction
        assert!(segments_intersect(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)));
        // collinear, disjoint
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)));
        // collinear, overlapping
        assert!(segments_intersect(p(0., 0.), p(2., 0.), p(1., 0.), p(3., 0.)));
    }
}
