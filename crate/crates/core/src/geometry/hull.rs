use std::cmp::Ordering;

use super::predicates::{orient, Orientation};
use super::{Point2, Polygon};
use crate::{Error, Result, Scalar};

/// Counter-clockwise convex hull (Andrew's monotone chain) with collinear
/// boundary points dropped.
///
/// The output starts at the hull vertex that appears first in `points`, so
/// the hull of an already convex, collinear-free CCW polygon is that polygon.
pub fn convex_hull<T: Scalar>(points: &[Point2<T>]) -> Result<Polygon<T>> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.x.partial_cmp(&q.x)
            .unwrap_or(Ordering::Equal)
            .then(p.y.partial_cmp(&q.y).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() < 3 {
        return Err(Error::Collinear);
    }

    let keeps_left = |chain: &[usize], next: usize| {
        let k = chain.len();
        orient(points[chain[k - 2]], points[chain[k - 1]], points[next])
            == Orientation::CounterClockwise
    };

    let mut lower: Vec<usize> = Vec::with_capacity(order.len());
    for &i in &order {
        while lower.len() >= 2 && !keeps_left(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(order.len());
    for &i in order.iter().rev() {
        while upper.len() >= 2 && !keeps_left(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::Collinear);
    }

    let start = lower
        .iter()
        .enumerate()
        .min_by_key(|&(_, &idx)| idx)
        .map(|(k, _)| k)
        .unwrap_or(0);
    lower.rotate_left(start);
    Polygon::new(lower.into_iter().map(|i| points[i]).collect())
}

impl<T: Scalar> Polygon<T> {
    pub fn convex_hull(&self) -> Result<Polygon<T>> {
        convex_hull(self.vertices())
    }
}
