//! Polygon model and elementary functionals: shoelace area, perimeter,
//! interior angles, convexity, simplicity, convex hull and regular polygons.

mod hull;
mod point;
mod polygon;
pub mod predicates;

pub use hull::convex_hull;
pub use point::{rotate, Point2, Vec2};
pub use polygon::{regular_ngon, signed_area, Convexity, Polygon};
pub(crate) use polygon::{perimeter_compensated, signed_area_compensated};
