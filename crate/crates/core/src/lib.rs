//! Polygon isoperimetric toolkit.
//!
//! Analytic area and perimeter gradients of polygons, a KKT-residual
//! analyzer for "minimize perimeter at fixed area", and a projected-gradient
//! solver whose iterates converge to the regular `n`-gon.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar for the common cases.

mod compensated;
mod error;
pub mod generate;
pub mod geometry;
pub mod gradients;
pub mod io;
pub mod optimality;
pub mod optimizer;
mod scalar;
pub mod svg;

pub use error::{Error, Result};
pub use generate::{generate, PolygonKind};
pub use geometry::{convex_hull, regular_ngon, rotate, Convexity, Point2, Polygon, Vec2};
pub use gradients::{
    area_gradient, fd_gradient, gradcheck, perimeter_gradient, Functional, GradCheckReport,
    GradientField,
};
pub use optimality::{
    best_fit_lambda, classify_vertices, kkt_residual, regular_reference, KktReport,
    RegularReference, VertexKind,
};
pub use optimizer::{
    convexify, descent_direction, insert_midpoint, optimize, project_area, step, IterationRecord,
    OptimizeResult, OptimizerConfig, StepOutcome,
};
pub use scalar::Scalar;

pub type Point2f64 = Point2<f64>;
pub type Vec2f64 = Vec2<f64>;
pub type Polygon64 = Polygon<f64>;
pub type Polygon32 = Polygon<f32>;
pub type GradientField64 = GradientField<f64>;
pub type KktReport64 = KktReport<f64>;
pub type OptimizerConfig64 = OptimizerConfig<f64>;
pub type IterationRecord64 = IterationRecord<f64>;
pub type RegularReference64 = RegularReference<f64>;
