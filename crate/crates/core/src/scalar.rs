//! Scalar abstraction shared by every geometric and numerical routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the crate is generic over (`f32` or `f64`).
///
/// The tolerance hooks let precision-dependent thresholds follow the type
/// instead of being hard-coded as `f64` literals.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + FromStr
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Relative tolerance of the orientation predicate: a cross product
    /// below `orient_eps * |u| * |v|` counts as collinear.
    fn orient_eps() -> Self;

    /// Angular tolerance (radians) for classifying a vertex as straight.
    fn angle_tol() -> Self;

    /// Default stopping threshold on the relative KKT residual.
    fn default_kkt_tol() -> Self;

    /// Converts an `f64` literal. Panics only if the value is not
    /// representable at all, which never happens for finite literals.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("index fits in float")
    }

    /// False for NaN, infinities, zero and negatives.
    #[inline]
    fn is_positive_finite(self) -> bool {
        self.is_finite() && self > Self::zero()
    }
}

impl Scalar for f64 {
    fn orient_eps() -> Self {
        1e-12
    }
    fn angle_tol() -> Self {
        1e-9
    }
    fn default_kkt_tol() -> Self {
        1e-8
    }
}

impl Scalar for f32 {
    fn orient_eps() -> Self {
        1e-5
    }
    fn angle_tol() -> Self {
        1e-4
    }
    fn default_kkt_tol() -> Self {
        1e-3
    }
}
