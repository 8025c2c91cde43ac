use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// A point in the plane. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[T; 2]", into = "[T; 2]")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

/// A displacement in the plane. Serialized as `[dx, dy]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[T; 2]", into = "[T; 2]")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Vec2<T> {
    pub dx: T,
    pub dy: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Self) -> T {
        (*other - *self).norm()
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let half = T::lit(0.5);
        Self::new((self.x + other.x) * half, (self.y + other.y) * half)
    }

    /// Position vector from the origin.
    pub fn to_vec(self) -> Vec2<T> {
        Vec2::new(self.x, self.y)
    }
}

impl<T: Scalar> Vec2<T> {
    pub fn new(dx: T, dy: T) -> Self {
        Self { dx, dy }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn dot(&self, other: &Self) -> T {
        self.dx * other.dx + self.dy * other.dy
    }

    /// z-component of the 3D cross product.
    pub fn cross(&self, other: &Self) -> T {
        self.dx * other.dy - self.dy * other.dx
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.dx.hypot(self.dy)
    }

    /// Unit vector in the same direction, `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero()).then(|| *self / n)
    }

    /// Counter-clockwise rotation by `theta` radians.
    pub fn rotate(&self, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(self.dx * c - self.dy * s, self.dx * s + self.dy * c)
    }

    /// Exact rotation by -pi/2: `(dx, dy) -> (dy, -dx)`.
    pub fn rot_neg_quarter(&self) -> Self {
        Self::new(self.dy, -self.dx)
    }

    /// Exact rotation by +pi/2: `(dx, dy) -> (-dy, dx)`.
    pub fn rot_quarter(&self) -> Self {
        Self::new(-self.dy, self.dx)
    }

    pub fn is_finite(&self) -> bool {
        self.dx.is_finite() && self.dy.is_finite()
    }
}

/// Free-function form of [`Vec2::rotate`].
pub fn rotate<T: Scalar>(v: Vec2<T>, theta: T) -> Vec2<T> {
    v.rotate(theta)
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Vec2<T>;
    fn sub(self, rhs: Self) -> Vec2<T> {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Add<Vec2<T>> for Point2<T> {
    type Output = Point2<T>;
    fn add(self, rhs: Vec2<T>) -> Point2<T> {
        Point2::new(self.x + rhs.dx, self.y + rhs.dy)
    }
}

impl<T: Scalar> Sub<Vec2<T>> for Point2<T> {
    type Output = Point2<T>;
    fn sub(self, rhs: Vec2<T>) -> Point2<T> {
        Point2::new(self.x - rhs.dx, self.y - rhs.dy)
    }
}

impl<T: Scalar> Add for Vec2<T> {
    type Output = Vec2<T>;
    fn add(self, rhs: Self) -> Self {
        Vec2::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

impl<T: Scalar> AddAssign for Vec2<T> {
    fn add_assign(&mut self, rhs: Self) {
        self.dx += rhs.dx;
        self.dy += rhs.dy;
    }
}

impl<T: Scalar> Sub for Vec2<T> {
    type Output = Vec2<T>;
    fn sub(self, rhs: Self) -> Self {
        Vec2::new(self.dx - rhs.dx, self.dy - rhs.dy)
    }
}

impl<T: Scalar> Neg for Vec2<T> {
    type Output = Vec2<T>;
    fn neg(self) -> Self {
        Vec2::new(-self.dx, -self.dy)
    }
}

impl<T: Scalar> Mul<T> for Vec2<T> {
    type Output = Vec2<T>;
    fn mul(self, s: T) -> Self {
        Vec2::new(self.dx * s, self.dy * s)
    }
}

impl<T: Scalar> Div<T> for Vec2<T> {
    type Output = Vec2<T>;
    fn div(self, s: T) -> Self {
        Vec2::new(self.dx / s, self.dy / s)
    }
}

impl<T: Copy> From<[T; 2]> for Point2<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Self { x, y }
    }
}

impl<T: Copy> From<Point2<T>> for [T; 2] {
    fn from(p: Point2<T>) -> Self {
        [p.x, p.y]
    }
}

impl<T: Copy> From<[T; 2]> for Vec2<T> {
    fn from([dx, dy]: [T; 2]) -> Self {
        Self { dx, dy }
    }
}

impl<T: Copy> From<Vec2<T>> for [T; 2] {
    fn from(v: Vec2<T>) -> Self {
        [v.dx, v.dy]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn quarter_turns() {
        let r = Vec2::new(1.0, 0.0).rotate(FRAC_PI_2);
        assert!((r.dx - 0.0).abs() < 1e-15 && (r.dy - 1.0).abs() < 1e-15);
        let r = Vec2::new(1.0, 1.0).rotate(-FRAC_PI_2);
        assert!((r.dx - 1.0).abs() < 1e-15 && (r.dy + 1.0).abs() < 1e-15);
        assert_eq!(Vec2::new(1.0, 1.0).rot_neg_quarter(), Vec2::new(1.0, -1.0));
        assert_eq!(Vec2::new(3.0, -2.0).rot_neg_quarter(), Vec2::new(-2.0, -3.0));
    }

    #[test]
    fn rotation_round_trip() {
        let v = Vec2::new(0.3_f64, -1.7);
        for k in 0..20 {
            let theta = -3.0 + 0.3 * k as f64;
            let back = rotate(rotate(v, theta), -theta);
            assert!((back - v).norm() < 1e-14);
        }
    }

    #[test]
    fn serde_as_pairs() {
        let p = Point2::new(1.5_f64, -2.0);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1.5,-2.0]");
        let q: Point2<f64> = serde_json::from_str("[1.5,-2.0]").unwrap();
        assert_eq!(p, q);
    }
}
