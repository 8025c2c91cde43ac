//! Seeded polygon generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{convex_hull, regular_ngon, Point2, Polygon};
use crate::optimizer::{pad_with_midpoints, project_area};
use crate::{Error, Result, Scalar};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonKind {
    Regular,
    /// Hull of `n` uniform points in a square, padded with edge midpoints.
    RandomConvex,
    /// `n` uniform points joined in angular order about their mean.
    RandomSimple,
    /// Jittered equal angles with radii in `[0.3, 1]`, kept only if simple
    /// and non-convex. Needs `n >= 4`.
    Star,
}

impl PolygonKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PolygonKind::Regular => "regular",
            PolygonKind::RandomConvex => "random_convex",
            PolygonKind::RandomSimple => "random_simple",
            PolygonKind::Star => "star",
        }
    }
}

impl fmt::Display for PolygonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolygonKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(PolygonKind::Regular),
            "random_convex" => Ok(PolygonKind::RandomConvex),
            "random_simple" => Ok(PolygonKind::RandomSimple),
            "star" => Ok(PolygonKind::Star),
            other => Err(Error::Parse(format!("unknown polygon kind '{other}'"))),
        }
    }
}

/// Deterministic for a fixed `(kind, n, area, seed)`; the result is CCW and
/// has exactly `area`.
pub fn generate<T: Scalar>(kind: PolygonKind, n: usize, area: T, seed: u64) -> Result<Polygon<T>> {
    if n < 3 {
        return Err(Error::InvalidVertexCount(n));
    }
    if !area.is_positive_finite() {
        return Err(Error::NonPositiveArea(area.to_f64().unwrap_or(f64::NAN)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = match kind {
        PolygonKind::Regular => return regular_ngon(n, area, Point2::default(), T::zero()),
        PolygonKind::RandomConvex => retry(kind, n, || random_convex(&mut rng, n))?,
        PolygonKind::RandomSimple => retry(kind, n, || random_simple(&mut rng, n))?,
        PolygonKind::Star => retry(kind, n, || star(&mut rng, n))?,
    };
    project_area(&shape, area)
}

fn retry<T: Scalar>(
    kind: PolygonKind,
    n: usize,
    mut attempt: impl FnMut() -> Option<Polygon<T>>,
) -> Result<Polygon<T>> {
    (0..MAX_ATTEMPTS)
        .find_map(|_| attempt())
        .ok_or_else(|| Error::GenerationFailed {
            kind: kind.to_string(),
            n,
            attempts: MAX_ATTEMPTS,
        })
}

fn uniform_points<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point2<T>> {
    (0..n)
        .map(|_| Point2::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
        .collect()
}

// Rejects slivers so that finite-difference stencils and the optimizer's
// edge guard have room.
fn well_shaped<T: Scalar>(p: &Polygon<T>) -> bool {
    p.signed_area() > T::zero() && p.min_edge() >= T::lit(0.02) * p.mean_edge() && p.is_simple()
}

fn random_convex<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Option<Polygon<T>> {
    let hull = convex_hull(&uniform_points::<T>(rng, n)).ok()?;
    if !well_shaped(&hull) {
        return None;
    }
    Some(pad_with_midpoints(hull, n))
}

fn random_simple<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Option<Polygon<T>> {
    let pts = uniform_points::<T>(rng, n);
    let inv = T::one() / T::from_usize_lossy(n);
    let cx = pts.iter().map(|p| p.x).sum::<T>() * inv;
    let cy = pts.iter().map(|p| p.y).sum::<T>() * inv;
    let mut keyed: Vec<(f64, Point2<T>)> = pts
        .into_iter()
        .map(|p| ((p.y - cy).atan2(p.x - cx).to_f64().unwrap_or(0.0), p))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let p = Polygon::new(keyed.into_iter().map(|(_, p)| p).collect()).ok()?;
    well_shaped(&p).then_some(p)
}

fn star<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Option<Polygon<T>> {
    let sector = std::f64::consts::TAU / n as f64;
    let mut pts: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let theta = sector * (k as f64 + rng.gen_range(-0.25..0.25));
            let r = rng.gen_range(0.3..=1.0);
            (r * theta.cos(), r * theta.sin())
        })
        .collect();
    // Dent vertex 0 below the chord of its neighbours so the shape is never convex.
    let (u, prev, next) = (pts[0], pts[n - 1], pts[1]);
    let e = (next.0 - prev.0, next.1 - prev.1);
    let denom = u.0 * e.1 - u.1 * e.0;
    let t = (prev.0 * e.1 - prev.1 * e.0) / denom;
    if !(t.is_finite() && t > 0.0) {
        return None;
    }
    let f = t * rng.gen_range(0.3..0.8);
    pts[0] = (u.0 * f, u.1 * f);
    let verts = pts.into_iter().map(|(x, y)| Point2::new(T::lit(x), T::lit(y))).collect();
    let p = Polygon::new(verts).ok()?;
    (well_shaped(&p) && !p.is_convex()).then_some(p)
}
