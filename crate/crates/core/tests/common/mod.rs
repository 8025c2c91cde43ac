#![allow(dead_code)]

use isoperim::{generate, Polygon, PolygonKind};

pub fn random_simple(n: usize, seed: u64) -> Polygon<f64> {
    generate(PolygonKind::RandomSimple, n, 1.0, seed).expect("generator succeeds")
}

pub fn random_convex(n: usize, seed: u64) -> Polygon<f64> {
    generate(PolygonKind::RandomConvex, n, 1.0, seed).expect("generator succeeds")
}

pub fn star(n: usize, seed: u64) -> Polygon<f64> {
    generate(PolygonKind::Star, n, 1.0, seed).expect("generator succeeds")
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
