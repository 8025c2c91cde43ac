mod common;

use std::f64::consts::PI;

use common::{random_simple, star};
use isoperim::{
    area_gradient, fd_gradient, gradcheck, perimeter_gradient, Functional, Point2, Polygon, Vec2,
};
use proptest::prelude::*;

/// Largest componentwise error; perimeter errors are relative to max(1, |analytic|).
fn max_err(analytic: &[Vec2<f64>], fd: &[Vec2<f64>], relative: bool) -> f64 {
    analytic
        .iter()
        .zip(fd)
        .flat_map(|(a, f)| [(a.dx, f.dx), (a.dy, f.dy)])
        .map(|(a, f)| {
            let scale = if relative { a.abs().max(1.0) } else { 1.0 };
            (a - f).abs() / scale
        })
        .fold(0.0, f64::max)
}

#[test]
fn analytic_gradients_match_finite_differences() {
    for seed in 0..100u64 {
        let n = 3 + (seed % 10) as usize;
        let p = random_simple(n, seed);
        let fd_a = fd_gradient(Functional::Area, &p, 1e-6).unwrap();
        let fd_l = fd_gradient(Functional::Perimeter, &p, 1e-6).unwrap();
        assert!(max_err(&area_gradient(&p), &fd_a, false) <= 1e-6, "seed {seed}");
        assert!(max_err(&perimeter_gradient(&p), &fd_l, true) <= 1e-6, "seed {seed}");
    }
}

#[test]
fn gradcheck_on_random_nonagons() {
    for seed in 0..100u64 {
        let r = gradcheck(&random_simple(9, seed), 1e-6, 1e-6).unwrap();
        assert!(r.pass, "seed {seed}: {r:?}");
    }
}

/// Internal bisector from the interior angle alone: rotate the direction to
/// the next vertex counter-clockwise by half the interior angle.
fn bisector(p: &Polygon<f64>, i: usize) -> Vec2<f64> {
    let to_next = (p.vertex(i + 1) - p.vertex(i)).normalized().unwrap();
    to_next.rotate(0.5 * p.interior_angle(i).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn magnitude_and_direction_laws(n in 4usize..=12, seed in any::<u64>(), use_star in any::<bool>()) {
        let p = if use_star { star(n, seed) } else { random_simple(n, seed) };
        let v = area_gradient(&p);
        let w = perimeter_gradient(&p);
        for i in 0..n {
            let chord = p.vertex(i + 1).distance(&p.vertex(p.prev_index(i)));
            prop_assert!((v[i].norm() - 0.5 * chord).abs() <= 1e-12);
            // orthogonal to the chord
            let c = p.vertex(i + 1) - p.vertex(p.prev_index(i));
            prop_assert!(v[i].dot(&c).abs() <= 1e-12 * c.norm_sq().max(1.0));

            let theta = p.interior_angle(i).unwrap();
            prop_assert!((w[i].norm() - 2.0 * (0.5 * theta).cos().abs()).abs() <= 1e-9);
            let b = bisector(&p, i);
            if w[i].norm() > 1e-9 {
                prop_assert!(w[i].normalized().unwrap().cross(&b).abs() <= 1e-9);
            }
            // outward for convex corners, inward for reflex ones
            let s = w[i].dot(&v[i]);
            if theta < PI - 1e-6 {
                prop_assert!(s > 0.0);
            } else if theta > PI + 1e-6 {
                prop_assert!(s < 0.0);
            }
        }
    }

    #[test]
    fn translation_sums_vanish(n in 3usize..=12, seed in any::<u64>(), dx in -100.0f64..100.0) {
        let p = random_simple(n, seed).translated(Vec2::new(dx, -0.5 * dx));
        let scale = p.diameter();
        let sv = area_gradient(&p).into_iter().fold(Vec2::zero(), |s, x| s + x);
        let sw = perimeter_gradient(&p).into_iter().fold(Vec2::zero(), |s, x| s + x);
        prop_assert!(sv.dx.abs() <= 1e-12 * scale.max(1.0) * (1.0 + dx.abs()));
        prop_assert!(sv.dy.abs() <= 1e-12 * scale.max(1.0) * (1.0 + dx.abs()));
        prop_assert!(sw.dx.abs() <= 1e-12 * n as f64 && sw.dy.abs() <= 1e-12 * n as f64);
    }

    #[test]
    fn rotation_equivariance_and_scaling(
        n in 3usize..=12,
        seed in any::<u64>(),
        theta in -PI..PI,
        s in 0.1f64..10.0,
    ) {
        let p = random_simple(n, seed);
        let q = p.rotated_about(Point2::default(), theta);
        let (v, w) = (area_gradient(&p), perimeter_gradient(&p));
        let (vq, wq) = (area_gradient(&q), perimeter_gradient(&q));
        for i in 0..n {
            prop_assert!((vq[i] - v[i].rotate(theta)).norm() <= 1e-12);
            prop_assert!((wq[i] - w[i].rotate(theta)).norm() <= 1e-12);
        }
        let big = p.scaled_about(Point2::default(), s);
        let (vs, ws) = (area_gradient(&big), perimeter_gradient(&big));
        for i in 0..n {
            prop_assert!((vs[i] - v[i] * s).norm() <= 1e-12 * s * v[i].norm().max(1.0));
            prop_assert!((ws[i] - w[i]).norm() <= 1e-12 * w[i].norm().max(1.0));
        }
    }
}
