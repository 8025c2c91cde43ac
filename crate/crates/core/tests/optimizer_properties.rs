mod common;

use std::f64::consts::PI;

use common::{random_convex, random_simple, rel_close, star};
use isoperim::{
    area_gradient, descent_direction, optimize, project_area, regular_reference, step, Polygon,
    OptimizerConfig,
};

fn cfg(area: f64) -> OptimizerConfig<f64> {
    OptimizerConfig {
        area_target: area,
        ..Default::default()
    }
}

fn check_trace(result: &isoperim::OptimizeResult<f64>, area: f64) {
    for rec in &result.trace {
        assert!(rel_close(rec.area, area, 1e-10), "area drift {}", rec.area);
    }
    for pair in result.trace.windows(2) {
        assert!(pair[1].perimeter <= pair[0].perimeter, "iter {}", pair[1].iter);
    }
    let last = result.final_record();
    assert!(rel_close(result.polygon.signed_area(), area, 1e-10));
    assert!(rel_close(result.polygon.perimeter(), last.perimeter, 1e-12));
}

#[test]
fn convex_starts_reach_the_regular_polygon() {
    for seed in 0..20u64 {
        let n = 3 + (seed % 6) as usize;
        let p0 = random_convex(n, seed);
        let r = optimize(&p0, &cfg(1.0)).unwrap();
        assert!(r.converged, "seed {seed}");
        check_trace(&r, 1.0);

        let reference = regular_reference(n, 1.0).unwrap();
        let report = isoperim::kkt_residual(&r.polygon).unwrap();
        assert!(rel_close(report.lambda_hat, reference.lambda_star, 1e-6));
        assert!((r.polygon.perimeter() - reference.perimeter).abs() <= 1e-5);
        assert!(report.edge_cv <= 1e-6 && report.angle_cv <= 1e-6);
    }
}

#[test]
fn nonconvex_starts_stay_feasible_and_converge() {
    for seed in 0..12u64 {
        let n = 4 + (seed % 9) as usize;
        for area in [1.0, 3.0] {
            let r = optimize(&star(n, seed), &cfg(area)).unwrap();
            check_trace(&r, area);
            assert!(r.converged, "seed {seed}");
            assert!(r.polygon.is_simple() && r.polygon.is_convex());
        }
    }
}

#[test]
fn periodic_convexification_keeps_the_vertex_count() {
    for seed in 0..6u64 {
        let p0 = star(7, seed);
        let r = optimize(
            &p0,
            &OptimizerConfig {
                convexify_every: 5,
                ..cfg(1.0)
            },
        )
        .unwrap();
        assert_eq!(r.polygon.len(), 7);
        assert!(r.converged);
        check_trace(&r, 1.0);
    }
}

#[test]
fn runs_are_deterministic() {
    let p0 = random_simple(9, 77);
    let a = optimize(&p0, &cfg(2.0)).unwrap();
    let b = optimize(&p0, &cfg(2.0)).unwrap();
    assert_eq!(a.polygon, b.polygon);
    assert_eq!(a.trace, b.trace);
}

#[test]
fn direction_preserves_area_to_first_order() {
    for seed in 0..50u64 {
        let p = random_simple(3 + (seed % 10) as usize, seed);
        let d = descent_direction(&p).unwrap();
        let v = area_gradient(&p);
        let dot: f64 = d.iter().zip(&v).map(|(a, b)| a.dot(b)).sum();
        let scale: f64 = d.iter().map(|x| x.norm_sq()).sum::<f64>().sqrt()
            * v.iter().map(|x| x.norm_sq()).sum::<f64>().sqrt();
        assert!(dot.abs() <= 1e-12 * scale.max(1e-300));
    }
}

#[test]
fn single_steps_never_increase_perimeter() {
    let c = cfg(1.0);
    for seed in 0..30u64 {
        let p = project_area(&random_convex(6, seed), 1.0).unwrap();
        let mut s = 0.1 * p.mean_edge();
        let mut current = p;
        for _ in 0..40 {
            let out = step(&current, &c, s).unwrap();
            if out.accepted {
                assert!(out.polygon.perimeter() <= current.perimeter() * (1.0 + 1e-15));
                assert!(rel_close(out.polygon.signed_area(), 1.0, 1e-12));
                current = out.polygon;
            } else {
                assert_eq!(out.polygon, current);
                s *= 0.5;
            }
        }
    }
}

#[test]
fn rejects_a_non_simple_start() {
    let bowtie = Polygon::with_orientation(
        [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]
            .into_iter()
            .map(|(x, y)| isoperim::Point2::new(x, y))
            .collect(),
    );
    if let Ok(p) = bowtie {
        assert_eq!(optimize(&p, &cfg(1.0)).unwrap_err(), isoperim::Error::NotSimple);
    }
}

#[test]
fn single_precision_runs() {
    let p0: Polygon<f32> = isoperim::generate(isoperim::PolygonKind::RandomConvex, 5, 1.0, 4).unwrap();
    let r = optimize(&p0, &OptimizerConfig::default()).unwrap();
    assert!(r.converged);
    let star_perimeter = (20.0f32 * (PI as f32 / 5.0).tan()).sqrt();
    assert!((r.polygon.perimeter() - star_perimeter).abs() <= 1e-3);
}
