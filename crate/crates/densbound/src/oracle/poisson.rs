//! Analytic Poisson-kernel reference densities for disks and balls.

use crate::certificate::sphere_area;
use crate::oracle::OracleError;
use crate::point::Point;

/// Harmonic measure density of the ball B(center, radius) with pole `pole`,
/// evaluated at the boundary point `w`:
/// (R² − |pole − c|²) / (σ_{n−1}·R·|w − pole|ⁿ).
pub fn poisson_density<const N: usize>(
    center: Point<N>,
    radius: f64,
    pole: Point<N>,
    w: Point<N>,
) -> Result<f64, OracleError> {
    let pole_dist = pole.dist(center);
    if pole_dist >= radius {
        return Err(OracleError::PoleOutsideBall { pole_dist, radius });
    }
    let off = (w.dist(center) - radius).abs();
    if off > 1e-9 * radius.max(1.0) {
        return Err(OracleError::PointOffSphere { off });
    }
    let sigma = sphere_area(N).expect("N is 2 or 3");
    Ok((radius * radius - pole_dist * pole_dist)
        / (sigma * radius * w.dist(pole).powi(N as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{Point2, Point3};

    #[test]
    fn centered_pole_is_uniform() {
        let pi = std::f64::consts::PI;
        let v = poisson_density(Point2::ZERO, 1.0, Point2::ZERO, Point2::new(0.0, 1.0)).unwrap();
        assert!((v - 1.0 / (2.0 * pi)).abs() < 1e-15);
        let v = poisson_density(
            Point3::ZERO,
            2.0,
            Point3::ZERO,
            Point3::new(0.0, 0.0, 2.0),
        )
        .unwrap();
        assert!((v - 1.0 / (4.0 * pi * 4.0)).abs() < 1e-15);
    }

    #[test]
    fn off_center_far_point_value() {
        // Disk D((0.9, 0), 1), pole 0, boundary point (1.9, 0):
        // 2π·density = 0.19/3.61.
        let v = poisson_density(
            Point2::new(0.9, 0.0),
            1.0,
            Point2::ZERO,
            Point2::new(1.9, 0.0),
        )
        .unwrap();
        let normalized = 2.0 * std::f64::consts::PI * v;
        assert!((normalized - 0.19 / 3.61).abs() < 1e-15);
        assert!(normalized < 1.0);
    }

    #[test]
    fn integrates_to_one_on_circle() {
        // Midpoint rule over the off-center disk boundary.
        let c = Point2::new(0.9, 0.0);
        let n = 100_000;
        let mut acc = 0.0;
        for j in 0..n {
            let theta = std::f64::consts::TAU * (j as f64 + 0.5) / n as f64;
            let w = c + Point2::from_angle(theta);
            acc += poisson_density(c, 1.0, Point2::ZERO, w).unwrap();
        }
        acc *= std::f64::consts::TAU / n as f64;
        assert!((acc - 1.0).abs() < 1e-9);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            poisson_density(Point2::ZERO, 1.0, Point2::new(1.5, 0.0), Point2::new(1.0, 0.0)),
            Err(OracleError::PoleOutsideBall { .. })
        ));
        assert!(matches!(
            poisson_density(Point2::ZERO, 1.0, Point2::ZERO, Point2::new(0.5, 0.0)),
            Err(OracleError::PointOffSphere { .. })
        ));
    }
}
