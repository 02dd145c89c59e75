//! Planar convex hulls: monotone chain with a canonical output order.

use crate::point::Point2;

/// Extreme points of the convex hull of `points`, counterclockwise, starting
/// at the lexicographically smallest vertex. Collinear and interior points
/// are dropped; duplicate inputs are tolerated.
pub fn convex_hull_2d(points: &[Point2]) -> Vec<Point2> {
    convex_hull_2d_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

/// Index form of [`convex_hull_2d`]; returns positions into `points`.
pub fn convex_hull_2d_indices(points: &[Point2]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    order.dedup_by(|&mut a, &mut b| points[a] == points[b]);
    let n = order.len();
    if n <= 2 {
        return order;
    }

    let cross = |o: usize, a: usize, b: usize| {
        (points[a] - points[o]).cross(points[b] - points[o])
    };

    let mut lower: Vec<usize> = Vec::with_capacity(n);
    for &p in &order {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(n);
    for &p in order.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // All inputs collinear: the chain collapses; keep the two extremes.
        return vec![order[0], order[n - 1]];
    }
    lower
}

/// Signed area of a CCW polygon (positive for counterclockwise order).
pub fn polygon_signed_area(ring: &[Point2]) -> f64 {
    let mut acc = 0.0;
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        acc += a.cross(b);
    }
    acc / 2.0
}

/// True when `x` lies inside or on the boundary of the CCW convex ring.
pub fn point_in_convex_ccw(ring: &[Point2], x: Point2, tol: f64) -> bool {
    if ring.len() < 3 {
        return false;
    }
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        if (b - a).cross(x - a) < -tol {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_points_reduce_to_endpoints() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
        ];
        let hull = convex_hull_2d(&pts);
        assert_eq!(hull, vec![Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)]);
    }

    #[test]
    fn interior_point_dropped() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, 0.5),
        ];
        let hull = convex_hull_2d(&pts);
        assert_eq!(hull.len(), 4);
        assert_eq!(hull[0], Point2::new(0.0, 0.0));
        assert!(polygon_signed_area(&hull) > 0.0);
        assert!(!hull.contains(&Point2::new(0.5, 0.5)));
    }

    #[test]
    fn edge_midpoints_are_not_extreme() {
        // Points on hull edges (collinear with vertices) must be dropped.
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
            Point2::new(0.0, 1.0),
        ];
        let hull = convex_hull_2d(&pts);
        assert_eq!(hull.len(), 4);
    }

    #[test]
    fn canonical_start_and_orientation() {
        let pts = [
            Point2::new(3.0, 1.0),
            Point2::new(-1.0, 2.0),
            Point2::new(0.0, -2.0),
            Point2::new(2.0, 3.0),
        ];
        let hull = convex_hull_2d(&pts);
        assert_eq!(hull[0], Point2::new(-1.0, 2.0));
        assert!(polygon_signed_area(&hull) > 0.0);
        // Input order must not matter.
        let mut rev = pts;
        rev.reverse();
        assert_eq!(convex_hull_2d(&rev), hull);
    }
}
