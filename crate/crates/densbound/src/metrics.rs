//! Hyperbolic and quasihyperbolic metric values and the planar proof-chain
//! diagnostics.
//!
//! The hyperbolic distance from the center of a disk has a closed form; the
//! quasihyperbolic metric (density 1/dist(·, ∂Ω)) is bounded above along
//! straight segments by adaptive quadrature, and along the segment from the
//! origin to a touching-disk center by the analytic cone bound
//! |a|·φ(R_I, R_C).

use thiserror::Error;

use crate::certificate::phi_unchecked;
use crate::geometry::{RadiiTriple, SignedDomain};
use crate::point::{Point, Point2};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("point lies outside the disk (|z - a| = {dist}, radius {radius})")]
    OutsideDisk { dist: f64, radius: f64 },
    #[error("segment leaves the domain (signed distance {0} at a sample)")]
    SegmentExitsDomain(f64),
    #[error("offset {offset} out of range (0, {max})")]
    OffsetOutOfRange { offset: f64, max: f64 },
    #[error("center distance {0} exceeds R_O - R_C = {1}")]
    CenterTooFar(f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    Hyperbolic,
    QuasihyperbolicUpper,
}

/// A metric evaluation between two points.
#[derive(Clone, Copy, Debug)]
pub struct MetricValue<const N: usize> {
    pub value: f64,
    pub kind: MetricKind,
    pub endpoints: (Point<N>, Point<N>),
}

/// Hyperbolic distance from the origin in the unit disk:
/// ½ log((1 + |z|)/(1 − |z|)).
pub fn hyperbolic_disk(z: Point2) -> Result<MetricValue<2>, MetricsError> {
    hyperbolic_offcenter(Point2::ZERO, 1.0, z)
}

/// Hyperbolic distance from the center in the disk D(a, R):
/// ½ log((R + |z − a|)/(R − |z − a|)).
pub fn hyperbolic_offcenter(a: Point2, radius: f64, z: Point2) -> Result<MetricValue<2>, MetricsError> {
    let dist = z.dist(a);
    if dist >= radius {
        return Err(MetricsError::OutsideDisk { dist, radius });
    }
    Ok(MetricValue {
        value: 0.5 * ((radius + dist) / (radius - dist)).ln(),
        kind: MetricKind::Hyperbolic,
        endpoints: (a, z),
    })
}

/// Two-point hyperbolic distance in the unit disk via the pseudo-hyperbolic
/// distance t = |z − w| / |1 − conj(z)·w|: ½ log((1 + t)/(1 − t)).
pub fn hyperbolic_disk_pair(z: Point2, w: Point2) -> Result<MetricValue<2>, MetricsError> {
    for p in [z, w] {
        let dist = p.norm();
        if dist >= 1.0 {
            return Err(MetricsError::OutsideDisk { dist, radius: 1.0 });
        }
    }
    // conj(z)·w in complex arithmetic.
    let prod = Point2::new(z.x() * w.x() + z.y() * w.y(), z.x() * w.y() - z.y() * w.x());
    let denom = Point2::new(1.0 - prod.x(), -prod.y()).norm();
    let t = z.dist(w) / denom;
    Ok(MetricValue {
        value: 0.5 * ((1.0 + t) / (1.0 - t)).ln(),
        kind: MetricKind::Hyperbolic,
        endpoints: (z, w),
    })
}

/// Upper bound for the quasihyperbolic distance between `x` and `y` along
/// the straight segment: adaptive quadrature of 1/dist(·, ∂Ω).
///
/// Convexity of the body makes the segment admissible whenever both
/// endpoints are interior; this is checked on a sample grid.
pub fn quasihyperbolic_segment_bound<const N: usize>(
    body: &impl SignedDomain<N>,
    x: Point<N>,
    y: Point<N>,
) -> Result<MetricValue<N>, MetricsError> {
    const CHECK_SAMPLES: usize = 17;
    for j in 0..=CHECK_SAMPLES {
        let t = j as f64 / CHECK_SAMPLES as f64;
        let p = x + (y - x) * t;
        let sd = body.signed_distance(p).distance;
        if sd <= 0.0 {
            return Err(MetricsError::SegmentExitsDomain(sd));
        }
    }
    let len = x.dist(y);
    if len == 0.0 {
        return Ok(MetricValue {
            value: 0.0,
            kind: MetricKind::QuasihyperbolicUpper,
            endpoints: (x, y),
        });
    }
    let f = |t: f64| len / body.signed_distance(x + (y - x) * t).distance;
    let value = midpoint_richardson(&f, 0.0, 1.0, 1e-8, 40);
    Ok(MetricValue {
        value,
        kind: MetricKind::QuasihyperbolicUpper,
        endpoints: (x, y),
    })
}

/// The analytic cone bound |a|·φ(R_I, R_C) for the quasihyperbolic distance
/// from the origin to a point `a` with B(a, R_C) ⊂ Ω: along the segment the
/// boundary distance is at least the linear interpolation of R_I and R_C.
pub fn quasihyperbolic_cone_bound(
    radii: &RadiiTriple,
    a_norm: f64,
) -> Result<MetricValue<2>, MetricsError> {
    let max = radii.outer() - radii.curvature();
    if !(0.0..=max * (1.0 + 1e-12) + 1e-300).contains(&a_norm) {
        return Err(MetricsError::CenterTooFar(a_norm, max));
    }
    Ok(MetricValue {
        value: a_norm * phi_unchecked(radii.inner(), radii.curvature()),
        kind: MetricKind::QuasihyperbolicUpper,
        endpoints: (Point2::ZERO, Point2::new(a_norm, 0.0)),
    })
}

/// The planar proof-chain diagnostics at boundary offset `d`: the touching
/// disk bound, the cone bound, the near-boundary lower bound, the combined
/// right-hand side, and the critical offset d* below which the chain forces
/// |z| < 1 − d.
#[derive(Clone, Copy, Debug)]
pub struct ProofTrace {
    pub d: f64,
    /// ½ log(2 R_C / d): hyperbolic distance bound inside the touching disk.
    pub touching_disk_bound: f64,
    /// (R_O − R_C)·φ(R_I, R_C): bound from the disk center to the origin.
    pub cone_bound: f64,
    /// ½ log((2 − d)/d): lower bound when |z| ≥ 1 − d.
    pub near_boundary_lower: f64,
    /// ½ log R_C + cone_bound: the combined comparison value (equals the
    /// planar certificate left-hand side).
    pub comparison_rhs: f64,
    /// 2·(1 − exp(2·comparison_rhs)): offsets below d* are contradictory.
    pub d_star: f64,
}

pub fn planar_proof_trace(radii: &RadiiTriple, d: f64) -> Result<ProofTrace, MetricsError> {
    if !(d > 0.0 && d < radii.curvature()) {
        return Err(MetricsError::OffsetOutOfRange {
            offset: d,
            max: radii.curvature(),
        });
    }
    let cone_bound =
        (radii.outer() - radii.curvature()) * phi_unchecked(radii.inner(), radii.curvature());
    let comparison_rhs = 0.5 * radii.curvature().ln() + cone_bound;
    Ok(ProofTrace {
        d,
        touching_disk_bound: 0.5 * (2.0 * radii.curvature() / d).ln(),
        cone_bound,
        near_boundary_lower: 0.5 * ((2.0 - d) / d).ln(),
        comparison_rhs,
        d_star: 2.0 * (1.0 - (2.0 * comparison_rhs).exp()),
    })
}

/// Midpoint rule with Richardson stopping: recursively splits until the
/// extrapolated correction is below the relative tolerance.
fn midpoint_richardson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> f64 {
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        coarse: f64,
        rel_tol: f64,
        depth: u32,
        scale: f64,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = f(0.5 * (a + m)) * (m - a);
        let right = f(0.5 * (m + b)) * (b - m);
        let fine = left + right;
        // Midpoint rule halving gains a factor 4; Richardson correction is
        // (fine − coarse)/3.
        let corr = (fine - coarse) / 3.0;
        if depth == 0 || corr.abs() <= rel_tol * scale.max(fine.abs()) {
            return fine + corr;
        }
        rec(f, a, m, left, rel_tol, depth - 1, scale)
            + rec(f, m, b, right, rel_tol, depth - 1, scale)
    }
    let coarse = f(0.5 * (a + b)) * (b - a);
    rec(f, a, b, coarse, rel_tol * 0.25, max_depth, coarse.abs())
}
