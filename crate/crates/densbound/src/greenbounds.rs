//! The spatial Green's-function bound chain (n ≥ 3).
//!
//! For a point x at distance d from the boundary, a touching ball of radius
//! R_C plus Harnack's inequality, the Green's function of the inscribed ball
//! B(0, R_I), and a logarithmic-gradient estimate along the segment between
//! ball centers combine into a lower bound for σ_{n−1}·g_Ω(x)/d. Its d → 0
//! limit is at least 1 exactly when the spatial certificate holds.

use thiserror::Error;

use crate::certificate::{sphere_area, spatial_exponent, spatial_rhs, CertificateError};
use crate::geometry::RadiiTriple;

#[derive(Debug, Error)]
pub enum GreenBoundsError {
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("point norm {x_norm} outside (0, {radius}]")]
    PointOutOfBall { x_norm: f64, radius: f64 },
    #[error("offset {offset} not in [0, {radius})")]
    OffsetOutOfRange { offset: f64, radius: f64 },
    #[error("offset {offset} not in (0, R_C = {curvature})")]
    BoundaryOffsetOutOfRange { offset: f64, curvature: f64 },
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

/// Green's function of the ball B(0, R) with pole at the center:
/// (|x|^{2−n} − R^{2−n}) / ((n − 2)·σ_{n−1}).
pub fn green_ball(x_norm: f64, radius: f64, n: usize) -> Result<f64, GreenBoundsError> {
    if n < 3 {
        return Err(GreenBoundsError::DimensionTooSmall(n));
    }
    if !(x_norm > 0.0 && x_norm <= radius) {
        return Err(GreenBoundsError::PointOutOfBall { x_norm, radius });
    }
    let p = 2.0 - n as f64;
    Ok((x_norm.powf(p) - radius.powf(p)) / ((n as f64 - 2.0) * sphere_area(n)?))
}

/// Harnack ratio for a positive harmonic function on B(a, R) between the
/// center and a point at `offset` from it: (R − offset)·R^{n−2}/(R + offset)^{n−1}.
pub fn harnack_factor(offset: f64, radius: f64, n: usize) -> Result<f64, GreenBoundsError> {
    if n < 3 {
        return Err(GreenBoundsError::DimensionTooSmall(n));
    }
    if !(offset >= 0.0 && offset < radius) {
        return Err(GreenBoundsError::OffsetOutOfRange { offset, radius });
    }
    Ok((radius - offset) * radius.powi(n as i32 - 2) / (radius + offset).powi(n as i32 - 1))
}

/// The multiplicative loss of carrying the Green's function value from the
/// inscribed-ball reference point to the touching-ball center:
/// exp(−n·(R_O − R_C − R_I/2)⁺·φ(R_I/2, R_C)). Equals 1 when the touching
/// ball center is within R_I/2 of the origin.
pub fn chain_penalty(radii: &RadiiTriple, n: usize) -> Result<f64, GreenBoundsError> {
    if n < 3 {
        return Err(GreenBoundsError::DimensionTooSmall(n));
    }
    Ok((-spatial_exponent(radii, n)).exp())
}

/// The full bound chain evaluated at boundary offset `d`.
#[derive(Clone, Copy, Debug)]
pub struct GreenBoundReport {
    pub n: usize,
    pub d: f64,
    /// d·R_C^{n−2}/(2R_C − d)^{n−1}: Harnack step inside the touching ball.
    pub harnack_factor: f64,
    /// (2^{n−2} − 1)·R_I^{2−n}/((n − 2)·σ_{n−1}): Green's function of the
    /// inscribed ball at radius R_I/2.
    pub ball_minorant: f64,
    /// exp(−n·(R_O − R_C − R_I/2)⁺·φ(R_I/2, R_C)).
    pub chain_penalty: f64,
    /// Lower bound for σ_{n−1}·g_Ω(x)/d.
    pub density_ratio_bound: f64,
}

pub fn density_lower_bound(
    radii: &RadiiTriple,
    n: usize,
    d: f64,
) -> Result<GreenBoundReport, GreenBoundsError> {
    if n < 3 {
        return Err(GreenBoundsError::DimensionTooSmall(n));
    }
    if !(d > 0.0 && d < radii.curvature()) {
        return Err(GreenBoundsError::BoundaryOffsetOutOfRange {
            offset: d,
            curvature: radii.curvature(),
        });
    }
    let rc = radii.curvature();
    let sigma = sphere_area(n)?;
    let harnack = harnack_factor(rc - d, rc, n)?;
    let minorant = (2.0_f64.powi(n as i32 - 2) - 1.0) * radii.inner().powf(2.0 - n as f64)
        / ((n as f64 - 2.0) * sigma);
    let penalty = chain_penalty(radii, n)?;
    Ok(GreenBoundReport {
        n,
        d,
        harnack_factor: harnack,
        ball_minorant: minorant,
        chain_penalty: penalty,
        density_ratio_bound: harnack / d * sigma * minorant * penalty,
    })
}

/// Closed-form d → 0 limit of the density ratio bound:
/// rhs·(R_C·R_I^{n−2})^{−1}·chain_penalty, with rhs the spatial certificate
/// right-hand side. At least 1 exactly when the certificate is satisfied.
pub fn density_limit(radii: &RadiiTriple, n: usize) -> Result<f64, GreenBoundsError> {
    if n < 3 {
        return Err(GreenBoundsError::DimensionTooSmall(n));
    }
    let penalty = chain_penalty(radii, n)?;
    Ok(spatial_rhs(n) / (radii.curvature() * radii.inner().powi(n as i32 - 2)) * penalty)
}
