//! Radius-based certificates.
//!
//! For a convex C^{1,1} body with radii (R_O, R_I, R_C), the planar
//! certificate checks
//!
//!   (R_O − R_C)·φ(R_I, R_C) + ½·log R_C ≤ 0,
//!
//! which guarantees the body is the image of the unit disk under a conformal
//! map with |f'| ≤ 1 fixing the origin — equivalently, that the harmonic
//! measure density with pole 0 is at least 1/(2π) everywhere on the boundary.
//! The spatial certificate (n ≥ 3) checks
//!
//!   R_C·R_I^{n−2}·exp(n·(R_O − R_C − R_I/2)⁺·φ(R_I/2, R_C)) ≤ (2^{n−2} − 1)/(2^{n−1}(n − 2)),
//!
//! which bounds the harmonic measure density below by 1/σ_{n−1}. Both
//! left-hand sides are strictly increasing under scaling, so each certificate
//! has a maximal rescaling factor λ with the scaled body exactly on the
//! boundary; it is computed here in closed form.

use thiserror::Error;

use crate::geometry::RadiiTriple;

/// Relative width of the near-diagonal branch of φ.
const PHI_SERIES_CUTOFF: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("phi requires positive arguments, got ({0}, {1})")]
    NonPositivePhiArgument(f64, f64),
    #[error("spatial certificate requires dimension n >= 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("sphere area requires dimension n >= 2, got {0}")]
    SphereDimensionTooSmall(usize),
}

/// The logarithmic difference quotient φ(a, b) = (log a − log b)/(a − b),
/// with φ(a, a) = 1/a. Symmetric, positive, decreasing in each argument.
pub fn phi(a: f64, b: f64) -> Result<f64, CertificateError> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(CertificateError::NonPositivePhiArgument(a, b));
    }
    Ok(phi_unchecked(a, b))
}

/// φ on known-positive inputs. Near the diagonal the quotient cancels
/// catastrophically, so a 3-term series in Δ = a − b around b is used:
/// 1/b − Δ/(2b²) + Δ²/(3b³), error O(Δ³/b⁴). The direct branch goes through
/// ln_1p for moderate ratios to keep the difference fully accurate.
pub(crate) fn phi_unchecked(a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    let delta = a - b;
    if delta.abs() > PHI_SERIES_CUTOFF * a.max(b) {
        if delta.abs() <= 0.5 * b {
            (delta / b).ln_1p() / delta
        } else {
            (a.ln() - b.ln()) / delta
        }
    } else {
        1.0 / b - delta / (2.0 * b * b) + delta * delta / (3.0 * b * b * b)
    }
}

/// Ambient dimension with the derived sphere-area constant σ_{n−1} and the
/// density threshold 1/σ_{n−1}.
#[derive(Clone, Copy, Debug)]
pub struct DimensionContext {
    n: usize,
    sphere_area: f64,
    density_threshold: f64,
}

impl DimensionContext {
    pub fn new(n: usize) -> Result<Self, CertificateError> {
        let area = sphere_area(n)?;
        Ok(DimensionContext {
            n,
            sphere_area: area,
            density_threshold: 1.0 / area,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sphere_area(&self) -> f64 {
        self.sphere_area
    }

    #[inline]
    pub fn density_threshold(&self) -> f64 {
        self.density_threshold
    }
}

/// Surface area σ_{n−1} = 2π^{n/2}/Γ(n/2) of the unit sphere in ℝⁿ,
/// evaluated with exact integer/half-integer gamma values.
pub fn sphere_area(n: usize) -> Result<f64, CertificateError> {
    if n < 2 {
        return Err(CertificateError::SphereDimensionTooSmall(n));
    }
    let pi = std::f64::consts::PI;
    if n % 2 == 0 {
        // n = 2k: Γ(k) = (k−1)!, σ = 2 π^k / (k−1)!.
        let k = n / 2;
        let mut out = 2.0 * pi;
        for i in 1..k {
            out *= pi / i as f64;
        }
        Ok(out)
    } else {
        // n = 2k+1: Γ(k + 1/2) = √π (2k)!/(4^k k!), σ = 2 π^k 4^k k! / (2k)!.
        let k = (n - 1) / 2;
        let mut out = 2.0;
        for i in 1..=k {
            // Multiply by π·4·i/( (2i)(2i−1) ) stepwise keeps magnitudes tame.
            out *= pi * 4.0 * i as f64 / ((2 * i) as f64 * (2 * i - 1) as f64);
        }
        Ok(out)
    }
}

/// Planar certificate report.
#[derive(Clone, Copy, Debug)]
pub struct PlanarCertificate {
    /// Value of (R_O − R_C)·φ(R_I, R_C) + ½ log R_C.
    pub lhs: f64,
    pub satisfied: bool,
    /// The scale-invariant first term.
    pub scale_invariant_term: f64,
    /// −lhs: positive when satisfied with room to spare.
    pub margin: f64,
}

/// Spatial certificate report (n ≥ 3).
#[derive(Clone, Copy, Debug)]
pub struct SpatialCertificate {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// The scale-invariant exponent n·(R_O − R_C − R_I/2)⁺·φ(R_I/2, R_C).
    pub exponent: f64,
}

/// Maximal rescaling: the certificate holds for every λ ≤ lambda_max and
/// fails beyond it.
#[derive(Clone, Copy, Debug)]
pub struct ScalingResult {
    pub lambda_max: f64,
    /// |lhs at lambda_max·radii − boundary value|; at most 1e-12.
    pub residual: f64,
}

pub fn certify_planar(radii: &RadiiTriple) -> PlanarCertificate {
    let scale_invariant_term =
        (radii.outer() - radii.curvature()) * phi_unchecked(radii.inner(), radii.curvature());
    let lhs = scale_invariant_term + 0.5 * radii.curvature().ln();
    PlanarCertificate {
        lhs,
        satisfied: lhs <= 0.0,
        scale_invariant_term,
        margin: -lhs,
    }
}

pub fn certify_spatial(
    radii: &RadiiTriple,
    ctx: &DimensionContext,
) -> Result<SpatialCertificate, CertificateError> {
    if ctx.n() < 3 {
        return Err(CertificateError::DimensionTooSmall(ctx.n()));
    }
    let n = ctx.n();
    let exponent = spatial_exponent(radii, n);
    let lhs = radii.curvature() * radii.inner().powi(n as i32 - 2) * exponent.exp();
    let rhs = spatial_rhs(n);
    Ok(SpatialCertificate {
        lhs,
        rhs,
        satisfied: lhs <= rhs,
        exponent,
    })
}

/// The scale-invariant exponent of the spatial certificate.
pub(crate) fn spatial_exponent(radii: &RadiiTriple, n: usize) -> f64 {
    let a_plus = (radii.outer() - radii.curvature() - radii.inner() / 2.0).max(0.0);
    n as f64 * a_plus * phi_unchecked(radii.inner() / 2.0, radii.curvature())
}

/// (2^{n−2} − 1)/(2^{n−1}(n − 2)).
pub(crate) fn spatial_rhs(n: usize) -> f64 {
    ((2.0_f64).powi(n as i32 - 2) - 1.0) / ((2.0_f64).powi(n as i32 - 1) * (n as f64 - 2.0))
}

/// Closed-form maximal rescaling for the planar certificate:
/// λ = exp(−2·(R_O − R_C)·φ(R_I, R_C)) / R_C. The first certificate term is
/// scale invariant, so lhs(λ·radii) = 0 exactly at this λ.
pub fn max_scaling_planar(radii: &RadiiTriple) -> ScalingResult {
    let scale_invariant_term =
        (radii.outer() - radii.curvature()) * phi_unchecked(radii.inner(), radii.curvature());
    let lambda_max = (-2.0 * scale_invariant_term).exp() / radii.curvature();
    let residual = certify_planar(&radii.scaled(lambda_max)).lhs.abs();
    ScalingResult {
        lambda_max,
        residual,
    }
}

/// Closed-form maximal rescaling for the spatial certificate:
/// λ = (rhs / (R_C·R_I^{n−2}·e^{exponent}))^{1/(n−1)}.
pub fn max_scaling_spatial(
    radii: &RadiiTriple,
    ctx: &DimensionContext,
) -> Result<ScalingResult, CertificateError> {
    if ctx.n() < 3 {
        return Err(CertificateError::DimensionTooSmall(ctx.n()));
    }
    let n = ctx.n();
    let cert = certify_spatial(radii, ctx)?;
    let lambda_max = (cert.rhs / cert.lhs).powf(1.0 / (n as f64 - 1.0));
    let scaled = certify_spatial(&radii.scaled(lambda_max), ctx)?;
    Ok(ScalingResult {
        lambda_max,
        residual: (scaled.lhs - scaled.rhs).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radii(o: f64, i: f64, c: f64) -> RadiiTriple {
        RadiiTriple::new(o, i, c).unwrap()
    }

    #[test]
    fn phi_reference_values() {
        assert_eq!(phi(1.0, 1.0).unwrap(), 1.0);
        // log(1.25)/0.1
        assert!((phi(0.5, 0.4).unwrap() - 2.2314355131420976).abs() < 1e-15);
        assert!(phi(0.0, 1.0).is_err());
        assert!(phi(1.0, -2.0).is_err());
    }

    #[test]
    fn phi_series_branch_is_continuous() {
        // Compare series and the direct branch just outside the cutoff.
        for b in [0.3_f64, 1.0, 7.5] {
            let delta = 2.0 * PHI_SERIES_CUTOFF * b;
            let a = b + delta;
            let direct = phi_unchecked(a, b);
            let series = 1.0 / b - delta / (2.0 * b * b) + delta * delta / (3.0 * b * b * b);
            assert!(
                (direct - series).abs() < 1e-10 * direct,
                "branch mismatch at b={b}"
            );
        }
    }

    #[test]
    fn sphere_areas() {
        let pi = std::f64::consts::PI;
        assert!((sphere_area(2).unwrap() - 2.0 * pi).abs() < 1e-14);
        assert!((sphere_area(3).unwrap() - 4.0 * pi).abs() < 1e-14);
        assert!((sphere_area(4).unwrap() - 2.0 * pi * pi).abs() < 1e-13);
        // n = 5: 8π²/3.
        assert!((sphere_area(5).unwrap() - 8.0 * pi * pi / 3.0).abs() < 1e-13);
        assert!(sphere_area(1).is_err());
    }

    #[test]
    fn planar_reference_cases() {
        let c = certify_planar(&radii(1.0, 1.0, 1.0));
        assert_eq!(c.lhs, 0.0);
        assert!(c.satisfied);

        let c = certify_planar(&radii(0.6, 0.5, 0.4));
        assert!((c.lhs - (-0.011858263308658021)).abs() < 1e-15);
        assert!(c.satisfied);

        let c = certify_planar(&radii(1.9, 0.1, 1.0));
        assert!((c.lhs - std::f64::consts::LN_10).abs() < 1e-12);
        assert!(!c.satisfied);
    }

    #[test]
    fn spatial_reference_cases() {
        let ctx = DimensionContext::new(3).unwrap();
        let c = certify_spatial(&radii(0.75, 0.5, 0.5), &ctx).unwrap();
        assert!((c.lhs - 0.25).abs() < 1e-15);
        assert!((c.rhs - 0.25).abs() < 1e-15);
        assert!(c.satisfied);
        assert_eq!(c.exponent, 0.0);

        let c = certify_spatial(&radii(0.5, 0.5, 0.5), &ctx).unwrap();
        assert!((c.lhs - c.rhs).abs() < 1e-15);
        assert!(c.satisfied);

        let c = certify_spatial(&radii(1.0, 0.5, 0.5), &ctx).unwrap();
        assert!((c.lhs - 2.0).abs() < 1e-12);
        assert!(!c.satisfied);
    }

    #[test]
    fn planar_scaling_closed_form() {
        let s = max_scaling_planar(&radii(1.0, 1.0, 1.0));
        assert!((s.lambda_max - 1.0).abs() < 1e-15);
        assert!(s.residual <= 1e-12);

        // exp(−4 log 1.25)/0.4 = 1.25^{−4}/0.4 = 1.024 exactly.
        let s = max_scaling_planar(&radii(0.6, 0.5, 0.4));
        assert!((s.lambda_max - 1.024).abs() < 1e-12);
        assert!(s.residual <= 1e-12);

        let s = max_scaling_planar(&radii(1.9, 0.1, 1.0));
        assert!((s.lambda_max - 0.01).abs() < 1e-14);
        assert!(s.residual <= 1e-12);
    }

    #[test]
    fn spatial_scaling_closed_form() {
        let ctx = DimensionContext::new(3).unwrap();
        let s = max_scaling_spatial(&radii(0.75, 0.5, 0.5), &ctx).unwrap();
        assert!((s.lambda_max - 1.0).abs() < 1e-12);
        let s = max_scaling_spatial(&radii(1.0, 1.0, 1.0), &ctx).unwrap();
        assert!((s.lambda_max - 0.5).abs() < 1e-12);
        let s = max_scaling_spatial(&radii(1.0, 0.5, 0.5), &ctx).unwrap();
        assert!((s.lambda_max - 0.125_f64.sqrt()).abs() < 1e-12);
        assert!(s.residual <= 1e-12);
    }

    #[test]
    fn ball_thresholds_increase_toward_one() {
        // (R,R,R): planar flips at R = 1, spatial at the closed-form radius.
        assert!(certify_planar(&radii(1.0, 1.0, 1.0)).satisfied);
        assert!(!certify_planar(&radii(1.0 + 1e-12, 1.0 + 1e-12, 1.0 + 1e-12)).satisfied);
        let mut prev = 0.0;
        for n in 3..=50 {
            let t = 0.5 * ((2.0_f64.powi(n - 2) - 1.0) / (n as f64 - 2.0)).powf(1.0 / (n as f64 - 1.0));
            assert!(t < 1.0);
            assert!(t > prev);
            prev = t;
            let ctx = DimensionContext::new(n as usize).unwrap();
            let at = certify_spatial(&radii(t, t, t), &ctx).unwrap();
            assert!((at.lhs - at.rhs).abs() <= 1e-12 * at.rhs);
        }
    }
}
