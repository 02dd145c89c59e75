//! Certification toolkit for ball-rounded convex bodies: when is a convex
//! C^{1,1} domain the image of the unit disk under a conformal map with
//! |f'| ≤ 1 (planar), or when is its harmonic-measure density bounded below
//! by 1/σ_{n−1} (spatial)? Explicit criteria in the three radii
//! (R_O, R_I, R_C) answer both, and a walk-on-spheres Monte Carlo oracle
//! measures the density directly to verify or refute the threshold.
//!
//! Modules:
//! - [`geometry`]: rounded convex bodies, radii, signed distance, boundary
//!   parametrization, probe points, patch measures;
//! - [`certificate`]: the planar and spatial criteria, φ, σ_{n−1}, maximal
//!   rescaling factors;
//! - [`metrics`]: hyperbolic/quasihyperbolic metric values and the planar
//!   proof-chain diagnostics;
//! - [`greenbounds`]: the spatial Green's-function bound chain and its
//!   d → 0 limit;
//! - [`oracle`]: deterministic parallel walk-on-spheres estimation of
//!   harmonic measure and boundary density.

pub mod certificate;
pub mod geometry;
pub mod greenbounds;
pub mod metrics;
pub mod oracle;
pub mod point;

pub use certificate::{
    certify_planar, certify_spatial, max_scaling_planar, max_scaling_spatial, phi, sphere_area,
    CertificateError, DimensionContext, PlanarCertificate, ScalingResult, SpatialCertificate,
};
pub use geometry::{
    Body2, Body3, DomainSpecFile, GeometryError, RadiiTriple, Region, RoundedConvexBody,
    SignedDistanceResult, SignedDomain,
};
pub use greenbounds::{
    chain_penalty, density_limit, density_lower_bound, green_ball, harnack_factor,
    GreenBoundReport, GreenBoundsError,
};
pub use metrics::{
    hyperbolic_disk, hyperbolic_disk_pair, hyperbolic_offcenter, planar_proof_trace,
    quasihyperbolic_cone_bound, quasihyperbolic_segment_bound, MetricKind, MetricValue,
    MetricsError, ProofTrace,
};
pub use oracle::{
    density_at, harmonic_measure_2d, harmonic_measure_3d, poisson_density, verify_density,
    DensityProbe, HarmonicMeasureEstimate, OracleError, Verdict, VerificationReport, WosConfig,
};
pub use point::{Point, Point2, Point3};
