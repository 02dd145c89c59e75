//! Walk-on-spheres Monte Carlo estimation of harmonic measure and boundary
//! density, with analytic Poisson-kernel references for disks and balls.
//!
//! The estimator verifies (or refutes) the density threshold 1/σ_{n−1} at a
//! deterministic set of boundary probes. One shared walker stream is scored
//! against every probe patch; per-walker counter-based streams make every
//! count reproducible for a fixed (seed, walkers) regardless of the worker
//! count.

mod poisson;
pub mod rng;
mod wos;

pub use poisson::poisson_density;
pub use wos::{parallel_sweep, wos_exit, WalkOutcome};

use thiserror::Error;

use crate::certificate::sphere_area;
use crate::geometry::{
    Body2, Body3, GeometryError, Region, RoundedConvexBody, SignedDomain,
};
use crate::point::{Point, Point2, Point3};

/// Mass allowed in the overflow bin before an estimate is flagged.
const OVERFLOW_MASS_LIMIT: f64 = 1e-4;

/// z-value of the 95% confidence half-width.
const Z95: f64 = 1.959963984540054;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("epsilon {epsilon} must lie in (0, {max}] (inner radius / 100)")]
    EpsilonOutOfRange { epsilon: f64, max: f64 },
    #[error("walker count must be at least 1")]
    NoWalkers,
    #[error("start point is within the absorption shell (distance {distance}, epsilon {epsilon})")]
    StartTooCloseToBoundary { distance: f64, epsilon: f64 },
    #[error("probe point is off the boundary (signed distance {sd})")]
    ProbeOffBoundary { sd: f64 },
    #[error("patch radius {delta} exceeds R_C/10 = {max}")]
    DeltaTooLarge { delta: f64, max: f64 },
    #[error("patch radius must be positive")]
    DeltaNotPositive,
    #[error("pole at distance {pole_dist} is outside the ball of radius {radius}")]
    PoleOutsideBall { pole_dist: f64, radius: f64 },
    #[error("point is off the sphere by {off}")]
    PointOffSphere { off: f64 },
    #[error("bin count must be at least 1")]
    NoBins,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Walk-on-spheres run parameters. Estimates depend on (seed, walkers) only;
/// `workers` is a parallelism hint.
#[derive(Clone, Copy, Debug)]
pub struct WosConfig {
    /// Absorption shell thickness (length units).
    pub epsilon: f64,
    /// Step cap per walker.
    pub max_steps: u32,
    /// Number of walkers.
    pub walkers: u64,
    pub seed: u64,
    pub workers: usize,
}

impl WosConfig {
    /// Defaults for a body with inner radius `inner`: epsilon = 1e-5·R_I,
    /// a million walkers and a million step cap.
    pub fn defaults_for_inner_radius(inner: f64) -> WosConfig {
        WosConfig {
            epsilon: 1e-5 * inner,
            max_steps: 1_000_000,
            walkers: 1_000_000,
            seed: 0,
            workers: default_workers(),
        }
    }

    pub fn validate(&self, inner_radius: f64) -> Result<(), OracleError> {
        let max = inner_radius / 100.0;
        if !(self.epsilon > 0.0 && self.epsilon <= max) {
            return Err(OracleError::EpsilonOutOfRange {
                epsilon: self.epsilon,
                max,
            });
        }
        if self.walkers == 0 {
            return Err(OracleError::NoWalkers);
        }
        Ok(())
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
}

/// Boundary partition used by a harmonic-measure estimate.
#[derive(Clone, Debug)]
pub enum BinPartition {
    /// Equal-arclength intervals of the planar boundary.
    Arclength { count: usize, total_length: f64 },
    /// The eight coordinate octants (spatial bodies).
    Octants,
}

/// Per-bin harmonic measure estimate. Hit counts plus the overflow count sum
/// to the walker count exactly.
#[derive(Clone, Debug)]
pub struct HarmonicMeasureEstimate {
    pub partition: BinPartition,
    pub hits: Vec<u64>,
    pub overflow_hits: u64,
    pub walkers: u64,
    pub probabilities: Vec<f64>,
    pub std_errors: Vec<f64>,
    /// Set when the overflow bin holds at least 1e-4 of the mass.
    pub overflow_flagged: bool,
}

impl HarmonicMeasureEstimate {
    fn from_hits(partition: BinPartition, hits: Vec<u64>, overflow: u64, walkers: u64) -> Self {
        let probabilities: Vec<f64> = hits.iter().map(|&h| h as f64 / walkers as f64).collect();
        let std_errors = probabilities
            .iter()
            .map(|&p| (p * (1.0 - p) / walkers as f64).sqrt())
            .collect();
        let overflow_flagged = overflow as f64 / walkers as f64 >= OVERFLOW_MASS_LIMIT;
        HarmonicMeasureEstimate {
            partition,
            hits,
            overflow_hits: overflow,
            walkers,
            probabilities,
            std_errors,
            overflow_flagged,
        }
    }
}

/// A boundary density probe: Monte Carlo estimate of the harmonic measure of
/// B(w, delta) ∩ ∂Ω divided by the exact patch measure.
#[derive(Clone, Debug)]
pub struct DensityProbe {
    /// Probe point, padded to three coordinates.
    pub point: [f64; 3],
    pub region: Region,
    pub delta: f64,
    /// Arclength (2D) or area (3D) of the patch.
    pub patch_measure: f64,
    pub hits: u64,
    pub walkers: u64,
    pub probability: f64,
    pub std_error: f64,
    pub density: f64,
    /// 95% half-width on the density.
    pub ci95: f64,
    /// No walker landed in the patch; the probe is inconclusive on its own.
    pub zero_hits: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of probing the density threshold 1/σ_{n−1} over a probe set.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub probes: Vec<DensityProbe>,
    /// 1/σ_{n−1}.
    pub threshold: f64,
    pub sphere_area: f64,
    /// min over probes of density·σ_{n−1}.
    pub min_normalized: f64,
    pub verdict: Verdict,
    /// Confidence level of the per-probe interval (ci95).
    pub confidence: f64,
    pub slack: f64,
    pub walkers: u64,
    pub overflow_hits: u64,
    /// Caveat: probes are a heuristic; a verification means no probe refutes
    /// the bound, not a proof over the whole boundary.
    pub note: &'static str,
}

const VERDICT_NOTE: &str =
    "probe set is heuristic: 'verified' means no probe refutes the bound";

/// Harmonic measure of equal-arclength bins of a planar body, estimated from
/// `start`.
pub fn harmonic_measure_2d(
    body: &Body2,
    start: Point2,
    bins: usize,
    config: &WosConfig,
) -> Result<HarmonicMeasureEstimate, OracleError> {
    if bins == 0 {
        return Err(OracleError::NoBins);
    }
    config.validate(body.radii().inner())?;
    let sd = body.signed_distance(start).distance;
    if sd <= config.epsilon {
        return Err(OracleError::StartTooCloseToBoundary {
            distance: sd,
            epsilon: config.epsilon,
        });
    }
    let param = body.boundary_param();
    let total = param.total_length();
    let (hits, overflow) = sweep_hits(body, start, config, bins, |point, acc| {
        let s = param.arclength_of(point);
        let mut bin = ((s / total) * bins as f64) as usize;
        if bin >= bins {
            bin = bins - 1;
        }
        acc[bin] += 1;
    });
    Ok(HarmonicMeasureEstimate::from_hits(
        BinPartition::Arclength {
            count: bins,
            total_length: total,
        },
        hits,
        overflow,
        config.walkers,
    ))
}

/// Harmonic measure of the eight coordinate octants of a spatial body.
pub fn harmonic_measure_3d(
    body: &Body3,
    start: Point3,
    config: &WosConfig,
) -> Result<HarmonicMeasureEstimate, OracleError> {
    config.validate(body.radii().inner())?;
    let sd = body.signed_distance(start).distance;
    if sd <= config.epsilon {
        return Err(OracleError::StartTooCloseToBoundary {
            distance: sd,
            epsilon: config.epsilon,
        });
    }
    let (hits, overflow) = sweep_hits(body, start, config, 8, |point, acc| {
        let mut bin = 0;
        if point[0] > 0.0 {
            bin |= 1;
        }
        if point[1] > 0.0 {
            bin |= 2;
        }
        if point[2] > 0.0 {
            bin |= 4;
        }
        acc[bin] += 1;
    });
    Ok(HarmonicMeasureEstimate::from_hits(
        BinPartition::Octants,
        hits,
        overflow,
        config.walkers,
    ))
}

fn sweep_hits<const N: usize, D, F>(
    domain: &D,
    start: Point<N>,
    config: &WosConfig,
    bins: usize,
    score: F,
) -> (Vec<u64>, u64)
where
    D: SignedDomain<N> + Sync,
    F: Fn(Point<N>, &mut [u64]) + Sync,
{
    // Last slot is the overflow bin.
    let acc = parallel_sweep(
        config,
        || vec![0u64; bins + 1],
        |acc: &mut Vec<u64>, idx| match wos_exit(domain, start, config, idx) {
            WalkOutcome::Exit { point, .. } => score(point, &mut acc[..bins]),
            WalkOutcome::Overflow { .. } => acc[bins] += 1,
        },
        |acc, part| {
            for (a, b) in acc.iter_mut().zip(part) {
                *a += b;
            }
        },
    );
    let overflow = acc[bins];
    (acc[..bins].to_vec(), overflow)
}

/// Monte Carlo density estimate at a single boundary point.
pub fn density_at(
    body: &RoundedConvexBody,
    w: [f64; 3],
    delta: f64,
    config: &WosConfig,
) -> Result<DensityProbe, OracleError> {
    let report = probe_densities(body, config, delta, std::slice::from_ref(&w))?;
    Ok(report.0.into_iter().next().expect("one probe"))
}

/// Runs the shared-stream verification over the standard probe set.
pub fn verify_density(
    body: &RoundedConvexBody,
    config: &WosConfig,
    delta: f64,
    probe_count: usize,
    slack: f64,
) -> Result<VerificationReport, OracleError> {
    let probe_points: Vec<[f64; 3]> = body
        .probe_points_padded(probe_count)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let (probes, overflow) = probe_densities(body, config, delta, &probe_points)?;
    let sigma = sphere_area(body.dim()).expect("dimension 2 or 3");
    let threshold = 1.0 / sigma;
    let min_normalized = probes
        .iter()
        .map(|p| p.density * sigma)
        .fold(f64::INFINITY, f64::min);

    let refuted = probes
        .iter()
        .any(|p| !p.zero_hits && p.density + 3.0 * p.ci95 < threshold);
    let verified = probes
        .iter()
        .all(|p| !p.zero_hits && p.density - 3.0 * p.ci95 >= threshold * (1.0 - slack));
    // Overflowed walkers drain mass from every patch, biasing densities low;
    // past the diagnostic limit neither verdict is trustworthy.
    let overflow_excessive = overflow as f64 / config.walkers as f64 >= OVERFLOW_MASS_LIMIT;
    let verdict = if overflow_excessive {
        Verdict::Inconclusive
    } else if refuted {
        Verdict::Refuted
    } else if verified {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    Ok(VerificationReport {
        probes,
        threshold,
        sphere_area: sigma,
        min_normalized,
        verdict,
        confidence: 0.95,
        slack,
        walkers: config.walkers,
        overflow_hits: overflow,
        note: VERDICT_NOTE,
    })
}

/// Shared scoring pass: one walker stream from the origin, every exit point
/// tested against every probe patch.
fn probe_densities(
    body: &RoundedConvexBody,
    config: &WosConfig,
    delta: f64,
    probe_points: &[[f64; 3]],
) -> Result<(Vec<DensityProbe>, u64), OracleError> {
    let radii = body.radii();
    config.validate(radii.inner())?;
    if delta <= 0.0 {
        return Err(OracleError::DeltaNotPositive);
    }
    let max_delta = radii.curvature() / 10.0;
    if delta > max_delta * (1.0 + 1e-12) {
        return Err(OracleError::DeltaTooLarge {
            delta,
            max: max_delta,
        });
    }
    let boundary_tol = 1e-9 * radii.outer().max(1.0);

    match body {
        RoundedConvexBody::Two(b) => {
            let probes: Vec<Point2> = probe_points
                .iter()
                .map(|c| Point2::new(c[0], c[1]))
                .collect();
            let mut patches = Vec::with_capacity(probes.len());
            let mut regions = Vec::with_capacity(probes.len());
            for p in &probes {
                let sd = b.signed_distance(*p);
                if sd.distance.abs() > boundary_tol {
                    return Err(OracleError::ProbeOffBoundary { sd: sd.distance });
                }
                patches.push(b.patch_arclength(*p, delta));
                regions.push(sd.region);
            }
            let (hits, overflow) = score_probes(b, &probes, delta, config);
            Ok((
                build_probes(probe_points, &regions, &patches, &hits, delta, config),
                overflow,
            ))
        }
        RoundedConvexBody::Three(b) => {
            let probes: Vec<Point3> = probe_points
                .iter()
                .map(|c| Point3::new(c[0], c[1], c[2]))
                .collect();
            let mut patches = Vec::with_capacity(probes.len());
            let mut regions = Vec::with_capacity(probes.len());
            for p in &probes {
                let sd = b.signed_distance(*p);
                if sd.distance.abs() > boundary_tol {
                    return Err(OracleError::ProbeOffBoundary { sd: sd.distance });
                }
                patches.push(b.patch_area(*p, delta));
                regions.push(sd.region);
            }
            let (hits, overflow) = score_probes(b, &probes, delta, config);
            Ok((
                build_probes(probe_points, &regions, &patches, &hits, delta, config),
                overflow,
            ))
        }
    }
}

fn score_probes<const N: usize, D>(
    domain: &D,
    probes: &[Point<N>],
    delta: f64,
    config: &WosConfig,
) -> (Vec<u64>, u64)
where
    D: SignedDomain<N> + Sync,
{
    let k = probes.len();
    let acc = parallel_sweep(
        config,
        || vec![0u64; k + 1],
        |acc: &mut Vec<u64>, idx| match wos_exit(domain, Point::ZERO, config, idx) {
            WalkOutcome::Exit { point, .. } => {
                for (slot, probe) in acc[..k].iter_mut().zip(probes) {
                    if point.dist(*probe) <= delta {
                        *slot += 1;
                    }
                }
            }
            WalkOutcome::Overflow { .. } => acc[k] += 1,
        },
        |acc, part| {
            for (a, b) in acc.iter_mut().zip(part) {
                *a += b;
            }
        },
    );
    let overflow = acc[k];
    (acc[..k].to_vec(), overflow)
}

fn build_probes(
    points: &[[f64; 3]],
    regions: &[Region],
    patches: &[f64],
    hits: &[u64],
    delta: f64,
    config: &WosConfig,
) -> Vec<DensityProbe> {
    let walkers = config.walkers;
    points
        .iter()
        .zip(regions)
        .zip(patches)
        .zip(hits)
        .map(|(((point, region), &patch), &h)| {
            let probability = h as f64 / walkers as f64;
            let std_error = (probability * (1.0 - probability) / walkers as f64).sqrt();
            DensityProbe {
                point: *point,
                region: *region,
                delta,
                patch_measure: patch,
                hits: h,
                walkers,
                probability,
                std_error,
                density: probability / patch,
                ci95: Z95 * std_error / patch,
                zero_hits: h == 0,
            }
        })
        .collect()
}
