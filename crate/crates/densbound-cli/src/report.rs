//! Deterministic run reports: JSON with stable key order and the fixed-column
//! probe CSV.

use serde::Serialize;

use densbound::{DensityProbe, VerificationReport};

/// Everything a command run may report. Sections irrelevant to a command are
/// omitted; key order is fixed by declaration order so serialized reports are
/// byte-stable for fixed seeds.
#[derive(Serialize, Default)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<RadiiOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<ProbeOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct RadiiOut {
    pub outer: f64,
    pub inner: f64,
    pub curvature: f64,
}

#[derive(Serialize)]
pub struct CertificateOut {
    pub kind: String,
    pub n: usize,
    pub lhs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    pub satisfied: bool,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale_invariant_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
}

#[derive(Serialize)]
pub struct ScalingOut {
    pub lambda_max: f64,
    pub residual: f64,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum TraceOut {
    Planar {
        d: f64,
        touching_disk_bound: f64,
        cone_bound: f64,
        near_boundary_lower: f64,
        comparison_rhs: f64,
        d_star: f64,
    },
    Spatial {
        n: usize,
        d: f64,
        harnack_factor: f64,
        ball_minorant: f64,
        chain_penalty: f64,
        density_ratio_bound: f64,
        limit: f64,
    },
}

#[derive(Serialize)]
pub struct ProbeOut {
    pub region: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub delta: f64,
    pub patch_measure: f64,
    pub hits: u64,
    pub probability: f64,
    pub density: f64,
    pub normalized_density: f64,
    pub ci95: f64,
    pub flag: String,
}

impl ProbeOut {
    pub fn from_probe(p: &DensityProbe, sphere_area: f64) -> ProbeOut {
        ProbeOut {
            region: p.region.as_str().to_string(),
            x: p.point[0],
            y: p.point[1],
            z: p.point[2],
            delta: p.delta,
            patch_measure: p.patch_measure,
            hits: p.hits,
            probability: p.probability,
            density: p.density,
            normalized_density: p.density * sphere_area,
            ci95: p.ci95,
            flag: probe_flag(p).to_string(),
        }
    }
}

fn probe_flag(p: &DensityProbe) -> &'static str {
    if p.zero_hits {
        "zero-hits"
    } else {
        "ok"
    }
}

pub const CSV_HEADER: &str = "probe,region,x,y,z,delta,patch_measure,hits,walkers,probability,std_error,density,normalized_density,ci95,flag";

/// The probe table as CSV with the documented fixed column order. Floats use
/// shortest round-trip formatting, so the bytes are stable for fixed seeds.
pub fn probes_csv(report: &VerificationReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (i, p) in report.probes.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            i,
            p.region.as_str(),
            p.point[0],
            p.point[1],
            p.point[2],
            p.delta,
            p.patch_measure,
            p.hits,
            p.walkers,
            p.probability,
            p.std_error,
            p.density,
            p.density * report.sphere_area,
            p.ci95,
            probe_flag(p),
        ));
    }
    out
}

pub fn report_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// 12-significant-digit rendering used for the radii printout.
pub fn sig12(x: f64) -> String {
    format!("{:.11e}", x)
}
