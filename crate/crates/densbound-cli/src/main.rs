//! Command-line front end: certificate evaluation, scaling, proof traces,
//! Monte Carlo verification and report emission for rounded convex domains.
//!
//! Exit codes: 0 pass/satisfied/verified, 1 fail/refuted, 2 inconclusive,
//! 3 input error, 4 internal error.

mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use densbound::{
    certify_planar, certify_spatial, density_limit, density_lower_bound, harmonic_measure_2d,
    max_scaling_planar, max_scaling_spatial, planar_proof_trace, verify_density, Body2,
    DimensionContext, DomainSpecFile, Point2, RoundedConvexBody, Verdict, VerificationReport,
    WosConfig,
};

use report::{
    probes_csv, report_json, sig12, CertificateOut, ProbeOut, RadiiOut, RunReport, ScalingOut,
    TraceOut,
};

#[derive(Parser)]
#[command(
    name = "densbound",
    about = "Certify conformal-contraction and harmonic-measure density bounds for rounded convex domains",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the outer, inner and curvature radii of a domain file.
    Radii {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate the certificate: planar for dim 2, spatial for dim 3.
    Certify {
        file: PathBuf,
        /// Ambient dimension override (>= 3 evaluates the spatial
        /// certificate on the body's radii).
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the maximally rescaled domain file (generators and radius
    /// multiplied by lambda_max) on standard output.
    Scale {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Monte Carlo verification of the density threshold at boundary probes.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        mc: McOpts,
        /// Write the probe table as CSV to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the bound-chain diagnostics: planar proof trace (dim 2) or the
    /// Green's-function factor table with its d -> 0 limit (dim 3).
    Trace {
        file: PathBuf,
        /// Boundary offset d (default R_C/2).
        #[arg(long)]
        d: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Write report.csv (probe table) and, for planar domains, domain.svg
    /// into the output directory.
    Report {
        file: PathBuf,
        /// Output directory (created if missing). Nothing is written outside
        /// of it.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        mc: McOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Self-test of the walk-on-spheres oracle on the unit disk.
    OracleDisk {
        #[arg(long, default_value_t = 100_000)]
        walkers: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Write the run report as JSON to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include wall-clock timing in the report (off by default to keep
    /// reports byte-stable).
    #[arg(long, default_value_t = false)]
    timing: bool,
}

#[derive(Args)]
struct McOpts {
    #[arg(long)]
    walkers: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Patch radius (default R_C/10).
    #[arg(long)]
    delta: Option<f64>,
    /// Absorption shell thickness (default 1e-5 * R_I).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Extra spread probes beyond the piece representatives.
    #[arg(long, default_value_t = 8)]
    probes: usize,
    /// Verification slack on the threshold.
    #[arg(long, default_value_t = 0.05)]
    slack: f64,
    /// Worker threads (affects speed only, never results).
    #[arg(long)]
    workers: Option<usize>,
}

enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    // Die quietly when a pipe consumer closes stdout early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(0),
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let started = Instant::now();
    match cli.command {
        Command::Radii { file, common } => {
            let loaded = load(&file)?;
            let radii = loaded.body.radii();
            println!("R_O = {}", sig12(radii.outer()));
            println!("R_I = {}", sig12(radii.inner()));
            println!("R_C = {}", sig12(radii.curvature()));
            let mut rep = base_report("radii", &loaded);
            rep.radii = Some(radii_out(&loaded.body));
            finish(rep, &common, started)?;
            Ok(0)
        }
        Command::Certify { file, n, common } => {
            let loaded = load(&file)?;
            let (cert, code) = run_certify(&loaded.body, n)?;
            let mut rep = base_report("certify", &loaded);
            rep.radii = Some(radii_out(&loaded.body));
            rep.certificate = Some(cert);
            finish(rep, &common, started)?;
            Ok(code)
        }
        Command::Scale { file, common } => {
            let loaded = load(&file)?;
            let radii = loaded.body.radii();
            let (scaling, scaled) = match loaded.body.dim() {
                2 => {
                    let s = max_scaling_planar(&radii);
                    (s, loaded.body.scaled(s.lambda_max).map_err(input_err)?)
                }
                _ => {
                    let ctx = DimensionContext::new(3).map_err(input_err)?;
                    let s = max_scaling_spatial(&radii, &ctx).map_err(input_err)?;
                    (s, loaded.body.scaled(s.lambda_max).map_err(input_err)?)
                }
            };
            eprintln!("lambda_max = {}", sig12(scaling.lambda_max));
            eprintln!("residual   = {:e}", scaling.residual);
            println!("{}", DomainSpecFile::from_body(&scaled).to_json());
            let mut rep = base_report("scale", &loaded);
            rep.radii = Some(radii_out(&loaded.body));
            rep.scaling = Some(ScalingOut {
                lambda_max: scaling.lambda_max,
                residual: scaling.residual,
            });
            finish(rep, &common, started)?;
            Ok(0)
        }
        Command::Verify {
            file,
            mc,
            out,
            common,
        } => {
            let loaded = load(&file)?;
            let (verification, cfg) = run_verification(&loaded.body, &mc)?;
            print_verification(&verification);
            if let Some(path) = &out {
                std::fs::write(path, probes_csv(&verification))
                    .map_err(|e| CliError::Internal(format!("writing {}: {e}", path.display())))?;
            }
            let mut rep = base_report("verify", &loaded);
            rep.radii = Some(radii_out(&loaded.body));
            rep.probes = Some(probe_outs(&verification));
            rep.verdict = Some(verification.verdict.as_str().to_string());
            rep.min_normalized = Some(verification.min_normalized);
            rep.note = Some(verification.note.to_string());
            rep.seed = Some(cfg.seed);
            finish(rep, &common, started)?;
            Ok(verdict_code(verification.verdict))
        }
        Command::Trace { file, d, common } => {
            let loaded = load(&file)?;
            let radii = loaded.body.radii();
            let d = d.unwrap_or(radii.curvature() / 2.0);
            let trace = match loaded.body.dim() {
                2 => {
                    let t = planar_proof_trace(&radii, d).map_err(input_err)?;
                    println!("d                   = {}", sig12(t.d));
                    println!("touching_disk_bound = {}", sig12(t.touching_disk_bound));
                    println!("cone_bound          = {}", sig12(t.cone_bound));
                    println!("near_boundary_lower = {}", sig12(t.near_boundary_lower));
                    println!("comparison_rhs      = {}", sig12(t.comparison_rhs));
                    println!("d_star              = {}", sig12(t.d_star));
                    TraceOut::Planar {
                        d: t.d,
                        touching_disk_bound: t.touching_disk_bound,
                        cone_bound: t.cone_bound,
                        near_boundary_lower: t.near_boundary_lower,
                        comparison_rhs: t.comparison_rhs,
                        d_star: t.d_star,
                    }
                }
                _ => {
                    let n = 3;
                    let g = density_lower_bound(&radii, n, d).map_err(input_err)?;
                    let limit = density_limit(&radii, n).map_err(input_err)?;
                    println!("n                   = {n}");
                    println!("d                   = {}", sig12(g.d));
                    println!("harnack_factor      = {}", sig12(g.harnack_factor));
                    println!("ball_minorant       = {}", sig12(g.ball_minorant));
                    println!("chain_penalty       = {}", sig12(g.chain_penalty));
                    println!("density_ratio_bound = {}", sig12(g.density_ratio_bound));
                    println!("limit_d_to_0        = {}", sig12(limit));
                    TraceOut::Spatial {
                        n,
                        d: g.d,
                        harnack_factor: g.harnack_factor,
                        ball_minorant: g.ball_minorant,
                        chain_penalty: g.chain_penalty,
                        density_ratio_bound: g.density_ratio_bound,
                        limit,
                    }
                }
            };
            let mut rep = base_report("trace", &loaded);
            rep.radii = Some(radii_out(&loaded.body));
            rep.trace = Some(trace);
            finish(rep, &common, started)?;
            Ok(0)
        }
        Command::Report {
            file,
            out,
            mc,
            common,
        } => {
            let loaded = load(&file)?;
            let (verification, cfg) = run_verification(&loaded.body, &mc)?;
            std::fs::create_dir_all(&out)
                .map_err(|e| CliError::Internal(format!("creating {}: {e}", out.display())))?;
            let csv_path = out.join("report.csv");
            std::fs::write(&csv_path, probes_csv(&verification))
                .map_err(|e| CliError::Internal(format!("writing {}: {e}", csv_path.display())))?;
            println!("wrote {}", csv_path.display());
            if let RoundedConvexBody::Two(b) = &loaded.body {
                let svg_path = out.join("domain.svg");
                std::fs::write(&svg_path, svg::render(b, Some(&verification))).map_err(|e| {
                    CliError::Internal(format!("writing {}: {e}", svg_path.display()))
                })?;
                println!("wrote {}", svg_path.display());
            }
            print_verification(&verification);
            let mut rep = base_report("report", &loaded);
            rep.radii = Some(radii_out(&loaded.body));
            rep.probes = Some(probe_outs(&verification));
            rep.verdict = Some(verification.verdict.as_str().to_string());
            rep.min_normalized = Some(verification.min_normalized);
            rep.seed = Some(cfg.seed);
            finish(rep, &common, started)?;
            Ok(verdict_code(verification.verdict))
        }
        Command::OracleDisk {
            walkers,
            seed,
            common,
        } => {
            let code = oracle_disk_selftest(walkers, seed)?;
            let rep = RunReport {
                command: "oracle-disk".to_string(),
                seed: Some(seed),
                verdict: Some(if code == 0 { "pass" } else { "fail" }.to_string()),
                ..RunReport::default()
            };
            finish(rep, &common, started)?;
            Ok(code)
        }
    }
}

struct Loaded {
    body: RoundedConvexBody,
    hash: String,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Input(format!("{} is not UTF-8: {e}", path.display())))?;
    let spec = DomainSpecFile::from_json(text)
        .map_err(|e| CliError::Input(format!("parsing {}: {e}", path.display())))?;
    let body = spec
        .build()
        .map_err(|e| CliError::Input(format!("invalid domain {}: {e}", path.display())))?;
    let hash = format!("{:x}", Sha256::digest(&bytes));
    Ok(Loaded { body, hash })
}

fn base_report(command: &str, loaded: &Loaded) -> RunReport {
    RunReport {
        command: command.to_string(),
        input_hash: Some(loaded.hash.clone()),
        ..RunReport::default()
    }
}

fn radii_out(body: &RoundedConvexBody) -> RadiiOut {
    let radii = body.radii();
    RadiiOut {
        outer: radii.outer(),
        inner: radii.inner(),
        curvature: radii.curvature(),
    }
}

fn run_certify(
    body: &RoundedConvexBody,
    n_override: Option<usize>,
) -> Result<(CertificateOut, u8), CliError> {
    let radii = body.radii();
    let n = n_override.unwrap_or(body.dim());
    if n < 2 {
        return Err(CliError::Input(format!("dimension {n} below 2")));
    }
    if body.dim() == 3 && n < 3 {
        return Err(CliError::Input(
            "a spatial body cannot be certified with planar semantics (--n < 3)".to_string(),
        ));
    }
    if n == 2 {
        let cert = certify_planar(&radii);
        println!(
            "planar certificate: lhs = {} -> {}",
            sig12(cert.lhs),
            if cert.satisfied {
                "satisfied"
            } else {
                "not satisfied"
            }
        );
        let out = CertificateOut {
            kind: "planar".to_string(),
            n: 2,
            lhs: cert.lhs,
            rhs: None,
            satisfied: cert.satisfied,
            margin: cert.margin,
            scale_invariant_term: Some(cert.scale_invariant_term),
            exponent: None,
        };
        Ok((out, if cert.satisfied { 0 } else { 1 }))
    } else {
        let ctx = DimensionContext::new(n).map_err(input_err)?;
        let cert = certify_spatial(&radii, &ctx).map_err(input_err)?;
        println!(
            "spatial certificate (n = {n}): lhs = {} vs rhs = {} -> {}",
            sig12(cert.lhs),
            sig12(cert.rhs),
            if cert.satisfied {
                "satisfied"
            } else {
                "not satisfied"
            }
        );
        let out = CertificateOut {
            kind: "spatial".to_string(),
            n,
            lhs: cert.lhs,
            rhs: Some(cert.rhs),
            satisfied: cert.satisfied,
            margin: cert.rhs - cert.lhs,
            scale_invariant_term: None,
            exponent: Some(cert.exponent),
        };
        Ok((out, if cert.satisfied { 0 } else { 1 }))
    }
}

fn run_verification(
    body: &RoundedConvexBody,
    mc: &McOpts,
) -> Result<(VerificationReport, WosConfig), CliError> {
    let radii = body.radii();
    let mut cfg = WosConfig::defaults_for_inner_radius(radii.inner());
    cfg.seed = mc.seed;
    if let Some(w) = mc.walkers {
        cfg.walkers = w;
    }
    if let Some(e) = mc.epsilon {
        cfg.epsilon = e;
    }
    if let Some(w) = mc.workers {
        cfg.workers = w.max(1);
    }
    // The widest admissible patch: tighter patches leave the verified rule
    // statistically unreachable at the default walker count even for a body
    // whose density sits exactly on the threshold.
    let delta = mc.delta.unwrap_or(radii.curvature() / 10.0);
    let verification = verify_density(body, &cfg, delta, mc.probes, mc.slack).map_err(input_err)?;
    Ok((verification, cfg))
}

fn print_verification(v: &VerificationReport) {
    println!(
        "verdict: {} (min normalized density {:.6}, threshold 1/sigma = {:.6}, slack {})",
        v.verdict.as_str(),
        v.min_normalized,
        v.threshold,
        v.slack
    );
    println!("note: {}", v.note);
    for (i, p) in v.probes.iter().enumerate() {
        println!(
            "probe {:>2} [{:>13}] at ({:+.6}, {:+.6}, {:+.6}): normalized {:.4} +- {:.4} ({} hits)",
            i,
            p.region.as_str(),
            p.point[0],
            p.point[1],
            p.point[2],
            p.density * v.sphere_area,
            p.ci95 * v.sphere_area,
            p.hits
        );
    }
}

fn probe_outs(v: &VerificationReport) -> Vec<ProbeOut> {
    v.probes
        .iter()
        .map(|p| ProbeOut::from_probe(p, v.sphere_area))
        .collect()
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Verified => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    }
}

fn finish(mut rep: RunReport, common: &CommonOpts, started: Instant) -> Result<(), CliError> {
    if common.timing {
        rep.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    if let Some(path) = &common.report {
        std::fs::write(path, report_json(&rep))
            .map_err(|e| CliError::Internal(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Walk-on-spheres self-test on the unit disk: exit-angle uniformity
/// (Kolmogorov-Smirnov at alpha = 0.01), half-circle harmonic measure, and
/// probe densities against 1/(2π).
fn oracle_disk_selftest(walkers: u64, seed: u64) -> Result<u8, CliError> {
    use densbound::oracle::{parallel_sweep, wos_exit, WalkOutcome};

    let body = Body2::new(&[Point2::ZERO], 1.0).map_err(input_err)?;
    let mut cfg = WosConfig::defaults_for_inner_radius(1.0);
    cfg.walkers = walkers;
    cfg.seed = seed;
    let mut pass = true;

    // Kolmogorov-Smirnov: exit angles against the uniform law.
    let mut angles: Vec<f64> = parallel_sweep(
        &cfg,
        Vec::new,
        |acc: &mut Vec<f64>, idx| {
            if let WalkOutcome::Exit { point, .. } = wos_exit(&body, Point2::ZERO, &cfg, idx) {
                acc.push(point.angle().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU);
            }
        },
        |acc, part| acc.extend(part),
    );
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = angles.len() as f64;
    let mut ks = 0.0_f64;
    for (i, u) in angles.iter().enumerate() {
        let lo = i as f64 / n;
        let hi = (i as f64 + 1.0) / n;
        ks = ks.max((u - lo).abs()).max((hi - u).abs());
    }
    let ks_limit = 1.628 / n.sqrt();
    println!(
        "KS statistic: {:.6} (limit {:.6} at alpha = 0.01, n = {}) -> {}",
        ks,
        ks_limit,
        angles.len(),
        if ks < ks_limit { "pass" } else { "FAIL" }
    );
    pass &= ks < ks_limit;

    // Half-circle harmonic measure: the fixed 0.003 band of the million
    // walker calibration, widened to 4 sigma for smaller runs.
    let est = harmonic_measure_2d(&body, Point2::ZERO, 2, &cfg).map_err(input_err)?;
    let band = 0.003_f64.max(4.0 * (0.25 / walkers as f64).sqrt());
    for (i, p) in est.probabilities.iter().enumerate() {
        let ok = (p - 0.5).abs() < band;
        println!(
            "half-circle bin {i}: {:.6} (band {:.6}) -> {}",
            p,
            band,
            if ok { "pass" } else { "FAIL" }
        );
        pass &= ok;
    }

    // Probe densities against the uniform value.
    let wrapped = RoundedConvexBody::Two(body);
    let verification = verify_density(&wrapped, &cfg, 0.05, 4, 0.05).map_err(input_err)?;
    let expect = 1.0 / (2.0 * std::f64::consts::PI);
    for (i, p) in verification.probes.iter().enumerate() {
        let band = 3.0 * (p.ci95 / 1.959963984540054);
        let ok = (p.density - expect).abs() <= band.max(1e-4);
        println!(
            "probe {i}: density {:.6} vs 1/(2pi) = {:.6} (3 sigma band {:.6}) -> {}",
            p.density,
            expect,
            band,
            if ok { "pass" } else { "FAIL" }
        );
        pass &= ok;
    }

    Ok(if pass { 0 } else { 1 })
}
