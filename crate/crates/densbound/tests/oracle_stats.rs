//! Statistical validation of the walk-on-spheres oracle against analytic
//! references: Poisson kernels, symmetry laws, the Möbius-map duality, and
//! the determinism/conservation contracts.

mod common;

use common::Lcg;
use densbound::oracle::{parallel_sweep, wos_exit, WalkOutcome};
use densbound::{
    density_at, harmonic_measure_2d, harmonic_measure_3d, poisson_density, verify_density, Body2,
    Body3, Point2, Point3, RoundedConvexBody, Verdict, WosConfig,
};

fn config(walkers: u64, seed: u64, epsilon: f64) -> WosConfig {
    WosConfig {
        epsilon,
        max_steps: 1_000_000,
        walkers,
        seed,
        workers: 8,
    }
}

fn offcenter_disk() -> Body2 {
    Body2::new(&[Point2::new(0.9, 0.0)], 1.0).unwrap()
}

#[test]
fn exits_concentrate_near_start_when_started_near_boundary() {
    let body = Body2::new(&[Point2::ZERO], 1.0).unwrap();
    let epsilon = 1e-5;
    let cfg = config(4_000, 3, epsilon);
    let start = Point2::new(1.0 - 2.0 * epsilon, 0.0);
    let nearest = Point2::new(1.0, 0.0);
    let radius = 10.0 * (epsilon * 1.0_f64).sqrt();
    let mut within = 0_u64;
    for idx in 0..cfg.walkers {
        if let WalkOutcome::Exit { point, .. } = wos_exit(&body, start, &cfg, idx) {
            if point.dist(nearest) <= radius {
                within += 1;
            }
        }
    }
    let fraction = within as f64 / cfg.walkers as f64;
    assert!(
        fraction > 0.5,
        "only {fraction} of mass within 10 sqrt(eps R_C) of the nearest point"
    );
}

#[test]
fn off_center_disk_bins_match_poisson_quadrature() {
    let body = offcenter_disk();
    // R_I = 0.1, so the default-epsilon scale is 1e-6.
    let cfg = config(400_000, 0, 1e-6);
    let bins = 16;
    let est = harmonic_measure_2d(&body, Point2::ZERO, bins, &cfg).unwrap();
    assert_eq!(est.hits.iter().sum::<u64>() + est.overflow_hits, cfg.walkers);
    assert!(!est.overflow_flagged);

    // Analytic bin masses: arclength bins of the circle of radius 1 around
    // (0.9, 0), starting at the canonical boundary start (angle 0), by
    // Simpson quadrature of the Poisson kernel.
    let center = Point2::new(0.9, 0.0);
    let total = std::f64::consts::TAU;
    for (i, (&hit, se)) in est.hits.iter().zip(&est.std_errors).enumerate() {
        let lo = total * i as f64 / bins as f64;
        let hi = total * (i + 1) as f64 / bins as f64;
        let n = 2_000;
        let mut mass = 0.0;
        for j in 0..n {
            let t0 = lo + (hi - lo) * j as f64 / n as f64;
            let t1 = lo + (hi - lo) * (j + 1) as f64 / n as f64;
            let f = |t: f64| {
                poisson_density(center, 1.0, Point2::ZERO, center + Point2::from_angle(t))
                    .unwrap()
            };
            mass += (t1 - t0) / 6.0 * (f(t0) + 4.0 * f(0.5 * (t0 + t1)) + f(t1));
        }
        let observed = hit as f64 / cfg.walkers as f64;
        assert!(
            (observed - mass).abs() <= 3.0 * se.max(1e-6) + 1e-4 * mass,
            "bin {i}: observed {observed} vs analytic {mass} (se {se})"
        );
    }
}

#[test]
fn unit_ball_octants_split_evenly() {
    let body = Body3::new(&[Point3::ZERO], 1.0).unwrap();
    let cfg = config(200_000, 1, 1e-5);
    let est = harmonic_measure_3d(&body, Point3::ZERO, &cfg).unwrap();
    assert_eq!(est.hits.len(), 8);
    assert_eq!(est.hits.iter().sum::<u64>() + est.overflow_hits, cfg.walkers);
    for (p, se) in est.probabilities.iter().zip(&est.std_errors) {
        assert!((p - 0.125).abs() <= 3.0 * se, "octant mass {p}");
    }
}

#[test]
fn unit_ball_cap_receives_its_solid_angle_fraction() {
    let body = Body3::new(&[Point3::ZERO], 1.0).unwrap();
    let cfg = config(200_000, 2, 1e-5);
    // Polar cap of aperture theta: solid-angle fraction (1 - cos theta)/2.
    let theta: f64 = 0.7;
    let fraction = (1.0 - theta.cos()) / 2.0;
    let hits = parallel_sweep(
        &cfg,
        || 0u64,
        |acc, idx| {
            if let WalkOutcome::Exit { point, .. } = wos_exit(&body, Point3::ZERO, &cfg, idx) {
                if point[2] >= theta.cos() {
                    *acc += 1;
                }
            }
        },
        |acc, part| *acc += part,
    );
    let observed = hits as f64 / cfg.walkers as f64;
    let sigma = (fraction * (1.0 - fraction) / cfg.walkers as f64).sqrt();
    assert!(
        (observed - fraction).abs() <= 3.0 * sigma,
        "cap mass {observed} vs {fraction}"
    );
}

#[test]
fn unit_ball_pole_density_matches_uniform() {
    let body = RoundedConvexBody::Three(Body3::new(&[Point3::ZERO], 1.0).unwrap());
    let cfg = config(400_000, 0, 1e-5);
    let probe = density_at(&body, [0.0, 0.0, 1.0], 0.05, &cfg).unwrap();
    let expect = 1.0 / (4.0 * std::f64::consts::PI);
    let sigma = probe.std_error / probe.patch_measure;
    assert!(
        (probe.density - expect).abs() <= 3.0 * sigma + 0.01 * expect,
        "ball density {} vs {expect}",
        probe.density
    );
    // Patch of a chord-delta cap on a sphere is exactly pi delta^2.
    let exact_patch = std::f64::consts::PI * 0.05 * 0.05;
    assert!((probe.patch_measure - exact_patch).abs() < 1e-6 * exact_patch);
}

/// Conformal duality on the one family where the map is explicit: the Möbius
/// map g of D(c, R) onto the unit disk with g(0) = 0 has |g'| equal to 2π
/// times the harmonic measure density. The Monte Carlo density must match
/// the patch average of |g'|/(2π) at every probe.
#[test]
fn off_center_disk_density_matches_mobius_derivative() {
    let body = offcenter_disk();
    let cfg = config(600_000, 0, 1e-6);
    let delta = 0.05;
    let alpha = -0.9; // -c/R for c = (0.9, 0), R = 1.
    let g_prime = |w: Point2| {
        // |g'(w)| = (1 - alpha^2) / (R |1 - alpha (w - c)/R|^2).
        let zeta = w - Point2::new(0.9, 0.0);
        let denom = Point2::new(1.0 - alpha * zeta.x(), -alpha * zeta.y()).norm_sq();
        (1.0 - alpha * alpha) / denom
    };
    let wrapped = RoundedConvexBody::Two(body.clone());
    let param = body.boundary_param();
    for w in [
        Point2::new(1.9, 0.0),
        Point2::new(0.9, 1.0),
        Point2::new(-0.1, 0.0),
        Point2::new(0.9 + 0.6, -0.8),
    ] {
        let probe = density_at(&wrapped, [w.x(), w.y(), 0.0], delta, &cfg).unwrap();
        // Patch average of the analytic density over the chord patch.
        let s0 = param.arclength_of(w);
        let n = 400;
        let mut avg = 0.0;
        let mut len = 0.0;
        for j in 0..n {
            let s = s0 - delta + 2.0 * delta * (j as f64 + 0.5) / n as f64;
            let p = param.eval(s).position;
            if p.dist(w) <= delta {
                avg += g_prime(p) / (2.0 * std::f64::consts::PI);
                len += 1.0;
            }
        }
        avg /= len;
        let sigma = probe.std_error / probe.patch_measure;
        assert!(
            (probe.density - avg).abs() <= 3.0 * sigma + 0.01 * avg,
            "at {w:?}: MC {} vs Mobius {avg}",
            probe.density
        );
    }
}

#[test]
fn off_center_disk_refuted_with_poisson_agreement() {
    let body = RoundedConvexBody::Two(offcenter_disk());
    let cfg = config(400_000, 0, 1e-6);
    let report = verify_density(&body, &cfg, 0.05, 4, 0.05).unwrap();
    assert_eq!(report.verdict, Verdict::Refuted);
    // The far probe (1.9, 0) is included and strongly sub-threshold.
    let far = report
        .probes
        .iter()
        .find(|p| (p.point[0] - 1.9).abs() < 1e-9)
        .expect("farthest probe present");
    let normalized = far.density * report.sphere_area;
    assert!(normalized < 0.2, "far-point density {normalized}");
}

#[test]
fn determinism_and_conservation() {
    let body = RoundedConvexBody::Two(offcenter_disk());
    let run = |workers: usize, seed: u64| {
        let mut cfg = config(50_000, seed, 1e-6);
        cfg.workers = workers;
        let rep = verify_density(&body, &cfg, 0.05, 6, 0.05).unwrap();
        (
            rep.probes.iter().map(|p| p.hits).collect::<Vec<_>>(),
            rep.overflow_hits,
        )
    };
    let (h1, _) = run(1, 9);
    let (h4, _) = run(4, 9);
    let (h8, _) = run(8, 9);
    assert_eq!(h1, h4);
    assert_eq!(h1, h8);
    // A different seed must give different counts.
    let (h_other, _) = run(4, 10);
    assert_ne!(h1, h_other);

    // Conservation with a step cap low enough to overflow some walkers.
    let body2 = Body2::new(&[Point2::new(0.9, 0.0)], 1.0).unwrap();
    let mut cfg = config(20_000, 0, 1e-6);
    cfg.max_steps = 12;
    let est = harmonic_measure_2d(&body2, Point2::ZERO, 8, &cfg).unwrap();
    assert_eq!(est.hits.iter().sum::<u64>() + est.overflow_hits, cfg.walkers);
    assert!(est.overflow_hits > 0, "cap of 12 steps should overflow");
    assert!(est.overflow_flagged);
}

#[test]
fn epsilon_halving_stays_within_noise() {
    // Off-center disk: walks from the pole take many steps, so the shell
    // thickness genuinely enters (the centered disk exits in one jump).
    let body = RoundedConvexBody::Two(offcenter_disk());
    let delta = 0.05;
    let coarse = density_at(&body, [1.9, 0.0, 0.0], delta, &config(300_000, 0, 1e-6)).unwrap();
    let fine = density_at(&body, [1.9, 0.0, 0.0], delta, &config(300_000, 0, 5e-7)).unwrap();
    assert_ne!(coarse.hits, 0);
    let band = 3.0 * (coarse.std_error / coarse.patch_measure);
    assert!(
        (coarse.density - fine.density).abs() < band,
        "epsilon bias {} vs band {band}",
        (coarse.density - fine.density).abs()
    );
}

#[test]
fn zero_hit_probes_turn_inconclusive_not_refuted() {
    // Tiny walker count: far probe of the off-center disk gets no hits.
    let body = RoundedConvexBody::Two(offcenter_disk());
    let cfg = config(40, 4, 1e-6);
    let report = verify_density(&body, &cfg, 0.05, 2, 0.05).unwrap();
    assert!(report.probes.iter().any(|p| p.zero_hits));
    assert_eq!(report.verdict, Verdict::Inconclusive);
}

#[test]
fn excessive_overflow_forces_inconclusive() {
    // A step cap of 2 makes most walkers of the thin off-center disk
    // overflow; the biased estimates must not refute.
    let body = RoundedConvexBody::Two(offcenter_disk());
    let mut cfg = config(30_000, 0, 1e-6);
    cfg.max_steps = 2;
    let report = verify_density(&body, &cfg, 0.05, 2, 0.05).unwrap();
    assert!(report.overflow_hits as f64 / cfg.walkers as f64 >= 1e-4);
    assert_eq!(report.verdict, Verdict::Inconclusive);
}

#[test]
fn walker_streams_are_independent_of_others_running() {
    // wos_exit for a fixed walker index is a pure function of (seed, index).
    let body = Body2::new(&[Point2::ZERO], 1.0).unwrap();
    let cfg = config(1, 123, 1e-5);
    let solo = match wos_exit(&body, Point2::ZERO, &cfg, 77) {
        WalkOutcome::Exit { point, steps } => (point, steps),
        WalkOutcome::Overflow { .. } => panic!("no overflow"),
    };
    let mut rng = Lcg::new(0);
    for _ in 0..5 {
        let _ = rng.next_u64();
        let again = match wos_exit(&body, Point2::ZERO, &cfg, 77) {
            WalkOutcome::Exit { point, steps } => (point, steps),
            WalkOutcome::Overflow { .. } => panic!("no overflow"),
        };
        assert_eq!(solo.0, again.0);
        assert_eq!(solo.1, again.1);
    }
}
