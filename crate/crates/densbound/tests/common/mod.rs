//! Shared helpers for the integration test suites: a deterministic LCG and
//! random body generators.

#![allow(dead_code)]

use densbound::{Body2, Body3, Point2, Point3};

/// Small deterministic generator so test inputs are reproducible without
/// pulling the production RNG into the oracle side.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

/// A random planar body with the origin interior: generators scattered in a
/// disk, rounding radius large enough to swallow the hull's offset from 0.
pub fn random_body2(rng: &mut Lcg) -> Body2 {
    loop {
        let k = 1 + (rng.next_u64() % 6) as usize;
        let pts: Vec<Point2> = (0..k)
            .map(|_| {
                let ang = rng.range(0.0, std::f64::consts::TAU);
                let rad = rng.range(0.0, 0.8);
                Point2::new(rad * ang.cos(), rad * ang.sin())
            })
            .collect();
        let r = rng.range(0.9, 2.0);
        if let Ok(body) = Body2::new(&pts, r) {
            return body;
        }
    }
}

pub fn random_body3(rng: &mut Lcg) -> Body3 {
    loop {
        let k = 1 + (rng.next_u64() % 6) as usize;
        let pts: Vec<Point3> = (0..k)
            .map(|_| {
                Point3::new(
                    rng.range(-0.6, 0.6),
                    rng.range(-0.6, 0.6),
                    rng.range(-0.6, 0.6),
                )
            })
            .collect();
        let r = rng.range(1.1, 2.0);
        if let Ok(body) = Body3::new(&pts, r) {
            return body;
        }
    }
}

/// Random valid radii triple with moderate dynamic range.
pub fn random_radii(rng: &mut Lcg) -> densbound::RadiiTriple {
    let inner = rng.range(0.3, 1.2);
    let curvature = rng.range(0.3, 1.2);
    let outer = inner.max(curvature) * rng.range(1.0, 1.5);
    densbound::RadiiTriple::new(outer, inner, curvature).unwrap()
}
