//! Spatial rounded bodies: distance queries, boundary pieces, probe points
//! and patch areas.

use crate::geometry::hull3::{convex_hull_3d, Hull3};
use crate::geometry::patch3;
use crate::geometry::project::project_hull;
use crate::geometry::{GeometryError, RadiiTriple, Region, SignedDistanceResult, SignedDomain};
use crate::point::Point3;

const TAU: f64 = std::f64::consts::TAU;

/// A rounded convex body in space: conv(generators) ⊕ r·B.
#[derive(Clone, Debug)]
pub struct Body3 {
    /// Hull extreme points, lexicographically sorted.
    gens: Vec<Point3>,
    r: f64,
    hull: Hull3,
}

/// One boundary piece of a spatial body.
#[derive(Clone, Debug)]
pub enum Piece3 {
    /// Flat offset of a hull facet; `ring` is already pushed out by r·normal.
    Facet { ring: Vec<Point3>, normal: Point3 },
    /// Cylindrical band around hull edge [a, b]: points
    /// lerp(a,b,t) + r·(cos φ e1 + sin φ e2), φ ∈ [0, phi_end].
    Cylinder {
        a: Point3,
        b: Point3,
        e1: Point3,
        e2: Point3,
        phi_end: f64,
    },
    /// Spherical cap around a hull vertex, cut by its normal cone.
    Sphere { vertex: Point3 },
}

impl Body3 {
    pub fn new(points: &[Point3], rounding: f64) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyGenerators);
        }
        if !rounding.is_finite() || rounding <= 0.0 {
            return Err(GeometryError::NonPositiveRounding);
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFiniteInput);
        }
        let hull = convex_hull_3d(points);
        let body = Body3 {
            gens: hull.verts,
            r: rounding,
            hull: hull.shape,
        };
        let inner = body.signed_distance(Point3::ZERO).distance;
        if inner <= 0.0 {
            return Err(GeometryError::OriginNotInterior(inner));
        }
        Ok(body)
    }

    pub fn generators(&self) -> &[Point3] {
        &self.gens
    }

    pub fn rounding(&self) -> f64 {
        self.r
    }

    pub fn scaled(&self, lambda: f64) -> Result<Body3, GeometryError> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(GeometryError::NonPositiveRounding);
        }
        let pts: Vec<Point3> = self.gens.iter().map(|p| *p * lambda).collect();
        Body3::new(&pts, self.r * lambda)
    }

    pub fn radii(&self) -> RadiiTriple {
        let far = self.gens.iter().map(|p| p.norm()).fold(0.0_f64, f64::max);
        let outer = far + self.r;
        let inner = self.signed_distance(Point3::ZERO).distance.min(outer);
        RadiiTriple::new(outer, inner, self.r.min(outer))
            .expect("radii of a validated body are consistent")
    }

    pub fn signed_distance(&self, x: Point3) -> SignedDistanceResult<3> {
        if let Hull3::Solid { facets, .. } = &self.hull {
            let inside = facets.iter().all(|f| x.dot(f.normal) <= f.offset);
            if inside {
                let mut best_d = f64::INFINITY;
                let mut best_z = self.gens[0];
                let mut best_n = facets[0].normal;
                for f in facets {
                    let ring: Vec<Point3> = f.ring.iter().map(|&i| self.gens[i]).collect();
                    let z = patch3::nearest_on_ring(x, &ring, f.normal);
                    let d = x.dist(z);
                    if d < best_d {
                        best_d = d;
                        best_z = z;
                        best_n = f.normal;
                    }
                }
                let dir = (best_z - x).normalized().unwrap_or(best_n);
                return SignedDistanceResult {
                    distance: self.r + best_d,
                    nearest: best_z + dir * self.r,
                    region: Region::Facet,
                };
            }
        }

        let proj = project_hull(x, &self.gens);
        if proj.distance <= 1e-300 {
            // On a degenerate hull (point, segment interior, polygon interior).
            let (normal, region) = match &self.hull {
                Hull3::Point => (Point3::new(1.0, 0.0, 0.0), Region::VertexSphere),
                Hull3::Segment => {
                    let axis = self.gens[1] - self.gens[0];
                    (axis.any_orthonormal(), Region::Edge)
                }
                Hull3::Polygon { normal, .. } => (*normal, Region::Facet),
                Hull3::Solid { facets, .. } => (facets[0].normal, Region::Facet),
            };
            return SignedDistanceResult {
                distance: self.r,
                nearest: x + normal * self.r,
                region,
            };
        }
        let u = (x - proj.point) * (1.0 / proj.distance);
        let region = match proj.support_dim() {
            1 => Region::VertexSphere,
            2 => Region::Edge,
            _ => Region::Facet,
        };
        SignedDistanceResult {
            distance: self.r - proj.distance,
            nearest: proj.point + u * self.r,
            region,
        }
    }

    /// True when `u` is an outward normal direction at hull vertex `v`
    /// (i.e. `v` maximizes `<., u>` over the hull).
    pub fn in_normal_cone(&self, v: Point3, u: Point3) -> bool {
        let scale = self.gens.iter().map(|p| p.norm()).fold(1.0_f64, f64::max);
        self.gens
            .iter()
            .all(|p| u.dot(v - *p) >= -1e-12 * scale)
    }

    /// The boundary pieces of the body.
    pub fn boundary_pieces(&self) -> Vec<Piece3> {
        let r = self.r;
        let mut pieces = Vec::new();
        match &self.hull {
            Hull3::Point => pieces.push(Piece3::Sphere {
                vertex: self.gens[0],
            }),
            Hull3::Segment => {
                let a = self.gens[0];
                let b = self.gens[1];
                let axis = (b - a).normalized().expect("segment hull");
                let e1 = axis.any_orthonormal();
                let e2 = axis.cross(e1);
                pieces.push(Piece3::Cylinder {
                    a,
                    b,
                    e1,
                    e2,
                    phi_end: TAU,
                });
                pieces.push(Piece3::Sphere { vertex: a });
                pieces.push(Piece3::Sphere { vertex: b });
            }
            Hull3::Polygon { normal, ring } => {
                let m = *normal;
                let ring_pts: Vec<Point3> = ring.iter().map(|&i| self.gens[i]).collect();
                let up: Vec<Point3> = ring_pts.iter().map(|p| *p + m * r).collect();
                let down: Vec<Point3> = ring_pts.iter().rev().map(|p| *p - m * r).collect();
                pieces.push(Piece3::Facet { ring: up, normal: m });
                pieces.push(Piece3::Facet {
                    ring: down,
                    normal: -m,
                });
                for i in 0..ring_pts.len() {
                    let a = ring_pts[i];
                    let b = ring_pts[(i + 1) % ring_pts.len()];
                    let t = (b - a).normalized().expect("polygon edge");
                    let outward = t.cross(m);
                    // Half turn from +m to -m through the in-plane outward
                    // normal.
                    pieces.push(Piece3::Cylinder {
                        a,
                        b,
                        e1: m,
                        e2: outward,
                        phi_end: std::f64::consts::PI,
                    });
                }
                for &p in &ring_pts {
                    pieces.push(Piece3::Sphere { vertex: p });
                }
            }
            Hull3::Solid { facets, edges } => {
                for f in facets {
                    let ring: Vec<Point3> = f
                        .ring
                        .iter()
                        .map(|&i| self.gens[i] + f.normal * r)
                        .collect();
                    pieces.push(Piece3::Facet {
                        ring,
                        normal: f.normal,
                    });
                }
                for e in edges {
                    let n1 = facets[e.facets[0]].normal;
                    let n2 = facets[e.facets[1]].normal;
                    let cosp = n1.dot(n2).clamp(-1.0, 1.0);
                    let e2 = (n2 - n1 * cosp).normalized();
                    let Some(e2) = e2 else { continue }; // coplanar facets
                    let phi_end = n2.dot(e2).atan2(cosp);
                    pieces.push(Piece3::Cylinder {
                        a: self.gens[e.verts[0]],
                        b: self.gens[e.verts[1]],
                        e1: n1,
                        e2,
                        phi_end,
                    });
                }
                for &v in self.gens.iter() {
                    pieces.push(Piece3::Sphere { vertex: v });
                }
            }
        }
        pieces
    }

    /// Surface area of B(w, delta) ∩ ∂Ω, summed over boundary pieces.
    /// Facet contributions are exact; cylinder and sphere contributions are
    /// one-dimensional adaptive quadratures well below 1e-4 relative error.
    pub fn patch_area(&self, w: Point3, delta: f64) -> f64 {
        let mut total = 0.0;
        for piece in self.boundary_pieces() {
            total += match piece {
                Piece3::Facet { ring, normal } => {
                    patch3::facet_patch_area(&ring, normal, w, delta)
                }
                Piece3::Cylinder {
                    a,
                    b,
                    e1,
                    e2,
                    phi_end,
                } => patch3::cylinder_patch_area(a, b, e1, e2, phi_end, self.r, w, delta),
                Piece3::Sphere { vertex } => {
                    let constraints: Vec<Point3> = self
                        .gens
                        .iter()
                        .filter(|p| (**p - vertex).norm() > 1e-12)
                        .map(|p| vertex - *p)
                        .collect();
                    patch3::sphere_patch_area(vertex, self.r, &constraints, w, delta)
                }
            };
        }
        total
    }

    /// Deterministic boundary probes: facet centroids, edge band midpoints,
    /// one point per vertex sphere (radial direction clamped into the normal
    /// cone), the boundary point farthest from the origin, and `k` more
    /// ray-cast along a Fibonacci direction set.
    pub fn probe_points(&self, k: usize) -> Vec<Point3> {
        let r = self.r;
        let mut out = Vec::new();
        for piece in self.boundary_pieces() {
            match piece {
                Piece3::Facet { ring, normal } => {
                    out.push(patch3::ring_centroid(&ring));
                    let _ = normal;
                }
                Piece3::Cylinder {
                    a,
                    b,
                    e1,
                    e2,
                    phi_end,
                } => {
                    let mid = (a + b) * 0.5;
                    let phi = 0.5 * phi_end;
                    out.push(mid + (e1 * phi.cos() + e2 * phi.sin()) * r);
                }
                Piece3::Sphere { vertex } => {
                    out.push(vertex + self.vertex_probe_direction(vertex) * r);
                }
            }
        }
        // Farthest boundary point from the origin.
        let far = self
            .gens
            .iter()
            .max_by(|a, b| {
                a.norm()
                    .partial_cmp(&b.norm())
                    .unwrap()
                    .then_with(|| a.lex_cmp(b))
            })
            .copied()
            .unwrap_or(Point3::ZERO);
        let dir = far
            .normalized()
            .unwrap_or(Point3::new(1.0, 0.0, 0.0));
        out.push(far + dir * r);
        for dir in fibonacci_directions(k) {
            out.push(self.boundary_point_along(dir));
        }
        dedup_points(out, 1e-9 * self.radii().outer().max(1.0))
    }

    /// Outward direction for the vertex-sphere probe at `v`: radial if it is
    /// a valid normal direction, otherwise a deterministic direction inside
    /// the normal cone.
    fn vertex_probe_direction(&self, v: Point3) -> Point3 {
        if let Some(u) = v.normalized() {
            if self.in_normal_cone(v, u) {
                return u;
            }
        }
        match &self.hull {
            Hull3::Point => Point3::new(1.0, 0.0, 0.0),
            Hull3::Segment => {
                let other = if v.dist(self.gens[0]) < v.dist(self.gens[1]) {
                    self.gens[1]
                } else {
                    self.gens[0]
                };
                (v - other).normalized().expect("segment axis")
            }
            Hull3::Polygon { normal, ring } => {
                // Bisector of the incident in-plane edge normals.
                let pts: Vec<Point3> = ring.iter().map(|&i| self.gens[i]).collect();
                let idx = pts
                    .iter()
                    .position(|p| p.dist(v) < 1e-12)
                    .unwrap_or(0);
                let m = pts.len();
                let prev = pts[(idx + m - 1) % m];
                let next = pts[(idx + 1) % m];
                let n_prev = (v - prev).normalized().unwrap().cross(*normal);
                let n_next = (next - v).normalized().unwrap().cross(*normal);
                (n_prev + n_next)
                    .normalized()
                    .unwrap_or(*normal)
            }
            Hull3::Solid { facets, .. } => {
                let vi = self
                    .gens
                    .iter()
                    .position(|p| p.dist(v) < 1e-12)
                    .expect("vertex in generator list");
                let mut acc = Point3::ZERO;
                for f in facets {
                    if f.ring.contains(&vi) {
                        acc += f.normal;
                    }
                }
                acc.normalized().expect("vertex has incident facets")
            }
        }
    }

    /// The boundary point along the ray from the origin in direction `u`
    /// (unit), located by bisection on the signed distance.
    pub fn boundary_point_along(&self, u: Point3) -> Point3 {
        let radii = self.radii();
        let mut lo = 0.0_f64;
        let mut hi = radii.outer() * (1.0 + 1e-9) + 1e-12;
        let mut guard = 0;
        while self.signed_distance(u * hi).distance >= 0.0 {
            hi *= 2.0;
            guard += 1;
            assert!(guard < 60, "ray failed to exit the body");
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.signed_distance(u * mid).distance > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * radii.outer() {
                break;
            }
        }
        u * (0.5 * (lo + hi))
    }
}

impl SignedDomain<3> for Body3 {
    fn signed_distance(&self, x: Point3) -> SignedDistanceResult<3> {
        Body3::signed_distance(self, x)
    }
}

/// `k` deterministic well-spread unit directions (Fibonacci sphere).
pub fn fibonacci_directions(k: usize) -> Vec<Point3> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..k)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / k as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = j as f64 * golden;
            Point3::new(rho * phi.cos(), rho * phi.sin(), z)
        })
        .collect()
}

fn dedup_points(points: Vec<Point3>, tol: f64) -> Vec<Point3> {
    let mut out: Vec<Point3> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.dist(p) <= tol) {
            out.push(p);
        }
    }
    out
}
