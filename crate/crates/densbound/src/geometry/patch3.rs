//! Patch-area computations for the boundary pieces of spatial bodies.
//!
//! Flat pieces reduce to an exact circle-polygon intersection area; the
//! cylindrical and spherical pieces reduce to one-dimensional integrals with
//! piecewise-smooth integrands handled by adaptive Simpson quadrature.

use crate::point::{Point2, Point3};

const TAU: f64 = std::f64::consts::TAU;

/// Area of the part of the offset facet (planar convex ring) within chord
/// distance `delta` of `w`. Exact up to the circle-polygon area formula.
pub fn facet_patch_area(ring: &[Point3], normal: Point3, w: Point3, delta: f64) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    let h = (w - ring[0]).dot(normal);
    if h.abs() >= delta {
        return 0.0;
    }
    let rho = (delta * delta - h * h).sqrt();
    let center3 = w - normal * h;
    let u = normal.any_orthonormal();
    let v = normal.cross(u);
    let flat: Vec<Point2> = ring
        .iter()
        .map(|p| Point2::new((*p - center3).dot(u), (*p - center3).dot(v)))
        .collect();
    circle_polygon_area(rho, &flat).abs()
}

/// Area of the part of the cylindrical band within chord distance `delta`
/// of `w`. The band is {lerp(a,b,t) + r n(phi)}, n(phi) = cos phi e1 +
/// sin phi e2, phi in [0, phi_end]. Reduces to a 1D integral over phi of the
/// clamped axial extent.
#[allow(clippy::too_many_arguments)]
pub fn cylinder_patch_area(
    a: Point3,
    b: Point3,
    e1: Point3,
    e2: Point3,
    phi_end: f64,
    r: f64,
    w: Point3,
    delta: f64,
) -> f64 {
    let axis = b - a;
    let len = axis.norm();
    if len <= 0.0 || phi_end <= 0.0 {
        return 0.0;
    }
    let d_hat = axis * (1.0 / len);
    let rel = w - a;
    let z_w = rel.dot(d_hat);
    let w_perp = rel - d_hat * z_w;
    let p1 = w_perp.dot(e1);
    let p2 = w_perp.dot(e2);
    let perp_sq = w_perp.norm_sq();

    let integrand = |phi: f64| -> f64 {
        // |r n(phi) - w_perp|^2
        let c = r * r + perp_sq - 2.0 * r * (phi.cos() * p1 + phi.sin() * p2);
        let rad = delta * delta - c;
        if rad <= 0.0 {
            return 0.0;
        }
        let half = rad.sqrt();
        let lo = (z_w - half).max(0.0);
        let hi = (z_w + half).min(len);
        (hi - lo).max(0.0)
    };

    // The integrand's support is a single angular window around the
    // direction of w_perp: cos(phi - gamma) >= bound. Solving it exactly
    // keeps the quadrature from missing a window much narrower than the
    // full [0, phi_end] range.
    let amp = 2.0 * r * p1.hypot(p2);
    let closest_sq = r * r + perp_sq;
    if amp <= 1e-300 {
        // w on the cylinder axis: every band direction is equivalent.
        if r * r > delta * delta {
            return 0.0;
        }
        let h = (delta * delta - r * r).sqrt();
        let lo = (z_w - h).max(0.0);
        let hi = (z_w + h).min(len);
        return r * phi_end * (hi - lo).max(0.0);
    }
    let bound = (closest_sq - delta * delta) / amp;
    if bound >= 1.0 {
        return 0.0;
    }
    let eps = 1e-10 * delta * delta;
    if bound <= -1.0 {
        return r * adaptive_simpson(&integrand, 0.0, phi_end, eps, 32);
    }
    let beta = bound.acos();
    let gamma = p2.atan2(p1);
    let mut total = 0.0;
    for (lo, hi) in intersect_with_arc(&[(0.0, phi_end)], gamma - beta, 2.0 * beta) {
        total += adaptive_simpson(&integrand, lo, hi, eps, 32);
    }
    r * total
}

/// Area of the part of the vertex sphere piece within chord distance `delta`
/// of `w`. The piece is {v + r u : u in the normal cone}, where the cone is
/// cut out by the constraints <u, c_j> >= 0.
pub fn sphere_patch_area(
    vertex: Point3,
    r: f64,
    constraints: &[Point3],
    w: Point3,
    delta: f64,
) -> f64 {
    let rel = w - vertex;
    let q = rel.norm();
    if q <= 0.0 {
        return 0.0;
    }
    let cos_max = (r * r + q * q - delta * delta) / (2.0 * r * q);
    if cos_max >= 1.0 {
        return 0.0;
    }
    let theta_max = cos_max.max(-1.0).acos();
    let u_star = rel * (1.0 / q);

    if constraints.is_empty() {
        // Full sphere piece: spherical cap, closed form.
        return TAU * r * r * (1.0 - cos_max.max(-1.0));
    }

    let e1 = u_star.any_orthonormal();
    let e2 = u_star.cross(e1);
    let coeffs: Vec<(f64, f64, f64, f64)> = constraints
        .iter()
        .map(|c| (c.dot(e1), c.dot(e2), c.dot(u_star), c.norm()))
        .collect();

    let measure = |theta: f64| -> f64 {
        let st = theta.sin();
        let ct = theta.cos();
        let mut intervals = vec![(0.0, TAU)];
        for &(a1, a2, a3, scale) in &coeffs {
            let big_a = st * a1;
            let big_b = st * a2;
            let big_c = ct * a3;
            let r_amp = big_a.hypot(big_b);
            if r_amp <= 1e-14 * scale {
                if big_c >= -1e-12 * scale {
                    continue;
                }
                return 0.0;
            }
            let val = -big_c / r_amp;
            if val <= -1.0 {
                continue;
            }
            if val >= 1.0 {
                return 0.0;
            }
            let beta = val.acos();
            let gamma = big_b.atan2(big_a);
            intervals = intersect_with_arc(&intervals, gamma - beta, 2.0 * beta);
            if intervals.is_empty() {
                return 0.0;
            }
        }
        intervals.iter().map(|(lo, hi)| hi - lo).sum()
    };

    // Panelize: cone clipping can confine the integrand to a sub-window
    // that three Simpson seed nodes would miss.
    let integrand = |theta: f64| theta.sin() * measure(theta);
    let panels = 8;
    let eps = 1e-10 * delta * delta / (r * r) / panels as f64;
    let mut total = 0.0;
    for j in 0..panels {
        let lo = theta_max * j as f64 / panels as f64;
        let hi = theta_max * (j + 1) as f64 / panels as f64;
        total += adaptive_simpson(&integrand, lo, hi, eps, 28);
    }
    r * r * total
}

/// Nearest point of a planar convex ring (in 3D) to `x`.
pub fn nearest_on_ring(x: Point3, ring: &[Point3], normal: Point3) -> Point3 {
    if ring.len() == 1 {
        return ring[0];
    }
    let h = (x - ring[0]).dot(normal);
    let proj = x - normal * h;
    // Inside test in-plane: all edges turn the same way.
    let mut inside = true;
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        let cr = (b - a).cross(proj - a);
        if cr.dot(normal) < 0.0 {
            inside = false;
            break;
        }
    }
    if inside {
        return proj;
    }
    let mut best = ring[0];
    let mut best_d = f64::INFINITY;
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        let e = b - a;
        let t = ((x - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
        let z = a + e * t;
        let d = x.dist(z);
        if d < best_d {
            best_d = d;
            best = z;
        }
    }
    best
}

/// Area centroid of a planar convex ring in 3D.
pub fn ring_centroid(ring: &[Point3]) -> Point3 {
    let origin = ring[0];
    let mut area2 = 0.0;
    let mut acc = Point3::ZERO;
    for i in 1..ring.len() - 1 {
        let a = ring[i] - origin;
        let b = ring[i + 1] - origin;
        let tri2 = a.cross(b).norm();
        area2 += tri2;
        acc += (origin + ring[i] + ring[i + 1]).scale(1.0 / 3.0) * tri2;
    }
    if area2 <= 0.0 {
        origin
    } else {
        acc.scale(1.0 / area2)
    }
}

/// Signed area of the intersection of the disk of radius `rho` centered at
/// the origin with the polygon `ring` (positive for CCW rings).
///
/// Classic per-edge decomposition: each directed edge contributes either a
/// triangle with the center (sub-segment inside the disk) or a circular
/// sector (sub-segment outside).
pub fn circle_polygon_area(rho: f64, ring: &[Point2]) -> f64 {
    let mut area = 0.0;
    let rho_sq = rho * rho;
    for i in 0..ring.len() {
        let p = ring[i];
        let q = ring[(i + 1) % ring.len()];
        // Split [p, q] at circle crossings.
        let e = q - p;
        let aa = e.norm_sq();
        if aa == 0.0 {
            continue;
        }
        let bb = 2.0 * p.dot(e);
        let cc = p.norm_sq() - rho_sq;
        let mut ts = vec![0.0_f64];
        let disc = bb * bb - 4.0 * aa * cc;
        if disc > 0.0 {
            let sq = disc.sqrt();
            for t in [(-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)] {
                if t > 0.0 && t < 1.0 {
                    ts.push(t);
                }
            }
        }
        ts.push(1.0);
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for pair in ts.windows(2) {
            let (t0, t1) = (pair[0], pair[1]);
            if t1 - t0 <= 0.0 {
                continue;
            }
            let x0 = p + e * t0;
            let x1 = p + e * t1;
            let xm = p + e * (0.5 * (t0 + t1));
            if xm.norm_sq() <= rho_sq {
                // Triangle (0, x0, x1).
                area += 0.5 * x0.cross(x1);
            } else {
                // Circular sector spanning the directions of x0 and x1;
                // a segment subtends less than a half-turn from any point.
                let ang = x0.cross(x1).atan2(x0.dot(x1));
                area += 0.5 * rho_sq * ang;
            }
        }
    }
    area
}

/// Intersects a disjoint interval list (within [0, 2π]) with the arc
/// starting at `lo` of width `width`.
fn intersect_with_arc(intervals: &[(f64, f64)], lo: f64, width: f64) -> Vec<(f64, f64)> {
    if width >= TAU {
        return intervals.to_vec();
    }
    if width <= 0.0 {
        return Vec::new();
    }
    let start = lo.rem_euclid(TAU);
    let end = start + width;
    let arcs: &[(f64, f64)] = if end <= TAU {
        &[(start, end)]
    } else {
        &[(start, TAU), (0.0, end - TAU)]
    };
    let mut out = Vec::new();
    for &(alo, ahi) in arcs.iter().filter(|(a, b)| b > a) {
        for &(ilo, ihi) in intervals {
            let lo2 = ilo.max(alo);
            let hi2 = ihi.min(ahi);
            if hi2 > lo2 {
                out.push((lo2, hi2));
            }
        }
    }
    out
}

/// Recursive adaptive Simpson quadrature with absolute tolerance.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, max_depth: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, eps, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1)
}
