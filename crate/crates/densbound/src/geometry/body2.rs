//! Planar rounded bodies: boundary parametrization, distance queries,
//! probe points and exact patch arclength.

use crate::geometry::hull2::{convex_hull_2d, point_in_convex_ccw};
use crate::geometry::project::project_hull;
use crate::geometry::{GeometryError, RadiiTriple, Region, SignedDistanceResult, SignedDomain};
use crate::point::Point2;

const TAU: f64 = std::f64::consts::TAU;

/// A rounded convex body in the plane: conv(generators) ⊕ r·B.
#[derive(Clone, Debug)]
pub struct Body2 {
    /// Hull extreme points, CCW, starting at the lexicographic minimum.
    gens: Vec<Point2>,
    r: f64,
    pieces: Vec<Piece2>,
    total_len: f64,
    hull_perimeter: f64,
}

/// One boundary piece: a straight offset of a hull edge or a circular arc
/// around a hull vertex. Arcs have radius equal to the rounding radius.
#[derive(Clone, Debug)]
pub enum Piece2 {
    Seg {
        /// Start point of the offset segment.
        a: Point2,
        b: Point2,
        /// Outward unit normal.
        normal: Point2,
        /// Arclength at the start of the piece.
        s0: f64,
        len: f64,
    },
    Arc {
        /// Hull vertex at the arc center.
        center: Point2,
        /// Start angle of the outward normal.
        start: f64,
        /// CCW angular extent (positive).
        sweep: f64,
        s0: f64,
    },
}

impl Piece2 {
    pub fn len(&self, r: f64) -> f64 {
        match self {
            Piece2::Seg { len, .. } => *len,
            Piece2::Arc { sweep, .. } => sweep * r,
        }
    }

    pub fn s0(&self) -> f64 {
        match self {
            Piece2::Seg { s0, .. } => *s0,
            Piece2::Arc { s0, .. } => *s0,
        }
    }
}

/// A boundary point of a planar body at arclength `s` from the canonical
/// start, with its outward normal and curvature (0 on segments, 1/r on arcs).
#[derive(Clone, Copy, Debug)]
pub struct BoundaryPoint2D {
    pub arclength: f64,
    pub position: Point2,
    pub outward_normal: Point2,
    pub curvature: f64,
}

/// Piecewise boundary description of a planar body.
#[derive(Clone, Debug)]
pub struct BoundaryParam2<'a> {
    body: &'a Body2,
}

impl Body2 {
    pub fn new(points: &[Point2], rounding: f64) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyGenerators);
        }
        if !rounding.is_finite() || rounding <= 0.0 {
            return Err(GeometryError::NonPositiveRounding);
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFiniteInput);
        }
        let gens = convex_hull_2d(points);
        let (pieces, total_len, hull_perimeter) = build_pieces(&gens, rounding);
        let body = Body2 {
            gens,
            r: rounding,
            pieces,
            total_len,
            hull_perimeter,
        };
        let inner = body.signed_distance(Point2::ZERO).distance;
        if inner <= 0.0 {
            return Err(GeometryError::OriginNotInterior(inner));
        }
        Ok(body)
    }

    pub fn generators(&self) -> &[Point2] {
        &self.gens
    }

    pub fn rounding(&self) -> f64 {
        self.r
    }

    pub fn scaled(&self, lambda: f64) -> Result<Body2, GeometryError> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(GeometryError::NonPositiveRounding);
        }
        let pts: Vec<Point2> = self.gens.iter().map(|p| *p * lambda).collect();
        Body2::new(&pts, self.r * lambda)
    }

    /// The radii triple (R_O, R_I, R_C):
    /// R_O = max |p_i| + r, R_I = dist(0, ∂Ω), R_C = r.
    pub fn radii(&self) -> RadiiTriple {
        let far = self.gens.iter().map(|p| p.norm()).fold(0.0_f64, f64::max);
        let outer = far + self.r;
        let inner = self.signed_distance(Point2::ZERO).distance.min(outer);
        RadiiTriple::new(outer, inner, self.r.min(outer))
            .expect("radii of a validated body are consistent")
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    ///
    /// Outside the hull K the distance to ∂Ω is r − dist(x, K); inside a
    /// full-dimensional K it is r + dist(x, ∂K).
    pub fn signed_distance(&self, x: Point2) -> SignedDistanceResult<2> {
        let m = self.gens.len();
        if m >= 3 && point_in_convex_ccw(&self.gens, x, 0.0) {
            // Inside the hull: nearest hull boundary point over the edges.
            let mut best_d = f64::INFINITY;
            let mut best_point = self.gens[0];
            let mut best_normal = Point2::new(1.0, 0.0);
            for i in 0..m {
                let a = self.gens[i];
                let b = self.gens[(i + 1) % m];
                let (z, _t) = nearest_on_segment(x, a, b);
                let d = x.dist(z);
                if d < best_d {
                    best_d = d;
                    best_point = z;
                    best_normal = edge_outward_normal(a, b);
                }
            }
            let dir = match (best_point - x).normalized() {
                Some(u) => u,
                None => best_normal, // x exactly on ∂K
            };
            return SignedDistanceResult {
                distance: self.r + best_d,
                nearest: best_point + dir * self.r,
                region: Region::Facet,
            };
        }

        let proj = project_hull(x, &self.gens);
        if proj.distance <= 1e-300 {
            // On a degenerate hull (single point or segment interior).
            let normal = if m == 2 {
                edge_outward_normal(self.gens[0], self.gens[1])
            } else {
                Point2::new(1.0, 0.0)
            };
            let region = if m == 1 {
                Region::VertexSphere
            } else {
                Region::Facet
            };
            return SignedDistanceResult {
                distance: self.r,
                nearest: x + normal * self.r,
                region,
            };
        }
        let u = (x - proj.point) * (1.0 / proj.distance);
        SignedDistanceResult {
            distance: self.r - proj.distance,
            nearest: proj.point + u * self.r,
            region: if proj.support_dim() >= 2 {
                Region::Facet
            } else {
                Region::VertexSphere
            },
        }
    }

    /// Piecewise boundary description; total length is the hull perimeter
    /// plus 2πr.
    pub fn boundary_param(&self) -> BoundaryParam2<'_> {
        BoundaryParam2 { body: self }
    }

    pub fn hull_perimeter(&self) -> f64 {
        self.hull_perimeter
    }

    /// Deterministic boundary probe points: flat-piece midpoints, one point
    /// per vertex arc (radial direction, clamped into the arc), the boundary
    /// point farthest from the origin, and `k` more points equally spaced by
    /// arclength. Duplicates are removed.
    pub fn probe_points(&self, k: usize) -> Vec<Point2> {
        let mut out: Vec<Point2> = Vec::new();
        for piece in &self.pieces {
            match piece {
                Piece2::Seg { a, b, .. } => out.push((*a + *b) * 0.5),
                Piece2::Arc { center, start, sweep, .. } => {
                    let theta = Body2::arc_probe_angle(*center, *start, *sweep);
                    out.push(*center + Point2::from_angle(theta) * self.r);
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
            .unwrap_or(Point2::ZERO);
        let dir = far.normalized().unwrap_or(Point2::new(1.0, 0.0));
        out.push(far + dir * self.r);
        // Arclength-spread points, offset half a step to avoid the canonical
        // start.
        let param = self.boundary_param();
        for j in 0..k {
            let s = self.total_len * (j as f64 + 0.5) / k as f64;
            out.push(param.eval(s).position);
        }
        dedup_points(out, 1e-9 * self.radii().outer().max(1.0))
    }

    /// Exact arclength of B(w, delta) ∩ ∂Ω, summed over boundary pieces.
    pub fn patch_arclength(&self, w: Point2, delta: f64) -> f64 {
        let mut total = 0.0;
        for piece in &self.pieces {
            match piece {
                Piece2::Seg { a, b, .. } => total += segment_chord_length(*a, *b, w, delta),
                Piece2::Arc { center, start, sweep, .. } => {
                    total += arc_chord_length(*center, self.r, *start, *sweep, w, delta)
                }
            }
        }
        total
    }
}

impl SignedDomain<2> for Body2 {
    fn signed_distance(&self, x: Point2) -> SignedDistanceResult<2> {
        Body2::signed_distance(self, x)
    }
}

impl BoundaryParam2<'_> {
    pub fn total_length(&self) -> f64 {
        self.body.total_len
    }

    pub fn pieces(&self) -> &[Piece2] {
        &self.body.pieces
    }

    pub fn rounding(&self) -> f64 {
        self.body.r
    }

    /// Evaluates the boundary at arclength `s` (taken modulo the total
    /// length). 1-Lipschitz in position.
    pub fn eval(&self, s: f64) -> BoundaryPoint2D {
        let len = self.body.total_len;
        let mut s = s % len;
        if s < 0.0 {
            s += len;
        }
        let r = self.body.r;
        // Pieces are ordered by s0; find the active one.
        let pieces = &self.body.pieces;
        let mut idx = pieces
            .partition_point(|p| p.s0() <= s)
            .saturating_sub(1);
        if idx >= pieces.len() {
            idx = pieces.len() - 1;
        }
        let piece = &pieces[idx];
        let local = (s - piece.s0()).max(0.0);
        match piece {
            Piece2::Seg { a, b, normal, len, .. } => {
                let t = if *len > 0.0 { (local / len).min(1.0) } else { 0.0 };
                BoundaryPoint2D {
                    arclength: s,
                    position: *a + (*b - *a) * t,
                    outward_normal: *normal,
                    curvature: 0.0,
                }
            }
            Piece2::Arc { center, start, sweep, .. } => {
                let theta = start + (local / r).min(*sweep);
                let n = Point2::from_angle(theta);
                BoundaryPoint2D {
                    arclength: s,
                    position: *center + n * r,
                    outward_normal: n,
                    curvature: 1.0 / r,
                }
            }
        }
    }

    /// Arclength coordinate of a boundary point (nearest piece wins).
    pub fn arclength_of(&self, x: Point2) -> f64 {
        let r = self.body.r;
        let mut best = (f64::INFINITY, 0.0);
        for piece in &self.body.pieces {
            match piece {
                Piece2::Seg { a, b, s0, len, .. } => {
                    let (z, t) = nearest_on_segment(x, *a, *b);
                    let d = x.dist(z);
                    if d < best.0 {
                        best = (d, s0 + t * len);
                    }
                }
                Piece2::Arc { center, start, sweep, s0 } => {
                    let v = x - *center;
                    if let Some(u) = v.normalized() {
                        let theta = clamp_angle_into(u.angle(), *start, *sweep);
                        let z = *center + Point2::from_angle(theta) * r;
                        let d = x.dist(z);
                        if d < best.0 {
                            best = (d, s0 + (theta - start) * r);
                        }
                    }
                }
            }
        }
        best.1
    }
}

impl Body2 {
    fn arc_probe_angle(center: Point2, start: f64, sweep: f64) -> f64 {
        // Radial direction of the vertex, clamped into the arc; canonical
        // angle 0 when the vertex sits at the origin.
        let radial = if center.norm() > 1e-12 {
            center.angle()
        } else {
            0.0
        };
        clamp_angle_into(radial, start, sweep)
    }
}

fn build_pieces(gens: &[Point2], r: f64) -> (Vec<Piece2>, f64, f64) {
    let m = gens.len();
    let mut pieces = Vec::new();
    let mut s = 0.0;
    let mut perimeter = 0.0;
    if m == 1 {
        pieces.push(Piece2::Arc {
            center: gens[0],
            start: 0.0,
            sweep: TAU,
            s0: 0.0,
        });
        return (pieces, TAU * r, 0.0);
    }
    // Traverse edges CCW; after edge i comes the arc at its endpoint. A
    // two-point hull walks the stadium: edge, half-turn, edge, half-turn.
    let edge_count = if m == 2 { 2 } else { m };
    let normals: Vec<Point2> = (0..edge_count)
        .map(|i| edge_outward_normal(gens[i % m], gens[(i + 1) % m]))
        .collect();
    for i in 0..edge_count {
        let (a, b) = (gens[i % m], gens[(i + 1) % m]);
        let n = normals[i];
        let len = a.dist(b);
        perimeter += len;
        pieces.push(Piece2::Seg {
            a: a + n * r,
            b: b + n * r,
            normal: n,
            s0: s,
            len,
        });
        s += len;
        // Arc at vertex b from this edge normal to the next edge normal.
        let next_n = normals[(i + 1) % edge_count];
        let start = n.angle();
        let mut sweep = next_n.angle() - start;
        while sweep <= 0.0 {
            sweep += TAU;
        }
        while sweep > TAU {
            sweep -= TAU;
        }
        let center = gens[(i + 1) % m];
        pieces.push(Piece2::Arc {
            center,
            start,
            sweep,
            s0: s,
        });
        s += sweep * r;
    }
    (pieces, s, perimeter)
}

fn edge_outward_normal(a: Point2, b: Point2) -> Point2 {
    // For CCW order the outward normal is the tangent rotated -90 degrees.
    let t = (b - a).normalized().expect("degenerate hull edge");
    Point2::new(t.y(), -t.x())
}

fn nearest_on_segment(x: Point2, a: Point2, b: Point2) -> (Point2, f64) {
    let e = b - a;
    let len_sq = e.norm_sq();
    if len_sq == 0.0 {
        return (a, 0.0);
    }
    let t = ((x - a).dot(e) / len_sq).clamp(0.0, 1.0);
    (a + e * t, t)
}

/// Clamps angle `theta` into the CCW arc [start, start+sweep] (mod 2π),
/// returning the absolute angle of the nearest point of the arc.
fn clamp_angle_into(theta: f64, start: f64, sweep: f64) -> f64 {
    let mut rel = (theta - start) % TAU;
    if rel < 0.0 {
        rel += TAU;
    }
    if rel <= sweep {
        return start + rel;
    }
    // Outside: snap to the nearer arc end, measured around the circle.
    let over = rel - sweep;
    let under = TAU - rel;
    if over < under {
        start + sweep
    } else {
        start
    }
}

/// Length of the part of segment [a, b] within distance `delta` of `w`.
fn segment_chord_length(a: Point2, b: Point2, w: Point2, delta: f64) -> f64 {
    let e = b - a;
    let len = e.norm();
    if len == 0.0 {
        return 0.0;
    }
    let d = a - w;
    // |d + t e|^2 <= delta^2 on t in [0,1].
    let aa = e.norm_sq();
    let bb = 2.0 * d.dot(e);
    let cc = d.norm_sq() - delta * delta;
    let disc = bb * bb - 4.0 * aa * cc;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt();
    let t1 = ((-bb - sq) / (2.0 * aa)).max(0.0);
    let t2 = ((-bb + sq) / (2.0 * aa)).min(1.0);
    ((t2 - t1).max(0.0)) * len
}

/// Length of the part of the arc (center, radius r, normals in
/// [start, start+sweep]) within distance `delta` of `w`.
fn arc_chord_length(center: Point2, r: f64, start: f64, sweep: f64, w: Point2, delta: f64) -> f64 {
    let v = w - center;
    let q = v.norm();
    if q < 1e-300 {
        // w at the arc center: the whole arc lies at distance r.
        return if r <= delta { sweep * r } else { 0.0 };
    }
    // |x - w|^2 = q^2 + r^2 - 2 r q cos(theta - psi) <= delta^2.
    let cos_bound = (q * q + r * r - delta * delta) / (2.0 * r * q);
    if cos_bound > 1.0 {
        return 0.0;
    }
    if cos_bound < -1.0 {
        return sweep * r;
    }
    let beta = cos_bound.acos();
    let psi = v.angle();
    // Intersection of [psi - beta, psi + beta] with [start, start + sweep]
    // on the circle.
    r * circular_interval_overlap(psi - beta, 2.0 * beta, start, sweep)
}

/// Overlap length of two angular intervals on the circle, each given as
/// (start, width) with width in [0, 2π].
fn circular_interval_overlap(s1: f64, w1: f64, s2: f64, w2: f64) -> f64 {
    if w1 <= 0.0 || w2 <= 0.0 {
        return 0.0;
    }
    if w1 >= TAU {
        return w2;
    }
    if w2 >= TAU {
        return w1;
    }
    // Shift interval 1 near interval 2 and check both wraps.
    let mut total = 0.0;
    let base = (s1 - s2).rem_euclid(TAU);
    for shift in [base - TAU, base, base + TAU] {
        let lo = shift.max(0.0);
        let hi = (shift + w1).min(w2);
        if hi > lo {
            total += hi - lo;
        }
    }
    total
}

fn dedup_points(points: Vec<Point2>, tol: f64) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.dist(p) <= tol) {
            out.push(p);
        }
    }
    out
}
