//! Spatial convex hulls with explicit facet/edge structure.
//!
//! Hulls here are small (generator lists, typically well under a hundred
//! points), so facets are found by supporting-plane enumeration over point
//! triples, which handles coplanar inputs exactly. Larger inputs first pass
//! through an incremental hull to prune interior points, then the survivors
//! are enumerated.

use crate::geometry::hull2::convex_hull_2d_indices;
use crate::point::{Point2, Point3};

/// Above this many deduplicated points the O(n^4) plane enumeration is
/// preceded by an incremental prune of interior points.
const ENUM_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct Facet {
    /// Outward unit normal.
    pub normal: Point3,
    /// Support value: `<p, normal> = offset` on the facet plane.
    pub offset: f64,
    /// Vertex ring, CCW as seen from outside, indices into the hull vertices.
    pub ring: Vec<usize>,
    /// Area centroid of the ring polygon.
    pub centroid: Point3,
    pub area: f64,
}

#[derive(Clone, Debug)]
pub struct HullEdge {
    /// Endpoint indices into the hull vertices, sorted.
    pub verts: [usize; 2],
    /// The two facets meeting along this edge.
    pub facets: [usize; 2],
}

/// Shape classification of a 3D hull. Degenerate hulls are first-class:
/// a single generator yields a ball body, a segment a capsule, and a planar
/// polygon a rounded slab.
#[derive(Clone, Debug)]
pub enum Hull3 {
    Point,
    Segment,
    /// Coplanar vertices; `normal` is a deterministic unit plane normal and
    /// `ring` orders all vertices CCW as seen from `normal`.
    Polygon { normal: Point3, ring: Vec<usize> },
    Solid { facets: Vec<Facet>, edges: Vec<HullEdge> },
}

/// A reduced 3D hull: canonical vertex list plus shape structure.
#[derive(Clone, Debug)]
pub struct Hull3Data {
    /// Extreme points, lexicographically sorted.
    pub verts: Vec<Point3>,
    pub shape: Hull3,
}

pub fn convex_hull_3d(points: &[Point3]) -> Hull3Data {
    let mut pts: Vec<Point3> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a == b);
    assert!(!pts.is_empty(), "hull of an empty point set");

    let scale = pts
        .iter()
        .map(|p| p.norm())
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let tol = 1e-9 * scale;

    if pts.len() == 1 {
        return Hull3Data {
            verts: pts,
            shape: Hull3::Point,
        };
    }

    // Collinearity check against the longest chord from pts[0].
    let far = *pts
        .iter()
        .max_by(|a, b| {
            let da = (**a - pts[0]).norm_sq();
            let db = (**b - pts[0]).norm_sq();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let dir = far - pts[0];
    let collinear = pts
        .iter()
        .all(|p| (*p - pts[0]).cross(dir).norm() <= tol * dir.norm().max(1.0));
    if collinear {
        // Extremes along dir.
        let mut best_lo = 0;
        let mut best_hi = 0;
        for (i, p) in pts.iter().enumerate() {
            let t = (*p - pts[0]).dot(dir);
            if t < (pts[best_lo] - pts[0]).dot(dir) {
                best_lo = i;
            }
            if t > (pts[best_hi] - pts[0]).dot(dir) {
                best_hi = i;
            }
        }
        let mut verts = vec![pts[best_lo], pts[best_hi]];
        verts.sort_by(|a, b| a.lex_cmp(b));
        verts.dedup_by(|a, b| a == b);
        if verts.len() == 1 {
            return Hull3Data {
                verts,
                shape: Hull3::Point,
            };
        }
        return Hull3Data {
            verts,
            shape: Hull3::Segment,
        };
    }

    // Coplanarity check: (p - p0) x dir is parallel to the plane normal for
    // in-plane p; the largest such cross vector is a stable normal estimate.
    let span = pts
        .iter()
        .map(|p| (*p - pts[0]).cross(dir))
        .max_by(|a, b| a.norm_sq().partial_cmp(&b.norm_sq()).unwrap())
        .unwrap();
    let mut normal = span.normalized().expect("non-collinear span");
    let coplanar = pts
        .iter()
        .all(|p| (*p - pts[0]).dot(normal).abs() <= tol);
    if coplanar {
        // Deterministic normal orientation: first nonzero component positive.
        for i in 0..3 {
            if normal[i].abs() > 1e-12 {
                if normal[i] < 0.0 {
                    normal = -normal;
                }
                break;
            }
        }
        let (u, v) = plane_basis(normal);
        let flat: Vec<Point2> = pts
            .iter()
            .map(|p| Point2::new((*p - pts[0]).dot(u), (*p - pts[0]).dot(v)))
            .collect();
        let ring_idx = convex_hull_2d_indices(&flat);
        let ring_pts: Vec<Point3> = ring_idx.iter().map(|&i| pts[i]).collect();
        let mut verts = ring_pts.clone();
        verts.sort_by(|a, b| a.lex_cmp(b));
        let ring: Vec<usize> = ring_pts
            .iter()
            .map(|p| verts.iter().position(|q| q == p).unwrap())
            .collect();
        if verts.len() == 2 {
            return Hull3Data {
                verts,
                shape: Hull3::Segment,
            };
        }
        return Hull3Data {
            verts,
            shape: Hull3::Polygon { normal, ring },
        };
    }

    // Full-dimensional hull. Optionally prune with an incremental pass.
    let candidates = if pts.len() > ENUM_LIMIT {
        incremental_prune(&pts, tol)
    } else {
        pts
    };
    solid_hull_by_plane_enumeration(&candidates, tol)
}

/// Orthonormal in-plane basis (u, v) with u x v = normal.
fn plane_basis(normal: Point3) -> (Point3, Point3) {
    let u = normal.any_orthonormal();
    let v = normal.cross(u);
    (u, v)
}

fn solid_hull_by_plane_enumeration(pts: &[Point3], tol: f64) -> Hull3Data {
    let n = pts.len();
    // Collect supporting planes (outward normal + offset).
    let mut planes: Vec<(Point3, f64)> = Vec::new();
    let mut push_plane = |normal: Point3, offset: f64| {
        let dup = planes
            .iter()
            .any(|(m, h)| (*m - normal).norm() <= 1e-8 && (h - offset).abs() <= tol * 10.0);
        if !dup {
            planes.push((normal, offset));
        }
    };
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let nvec = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
                let Some(m) = nvec.normalized() else { continue };
                if nvec.norm() <= tol {
                    continue;
                }
                let h = pts[i].dot(m);
                let mut above = false;
                let mut below = false;
                for p in pts {
                    let d = p.dot(m) - h;
                    if d > tol {
                        above = true;
                    } else if d < -tol {
                        below = true;
                    }
                    if above && below {
                        break;
                    }
                }
                if !above {
                    push_plane(m, h);
                } else if !below {
                    push_plane(-m, -h);
                }
            }
        }
    }

    // Build facet rings from each plane's incident points.
    struct RawFacet {
        normal: Point3,
        ring_pts: Vec<Point3>,
    }
    let mut raw: Vec<RawFacet> = Vec::new();
    for (m, h) in &planes {
        let incident: Vec<Point3> = pts
            .iter()
            .copied()
            .filter(|p| (p.dot(*m) - h).abs() <= tol * 10.0)
            .collect();
        if incident.len() < 3 {
            continue;
        }
        let (u, v) = plane_basis(*m);
        let flat: Vec<Point2> = incident
            .iter()
            .map(|p| Point2::new(p.dot(u), p.dot(v)))
            .collect();
        let ring_idx = convex_hull_2d_indices(&flat);
        if ring_idx.len() < 3 {
            continue;
        }
        raw.push(RawFacet {
            normal: *m,
            ring_pts: ring_idx.iter().map(|&i| incident[i]).collect(),
        });
    }
    assert!(raw.len() >= 4, "solid hull must have at least 4 facets");

    // Canonical vertex list: lex-sorted union of ring vertices.
    let mut verts: Vec<Point3> = raw.iter().flat_map(|f| f.ring_pts.iter().copied()).collect();
    verts.sort_by(|a, b| a.lex_cmp(b));
    verts.dedup_by(|a, b| a == b);
    let vert_index = |p: &Point3| -> usize {
        verts
            .iter()
            .position(|q| q == p)
            .expect("ring vertex in canonical list")
    };

    let mut facets: Vec<Facet> = raw
        .iter()
        .map(|f| {
            let ring: Vec<usize> = f.ring_pts.iter().map(vert_index).collect();
            let (centroid, area) = ring_centroid_area(&f.ring_pts);
            Facet {
                normal: f.normal,
                offset: f.ring_pts[0].dot(f.normal),
                ring,
                centroid,
                area,
            }
        })
        .collect();
    // Deterministic facet order: by lexicographically smallest ring vertex,
    // then normal.
    facets.sort_by(|a, b| {
        let ka = a.ring.iter().min().unwrap();
        let kb = b.ring.iter().min().unwrap();
        ka.cmp(kb).then_with(|| a.normal.lex_cmp(&b.normal))
    });

    // Edges: every undirected ring edge must be shared by exactly two facets.
    let mut edge_map: std::collections::BTreeMap<[usize; 2], Vec<usize>> =
        std::collections::BTreeMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for i in 0..f.ring.len() {
            let a = f.ring[i];
            let b = f.ring[(i + 1) % f.ring.len()];
            let key = if a < b { [a, b] } else { [b, a] };
            edge_map.entry(key).or_default().push(fi);
        }
    }
    let mut edges: Vec<HullEdge> = Vec::new();
    for (verts_pair, fs) in &edge_map {
        assert!(
            fs.len() == 2,
            "hull edge {:?} shared by {} facets",
            verts_pair,
            fs.len()
        );
        edges.push(HullEdge {
            verts: *verts_pair,
            facets: [fs[0], fs[1]],
        });
    }
    debug_assert_eq!(
        verts.len() + facets.len(),
        edges.len() + 2,
        "Euler characteristic"
    );

    Hull3Data {
        verts,
        shape: Hull3::Solid { facets, edges },
    }
}

/// Area centroid and area of a planar convex ring in 3D.
fn ring_centroid_area(ring: &[Point3]) -> (Point3, f64) {
    let origin = ring[0];
    let mut area2 = 0.0;
    let mut acc = Point3::ZERO;
    for i in 1..ring.len() - 1 {
        let a = ring[i] - origin;
        let b = ring[i + 1] - origin;
        let tri2 = a.cross(b).norm();
        area2 += tri2;
        let c = (origin + ring[i] + ring[i + 1]).scale(1.0 / 3.0);
        acc += c * tri2;
    }
    if area2 <= 0.0 {
        return (origin, 0.0);
    }
    (acc.scale(1.0 / area2), area2 / 2.0)
}

/// Incremental hull used only to discard interior points of large inputs
/// before plane enumeration. Points on facet planes are kept for the exact
/// pass to sort out.
fn incremental_prune(pts: &[Point3], tol: f64) -> Vec<Point3> {
    // Visibility-based interior test: a point strictly inside all current
    // facet planes of the running hull is interior. Build a quick hull of
    // triangles; robustness corner cases fall through to "keep the point".
    let mut tris: Vec<[usize; 3]> = Vec::new();
    // Initial tetrahedron from spread-out points.
    let i0 = 0;
    let i1 = (0..pts.len())
        .max_by(|&a, &b| {
            (pts[a] - pts[i0])
                .norm_sq()
                .partial_cmp(&(pts[b] - pts[i0]).norm_sq())
                .unwrap()
        })
        .unwrap();
    let dir = pts[i1] - pts[i0];
    let i2 = (0..pts.len())
        .max_by(|&a, &b| {
            (pts[a] - pts[i0])
                .cross(dir)
                .norm_sq()
                .partial_cmp(&(pts[b] - pts[i0]).cross(dir).norm_sq())
                .unwrap()
        })
        .unwrap();
    let nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]);
    let i3 = (0..pts.len())
        .max_by(|&a, &b| {
            (pts[a] - pts[i0])
                .dot(nrm)
                .abs()
                .partial_cmp(&(pts[b] - pts[i0]).dot(nrm).abs())
                .unwrap()
        })
        .unwrap();
    let (a, b, c, d) = (i0, i1, i2, i3);
    let signed = (pts[b] - pts[a])
        .cross(pts[c] - pts[a])
        .dot(pts[d] - pts[a]);
    let (b, c) = if signed > 0.0 { (c, b) } else { (b, c) };
    tris.push([a, b, c]);
    tris.push([a, c, d]);
    tris.push([a, d, b]);
    tris.push([b, d, c]);

    let outward = |t: &[usize; 3]| -> (Point3, f64) {
        let m = (pts[t[1]] - pts[t[0]])
            .cross(pts[t[2]] - pts[t[0]])
            .normalized()
            .unwrap_or(Point3::new(0.0, 0.0, 1.0));
        (m, pts[t[0]].dot(m))
    };

    for p in 0..pts.len() {
        if [a, b, c, d].contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..tris.len())
            .filter(|&ti| {
                let (m, h) = outward(&tris[ti]);
                pts[p].dot(m) - h > tol
            })
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Horizon edges: edges of visible triangles not shared with another
        // visible triangle.
        let mut horizon: Vec<[usize; 2]> = Vec::new();
        for &ti in &visible {
            let t = tris[ti];
            for e in [[t[0], t[1]], [t[1], t[2]], [t[2], t[0]]] {
                let shared = visible.iter().any(|&tj| {
                    if tj == ti {
                        return false;
                    }
                    let u = tris[tj];
                    let rev = [e[1], e[0]];
                    [[u[0], u[1]], [u[1], u[2]], [u[2], u[0]]].contains(&rev)
                });
                if !shared {
                    horizon.push(e);
                }
            }
        }
        let mut keep: Vec<[usize; 3]> = tris
            .iter()
            .enumerate()
            .filter(|(i, _)| !visible.contains(i))
            .map(|(_, t)| *t)
            .collect();
        for e in horizon {
            keep.push([e[0], e[1], p]);
        }
        tris = keep;
    }

    // Survivors: all points within tol of some facet plane (candidates for
    // exact enumeration), everything else is interior.
    let mut planes: Vec<(Point3, f64)> = tris.iter().map(outward).collect();
    planes.dedup_by(|a, b| (a.0 - b.0).norm() < 1e-9 && (a.1 - b.1).abs() < tol);
    pts.iter()
        .copied()
        .filter(|p| planes.iter().any(|(m, h)| (p.dot(*m) - h).abs() <= tol * 10.0))
        .collect()
}
