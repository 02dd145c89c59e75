//! Ball-rounded convex bodies and their radii.
//!
//! The domain model is Ω = conv(generators) ⊕ r·B: the Minkowski sum of a
//! convex hull with a closed ball of radius r > 0. Every such body has
//! C^{1,1} boundary made of flat facet pieces, cylindrical edge pieces (3D),
//! and spherical vertex pieces, and its minimal radius of boundary curvature
//! is exactly r. The origin must be interior.

mod body2;
mod body3;
pub mod hull2;
pub mod hull3;
pub(crate) mod patch3;
pub mod project;
mod spec_file;

pub use body2::{Body2, BoundaryParam2, BoundaryPoint2D, Piece2};
pub use body3::{fibonacci_directions, Body3, Piece3};
pub use project::{project_hull, Projection};
pub use spec_file::DomainSpecFile;

use crate::point::Point;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("input contains a non-finite coordinate")]
    NonFiniteInput,
    #[error("dimension must be 2 or 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rounding radius must be positive and finite")]
    NonPositiveRounding,
    #[error("origin is not an interior point of the body (inner radius {0})")]
    OriginNotInterior(f64),
    #[error("operation requires a planar body")]
    NotTwoDimensional,
    #[error("invalid radii: {0}")]
    InvalidRadii(String),
}

/// The triple (R_O, R_I, R_C) of outer, inner and curvature radii of a body
/// containing the origin. Always R_O >= R_I > 0 and R_O >= R_C > 0; there is
/// no general order between R_I and R_C.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiiTriple {
    outer: f64,
    inner: f64,
    curvature: f64,
}

impl RadiiTriple {
    pub fn new(outer: f64, inner: f64, curvature: f64) -> Result<Self, GeometryError> {
        if !(outer.is_finite() && inner.is_finite() && curvature.is_finite()) {
            return Err(GeometryError::InvalidRadii("non-finite radius".into()));
        }
        if inner <= 0.0 || curvature <= 0.0 {
            return Err(GeometryError::InvalidRadii(format!(
                "radii must be positive, got R_I = {inner}, R_C = {curvature}"
            )));
        }
        if outer < inner {
            return Err(GeometryError::InvalidRadii(format!(
                "outer radius {outer} smaller than inner radius {inner}"
            )));
        }
        if outer < curvature {
            return Err(GeometryError::InvalidRadii(format!(
                "outer radius {outer} smaller than curvature radius {curvature}"
            )));
        }
        Ok(RadiiTriple {
            outer,
            inner,
            curvature,
        })
    }

    #[inline]
    pub fn outer(&self) -> f64 {
        self.outer
    }

    #[inline]
    pub fn inner(&self) -> f64 {
        self.inner
    }

    #[inline]
    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    /// Radii of the body scaled by `lambda` about the origin.
    pub fn scaled(&self, lambda: f64) -> RadiiTriple {
        RadiiTriple {
            outer: self.outer * lambda,
            inner: self.inner * lambda,
            curvature: self.curvature * lambda,
        }
    }
}

/// Which boundary piece a point lies on: flat facet offsets, cylindrical
/// edge offsets (3D only), or spherical caps around hull vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Facet,
    Edge,
    VertexSphere,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Facet => "facet",
            Region::Edge => "edge",
            Region::VertexSphere => "vertex-sphere",
        }
    }
}

/// Signed distance query result: `distance` is positive inside the body,
/// negative outside; `nearest` is a nearest boundary point.
#[derive(Clone, Copy, Debug)]
pub struct SignedDistanceResult<const N: usize> {
    pub distance: f64,
    pub nearest: Point<N>,
    pub region: Region,
}

/// Distance oracle shared by the metric and Monte Carlo modules.
pub trait SignedDomain<const N: usize> {
    fn signed_distance(&self, x: Point<N>) -> SignedDistanceResult<N>;
}

/// A rounded convex body in the plane or in space.
#[derive(Clone, Debug)]
pub enum RoundedConvexBody {
    Two(Body2),
    Three(Body3),
}

impl RoundedConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            RoundedConvexBody::Two(_) => 2,
            RoundedConvexBody::Three(_) => 3,
        }
    }

    pub fn radii(&self) -> RadiiTriple {
        match self {
            RoundedConvexBody::Two(b) => b.radii(),
            RoundedConvexBody::Three(b) => b.radii(),
        }
    }

    pub fn rounding(&self) -> f64 {
        match self {
            RoundedConvexBody::Two(b) => b.rounding(),
            RoundedConvexBody::Three(b) => b.rounding(),
        }
    }

    /// Scales generators and rounding radius by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<RoundedConvexBody, GeometryError> {
        match self {
            RoundedConvexBody::Two(b) => Ok(RoundedConvexBody::Two(b.scaled(lambda)?)),
            RoundedConvexBody::Three(b) => Ok(RoundedConvexBody::Three(b.scaled(lambda)?)),
        }
    }

    pub fn as_two(&self) -> Option<&Body2> {
        match self {
            RoundedConvexBody::Two(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_three(&self) -> Option<&Body3> {
        match self {
            RoundedConvexBody::Three(b) => Some(b),
            _ => None,
        }
    }

    /// Boundary probe points, padded to three coordinates for reporting.
    pub fn probe_points_padded(&self, k: usize) -> Vec<([f64; 3], Region)> {
        match self {
            RoundedConvexBody::Two(b) => b
                .probe_points(k)
                .into_iter()
                .map(|p| {
                    let region = b.signed_distance(p).region;
                    ([p.x(), p.y(), 0.0], region)
                })
                .collect(),
            RoundedConvexBody::Three(b) => b
                .probe_points(k)
                .into_iter()
                .map(|p| {
                    let region = b.signed_distance(p).region;
                    ([p[0], p[1], p[2]], region)
                })
                .collect(),
        }
    }
}
