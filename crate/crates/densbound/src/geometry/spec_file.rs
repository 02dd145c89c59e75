//! The on-disk domain file format.
//!
//! A domain file is UTF-8 JSON with exactly the fields `dim` (2 or 3),
//! `points` (array of dim-length coordinate arrays) and `radius` (positive
//! decimal). Unknown fields are rejected with a diagnostic naming the key.

use serde::{Deserialize, Serialize};

use crate::geometry::{Body2, Body3, GeometryError, RoundedConvexBody};
use crate::point::{Point2, Point3};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DomainSpecFile {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub radius: f64,
}

impl DomainSpecFile {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain file serializes")
    }

    /// Validates and builds the body (hull reduction included).
    pub fn build(&self) -> Result<RoundedConvexBody, GeometryError> {
        match self.dim {
            2 => {
                let pts = self.typed_points::<2>()?;
                let pts: Vec<Point2> = pts.into_iter().map(crate::point::Point).collect();
                Ok(RoundedConvexBody::Two(Body2::new(&pts, self.radius)?))
            }
            3 => {
                let pts = self.typed_points::<3>()?;
                let pts: Vec<Point3> = pts.into_iter().map(crate::point::Point).collect();
                Ok(RoundedConvexBody::Three(Body3::new(&pts, self.radius)?))
            }
            d => Err(GeometryError::UnsupportedDimension(d)),
        }
    }

    fn typed_points<const N: usize>(&self) -> Result<Vec<[f64; N]>, GeometryError> {
        self.points
            .iter()
            .map(|c| {
                if c.len() != N {
                    return Err(GeometryError::DimensionMismatch {
                        expected: N,
                        got: c.len(),
                    });
                }
                let mut out = [0.0; N];
                out.copy_from_slice(c);
                Ok(out)
            })
            .collect()
    }

    /// Canonical spec file of a body: reduced generators in canonical order.
    pub fn from_body(body: &RoundedConvexBody) -> Self {
        match body {
            RoundedConvexBody::Two(b) => DomainSpecFile {
                dim: 2,
                points: b.generators().iter().map(|p| p.0.to_vec()).collect(),
                radius: b.rounding(),
            },
            RoundedConvexBody::Three(b) => DomainSpecFile {
                dim: 3,
                points: b.generators().iter().map(|p| p.0.to_vec()).collect(),
                radius: b.rounding(),
            },
        }
    }
}
