//! Fixed-dimension points and vectors.
//!
//! Everything in this crate works in ℝ² or ℝ³; a const-generic wrapper over
//! `[f64; N]` keeps the projection and walk-on-spheres code dimension-agnostic
//! while the hull code stays specialized.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

/// A point (or vector) in ℝ^N.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<const N: usize>(pub [f64; N]);

pub type Point2 = Point<2>;
pub type Point3 = Point<3>;

impl<const N: usize> Point<N> {
    pub const ZERO: Self = Point([0.0; N]);

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            acc += self.0[i] * other.0[i];
        }
        acc
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        let mut out = self.0;
        for v in &mut out {
            *v *= s;
        }
        Point(out)
    }

    /// Unit vector in the same direction; `None` for (near-)zero vectors.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self.scale(1.0 / n))
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Lexicographic comparison, used for canonical orderings.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for i in 0..N {
            match self.0[i].partial_cmp(&other.0[i]) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl Point2 {
    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        Point([x, y])
    }

    #[inline]
    pub fn x(self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn y(self) -> f64 {
        self.0[1]
    }

    /// z-component of the cross product of `self` and `other`.
    #[inline]
    pub fn cross(self, other: Self) -> f64 {
        self.0[0] * other.0[1] - self.0[1] * other.0[0]
    }

    /// Rotation of `self` by +90 degrees.
    #[inline]
    pub fn perp(self) -> Self {
        Point([-self.0[1], self.0[0]])
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        Point([theta.cos(), theta.sin()])
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.0[1].atan2(self.0[0])
    }
}

impl Point3 {
    #[inline]
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point([x, y, z])
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Point([
            self.0[1] * other.0[2] - self.0[2] * other.0[1],
            self.0[2] * other.0[0] - self.0[0] * other.0[2],
            self.0[0] * other.0[1] - self.0[1] * other.0[0],
        ])
    }

    /// A deterministic unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthonormal(self) -> Point3 {
        let a = if self.0[0].abs() <= self.0[1].abs() && self.0[0].abs() <= self.0[2].abs() {
            Point3::new(1.0, 0.0, 0.0)
        } else if self.0[1].abs() <= self.0[2].abs() {
            Point3::new(0.0, 1.0, 0.0)
        } else {
            Point3::new(0.0, 0.0, 1.0)
        };
        let d = self.normalized().expect("nonzero vector");
        (a - d.scale(a.dot(d))).normalized().expect("orthogonal component")
    }
}

impl<const N: usize> Add for Point<N> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for i in 0..N {
            out[i] += rhs.0[i];
        }
        Point(out)
    }
}

impl<const N: usize> AddAssign for Point<N> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            self.0[i] += rhs.0[i];
        }
    }
}

impl<const N: usize> Sub for Point<N> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let mut out = self.0;
        for i in 0..N {
            out[i] -= rhs.0[i];
        }
        Point(out)
    }
}

impl<const N: usize> Neg for Point<N> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul<f64> for Point<N> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Index<usize> for Point<N> {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}
