//! Rotation-vector and SO(3) primitives.
//!
//! Rotation vectors are axis-angle vectors `σ` whose exponential is the frame
//! rotation. The library restricts their magnitude to `[0, MAX_ANGLE)`: the
//! translation-vector maps degenerate at `π`, and quaternion extraction is
//! ambiguous there.
//!
//! Quaternions are scalar-first and kept in the canonical `w ≥ 0` hemisphere
//! whenever they are converted to a rotation vector.

use std::f64::consts::PI;
use std::ops::{Mul, Neg};

use nalgebra::{Matrix3, Vector3};

use crate::coeffs::{self, Coefficient};
use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Largest rotation angle (exclusive) accepted by the mapping operations.
pub const MAX_ANGLE: f64 = PI - 1e-6;

pub(crate) fn check_angle(angle: f64) -> Result<f64> {
    if angle.is_finite() && (0.0..MAX_ANGLE).contains(&angle) {
        Ok(angle)
    } else {
        Err(Error::Domain {
            angle,
            limit: MAX_ANGLE,
        })
    }
}

/// Axis-angle rotation vector (rad).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RotationVector(Vec3);

impl RotationVector {
    pub fn new(sigma: Vec3) -> Self {
        Self(sigma)
    }

    pub fn zero() -> Self {
        Self(Vec3::zeros())
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    /// Rotation angle `|σ|`.
    pub fn angle(&self) -> f64 {
        self.0.norm()
    }

    /// Rotation angle, or a domain error when it is at or beyond [`MAX_ANGLE`].
    pub fn checked_angle(&self) -> Result<f64> {
        if !self.0.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("rotation vector"));
        }
        check_angle(self.angle())
    }
}

impl From<Vec3> for RotationVector {
    fn from(v: Vec3) -> Self {
        Self(v)
    }
}

impl Neg for RotationVector {
    type Output = RotationVector;

    fn neg(self) -> Self::Output {
        RotationVector(-self.0)
    }
}

/// Scalar-first quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_parts(w: f64, v: Vec3) -> Self {
        Self::new(w, v.x, v.y, v.z)
    }

    pub fn vector_part(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Representative with non-negative scalar part.
    pub fn canonical(&self) -> Self {
        if self.w < 0.0 {
            Self::new(-self.w, -self.x, -self.y, -self.z)
        } else {
            *self
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.w * k, self.x * k, self.y * k, self.z * k)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }

    /// Exponential map: rotation of `|σ|` about `σ/|σ|`.
    pub fn from_rotation_vector(sigma: &RotationVector) -> Self {
        let half = 0.5 * sigma.angle();
        // sin(half)/|σ| = sinc(half)/2 has no cancellation
        let k = if half == 0.0 {
            0.5
        } else {
            0.5 * half.sin() / half
        };
        Self::from_parts(half.cos(), sigma.vector() * k)
    }

    /// Logarithm of a unit quaternion, canonicalised to `w ≥ 0`.
    pub fn to_rotation_vector(&self) -> Result<RotationVector> {
        let q = self.canonical();
        let v = q.vector_part();
        let n = v.norm();
        if n == 0.0 {
            return Ok(RotationVector::zero());
        }
        let angle = 2.0 * n.atan2(q.w);
        check_angle(angle)?;
        Ok(RotationVector::new(v * (angle / n)))
    }

    /// Rotation matrix of a unit quaternion (body to reference).
    pub fn to_rotation_matrix(&self) -> Mat3 {
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        Mat3::new(
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        )
    }

    /// Time derivative `½ q ⊗ (0, ω)` for a body-frame angular rate.
    pub fn kinematic_rate(&self, omega: &Vec3) -> Self {
        (*self * Quaternion::from_parts(0.0, *omega)).scale(0.5)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

/// Cross-product matrix: `skew(v) * u == v.cross(u)`.
pub fn skew(v: &Vec3) -> Mat3 {
    Mat3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// `I + c1 (σ×) + c2 (σ×)²`, the shape shared by every map in this crate.
pub(crate) fn skew_polynomial(sigma: &Vec3, c1: f64, c2: f64) -> Mat3 {
    let s = skew(sigma);
    Mat3::identity() + s * c1 + s * s * c2
}

/// Exponential map to a rotation matrix. Valid for any finite `σ`.
pub fn rodrigues(sigma: &RotationVector) -> Mat3 {
    let angle = sigma.angle();
    skew_polynomial(
        sigma.vector(),
        Coefficient::B1.value(angle),
        Coefficient::A1.value(angle),
    )
}

/// Rotation-vector kinematics `σ̇ = ω + ½σ×ω + f5 σ×(σ×ω)`.
pub fn bortz_rate(sigma: &RotationVector, omega: &Vec3) -> Result<Vec3> {
    let angle = sigma.checked_angle()?;
    let f5 = coeffs::f5(angle)?;
    let s = sigma.vector();
    let sxw = s.cross(omega);
    Ok(omega + sxw * 0.5 + s.cross(&sxw) * f5)
}
