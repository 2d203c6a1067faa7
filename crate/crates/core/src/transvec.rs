//! Algebraic translation-vector maps.
//!
//! Three quantities share the dual part of a screw vector and are easy to mix
//! up, so they travel as a [`TranslationVector`] tagged with its
//! [`TranslationKind`]:
//!
//! * `Vtv`: velocity translation vector `σ'_v`, the dual part of the screw
//!   from the inertial frame to the thrust frame (Savage's `η`).
//! * `NewPtv`: position translation vector `σ'_p`, the dual part of the screw
//!   to the thrust *position* frame, whose origin sits at the double-integrated
//!   specific force.
//! * `SavagePtv`: Savage's position translation vector `ζ`.
//!
//! Every map is `I + c1 (σ×) + c2 (σ×)²` for some pair of coefficients, so
//! all of them preserve the component along `σ`.

use std::fmt;

use crate::coeffs::CoeffSet;
use crate::error::{Error, Result};
use crate::rotkin::{skew_polynomial, Mat3, RotationVector, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    Vtv,
    NewPtv,
    SavagePtv,
}

impl fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TranslationKind::Vtv => "velocity translation vector",
            TranslationKind::NewPtv => "position translation vector",
            TranslationKind::SavagePtv => "Savage position translation vector",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationVector {
    value: Vec3,
    kind: TranslationKind,
}

impl TranslationVector {
    pub fn new(kind: TranslationKind, value: Vec3) -> Self {
        Self { value, kind }
    }

    pub fn vtv(value: Vec3) -> Self {
        Self::new(TranslationKind::Vtv, value)
    }

    pub fn new_ptv(value: Vec3) -> Self {
        Self::new(TranslationKind::NewPtv, value)
    }

    pub fn savage_ptv(value: Vec3) -> Self {
        Self::new(TranslationKind::SavagePtv, value)
    }

    pub fn value(&self) -> &Vec3 {
        &self.value
    }

    pub fn kind(&self) -> TranslationKind {
        self.kind
    }

    /// The value, provided the tag is `expected`.
    pub fn expect(&self, expected: TranslationKind) -> Result<&Vec3> {
        if self.kind == expected {
            Ok(&self.value)
        } else {
            Err(Error::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }
}

/// Dual vector `ω + ε Δt_v^N` pairing the body angular rate with the
/// body-referenced thrust velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist {
    pub angular_rate: Vec3,
    pub thrust_velocity: Vec3,
}

impl Twist {
    pub fn new(angular_rate: Vec3, thrust_velocity: Vec3) -> Result<Self> {
        if angular_rate
            .iter()
            .chain(thrust_velocity.iter())
            .all(|c| c.is_finite())
        {
            Ok(Self {
                angular_rate,
                thrust_velocity,
            })
        } else {
            Err(Error::NonFinite("twist"))
        }
    }

    /// Twist between the inertial and thrust position frames, given the
    /// attitude and the velocity translation vector.
    pub fn from_vtv(sigma: &RotationVector, omega: Vec3, vtv: &TranslationVector) -> Result<Self> {
        Self::new(omega, body_thrust_velocity(sigma, vtv)?)
    }
}

fn coeffs_of(sigma: &RotationVector) -> Result<CoeffSet> {
    CoeffSet::at(sigma.checked_angle()?)
}

/// `I − a1(σ×) + a2(σ×)²`: VTV to body-referenced thrust velocity.
pub fn body_thrust_velocity_matrix(sigma: &RotationVector) -> Result<Mat3> {
    let c = coeffs_of(sigma)?;
    Ok(skew_polynomial(sigma.vector(), -c.a1, c.a2))
}

/// `I + a1(σ×) + a2(σ×)²`: VTV to interval-frame thrust velocity, and new PTV
/// to interval-frame double integral of specific force.
pub fn interval_matrix(sigma: &RotationVector) -> Result<Mat3> {
    let c = coeffs_of(sigma)?;
    Ok(skew_polynomial(sigma.vector(), c.a1, c.a2))
}

/// `I + w1(σ×) + w2(σ×)²`: new PTV to Savage PTV.
pub fn savage_matrix(sigma: &RotationVector) -> Result<Mat3> {
    let c = coeffs_of(sigma)?;
    Ok(skew_polynomial(sigma.vector(), c.w1, c.w2))
}

fn solve(m: Mat3, rhs: &Vec3, what: &'static str) -> Result<Vec3> {
    m.lu().solve(rhs).ok_or(Error::Singular(what))
}

/// Body-referenced thrust velocity `Δt_v^N` from the VTV.
pub fn body_thrust_velocity(sigma: &RotationVector, vtv: &TranslationVector) -> Result<Vec3> {
    let v = vtv.expect(TranslationKind::Vtv)?;
    Ok(body_thrust_velocity_matrix(sigma)? * v)
}

/// Thrust velocity `Δt_v^{N'}` in the interval-start frame, from the VTV.
///
/// Rotating the result by `−σ` gives [`body_thrust_velocity`].
pub fn interval_thrust_velocity(sigma: &RotationVector, vtv: &TranslationVector) -> Result<Vec3> {
    let v = vtv.expect(TranslationKind::Vtv)?;
    Ok(interval_matrix(sigma)? * v)
}

/// VTV recovered from the interval-frame thrust velocity (linear solve).
pub fn vtv_from_interval_thrust_velocity(
    sigma: &RotationVector,
    velocity: &Vec3,
) -> Result<TranslationVector> {
    let m = interval_matrix(sigma)?;
    Ok(TranslationVector::vtv(solve(
        m,
        velocity,
        "thrust velocity",
    )?))
}

/// Double-integrated specific force `Δt_p^{N'}` in the interval-start frame.
pub fn double_integral(sigma: &RotationVector, ptv: &TranslationVector) -> Result<Vec3> {
    let p = ptv.expect(TranslationKind::NewPtv)?;
    Ok(interval_matrix(sigma)? * p)
}

/// New PTV from the double-integrated specific force (linear solve).
pub fn ptv_from_double_integral(sigma: &RotationVector, dint: &Vec3) -> Result<TranslationVector> {
    let m = interval_matrix(sigma)?;
    Ok(TranslationVector::new_ptv(solve(
        m,
        dint,
        "double integral",
    )?))
}

/// Savage PTV `ζ = [I + w1(σ×) + w2(σ×)²] σ'_p`.
pub fn new_ptv_to_savage(
    sigma: &RotationVector,
    ptv: &TranslationVector,
) -> Result<TranslationVector> {
    let p = ptv.expect(TranslationKind::NewPtv)?;
    Ok(TranslationVector::savage_ptv(savage_matrix(sigma)? * p))
}

/// Inverse of [`new_ptv_to_savage`] (linear solve).
pub fn savage_to_new_ptv(
    sigma: &RotationVector,
    zeta: &TranslationVector,
) -> Result<TranslationVector> {
    let z = zeta.expect(TranslationKind::SavagePtv)?;
    let m = savage_matrix(sigma)?;
    Ok(TranslationVector::new_ptv(solve(m, z, "Savage PTV")?))
}

fn scaled_residual(lhs: Vec3, rhs: Vec3, terms: &[Vec3]) -> f64 {
    let scale = terms
        .iter()
        .chain([&lhs, &rhs])
        .map(|t| t.norm())
        .fold(0.0, f64::max);
    (lhs - rhs).norm() / (1.0 + scale)
}

/// Residuals of the two cross-product forms of the thrust velocity:
///
/// ```text
/// σ×Δt_v^N       = [b1(σ×) − a1(σ×)²] σ'_v
/// σ×(σ×Δt_v^N)   = [(1 − cos σ)(σ×) + b1(σ×)²] σ'_v
/// ```
///
/// Left sides use [`body_thrust_velocity`] and explicit cross products. Each
/// residual is `|lhs − rhs| / (1 + largest term norm)`.
pub fn thrust_velocity_residuals(
    sigma: &RotationVector,
    vtv: &TranslationVector,
) -> Result<[f64; 2]> {
    let dt = body_thrust_velocity(sigma, vtv)?;
    let c = coeffs_of(sigma)?;
    let s = sigma.vector();
    let v = vtv.value();
    let sv = s.cross(v);
    let ssv = s.cross(&sv);

    let lhs1 = s.cross(&dt);
    let rhs1 = sv * c.b1 - ssv * c.a1;
    let lhs2 = s.cross(&lhs1);
    let one_minus_cos = c.a1 * sigma.angle().powi(2);
    let rhs2 = sv * one_minus_cos + ssv * c.b1;
    Ok([
        scaled_residual(lhs1, rhs1, &[sv * c.b1, ssv * c.a1]),
        scaled_residual(lhs2, rhs2, &[sv * one_minus_cos, ssv * c.b1]),
    ])
}

/// Residuals of the six vector identities used to simplify the Savage PTV
/// rate, for arbitrary `σ`, `p = σ'_p`, `ω`:
///
/// ```text
/// 1. σ×(σ×(p×ω))            = (σ·ω) σ×p − (σ·p) σ×ω
/// 2. ω×(σ×p)                = p×(σ×ω) − σ×(p×ω)
/// 3. [p·(σ×ω)] σ            = p×[σ×(σ×ω)] + (p·σ) σ×ω
/// 4. p×[σ×(σ×ω)] + (p·σ)σ×ω = (σ·ω) p×σ − σ² p×ω + (p·σ) σ×ω
/// 5. (σ×(σ×ω))×(σ×p)        = (σ·ω) σ×(σ×p) − σ² ω×(σ×p)
/// 6. (σ·p) σ×(σ×ω)          = (σ·ω) σ×(σ×p) + σ² σ×(p×ω)
/// ```
///
/// Residuals are scaled as in [`thrust_velocity_residuals`].
pub fn triple_product_residuals(sigma: &Vec3, sp: &Vec3, omega: &Vec3) -> [f64; 6] {
    let (s, p, w) = (sigma, sp, omega);
    let s2 = s.norm_squared();
    let sw = s.dot(w);
    let sp_dot = s.dot(p);
    let sxw = s.cross(w);
    let sxp = s.cross(p);
    let pxw = p.cross(w);
    let sxsxw = s.cross(&sxw);
    let sxsxp = s.cross(&sxp);
    let sxpxw = s.cross(&pxw);

    let r1 = {
        let (a, b) = (sxp * sw, sxw * sp_dot);
        scaled_residual(s.cross(&sxpxw), a - b, &[a, b])
    };
    let r2 = {
        let a = p.cross(&sxw);
        scaled_residual(w.cross(&sxp), a - sxpxw, &[a, sxpxw])
    };
    let mid = p.cross(&sxsxw) + sxw * sp_dot;
    let r3 = {
        let a = s * p.dot(&sxw);
        scaled_residual(a, mid, &[p.cross(&sxsxw), sxw * sp_dot])
    };
    let r4 = {
        let (a, b, c) = (p.cross(s) * sw, pxw * s2, sxw * sp_dot);
        scaled_residual(mid, a - b + c, &[p.cross(&sxsxw), a, b, c])
    };
    let r5 = {
        let (a, b) = (sxsxp * sw, w.cross(&sxp) * s2);
        scaled_residual(sxsxw.cross(&sxp), a - b, &[a, b])
    };
    let r6 = {
        let (a, b) = (sxsxp * sw, sxpxw * s2);
        scaled_residual(sxsxw * sp_dot, a + b, &[a, b])
    };
    [r1, r2, r3, r4, r5, r6]
}
