//! Position translation vector kinematics for strapdown inertial navigation.
//!
//! In the dual-quaternion view of strapdown navigation, the displacement
//! between the inertial frame and a body-attitude frame is a screw vector
//! `σ + ε σ'`. With the frame origin at the integrated thrust velocity the
//! dual part is the velocity translation vector `σ'_v`; with the origin at the
//! double-integrated specific force it is a position translation vector
//! `σ'_p`. This crate provides
//!
//! - [`rotkin`]: skew, Rodrigues, quaternions and rotation-vector kinematics,
//! - [`coeffs`]: the scalar coefficients (`f5`, `w1`…`w5`, `a1`, `a2`, `b1`)
//!   with series branches at small angle,
//! - [`transvec`]: the algebraic maps between `σ'_v`, `σ'_p`, Savage's `ζ`,
//!   the thrust velocity and the double integral of specific force,
//! - [`dynamics`]: the three translation-vector rate equations and an RK4
//!   integrator,
//! - [`oracle`]: motion profiles and a brute-force reference generator.
//!
//! All frames are single-interval: the reference frame is the body frame at
//! the start of the interval, and rotation angles stay below
//! [`rotkin::MAX_ANGLE`].

pub mod coeffs;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod rotkin;
pub mod transvec;

pub use coeffs::{CoeffSet, Coefficient};
pub use dynamics::{
    ptv_rate_thrust, ptv_rate_vtv, rk4_integrate, savage_rate_vtv, Formulation, InputSource,
    KinematicState, RateInputs, SampledInputs, Trajectory,
};
pub use error::{Error, Result};
pub use oracle::{generate_ground_truth, GroundTruth, MotionProfile, ProfileKind, TruthSample};
pub use rotkin::{bortz_rate, rodrigues, skew, Mat3, Quaternion, RotationVector, Vec3, MAX_ANGLE};
pub use transvec::{TranslationKind, TranslationVector, Twist};
