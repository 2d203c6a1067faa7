//! Analytic motion profiles and a brute-force ground-truth generator.
//!
//! The generator never touches the translation-vector rate equations. It
//! integrates the attitude quaternion together with the specific force and
//! its integral, in the frame of the body at `t = 0`, at a high fixed rate:
//!
//! ```text
//! q̇ = ½ q ⊗ ω        v̇ = R(q) f_b        ṗ = v
//! ```
//!
//! and derives every translation quantity at the coarse sample times
//! algebraically from `(q, v, p)`. The run is repeated at twice the rate and
//! rejected unless the two agree.

use crate::dynamics::InputSource;
use crate::error::{Error, Result};
use crate::rotkin::{Quaternion, RotationVector, Vec3, MAX_ANGLE};
use crate::transvec::{
    ptv_from_double_integral, vtv_from_interval_thrust_velocity, TranslationVector,
};

/// Largest rotation angle a profile may reach over its horizon.
pub const PROFILE_MAX_ANGLE: f64 = std::f64::consts::PI - 1e-3;

/// Agreement required between the generator at `r` and `2r` refinement,
/// relative to `max(|x|, 1)`.
pub const REFINEMENT_TOLERANCE: f64 = 1e-10;

/// `Σ poly[k] t^k + amplitude · sin(frequency · t + phase)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AxisSignal {
    pub poly: Vec<f64>,
    pub amplitude: f64,
    pub frequency: f64,
    pub phase: f64,
}

impl AxisSignal {
    pub fn eval(&self, t: f64) -> f64 {
        let poly = self.poly.iter().rev().fold(0.0, |acc, &c| acc * t + c);
        poly + self.amplitude * (self.frequency * t + self.phase).sin()
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// Constant body rate and specific force.
    Constant { omega: Vec3, specific_force: Vec3 },
    /// Classical coning: the attitude is a rotation by `half_angle` about a
    /// horizontal axis spinning at `cone_rate`,
    ///
    /// ```text
    /// q_c(t) = [cos(α/2), sin(α/2) cos Ωt, sin(α/2) sin Ωt, 0]
    /// ω(t)   = Ω [−sin α sin Ωt, sin α cos Ωt, cos α − 1]
    /// ```
    ///
    /// so the body z axis sweeps a cone of half-angle `α` once per `2π/Ω`.
    /// Specific force is `thrust · cos(thrust_rate · t)` in the body frame.
    Coning {
        half_angle: f64,
        cone_rate: f64,
        thrust: Vec3,
        thrust_rate: f64,
    },
    /// Per-axis polynomial plus sinusoid for both `ω` and `f_b`.
    PolySinusoid {
        omega: [AxisSignal; 3],
        specific_force: [AxisSignal; 3],
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MotionProfile {
    pub kind: ProfileKind,
    /// End of the profile, seconds from 0.
    pub horizon: f64,
}

impl MotionProfile {
    pub fn new(kind: ProfileKind, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad horizon {horizon}")));
        }
        Ok(Self { kind, horizon })
    }

    pub fn constant(omega: Vec3, specific_force: Vec3, horizon: f64) -> Result<Self> {
        Self::new(
            ProfileKind::Constant {
                omega,
                specific_force,
            },
            horizon,
        )
    }

    pub fn coning(
        half_angle: f64,
        cone_rate: f64,
        thrust: Vec3,
        thrust_rate: f64,
        horizon: f64,
    ) -> Result<Self> {
        Self::new(
            ProfileKind::Coning {
                half_angle,
                cone_rate,
                thrust,
                thrust_rate,
            },
            horizon,
        )
    }

    /// `α = 0.01` rad, `Ω = 2π` rad/s, `f₀ = (0, 0, 9.8)` m/s², `ν = π` rad/s.
    pub fn default_coning(horizon: f64) -> Result<Self> {
        Self::coning(
            0.01,
            2.0 * std::f64::consts::PI,
            Vec3::new(0.0, 0.0, 9.8),
            std::f64::consts::PI,
            horizon,
        )
    }

    /// Body rate and specific force at `t`.
    pub fn evaluate(&self, t: f64) -> Result<(Vec3, Vec3)> {
        let slack = 1e-12 * self.horizon;
        if !(t >= -slack && t <= self.horizon + slack) {
            return Err(Error::OutOfHorizon {
                t,
                horizon: self.horizon,
            });
        }
        Ok(match &self.kind {
            ProfileKind::Constant {
                omega,
                specific_force,
            } => (*omega, *specific_force),
            ProfileKind::Coning {
                half_angle,
                cone_rate,
                thrust,
                thrust_rate,
            } => {
                let (sa, ca) = half_angle.sin_cos();
                let (st, ct) = (cone_rate * t).sin_cos();
                let omega = Vec3::new(-sa * st, sa * ct, ca - 1.0) * *cone_rate;
                (omega, thrust * (thrust_rate * t).cos())
            }
            ProfileKind::PolySinusoid {
                omega,
                specific_force,
            } => (
                Vec3::new(omega[0].eval(t), omega[1].eval(t), omega[2].eval(t)),
                Vec3::new(
                    specific_force[0].eval(t),
                    specific_force[1].eval(t),
                    specific_force[2].eval(t),
                ),
            ),
        })
    }

    /// Closed-form attitude relative to `t = 0` for coning profiles.
    pub fn coning_attitude(&self, t: f64) -> Option<Quaternion> {
        match self.kind {
            ProfileKind::Coning {
                half_angle,
                cone_rate,
                ..
            } => {
                let cone = |t: f64| {
                    let (s, c) = (0.5 * half_angle).sin_cos();
                    let (st, ct) = (cone_rate * t).sin_cos();
                    Quaternion::new(c, s * ct, s * st, 0.0)
                };
                Some(cone(0.0).conjugate() * cone(t))
            }
            _ => None,
        }
    }
}

impl InputSource for MotionProfile {
    fn inputs(&self, t: f64) -> Result<(Vec3, Vec3)> {
        self.evaluate(t)
    }
}

/// Reference values at one sample time, all in the frame of the body at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthSample {
    pub t: f64,
    pub attitude: Quaternion,
    pub sigma: RotationVector,
    /// Body-referenced thrust velocity `Δt_v^N = Rᵀ v`.
    pub thrust_velocity: Vec3,
    /// Interval-frame thrust velocity `Δt_v^{N'} = v`.
    pub interval_thrust_velocity: Vec3,
    /// Double-integrated specific force `Δt_p^{N'} = p`.
    pub double_integral: Vec3,
    pub sv: TranslationVector,
    pub sp: TranslationVector,
}

#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub samples: Vec<TruthSample>,
    /// Generator steps per coarse sample interval in the returned run.
    pub refine_factor: usize,
    /// Largest relative change between the `refine_factor / 2` and
    /// `refine_factor` runs.
    pub refinement_change: f64,
}

impl GroundTruth {
    pub fn terminal(&self) -> &TruthSample {
        self.samples.last().expect("ground truth has samples")
    }
}

#[derive(Clone, Copy)]
struct Raw {
    q: Quaternion,
    v: Vec3,
    p: Vec3,
}

impl Raw {
    fn axpy(&self, k: f64, d: &Raw) -> Raw {
        Raw {
            q: self.q.add(&d.q.scale(k)),
            v: self.v + d.v * k,
            p: self.p + d.p * k,
        }
    }
}

fn raw_rate(profile: &MotionProfile, t: f64, y: &Raw) -> Result<Raw> {
    let (omega, force) = profile.evaluate(t)?;
    Ok(Raw {
        q: y.q.kinematic_rate(&omega),
        v: y.q.to_rotation_matrix() * force,
        p: y.v,
    })
}

fn kahan(sum: &mut Vec3, carry: &mut Vec3, increment: Vec3) {
    let y = increment - *carry;
    let t = *sum + y;
    *carry = (t - *sum) - y;
    *sum = t;
}

fn integrate_raw(
    profile: &MotionProfile,
    samples: usize,
    refine: usize,
) -> Result<Vec<(f64, Raw)>> {
    let steps = samples * refine;
    let h = profile.horizon / steps as f64;
    let mut y = Raw {
        q: Quaternion::IDENTITY,
        v: Vec3::zeros(),
        p: Vec3::zeros(),
    };
    let (mut carry_v, mut carry_p) = (Vec3::zeros(), Vec3::zeros());
    let mut out = Vec::with_capacity(samples + 1);
    out.push((0.0, y));
    for k in 0..steps {
        let t = h * k as f64;
        let k1 = raw_rate(profile, t, &y)?;
        let k2 = raw_rate(profile, t + 0.5 * h, &y.axpy(0.5 * h, &k1))?;
        let k3 = raw_rate(profile, t + 0.5 * h, &y.axpy(0.5 * h, &k2))?;
        let k4 = raw_rate(profile, t + h, &y.axpy(h, &k3))?;
        let step = k1.axpy(2.0, &k2).axpy(2.0, &k3).axpy(1.0, &k4);
        y.q = y.q.add(&step.q.scale(h / 6.0)).normalized();
        // compensated sums: ~1e5 small increments otherwise cost several digits
        kahan(&mut y.v, &mut carry_v, step.v * (h / 6.0));
        kahan(&mut y.p, &mut carry_p, step.p * (h / 6.0));

        // q is continuous from the identity, so this angle grows past π instead of wrapping
        let angle = 2.0 * y.q.vector_part().norm().atan2(y.q.w);
        if angle >= PROFILE_MAX_ANGLE {
            return Err(Error::Domain {
                angle,
                limit: PROFILE_MAX_ANGLE,
            });
        }
        if (k + 1) % refine == 0 {
            let t_next = if k + 1 == steps {
                profile.horizon
            } else {
                h * (k + 1) as f64
            };
            out.push((t_next, y));
        }
    }
    Ok(out)
}

fn to_sample(t: f64, raw: &Raw) -> Result<TruthSample> {
    let sigma = raw.q.to_rotation_vector()?;
    let r = raw.q.to_rotation_matrix();
    Ok(TruthSample {
        t,
        attitude: raw.q,
        sigma,
        thrust_velocity: r.transpose() * raw.v,
        interval_thrust_velocity: raw.v,
        double_integral: raw.p,
        sv: vtv_from_interval_thrust_velocity(&sigma, &raw.v)?,
        sp: ptv_from_double_integral(&sigma, &raw.p)?,
    })
}

fn relative_change(a: &Vec3, b: &Vec3) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn max_change(coarse: &[TruthSample], fine: &[TruthSample]) -> (f64, &'static str) {
    let mut worst = (0.0, "sigma");
    for (a, b) in coarse.iter().zip(fine) {
        let pairs = [
            (a.sigma.vector(), b.sigma.vector(), "sigma"),
            (&a.thrust_velocity, &b.thrust_velocity, "thrust velocity"),
            (
                &a.interval_thrust_velocity,
                &b.interval_thrust_velocity,
                "interval thrust velocity",
            ),
            (&a.double_integral, &b.double_integral, "double integral"),
            (a.sv.value(), b.sv.value(), "VTV"),
            (a.sp.value(), b.sp.value(), "PTV"),
        ];
        for (x, y, name) in pairs {
            let c = relative_change(x, y);
            if c > worst.0 {
                worst = (c, name);
            }
        }
    }
    worst
}

/// Reference trajectory at `coarse_samples + 1` evenly spaced times over the
/// profile horizon.
///
/// Integrates at `coarse_samples × 2·refine_factor` RK4 steps and checks it
/// against a run at `coarse_samples × refine_factor`.
pub fn generate_ground_truth(
    profile: &MotionProfile,
    coarse_samples: usize,
    refine_factor: usize,
) -> Result<GroundTruth> {
    if coarse_samples == 0 {
        return Err(Error::InvalidArgument(
            "coarse_samples must be positive".into(),
        ));
    }
    if refine_factor < 8 {
        return Err(Error::InvalidArgument(format!(
            "refine_factor {refine_factor} is below the minimum of 8"
        )));
    }
    let build = |refine| -> Result<Vec<TruthSample>> {
        integrate_raw(profile, coarse_samples, refine)?
            .iter()
            .map(|(t, raw)| to_sample(*t, raw))
            .collect()
    };
    let coarse = build(refine_factor)?;
    let fine = build(2 * refine_factor)?;
    let (change, quantity) = max_change(&coarse, &fine);
    if change >= REFINEMENT_TOLERANCE {
        return Err(Error::NotConverged { quantity, change });
    }
    debug_assert!(fine.iter().all(|s| s.sigma.angle() < MAX_ANGLE));
    Ok(GroundTruth {
        samples: fine,
        refine_factor: 2 * refine_factor,
        refinement_change: change,
    })
}
