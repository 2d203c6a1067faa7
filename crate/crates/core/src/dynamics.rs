//! Translation-vector rate equations and a fixed-step RK4 integrator.
//!
//! Three formulations propagate the position translation vector over one
//! update interval:
//!
//! * [`ptv_rate_thrust`]: new PTV driven by the body-referenced thrust
//!   velocity `Δt_v^N`.
//! * [`ptv_rate_vtv`]: new PTV driven by the VTV `σ'_v`.
//! * [`savage_rate_vtv`]: Savage's PTV `ζ` driven by `σ'_v`.
//!
//! The integrator carries the rotation vector (Bortz equation), the
//! translation state, and the interval-frame thrust velocity
//! `Δt_v^{N'} = ∫ R(σ) f_b dt`. The latter supplies `Δt_v^N` and `σ'_v` at
//! every RK4 stage through the algebraic maps in [`crate::transvec`].

use nalgebra::SVector;

use crate::coeffs::CoeffSet;
use crate::error::{Error, Result};
use crate::rotkin::{bortz_rate, rodrigues, RotationVector, Vec3};
use crate::transvec::{
    new_ptv_to_savage, savage_to_new_ptv, vtv_from_interval_thrust_velocity, TranslationKind,
    TranslationVector,
};

/// Rate of the new PTV given the body-referenced thrust velocity:
///
/// ```text
/// σ̇'_p = Δt + ½(σ×Δt + σ'_p×ω)
///        + f5 [σ×(σ×Δt) + σ×(σ'_p×ω) + σ'_p×(σ×ω)]
///        + w3 (σ·σ'_p) σ×(σ×ω)
/// ```
pub fn ptv_rate_thrust(
    sigma: &RotationVector,
    sp: &TranslationVector,
    omega: &Vec3,
    thrust_velocity: &Vec3,
) -> Result<Vec3> {
    let p = sp.expect(TranslationKind::NewPtv)?;
    let c = CoeffSet::at(sigma.checked_angle()?)?;
    let s = sigma.vector();
    let dt = thrust_velocity;
    let sxdt = s.cross(dt);
    let pxw = p.cross(omega);
    let sxw = s.cross(omega);
    Ok(dt
        + (sxdt + pxw) * 0.5
        + (s.cross(&sxdt) + s.cross(&pxw) + p.cross(&sxw)) * c.f5
        + s.cross(&sxw) * (c.w3 * s.dot(p)))
}

/// Rate of the new PTV given the VTV:
///
/// ```text
/// σ̇'_p = σ'_v + ½σ'_p×ω + f5 [σ×(σ'_p×ω) + σ'_p×(σ×ω)] + w3 (σ·σ'_p) σ×(σ×ω)
/// ```
pub fn ptv_rate_vtv(
    sigma: &RotationVector,
    sp: &TranslationVector,
    omega: &Vec3,
    sv: &TranslationVector,
) -> Result<Vec3> {
    let p = sp.expect(TranslationKind::NewPtv)?;
    let v = sv.expect(TranslationKind::Vtv)?;
    let c = CoeffSet::at(sigma.checked_angle()?)?;
    let s = sigma.vector();
    let pxw = p.cross(omega);
    let sxw = s.cross(omega);
    Ok(v + pxw * 0.5 + (s.cross(&pxw) + p.cross(&sxw)) * c.f5 + s.cross(&sxw) * (c.w3 * s.dot(p)))
}

/// Rate of Savage's PTV given the VTV.
///
/// The equation is written in terms of `σ'_p`, which is recovered from `ζ`
/// by inverting the `I + w1(σ×) + w2(σ×)²` map at every call.
pub fn savage_rate_vtv(
    sigma: &RotationVector,
    zeta: &TranslationVector,
    omega: &Vec3,
    sv: &TranslationVector,
) -> Result<Vec3> {
    let v = sv.expect(TranslationKind::Vtv)?;
    let sp = savage_to_new_ptv(sigma, zeta)?;
    let p = sp.value();
    let angle = sigma.checked_angle()?;
    let CoeffSet {
        f5,
        w1,
        w2,
        w3,
        w4,
        w5,
        ..
    } = CoeffSet::at(angle)?;
    let s = sigma.vector();
    let s2 = angle * angle;

    let sxv = s.cross(v);
    let pxw = p.cross(omega);
    let sxw = s.cross(omega);
    let sxp = s.cross(p);
    let sw = s.dot(omega);

    let k_pxw = 0.5 - w1 - s2 * (0.5 * w2 - f5 * w1);
    let k_s_pxw = f5 + 0.5 * w1 - 2.0 * w2 + s2 * w3 * (1.0 - s2 * w2);
    let k_p_sxw = f5 - 0.5 * w1 + w2 - s2 * f5 * w2;
    let k_sp_sxw = 0.5 * w2 - 2.0 * f5 * w1 - s2 * w1 * w3;
    let k_sw_sxp = 2.0 * f5 * w1 + w4;
    let k_sw_ssxp = w5 + f5 * w2 + w3 - s2 * w3 * w2;

    Ok(v + sxv * w1
        + s.cross(&sxv) * w2
        + pxw * k_pxw
        + s.cross(&pxw) * k_s_pxw
        + p.cross(&sxw) * k_p_sxw
        + sxw * (s.dot(p) * k_sp_sxw)
        + sxp * (sw * k_sw_sxp)
        + s.cross(&sxp) * (sw * k_sw_ssxp))
}

/// Inputs to one rate evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateInputs {
    Vtv { omega: Vec3, sv: TranslationVector },
    ThrustVelocity { omega: Vec3, thrust_velocity: Vec3 },
}

impl RateInputs {
    pub fn omega(&self) -> &Vec3 {
        match self {
            RateInputs::Vtv { omega, .. } | RateInputs::ThrustVelocity { omega, .. } => omega,
        }
    }
}

/// Which translation-vector equation the integrator propagates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// New PTV driven by the body-referenced thrust velocity.
    ThrustVelocity,
    /// New PTV driven by the VTV.
    Vtv,
    /// Savage's PTV driven by the VTV.
    SavagePtv,
    /// Rotation vector only.
    AttitudeOnly,
}

impl Formulation {
    pub fn name(self) -> &'static str {
        match self {
            Formulation::ThrustVelocity => "thrust_velocity",
            Formulation::Vtv => "vtv",
            Formulation::SavagePtv => "savage_ptv",
            Formulation::AttitudeOnly => "attitude_only",
        }
    }

    fn state_kind(self) -> TranslationKind {
        match self {
            Formulation::SavagePtv => TranslationKind::SavagePtv,
            _ => TranslationKind::NewPtv,
        }
    }

    /// Rate of the translation state for this formulation.
    pub fn translation_rate(
        self,
        sigma: &RotationVector,
        state: &TranslationVector,
        inputs: &RateInputs,
    ) -> Result<Vec3> {
        match (self, inputs) {
            (
                Formulation::ThrustVelocity,
                RateInputs::ThrustVelocity {
                    omega,
                    thrust_velocity,
                },
            ) => ptv_rate_thrust(sigma, state, omega, thrust_velocity),
            (Formulation::Vtv, RateInputs::Vtv { omega, sv }) => {
                ptv_rate_vtv(sigma, state, omega, sv)
            }
            (Formulation::SavagePtv, RateInputs::Vtv { omega, sv }) => {
                savage_rate_vtv(sigma, state, omega, sv)
            }
            (Formulation::AttitudeOnly, _) => Ok(Vec3::zeros()),
            (f, _) => Err(Error::InvalidArgument(format!(
                "{} formulation given mismatched rate inputs",
                f.name()
            ))),
        }
    }
}

/// Angular rate and specific force (body frame) as functions of time.
pub trait InputSource {
    /// `(ω, f_b)` at time `t`.
    fn inputs(&self, t: f64) -> Result<(Vec3, Vec3)>;

    /// Spacing of the underlying samples, if the source is sampled.
    fn sample_interval(&self) -> Option<f64> {
        None
    }
}

/// Uniformly sampled `ω` and `f_b`, interpolated with cubic Hermite splines.
///
/// Tangents are second-order finite differences (central inside, one-sided at
/// the ends).
#[derive(Debug, Clone)]
pub struct SampledInputs {
    t0: f64,
    dt: f64,
    omega: Vec<Vec3>,
    specific_force: Vec<Vec3>,
}

impl SampledInputs {
    pub fn new(t0: f64, dt: f64, omega: Vec<Vec3>, specific_force: Vec<Vec3>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad sample spacing {dt}")));
        }
        if omega.len() != specific_force.len() || omega.len() < 3 {
            return Err(Error::InvalidArgument(
                "need at least three samples of both omega and specific force".into(),
            ));
        }
        Ok(Self {
            t0,
            dt,
            omega,
            specific_force,
        })
    }

    /// Samples `source` at `count` points spaced `dt` apart from `t0`.
    pub fn from_source(source: &dyn InputSource, t0: f64, dt: f64, count: usize) -> Result<Self> {
        let (omega, force) = (0..count)
            .map(|k| source.inputs(t0 + dt * k as f64))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        Self::new(t0, dt, omega, force)
    }

    pub fn horizon(&self) -> f64 {
        self.t0 + self.dt * (self.omega.len() - 1) as f64
    }

    fn tangent(&self, data: &[Vec3], k: usize) -> Vec3 {
        let n = data.len();
        if k == 0 {
            (data[0] * -3.0 + data[1] * 4.0 - data[2]) / (2.0 * self.dt)
        } else if k == n - 1 {
            (data[n - 1] * 3.0 - data[n - 2] * 4.0 + data[n - 3]) / (2.0 * self.dt)
        } else {
            (data[k + 1] - data[k - 1]) / (2.0 * self.dt)
        }
    }

    fn hermite(&self, data: &[Vec3], k: usize, u: f64) -> Vec3 {
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        data[k] * h00
            + self.tangent(data, k) * (h10 * self.dt)
            + data[k + 1] * h01
            + self.tangent(data, k + 1) * (h11 * self.dt)
    }
}

impl InputSource for SampledInputs {
    fn inputs(&self, t: f64) -> Result<(Vec3, Vec3)> {
        let horizon = self.horizon();
        let slack = 1e-9 * self.dt;
        if !(t >= self.t0 - slack && t <= horizon + slack) {
            return Err(Error::OutOfHorizon { t, horizon });
        }
        let x = ((t - self.t0) / self.dt).max(0.0);
        let k = (x.floor() as usize).min(self.omega.len() - 2);
        let u = x - k as f64;
        Ok((
            self.hermite(&self.omega, k, u),
            self.hermite(&self.specific_force, k, u),
        ))
    }

    fn sample_interval(&self) -> Option<f64> {
        Some(self.dt)
    }
}

/// Integrated state at one time.
///
/// `sp` and `zeta` are both populated: the formulation's own state, and the
/// other one obtained through the `I + w1(σ×) + w2(σ×)²` map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicState {
    pub t: f64,
    pub sigma: RotationVector,
    pub sp: TranslationVector,
    pub zeta: TranslationVector,
    /// Thrust velocity in the interval-start frame, `∫ R(σ) f_b dt`.
    pub velocity: Vec3,
}

impl KinematicState {
    pub fn initial(t0: f64) -> Self {
        Self {
            t: t0,
            sigma: RotationVector::zero(),
            sp: TranslationVector::new_ptv(Vec3::zeros()),
            zeta: TranslationVector::savage_ptv(Vec3::zeros()),
            velocity: Vec3::zeros(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub formulation: Formulation,
    pub states: Vec<KinematicState>,
}

impl Trajectory {
    pub fn terminal(&self) -> &KinematicState {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }
}

type Packed = SVector<f64, 9>;

fn part(y: &Packed, i: usize) -> Vec3 {
    Vec3::new(y[3 * i], y[3 * i + 1], y[3 * i + 2])
}

fn pack(sigma: &Vec3, translation: &Vec3, velocity: &Vec3) -> Packed {
    let mut y = Packed::zeros();
    y.fixed_rows_mut::<3>(0).copy_from(sigma);
    y.fixed_rows_mut::<3>(3).copy_from(translation);
    y.fixed_rows_mut::<3>(6).copy_from(velocity);
    y
}

struct System<'a> {
    formulation: Formulation,
    source: &'a dyn InputSource,
}

impl System<'_> {
    fn rate(&self, t: f64, y: &Packed) -> Result<Packed> {
        let sigma = RotationVector::new(part(y, 0));
        let translation = TranslationVector::new(self.formulation.state_kind(), part(y, 1));
        let velocity = part(y, 2);
        let (omega, force) = self.source.inputs(t)?;

        let sigma_rate = bortz_rate(&sigma, &omega)?;
        let velocity_rate = rodrigues(&sigma) * force;
        let inputs = match self.formulation {
            Formulation::ThrustVelocity => RateInputs::ThrustVelocity {
                omega,
                thrust_velocity: rodrigues(&-sigma) * velocity,
            },
            Formulation::Vtv | Formulation::SavagePtv => RateInputs::Vtv {
                omega,
                sv: vtv_from_interval_thrust_velocity(&sigma, &velocity)?,
            },
            Formulation::AttitudeOnly => RateInputs::ThrustVelocity {
                omega,
                thrust_velocity: Vec3::zeros(),
            },
        };
        let translation_rate = self
            .formulation
            .translation_rate(&sigma, &translation, &inputs)?;
        Ok(pack(&sigma_rate, &translation_rate, &velocity_rate))
    }

    fn state(&self, t: f64, y: &Packed) -> Result<KinematicState> {
        let sigma = RotationVector::new(part(y, 0));
        let velocity = part(y, 2);
        let (sp, zeta) = match self.formulation {
            Formulation::SavagePtv => {
                let zeta = TranslationVector::savage_ptv(part(y, 1));
                (savage_to_new_ptv(&sigma, &zeta)?, zeta)
            }
            _ => {
                let sp = TranslationVector::new_ptv(part(y, 1));
                (sp, new_ptv_to_savage(&sigma, &sp)?)
            }
        };
        Ok(KinematicState {
            t,
            sigma,
            sp,
            zeta,
            velocity,
        })
    }
}

/// Classical fixed-step RK4 over `[t0, t1]`, starting from zero rotation and
/// zero translation.
///
/// Returns every step (`steps + 1` states). If the rotation vector leaves the
/// domain, the error carries the last state that was inside it.
pub fn rk4_integrate(
    formulation: Formulation,
    source: &dyn InputSource,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::InvalidArgument(format!("bad interval [{t0}, {t1}]")));
    }
    let h = (t1 - t0) / steps as f64;
    if let Some(dt) = source.sample_interval() {
        if h < 2.0 * dt * (1.0 - 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "step {h} s is finer than twice the input sample interval {dt} s"
            )));
        }
    }

    let system = System {
        formulation,
        source,
    };
    let mut y = Packed::zeros();
    let mut states = Vec::with_capacity(steps + 1);
    states.push(KinematicState::initial(t0));

    for k in 0..steps {
        let t = t0 + h * k as f64;
        let step = || -> Result<Packed> {
            let k1 = system.rate(t, &y)?;
            let k2 = system.rate(t + 0.5 * h, &(y + k1 * (0.5 * h)))?;
            let k3 = system.rate(t + 0.5 * h, &(y + k2 * (0.5 * h)))?;
            let k4 = system.rate(t + h, &(y + k3 * h))?;
            Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
        };
        let next = step().and_then(|next| {
            let t_next = if k + 1 == steps {
                t1
            } else {
                t0 + h * (k + 1) as f64
            };
            system.state(t_next, &next).map(|s| (next, s))
        });
        match next {
            Ok((next, state)) => {
                y = next;
                states.push(state);
            }
            Err(Error::Domain { .. }) => {
                return Err(Error::IntegrationDomain {
                    t,
                    last: Box::new(*states.last().expect("initial state present")),
                })
            }
            Err(e) => return Err(e),
        }
    }

    Ok(Trajectory {
        formulation,
        states,
    })
}
