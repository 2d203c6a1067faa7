//! `ptv check`: randomized identity, equivalence and roundtrip suites plus
//! the coefficient branch-continuity check.

use ptv_core::coeffs::SERIES_BRANCH_ANGLE;
use ptv_core::transvec::{
    body_thrust_velocity, double_integral, new_ptv_to_savage, ptv_from_double_integral,
    savage_to_new_ptv, thrust_velocity_residuals, triple_product_residuals,
};
use ptv_core::{
    ptv_rate_thrust, ptv_rate_vtv, Coefficient, RotationVector, TranslationVector, Vec3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{ComparisonReport, IdentityResult};
use crate::CliError;

pub const IDENTITY_TOLERANCE: f64 = 1e-12;
pub const AXIAL_TOLERANCE: f64 = 1e-13;
pub const BRANCH_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub seed: u64,
    pub samples: usize,
    /// Replaces every default tolerance.
    pub tolerance: Option<f64>,
    /// Draw `σ = 0` for every sample.
    pub zero_rotation: bool,
}

const SAMPLE_CHECKS: [(&str, f64); 13] = [
    ("triple_product_1", IDENTITY_TOLERANCE),
    ("triple_product_2", IDENTITY_TOLERANCE),
    ("triple_product_3", IDENTITY_TOLERANCE),
    ("triple_product_4", IDENTITY_TOLERANCE),
    ("triple_product_5", IDENTITY_TOLERANCE),
    ("triple_product_6", IDENTITY_TOLERANCE),
    ("thrust_velocity_cross", IDENTITY_TOLERANCE),
    ("thrust_velocity_double_cross", IDENTITY_TOLERANCE),
    ("rate_equivalence", IDENTITY_TOLERANCE),
    ("roundtrip_double_integral", IDENTITY_TOLERANCE),
    ("roundtrip_savage", IDENTITY_TOLERANCE),
    ("axial_double_integral", AXIAL_TOLERANCE),
    ("axial_savage", AXIAL_TOLERANCE),
];

fn in_ball(rng: &mut ChaCha8Rng, radius: f64) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if v.norm_squared() <= 1.0 {
            return v * radius;
        }
    }
}

fn scaled(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

/// Residuals of every sample check for one draw, in `SAMPLE_CHECKS` order.
fn sample_residuals(s: Vec3, p: Vec3, v: Vec3, w: Vec3) -> Result<[f64; 13], CliError> {
    let mut r = [0.0; 13];
    r[..6].copy_from_slice(&triple_product_residuals(&s, &p, &w));
    let sigma = RotationVector::new(s);
    let sv = TranslationVector::vtv(v);
    let sp = TranslationVector::new_ptv(p);
    r[6..8].copy_from_slice(&thrust_velocity_residuals(&sigma, &sv)?);

    let dt = body_thrust_velocity(&sigma, &sv)?;
    let a = ptv_rate_thrust(&sigma, &sp, &w, &dt)?;
    let b = ptv_rate_vtv(&sigma, &sp, &w, &sv)?;
    r[8] = scaled((a - b).norm(), a.norm().max(b.norm()));

    let dint = double_integral(&sigma, &sp)?;
    let back = ptv_from_double_integral(&sigma, &dint)?;
    r[9] = scaled((back.value() - p).norm(), p.norm());
    let zeta = new_ptv_to_savage(&sigma, &sp)?;
    let back = savage_to_new_ptv(&sigma, &zeta)?;
    r[10] = scaled((back.value() - p).norm(), p.norm());

    if sigma.angle() > 0.0 {
        let axis = s / sigma.angle();
        r[11] = scaled(axis.dot(&(dint - p)).abs(), p.norm());
        r[12] = scaled(axis.dot(&(zeta.value() - p)).abs(), p.norm());
    }
    Ok(r)
}

/// Runs the suites. Deterministic for a given seed: `σ` is drawn from the
/// ball of radius 3, `σ'_p` and `σ'_v` from radius 10, `ω` from radius 5.
pub fn check(opts: &CheckOptions) -> Result<ComparisonReport, CliError> {
    if opts.samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    if let Some(t) = opts.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Usage(format!("bad tolerance {t}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = [0.0f64; 13];
    for _ in 0..opts.samples {
        let s = in_ball(&mut rng, 3.0);
        let s = if opts.zero_rotation { Vec3::zeros() } else { s };
        let p = in_ball(&mut rng, 10.0);
        let v = in_ball(&mut rng, 10.0);
        let w = in_ball(&mut rng, 5.0);
        for (m, r) in worst.iter_mut().zip(sample_residuals(s, p, v, w)?) {
            *m = m.max(r);
        }
    }

    let mut report = ComparisonReport::new("check");
    let mut push = |name: String, max: f64, default: f64| {
        let tolerance = opts.tolerance.unwrap_or(default);
        report.identities.push(IdentityResult {
            name: name.clone(),
            max_residual: max,
            tolerance,
            passed: max <= tolerance,
        });
        report.require(name, max, tolerance);
    };
    for ((name, tol), max) in SAMPLE_CHECKS.iter().zip(worst) {
        push(name.to_string(), max, *tol);
    }
    let below = SERIES_BRANCH_ANGLE - f64::EPSILON / 2.0;
    for c in Coefficient::ALL {
        let d = (c.eval(below)? - c.eval(SERIES_BRANCH_ANGLE)?).abs();
        push(format!("branch_{}", c.name()), d, BRANCH_TOLERANCE);
    }
    Ok(report)
}

/// Whether a result belongs to the per-sample suites (as opposed to the
/// coefficient branch checks).
pub fn is_sample_check(name: &str) -> bool {
    SAMPLE_CHECKS.iter().any(|(n, _)| *n == name)
}
