use proptest::prelude::*;
use ptv_core::oracle::AxisSignal;
use ptv_core::transvec::{double_integral, new_ptv_to_savage};
use ptv_core::{
    bortz_rate, generate_ground_truth, ptv_rate_vtv, rk4_integrate, savage_rate_vtv, Formulation,
    MotionProfile, ProfileKind, RotationVector, TranslationVector, Vec3,
};

fn axis(poly: &[f64], amplitude: f64, frequency: f64, phase: f64) -> AxisSignal {
    AxisSignal {
        poly: poly.to_vec(),
        amplitude,
        frequency,
        phase,
    }
}

fn poly_sinusoid() -> MotionProfile {
    MotionProfile::new(
        ProfileKind::PolySinusoid {
            omega: [
                axis(&[0.1, 0.2], 0.3, 5.0, 0.0),
                axis(&[-0.2], 0.4, 3.0, 1.0),
                axis(&[0.3, 0.0, -0.1], 0.2, 7.0, 0.5),
            ],
            specific_force: [
                axis(&[0.5], 1.0, 2.0, 0.0),
                axis(&[0.0, 1.0], 0.5, 4.0, 0.3),
                axis(&[9.8], 0.2, 6.0, 0.0),
            ],
        },
        1.0,
    )
    .unwrap()
}

fn profiles() -> Vec<(&'static str, MotionProfile)> {
    vec![
        (
            "constant",
            MotionProfile::constant(Vec3::new(0.3, -0.2, 1.0), Vec3::new(1.0, 0.5, 9.8), 1.0)
                .unwrap(),
        ),
        ("coning", MotionProfile::default_coning(1.0).unwrap()),
        (
            "fast coning",
            MotionProfile::coning(0.4, 12.0, Vec3::new(0.0, 1.0, 9.8), 3.0, 1.0).unwrap(),
        ),
        ("poly-sinusoid", poly_sinusoid()),
    ]
}

fn rel(a: &Vec3, b: &Vec3) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn formulations_agree_on_bundled_profiles() {
    for (name, p) in profiles() {
        let thrust = rk4_integrate(Formulation::ThrustVelocity, &p, 0.0, 1.0, 2000).unwrap();
        let vtv = rk4_integrate(Formulation::Vtv, &p, 0.0, 1.0, 2000).unwrap();
        let savage = rk4_integrate(Formulation::SavagePtv, &p, 0.0, 1.0, 2000).unwrap();
        let (a, b) = (thrust.terminal(), vtv.terminal());
        assert!((a.sp.value() - b.sp.value()).norm() < 1e-11, "{name}");
        for (s, v) in savage.states.iter().zip(&vtv.states).skip(1) {
            let mapped = new_ptv_to_savage(&v.sigma, &v.sp).unwrap();
            assert!(
                rel(s.zeta.value(), mapped.value()) < 1e-9,
                "{name} at t = {}",
                s.t
            );
            assert!(
                (s.sigma.vector() - v.sigma.vector()).norm() < 1e-14,
                "{name}"
            );
        }
    }
}

#[test]
fn integrated_ptv_reproduces_oracle_on_bundled_profiles() {
    for (name, p) in profiles() {
        let truth = generate_ground_truth(&p, 20, 256).unwrap();
        let run = rk4_integrate(Formulation::Vtv, &p, 0.0, 1.0, 4000).unwrap();
        for sample in &truth.samples[1..] {
            let k = (sample.t * 4000.0).round() as usize;
            let s = &run.states[k];
            let dint = double_integral(&s.sigma, &s.sp).unwrap();
            assert!(
                rel(&dint, &sample.double_integral) < 1e-9,
                "{name} at {}",
                sample.t
            );
            assert!(
                rel(s.sp.value(), sample.sp.value()) < 1e-9,
                "{name} at {}",
                sample.t
            );
        }
    }
}

#[test]
fn attitude_matches_quaternion_oracle() {
    for (name, p) in profiles() {
        let truth = generate_ground_truth(&p, 50, 64).unwrap();
        let run = rk4_integrate(Formulation::AttitudeOnly, &p, 0.0, 1.0, 1000).unwrap();
        for sample in &truth.samples {
            let k = (sample.t * 1000.0).round() as usize;
            let d = (run.states[k].sigma.vector() - sample.sigma.vector()).norm();
            assert!(d < 1e-9, "{name} at {}: {d:e}", sample.t);
        }
    }
}

#[test]
fn zero_rotation_reduces_to_double_integral() {
    let p = MotionProfile::new(
        ProfileKind::PolySinusoid {
            omega: Default::default(),
            specific_force: [
                axis(&[1.0, 2.0], 0.0, 0.0, 0.0),
                axis(&[0.0, 0.0, 3.0], 0.0, 0.0, 0.0),
                axis(&[-1.0], 0.0, 0.0, 0.0),
            ],
        },
        1.0,
    )
    .unwrap();
    // ∫∫ of 1 + 2t, 3t², −1 over [0, 1].
    let expected = Vec3::new(0.5 + 1.0 / 3.0, 0.25, -0.5);
    for f in [
        Formulation::ThrustVelocity,
        Formulation::Vtv,
        Formulation::SavagePtv,
    ] {
        let s = *rk4_integrate(f, &p, 0.0, 1.0, 100).unwrap().terminal();
        assert_eq!(s.sigma.angle(), 0.0);
        assert!((s.sp.value() - expected).norm() < 1e-14, "{}", f.name());
        assert!((s.zeta.value() - expected).norm() < 1e-14, "{}", f.name());
    }
}

fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
    prop::array::uniform3(-r..r).prop_map(Vec3::from)
}

proptest! {
    // ζ = W(σ)σ'_p, so its rate must equal the derivative of that product
    // when σ and σ'_p move along their own rate equations.
    #[test]
    fn savage_rate_is_derivative_of_mapped_ptv(
        s in vec3(1.5), p in vec3(5.0), w in vec3(3.0), v in vec3(5.0),
    ) {
        let sigma = RotationVector::new(s);
        let sp = TranslationVector::new_ptv(p);
        let sv = TranslationVector::vtv(v);
        let sdot = bortz_rate(&sigma, &w).unwrap();
        let pdot = ptv_rate_vtv(&sigma, &sp, &w, &sv).unwrap();
        let zeta_at = |e: f64| {
            let sig = RotationVector::new(s + sdot * e);
            *new_ptv_to_savage(&sig, &TranslationVector::new_ptv(p + pdot * e)).unwrap().value()
        };
        let h = 1e-5;
        let fd = (zeta_at(h) - zeta_at(-h)) / (2.0 * h);
        let zeta = new_ptv_to_savage(&sigma, &sp).unwrap();
        let rate = savage_rate_vtv(&sigma, &zeta, &w, &sv).unwrap();
        prop_assert!((fd - rate).norm() < 1e-7 * (1.0 + rate.norm()), "{} vs {}", fd, rate);
    }
}
