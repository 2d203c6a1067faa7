//! Scalar coefficient functions of the rotation angle.
//!
//! Every coefficient here has a removable singularity at `σ = 0`. The closed
//! forms cancel catastrophically well before that (the `w4` quotient is
//! `O(σ⁹)/O(σ⁹)` with `O(σ)` terms), so each one is evaluated from a Taylor
//! series in `σ²` below [`SERIES_BRANCH_ANGLE`] and from its closed form above.
//! Series tables come from `tests/oracle/coeff_reference.py`; twelve terms
//! leave a truncation error below `1e-20` at the branch point, where every
//! closed form is accurate to a few ulps.
//!
//! | name | closed form | limit at 0 |
//! |------|-------------|------------|
//! | `f5` | `(1/σ²)(1 − σ sin σ / (2(1 − cos σ)))` | 1/12 |
//! | `w1` | `(2 − 2cos σ − σ sin σ) / (2D)` | 1/6 |
//! | `w2` | `(σ cos(σ/2) − 2 sin(σ/2))² / (σ² D)` | 1/36 |
//! | `w3` | `(sin σ + σ) / (2σ³(1 − cos σ)) − 2/σ⁴` = `f5′/σ` | 1/360 |
//! | `w4` | `w1′/σ` | −1/270 |
//! | `w5` | `w2′/σ` | 1/3240 |
//! | `a1` | `(1 − cos σ)/σ²` | 1/2 |
//! | `a2` | `(1 − sin σ/σ)/σ²` | 1/6 |
//! | `b1` | `sin σ/σ` | 1 |
//!
//! with `D = 2 + σ² − 2cos σ − 2σ sin σ`.
//!
//! `f5` is the rotation-vector (Bortz) coefficient. Some texts number the same
//! expression `f3`; there is only one function here.

use crate::error::Result;
use crate::rotkin::{check_angle, RotationVector, Vec3};

/// Angles strictly below this use the series branch.
pub const SERIES_BRANCH_ANGLE: f64 = 1.0;

const F5_SERIES: [f64; 12] = [
    0.08333333333333333,
    0.001388888888888889,
    3.306878306878307e-05,
    8.267195767195768e-07,
    2.08767569878681e-08,
    5.284190138687493e-10,
    1.3382536530684679e-11,
    3.3896802963225827e-13,
    8.586062056277845e-15,
    2.174868698558062e-16,
    5.5090028283602295e-18,
    1.3954464685812522e-19,
];
const W1_SERIES: [f64; 12] = [
    0.16666666666666666,
    -0.001851851851851852,
    -3.6743092298647854e-05,
    -5.715592135345222e-07,
    -6.330038908914081e-09,
    -2.3124016091116053e-11,
    1.0900442714940601e-12,
    3.7413277694289646e-14,
    7.626177610688812e-16,
    1.133202748093661e-17,
    1.11053025398956e-19,
    1.7860780548681027e-23,
];
const W2_SERIES: [f64; 12] = [
    0.027777777777777776,
    0.00015432098765432098,
    -2.449539486576524e-07,
    -4.422779628540946e-08,
    -1.1757750261244938e-09,
    -2.117309769489678e-11,
    -2.766662482886862e-13,
    -2.003962992900888e-15,
    1.9692561808719445e-17,
    1.116566296738757e-18,
    2.6325646412119828e-20,
    4.3973273191501765e-22,
];
const W3_SERIES: [f64; 12] = [
    0.002777777777777778,
    0.00013227513227513228,
    4.96031746031746e-06,
    1.670140559029448e-07,
    5.2841901386874934e-09,
    1.6059043836821613e-10,
    4.745552414851616e-12,
    1.3737699290044552e-13,
    3.914763657404511e-15,
    1.1018005656720459e-16,
    3.069982230878755e-18,
    8.483296895110721e-20,
];
const W4_SERIES: [f64; 12] = [
    -0.003703703703703704,
    -0.00014697236919459142,
    -3.429355281207133e-06,
    -5.0640311271312646e-08,
    -2.3124016091116055e-10,
    1.3080531257928721e-11,
    5.237858877200551e-13,
    1.22018841771021e-14,
    2.0397649465685897e-16,
    2.2210605079791198e-18,
    3.929371720709826e-22,
    -7.272332460221209e-22,
];
const W5_SERIES: [f64; 12] = [
    0.00030864197530864197,
    -9.798157946306095e-07,
    -2.6536677771245673e-07,
    -9.40620020899595e-09,
    -2.117309769489678e-10,
    -3.319994979464234e-12,
    -2.805548190061243e-14,
    3.150809889395111e-16,
    2.0098193341297625e-17,
    5.265129282423966e-19,
    9.674120102130389e-21,
    1.2517983946388117e-22,
];
const A1_SERIES: [f64; 12] = [
    0.5,
    -0.041666666666666664,
    0.001388888888888889,
    -2.48015873015873e-05,
    2.755731922398589e-07,
    -2.08767569878681e-09,
    1.1470745597729725e-11,
    -4.779477332387385e-14,
    1.5619206968586225e-16,
    -4.110317623312165e-19,
    8.896791392450574e-22,
    -1.6117375710961184e-24,
];
const A2_SERIES: [f64; 12] = [
    0.16666666666666666,
    -0.008333333333333333,
    0.0001984126984126984,
    -2.7557319223985893e-06,
    2.505210838544172e-08,
    -1.6059043836821613e-10,
    7.647163731819816e-13,
    -2.8114572543455206e-15,
    8.22063524662433e-18,
    -1.9572941063391263e-20,
    3.868170170630684e-23,
    -6.446950284384474e-26,
];
const B1_SERIES: [f64; 12] = [
    1.0,
    -0.16666666666666666,
    0.008333333333333333,
    -0.0001984126984126984,
    2.7557319223985893e-06,
    -2.505210838544172e-08,
    1.6059043836821613e-10,
    -7.647163731819816e-13,
    2.8114572543455206e-15,
    -8.22063524662433e-18,
    1.9572941063391263e-20,
    -3.868170170630684e-23,
];

fn horner(c: &[f64; 12], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * u + k)
}

/// One of the nine scalar coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    F5,
    W1,
    W2,
    W3,
    W4,
    W5,
    A1,
    A2,
    B1,
}

impl Coefficient {
    pub const ALL: [Coefficient; 9] = [
        Coefficient::F5,
        Coefficient::W1,
        Coefficient::W2,
        Coefficient::W3,
        Coefficient::W4,
        Coefficient::W5,
        Coefficient::A1,
        Coefficient::A2,
        Coefficient::B1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Coefficient::F5 => "f5",
            Coefficient::W1 => "w1",
            Coefficient::W2 => "w2",
            Coefficient::W3 => "w3",
            Coefficient::W4 => "w4",
            Coefficient::W5 => "w5",
            Coefficient::A1 => "a1",
            Coefficient::A2 => "a2",
            Coefficient::B1 => "b1",
        }
    }

    fn table(self) -> &'static [f64; 12] {
        match self {
            Coefficient::F5 => &F5_SERIES,
            Coefficient::W1 => &W1_SERIES,
            Coefficient::W2 => &W2_SERIES,
            Coefficient::W3 => &W3_SERIES,
            Coefficient::W4 => &W4_SERIES,
            Coefficient::W5 => &W5_SERIES,
            Coefficient::A1 => &A1_SERIES,
            Coefficient::A2 => &A2_SERIES,
            Coefficient::B1 => &B1_SERIES,
        }
    }

    /// Value at `σ = 0`.
    pub fn limit(self) -> f64 {
        self.table()[0]
    }

    /// Taylor branch. Accurate for `σ ≤ SERIES_BRANCH_ANGLE`.
    pub fn series(self, angle: f64) -> f64 {
        horner(self.table(), angle * angle)
    }

    /// Closed form as written. Loses precision as `σ → 0`.
    pub fn closed_form(self, s: f64) -> f64 {
        let (sin, cos) = s.sin_cos();
        let (sin_h, cos_h) = (0.5 * s).sin_cos();
        let s2 = s * s;
        let d = 2.0 + s2 - 2.0 * cos - 2.0 * s * sin;
        match self {
            Coefficient::F5 => (1.0 - s * sin / (2.0 * (1.0 - cos))) / s2,
            Coefficient::W1 => (2.0 - 2.0 * cos - s * sin) / (2.0 * d),
            Coefficient::W2 => {
                let g = s * cos_h - 2.0 * sin_h;
                g * g / (s2 * d)
            }
            Coefficient::W3 => (sin + s) / (2.0 * s * s2 * (1.0 - cos)) - 2.0 / (s2 * s2),
            Coefficient::W4 => {
                let num = -6.0 * s + (2.0 + 3.0 * s2) * sin - (s2 * s + 2.0 * sin - 6.0 * s) * cos;
                num / (2.0 * s * d * d)
            }
            Coefficient::W5 => {
                let g = s * cos_h - 2.0 * sin_h;
                let (sin_3h, cos_3h) = (1.5 * s).sin_cos();
                let bracket = -2.0 * s * (3.0 + s2) * cos_h
                    + 6.0 * s * cos_3h
                    + 12.0 * sin_h
                    + 9.0 * s2 * sin_h
                    - s2 * s2 * sin_h
                    - 4.0 * sin_3h
                    + s2 * sin_3h;
                g * bracket / (s2 * s2 * d * d)
            }
            Coefficient::A1 => (1.0 - cos) / s2,
            Coefficient::A2 => (1.0 - sin / s) / s2,
            Coefficient::B1 => sin / s,
        }
    }

    /// Branch-selected value without a domain check.
    pub(crate) fn value(self, angle: f64) -> f64 {
        if angle < SERIES_BRANCH_ANGLE {
            self.series(angle)
        } else {
            self.closed_form(angle)
        }
    }

    /// Value at `angle`, rejecting angles outside `[0, MAX_ANGLE)`.
    pub fn eval(self, angle: f64) -> Result<f64> {
        Ok(self.value(check_angle(angle)?))
    }
}

/// All coefficients at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSet {
    pub f5: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
    pub w5: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
}

impl CoeffSet {
    pub fn at(angle: f64) -> Result<Self> {
        let s = check_angle(angle)?;
        Ok(Self {
            f5: Coefficient::F5.value(s),
            w1: Coefficient::W1.value(s),
            w2: Coefficient::W2.value(s),
            w3: Coefficient::W3.value(s),
            w4: Coefficient::W4.value(s),
            w5: Coefficient::W5.value(s),
            a1: Coefficient::A1.value(s),
            a2: Coefficient::A2.value(s),
            b1: Coefficient::B1.value(s),
        })
    }

    pub fn get(&self, c: Coefficient) -> f64 {
        match c {
            Coefficient::F5 => self.f5,
            Coefficient::W1 => self.w1,
            Coefficient::W2 => self.w2,
            Coefficient::W3 => self.w3,
            Coefficient::W4 => self.w4,
            Coefficient::W5 => self.w5,
            Coefficient::A1 => self.a1,
            Coefficient::A2 => self.a2,
            Coefficient::B1 => self.b1,
        }
    }
}

/// Rotation-vector rate coefficient.
pub fn f5(angle: f64) -> Result<f64> {
    Coefficient::F5.eval(angle)
}

/// Coefficients `(w1, w2)` of the new-PTV to Savage-PTV map.
pub fn w12(angle: f64) -> Result<(f64, f64)> {
    let s = check_angle(angle)?;
    Ok((Coefficient::W1.value(s), Coefficient::W2.value(s)))
}

/// `(w3, w4, w5)`: angle-derivatives of `f5`, `w1`, `w2`, each divided by `σ`.
pub fn w345(angle: f64) -> Result<(f64, f64, f64)> {
    let s = check_angle(angle)?;
    Ok((
        Coefficient::W3.value(s),
        Coefficient::W4.value(s),
        Coefficient::W5.value(s),
    ))
}

/// `(a1, a2, b1)` of the thrust-velocity and double-integral maps.
pub fn matrix_coeffs(angle: f64) -> Result<(f64, f64, f64)> {
    let s = check_angle(angle)?;
    Ok((
        Coefficient::A1.value(s),
        Coefficient::A2.value(s),
        Coefficient::B1.value(s),
    ))
}

/// Time derivatives `(ẇ1, ẇ2) = (σ·ω)(w4, w5)` along rotation-vector kinematics.
///
/// Follows from `d|σ|/dt = σ·σ̇/|σ| = σ·ω/|σ|`.
pub fn w12_rates(sigma: &RotationVector, omega: &Vec3) -> Result<(f64, f64)> {
    let (_, w4, w5) = w345(sigma.checked_angle()?)?;
    let sw = sigma.vector().dot(omega);
    Ok((sw * w4, sw * w5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rotkin::MAX_ANGLE;
    use std::f64::consts::PI;

    #[test]
    fn limits_are_the_known_fractions() {
        let expected = [
            (Coefficient::F5, 1.0 / 12.0),
            (Coefficient::W1, 1.0 / 6.0),
            (Coefficient::W2, 1.0 / 36.0),
            (Coefficient::W3, 1.0 / 360.0),
            (Coefficient::W4, -1.0 / 270.0),
            (Coefficient::W5, 1.0 / 3240.0),
            (Coefficient::A1, 0.5),
            (Coefficient::A2, 1.0 / 6.0),
            (Coefficient::B1, 1.0),
        ];
        for (c, v) in expected {
            assert!((c.eval(0.0).unwrap() - v).abs() < 1e-17, "{}", c.name());
        }
    }

    #[test]
    fn f5_quarter_turn() {
        let expected = 4.0 / (PI * PI) * (1.0 - PI / 4.0);
        assert!((f5(PI / 2.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.086975).abs() < 1e-6);
    }

    #[test]
    fn values_near_half_turn() {
        let s = PI - 2e-6;
        let (w1, w2) = w12(s).unwrap();
        let denom = 4.0 + PI * PI;
        assert!((w1 - 4.0 / (2.0 * denom)).abs() < 1e-5);
        assert!((w2 - 4.0 / (PI * PI * denom)).abs() < 1e-5);
        assert!((w1 - 0.144199).abs() < 1e-5);
        assert!((w2 - 0.029220).abs() < 1e-5);

        let (w3, _, _) = w345(s).unwrap();
        let expected = 1.0 / (4.0 * PI * PI) - 2.0 / PI.powi(4);
        assert!((w3 - expected).abs() < 1e-5);
        assert!((w3 - 0.004798).abs() < 1e-6);

        let (a1, a2, b1) = matrix_coeffs(s).unwrap();
        assert!((a1 - 2.0 / (PI * PI)).abs() < 1e-5);
        assert!((a2 - 1.0 / (PI * PI)).abs() < 1e-5);
        assert!(b1.abs() < 1e-5);
    }

    #[test]
    fn domain_is_enforced() {
        for bad in [-1e-12, MAX_ANGLE, PI, f64::NAN, f64::INFINITY] {
            assert!(matches!(f5(bad), Err(Error::Domain { .. })), "{bad}");
            assert!(w12(bad).is_err());
            assert!(w345(bad).is_err());
            assert!(matrix_coeffs(bad).is_err());
        }
        assert!(CoeffSet::at(MAX_ANGLE - 1e-9).is_ok());
    }

    #[test]
    fn branch_point_continuity() {
        for c in Coefficient::ALL {
            for s in [
                SERIES_BRANCH_ANGLE,
                SERIES_BRANCH_ANGLE * (1.0 + f64::EPSILON),
            ] {
                let gap = (c.closed_form(s) - c.series(s)).abs();
                assert!(gap < 1e-13, "{} gap {gap:e}", c.name());
            }
            let below = c.eval(SERIES_BRANCH_ANGLE - f64::EPSILON / 2.0).unwrap();
            let above = c.eval(SERIES_BRANCH_ANGLE).unwrap();
            assert!((below - above).abs() < 1e-13, "{}", c.name());
        }
    }

    #[test]
    fn finite_over_the_whole_domain() {
        let n = 100_000;
        let mut samples: Vec<f64> = (0..n).map(|i| MAX_ANGLE * i as f64 / n as f64).collect();
        samples.extend([
            f64::MIN_POSITIVE,
            5e-324,
            1e-300,
            1e-160,
            1e-20,
            MAX_ANGLE - 1e-15,
        ]);
        for s in samples {
            let set = CoeffSet::at(s).unwrap();
            for c in Coefficient::ALL {
                assert!(set.get(c).is_finite(), "{} at {s:e}", c.name());
            }
        }
    }

    #[test]
    fn w12_rates_vanish_for_orthogonal_rate() {
        let sigma = RotationVector::new(Vec3::new(0.0, 0.8, 0.0));
        let (d1, d2) = w12_rates(&sigma, &Vec3::new(1.0, 0.0, -2.0)).unwrap();
        assert_eq!((d1, d2), (0.0, 0.0));
    }

    #[test]
    fn w12_rates_small_angle_match_series_derivative() {
        // w1 = 1/6 - σ²/540 + …, w2 = 1/36 + σ²/6480 + …, so along σ = ω t
        // dw1/dt = -2σ|ω|/540 and dw2/dt = 2σ|ω|/6480 to leading order.
        let omega = Vec3::new(0.6, 0.0, 0.8);
        let sigma = RotationVector::new(omega * 1e-3);
        let s = sigma.angle();
        let (d1, d2) = w12_rates(&sigma, &omega).unwrap();
        assert!((d1 - (-2.0 * s / 540.0)).abs() < 1e-12);
        assert!((d2 - (2.0 * s / 6480.0)).abs() < 1e-12);
    }
}
