//! Coefficient values against high-precision references generated by
//! `tests/oracle/coeff_reference.py` (mpmath, 200 digits) and frozen here.

// 3.14159 is a grid point near π, not an approximation of it.
#![allow(clippy::approx_constant)]

use ptv_core::coeffs::SERIES_BRANCH_ANGLE;
use ptv_core::Coefficient;

const SIGMA_GRID: [f64; 14] = [
    1e-08, 0.0001, 0.001, 0.01, 0.1, 0.5, 0.999, 1.0, 1.001, 1.5, 2.0, 2.5, 3.0, 3.14159,
];
const F5_REF: [f64; 14] = [
    0.08333333333333333,
    0.08333333334722222,
    0.08333333472222225,
    0.08333347222255291,
    0.08334722552992746,
    0.0836826353540599,
    0.08475322555824442,
    0.08475613914377404,
    0.084759055929927,
    0.08663572826131866,
    0.08947684601641732,
    0.09354531654909429,
    0.09929197039400237,
    0.10132114364109518,
];
const F5_LIMIT: f64 = 0.08333333333333333; // 1/12
const W1_REF: [f64; 14] = [
    0.16666666666666666,
    0.16666666664814814,
    0.1666666648148148,
    0.16666648148111404,
    0.16664814447326728,
    0.1662013983050733,
    0.16478134588665078,
    0.16477749381126794,
    0.164773637573761,
    0.1623073142660197,
    0.1586331509547275,
    0.15350797618513576,
    0.14656504185764713,
    0.14420026573308797,
];
const W1_LIMIT: f64 = 0.16666666666666666; // 1/6
const W2_REF: [f64; 14] = [
    0.027777777777777776,
    0.027777777779320986,
    0.027777777932098766,
    0.027777793209874092,
    0.027779320963114685,
    0.027816342019396634,
    0.027931501151444812,
    0.027931808386460383,
    0.02793211592578386,
    0.028123224747150663,
    0.028387988042150473,
    0.028719904450098702,
    0.029105463593850436,
    0.029221071674852606,
];
const W2_LIMIT: f64 = 0.027777777777777776; // 1/36
const W3_REF: [f64; 14] = [
    0.002777777777777778,
    0.0027777777791005293,
    0.002777777910052915,
    0.0027777910053406085,
    0.002779101025299342,
    0.0028111592110818154,
    0.002914900418353846,
    0.002915185691236665,
    0.002915471293515016,
    0.003102556174055282,
    0.0033984714607326635,
    0.003848974304704996,
    0.0045393496978337645,
    0.004798326217545251,
];
const W3_LIMIT: f64 = 0.002777777777777778; // 1/360
const W4_REF: [f64; 14] = [
    -0.003703703703703704,
    -0.0037037037051734275,
    -0.0037037038506760765,
    -0.003703718400974917,
    -0.0037051737703818204,
    -0.00374066192285267,
    -0.00385384848669939,
    -0.0038541562861142092,
    -0.003854464422156949,
    -0.004052334570782634,
    -0.004349747288630274,
    -0.004768795385503364,
    -0.00534154803116827,
    -0.0055373479320766925,
];
const W4_LIMIT: f64 = -0.003703703703703704; // -1/270
const W5_REF: [f64; 14] = [
    0.00030864197530864197,
    0.0003086419752988438,
    0.0003086419743288259,
    0.00030864187732440883,
    0.0003086321506046096,
    0.0003083802881341759,
    0.0003073902480027516,
    0.0003073871714573982,
    0.00030738408947366574,
    0.00030498120654419745,
    0.00029981713578127616,
    0.0002894995640181634,
    0.00026987429900120414,
    0.00026173898085480837,
];
const W5_LIMIT: f64 = 0.00030864197530864197; // 1/3240
const A1_REF: [f64; 14] = [
    0.5,
    0.49999999958333335,
    0.4999999583333347,
    0.4999958333472222,
    0.4995834721974234,
    0.48966975243850913,
    0.45977558483250813,
    0.4596976941318603,
    0.4596197360357459,
    0.4130056881476876,
    0.3540367091367856,
    0.2881829784875094,
    0.2211102774000495,
    0.20264270961412292,
];
const A1_LIMIT: f64 = 0.5; // 1/2
const A2_REF: [f64; 14] = [
    0.16666666666666666,
    0.16666666658333334,
    0.16666665833333352,
    0.16666583333531745,
    0.1665833531718477,
    0.16459569116637598,
    0.15854489735930935,
    0.1585290151921035,
    0.1585131186579003,
    0.14889037433953942,
    0.1363378216467898,
    0.12169778277734679,
    0.10588444414593084,
    0.10132126922468036,
];
const A2_LIMIT: f64 = 0.16666666666666666; // 1/6
const B1_REF: [f64; 14] = [
    1.0,
    0.9999999983333333,
    0.9999998333333416,
    0.9999833334166665,
    0.9983341664682815,
    0.958851077208406,
    0.8417720338905119,
    0.8414709848078965,
    0.8411696965916653,
    0.6649966577360363,
    0.45464871341284085,
    0.2393888576415826,
    0.04704000268662241,
    8.446645785582238e-07,
];
const B1_LIMIT: f64 = 1.0; // 1

fn table(c: Coefficient) -> (&'static [f64; 14], f64) {
    match c {
        Coefficient::F5 => (&F5_REF, F5_LIMIT),
        Coefficient::W1 => (&W1_REF, W1_LIMIT),
        Coefficient::W2 => (&W2_REF, W2_LIMIT),
        Coefficient::W3 => (&W3_REF, W3_LIMIT),
        Coefficient::W4 => (&W4_REF, W4_LIMIT),
        Coefficient::W5 => (&W5_REF, W5_LIMIT),
        Coefficient::A1 => (&A1_REF, A1_LIMIT),
        Coefficient::A2 => (&A2_REF, A2_LIMIT),
        Coefficient::B1 => (&B1_REF, B1_LIMIT),
    }
}

#[test]
fn limits_match_reference() {
    for c in Coefficient::ALL {
        assert_eq!(c.eval(0.0).unwrap(), table(c).1, "{}", c.name());
    }
}

#[test]
fn grid_matches_reference() {
    for c in Coefficient::ALL {
        let (refs, _) = table(c);
        for (&s, &r) in SIGMA_GRID.iter().zip(refs) {
            let v = c.eval(s).unwrap();
            assert!((v - r).abs() <= 5e-15, "{} at {s}: {v} vs {r}", c.name());
        }
    }
}

// Small angles where the closed forms lose most of their digits.
#[test]
fn small_angle_sweep_uses_accurate_branch() {
    for c in Coefficient::ALL {
        let (refs, _) = table(c);
        for (&s, &r) in SIGMA_GRID.iter().zip(refs).take(4) {
            assert!(s < SERIES_BRANCH_ANGLE);
            assert!((c.series(s) - r).abs() < 1e-13, "{} at {s}", c.name());
        }
    }
}

#[test]
fn closed_forms_are_accurate_above_branch() {
    for c in Coefficient::ALL {
        let (refs, _) = table(c);
        for (&s, &r) in SIGMA_GRID.iter().zip(refs) {
            if s >= SERIES_BRANCH_ANGLE {
                assert!((c.closed_form(s) - r).abs() < 5e-15, "{} at {s}", c.name());
            }
        }
    }
}
