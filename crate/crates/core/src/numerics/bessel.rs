//! Bessel functions of the first kind, orders zero and one, for real arguments.
//!
//! `j0` is the Cephes scheme: a rational approximation in `x^2` with the two
//! leading zeros factored out on `[0, 5]`, and the Hankel asymptotic form with
//! rational modulus/phase corrections beyond.  `j1` is the fdlibm scheme with
//! breakpoint 2.

/*
 * Coefficients for j1 are from fdlibm:
 * Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
 *
 * Developed at SunSoft, a Sun Microsystems, Inc. business.
 * Permission to use, copy, modify, and distribute this
 * software is freely granted, provided that this notice
 * is preserved.
 */

use std::f64::consts::PI;

const DR1: f64 = 5.783185962946784;
const DR2: f64 = 30.471262343662087;

const RP: [f64; 4] = [
    -4.794432209782018e9,
    1.9561749194655657e12,
    -2.4924834436096772e14,
    9.708622510473064e15,
];
const RQ: [f64; 8] = [
    4.99563147152651e2,
    1.737854016763747e5,
    4.844096583399621e7,
    1.1185553704535683e10,
    2.112775201154892e12,
    3.1051822985742256e14,
    3.1812195594320496e16,
    1.7108629408104315e18,
];
const PP: [f64; 7] = [
    7.969367292973471e-4,
    8.283523921074408e-2,
    1.239533716464143,
    5.447250030587687,
    8.74716500199817,
    5.303240382353949,
    1.0,
];
const PQ: [f64; 7] = [
    9.244088105588637e-4,
    8.562884743544745e-2,
    1.2535274390105895,
    5.470977403304171,
    8.761908832370695,
    5.306052882353947,
    1.0,
];
const QP: [f64; 8] = [
    -1.1366383889846916e-2,
    -1.2825271867050931,
    -1.9553954425773597e1,
    -9.320601521237683e1,
    -1.7768116798048806e2,
    -1.4707750515495118e2,
    -5.141053267665993e1,
    -6.050143506007285,
];
const QQ: [f64; 7] = [
    6.43178256118178e1,
    8.564300259769806e2,
    3.8824018360540163e3,
    7.240467741956525e3,
    5.930727011873169e3,
    2.0620933166032783e3,
    2.420057402402914e2,
];

fn poly(x: f64, c: &[f64]) -> f64 {
    c.iter().fold(0.0, |acc, &v| acc * x + v)
}

// Same as `poly` with an implicit leading coefficient of one.
fn poly1(x: f64, c: &[f64]) -> f64 {
    c.iter().fold(1.0, |acc, &v| acc * x + v)
}

/// J₀(x).
pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 5.0 {
        let z = x * x;
        if x < 1e-5 {
            return 1.0 - z / 4.0;
        }
        let p = (z - DR1) * (z - DR2);
        return p * poly(z, &RP) / poly1(z, &RQ);
    }
    let w = 5.0 / x;
    let z = 25.0 / (x * x);
    let p = poly(z, &PP) / poly(z, &PQ);
    let q = poly(z, &QP) / poly1(z, &QQ);
    // cos(x − π/4) and sin(x − π/4) from sin x ± cos x, avoiding the rounding
    // of x − π/4 at large x and cancellation near the zeros.
    let (s, c) = x.sin_cos();
    let mut cc = s + c;
    let mut ss = s - c;
    let z = -(2.0 * x).cos();
    if s * c < 0.0 {
        cc = z / ss;
    } else {
        ss = z / cc;
    }
    let p = p * cc - w * q * ss;
    p / PI.sqrt() / x.sqrt()
}

const INVSQRTPI: f64 = 5.641_895_835_477_562_8e-1;

const R00: f64 = -6.25000000000000000000e-02;
const R01: f64 = 1.40705666955189706048e-03;
const R02: f64 = -1.59955631084035597520e-05;
const R03: f64 = 4.96727999609584448412e-08;
const S01: f64 = 1.91537599538363460805e-02;
const S02: f64 = 1.85946785588630915560e-04;
const S03: f64 = 1.17718464042623683263e-06;
const S04: f64 = 5.04636257076217042715e-09;
const S05: f64 = 1.23542274426137913908e-11;

const PR8: [f64; 6] = [
    0.0,
    1.17187499999988647970e-01,
    1.32394806593073575129e+01,
    4.12051854307378562225e+02,
    3.87474538913960532227e+03,
    7.91447954031891731574e+03,
];
const PS8: [f64; 5] = [
    1.14207370375678408436e+02,
    3.65093083420853463394e+03,
    3.69562060269033463555e+04,
    9.76027935934950801311e+04,
    3.08042720627888811578e+04,
];
const PR5: [f64; 6] = [
    1.31990519556243522749e-11,
    1.17187493190614097638e-01,
    6.80275127868432871736e+00,
    1.08308182990189109773e+02,
    5.17636139533199752805e+02,
    5.28715201363337541807e+02,
];
const PS5: [f64; 5] = [
    5.92805987221131331921e+01,
    9.91401418733614377743e+02,
    5.35326695291487976647e+03,
    7.84469031749551231769e+03,
    1.50404688810361062679e+03,
];
const PR3: [f64; 6] = [
    3.02503916137373618024e-09,
    1.17186865567253592491e-01,
    3.93297750033315640650e+00,
    3.51194035591636932736e+01,
    9.10550110750781271918e+01,
    4.85590685197364919645e+01,
];
const PS3: [f64; 5] = [
    3.47913095001251519989e+01,
    3.36762458747825746741e+02,
    1.04687139975775130551e+03,
    8.90811346398256432622e+02,
    1.03787932439639277504e+02,
];
const PR2: [f64; 6] = [
    1.07710830106873743082e-07,
    1.17176219462683348094e-01,
    2.36851496667608785174e+00,
    1.22426109148261232917e+01,
    1.76939711271687727390e+01,
    5.07352312588818499250e+00,
];
const PS2: [f64; 5] = [
    2.14364859363821409488e+01,
    1.25290227168402751090e+02,
    2.32276469057162813669e+02,
    1.17679373287147100768e+02,
    8.36463893371618283368e+00,
];

const QR8: [f64; 6] = [
    0.0,
    -1.02539062499992714161e-01,
    -1.62717534544589987888e+01,
    -7.59601722513950107896e+02,
    -1.18498066702429587167e+04,
    -4.84385124285750353010e+04,
];
const QS8: [f64; 6] = [
    1.61395369700722909556e+02,
    7.82538599923348465381e+03,
    1.33875336287249578163e+05,
    7.19657723683240939863e+05,
    6.66601232617776375264e+05,
    -2.94490264303834643215e+05,
];
const QR5: [f64; 6] = [
    -2.08979931141764104297e-11,
    -1.02539050241375426231e-01,
    -8.05644828123936029840e+00,
    -1.83669607474888380239e+02,
    -1.37319376065508163265e+03,
    -2.61244440453215656817e+03,
];
const QS5: [f64; 6] = [
    8.12765501384335777857e+01,
    1.99179873460485964642e+03,
    1.74684851924908907677e+04,
    4.98514270910352279316e+04,
    2.79480751638918118260e+04,
    -4.71918354795128470869e+03,
];
const QR3: [f64; 6] = [
    -5.07831226461766561369e-09,
    -1.02537829820837089745e-01,
    -4.61011581139473403113e+00,
    -5.78472216562783643212e+01,
    -2.28244540737631695038e+02,
    -2.19210128478909325622e+02,
];
const QS3: [f64; 6] = [
    4.76651550323729509273e+01,
    6.73865112676699709482e+02,
    3.38015286679526343505e+03,
    5.54772909720722782367e+03,
    1.90311919338810798763e+03,
    -1.35201191444307340817e+02,
];
const QR2: [f64; 6] = [
    -1.78381727510958865572e-07,
    -1.02517042607985553460e-01,
    -2.75220568278187460720e+00,
    -1.96636162643703720221e+01,
    -4.23253133372830490089e+01,
    -2.13719211703704061733e+01,
];
const QS2: [f64; 6] = [
    2.95333629060523854548e+01,
    2.52981549982190529136e+02,
    7.57502834868645436472e+02,
    7.39393205320467245656e+02,
    1.55949003336666123687e+02,
    -4.95949898822628210127e+00,
];

fn ascending(z: f64, c: &[f64]) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * z + v)
}

fn ascending1(z: f64, c: &[f64]) -> f64 {
    1.0 + z * ascending(z, c)
}

fn pone(x: f64) -> f64 {
    let (p, q): (&[f64; 6], &[f64; 5]) = if x >= 8.0 {
        (&PR8, &PS8)
    } else if x >= 4.545_452 {
        (&PR5, &PS5)
    } else if x >= 2.857_141_971_588_134_8 {
        (&PR3, &PS3)
    } else {
        (&PR2, &PS2)
    };
    let z = 1.0 / (x * x);
    1.0 + ascending(z, p) / ascending1(z, q)
}

fn qone(x: f64) -> f64 {
    let (p, q): (&[f64; 6], &[f64; 6]) = if x >= 8.0 {
        (&QR8, &QS8)
    } else if x >= 4.545_452 {
        (&QR5, &QS5)
    } else if x >= 2.857_141_971_588_134_8 {
        (&QR3, &QS3)
    } else {
        (&QR2, &QS2)
    };
    let z = 1.0 / (x * x);
    (0.375 + ascending(z, p) / ascending1(z, q)) / x
}

/// J₁(x).
pub fn j1(x: f64) -> f64 {
    let sign = x < 0.0;
    let x = x.abs();
    if !x.is_finite() {
        return 0.0;
    }
    let out = if x >= 2.0 {
        // sqrt(2/(pi x)) (p1 cos(x - 3pi/4) - q1 sin(x - 3pi/4)), with the
        // sums sin(x) -+ cos(x) computed without cancellation.
        let s = x.sin();
        let c = x.cos();
        let mut ss = -s - c;
        let mut cc = s - c;
        if x < 8.9e307 {
            let z = (2.0 * x).cos();
            if s * c > 0.0 {
                cc = z / ss;
            } else {
                ss = z / cc;
            }
        }
        INVSQRTPI * (pone(x) * cc - qone(x) * ss) / x.sqrt()
    } else if x >= 1e-300 {
        let z = x * x;
        let r = z * (R00 + z * (R01 + z * (R02 + z * R03)));
        let s = 1.0 + z * (S01 + z * (S02 + z * (S03 + z * (S04 + z * S05))));
        (0.5 + r / s) * x
    } else {
        0.5 * x
    };
    if sign {
        -out
    } else {
        out
    }
}
