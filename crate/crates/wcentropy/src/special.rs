//! Special functions: double-precision error function and exact factorials.
//!
//! The erf implementation is the classic SunPro rational approximation
//! (FreeBSD msun `s_erf.c`, as ported to Go and several Rust numeric
//! crates), accurate to under 1 ulp across the real line. It is the only
//! special function the Gaussian weight-function antiderivative needs, so
//! it is vendored here rather than pulling in a wider special-function
//! dependency.

// constants carry the original implementation's full printed precision
#![allow(clippy::excessive_precision)]

const ERX: f64 = 8.45062911510467529297e-01;

// coefficients for approximation to erf in [0, 0.84375]
const EFX: f64 = 1.28379167095512586316e-01;
const EFX8: f64 = 1.02703333676410069053e+00;
const PP0: f64 = 1.28379167095512558561e-01;
const PP1: f64 = -3.25042107247001499370e-01;
const PP2: f64 = -2.84817495755985104766e-02;
const PP3: f64 = -5.77027029648944159157e-03;
const PP4: f64 = -2.37630166566501626084e-05;
const QQ1: f64 = 3.97917223959155352819e-01;
const QQ2: f64 = 6.50222499887672944485e-02;
const QQ3: f64 = 5.08130628187576562776e-03;
const QQ4: f64 = 1.32494738004321644526e-04;
const QQ5: f64 = -3.96022827877536812320e-06;

// coefficients for approximation to erf in [0.84375, 1.25]
const PA0: f64 = -2.36211856075265944077e-03;
const PA1: f64 = 4.14856118683748331666e-01;
const PA2: f64 = -3.72207876035701323847e-01;
const PA3: f64 = 3.18346619901161753674e-01;
const PA4: f64 = -1.10894694282396677476e-01;
const PA5: f64 = 3.54783043256182359371e-02;
const PA6: f64 = -2.16637559486879084300e-03;
const QA1: f64 = 1.06420880400844228286e-01;
const QA2: f64 = 5.40397917702171048937e-01;
const QA3: f64 = 7.18286544141962662868e-02;
const QA4: f64 = 1.26171219808761642112e-01;
const QA5: f64 = 1.36370839120290507362e-02;
const QA6: f64 = 1.19844998467991074170e-02;

// coefficients for approximation to erfc in [1.25, 1/0.35]
const RA0: f64 = -9.86494403484714822705e-03;
const RA1: f64 = -6.93858572707181764372e-01;
const RA2: f64 = -1.05586262253232909814e+01;
const RA3: f64 = -6.23753324503260060396e+01;
const RA4: f64 = -1.62396669462573470355e+02;
const RA5: f64 = -1.84605092906711035994e+02;
const RA6: f64 = -8.12874355063065934246e+01;
const RA7: f64 = -9.81432934416914548592e+00;
const SA1: f64 = 1.96512716674392571292e+01;
const SA2: f64 = 1.37657754143519042600e+02;
const SA3: f64 = 4.34565877475229228821e+02;
const SA4: f64 = 6.45387271733267880336e+02;
const SA5: f64 = 4.29008140027567833386e+02;
const SA6: f64 = 1.08635005541779435134e+02;
const SA7: f64 = 6.57024977031928170135e+00;
const SA8: f64 = -6.04244152148580987438e-02;

// coefficients for approximation to erfc in [1/0.35, 28]
const RB0: f64 = -9.86494292470009928597e-03;
const RB1: f64 = -7.99283237680523006574e-01;
const RB2: f64 = -1.77579549177547519889e+01;
const RB3: f64 = -1.60636384855821916062e+02;
const RB4: f64 = -6.37566443368389627722e+02;
const RB5: f64 = -1.02509513161107724954e+03;
const RB6: f64 = -4.83519191608651397019e+02;
const SB1: f64 = 3.03380607434824582924e+01;
const SB2: f64 = 3.25792512996573918826e+02;
const SB3: f64 = 1.53672958608443695994e+03;
const SB4: f64 = 3.19985821950859553908e+03;
const SB5: f64 = 2.55305040643316442583e+03;
const SB6: f64 = 4.74528541206955367215e+02;
const SB7: f64 = -2.24409524465858183362e+01;

const VERY_TINY: f64 = 2.848094538889218e-306; // 0x0080000000000000
const TINY: f64 = 1.0 / (1u64 << 56) as f64; // 2^-56
const SMALL: f64 = 1.0 / (1u64 << 28) as f64; // 2^-28

/// The error function erf(x) = (2/sqrt(pi)) * integral of exp(-t^2) over [0, x].
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return -1.0;
    }
    let sign = x < 0.0;
    let x = x.abs();

    if x < 0.84375 {
        let temp = if x < SMALL {
            if x < VERY_TINY {
                0.125 * (8.0 * x + EFX8 * x) // avoid underflow
            } else {
                x + EFX * x
            }
        } else {
            let z = x * x;
            let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
            let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
            x + x * (r / s)
        };
        return if sign { -temp } else { temp };
    }
    if x < 1.25 {
        let s = x - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if sign { -ERX - p / q } else { ERX + p / q };
    }
    if x >= 6.0 {
        return if sign { TINY - 1.0 } else { 1.0 - TINY };
    }

    let s = 1.0 / (x * x);
    let (r, sq) = if x < 1.0 / 0.35 {
        (
            RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
            1.0 + s
                * (SA1
                    + s * (SA2
                        + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
        )
    } else {
        (
            RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
            1.0 + s * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
        )
    };
    // upper 32 bits of x, as the original algorithm's pseudo-single split
    let z = f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000);
    let v = (-z * z - 0.5625).exp() * ((z - x) * (z + x) + r / sq).exp();
    if sign {
        v / x - 1.0
    } else {
        1.0 - v / x
    }
}

/// n! as f64, exact up to 33! via integer arithmetic, product form beyond.
pub fn factorial(n: usize) -> f64 {
    if n <= 33 {
        let mut acc: u128 = 1;
        for k in 2..=n as u128 {
            acc *= k;
        }
        acc as f64
    } else {
        (2..=n).fold(1.0f64, |acc, k| acc * k as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values from an independent double-precision implementation
    const CASES: &[(f64, f64)] = &[
        (0.25, 0.2763263901682369),
        (0.5, 0.5204998778130465),
        (0.84375, 0.7672256612323416),
        (1.0, 0.8427007929497148),
        (1.25, 0.9229001282564582),
        (2.0, 0.9953222650189527),
        (2.857142857142857, 0.9999466876886117),
        (4.0, 0.9999999845827421),
    ];

    #[test]
    fn erf_reference_values() {
        for &(x, want) in CASES {
            let got = erf(x);
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-15, "erf({x}) = {got}, want {want} (rel {rel:e})");
        }
    }

    #[test]
    fn erf_odd_symmetry_and_limits() {
        assert_eq!(erf(0.0), 0.0);
        for &(x, _) in CASES {
            assert_eq!(erf(-x), -erf(x));
        }
        assert!((erf(6.0) - 1.0).abs() < 1e-16);
        assert_eq!(erf(f64::INFINITY), 1.0);
        assert_eq!(erf(f64::NEG_INFINITY), -1.0);
        assert!(erf(f64::NAN).is_nan());
    }

    #[test]
    fn erf_monotone_near_branch_cuts() {
        for cut in [0.84375, 1.25, 1.0 / 0.35, 6.0] {
            let lo = erf(cut - 1e-12);
            let mid = erf(cut);
            let hi = erf(cut + 1e-12);
            assert!(lo <= mid + 1e-16 && mid <= hi + 1e-16, "wiggle at {cut}");
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(1), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(factorial(12), 479_001_600.0);
        // 21! = 51090942171709440000, exactly representable path via u128
        assert_eq!(factorial(21), 5.109094217170944e19);
    }
}
