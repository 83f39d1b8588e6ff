//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals.
//!
//! The 15-point Kronrod rule (embedded 7-point Gauss) supplies a per-interval
//! error estimate; the driver repeatedly bisects the worst interval until the
//! summed error estimate meets the requested tolerance. Semi-infinite
//! integrals map [0, inf) onto [0, 1) via x = u/(1-u); when the transformed
//! integrand misbehaves the driver falls back to truncation with doubling
//! upper limits, which is also where divergence is detected.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (positive half, descending) with the embedded
// 7-point Gauss rule on the odd-indexed nodes. Standard QUADPACK values.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Maximum number of interval bisections before giving up.
const MAX_INTERVALS: usize = 4096;

/// Uniform pieces the interval is cut into before adaptation, so narrow
/// features away from the initial node set still register in the error
/// estimates.
const INITIAL_SPLIT: usize = 16;

/// QUADPACK downscaling of the raw |K15 - G7| difference using the
/// integrand's variation `res_asc` on the interval.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One Gauss–Kronrod evaluation: (kronrod_estimate, error_estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut values = [0.0f64; 15];
    let f_center = f(center);
    values[14] = f_center;
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut res_abs = f_center.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        values[2 * j] = lo;
        values[2 * j + 1] = hi;
        kronrod += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }

    let abs_half = half.abs();
    let err = rescale_error(
        (kronrod - gauss) * half,
        res_abs * abs_half,
        res_asc * abs_half,
    );
    (kronrod * half, err)
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integration of `f` over the finite interval [a, b].
///
/// Terminates when the accumulated error estimate drops below
/// `max(abs_tol, 1e-13 * |integral|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || abs_tol <= 0.0 {
        return Err(Error::Parameter(format!(
            "integrate requires finite bounds and positive tolerance, got [{a}, {b}], tol {abs_tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let mut intervals = Vec::with_capacity(INITIAL_SPLIT);
    let width = (b - a) / INITIAL_SPLIT as f64;
    for k in 0..INITIAL_SPLIT {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == INITIAL_SPLIT {
            b
        } else {
            a + (k + 1) as f64 * width
        };
        let (value, error) = gk15(&f, lo, hi);
        intervals.push(Interval {
            a: lo,
            b: hi,
            value,
            error,
        });
    }

    loop {
        let total: f64 = intervals.iter().map(|iv| iv.value).sum();
        let total_err: f64 = intervals.iter().map(|iv| iv.error).sum();
        if !total.is_finite() {
            return Err(Error::Divergent(format!(
                "integrand produced a non-finite value on [{a}, {b}]"
            )));
        }
        if total_err <= abs_tol.max(1e-13 * total.abs()) {
            return Ok(total);
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "error estimate {total_err:e} above tolerance {abs_tol:e} after {MAX_INTERVALS} subdivisions"
            )));
        }

        // bisect the interval with the largest error estimate
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let iv = intervals.swap_remove(worst);
        let mid = 0.5 * (iv.a + iv.b);
        if mid <= iv.a || mid >= iv.b {
            // interval no longer representable; keep its estimate as-is
            intervals.push(iv);
            let total: f64 = intervals.iter().map(|i| i.value).sum();
            return Ok(total);
        }
        for (lo, hi) in [(iv.a, mid), (mid, iv.b)] {
            let (value, error) = gk15(&f, lo, hi);
            intervals.push(Interval {
                a: lo,
                b: hi,
                value,
                error,
            });
        }
    }
}

/// Adaptive integration of `f` over [0, inf).
///
/// Primary route maps onto [0, 1) with x = u/(1-u); if that fails to
/// converge (stiff transformed integrand, overflow) the driver retries with
/// truncated intervals whose upper limit doubles until two consecutive
/// doublings change the result by less than the tolerance. Failure to
/// stabilize is reported as divergence.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, abs_tol: f64) -> Result<f64> {
    let transformed = |u: f64| {
        let denom = 1.0 - u;
        let x = u / denom;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (denom * denom)
        }
    };
    match integrate(transformed, 0.0, 1.0, abs_tol) {
        Ok(v) if v.is_finite() => Ok(v),
        _ => integrate_by_doubling(&f, abs_tol),
    }
}

/// Truncation fallback: sum block integrals over [0,1], [1,2], [2,4], ...
/// until the tail stabilizes across two doublings of the upper limit.
fn integrate_by_doubling<F: Fn(f64) -> f64>(f: &F, abs_tol: f64) -> Result<f64> {
    let mut total = integrate(f, 0.0, 1.0, abs_tol)?;
    let mut upper = 1.0f64;
    let mut quiet_blocks = 0;

    for _ in 0..64 {
        let next = upper * 2.0;
        let block = integrate(f, upper, next, abs_tol)?;
        if !block.is_finite() {
            return Err(Error::Divergent(format!(
                "tail block [{upper}, {next}] is non-finite"
            )));
        }
        total += block;
        upper = next;
        if block.abs() < 0.25 * abs_tol {
            quiet_blocks += 1;
            if quiet_blocks >= 2 {
                return Ok(total);
            }
        } else {
            quiet_blocks = 0;
        }
    }
    Err(Error::Divergent(format!(
        "tail failed to stabilize by upper limit {upper:e} (last total {total:e})"
    )))
}
