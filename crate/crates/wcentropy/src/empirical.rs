//! Empirical WCRE/WCE estimators over order statistics.
//!
//! Both measures are integrals of the piecewise-constant empirical CDF (or
//! survival function) against a weight function, so on a sorted sample
//! x_(1) <= ... <= x_(n) they reduce to finite sums over the antiderivative
//! gaps Psi(x_(i+1)) - Psi(x_(i)):
//!
//! ```text
//! WCE  = - sum_{i=1..n-1} (i/n)     ln(i/n)     * gap_i
//! WCRE = - sum_{i=1..n-1} ((n-i)/n) ln((n-i)/n) * gap_i
//! ```
//!
//! The same sums telescope into the closed order-statistics form
//! `(Psi(x_(n)) - mean Psi) ln n - (1/n) sum i * gap_i * ln i` (and its
//! survival-side mirror). Both routes are implemented: the direct piecewise
//! sum serves as an independent oracle for the telescoped fast path, and
//! every estimate can be cross-checked between them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::weight::WeightFunction;

/// A validated, nondecreasing sample of nonnegative lifetimes.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedSample {
    values: Vec<f64>,
}

impl OrderedSample {
    /// Sort and validate raw observations. Requires every value finite and
    /// nonnegative and at least two observations.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        Self::validate_values(&values)?;
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Wrap values that are already nondecreasing.
    pub fn from_sorted(values: Vec<f64>) -> Result<Self> {
        Self::validate_values(&values)?;
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(
                "from_sorted requires nondecreasing values".into(),
            ));
        }
        Ok(Self { values })
    }

    fn validate_values(values: &[f64]) -> Result<()> {
        if values.len() < 2 {
            return Err(Error::Domain(format!(
                "estimators need at least 2 observations, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Domain(format!(
                "lifetimes must be finite and >= 0, got {bad}"
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn psi_values(&self, wf: &WeightFunction) -> Vec<f64> {
        self.values.iter().map(|&x| wf.psi_unchecked(x)).collect()
    }
}

/// Which functional an estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyKind {
    Wcre,
    Wce,
}

/// Which evaluation route produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMethod {
    OrderStats,
    PiecewiseIntegral,
}

/// A WCRE or WCE value with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub kind: EntropyKind,
    pub value: f64,
    pub n: usize,
    /// Weight function in `family:params` spec form.
    pub wf: String,
    pub method: EstimatorMethod,
}

/// One row of a prefix curve: both estimates for the first `n` observations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub n: usize,
    pub wcre: f64,
    pub wce: f64,
}

/// Nonnegative antiderivative gaps of a sorted psi sequence. Gaps are
/// clamped at zero: psi is nondecreasing in exact arithmetic, so a negative
/// gap can only be floating-point noise from the erf evaluation.
fn psi_gaps(psi: &[f64]) -> impl Iterator<Item = f64> + '_ {
    psi.windows(2).map(|w| (w[1] - w[0]).max(0.0))
}

/// Telescoped order-statistics form of the WCE.
pub(crate) fn wce_orderstats_core(psi: &[f64]) -> f64 {
    let n = psi.len();
    let last = psi[n - 1];
    // n * (psi_(n) - mean psi), summed as individual nonnegative deviations
    // so constant samples come out exactly zero
    let deviations: CompensatedSum = psi.iter().map(|&p| (last - p).max(0.0)).collect();
    let weighted: CompensatedSum = psi_gaps(psi)
        .enumerate()
        .map(|(j, gap)| (j + 1) as f64 * gap * ((j + 1) as f64).ln())
        .collect();
    (deviations.total() * (n as f64).ln() - weighted.total()) / n as f64
}

/// Telescoped order-statistics form of the WCRE.
pub(crate) fn wcre_orderstats_core(psi: &[f64]) -> f64 {
    let n = psi.len();
    let first = psi[0];
    let deviations: CompensatedSum = psi.iter().map(|&p| (p - first).max(0.0)).collect();
    let weighted: CompensatedSum = psi_gaps(psi)
        .enumerate()
        .map(|(j, gap)| {
            let remaining = (n - 1 - j) as f64;
            remaining * gap * remaining.ln()
        })
        .collect();
    (deviations.total() * (n as f64).ln() - weighted.total()) / n as f64
}

/// Direct piecewise-constant ECDF integral of the WCE; oracle route.
pub(crate) fn wce_piecewise_core(psi: &[f64]) -> f64 {
    let n = psi.len() as f64;
    let acc: CompensatedSum = psi_gaps(psi)
        .enumerate()
        .map(|(j, gap)| {
            let u = (j + 1) as f64 / n;
            -u * u.ln() * gap
        })
        .collect();
    acc.total()
}

/// Direct piecewise-constant survival integral of the WCRE; oracle route.
pub(crate) fn wcre_piecewise_core(psi: &[f64]) -> f64 {
    let n = psi.len() as f64;
    let len = psi.len();
    let acc: CompensatedSum = psi_gaps(psi)
        .enumerate()
        .map(|(j, gap)| {
            let u = (len - 1 - j) as f64 / n;
            -u * u.ln() * gap
        })
        .collect();
    acc.total()
}

fn estimate(
    sample: &OrderedSample,
    wf: &WeightFunction,
    kind: EntropyKind,
    method: EstimatorMethod,
) -> EntropyEstimate {
    let psi = sample.psi_values(wf);
    let value = match (kind, method) {
        (EntropyKind::Wce, EstimatorMethod::OrderStats) => wce_orderstats_core(&psi),
        (EntropyKind::Wce, EstimatorMethod::PiecewiseIntegral) => wce_piecewise_core(&psi),
        (EntropyKind::Wcre, EstimatorMethod::OrderStats) => wcre_orderstats_core(&psi),
        (EntropyKind::Wcre, EstimatorMethod::PiecewiseIntegral) => wcre_piecewise_core(&psi),
    };
    EntropyEstimate {
        kind,
        value,
        n: sample.n(),
        wf: wf.to_string(),
        method,
    }
}

/// Empirical WCE by the telescoped order-statistics formula.
pub fn wce_orderstats(sample: &OrderedSample, wf: &WeightFunction) -> EntropyEstimate {
    estimate(sample, wf, EntropyKind::Wce, EstimatorMethod::OrderStats)
}

/// Empirical WCRE by the telescoped order-statistics formula.
pub fn wcre_orderstats(sample: &OrderedSample, wf: &WeightFunction) -> EntropyEstimate {
    estimate(sample, wf, EntropyKind::Wcre, EstimatorMethod::OrderStats)
}

/// Empirical WCE by direct piecewise integration; independent oracle for
/// [`wce_orderstats`].
pub fn wce_piecewise(sample: &OrderedSample, wf: &WeightFunction) -> EntropyEstimate {
    estimate(
        sample,
        wf,
        EntropyKind::Wce,
        EstimatorMethod::PiecewiseIntegral,
    )
}

/// Empirical WCRE by direct piecewise integration; independent oracle for
/// [`wcre_orderstats`].
pub fn wcre_piecewise(sample: &OrderedSample, wf: &WeightFunction) -> EntropyEstimate {
    estimate(
        sample,
        wf,
        EntropyKind::Wcre,
        EstimatorMethod::PiecewiseIntegral,
    )
}

/// Both estimates for every prefix of `raw` (in listed order) from `n_min`
/// observations up to the full sample. Each prefix is sorted independently;
/// the listed order only determines which observations enter first.
pub fn prefix_curves(raw: &[f64], wf: &WeightFunction, n_min: usize) -> Result<Vec<CurvePoint>> {
    if n_min < 2 {
        return Err(Error::Parameter(format!(
            "prefix curves start at n_min >= 2, got {n_min}"
        )));
    }
    if n_min > raw.len() {
        return Err(Error::Parameter(format!(
            "n_min = {n_min} exceeds the {} available observations",
            raw.len()
        )));
    }
    if let Some(bad) = raw.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::Domain(format!(
            "lifetimes must be finite and >= 0, got {bad}"
        )));
    }

    // Psi is nondecreasing, so inserting psi values into a sorted buffer
    // yields the same sequence as sorting each prefix and mapping. This keeps
    // the whole curve at one psi evaluation per observation.
    let mut sorted_psi: Vec<f64> = Vec::with_capacity(raw.len());
    let mut points = Vec::with_capacity(raw.len().saturating_sub(n_min) + 1);
    for (k, &x) in raw.iter().enumerate() {
        let p = wf.psi_unchecked(x);
        let at = sorted_psi.partition_point(|&q| q <= p);
        sorted_psi.insert(at, p);
        if k + 1 >= n_min {
            points.push(CurvePoint {
                n: k + 1,
                wcre: wcre_orderstats_core(&sorted_psi),
                wce: wce_orderstats_core(&sorted_psi),
            });
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2_HALF: f64 = 0.346_573_590_279_972_65;
    // -[(1/3) ln(1/3) + (2/3) ln(2/3)]
    const THREE_POINT: f64 = 0.636_514_168_294_812_9;

    fn flat() -> WeightFunction {
        WeightFunction::constant(1.0).unwrap()
    }

    fn all_four(sample: &OrderedSample, wf: &WeightFunction) -> [f64; 4] {
        [
            wcre_orderstats(sample, wf).value,
            wcre_piecewise(sample, wf).value,
            wce_orderstats(sample, wf).value,
            wce_piecewise(sample, wf).value,
        ]
    }

    #[test]
    fn two_point_sample_hand_integral() {
        let s = OrderedSample::new(vec![1.0, 2.0]).unwrap();
        for v in all_four(&s, &flat()) {
            assert!((v - LN2_HALF).abs() < 1e-15, "got {v}");
        }
    }

    #[test]
    fn three_point_sample_hand_sum() {
        let s = OrderedSample::new(vec![3.0, 1.0, 2.0]).unwrap();
        for v in all_four(&s, &flat()) {
            assert!((v - THREE_POINT).abs() < 1e-15, "got {v}");
        }
    }

    #[test]
    fn constant_sample_is_exactly_zero() {
        for wf in WeightFunction::catalog() {
            let s = OrderedSample::new(vec![0.7; 5]).unwrap();
            for v in all_four(&s, &wf) {
                assert_eq!(v, 0.0, "{wf}");
            }
        }
    }

    #[test]
    fn ties_contribute_zero_width_gaps() {
        let s = OrderedSample::new(vec![1.0, 1.0, 2.0]).unwrap();
        let wce = wce_piecewise(&s, &flat()).value;
        let wcre = wcre_piecewise(&s, &flat()).value;
        // only the [1, 2] interval contributes
        let two_thirds: f64 = 2.0 / 3.0;
        let one_third: f64 = 1.0 / 3.0;
        assert!((wce - -(two_thirds) * two_thirds.ln()).abs() < 1e-15);
        assert!((wcre - -(one_third) * one_third.ln()).abs() < 1e-15);

        // perturbing the tie moves the estimate continuously
        let s_eps = OrderedSample::new(vec![1.0, 1.0 + 1e-12, 2.0]).unwrap();
        assert!((wce_orderstats(&s_eps, &flat()).value - wce).abs() < 1e-9);
        assert!((wcre_orderstats(&s_eps, &flat()).value - wcre).abs() < 1e-9);
    }

    #[test]
    fn sample_validation() {
        assert!(OrderedSample::new(vec![1.0]).is_err());
        assert!(OrderedSample::new(vec![]).is_err());
        assert!(OrderedSample::new(vec![1.0, -0.5]).is_err());
        assert!(OrderedSample::new(vec![1.0, f64::NAN]).is_err());
        assert!(OrderedSample::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(OrderedSample::from_sorted(vec![2.0, 1.0]).is_err());
        assert!(OrderedSample::from_sorted(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn estimate_metadata() {
        let s = OrderedSample::new(vec![1.0, 2.0, 3.0]).unwrap();
        let wf = WeightFunction::gaussian(0.5).unwrap();
        let est = wce_orderstats(&s, &wf);
        assert_eq!(est.kind, EntropyKind::Wce);
        assert_eq!(est.n, 3);
        assert_eq!(est.wf, "gaussian:0.5");
        assert_eq!(est.method, EstimatorMethod::OrderStats);
        let est = wcre_piecewise(&s, &wf);
        assert_eq!(est.kind, EntropyKind::Wcre);
        assert_eq!(est.method, EstimatorMethod::PiecewiseIntegral);
    }

    #[test]
    fn prefix_curves_match_per_prefix_estimates() {
        let raw = vec![3.0, 0.25, 1.5, 1.5, 0.9, 4.2, 0.05, 2.2, 1.1, 0.6, 2.9, 0.4];
        let wf = WeightFunction::gaussian(0.8).unwrap();
        let curve = prefix_curves(&raw, &wf, 2).unwrap();
        assert_eq!(curve.len(), raw.len() - 1);
        for point in &curve {
            let s = OrderedSample::new(raw[..point.n].to_vec()).unwrap();
            assert_eq!(point.wcre, wcre_orderstats(&s, &wf).value, "n={}", point.n);
            assert_eq!(point.wce, wce_orderstats(&s, &wf).value, "n={}", point.n);
        }
    }

    #[test]
    fn prefix_curves_validation() {
        let raw = vec![1.0, 2.0, 3.0];
        let wf = flat();
        assert!(prefix_curves(&raw, &wf, 1).is_err());
        assert!(prefix_curves(&raw, &wf, 4).is_err());
        assert!(prefix_curves(&[1.0, -1.0], &wf, 2).is_err());
        let curve = prefix_curves(&raw, &wf, 3).unwrap();
        assert_eq!(curve.len(), 1);
        assert_eq!(curve[0].n, 3);
    }

    #[test]
    fn constant_dataset_curve_is_zero() {
        let raw = vec![2.5; 8];
        let curve = prefix_curves(&raw, &flat(), 2).unwrap();
        assert!(curve.iter().all(|p| p.wcre == 0.0 && p.wce == 0.0));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn catalog() -> Vec<WeightFunction> {
        WeightFunction::catalog()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn orderstats_equals_piecewise_and_both_nonnegative(
            values in proptest::collection::vec(0.0..30.0f64, 2..120),
        ) {
            let sample = OrderedSample::new(values).unwrap();
            for wf in catalog() {
                let pairs = [
                    (wcre_orderstats(&sample, &wf).value, wcre_piecewise(&sample, &wf).value),
                    (wce_orderstats(&sample, &wf).value, wce_piecewise(&sample, &wf).value),
                ];
                for (fast, oracle) in pairs {
                    prop_assert!(fast >= 0.0, "{wf}: negative estimate {fast}");
                    prop_assert!(oracle >= 0.0);
                    let tol = 1e-10 * oracle.abs().max(1.0);
                    prop_assert!(
                        (fast - oracle).abs() <= tol,
                        "{wf}: orderstats {fast} vs piecewise {oracle}"
                    );
                }
            }
        }

        #[test]
        fn flat_weight_reduces_to_unweighted_measures(
            values in proptest::collection::vec(0.0..30.0f64, 2..60),
        ) {
            // with phi = 1 the psi gaps are the raw spacings, so the
            // estimate equals the unweighted empirical CRE/CE computed here
            // from first principles
            let sample = OrderedSample::new(values).unwrap();
            let n = sample.n() as f64;
            let flat = WeightFunction::constant(1.0).unwrap();
            let mut cre = 0.0;
            let mut ce = 0.0;
            for (j, w) in sample.values().windows(2).enumerate() {
                let gap = w[1] - w[0];
                let i = (j + 1) as f64;
                ce += -(i / n) * (i / n).ln() * gap;
                cre += -((n - i) / n) * ((n - i) / n).ln() * gap;
            }
            let wcre = wcre_orderstats(&sample, &flat).value;
            let wce = wce_orderstats(&sample, &flat).value;
            prop_assert!((wcre - cre).abs() <= 1e-10 * cre.abs().max(1.0));
            prop_assert!((wce - ce).abs() <= 1e-10 * ce.abs().max(1.0));
        }
    }
}
