//! Monte Carlo probe of the almost-sure convergence of the empirical
//! estimators.
//!
//! Almost-sure convergence cannot be observed with finite compute; the lab
//! operationalizes it as decay of the Monte Carlo mean absolute error over a
//! ladder of sample sizes, against closed-form (WCRE) or quadrature (WCE)
//! truth. The convergence guarantee requires the weight function to pass
//! the integrability condition, so configurations that fail it are refused
//! rather than run.
//!
//! Every (size, replication) cell draws from its own counter-derived ChaCha
//! stream, so reports are bit-identical across runs and thread schedules.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{wce_quadrature, wcre_exponential_gamma, Exponential};
use crate::empirical::{wce_orderstats, wcre_orderstats, OrderedSample};
use crate::error::{Error, Result};
use crate::weight::WeightFunction;

/// Configuration of one convergence experiment.
#[derive(Debug, Clone)]
pub struct ConvergenceConfig {
    pub rate: f64,
    pub wf: WeightFunction,
    /// Nondecreasing ladder of sample sizes, each >= 2.
    pub sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    /// Exponent for the integrability gate.
    pub p: f64,
    /// Split point for the integrability gate.
    pub split_point: f64,
}

impl ConvergenceConfig {
    pub fn new(
        rate: f64,
        wf: WeightFunction,
        sizes: Vec<usize>,
        replications: usize,
        seed: u64,
    ) -> Self {
        Self {
            rate,
            wf,
            sizes,
            replications,
            seed,
            p: 2.0,
            split_point: 1.0,
        }
    }

    pub fn with_gate(mut self, p: f64, split_point: f64) -> Self {
        self.p = p;
        self.split_point = split_point;
        self
    }
}

/// Error aggregates for one measure at one sample size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorStats {
    pub mean_abs_err: f64,
    pub max_abs_err: f64,
    /// Population standard deviation of the absolute errors across
    /// replications (zero for a single replication).
    pub stddev: f64,
    pub truth: f64,
}

impl ErrorStats {
    fn from_errors(errors: &[f64], truth: f64) -> Self {
        let n = errors.len() as f64;
        let mean = errors.iter().sum::<f64>() / n;
        let max = errors.iter().fold(0.0f64, |a, &e| a.max(e));
        let var = errors.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / n;
        ErrorStats {
            mean_abs_err: mean,
            max_abs_err: max,
            stddev: var.sqrt(),
            truth,
        }
    }
}

/// Per-size row carrying both measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub wcre: ErrorStats,
    pub wce: ErrorStats,
}

/// Full result of a convergence experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Weight function in spec form.
    pub wf: String,
    pub rate: f64,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub p: f64,
    /// Rows sorted by n.
    pub rows: Vec<ConvergenceRow>,
}

/// Uniform draw in [0, 1) from the top 53 bits of the stream.
#[inline]
fn u01(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draw `n` iid Exponential(rate) lifetimes by inverse CDF and return them
/// sorted. The conversion from raw bits is fixed here, so streams are
/// reproducible across platforms and dependency versions.
pub fn sample_exponential(rate: f64, n: usize, rng: &mut impl RngCore) -> Result<OrderedSample> {
    if !rate.is_finite() || rate <= 0.0 {
        return Err(Error::Parameter(format!(
            "exponential sampling requires rate > 0, got {rate}"
        )));
    }
    if n < 2 {
        return Err(Error::Parameter(format!(
            "samples need n >= 2 observations, got {n}"
        )));
    }
    let values: Vec<f64> = (0..n)
        .map(|_| {
            let u = u01(rng);
            // x = -ln(1 - u) / rate, via ln_1p for small u
            -(-u).ln_1p() / rate
        })
        .collect();
    OrderedSample::new(values)
}

/// RNG for one (size index, replication) cell: one base seed, one ChaCha
/// stream per cell.
fn cell_rng(seed: u64, size_idx: usize, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((size_idx as u64) << 32) | rep as u64);
    rng
}

/// Run the experiment described by `config`.
///
/// Refuses to run when the weight function fails the integrability gate at
/// the configured (p, split point) — the convergence statement does not
/// cover such weights. Replications run in parallel; the report is
/// deterministic given the config.
pub fn run_convergence(config: &ConvergenceConfig) -> Result<ConvergenceReport> {
    let verdict = config
        .wf
        .check_integrability(config.p, config.split_point)?;
    if let Some(reason) = verdict.reason() {
        return Err(Error::Integrability(format!(
            "{} with p = {}: {reason}",
            config.wf, config.p
        )));
    }
    if config.replications == 0 {
        return Err(Error::Parameter("replications must be >= 1".into()));
    }
    if config.sizes.is_empty() {
        return Err(Error::Parameter("at least one sample size required".into()));
    }
    if config.sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Parameter(
            "sample sizes must be nondecreasing".into(),
        ));
    }
    if let Some(bad) = config.sizes.iter().find(|n| **n < 2) {
        return Err(Error::Parameter(format!(
            "sample sizes must be >= 2, got {bad}"
        )));
    }

    let pop = Exponential::new(config.rate)?;
    let wcre_truth = wcre_exponential_gamma(config.rate, &config.wf)?;
    let wce_truth = wce_quadrature(&pop, &config.wf)?;

    let rows = config
        .sizes
        .iter()
        .enumerate()
        .map(|(size_idx, &n)| {
            let errors: Vec<(f64, f64)> = (0..config.replications)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = cell_rng(config.seed, size_idx, rep);
                    let sample =
                        sample_exponential(config.rate, n, &mut rng).expect("validated config");
                    let wcre = wcre_orderstats(&sample, &config.wf).value;
                    let wce = wce_orderstats(&sample, &config.wf).value;
                    ((wcre - wcre_truth).abs(), (wce - wce_truth).abs())
                })
                .collect();
            let wcre_errors: Vec<f64> = errors.iter().map(|e| e.0).collect();
            let wce_errors: Vec<f64> = errors.iter().map(|e| e.1).collect();
            ConvergenceRow {
                n,
                wcre: ErrorStats::from_errors(&wcre_errors, wcre_truth),
                wce: ErrorStats::from_errors(&wce_errors, wce_truth),
            }
        })
        .collect();

    Ok(ConvergenceReport {
        wf: config.wf.to_string(),
        rate: config.rate,
        sample_sizes: config.sizes.clone(),
        replications: config.replications,
        seed: config.seed,
        p: config.p,
        rows,
    })
}
