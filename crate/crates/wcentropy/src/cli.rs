//! Command-line surface.
//!
//! ```text
//! wcentropy estimate    [--input PATH] [--wf SPEC] [--p R] [--out PATH] [--format csv|json]
//! wcentropy curves      [--input PATH] [--wf SPEC]... [--n-min K] [--prefix-order ORD] ...
//! wcentropy convergence [--wf SPEC] [--lambda R] [--sizes LIST] [--reps K] [--seed U64] [--p R] ...
//! wcentropy identities  [--wf SPEC]... [--lambda R] ...
//! ```
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 weight function
//! refused by the integrability gate, 3 numerical self-check failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::closed_form::{
    check_equilibrium_identity, check_kl_identity, Exponential, IdentityReport, IDENTITY_TOLERANCE,
};
use crate::convergence::{run_convergence, ConvergenceConfig, ConvergenceReport, ErrorStats};
use crate::dataset;
use crate::empirical::{
    prefix_curves, wce_orderstats, wce_piecewise, wcre_orderstats, wcre_piecewise, CurvePoint,
    OrderedSample,
};
use crate::error::{Error, Result};
use crate::io::{
    curves_to_csv, flatten_column_major, format_g17, multi_curves_to_csv, parse_sample_rows,
};
use crate::weight::WeightFunction;

/// Relative disagreement between the two estimator routes that aborts an
/// estimate (exit code 3).
const SELF_CHECK_TOLERANCE: f64 = 1e-8;

const DEFAULT_IDENTITY_RATES: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Parser)]
#[command(
    name = "wcentropy",
    version,
    about = "Weighted cumulative residual entropy (WCRE) and weighted cumulative entropy (WCE) \
             estimation, ground truths, and convergence experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate WCRE and WCE of a full sample (order-statistics estimator,
    /// cross-checked against the direct piecewise integral)
    Estimate(EstimateArgs),
    /// Emit (n, WCRE(n), WCE(n)) plot data for growing subsamples
    Curves(CurvesArgs),
    /// Monte Carlo convergence experiment against an exponential population
    Convergence(ConvergenceArgs),
    /// Numerical identity checks over a (rate, weight-function) grid
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

/// How the observations enter the growing subsamples of `curves`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrefixOrder {
    /// File order, reading each line left to right.
    RowMajor,
    /// Column by column over the file's grid (requires equal-length rows).
    ColumnMajor,
    /// Ascending order statistics: the n smallest observations first.
    Sorted,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Sample file; the bundled 50-lifetime dataset when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Weight function as family:params
    #[arg(long, default_value = "constant:1")]
    wf: String,
    /// Integrability exponent used for the advisory gate check
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct CurvesArgs {
    /// Sample file; the bundled 50-lifetime dataset when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Weight function(s); repeat the flag for one column pair per function
    #[arg(long = "wf", default_value = "gaussian:1")]
    wfs: Vec<String>,
    /// Smallest subsample size
    #[arg(long = "n-min", default_value_t = 2)]
    n_min: usize,
    #[arg(long, value_enum, default_value_t = PrefixOrder::RowMajor)]
    prefix_order: PrefixOrder,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct ConvergenceArgs {
    /// Weight function under test
    #[arg(long, default_value = "constant:1")]
    wf: String,
    /// Rate of the exponential population (mean 1/lambda)
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Sample-size ladder
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    sizes: Vec<usize>,
    /// Replications per sample size
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Integrability exponent for the convergence gate
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    /// Weight function(s); defaults to constant:1, gaussian:1, exptilt:-0.5
    #[arg(long = "wf")]
    wfs: Vec<String>,
    /// Single rate; defaults to the grid 0.25, 0.5, 1, 2, 5
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

/// Parse argv, dispatch, and map errors onto the documented exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are successful displays
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Integrability(_) => 2,
                Error::SelfCheck(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Estimate(args) => cmd_estimate(&args),
        Command::Curves(args) => cmd_curves(&args),
        Command::Convergence(args) => cmd_convergence(&args),
        Command::Identities(args) => cmd_identities(&args),
    }
}

fn load_rows(input: Option<&Path>) -> Result<(String, Vec<Vec<f64>>)> {
    match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok((path.display().to_string(), parse_sample_rows(&text)?))
        }
        None => Ok((
            "<bundled example1.csv>".to_string(),
            parse_sample_rows(dataset::EXAMPLE1_CSV)?,
        )),
    }
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_estimate(args: &EstimateArgs) -> Result<()> {
    let (_, rows) = load_rows(args.input.as_deref())?;
    let values: Vec<f64> = rows.into_iter().flatten().collect();
    let wf = WeightFunction::parse(&args.wf)?;
    let sample = OrderedSample::new(values)?;

    let fast = [wcre_orderstats(&sample, &wf), wce_orderstats(&sample, &wf)];
    let oracle = [wcre_piecewise(&sample, &wf), wce_piecewise(&sample, &wf)];
    for (f, o) in fast.iter().zip(&oracle) {
        let tol = SELF_CHECK_TOLERANCE * o.value.abs().max(1.0);
        if (f.value - o.value).abs() > tol {
            return Err(Error::SelfCheck(format!(
                "{:?} estimator routes disagree: order-statistics {} vs piecewise {}",
                f.kind, f.value, o.value
            )));
        }
    }

    // advisory gate: a finite-sample estimate exists regardless, but the
    // convergence guarantee does not
    let verdict = wf.check_integrability(args.p, 1.0)?;
    if let Some(reason) = verdict.reason() {
        eprintln!(
            "warning: {wf} fails the integrability condition at p = {} ({reason}); \
             the empirical estimate is still well-defined for this finite sample",
            args.p
        );
    }

    let [wcre, wce] = fast;
    let output = match args.format {
        OutputFormat::Json => {
            let doc = json!({
                "n": sample.n(),
                "wf": wf.to_string(),
                "wcre": wcre,
                "wce": wce,
                "integrability": {
                    "p": args.p,
                    "valid": verdict.is_valid(),
                    "reason": verdict.reason(),
                },
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )
        }
        OutputFormat::Csv => {
            let mut s = String::from("kind,value,n,wf,method\n");
            for est in [&wcre, &wce] {
                s.push_str(&format!(
                    "{:?},{},{},{},order_stats\n",
                    est.kind,
                    format_g17(est.value),
                    est.n,
                    est.wf
                ));
            }
            s
        }
    };
    write_output(args.out.as_deref(), &output)
}

fn cmd_curves(args: &CurvesArgs) -> Result<()> {
    let (input_name, rows) = load_rows(args.input.as_deref())?;
    let values = match args.prefix_order {
        PrefixOrder::RowMajor => rows.into_iter().flatten().collect::<Vec<f64>>(),
        PrefixOrder::ColumnMajor => flatten_column_major(&rows)?,
        PrefixOrder::Sorted => {
            let mut v: Vec<f64> = rows.into_iter().flatten().collect();
            v.sort_by(f64::total_cmp);
            v
        }
    };

    let wfs: Vec<WeightFunction> = args
        .wfs
        .iter()
        .map(|s| WeightFunction::parse(s))
        .collect::<Result<_>>()?;
    let series: Vec<Vec<CurvePoint>> = wfs
        .iter()
        .map(|wf| prefix_curves(&values, wf, args.n_min))
        .collect::<Result<_>>()?;

    let order = match args.prefix_order {
        PrefixOrder::RowMajor => "row-major",
        PrefixOrder::ColumnMajor => "column-major",
        PrefixOrder::Sorted => "sorted",
    };
    let specs: Vec<String> = wfs.iter().map(WeightFunction::to_string).collect();
    let manifest = json!({
        "input": input_name,
        "prefix_order": order,
        "n_min": args.n_min,
        "series": wfs.iter().enumerate().map(|(i, wf)| {
            let (wcre_col, wce_col) = if wfs.len() == 1 {
                ("wcre".to_string(), "wce".to_string())
            } else {
                (format!("wcre[{}]", specs[i]), format!("wce[{}]", specs[i]))
            };
            json!({
                "wf": specs[i],
                "label": wf.legend_label(),
                "wcre_column": wcre_col,
                "wce_column": wce_col,
            })
        }).collect::<Vec<_>>(),
    });

    let output = match args.format {
        OutputFormat::Csv => {
            let comments = vec![format!(
                "input={input_name} prefix_order={order} n_min={}",
                args.n_min
            )];
            if wfs.len() == 1 {
                curves_to_csv(&series[0], &comments)
            } else {
                multi_curves_to_csv(&specs, &series, &comments)
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "manifest": manifest,
                "series": specs.iter().zip(&series).map(|(spec, points)| {
                    json!({ "wf": spec, "points": points })
                }).collect::<Vec<_>>(),
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )
        }
    };
    write_output(args.out.as_deref(), &output)?;

    // sidecar manifest names the series for plotting tools
    if let (Some(out), OutputFormat::Csv) = (args.out.as_deref(), args.format) {
        let mut manifest_path = out.as_os_str().to_owned();
        manifest_path.push(".manifest.json");
        std::fs::write(
            PathBuf::from(manifest_path),
            format!(
                "{}\n",
                serde_json::to_string_pretty(&manifest).expect("serializable")
            ),
        )?;
    }
    Ok(())
}

fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# wf={} lambda={} reps={} seed={} p={} sizes={}\n",
        report.wf,
        report.rate,
        report.replications,
        report.seed,
        report.p,
        report
            .sample_sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    ));
    let mut section = |measure: &str, rows: Vec<(usize, ErrorStats)>| {
        out.push_str(&format!("# measure={measure}\n"));
        out.push_str("n,mean_abs_err,max_abs_err,stddev,truth\n");
        for (n, stats) in rows {
            out.push_str(&format!(
                "{n},{},{},{},{}\n",
                format_g17(stats.mean_abs_err),
                format_g17(stats.max_abs_err),
                format_g17(stats.stddev),
                format_g17(stats.truth)
            ));
        }
    };
    section("wcre", report.rows.iter().map(|r| (r.n, r.wcre)).collect());
    section("wce", report.rows.iter().map(|r| (r.n, r.wce)).collect());
    out
}

fn cmd_convergence(args: &ConvergenceArgs) -> Result<()> {
    let wf = WeightFunction::parse(&args.wf)?;
    let config = ConvergenceConfig::new(args.lambda, wf, args.sizes.clone(), args.reps, args.seed)
        .with_gate(args.p, 1.0);
    let report = run_convergence(&config)?;
    let output = match args.format {
        OutputFormat::Csv => convergence_csv(&report),
        OutputFormat::Json => {
            format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("serializable")
            )
        }
    };
    write_output(args.out.as_deref(), &output)
}

#[derive(Debug, Serialize)]
struct IdentityEntry {
    check: &'static str,
    lambda: f64,
    wf: String,
    status: &'static str,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    report: Option<IdentityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_identities(args: &IdentitiesArgs) -> Result<()> {
    let wfs: Vec<WeightFunction> = if args.wfs.is_empty() {
        vec![
            WeightFunction::constant(1.0).expect("valid"),
            WeightFunction::gaussian(1.0).expect("valid"),
            WeightFunction::exponential_tilt(-0.5).expect("valid"),
        ]
    } else {
        args.wfs
            .iter()
            .map(|s| WeightFunction::parse(s))
            .collect::<Result<_>>()?
    };
    let rates: Vec<f64> = match args.lambda {
        Some(rate) => vec![rate],
        None => DEFAULT_IDENTITY_RATES.to_vec(),
    };

    let mut entries = Vec::new();
    let mut failures = 0usize;
    for &rate in &rates {
        let pop = Exponential::new(rate)?;
        for wf in &wfs {
            for (check, result) in [
                ("kl", check_kl_identity(&pop, wf)),
                ("equilibrium", check_equilibrium_identity(&pop, wf)),
            ] {
                let entry = match result {
                    Ok(report) => {
                        if !report.pass {
                            failures += 1;
                        }
                        IdentityEntry {
                            check,
                            lambda: rate,
                            wf: wf.to_string(),
                            status: if report.pass { "pass" } else { "fail" },
                            report: Some(report),
                            error: None,
                        }
                    }
                    // divergent grid cells are reported but excluded from
                    // the pass/fail verdict
                    Err(err @ (Error::Divergent(_) | Error::Quadrature(_))) => IdentityEntry {
                        check,
                        lambda: rate,
                        wf: wf.to_string(),
                        status: "divergent",
                        report: None,
                        error: Some(err.to_string()),
                    },
                    Err(other) => return Err(other),
                };
                entries.push(entry);
            }
        }
    }

    let output = match args.format {
        OutputFormat::Json => {
            let doc = json!({
                "tolerance": IDENTITY_TOLERANCE,
                "checks": entries,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )
        }
        OutputFormat::Csv => {
            let mut s =
                String::from("check,lambda,wf,status,lhs,rhs,abs_discrepancy,tolerance,pass\n");
            for e in &entries {
                match &e.report {
                    Some(r) => s.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        e.check,
                        e.lambda,
                        e.wf,
                        e.status,
                        format_g17(r.lhs),
                        format_g17(r.rhs),
                        format_g17(r.abs_discrepancy),
                        format_g17(r.tolerance),
                        r.pass
                    )),
                    None => s.push_str(&format!(
                        "{},{},{},{},,,,,\n",
                        e.check, e.lambda, e.wf, e.status
                    )),
                }
            }
            s
        }
    };
    write_output(args.out.as_deref(), &output)?;

    if failures > 0 {
        return Err(Error::SelfCheck(format!(
            "{failures} identity check(s) exceeded the {IDENTITY_TOLERANCE:e} tolerance"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_grammar_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn convergence_csv_sections() {
        let config = ConvergenceConfig::new(
            1.0,
            WeightFunction::constant(1.0).unwrap(),
            vec![4, 8],
            2,
            1,
        );
        let report = run_convergence(&config).unwrap();
        let csv = convergence_csv(&report);
        assert_eq!(
            csv.matches("n,mean_abs_err,max_abs_err,stddev,truth\n")
                .count(),
            2
        );
        assert!(csv.contains("# measure=wcre\n"));
        assert!(csv.contains("# measure=wce\n"));
        assert!(csv.contains("seed=1"));
    }
}
