//! Command-line surface: validation, metric evaluation, minimal metrics,
//! limit operators, verification suites, and the gap explorer.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or size error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use probmetric_core::gauges::{coreflect, limit_operator, min_limit_gap, reflect, Gauge};
use probmetric_core::generate::{generate, GenProfile};
use probmetric_core::instance::InstanceBundle;
use probmetric_core::metrics::{lp_metric_float, MetricDescriptor};
use probmetric_core::minimal::{eval_metric, hat_with_witness};
use probmetric_core::rat::format_rat;
use probmetric_core::suite::{emit_report, run_suite, ReportFormat, SUITE_NAMES};
use probmetric_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "probmetric",
    about = "Exact probability metrics, minimal metrics, and limit operators on finite metric spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance file, check every invariant, and verify the
    /// canonical round-trip.
    Validate {
        /// Instance file (JSON).
        file: PathBuf,
    },
    /// Evaluate a probability metric between two named random variables.
    Metric {
        /// Metric descriptor, e.g. kyfan:1/2, lp:2, linf, ind, prok:1, tv,
        /// sup(ind,tv), hat(lp:2).
        desc: String,
        /// First random variable name.
        rv1: String,
        /// Second random variable name.
        rv2: String,
        /// Instance file.
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        /// Allow floating evaluation (required for rational lp exponents).
        #[arg(long)]
        float: bool,
    },
    /// Evaluate the minimal probability metric between two named laws.
    Hat {
        /// Metric descriptor.
        desc: String,
        /// First law name.
        law_p: String,
        /// Second law name.
        law_q: String,
        /// Instance file.
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        /// Also print an optimal coupling.
        #[arg(long)]
        witness: bool,
    },
    /// Evaluate the limit operator of a gauge on a named sequence.
    Limit {
        /// Gauge: family:kyfan, family:prokhorov, or basis(d1,d2,...).
        gauge: String,
        /// Sequence name.
        seq: String,
        /// Target random variable name.
        target: String,
        /// Instance file.
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Print the reflection (simple hull) of a gauge.
    Reflect { gauge: String },
    /// Print the coreflection (sup metric) of a gauge.
    Coreflect { gauge: String },
    /// Run a named verification suite over a seed range.
    Suite {
        /// Suite name, or "all".
        name: String,
        /// Seed range `a..b` (half-open) or a single seed.
        #[arg(long, default_value = "0..10")]
        seeds: String,
        /// Floating comparisons with tolerance 1e-9 instead of exact mode.
        #[arg(long)]
        float: bool,
        /// Output format: table, csv, or json.
        #[arg(long, default_value = "table")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for candidate strict-gap instances of the minimal-limit
    /// inequality and write them as instance files.
    GapExplore {
        /// Base seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random version candidates per instance.
        #[arg(long, default_value_t = 8)]
        budget: usize,
        /// Number of generated instances to examine.
        #[arg(long, default_value_t = 20)]
        instances: u64,
        /// Output directory for candidate instance files.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        // library errors are usage or size errors; verification verdicts
        // come back as exit codes through the Ok path
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)?;
            match InstanceBundle::from_json(&text) {
                Ok(bundle) => {
                    let canonical = bundle.to_json();
                    let reparsed = InstanceBundle::from_json(&canonical)?;
                    if reparsed.to_json() != canonical {
                        println!("round-trip mismatch");
                        return Ok(ExitCode::from(1));
                    }
                    println!(
                        "ok: {} points, {} laws, {} random variables, {} sequences",
                        bundle.space.len(),
                        bundle.laws.len(),
                        bundle.random_variables.len(),
                        bundle.sequences.len()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(err @ (Error::Io(_) | Error::Json(_))) => Err(err),
                Err(err) => {
                    println!("invalid: {err}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Metric {
            desc,
            rv1,
            rv2,
            file,
            float,
        } => {
            let bundle = load(&file)?;
            let desc: MetricDescriptor = desc.parse()?;
            let xi = bundle.random_variable(&rv1)?;
            let eta = bundle.random_variable(&rv2)?;
            if desc.needs_float() {
                if !float {
                    return Err(Error::FloatModeRequired(desc.to_string()));
                }
                let MetricDescriptor::LpFloat(p) = &desc else {
                    return Err(Error::FloatModeRequired(desc.to_string()));
                };
                let value = lp_metric_float(p, xi, eta)?;
                println!("{desc}({rv1}, {rv2}) ~ {value}");
            } else {
                let value = eval_metric(&desc, xi, eta)?;
                println!("{desc}({rv1}, {rv2}) = {value} (~ {})", value.approx());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hat {
            desc,
            law_p,
            law_q,
            file,
            witness,
        } => {
            let bundle = load(&file)?;
            let desc: MetricDescriptor = desc.parse()?;
            let p = bundle.law(&law_p)?;
            let q = bundle.law(&law_q)?;
            let (value, coupling) = hat_with_witness(&desc, p, q)?;
            println!("hat({desc})({law_p}, {law_q}) = {value} (~ {})", value.approx());
            if witness {
                let rows: Vec<Vec<String>> = coupling
                    .entries()
                    .iter()
                    .map(|row| row.iter().map(format_rat).collect())
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Limit {
            gauge,
            seq,
            target,
            file,
        } => {
            let bundle = load(&file)?;
            let gauge: Gauge = gauge.parse()?;
            let sequence = bundle.sequence(&seq)?;
            let xi = bundle.random_variable(&target)?;
            let value = limit_operator(&gauge, sequence, xi)?;
            println!("limit[{gauge}]({seq} -> {target}) = {value} (~ {})", value.approx());
            Ok(ExitCode::SUCCESS)
        }
        Command::Reflect { gauge } => {
            let gauge: Gauge = gauge.parse()?;
            println!("{}", reflect(&gauge));
            Ok(ExitCode::SUCCESS)
        }
        Command::Coreflect { gauge } => {
            let gauge: Gauge = gauge.parse()?;
            println!("{}", coreflect(&gauge)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite {
            name,
            seeds,
            float,
            format,
            out,
        } => {
            let seeds = parse_seeds(&seeds)?;
            let format: ReportFormat = format.parse()?;
            let names: Vec<&str> = if name == "all" {
                SUITE_NAMES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut all_passed = true;
            let mut output = String::new();
            for n in names {
                let report = run_suite(n, &seeds, float)?;
                eprintln!(
                    "suite {n}: {} cases, {} failures, {:.2?}",
                    report.cases,
                    report.failures.len(),
                    report.elapsed
                );
                all_passed &= report.passed();
                output.push_str(&emit_report(&report, format));
            }
            match out {
                Some(path) => std::fs::write(path, output)?,
                None => print!("{output}"),
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::GapExplore {
            seed,
            budget,
            instances,
            out,
        } => {
            std::fs::create_dir_all(&out)?;
            let gauges = [
                Gauge::KyFanFamily,
                Gauge::FiniteBasis(vec![
                    MetricDescriptor::Lp(1),
                    MetricDescriptor::Linf,
                ]),
                Gauge::FiniteBasis(vec![
                    MetricDescriptor::KyFan(probmetric_core::rat::ratio(1, 2)),
                    MetricDescriptor::Indicator,
                ]),
            ];
            let mut candidates = Vec::new();
            let mut examined = 0usize;
            for k in 0..instances {
                let bundle = generate(seed.wrapping_add(k), &GenProfile::small())?;
                for (name, seq) in &bundle.sequences {
                    for (g, gauge) in gauges.iter().enumerate() {
                        for (rv_name, xi) in &bundle.random_variables {
                            examined += 1;
                            let report =
                                min_limit_gap(gauge, seq, xi, seed.wrapping_add(k), budget)?;
                            if !report.holds {
                                eprintln!(
                                    "THEOREM VIOLATION at seed {} ({name}, {rv_name}, {gauge})",
                                    seed.wrapping_add(k)
                                );
                                return Ok(ExitCode::from(1));
                            }
                            if report.strict_candidate {
                                let path = out.join(format!(
                                    "gap-candidate-s{}-g{}-{}-{}.json",
                                    seed.wrapping_add(k),
                                    g,
                                    name,
                                    rv_name
                                ));
                                std::fs::write(&path, bundle.to_json())?;
                                println!(
                                    "candidate: gauge={gauge} seq={name} target={rv_name} lower={} upper={} file={}",
                                    report.lower,
                                    report.upper,
                                    path.display()
                                );
                                candidates.push(path);
                            }
                        }
                    }
                }
            }
            println!(
                "examined {examined} instance evaluations, {} strict-gap candidates",
                candidates.len()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(path: &PathBuf) -> Result<InstanceBundle> {
    let text = std::fs::read_to_string(path)?;
    InstanceBundle::from_json(&text)
}

/// Parses `a..b` (half-open) or a single seed.
fn parse_seeds(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::InstanceFormat(format!("cannot parse seed range {spec:?}"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.parse().map_err(|_| bad())?;
        let b: u64 = b.parse().map_err(|_| bad())?;
        if a >= b {
            return Err(bad());
        }
        Ok((a..b).collect())
    } else {
        let s: u64 = spec.parse().map_err(|_| bad())?;
        Ok(vec![s])
    }
}
