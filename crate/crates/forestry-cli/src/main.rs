//! `forestry`: command-line front end.
//!
//! Every run prints a single JSON object `{"config": ..., "result": ...,
//! "meta": ...}` to stdout (or CSV for tabular outputs). The `config`
//! field echoes the fully resolved parameters; `meta` carries timestamps
//! and is the only part excluded from byte-for-byte comparisons of
//! repeated runs. Failures print `{"error": {...}}` to stderr and exit
//! nonzero: 2 for usage errors, 3 for cap refusals, 1 otherwise.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use forestry::asymptotics::{
    concentration_window_dense, concentration_window_sparse, solve_saddle_point,
    tree_count_asymptotic, tree_count_via_probability_identity, weighted_forest_sum_asymptotic,
};
use forestry::count::{
    expected_induced_rooted_forests, expected_induced_trees, forests_containing_forest,
    ln_bigrational, ln_biguint, rooted_forest_bounds_diagnostic,
    rooted_forests_bounded_degree_exact, trees_bounded_degree_exact, trees_containing_forest,
    trees_with_independent_set_and_degrees, weighted_forest_sum_direct, MAX_EXACT_N,
};
use forestry::gamma::a_delta_sequence;
use forestry::graph::{DegreeSequence, ForestShape};
use forestry::rg::{concentration_experiment, moment_experiment};
use forestry::verify::{run_suite, Caps, Suite};
use forestry::Error as LibError;

#[derive(Parser)]
#[command(
    name = "forestry",
    about = "Exact enumeration, asymptotics, and random-graph experiments for degree-bounded trees and forests",
    version
)]
struct Cli {
    /// Output format for the primary payload.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the primary payload (or experiment records) to this path
    /// instead of the default destination.
    #[arg(long, global = true)]
    output_path: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Structural constants alpha_delta and a_delta for delta = 3..=max.
    Constants {
        #[arg(long)]
        delta_max: u32,
        /// Absolute tolerance for the root of the defining equation.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Exact counts (arbitrary precision, printed as decimal strings).
    Count {
        #[command(subcommand)]
        kind: CountKind,
    },
    /// Exact first moments E Y_k / E Z_k for G(n, p).
    Moment {
        #[arg(long, value_enum)]
        kind: MomentKind,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        /// Edge probability; "a/b" stays exact, decimals are converted.
        #[arg(long)]
        p: String,
        #[arg(long)]
        delta: u32,
    },
    /// Log-scale asymptotic estimates.
    Asymptotic {
        #[command(subcommand)]
        kind: AsymptoticKind,
    },
    /// Concentration-window predictions.
    Window {
        #[command(subcommand)]
        regime: WindowRegime,
    },
    /// Monte Carlo experiments with seeded, reproducible trials.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Run the brute-force verification suites.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Scaled-down instance sizes for a fast smoke run.
        #[arg(long)]
        quick: bool,
        /// Worker threads for the experiment-backed checks.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CountKind {
    /// Labelled trees on [n] with maximum degree at most delta.
    Tree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
    },
    /// Labelled rooted forests with m components, degree bounds on
    /// vertices and roots.
    RootedForest {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        delta: u32,
    },
    /// Trees on [n] containing a fixed induced forest of the given shape.
    ContainingTree {
        #[arg(long)]
        n: u64,
        /// Component sizes, comma-separated (e.g. "2,3").
        #[arg(long)]
        shape: String,
    },
    /// Rooted forests on [n] with h components containing a fixed induced
    /// forest of the given shape.
    ContainingForest {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        shape: String,
    },
    /// Trees with 1..=m independent and a fixed degree sequence.
    DegreeSequence {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Degrees, comma-separated (e.g. "1,2,1").
        #[arg(long)]
        degrees: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MomentKind {
    Y,
    Z,
}

#[derive(Subcommand)]
enum AsymptoticKind {
    /// Main term of the degree-bounded tree count.
    Tree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
        /// Also evaluate the exact count and report the ratio (n within
        /// the exact cap only).
        #[arg(long)]
        compare_exact: bool,
    },
    /// Saddle-point main term of the weighted rooted-forest sum.
    WeightedForest {
        #[arg(long)]
        n: u64,
        /// Weight; "a/b" stays exact for the comparison path.
        #[arg(long)]
        w: String,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        compare_exact: bool,
    },
    /// Exact tilted-sum route to the tree count (matches exact counts to
    /// floating accuracy; any positive tilt gives the same value).
    ProbabilityIdentity {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
        /// Tilt point; defaults to alpha_delta.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        compare_exact: bool,
    },
    /// Per-m envelope diagnostic for the rooted-forest counts.
    ForestBounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
    },
}

#[derive(Subcommand)]
enum WindowRegime {
    /// Two-point window for constant p.
    Dense {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Sparse-regime window [k_minus_eps, k_plus_eps].
    Sparse {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        epsilon: f64,
    },
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Monte Carlo means of Y_k and Z_k against the exact expectations.
    Moment {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: String,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Observed maxima T / F / unbounded F against the dense window.
    Concentration {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Exact-search cap override (refusal past it).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Codecs,
    Counts,
    Asymptotics,
    Search,
}

enum CliError {
    Usage(String),
    Cap(String),
    Internal(String),
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::CapExceeded(m) => CliError::Cap(m),
            LibError::InvalidParameter(m)
            | LibError::NotATree(m)
            | LibError::NotARootedForest(m)
            | LibError::MalformedCode(m) => CliError::Usage(m),
            LibError::Bracketing(m) | LibError::IdentityMismatch(m) => CliError::Internal(m),
        }
    }
}

/// Parse "a/b" exactly; convert bare decimals to the exactly-represented
/// decimal rational with a warning.
fn parse_rational(text: &str, what: &str) -> Result<BigRational, CliError> {
    let bad = |m: String| CliError::Usage(m);
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| bad(format!("{what}: bad numerator in {text:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| bad(format!("{what}: bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(bad(format!("{what}: zero denominator")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        let digits = format!("{int_part}{frac_part}");
        let num: BigInt = digits
            .parse()
            .map_err(|_| bad(format!("{what}: cannot parse {text:?}")))?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = BigRational::new(num, den);
        eprintln!("warning: {what} {text:?} substituted by the exact rational {value}");
        return Ok(value);
    }
    let num: BigInt = text
        .parse()
        .map_err(|_| bad(format!("{what}: cannot parse {text:?}")))?;
    Ok(BigRational::from(num))
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("{what}: bad entry {part:?}")))
        })
        .collect()
}

fn rational_to_json(r: &BigRational) -> Value {
    json!({
        "rational": r.to_string(),
        "decimal": r.to_f64(),
    })
}

struct Emitter {
    format: Format,
    output_path: Option<PathBuf>,
    started: Instant,
}

impl Emitter {
    fn emit_json(&self, config: Value, result: Value) -> Result<(), CliError> {
        if self.format == Format::Csv {
            return Err(CliError::Usage(
                "csv is only available for tabular outputs (constants, experiment summaries)"
                    .to_string(),
            ));
        }
        let payload = json!({
            "config": config,
            "result": result,
            "meta": self.meta(),
        });
        self.write_text(&format!("{payload}"))
    }

    fn emit_table(
        &self,
        config: Value,
        result: Value,
        header: &str,
        rows: Vec<String>,
    ) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                let payload = json!({
                    "config": config,
                    "result": result,
                    "meta": self.meta(),
                });
                self.write_text(&format!("{payload}"))
            }
            Format::Csv => {
                let mut text = String::from(header);
                for row in rows {
                    text.push('\n');
                    text.push_str(&row);
                }
                self.write_text(&text)
            }
        }
    }

    fn meta(&self) -> Value {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        json!({
            "timestamp_unix_ms": now,
            "wall_ms": self.started.elapsed().as_secs_f64() * 1e3,
        })
    }

    fn write_text(&self, text: &str) -> Result<(), CliError> {
        match &self.output_path {
            Some(path) => std::fs::write(path, format!("{text}\n"))
                .map_err(|e| CliError::Internal(format!("writing {}: {e}", path.display()))),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    }
}

/// Default directory for experiment record files.
fn output_dir() -> PathBuf {
    std::env::var_os("FORESTRY_OUTPUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitter = Emitter {
        format: cli.format,
        output_path: cli.output_path.clone(),
        started: Instant::now(),
    };
    match run(cli, &emitter) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, message, code) = match err {
                CliError::Usage(m) => ("usage", m, 2),
                CliError::Cap(m) => ("cap_exceeded", m, 3),
                CliError::Internal(m) => ("internal", m, 1),
            };
            let obj = json!({"error": {"kind": kind, "message": message}});
            eprintln!("{obj}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli, emitter: &Emitter) -> Result<(), CliError> {
    match cli.command {
        Command::Constants { delta_max, tol } => {
            let table = a_delta_sequence(delta_max, tol)?;
            let config = json!({"command": "constants", "delta_max": delta_max, "tol": tol});
            let result = json!({"constants": table});
            let rows = table
                .iter()
                .map(|c| format!("{},{},{},{}", c.delta, c.alpha, c.a, c.tolerance))
                .collect();
            emitter.emit_table(config, result, "delta,alpha,a,tolerance", rows)
        }

        Command::Count { kind } => {
            let (config, count) = match kind {
                CountKind::Tree { n, delta } => (
                    json!({"command": "count", "kind": "tree", "n": n, "delta": delta}),
                    trees_bounded_degree_exact(n, delta)?,
                ),
                CountKind::RootedForest { n, m, delta } => (
                    json!({"command": "count", "kind": "rooted-forest", "n": n, "m": m, "delta": delta}),
                    rooted_forests_bounded_degree_exact(n, m, delta)?,
                ),
                CountKind::ContainingTree { n, shape } => {
                    let sizes = parse_u64_list(&shape, "--shape")?;
                    let shape_obj = ForestShape::new(&sizes)?;
                    (
                        json!({"command": "count", "kind": "containing-tree", "n": n, "shape": shape_obj.component_sizes()}),
                        trees_containing_forest(n, &shape_obj)?,
                    )
                }
                CountKind::ContainingForest { n, h, shape } => {
                    let sizes = parse_u64_list(&shape, "--shape")?;
                    let shape_obj = ForestShape::new(&sizes)?;
                    (
                        json!({"command": "count", "kind": "containing-forest", "n": n, "h": h, "shape": shape_obj.component_sizes()}),
                        forests_containing_forest(n, h, &shape_obj)?,
                    )
                }
                CountKind::DegreeSequence { n, m, degrees } => {
                    let degs = parse_u64_list(&degrees, "--degrees")?
                        .into_iter()
                        .map(|d| {
                            u32::try_from(d)
                                .map_err(|_| CliError::Usage("degree too large".to_string()))
                        })
                        .collect::<Result<Vec<u32>, _>>()?;
                    let seq = DegreeSequence::new(&degs)?;
                    (
                        json!({"command": "count", "kind": "degree-sequence", "n": n, "m": m, "degrees": degs}),
                        trees_with_independent_set_and_degrees(n, m, &seq)?,
                    )
                }
            };
            emitter.emit_json(config, json!({"count": count.to_string()}))
        }

        Command::Moment {
            kind,
            n,
            k,
            p,
            delta,
        } => {
            let p = parse_rational(&p, "--p")?;
            if p.is_negative() || p > BigRational::from(BigInt::from(1)) {
                return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
            }
            let (name, value) = match kind {
                MomentKind::Y => ("Y", expected_induced_trees(n, k, &p, delta)?),
                MomentKind::Z => ("Z", expected_induced_rooted_forests(n, k, &p, delta)?),
            };
            let config = json!({
                "command": "moment", "kind": name, "n": n, "k": k,
                "p": p.to_string(), "delta": delta,
            });
            emitter.emit_json(config, json!({"expectation": rational_to_json(&value)}))
        }

        Command::Asymptotic { kind } => match kind {
            AsymptoticKind::Tree {
                n,
                delta,
                compare_exact,
            } => {
                let est = tree_count_asymptotic(n, delta)?;
                let config = json!({
                    "command": "asymptotic", "kind": "tree", "n": n, "delta": delta,
                    "compare_exact": compare_exact,
                });
                let mut result = serde_json::to_value(est).expect("serializable");
                result["n"] = json!(n);
                result["delta"] = json!(delta);
                if compare_exact {
                    check_exact_cap_for_compare(n)?;
                    let exact = trees_bounded_degree_exact(n, delta)?;
                    let ratio = (est.log_value - ln_biguint(&exact)).exp();
                    result["exact"] = json!(exact.to_string());
                    result["ratio_to_exact"] = json!(ratio);
                }
                emitter.emit_json(config, result)
            }
            AsymptoticKind::WeightedForest {
                n,
                w,
                delta,
                compare_exact,
            } => {
                let w_rational = parse_rational(&w, "--w")?;
                let w_float = w_rational
                    .to_f64()
                    .ok_or_else(|| CliError::Usage("--w does not fit a float".to_string()))?;
                let est = weighted_forest_sum_asymptotic(n, w_float, delta)?;
                let sp = solve_saddle_point(n, w_float, delta)?;
                let config = json!({
                    "command": "asymptotic", "kind": "weighted-forest", "n": n,
                    "w": w_rational.to_string(), "delta": delta, "compare_exact": compare_exact,
                });
                let mut result = serde_json::to_value(est).expect("serializable");
                result["n"] = json!(n);
                result["delta"] = json!(delta);
                result["w"] = json!(w_float);
                result["r"] = json!(sp.r);
                result["beta"] = json!(sp.beta);
                if compare_exact {
                    check_exact_cap_for_compare(n)?;
                    let exact = weighted_forest_sum_direct(n, &w_rational, delta)?;
                    let ratio = (est.log_value - ln_bigrational(&exact)).exp();
                    result["exact"] = json!(exact.to_string());
                    result["ratio_to_exact"] = json!(ratio);
                }
                emitter.emit_json(config, result)
            }
            AsymptoticKind::ProbabilityIdentity {
                n,
                delta,
                alpha,
                compare_exact,
            } => {
                let alpha = match alpha {
                    Some(a) => a,
                    None => forestry::gamma::solve_alpha(delta, 1e-12)?.alpha,
                };
                let est = tree_count_via_probability_identity(n, delta, alpha)?;
                let config = json!({
                    "command": "asymptotic", "kind": "probability-identity",
                    "n": n, "delta": delta, "alpha": alpha, "compare_exact": compare_exact,
                });
                let mut result = serde_json::to_value(est).expect("serializable");
                result["n"] = json!(n);
                result["delta"] = json!(delta);
                result["alpha"] = json!(alpha);
                if compare_exact {
                    check_exact_cap_for_compare(n)?;
                    let exact = trees_bounded_degree_exact(n, delta)?;
                    result["exact"] = json!(exact.to_string());
                    result["ratio_to_exact"] = json!((est.log_value - ln_biguint(&exact)).exp());
                }
                emitter.emit_json(config, result)
            }
            AsymptoticKind::ForestBounds { n, delta } => {
                let rows = rooted_forest_bounds_diagnostic(n, delta)?;
                let config =
                    json!({"command": "asymptotic", "kind": "forest-bounds", "n": n, "delta": delta});
                let result = json!({"rows": rows});
                let csv_rows = rows
                    .iter()
                    .map(|r| format!("{},{},{},{}", r.m, r.log_ratio, r.ratio, r.mth_root))
                    .collect();
                emitter.emit_table(config, result, "m,log_ratio,ratio,mth_root", csv_rows)
            }
        },

        Command::Window { regime } => {
            let (config, pred) = match regime {
                WindowRegime::Dense {
                    n,
                    p,
                    delta,
                    epsilon,
                } => (
                    json!({"command": "window", "regime": "dense", "n": n, "p": p, "delta": delta, "epsilon": epsilon}),
                    concentration_window_dense(n, p, delta, epsilon)?,
                ),
                WindowRegime::Sparse {
                    n,
                    p,
                    delta,
                    epsilon,
                } => (
                    json!({"command": "window", "regime": "sparse", "n": n, "p": p, "delta": delta, "epsilon": epsilon}),
                    concentration_window_sparse(n, p, delta, epsilon)?,
                ),
            };
            emitter.emit_json(config, serde_json::to_value(pred).expect("serializable"))
        }

        Command::Experiment { kind } => match kind {
            ExperimentKind::Moment {
                n,
                k,
                p,
                delta,
                trials,
                seed,
                jobs,
            } => {
                let p = parse_rational(&p, "--p")?;
                let result = moment_experiment(n, k, &p, delta, trials, seed, jobs)?;
                let records_path = cli.output_path.clone().unwrap_or_else(|| {
                    output_dir().join(format!("moment-n{n}-k{k}-d{delta}-seed{seed}.jsonl"))
                });
                write_jsonl(
                    &records_path,
                    result.records.iter().map(|r| serde_json::to_value(r).unwrap()),
                )?;
                let config = json!({
                    "command": "experiment", "kind": "moment", "n": n, "k": k,
                    "p": result.p_rational, "delta": delta, "trials": trials,
                    "seed": seed, "jobs": jobs, "records_path": records_path.display().to_string(),
                });
                let summary = serde_json::to_value(&result).expect("serializable");
                let header = "side,sample_mean,std_error,exact_expectation,z_score";
                let rows = vec![
                    format!(
                        "Y,{},{},{},{}",
                        result.y.sample_mean,
                        result.y.std_error,
                        result.y.exact_expectation,
                        result.y.z_score
                    ),
                    format!(
                        "Z,{},{},{},{}",
                        result.z.sample_mean,
                        result.z.std_error,
                        result.z.exact_expectation,
                        result.z.z_score
                    ),
                ];
                // Summary goes to stdout; records always to the JSONL file.
                let emitter = Emitter {
                    format: emitter.format,
                    output_path: None,
                    started: emitter.started,
                };
                emitter.emit_table(config, summary, header, rows)
            }
            ExperimentKind::Concentration {
                n,
                p,
                delta,
                trials,
                seed,
                epsilon,
                cap,
                jobs,
            } => {
                let result =
                    concentration_experiment(n, p, delta, trials, seed, epsilon, cap, jobs)?;
                let records_path = cli.output_path.clone().unwrap_or_else(|| {
                    output_dir().join(format!("concentration-n{n}-d{delta}-seed{seed}.jsonl"))
                });
                write_jsonl(
                    &records_path,
                    result.records.iter().map(|r| serde_json::to_value(r).unwrap()),
                )?;
                let config = json!({
                    "command": "experiment", "kind": "concentration", "n": n, "p": p,
                    "delta": delta, "trials": trials, "seed": seed, "epsilon": epsilon,
                    "cap": cap, "jobs": jobs, "records_path": records_path.display().to_string(),
                });
                let summary = serde_json::to_value(&result).expect("serializable");
                let header = "observable,fraction_in_window,fraction_in_window_slack2";
                let rows = vec![
                    format!(
                        "T,{},{}",
                        result.fraction_t_in_window, result.fraction_t_in_window_slack2
                    ),
                    format!(
                        "F,{},{}",
                        result.fraction_f_in_window, result.fraction_f_in_window_slack2
                    ),
                ];
                let emitter = Emitter {
                    format: emitter.format,
                    output_path: None,
                    started: emitter.started,
                };
                emitter.emit_table(config, summary, header, rows)
            }
        },

        Command::Verify { suite, quick, jobs } => {
            let mut caps = if quick { Caps::quick() } else { Caps::acceptance() };
            caps.jobs = jobs;
            let suite = match suite {
                SuiteArg::Codecs => Suite::Codecs,
                SuiteArg::Counts => Suite::Counts,
                SuiteArg::Asymptotics => Suite::Asymptotics,
                SuiteArg::Search => Suite::Search,
            };
            let checks = run_suite(suite, &caps);
            for check in &checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                eprintln!("[{status}] {} {}: {}", check.id, check.name, check.details);
            }
            let all_passed = checks.iter().all(|c| c.passed);
            let config = json!({"command": "verify", "quick": quick});
            emitter.emit_json(config, json!({"checks": checks, "passed": all_passed}))?;
            if all_passed {
                Ok(())
            } else {
                Err(CliError::Internal("verification failed".to_string()))
            }
        }
    }
}

fn check_exact_cap_for_compare(n: u64) -> Result<(), CliError> {
    if n > MAX_EXACT_N {
        return Err(CliError::Cap(format!(
            "--compare-exact needs n <= {MAX_EXACT_N}, got {n}"
        )));
    }
    Ok(())
}

fn write_jsonl(
    path: &PathBuf,
    records: impl Iterator<Item = Value>,
) -> Result<(), CliError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Internal(format!("creating {}: {e}", path.display())))?;
    let mut out = std::io::BufWriter::new(file);
    for record in records {
        writeln!(out, "{record}")
            .map_err(|e| CliError::Internal(format!("writing {}: {e}", path.display())))?;
    }
    out.flush()
        .map_err(|e| CliError::Internal(format!("flushing {}: {e}", path.display())))
}
