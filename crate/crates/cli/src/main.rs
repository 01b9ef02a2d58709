//! `transcover`: exact covering numbers, densities and efficiencies for
//! translates of finite sets in `Z`, `Z_n` and small products, and certified
//! covering-efficiency bounds for unions of rational intervals.
//!
//! Every run prints a single machine-readable document (JSON by default,
//! `--format csv` for tables) echoing its full resolved configuration.
//! Rationals are rendered as `p/q` strings to avoid float loss. Exit codes:
//! 0 on success, 2 on invalid arguments, 3 when a configured resource limit
//! (search cap, state width, node budget, sweep or enumeration budget) stops
//! the computation.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transcover_core::debruijn::{
    covering_density, extract_covering, minimal_period, verify_covering, GraphVariant,
};
use transcover_core::finite_cover::{
    exact_cover_cyclic, exact_cover_interval, greedy_cover_cyclic, verify_group_cover,
    verify_interval_cover, GroupSpec,
};
use transcover_core::random_lab::{efficiency_experiment, ExperimentSpec, TrialMode};
use transcover_core::rat::{parse_rat, rat_to_string, rat_uint, Rat};
use transcover_core::realline::{
    best_lower_bound, default_delta, grid_lower_bound, single_interval_cert,
    two_interval_certs, verify_interval_covering, IntervalUnion, Method, RealCoveringCert,
};
use transcover_core::sweeps::{alpha_upper, sweep_period, sweep_period_k, SweepOptions};
use transcover_core::{CyclicSet, Error, Limits, ZSet};

const SCHEMA: &str = transcover_core::SCHEMA_VERSION;

#[derive(Parser)]
#[command(name = "transcover", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Output format: json (one document) or csv (tabular).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Full,
    Reduced,
}

impl Variant {
    fn graph(self) -> GraphVariant {
        match self {
            Variant::Full => GraphVariant::Full,
            Variant::Reduced => GraphVariant::Reduced,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Full => write!(f, "full"),
            Variant::Reduced => write!(f, "reduced"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Subcommand)]
enum Command {
    /// Covering density nu(S), multiplicity kappa(S) and efficiency of a
    /// finite set of integers.
    Density {
        /// The set, e.g. "0,1,3". Normalized to start at 0.
        #[arg(long)]
        set: String,
        /// Frontier graph to analyze (both give the same answers).
        #[arg(long, value_enum, default_value_t = Variant::Reduced)]
        variant: Variant,
    },
    /// Minimal period of an optimal periodic covering of Z by translates.
    Period {
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Variant::Reduced)]
        variant: Variant,
    },
    /// Extract an optimal periodic covering of Z, or verify a given one.
    Cover {
        #[arg(long)]
        set: String,
        /// Verify the covering given by --period/--offsets instead of
        /// extracting one.
        #[arg(long, requires = "period", requires = "offsets")]
        verify: bool,
        /// Period of the covering to verify.
        #[arg(long)]
        period: Option<u64>,
        /// Offsets of the covering to verify, e.g. "0,3".
        #[arg(long)]
        offsets: Option<String>,
    },
    /// Exact or greedy covering number of Z_n by translates of a set.
    Cyclic {
        /// Residues, e.g. "0,1,5"; reduced mod n.
        #[arg(long)]
        set: String,
        /// Group order n.
        #[arg(long)]
        n: u64,
        /// Exact branch-and-bound (the default).
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        /// Greedy upper bound instead of the exact search.
        #[arg(long)]
        greedy: bool,
        /// Verify the witness given by --witness instead of searching.
        #[arg(long, requires = "witness")]
        verify: bool,
        /// Translates to verify, e.g. "0,3".
        #[arg(long)]
        witness: Option<String>,
    },
    /// Exact covering number tau(S, n) of the discrete window {1, .., n}.
    Interval {
        #[arg(long)]
        set: String,
        /// Window length n.
        #[arg(long)]
        n: u64,
        /// Verify the witness given by --witness instead of searching.
        #[arg(long, requires = "witness")]
        verify: bool,
        /// Translate positions to verify (possibly negative), e.g. "-1,2".
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
    },
    /// Maximum minimal period over all sets of diameter at most s (mode ls),
    /// or over sets of a fixed size (mode lsk).
    Sweep {
        /// ls: all sets; lsk: sets of size --k only.
        #[arg(long)]
        mode: SweepMode,
        /// Largest diameter to sweep.
        #[arg(long)]
        s_max: u64,
        /// Set size (required with --mode lsk).
        #[arg(long)]
        k: Option<u64>,
        /// Split the mask space into this many shards.
        #[arg(long, default_value_t = 1)]
        shards: u64,
        /// Process this shard (0-based).
        #[arg(long, default_value_t = 0)]
        shard: u64,
    },
    /// Minimum covering efficiency over sets of size k and diameter at most
    /// d-max: an upper bound on the worst-case efficiency for that size.
    Alpha {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d_max: u64,
    },
    /// Seeded random-subset experiments measuring covering multiplicity.
    Random {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// High-efficiency threshold as a rational, e.g. "9/10".
        #[arg(long, default_value = "9/10")]
        threshold: String,
        /// Abort a trial (censoring it) after this many search nodes.
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Certified lower bounds on the covering efficiency of a union of
    /// rational intervals, or verification of a covering certificate.
    Intervals {
        /// Semicolon-separated closed intervals, e.g. "0,2;3,4" or
        /// "0,1;3/2,2".
        #[arg(long)]
        spec: String,
        /// auto, I, II, III, IV, or grid.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Grid spacing as a rational; defaults to a near-optimal spacing.
        #[arg(long)]
        delta: Option<String>,
        /// Verify the certificate given by --period/--offsets instead of
        /// computing a bound.
        #[arg(long, requires = "period", requires = "offsets")]
        verify: bool,
        /// Certificate period (rational) to verify.
        #[arg(long)]
        period: Option<String>,
        /// Certificate offsets to verify, semicolon-separated rationals,
        /// e.g. "0;3/2".
        #[arg(long)]
        offsets: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    Ls,
    Lsk,
}

fn main() {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    match run(&cli, &limits) {
        Ok(output) => {
            emit(cli.format, &output);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(if e.is_resource_limit() { 3 } else { 2 });
        }
    }
}

/// A computed document: JSON value plus a tabular (header, rows) rendering.
struct Output {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    /// Key-value table fallback: one row per top-level JSON field.
    fn scalar(json: Value) -> Output {
        let mut rows = Vec::new();
        if let Value::Object(map) = &json {
            for (key, value) in map {
                let rendered = match value {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                rows.push(vec![key.clone(), rendered]);
            }
        }
        Output { json, header: vec!["key".into(), "value".into()], rows }
    }

    fn table(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Output {
        Output { json, header: header.iter().map(|h| h.to_string()).collect(), rows }
    }
}

fn emit(format: Format, output: &Output) {
    match format {
        Format::Json => {
            println!("{}", output.json);
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(std::io::stdout());
            writer.write_record(&output.header).expect("csv write");
            for row in &output.rows {
                writer.write_record(row).expect("csv write");
            }
            writer.flush().expect("csv flush");
        }
    }
}

fn rs(r: &Rat) -> String {
    rat_to_string(r)
}

fn parse_u64_list(what: &'static str, text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u64>()
                .map_err(|_| Error::Parse { what, input: text.to_string() })
        })
        .collect()
}

fn parse_i64_list(what: &'static str, text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| Error::Parse { what, input: text.to_string() })
        })
        .collect()
}

fn parse_rat_list(what: &'static str, text: &str) -> Result<Vec<Rat>, Error> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| parse_rat(p).map_err(|_| Error::Parse { what, input: text.to_string() }))
        .collect()
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn run(cli: &Cli, limits: &Limits) -> Result<Output, Error> {
    match &cli.command {
        Command::Density { set, variant } => {
            let s = ZSet::parse(set)?;
            let d = covering_density(&s, variant.graph(), limits)?;
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "density",
                "set": s.to_string(),
                "variant": variant.to_string(),
                "nu": rs(&d.nu),
                "kappa": rs(&d.kappa),
                "eff": rs(&d.efficiency),
            })))
        }
        Command::Period { set, variant } => {
            let s = ZSet::parse(set)?;
            let p = minimal_period(&s, variant.graph(), limits)?;
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "period",
                "set": s.to_string(),
                "variant": variant.to_string(),
                "period": p.ell,
                "nu": rs(&p.nu),
                "kappa": rs(&p.kappa),
                "eff": rs(&p.efficiency),
                "offsets": join(&p.covering.offsets, ","),
            })))
        }
        Command::Cover { set, verify: true, period, offsets } => {
            let s = ZSet::parse(set)?;
            let period = period.expect("clap requires --period with --verify");
            let offsets =
                parse_u64_list("offsets", offsets.as_deref().expect("clap requires --offsets"))?;
            let outcome = verify_covering(&s, period, &offsets)?;
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "cover",
                "mode": "verify",
                "set": s.to_string(),
                "period": period,
                "offsets": join(&offsets, ","),
                "covers": outcome.covers,
                "multiplicity": rs(&outcome.multiplicity),
            })))
        }
        Command::Cover { set, verify: false, .. } => {
            let s = ZSet::parse(set)?;
            let covering = extract_covering(&s, limits)?;
            let d = covering_density(&s, GraphVariant::Reduced, limits)?;
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "cover",
                "mode": "extract",
                "set": s.to_string(),
                "period": covering.period,
                "offsets": join(&covering.offsets, ","),
                "nu": rs(&d.nu),
                "kappa": rs(&d.kappa),
                "eff": rs(&d.efficiency),
            })))
        }
        Command::Cyclic { set, n, verify: true, witness, .. } => {
            let residues = parse_i64_list("residues", set)?;
            let s = CyclicSet::new(*n, &residues)?;
            let witness =
                parse_u64_list("witness", witness.as_deref().expect("clap requires --witness"))?;
            let group = GroupSpec::cyclic(*n)?;
            let covers = verify_group_cover(&group, s.residues(), &witness);
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "cyclic",
                "mode": "verify",
                "set": s.to_string(),
                "n": n,
                "witness": join(&witness, ","),
                "covers": covers,
            })))
        }
        Command::Cyclic { set, n, exact, greedy, verify: false, .. } => {
            debug_assert!(!(*exact && *greedy), "clap enforces the conflict");
            let residues = parse_i64_list("residues", set)?;
            let s = CyclicSet::new(*n, &residues)?;
            let result =
                if *greedy { greedy_cover_cyclic(&s)? } else { exact_cover_cyclic(&s, limits)? };
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "cyclic",
                "mode": if *greedy { "greedy" } else { "exact" },
                "set": s.to_string(),
                "n": n,
                "tau": result.tau,
                "witness": join(&result.witness, ","),
                "kappa": rs(&result.kappa),
                "eff": rs(&result.efficiency),
                "exact": result.exact,
            })))
        }
        Command::Interval { set, n, verify: true, witness } => {
            let s = ZSet::parse(set)?;
            let witness =
                parse_i64_list("witness", witness.as_deref().expect("clap requires --witness"))?;
            let covers = verify_interval_cover(&s, *n, &witness);
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "interval",
                "mode": "verify",
                "set": s.to_string(),
                "n": n,
                "witness": join(&witness, ","),
                "covers": covers,
            })))
        }
        Command::Interval { set, n, verify: false, .. } => {
            let s = ZSet::parse(set)?;
            let result = exact_cover_interval(&s, *n, limits)?;
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "interval",
                "set": s.to_string(),
                "n": n,
                "tau": result.tau,
                "witness": join(&result.witness, ","),
                "kappa": rs(&result.kappa),
                "eff": rs(&result.efficiency),
            })))
        }
        Command::Sweep { mode, s_max, k, shards, shard } => {
            let opts = SweepOptions { shards: *shards, shard: *shard };
            let (rows, k_echo) = match mode {
                SweepMode::Ls => {
                    if k.is_some() {
                        return Err(Error::InvalidParameter(
                            "--k only applies to --mode lsk".into(),
                        ));
                    }
                    (sweep_period(*s_max, opts, limits)?, Value::Null)
                }
                SweepMode::Lsk => {
                    let k = k.ok_or_else(|| {
                        Error::InvalidParameter("--mode lsk requires --k".into())
                    })?;
                    (sweep_period_k(*s_max, k, opts, limits)?, json!(k))
                }
            };
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "s": row.s,
                        "k": row.k,
                        "ell": row.ell,
                        "witness": row.witness.as_ref().map(|w| w.to_string()),
                        "bracketed": row.bracketed,
                    })
                })
                .collect();
            let doc = json!({
                "schema": SCHEMA,
                "command": "sweep",
                "mode": match mode { SweepMode::Ls => "ls", SweepMode::Lsk => "lsk" },
                "s_max": s_max,
                "k": k_echo,
                "shards": shards,
                "shard": shard,
                "rows": json_rows,
            });
            match mode {
                SweepMode::Ls => {
                    // Matches tables/table1.csv: witness only on record rows.
                    let csv_rows = rows
                        .iter()
                        .map(|row| {
                            vec![
                                row.s.to_string(),
                                row.ell.to_string(),
                                row.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                            ]
                        })
                        .collect();
                    Ok(Output::table(doc, &["s", "ell", "witness"], csv_rows))
                }
                SweepMode::Lsk => {
                    // Matches tables/table2.csv.
                    let csv_rows = rows
                        .iter()
                        .map(|row| {
                            vec![
                                row.s.to_string(),
                                row.k.expect("lsk rows carry k").to_string(),
                                row.ell.to_string(),
                                row.bracketed.to_string(),
                            ]
                        })
                        .collect();
                    Ok(Output::table(doc, &["s", "k", "ell", "bracketed"], csv_rows))
                }
            }
        }
        Command::Alpha { k, d_max } => {
            let row = alpha_upper(*k, *d_max, limits)?;
            let doc = json!({
                "schema": SCHEMA,
                "command": "alpha",
                "k": row.k,
                "d_max": row.d_max,
                "efficiency": rs(&row.efficiency),
                "witness": row.witness.to_string(),
            });
            let csv_rows = vec![vec![
                row.k.to_string(),
                row.d_max.to_string(),
                rs(&row.efficiency),
                row.witness.to_string(),
            ]];
            Ok(Output::table(doc, &["k", "d_max", "efficiency", "witness"], csv_rows))
        }
        Command::Random { n, k, trials, mode, seed, threshold, node_budget } => {
            let mode = match mode {
                Mode::Exact => TrialMode::Exact,
                Mode::Greedy => TrialMode::Greedy,
            };
            let mut spec = ExperimentSpec::new(*n, *k, *trials, mode, *seed);
            spec.threshold = parse_rat(threshold)?;
            let limits = Limits { node_budget: node_budget.or(limits.node_budget), ..limits.clone() };
            let report = efficiency_experiment(&spec, &limits)?;
            let kappas: Vec<Value> = report.kappas.iter().map(|x| json!(rs(x))).collect();
            let doc = json!({
                "schema": SCHEMA,
                "command": "random",
                "n": n,
                "k": k,
                "trials": trials,
                "mode": spec.mode.to_string(),
                "seed": seed,
                "threshold": rs(&spec.threshold),
                "kappas": kappas,
                "censored": report.censored,
                "min_kappa": report.min_kappa.as_ref().map(rs),
                "max_kappa": report.max_kappa.as_ref().map(rs),
                "mean_kappa": report.mean_kappa.as_ref().map(rs),
                "high_efficiency_fraction": report.high_efficiency_fraction.as_ref().map(rs),
            });
            let csv_rows = report
                .kappas
                .iter()
                .enumerate()
                .map(|(i, x)| vec![i.to_string(), rs(x)])
                .collect();
            Ok(Output::table(doc, &["index", "kappa"], csv_rows))
        }
        Command::Intervals { spec, method, delta, verify: true, period, offsets } => {
            let s = IntervalUnion::parse(spec)?;
            let period = parse_rat(period.as_deref().expect("clap requires --period"))?;
            let offsets =
                parse_rat_list("offsets", offsets.as_deref().expect("clap requires --offsets"))?;
            if offsets.is_empty() {
                return Err(Error::InvalidParameter("need at least one offset".into()));
            }
            let mut offsets = offsets;
            offsets.sort();
            let efficiency = &period / (rat_uint(offsets.len() as u64) * s.measure());
            let cert = RealCoveringCert {
                period,
                offsets,
                efficiency: efficiency.clone(),
                method: parse_method(method)?.unwrap_or(Method::Grid),
            };
            let covers = verify_interval_covering(&s, &cert);
            let _ = delta;
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "intervals",
                "mode": "verify",
                "spec": s.to_string(),
                "period": rs(&cert.period),
                "offsets": join(cert.offsets.iter().map(rat_to_string), ";"),
                "covers": covers,
                "efficiency": rs(&efficiency),
            })))
        }
        Command::Intervals { spec, method, delta, verify: false, .. } => {
            let s = IntervalUnion::parse(spec)?;
            // Non-positive spacings are rejected by the grid discretizer.
            let delta = match delta {
                Some(text) => parse_rat(text)?,
                None => default_delta(&s),
            };
            let mut notes: Vec<String> = Vec::new();
            let cert = match parse_method(method)? {
                None => {
                    let bound = best_lower_bound(&s, &delta, limits)?;
                    notes = bound.notes;
                    bound.certificate
                }
                Some(Method::I) => single_interval_cert(&s),
                Some(Method::Grid) => grid_lower_bound(&s, &delta, limits)?.ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "no delta-cell of width {} fits inside S; decrease --delta",
                        rs(&delta)
                    ))
                })?,
                Some(wanted) => two_interval_certs(&s)?
                    .into_iter()
                    .find(|c| c.method == wanted)
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "method {wanted} does not apply to this union (precondition not met)"
                        ))
                    })?,
            };
            Ok(Output::scalar(json!({
                "schema": SCHEMA,
                "command": "intervals",
                "mode": "bound",
                "spec": s.to_string(),
                "method": cert.method.to_string(),
                "delta": rs(&delta),
                "efficiency": rs(&cert.efficiency),
                "period": rs(&cert.period),
                "offsets": join(cert.offsets.iter().map(rat_to_string), ";"),
                "notes": notes,
            })))
        }
    }
}

fn parse_method(text: &str) -> Result<Option<Method>, Error> {
    match text {
        "auto" => Ok(None),
        "I" => Ok(Some(Method::I)),
        "II" => Ok(Some(Method::II)),
        "III" => Ok(Some(Method::III)),
        "IV" => Ok(Some(Method::IV)),
        "grid" => Ok(Some(Method::Grid)),
        other => Err(Error::Parse { what: "method", input: other.to_string() }),
    }
}
