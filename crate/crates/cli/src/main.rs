//! Command-line front end for the P(2,3,4) point-census toolkit.
//!
//! One binary, five subcommands: `height`, `normalize`, `classify`,
//! `enumerate`, `census`. Data goes to standard output (or `--out`);
//! diagnostics go to standard error. Exit codes: 0 on success, 2 on
//! usage or validation errors, 1 on internal errors (I/O and broken
//! invariants).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use p234::curves::{discriminant, to_marked_curve, torsion_order, TorsionClass};
use p234::enumerate::{count_points, enumerate_points, HeightBound};
use p234::fields::GlobalFieldCtx;
use p234::heights::{height12, normalize, WeightedTriple};
use p234::stats::{
    csv_string, decimal_string, density_report, json_string, run_census, DenominatorMode,
    DensityRow, ExperimentConfig, DEFAULT_SEED,
};
use p234::{Error, Result};

const DEFAULT_CAP_RATIONALS: u32 = 12;
const DEFAULT_CAP_FUNCTION_FIELD: u32 = 24;

#[derive(Parser)]
#[command(
    name = "p234",
    version,
    about = "Census toolkit for points of the weighted projective stack P(2,3,4)",
    long_about = "Exact heights, canonical forms, marked-curve torsion classification,\n\
                  bounded-height enumeration, and census statistics for points of\n\
                  P(2,3,4) over Q or over F_q(t)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the height (Ht^12, exact) of the point given by a triple.
    Height(TripleArgs),
    /// Print the canonical representative of the point given by a triple.
    Normalize(TripleArgs),
    /// Classify the marked point of the curve attached to a triple.
    Classify(ClassifyArgs),
    /// List all points of height at most a bound, one triple per line.
    Enumerate(EnumerateArgs),
    /// Run the census over a grid of bounds and emit the table.
    Census(CensusArgs),
}

#[derive(Args)]
struct TripleArgs {
    /// Point as "x0,x1,x2": exact rationals "n" or "n/d" over Q, or
    /// polynomial quotients "[c0,c1,...]" or "[...]/[...]" over F_q(t).
    #[arg(long, allow_hyphen_values = true)]
    triple: String,
    /// Field: "Q" (default) or a prime q >= 5 selecting F_q(t).
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    triple: TripleArgs,
    /// Largest multiple tried before reporting "nontorsion"
    /// (default: 12 over Q, 24 over a function field).
    #[arg(long)]
    cap: Option<u32>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Height bound: a positive rational B over Q, or a degree d (bound
    /// q^d) over F_q(t).
    #[arg(long)]
    bound: String,
    /// Field: "Q" (default) or a prime q >= 5 selecting F_q(t).
    #[arg(long, default_value = "Q")]
    field: String,
    /// Worker threads; 0 means all available cores.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print only the number of points.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Comma-separated strictly increasing bounds, e.g. "1,2,3".
    #[arg(long)]
    bounds: Option<String>,
    /// Field: "Q" (default) or a prime q >= 5 selecting F_q(t).
    #[arg(long)]
    field: Option<String>,
    /// Torsion cap (default: 12 over Q, 24 over a function field).
    #[arg(long)]
    cap: Option<u32>,
    /// Worker threads; 0 means all available cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Fraction of points classified over F_q(t); must be 1 over Q.
    #[arg(long)]
    sample_rate: Option<f64>,
    /// Seed for the sampling generator.
    #[arg(long)]
    seed: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv (default), json, or text.
    #[arg(long)]
    format: Option<String>,
    /// JSON file with the same keys as these flags; flags take
    /// precedence over the file.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

/// Usage and validation problems exit 2, internal failures exit 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Consistency(_)
        | Error::OrderOutsideSchema { .. }
        | Error::PredicateNotInvariant { .. } => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Height(args) => cmd_height(&args),
        Cmd::Normalize(args) => cmd_normalize(&args),
        Cmd::Classify(args) => cmd_classify(&args),
        Cmd::Enumerate(args) => cmd_enumerate(&args),
        Cmd::Census(args) => cmd_census(args),
    }
}

fn parse_field(s: &str) -> Result<GlobalFieldCtx> {
    if s == "Q" {
        return Ok(GlobalFieldCtx::rationals());
    }
    match s.parse::<u64>() {
        Ok(q) => GlobalFieldCtx::function_field(q),
        Err(_) => Err(Error::Parse(format!(
            "field must be \"Q\" or a prime number, got \"{s}\""
        ))),
    }
}

fn parse_triple(args: &TripleArgs) -> Result<WeightedTriple> {
    let ctx = parse_field(&args.field)?;
    WeightedTriple::parse(&ctx, &args.triple)
}

fn parse_bound(ctx: &GlobalFieldCtx, s: &str) -> Result<HeightBound> {
    match ctx {
        GlobalFieldCtx::Rationals => {
            let elem = ctx.parse_elem(s)?;
            let b = elem.as_rational().expect("rational context").clone();
            HeightBound::rational(b)
        }
        GlobalFieldCtx::FunctionField { q } => {
            let d: u32 = s.parse().map_err(|_| {
                Error::Parse(format!(
                    "over a function field the bound is a degree d >= 0 (height q^d), got \"{s}\""
                ))
            })?;
            HeightBound::function_field(*q, d)
        }
    }
}

fn cmd_height(args: &TripleArgs) -> Result<()> {
    let t = parse_triple(args)?;
    println!("{}", height12(&t));
    Ok(())
}

fn cmd_normalize(args: &TripleArgs) -> Result<()> {
    let t = parse_triple(args)?;
    println!("{}", normalize(&t));
    Ok(())
}

fn cmd_classify(args: &ClassifyArgs) -> Result<()> {
    let t = parse_triple(&args.triple)?;
    let ctx = t.ctx();
    let cap = args.cap.unwrap_or(match ctx {
        GlobalFieldCtx::Rationals => DEFAULT_CAP_RATIONALS,
        GlobalFieldCtx::FunctionField { .. } => DEFAULT_CAP_FUNCTION_FIELD,
    });
    let canonical = normalize(&t);
    let curve = to_marked_curve(&canonical);
    let class = torsion_order(&curve, cap)?;
    let label = match class {
        TorsionClass::Singular => "singular".to_string(),
        TorsionClass::Order(n) => format!("order {n}"),
        TorsionClass::NonTorsion => format!("nontorsion(cap={cap})"),
    };
    println!("{label}");
    println!("a4 = {}", curve.a4());
    println!("a6 = {}", curve.a6());
    println!("delta = {}", discriminant(&curve));
    Ok(())
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<()> {
    let ctx = parse_field(&args.field)?;
    let bound = parse_bound(&ctx, &args.bound)?;
    if args.count_only {
        let n = count_points(&bound, args.threads)?;
        emit(&args.out, format!("{n}\n"))?;
        return Ok(());
    }
    let stdout = std::io::stdout();
    let mut writer: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(stdout.lock())),
    };
    let mut io_err: Option<std::io::Error> = None;
    enumerate_points(&bound, args.threads, |t| {
        if io_err.is_none() {
            if let Err(e) = writeln!(writer, "{t}") {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(Error::Io(e));
    }
    writer.flush()?;
    Ok(())
}

/// Keys accepted in a census config file; mirrors the census flags.
const CONFIG_KEYS: [&str; 8] = [
    "bounds", "field", "cap", "threads", "sample_rate", "seed", "out", "format",
];

#[derive(Default)]
struct CensusSettings {
    bounds: Option<Vec<String>>,
    field: Option<String>,
    cap: Option<u32>,
    threads: Option<usize>,
    sample_rate: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<String>,
}

fn bad_config(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

fn load_config(path: &PathBuf) -> Result<CensusSettings> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| bad_config(format!("config file is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| bad_config("config file must hold a JSON object"))?;
    for key in obj.keys() {
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(bad_config(format!("unknown config key \"{key}\"")));
        }
    }
    let mut s = CensusSettings::default();
    if let Some(v) = obj.get("bounds") {
        let arr = v
            .as_array()
            .ok_or_else(|| bad_config("\"bounds\" must be an array"))?;
        let mut bounds = Vec::with_capacity(arr.len());
        for item in arr {
            match item {
                serde_json::Value::String(b) => bounds.push(b.clone()),
                serde_json::Value::Number(n) => bounds.push(n.to_string()),
                _ => return Err(bad_config("\"bounds\" entries must be strings or numbers")),
            }
        }
        s.bounds = Some(bounds);
    }
    if let Some(v) = obj.get("field") {
        s.field = Some(match v {
            serde_json::Value::String(f) => f.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            _ => return Err(bad_config("\"field\" must be \"Q\" or a number")),
        });
    }
    if let Some(v) = obj.get("cap") {
        let n = v
            .as_u64()
            .ok_or_else(|| bad_config("\"cap\" must be a nonnegative integer"))?;
        s.cap = Some(u32::try_from(n).map_err(|_| bad_config("\"cap\" is too large"))?);
    }
    if let Some(v) = obj.get("threads") {
        let n = v
            .as_u64()
            .ok_or_else(|| bad_config("\"threads\" must be a nonnegative integer"))?;
        s.threads = Some(n as usize);
    }
    if let Some(v) = obj.get("sample_rate") {
        s.sample_rate = Some(
            v.as_f64()
                .ok_or_else(|| bad_config("\"sample_rate\" must be a number"))?,
        );
    }
    if let Some(v) = obj.get("seed") {
        s.seed = Some(
            v.as_u64()
                .ok_or_else(|| bad_config("\"seed\" must be a nonnegative integer"))?,
        );
    }
    if let Some(v) = obj.get("out") {
        let p = v
            .as_str()
            .ok_or_else(|| bad_config("\"out\" must be a path string"))?;
        s.out = Some(PathBuf::from(p));
    }
    if let Some(v) = obj.get("format") {
        let f = v
            .as_str()
            .ok_or_else(|| bad_config("\"format\" must be \"csv\", \"json\", or \"text\""))?;
        s.format = Some(f.to_string());
    }
    Ok(s)
}

enum CensusFormat {
    Csv,
    Json,
    Text,
}

fn cmd_census(args: CensusArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => load_config(path)?,
        None => CensusSettings::default(),
    };
    // Flags take precedence over the config file.
    let merged = CensusSettings {
        bounds: args
            .bounds
            .map(|b| b.split(',').map(|s| s.trim().to_string()).collect())
            .or(file.bounds),
        field: args.field.or(file.field),
        cap: args.cap.or(file.cap),
        threads: args.threads.or(file.threads),
        sample_rate: args.sample_rate.or(file.sample_rate),
        seed: args.seed.or(file.seed),
        out: args.out.or(file.out),
        format: args.format.or(file.format),
    };
    let ctx = parse_field(merged.field.as_deref().unwrap_or("Q"))?;
    let bound_texts = merged
        .bounds
        .ok_or_else(|| bad_config("census needs --bounds (or \"bounds\" in the config file)"))?;
    let mut bounds = Vec::with_capacity(bound_texts.len());
    for text in &bound_texts {
        bounds.push(parse_bound(&ctx, text)?);
    }
    let format = match merged.format.as_deref().unwrap_or("csv") {
        "csv" => CensusFormat::Csv,
        "json" => CensusFormat::Json,
        "text" => CensusFormat::Text,
        other => {
            return Err(Error::Parse(format!(
                "format must be csv, json, or text, got \"{other}\""
            )))
        }
    };
    let cap = merged.cap.unwrap_or(match ctx {
        GlobalFieldCtx::Rationals => DEFAULT_CAP_RATIONALS,
        GlobalFieldCtx::FunctionField { .. } => DEFAULT_CAP_FUNCTION_FIELD,
    });
    let mut cfg = ExperimentConfig::new(bounds, cap);
    cfg.workers = merged.threads.unwrap_or(1);
    cfg.sample_rate = merged.sample_rate.unwrap_or(1.0);
    cfg.seed = merged.seed.unwrap_or(DEFAULT_SEED);
    let rows = run_census(&cfg)?;
    let doc = match format {
        CensusFormat::Csv => csv_string(&rows)?,
        CensusFormat::Json => json_string(&rows)?,
        CensusFormat::Text => text_table(&rows)?,
    };
    emit(&merged.out, doc)
}

fn text_table(rows: &[DensityRow]) -> Result<String> {
    let mut s = String::new();
    for row in rows {
        let torsion: Vec<String> = row
            .n_torsion_by_order
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        let torsion = if torsion.is_empty() {
            "none".to_string()
        } else {
            torsion.join(" ")
        };
        s.push_str(&format!(
            "bound {}: total {}, singular {}, torsion [{}], nontorsion {}, cap {}\n",
            row.bound, row.n_total, row.n_singular, torsion, row.n_nontorsion, row.torsion_cap_used
        ));
    }
    if !rows.is_empty() && rows.iter().all(|r| r.n_total > 0) {
        if let Ok(report) = density_report(rows, DenominatorMode::AllPoints) {
            s.push_str("nongeneric fraction by bound:");
            for r in &report.rows {
                s.push_str(&format!(
                    " {} -> {} ({})",
                    r.bound,
                    r.nongeneric,
                    decimal_string(&r.nongeneric, 6)
                ));
            }
            s.push('\n');
        }
    }
    Ok(s)
}

fn emit(out: &Option<PathBuf>, doc: String) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, doc)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(doc.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}
