use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bridgevar::exactalg::{parse_uni, ExactError};
use bridgevar::knotprops::{commensurability_certificate, trace_field_report, KnotClass, KnotError};
use bridgevar::models::{c_model, d_model, d_split, x_model};
use bridgevar::newton::int_polygon;
use bridgevar::report::{analyze, sweep_row, SweepRow};
use bridgevar::serial::rat_to_string;
use bridgevar::suites::{self, CheckLine};
use bridgevar::Var;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bridgevar", version, about = "Character varieties and invariants of the double twist knots J(k,l)")]
struct Cli {
    /// Emit JSON (sorted keys) instead of aligned text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full report for one knot
    Analyze {
        #[arg(short, allow_hyphen_values = true)]
        k: i64,
        #[arg(short, allow_hyphen_values = true)]
        l: i64,
        /// Include per-stage wall-clock timings
        #[arg(long)]
        timing: bool,
    },
    /// All (k,l) with 2 <= |k| <= kmax, 2 <= |l| <= lmax, l even
    Sweep {
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, default_value_t = 10)]
        lmax: i64,
        /// Write rows here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RowFormat::Csv)]
        format: RowFormat,
        /// Worker threads (default: available cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a regression suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Index range for the identity suite
        #[arg(long, default_value_t = 20)]
        range: i64,
        #[arg(long, default_value_t = 7)]
        kmax: i64,
        #[arg(long, default_value_t = 4)]
        nmax: i64,
        /// Seed for the randomized oracles (BRIDGEVAR_SEED overrides)
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Defining equation of a curve model
    Model {
        #[arg(short, allow_hyphen_values = true)]
        k: i64,
        #[arg(short, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, value_enum, default_value_t = ModelChoice::D)]
        kind: ModelChoice,
    },
    /// Trace-field polynomial and irreducibility data
    Tracefield {
        #[arg(short, allow_hyphen_values = true)]
        k: i64,
        #[arg(short, allow_hyphen_values = true)]
        l: i64,
    },
    /// Newton polygon of an integer polynomial at a prime
    Newton {
        /// e.g. "x^4 + 2*x^2 - 8"
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(short)]
        p: u64,
    },
    /// Fibered knot or a nonintegral-character witness
    Commensurability {
        #[arg(short, allow_hyphen_values = true)]
        k: i64,
        #[arg(short, allow_hyphen_values = true)]
        l: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RowFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Newton,
    Riley,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelChoice {
    C,
    X,
    D,
    Split,
}

enum Failure {
    Input(String),
    Internal(String),
    /// stdout closed early (e.g. piped into `head`)
    Pipe,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Pipe
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Analyze { k, l, timing } => {
            let rep = analyze(k, l, timing).map_err(internal)?;
            emit(&serde_json::to_value(&rep).map_err(internal)?, json)?;
            Ok(true)
        }
        Cmd::Sweep { kmax, lmax, out, format, jobs } => sweep(kmax, lmax, out, format, jobs, json),
        Cmd::Verify { suite, range, kmax, nmax, seed } => {
            let seed = seed_override(seed)?;
            let mut lines: Vec<CheckLine> = Vec::new();
            if matches!(suite, Suite::Identities | Suite::All) {
                lines.extend(suites::identities(range));
            }
            if matches!(suite, Suite::Newton | Suite::All) {
                lines.extend(suites::newton(12, 81).map_err(internal)?);
            }
            if matches!(suite, Suite::Riley | Suite::All) {
                lines.extend(suites::riley(kmax, nmax, seed));
            }
            let ok = suites::all_pass(&lines);
            if json {
                let v = json!({ "schema": 1, "seed": seed, "pass": ok, "checks": lines });
                emit(&v, true)?;
            } else {
                let mut w = io::stdout().lock();
                for c in &lines {
                    writeln!(w, "{} [{}] {}  {}", if c.pass { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail)?;
                }
                let failed = lines.iter().filter(|c| !c.pass).count();
                writeln!(w, "{} checks, {} failed", lines.len(), failed)?;
            }
            Ok(ok)
        }
        Cmd::Model { k, l, kind } => {
            let v = match kind {
                ModelChoice::C => serde_json::to_value(c_model(k, l).map_err(model_failure)?),
                ModelChoice::X => serde_json::to_value(x_model(k, l).map_err(model_failure)?),
                ModelChoice::D => serde_json::to_value(d_model(k, l).map_err(model_failure)?),
                ModelChoice::Split => {
                    if k != l || l % 2 != 0 {
                        return Err(Failure::Input("the split model needs k = l even".to_string()));
                    }
                    let (a, b) = d_split(l).map_err(model_failure)?;
                    serde_json::to_value(json!({ "d0": a, "d1": b }))
                }
            }
            .map_err(internal)?;
            emit(&with_schema(v), json)?;
            Ok(true)
        }
        Cmd::Tracefield { k, l } => {
            let rep = trace_field_report(k, l).map_err(knot_failure)?;
            emit(&with_schema(serde_json::to_value(rep).map_err(internal)?), json)?;
            Ok(true)
        }
        Cmd::Newton { poly, p } => {
            let f = parse_uni(&poly, Var::X).map_err(|e| Failure::Input(e.to_string()))?;
            let hull = int_polygon(&f, p).map_err(|e| match e {
                ExactError::NotPrime(_) => Failure::Input(e.to_string()),
                e => internal(e),
            })?;
            let slopes: Vec<String> = hull.slopes().iter().map(rat_to_string).collect();
            let v = json!({
                "schema": 1,
                "poly": f.to_string(),
                "p": p,
                "polygon": hull,
                "slopes": slopes,
                "root_valuations": hull.root_valuations(),
            });
            emit(&v, json)?;
            Ok(true)
        }
        Cmd::Commensurability { k, l } => {
            let cert = commensurability_certificate(k, l).map_err(knot_failure)?;
            emit(&with_schema(serde_json::to_value(cert).map_err(internal)?), json)?;
            Ok(true)
        }
    }
}

fn seed_override(seed: u64) -> Result<u64, Failure> {
    match std::env::var("BRIDGEVAR_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("BRIDGEVAR_SEED={s} is not an unsigned integer"))),
        Err(_) => Ok(seed),
    }
}

fn model_failure(e: bridgevar::models::ModelError) -> Failure {
    match e {
        bridgevar::models::ModelError::Invariant(_) => internal(e),
        e => Failure::Input(e.to_string()),
    }
}

fn knot_failure(e: KnotError) -> Failure {
    match e {
        KnotError::Invariant(_) | KnotError::Overflow(_) | KnotError::Exact(_) | KnotError::Model(_) => internal(e),
        e => Failure::Input(e.to_string()),
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".to_string(), json!(1));
        v
    } else {
        json!({ "schema": 1, "value": v })
    }
}

fn emit(v: &Value, json: bool) -> Result<(), Failure> {
    let mut w = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut w, v).map_err(|e| match e.io_error_kind() {
            Some(k) => Failure::from(io::Error::from(k)),
            None => internal(e),
        })?;
        writeln!(w)?;
    } else {
        let mut rows = Vec::new();
        flatten("", v, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, val) in rows {
            writeln!(w, "{k:width$}  {val}")?;
        }
    }
    Ok(())
}

/// Dotted-key view of a JSON value for the text output.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        x => out.push((prefix.to_string(), scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        x => x.to_string(),
    }
}

fn sweep(kmax: i64, lmax: i64, out: Option<PathBuf>, format: RowFormat, jobs: Option<usize>, json: bool) -> Result<bool, Failure> {
    if kmax < 2 || lmax < 2 {
        return Err(Failure::Input("sweep bounds must be at least 2".to_string()));
    }
    let grid: Vec<(i64, i64)> = (-kmax..=kmax)
        .filter(|k| k.abs() >= 2)
        .flat_map(|k| (-lmax..=lmax).filter(|l| l.abs() >= 2 && l % 2 == 0).map(move |l| (k, l)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Failure::Input("--jobs must be positive".to_string()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(internal)?;
    let rows: Vec<SweepRow> = pool.install(|| grid.par_iter().map(|&(k, l)| sweep_row(k, l)).collect());

    let mut sink: Box<dyn Write> = match &out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        RowFormat::Csv => {
            writeln!(sink, "k,l,class,components,genus_y,genus_x,odd_points,fibered,trace_field_degree,status")?;
            for r in &rows {
                writeln!(
                    sink,
                    "{},{},{:?},{},{},{},{},{},{},{}",
                    r.k,
                    r.l,
                    r.class,
                    opt(r.components),
                    join(&r.genus_y),
                    join(&r.genus_x),
                    join(&r.odd_points),
                    opt(r.fibered),
                    opt(r.trace_field_degree),
                    r.status.replace(',', ";"),
                )?;
            }
        }
        RowFormat::Jsonl => {
            for r in &rows {
                let v = serde_json::to_value(r).map_err(internal)?;
                writeln!(sink, "{}", serde_json::to_string(&v).map_err(internal)?)?;
            }
        }
    }
    sink.flush()?;
    drop(sink);

    let bad: Vec<&SweepRow> = rows.iter().filter(|r| r.status != "ok").collect();
    let hyperbolic = rows.iter().filter(|r| r.class == KnotClass::Hyperbolic).count();
    if json {
        let summary = json!({
            "schema": 1,
            "rows": rows.len(),
            "hyperbolic": hyperbolic,
            "disagreements": bad.iter().map(|r| format!("({},{}): {}", r.k, r.l, r.status)).collect::<Vec<_>>(),
        });
        serde_json::to_writer_pretty(io::stderr().lock(), &summary).map_err(internal)?;
        eprintln!();
    } else {
        eprintln!("{} rows, {} hyperbolic, {} disagreements", rows.len(), hyperbolic, bad.len());
        for r in &bad {
            eprintln!("({},{}): {}", r.k, r.l, r.status);
        }
    }
    Ok(bad.is_empty())
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}
