use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use serde_json::json;

use hilbgw::engine::{CacheFile, EngineError, HarvestTier};
use hilbgw::hyperelliptic::{invert_counts, CountTable, HyperellipticError};
use hilbgw::oracles::{engine_nd, kontsevich_nd, OracleError};
use hilbgw::quantum::{Bounds, QuantumRing};
use hilbgw::tables::{paper_tables, verify_tables, PaperTable, MAX_DEGREE, MIN_DEGREE};
use hilbgw::{CurveClass, Engine, Rational, TargetDatum};

use crate::output::{approx, OutputRecord};
use crate::{CacheCommand, Cli, Command, TargetName};

/// Exit code for a verification mismatch.
const MISMATCH: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("count sanity check failed: {0}")]
    Count(String),
    #[error("{error}\n{diagnostics}")]
    Engine { error: String, diagnostics: String },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn engine(engine: &Engine, error: EngineError) -> Self {
        match error {
            EngineError::DegreeZero
            | EngineError::Ineffective(_)
            | EngineError::InvalidIndex(_)
            | EngineError::WrongLength { .. } => CliError::Usage(error.to_string()),
            EngineError::Cache(_) => CliError::Usage(error.to_string()),
            other => CliError::Engine {
                error: other.to_string(),
                diagnostics: diagnostics(engine),
            },
        }
    }

    fn hyperelliptic(engine: &Engine, error: HyperellipticError) -> Self {
        match error {
            HyperellipticError::InvalidQuery(m) => CliError::Usage(m),
            HyperellipticError::NonIntegralCount { .. } | HyperellipticError::NegativeCount { .. } => {
                CliError::Count(error.to_string())
            }
            HyperellipticError::Engine(e) => CliError::engine(engine, e),
        }
    }
}

fn diagnostics(engine: &Engine) -> String {
    let reports = engine.reports();
    let fallback = reports.iter().filter(|r| r.tier == HarvestTier::Fallback).count();
    let mut out = format!(
        "stages solved: {} ({} primary, {} fallback)",
        reports.len(),
        reports.len() - fallback,
        fallback
    );
    if let Some(last) = reports.last() {
        let _ = write!(
            out,
            "; last: {} n={} with {} unknowns, {} equations, {:?} tier",
            last.class, last.n, last.unknowns, last.equations, last.tier
        );
    }
    out
}

fn build_engine(cli: &Cli, datum: TargetDatum) -> Result<Engine, CliError> {
    let mut engine = Engine::new(datum);
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        engine = engine
            .with_threads(n)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    if let Some(path) = &cli.load_cache {
        let cache = read_cache(path)?;
        engine.import_cache(&cache).map_err(|e| CliError::engine(&engine, e))?;
    }
    Ok(engine)
}

fn hilb2(cli: &Cli) -> Result<Engine, CliError> {
    let datum = TargetDatum::hilb2().map_err(|e| CliError::Io(e.to_string()))?;
    build_engine(cli, datum)
}

fn read_cache(path: &std::path::Path) -> Result<CacheFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    CacheFile::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// What a command produced: text for humans, a JSON result, and an exit code.
struct Outcome {
    text: String,
    result: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, result: serde_json::Value) -> Self {
        Self { text, result, code: 0 }
    }
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<ExitCode, CliError> {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Invariant(args) => invariant(cli, args.class, &args.insertions)?,
        Command::Hyperelliptic(args) => {
            let out = hyperelliptic(cli, args.degree, args.pairs)?;
            if args.csv {
                print!("{}", out.0);
                return Ok(ExitCode::SUCCESS);
            }
            out.1
        }
        Command::Tables(args) => {
            let expected = match &args.fixture {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                    serde_json::from_str::<Vec<PaperTable>>(&text)
                        .map_err(|e| CliError::Usage(format!("invalid fixture: {e}")))?
                }
                None => paper_tables(),
            };
            tables(cli, &expected, args.max_degree)?
        }
        Command::Qcoh(args) => qcoh(cli, args.n1, args.n2)?,
        Command::Oracle(args) => oracle(cli, args.nd, args.check)?,
        Command::Cache(cmd) => cache(cli, cmd)?,
        Command::Datum(args) => datum(args.target)?,
    };
    let elapsed = start.elapsed();
    if cli.json {
        let mut record = OutputRecord::new(argv, outcome.code == 0, outcome.result);
        if cli.timing {
            record.elapsed_ms = Some(elapsed.as_millis() as u64);
        }
        println!("{}", serde_json::to_string_pretty(&record).expect("plain data"));
    } else {
        print!("{}", outcome.text);
        if cli.timing {
            println!("elapsed: {:.3} s", elapsed.as_secs_f64());
        }
    }
    Ok(ExitCode::from(outcome.code))
}

fn value_json(cli: &Cli, value: &Rational) -> serde_json::Value {
    let mut v = json!({ "value": value.to_string() });
    if cli.float {
        v["approx"] = json!(approx(value));
    }
    v
}

fn value_text(cli: &Cli, value: &Rational) -> String {
    match (cli.float, approx(value)) {
        (true, Some(x)) => format!("{value}  (approx {x:e})"),
        _ => value.to_string(),
    }
}

fn invariant(cli: &Cli, (a, b): (u32, u32), insertions: &[usize]) -> Result<Outcome, CliError> {
    let engine = hilb2(cli)?;
    let class = CurveClass::new(a, b);
    let value = engine
        .invariant_indices(class, insertions)
        .map_err(|e| CliError::engine(&engine, e))?;
    let names: Vec<String> = insertions.iter().map(|i| format!("T{i}")).collect();
    let text = format!("I_{class}({}) = {}\n", names.join(","), value_text(cli, &value));
    let mut result = value_json(cli, &value);
    result["class"] = json!([a, b]);
    result["insertions"] = json!(insertions);
    Ok(Outcome::ok(text, result))
}

fn count_json(cli: &Cli, table: &CountTable) -> serde_json::Value {
    let rows: Vec<_> = table
        .rows
        .iter()
        .map(|r| {
            let mut row = json!({ "g": r.g, "I": r.i.to_string(), "E": r.e.to_string() });
            if cli.float {
                row["I_approx"] = json!(approx(&r.i));
            }
            row
        })
        .collect();
    json!({ "degree": table.d, "pairs": table.l, "rows": rows })
}

/// Returns `(csv, outcome)`.
fn hyperelliptic(cli: &Cli, d: u32, l: u32) -> Result<(String, Outcome), CliError> {
    if d < 2 {
        return Err(CliError::Usage(format!("--degree must be at least 2, got {d}")));
    }
    if l > d {
        return Err(CliError::Usage(format!("--pairs must be at most the degree, got {l} > {d}")));
    }
    let engine = hilb2(cli)?;
    let table = invert_counts(&engine, d, l).map_err(|e| CliError::hyperelliptic(&engine, e))?;
    let mut csv = String::from("d,l,g,I,E\n");
    let mut text = format!("degree {d}, {l} conjugate pair(s)\n{:>3}  {:>20}  {:>20}\n", "g", "I", "E");
    for r in &table.rows {
        let _ = writeln!(csv, "{d},{l},{},{},{}", r.g, r.i, r.e);
        let _ = writeln!(text, "{:>3}  {:>20}  {:>20}", r.g, r.i.to_string(), r.e.to_string());
    }
    Ok((csv, Outcome::ok(text, count_json(cli, &table))))
}

fn tables(cli: &Cli, expected: &[PaperTable], max_degree: u32) -> Result<Outcome, CliError> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&max_degree) {
        return Err(CliError::Usage(format!(
            "--max-degree must be in {MIN_DEGREE}..={MAX_DEGREE}, got {max_degree}"
        )));
    }
    let engine = hilb2(cli)?;
    let report = verify_tables(&engine, expected, max_degree).map_err(|e| CliError::hyperelliptic(&engine, e))?;
    let mut text = String::new();
    let status = if report.pass() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        text,
        "{status}: {} tables, degrees {MIN_DEGREE}..={max_degree}, {} cells checked",
        report.tables, report.cells_checked
    );
    for m in &report.mismatches {
        let _ = writeln!(
            text,
            "  mismatch in {} at d={} g={}: expected {}, computed {}",
            m.table, m.d, m.g, m.expected, m.computed
        );
    }
    let _ = writeln!(text, "boundary E^l(d,d-1):");
    for (l, d, e) in &report.boundary {
        let _ = writeln!(text, "  l={l} d={d}: {e}");
    }
    let code = if report.pass() { 0 } else { MISMATCH };
    let result = serde_json::to_value(&report).expect("plain data");
    Ok(Outcome { text, result, code })
}

fn qcoh(cli: &Cli, n1: u32, n2: u32) -> Result<Outcome, CliError> {
    let engine = hilb2(cli)?;
    let ring = QuantumRing::new(&engine, Bounds::new(n1, n2));
    let products = ring.verify_product_table().map_err(|e| CliError::engine(&engine, e))?;
    let relations = ring.verify_relations().map_err(|e| CliError::engine(&engine, e))?;
    let pass = products.all_pass() && relations.all_pass();
    let mut text = format!("truncation q1^{n1} q2^{n2}\n");
    for p in &products.entries {
        let _ = writeln!(text, "{} {} = {}", if p.pass { "PASS" } else { "FAIL" }, p.name, p.computed);
        if let Some(m) = &p.first_mismatch {
            let _ = writeln!(text, "     first mismatch: {m}");
        }
    }
    for r in &relations.entries {
        let _ = writeln!(text, "{} {}\n     residual: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.residual);
    }
    let result = json!({ "products": products, "relations": relations, "pass": pass });
    Ok(Outcome {
        text,
        result,
        code: if pass { 0 } else { MISMATCH },
    })
}

fn oracle(cli: &Cli, d: u32, check: bool) -> Result<Outcome, CliError> {
    let nd = kontsevich_nd(d as i64).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut text = format!("N_{d} = {nd}\n");
    let mut result = json!({ "degree": d, "N": nd.to_string() });
    let mut code = 0;
    if check {
        let engine = build_engine(cli, TargetDatum::p2())?;
        let value = engine_nd(&engine, d).map_err(|e| match e {
            OracleError::Engine(e) => CliError::engine(&engine, e),
            OracleError::Degree(_) => CliError::Usage(e.to_string()),
        })?;
        let agree = value == Rational::from_integer(nd);
        let _ = writeln!(text, "engine on P^2: {value} ({})", if agree { "agrees" } else { "DISAGREES" });
        result["engine"] = json!(value.to_string());
        result["agree"] = json!(agree);
        if !agree {
            code = MISMATCH;
        }
    }
    Ok(Outcome { text, result, code })
}

fn cache(cli: &Cli, cmd: &CacheCommand) -> Result<Outcome, CliError> {
    let engine = hilb2(cli)?;
    match cmd {
        CacheCommand::Export { path, max_degree } => {
            if !(MIN_DEGREE..=MAX_DEGREE).contains(max_degree) {
                return Err(CliError::Usage(format!(
                    "--max-degree must be in {MIN_DEGREE}..={MAX_DEGREE}, got {max_degree}"
                )));
            }
            for d in MIN_DEGREE..=*max_degree {
                for l in 0..=2 {
                    invert_counts(&engine, d, l).map_err(|e| CliError::hyperelliptic(&engine, e))?;
                }
            }
            let cache = engine.export_cache();
            write_file(path, &cache.to_json())?;
            let text = format!("wrote {} entries to {}\n", cache.entries.len(), path.display());
            Ok(Outcome::ok(text, json!({ "entries": cache.entries.len(), "path": path })))
        }
        CacheCommand::Import { path, export } => {
            let cache = read_cache(path)?;
            let loaded = engine.import_cache(&cache).map_err(|e| CliError::engine(&engine, e))?;
            let mut text = format!("loaded {loaded} entries from {}\n", path.display());
            if let Some(out) = export {
                write_file(out, &engine.export_cache().to_json())?;
                let _ = writeln!(text, "wrote store to {}", out.display());
            }
            Ok(Outcome::ok(text, json!({ "loaded": loaded })))
        }
    }
}

fn datum(target: TargetName) -> Result<Outcome, CliError> {
    let datum = match target {
        TargetName::Hilb2p2 => TargetDatum::hilb2().map_err(|e| CliError::Io(e.to_string()))?,
        TargetName::P2 => TargetDatum::p2(),
    };
    let result = serde_json::to_value(datum.describe()).expect("plain data");
    let text = serde_json::to_string_pretty(&result).expect("plain data") + "\n";
    Ok(Outcome::ok(text, result))
}
