//! Command-line front end. `run_command` is the whole program; `main` only
//! wires it to the process streams.

mod report;

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::literal::{parse_elements, parse_matrix};
use crate::matrix::MatrixOverRing;
use crate::proofs;
use crate::props::{self, check_property, PropertyId, PropertyVerdict, DEFAULT_BUDGET};
use crate::reduce::{diagonal_reduce, verify_certificate};
use crate::ringspec::{parse_ring_spec, GRAMMAR};

pub use report::{ReportRecord, WitnessRecord};

/// Completed, whatever the verdict.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_REPLAY_MISMATCH: i32 = 3;

/// Environment variable holding the worker count for `sweep`.
pub const WORKERS_ENV: &str = "RINGLAB_WORKERS";

pub const BUILTIN_ZOO: &str = include_str!("../../zoo.rings");

/// Ring specs from a rings file: one per line, `#` starts a comment.
pub fn parse_rings_file(text: &str) -> Result<Vec<RingDescriptor>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_ring_spec)
        .collect()
}

pub fn builtin_zoo() -> Vec<RingDescriptor> {
    parse_rings_file(BUILTIN_ZOO).expect("built-in zoo parses")
}

/// `all` or a comma-separated list of property ids.
pub fn parse_property_list(text: &str) -> Result<Vec<PropertyId>> {
    if text.trim() == "all" {
        return Ok(PropertyId::ALL.to_vec());
    }
    text.split(',').map(|s| s.trim().parse()).collect()
}

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Exact ring property checks, constructive witnesses and certified reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one property on one ring.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate properties over a list of rings, one JSON record per line.
    Sweep {
        /// Rings file; the built-in zoo when omitted.
        #[arg(long)]
        rings: Option<String>,
        #[arg(long, default_value = "all")]
        properties: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Diagonal reduction PAQ = D with a verified certificate.
    Reduce {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the witness constructions.
    Construct(ConstructArgs),
    /// Search small rings for a unit-central, stable range 1, noncommutative example.
    Probe {
        #[arg(value_enum)]
        target: ProbeTarget,
        #[arg(long, default_value_t = 16)]
        max_order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Re-check the witnesses in a report stream ("-" reads stdin).
    Replay {
        #[arg(long)]
        report: String,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    which: Construction,
    #[arg(long)]
    ring: String,
    /// Comma-separated element literals.
    #[arg(long)]
    args: String,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Construction {
    Theorem1,
    Prop1,
    Prop2,
    Prop4,
    Prop5,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ProbeTarget {
    UnitCentral,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            print_usage_help(err);
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                Error::Parse { .. }
                | Error::Semantic(_)
                | Error::NotAnElement(..)
                | Error::NotInS(_)
                | Error::DimensionMismatch(_)
                | Error::InfiniteRing(_)
                | Error::UnsupportedDescriptor(_)
                | Error::Unsupported(_) => {
                    print_usage_help(err);
                    EXIT_USAGE
                }
                _ => EXIT_USAGE,
            }
        }
    }
}

fn print_usage_help(err: &mut dyn Write) {
    let _ = writeln!(err, "\nring spec grammar:\n{GRAMMAR}\n\nproperties: {}", PropertyId::id_list());
}

fn io_err(e: io::Error) -> Error {
    Error::Unsupported(format!("i/o: {e}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check { ring, property, budget, json } => {
            let ring = parse_ring_spec(&ring)?;
            let property: PropertyId = property.parse()?;
            let start = Instant::now();
            let v = check_property(&ring, property, budget)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            if json {
                writeln!(out, "{}", ReportRecord::from_verdict(&v, ms).to_json()).map_err(io_err)?;
            } else {
                write_verdict(out, &v).map_err(io_err)?;
            }
            Ok(if v.budget_exceeded { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::Sweep { rings, properties, out: path, budget } => {
            let rings = match rings {
                Some(file) => parse_rings_file(&fs::read_to_string(&file).map_err(io_err)?)?,
                None => builtin_zoo(),
            };
            let props = parse_property_list(&properties)?;
            match path {
                Some(p) => {
                    let mut f = io::BufWriter::new(fs::File::create(&p).map_err(io_err)?);
                    sweep(&rings, &props, budget, worker_count(), &mut f)?;
                    f.flush().map_err(io_err)?;
                }
                None => sweep(&rings, &props, budget, worker_count(), out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { ring, matrix, json } => {
            let ring = parse_ring_spec(&ring)?;
            let a = parse_matrix(&ring, &matrix)?;
            reduce(&ring, &a, json, out)
        }
        Command::Construct(args) => construct(args, out),
        Command::Probe { target: ProbeTarget::UnitCentral, max_order, json } => {
            let report = props::probe_unit_central_commutative(max_order)?;
            for e in &report.entries {
                if json {
                    let line = serde_json::json!({
                        "ring": e.ring.to_string(),
                        "unit_central": e.unit_central.to_string(),
                        "sr1": e.sr1.to_string(),
                        "commutative": e.commutative,
                    });
                    writeln!(out, "{line}").map_err(io_err)?;
                } else {
                    writeln!(
                        out,
                        "{:<22} unit-central={:<8} sr1={:<8} commutative={}",
                        e.ring.to_string(),
                        e.unit_central,
                        e.sr1,
                        e.commutative
                    )
                    .map_err(io_err)?;
                }
            }
            if !json {
                writeln!(
                    out,
                    "tested {} rings of order <= {}; counterexamples: {}",
                    report.entries.len(),
                    max_order,
                    report.counterexamples().len()
                )
                .map_err(io_err)?;
                for c in report.counterexamples() {
                    writeln!(out, "counterexample: {}", c.ring).map_err(io_err)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Replay { report } => {
            let reader: Box<dyn BufRead> = if report == "-" {
                Box::new(BufReader::new(io::stdin()))
            } else {
                Box::new(BufReader::new(fs::File::open(&report).map_err(io_err)?))
            };
            let (mut ok, mut bad) = (0usize, 0usize);
            for line in reader.lines() {
                let line = line.map_err(io_err)?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec = ReportRecord::from_json(&line)?;
                if props::replay(&rec.to_verdict()?)? {
                    ok += 1;
                } else {
                    bad += 1;
                    writeln!(out, "mismatch: {} {} {}", rec.ring, rec.property, rec.verdict).map_err(io_err)?;
                }
            }
            writeln!(out, "replayed {} records: {ok} ok, {bad} mismatches", ok + bad).map_err(io_err)?;
            Ok(if bad == 0 { EXIT_OK } else { EXIT_REPLAY_MISMATCH })
        }
    }
}

fn write_verdict(out: &mut dyn Write, v: &PropertyVerdict) -> io::Result<()> {
    writeln!(out, "{} {}: {}", v.ring, v.property, v.verdict)?;
    for w in &v.witness {
        writeln!(out, "  {} = {}", w.name, w.value)?;
    }
    writeln!(out, "  budget used: {} tuples", v.budget_used)?;
    if let Some(note) = &v.note {
        writeln!(out, "  note: {note}")?;
    }
    Ok(())
}

/// `RINGLAB_WORKERS`, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every ring x property cell and writes records in input order.
/// Cells are evaluated a batch at a time so output streams as batches finish.
pub fn sweep(
    rings: &[RingDescriptor],
    properties: &[PropertyId],
    budget: u64,
    workers: usize,
    out: &mut dyn Write,
) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let cells: Vec<(&RingDescriptor, PropertyId)> = rings
        .iter()
        .flat_map(|r| properties.iter().map(move |&p| (r, p)))
        .collect();
    for batch in cells.chunks(workers.max(1) * 4) {
        let records: Vec<Result<ReportRecord>> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(ring, p)| {
                    let start = Instant::now();
                    let v = check_property(ring, p, budget)?;
                    Ok(ReportRecord::from_verdict(&v, start.elapsed().as_secs_f64() * 1e3))
                })
                .collect()
        });
        for rec in records {
            writeln!(out, "{}", rec?.to_json()).map_err(io_err)?;
        }
        out.flush().map_err(io_err)?;
    }
    Ok(())
}

/// Reduces `a` and packs P, Q, D into a record; an irreducible matrix gives
/// verdict `fails` with the matrix as witness.
pub fn reduce_record(ring: &RingDescriptor, a: &MatrixOverRing) -> Result<ReportRecord> {
    let start = Instant::now();
    let result = diagonal_reduce(ring, a);
    let (verdict, witness) = match result {
        Ok(cert) => {
            let v = verify_certificate(a, &cert)?;
            if let Some(clause) = v.first_failure() {
                return Err(Error::InvalidCertificate(format!("{a}: '{clause}'")));
            }
            ("reduced", vec![("P", cert.p.to_string()), ("Q", cert.q.to_string()), ("D", cert.d.to_string())])
        }
        Err(Error::NotReducible { .. }) => ("fails", vec![("A", a.to_string())]),
        Err(e) => return Err(e),
    };
    Ok(ReportRecord {
        ring: ring.to_string(),
        property: "reduce".into(),
        verdict: verdict.into(),
        witness: witness
            .into_iter()
            .map(|(n, v)| WitnessRecord { name: n.into(), value: v })
            .collect(),
        budget: 0,
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn reduce(ring: &RingDescriptor, a: &MatrixOverRing, json: bool, out: &mut dyn Write) -> Result<i32> {
    let rec = reduce_record(ring, a)?;
    if json {
        writeln!(out, "{}", rec.to_json()).map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "A = {a}").map_err(io_err)?;
    for w in &rec.witness {
        if rec.verdict == "reduced" {
            writeln!(out, "{} = {}", w.name, w.value).map_err(io_err)?;
        }
    }
    if rec.verdict == "reduced" {
        let d = parse_matrix(ring, &rec.witness[2].value)?;
        let diag: Vec<String> = d.diagonal().iter().map(Element::to_string).collect();
        writeln!(out, "diagonal = ({})", diag.join(", ")).map_err(io_err)?;
        writeln!(out, "certificate verified: true").map_err(io_err)?;
    } else {
        writeln!(out, "not reducible: no diagonal matrix satisfying the chain condition in the orbit").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

/// Runs construction `which` (theorem1, prop1, prop2, prop4, prop5) on the
/// comma-separated literals in `args`. A violated hypothesis is returned
/// alongside a record with verdict `failed`; bad input is an error.
pub fn construct_record(ring: &RingDescriptor, which: &str, args: &str) -> Result<(ReportRecord, Option<Error>)> {
    let construction = Construction::from_str(which, true)
        .map_err(|_| Error::Semantic(format!("unknown construction '{which}'; expected theorem1, prop1, prop2, prop4 or prop5")))?;
    let xs = parse_elements(ring, args)?;
    let arity = match construction {
        Construction::Prop4 => 1,
        _ => 2,
    };
    if xs.len() != arity {
        return Err(Error::Semantic(format!("expected {arity} element(s) in the arguments, got {}", xs.len())));
    }
    let start = Instant::now();
    let result: Result<Vec<(&str, Element)>> = match construction {
        Construction::Theorem1 => proofs::theorem1_transfer(ring, &xs[0], &xs[1]).map(|w| {
            vec![("t", w.t), ("u", w.u), ("x", w.x), ("w", w.w), ("y", w.y), ("p", w.p), ("q", w.q), ("p*a+q*b", w.unit)]
        }),
        Construction::Prop1 => proofs::prop1_unit_commute(ring, &xs[0], &xs[1]).map(|v| vec![("v", v)]),
        Construction::Prop2 => proofs::prop2_witness(ring, &xs[0], &xs[1]).map(|w| vec![("u", w.u), ("y", w.y)]),
        Construction::Prop4 => proofs::prop4_unit_sum(ring, &xs[0]).map(|(u, w)| vec![("u", u), ("w", w)]),
        Construction::Prop5 => proofs::prop5_duo_witness(ring, &xs[0], &xs[1])
            .map(|w| vec![("u", w.u), ("w", w.w), ("x", w.x), ("y", w.y), ("z", w.z)]),
    };
    let (verdict, fields, failure) = match result {
        Ok(fields) => ("constructed", fields, None),
        // Precondition and hypothesis failures are results, not usage errors.
        Err(
            e @ (Error::NotComaximal
            | Error::NoWitness(_)
            | Error::ConstructionFailed { .. }
            | Error::HypothesisFailed(_)
            | Error::NotUnit(_)
            | Error::ZeroInput
            | Error::NoDecomposition(_)
            | Error::NoFactorization(_)),
        ) => ("failed", Vec::new(), Some(e)),
        Err(e) => return Err(e),
    };
    let record = ReportRecord {
        ring: ring.to_string(),
        property: which.to_ascii_lowercase(),
        verdict: verdict.into(),
        witness: fields
            .iter()
            .map(|(n, v)| WitnessRecord { name: (*n).into(), value: v.to_string() })
            .collect(),
        budget: 0,
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((record, failure))
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> Result<i32> {
    let ring = parse_ring_spec(&args.ring)?;
    let which = args.which.to_possible_value().expect("no skipped variants");
    let (rec, failure) = construct_record(&ring, which.get_name(), &args.args)?;
    if args.json {
        writeln!(out, "{}", rec.to_json()).map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{} over {ring}: {}", rec.property, rec.verdict).map_err(io_err)?;
    for w in &rec.witness {
        writeln!(out, "  {} = {}", w.name, w.value).map_err(io_err)?;
    }
    if let Some(e) = failure {
        writeln!(out, "  {e}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}
