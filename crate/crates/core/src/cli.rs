//! Command-line front end: compute invariants, dump colourings, run the
//! state-sum and Yang-Baxter pipelines, and execute verification suites.
//!
//! Exit codes: 0 success, 2 parse/input error, 3 hypothesis not met
//! (e.g. non-abelian Λ for a state sum), 4 resource limit exceeded,
//! 1 anything else.

use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::colouring::{
    colouring_polynomial, enumerate_colourings, total_colouring_number, EngineConfig,
};
use crate::diagram::{
    fixtures::FIXTURE_NAMES, load_fixture, BraidWord, KnotSymmetry, PdCode, WirtingerCode,
};
use crate::error::Error;
use crate::group::{BasepointSpec, PointedGroup};
use crate::quandle::{cocycle_from_section, CoveringQuandle};
use crate::ring::RingElement;
use crate::state_sum::state_sum;
use crate::verify::{render_polynomial, run_suite};
use crate::yang_baxter::{closed_trace, long_partial_trace, YbOperator};

#[derive(Parser)]
#[command(
    name = "knotcolour",
    about = "Knot colouring polynomials over finite pointed groups",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    /// Direct enumeration of colourings (the definition).
    Colouring,
    /// Quandle 2-cocycle state sum with the section cocycle.
    Statesum,
    /// Trace of the deformed Yang-Baxter braid representation.
    YbClosed,
    /// Partial trace of the covering-quandle braid representation.
    YbLong,
}

#[derive(Args)]
struct SourceArgs {
    /// Name of a shipped fixture (see `fixtures`).
    #[arg(long)]
    knot: Option<String>,
    /// Braid word, e.g. "s1^-3" or "aBaB".
    #[arg(long)]
    braid: Option<String>,
    /// PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    #[arg(long)]
    pd: Option<String>,
    /// Raw long-knot Wirtinger code, e.g. "2+ 0+ 1+".
    #[arg(long)]
    wirtinger: Option<String>,
}

impl SourceArgs {
    fn describe(&self) -> String {
        if let Some(k) = &self.knot {
            return k.clone();
        }
        if let Some(b) = &self.braid {
            return format!("braid {}", b);
        }
        if let Some(_) = &self.pd {
            return "pd code".into();
        }
        "wirtinger code".into()
    }

    fn count(&self) -> usize {
        [
            self.knot.is_some(),
            self.braid.is_some(),
            self.pd.is_some(),
            self.wirtinger.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    }

    /// The Wirtinger code of the requested symmetry variant; braid
    /// sources use braid-word transforms, PD sources use diagram-level
    /// transforms.
    fn code(&self, symmetry: KnotSymmetry) -> Result<WirtingerCode, Error> {
        if self.count() != 1 {
            return Err(Error::Parse(
                "exactly one of --knot, --braid, --pd, --wirtinger is required".into(),
            ));
        }
        if let Some(name) = &self.knot {
            return load_fixture(name)?.code(symmetry);
        }
        if let Some(word) = &self.braid {
            let braid = BraidWord::parse(word, None)?;
            let braid = match symmetry {
                KnotSymmetry::Identity => braid,
                KnotSymmetry::Inverse => {
                    braid.symmetry(crate::diagram::braid::BraidSymmetry::Inverse)
                }
                KnotSymmetry::Obverse => {
                    braid.symmetry(crate::diagram::braid::BraidSymmetry::Obverse)
                }
                KnotSymmetry::Reverse => {
                    braid.symmetry(crate::diagram::braid::BraidSymmetry::Reverse)
                }
            };
            return braid.to_long_wirtinger();
        }
        if let Some(pd) = &self.pd {
            let (mirror, reverse) = symmetry.flags();
            return PdCode::parse(pd)?.to_long_wirtinger(None, mirror, reverse);
        }
        if symmetry != KnotSymmetry::Identity {
            return Err(Error::Invalid(
                "symmetry variants need a braid or pd source".into(),
            ));
        }
        WirtingerCode::parse(self.wirtinger.as_ref().unwrap())
    }

    fn braid_word(&self, symmetry: KnotSymmetry) -> Result<BraidWord, Error> {
        let word = match (&self.knot, &self.braid) {
            (_, Some(word)) => word.clone(),
            (Some(name), _) => {
                let fixture = load_fixture(name)?;
                if fixture.encoding != "braid" {
                    return Err(Error::Invalid(format!(
                        "the Yang-Baxter pipelines need a braid source; fixture {} is {}",
                        name, fixture.encoding
                    )));
                }
                fixture.data.clone()
            }
            _ => {
                return Err(Error::Invalid(
                    "the Yang-Baxter pipelines need a braid source".into(),
                ))
            }
        };
        let braid = BraidWord::parse(&word, None)?;
        Ok(match symmetry {
            KnotSymmetry::Identity => braid,
            KnotSymmetry::Inverse => braid.symmetry(crate::diagram::braid::BraidSymmetry::Inverse),
            KnotSymmetry::Obverse => braid.symmetry(crate::diagram::braid::BraidSymmetry::Obverse),
            KnotSymmetry::Reverse => braid.symmetry(crate::diagram::braid::BraidSymmetry::Reverse),
        })
    }
}

#[derive(Args)]
struct GroupArgs {
    /// Group descriptor: A5, S7, D6, PSL2_7, M11, Aff5.
    #[arg(long)]
    group: String,
    /// Basepoint: cycle notation "(1,2,3,4,5)" or "order:7"; defaults to
    /// the family's canonical basepoint.
    #[arg(long)]
    basepoint: Option<String>,
}

impl GroupArgs {
    fn build(&self) -> Result<Arc<PointedGroup>, Error> {
        let basepoint = match &self.basepoint {
            Some(text) => BasepointSpec::parse(text)?,
            None => BasepointSpec::Default,
        };
        PointedGroup::build_named(&self.group, &basepoint)
    }
}

#[derive(Args)]
struct EngineArgs {
    /// Worker threads for the colouring search.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Cap on search/propagation steps.
    #[arg(long, default_value_t = 10_000_000_000)]
    node_cap: u64,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            workers: self.workers.max(1),
            node_cap: self.node_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the colouring polynomial for one or more symmetry variants.
    Invariant {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        group: GroupArgs,
        /// "all" or a comma list of id, inv, obv, rev.
        #[arg(long, default_value = "id")]
        symmetries: String,
        #[arg(long, value_enum, default_value_t = Pipeline::Colouring)]
        pipeline: Pipeline,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Enumerate colourings and dump arc colours with longitudes.
    Colourings {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also report the total colouring number over all basepoints.
        #[arg(long)]
        total: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Quandle 2-cocycle state sum with the covering's section cocycle.
    Statesum {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Yang-Baxter braid trace (closed) or partial trace (long).
    YbTrace {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "closed")]
        mode: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite: axioms, cocycle, yb, theorems, golden,
    /// structural, all.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// List shipped fixtures, or show one in full.
    Fixtures {
        name: Option<String>,
    },
}

fn parse_symmetries(text: &str) -> Result<Vec<KnotSymmetry>, Error> {
    if text.trim() == "all" {
        return Ok(KnotSymmetry::ALL.to_vec());
    }
    text.split(',').map(KnotSymmetry::parse).collect()
}

fn lambda_summary(group: &Arc<PointedGroup>) -> String {
    let lambda = group.longitude_subgroup();
    match lambda.cyclic_generator() {
        Some((t, order)) => format!(
            "Lambda = C(x) and G' intersection of order {}, cyclic with t = {}",
            order,
            group.element(t)
        ),
        None => format!(
            "Lambda of order {}, {}",
            lambda.order(),
            if lambda.is_abelian() { "abelian" } else { "non-abelian" }
        ),
    }
}

fn require_abelian(group: &Arc<PointedGroup>, what: &str) -> Result<(), Error> {
    if group.longitude_subgroup().is_abelian() {
        Ok(())
    } else {
        Err(Error::LambdaNotAbelian(what.to_string()))
    }
}

fn run_invariant(
    source: &SourceArgs,
    group_args: &GroupArgs,
    symmetries: &str,
    pipeline: Pipeline,
    format: Format,
    engine: &EngineArgs,
) -> Result<(), Error> {
    let group = group_args.build()?;
    let symmetries = parse_symmetries(symmetries)?;
    // hypothesis validation before any work starts
    match pipeline {
        Pipeline::Statesum | Pipeline::YbClosed => {
            require_abelian(&group, "the state-sum / closed-trace pipelines")?
        }
        _ => {}
    }
    let cfg = engine.config();
    let cyclic = group.longitude_subgroup().cyclic_generator();
    let value_label = match pipeline {
        Pipeline::Colouring => "P",
        Pipeline::Statesum => "C",
        Pipeline::YbClosed => "trace",
        Pipeline::YbLong => "scalar",
    };
    let mut results = Vec::new();
    for symmetry in symmetries {
        let start = Instant::now();
        let (value, note): (RingElement, String) = match pipeline {
            Pipeline::Colouring => {
                let code = source.code(symmetry)?;
                let poly = colouring_polynomial(&code, &group, &cfg)?;
                (poly.element, format!("support in Lambda: {}", poly.support_in_lambda))
            }
            Pipeline::Statesum => {
                let code = source.code(symmetry)?;
                let covering = CoveringQuandle::new(&group)?;
                let cocycle = cocycle_from_section(&covering)?;
                let sum = state_sum(&code, covering.base(), &cocycle, &cfg)?;
                let q = covering.base().size();
                let p = sum
                    .divide_exact(q as i64)
                    .map(|p| render_polynomial(&group, &p.transport(group.clone()).unwrap_or(p)))
                    .unwrap_or_else(|| "not divisible".into());
                (sum, format!("|Q| = {}, C/|Q| = {}", q, p))
            }
            Pipeline::YbClosed => {
                let braid = source.braid_word(symmetry)?;
                let op = YbOperator::deformed(&group)?;
                let trace = closed_trace(&braid, &op)?;
                let q = op.basis_size();
                let p = trace
                    .divide_exact(q as i64)
                    .map(|p| render_polynomial(&group, &p.transport(group.clone()).unwrap_or(p)))
                    .unwrap_or_else(|| "not divisible".into());
                (trace, format!("|Q| = {}, trace/|Q| = {}", q, p))
            }
            Pipeline::YbLong => {
                let braid = source.braid_word(symmetry)?;
                let covering = CoveringQuandle::new(&group)?;
                let scalar = long_partial_trace(&braid, &covering)?;
                (scalar, "multiplication scalar on the first tensor factor".into())
            }
        };
        let rendered = match value.transport(group.clone()) {
            Ok(in_g) => in_g.render(cyclic),
            Err(_) => value.render(None),
        };
        results.push((symmetry, rendered, value, note, start.elapsed()));
    }
    match format {
        Format::Text => {
            println!("knot: {}", source.describe());
            println!("group: {} with x = {}", group.name(), group.element(group.basepoint()));
            println!("{}", lambda_summary(&group));
            for (symmetry, rendered, _, note, elapsed) in &results {
                println!(
                    "{}({}) = {}   [{}; {:.3}s]",
                    value_label,
                    symmetry.label(),
                    rendered,
                    note,
                    elapsed.as_secs_f64()
                );
            }
        }
        Format::Json => {
            let json = serde_json::json!({
                "knot": source.describe(),
                "group": group.name(),
                "basepoint": group.element(group.basepoint()).to_string(),
                "lambda": lambda_summary(&group),
                "results": results.iter().map(|(symmetry, rendered, value, note, elapsed)| {
                    serde_json::json!({
                        "symmetry": symmetry.label(),
                        "polynomial": rendered,
                        "ring": value.to_json(),
                        "note": note,
                        "seconds": elapsed.as_secs_f64(),
                    })
                }).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
    }
    Ok(())
}

fn run_colourings(
    source: &SourceArgs,
    group_args: &GroupArgs,
    format: Format,
    total: bool,
    engine: &EngineArgs,
) -> Result<(), Error> {
    let group = group_args.build()?;
    let cfg = engine.config();
    let code = source.code(KnotSymmetry::Identity)?;
    let colourings = enumerate_colourings(&code, &group, &cfg)?;
    match format {
        Format::Text => {
            println!(
                "{} colourings of {} over ({}, {})",
                colourings.len(),
                source.describe(),
                group.name(),
                group.element(group.basepoint())
            );
            for c in &colourings {
                let arcs: Vec<String> =
                    c.arcs.iter().map(|&a| group.element(a).to_string()).collect();
                println!("  [{}] longitude {}", arcs.join(" "), group.element(c.longitude));
            }
            if total {
                println!(
                    "total colouring number over all basepoints: {}",
                    total_colouring_number(&code, &group, &cfg)?
                );
            }
        }
        Format::Json => {
            let mut json = serde_json::json!({
                "knot": source.describe(),
                "group": group.name(),
                "colourings": colourings.iter().map(|c| serde_json::json!({
                    "arcs": c.arcs.iter().map(|&a| group.element(a).to_string()).collect::<Vec<_>>(),
                    "longitude": group.element(c.longitude).to_string(),
                })).collect::<Vec<_>>(),
            });
            if total {
                json["total"] =
                    serde_json::json!(total_colouring_number(&code, &group, &cfg)?);
            }
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
    }
    Ok(())
}

fn run_statesum(
    source: &SourceArgs,
    group_args: &GroupArgs,
    format: Format,
    engine: &EngineArgs,
) -> Result<(), Error> {
    run_invariant(source, group_args, "id", Pipeline::Statesum, format, engine)
}

fn run_yb_trace(
    source: &SourceArgs,
    group_args: &GroupArgs,
    mode: &str,
    format: Format,
) -> Result<(), Error> {
    let pipeline = match mode {
        "closed" => Pipeline::YbClosed,
        "long" => Pipeline::YbLong,
        other => return Err(Error::Parse(format!("unknown mode {:?}", other))),
    };
    let engine = EngineArgs {
        workers: 1,
        node_cap: 10_000_000_000,
    };
    run_invariant(source, group_args, "id", pipeline, format, &engine)
}

fn run_fixtures(name: &Option<String>) -> Result<(), Error> {
    match name {
        None => {
            for name in FIXTURE_NAMES {
                let fixture = load_fixture(name)?;
                println!("{:<20} {:<9} {}", fixture.name, fixture.encoding, fixture.provenance);
            }
        }
        Some(name) => {
            let fixture = load_fixture(name)?;
            println!("name: {}", fixture.name);
            println!("encoding: {}", fixture.encoding);
            println!("data: {}", fixture.data);
            println!("provenance: {}", fixture.provenance);
            println!("calibration: {}", fixture.calibration);
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Invariant {
            source,
            group,
            symmetries,
            pipeline,
            format,
            engine,
        } => {
            run_invariant(source, group, symmetries, *pipeline, *format, engine)?;
            Ok(true)
        }
        Command::Colourings {
            source,
            group,
            format,
            total,
            engine,
        } => {
            run_colourings(source, group, *format, *total, engine)?;
            Ok(true)
        }
        Command::Statesum {
            source,
            group,
            format,
            engine,
        } => {
            run_statesum(source, group, *format, engine)?;
            Ok(true)
        }
        Command::YbTrace {
            source,
            group,
            mode,
            format,
        } => {
            run_yb_trace(source, group, mode, *format)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            format,
            engine,
        } => {
            let report = run_suite(suite, &engine.config())?;
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap())
                }
            }
            Ok(report.passed())
        }
        Command::Fixtures { name } => {
            run_fixtures(name)?;
            Ok(true)
        }
    }
}

/// CLI entry point; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}
