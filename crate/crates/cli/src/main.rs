use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use nldb_cli::{coverage, encode, evaluate, explain_sql, round_trip, EvalOptions, Predictions};
use nldb_core::catalog::load_from_database;
use nldb_core::corpus::{load_gold, DatabaseDir};
use nldb_core::explain::Tier;
use nldb_core::hypothesis::BeamConfig;
use nldb_service::ServiceConfig;

#[derive(Parser)]
#[command(name = "nldb", version, about = "Natural-language database interface tooling")]
struct Cli {
    /// Worker threads for per-example work (defaults to the core count).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execution accuracy of beam predictions against gold SQL.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        /// Beam rows (JSON lines with `example`) or one tab-separated SQL line per example.
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        db_dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
        k: Vec<usize>,
        /// Compare cells exactly.
        #[arg(long)]
        strict: bool,
        /// Drop failing and duplicate hypotheses before cutting at k.
        #[arg(long)]
        dedupe: bool,
        /// Rank beam rows by raw log-probability.
        #[arg(long)]
        rerank_only: bool,
        #[arg(long, default_value_t = 3.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.1)]
        beta: f64,
        #[arg(long)]
        machine: bool,
    },
    /// Gold SQL through actions, value resolution and execution.
    Roundtrip {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        db_dir: PathBuf,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        machine: bool,
    },
    /// Shallow and deep tier shares of a corpus.
    Coverage {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        db_dir: PathBuf,
        #[arg(long)]
        machine: bool,
    },
    /// Step-by-step explanation of one query.
    Explain {
        /// SQLite database file.
        #[arg(long)]
        db: PathBuf,
        /// Question to take literal spans from.
        #[arg(long)]
        question: Option<String>,
        #[arg(long, value_parser = ["shallow", "deep"])]
        tier: Option<String>,
        #[arg(long)]
        machine: bool,
        sql: String,
    },
    /// Encode gold SQL as beam rows, best first.
    Encode {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        question: String,
        #[arg(long)]
        example: Option<usize>,
        sql: Vec<String>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long)]
        config: PathBuf,
    },
}

fn print_report<T: serde::Serialize>(machine: bool, report: &T, human: String) -> Result<()> {
    if machine {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{human}");
    }
    Ok(())
}

fn gate(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    match cli.command {
        Command::Eval { gold, pred, db_dir, k, strict, dedupe, rerank_only, alpha, beta, machine } => {
            let gold = load_gold(&gold)?;
            let preds = Predictions::load(&pred, gold.len())?;
            let dbs = DatabaseDir::open(&db_dir)?;
            let beam = BeamConfig { alpha, beta, rerank_only, ..BeamConfig::default() };
            let report = evaluate(&gold, &preds, &dbs, &EvalOptions { ks: k, strict, dedupe, beam })?;
            print_report(machine, &report, report.human())?;
            Ok(gate(report.passed()))
        }
        Command::Roundtrip { gold, db_dir, strict, machine } => {
            let report = round_trip(&load_gold(&gold)?, &DatabaseDir::open(&db_dir)?, strict)?;
            print_report(machine, &report, report.human())?;
            Ok(gate(report.passed()))
        }
        Command::Coverage { gold, db_dir, machine } => {
            let report = coverage(&load_gold(&gold)?, &DatabaseDir::open(&db_dir)?)?;
            print_report(machine, &report, report.human())?;
            Ok(gate(report.passed()))
        }
        Command::Explain { db, question, tier, machine, sql } => {
            let catalog = load_from_database(&db)?;
            let tier = tier.map(|t| if t == "deep" { Tier::Deep } else { Tier::Shallow });
            let doc = explain_sql(&catalog, &sql, question.as_deref(), tier)?;
            let text = doc.render() + "\n";
            print_report(machine, &doc, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode { db, question, example, sql } => {
            let catalog = load_from_database(&db)?;
            for (i, s) in sql.iter().enumerate() {
                let row = encode(&catalog, &question, s, -(i as f64), example)?;
                println!("{}", serde_json::to_string(&row)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Serve { config } => {
            let cfg = ServiceConfig::load(&config)?;
            tokio::runtime::Runtime::new()?.block_on(nldb_service::serve(cfg)).context("service")?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
