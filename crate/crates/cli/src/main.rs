use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pretor_cli as cli;
use pretor_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pretor", version, about = "Exact torsion and pretorsion theory workbench")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Write the canonical JSON report to a file
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Worker thread count (defaults to the core count)
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
}

#[derive(Args)]
struct BackendArgs {
    /// Backend: typea, abgrp or chaincx
    #[arg(long, default_value = "typea")]
    backend: String,
    /// Quiver length (typea); safe bound is 6, oracle-backed bound is 4
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Field prime
    #[arg(long, default_value_t = 2)]
    field: u32,
    /// Order bound (abgrp), at most 2000
    #[arg(long, default_value_t = 360)]
    order: i64,
    /// Degree window (chaincx), width at most 8
    #[arg(long, default_value_t = 0)]
    lo: i64,
    #[arg(long, default_value_t = 5)]
    hi: i64,
    /// Per-degree dimension cap for sampled complexes, at most 4
    #[arg(long, default_value_t = 2)]
    dims: usize,
    /// Sampled universe size (chaincx)
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all torsion pairs and the pretorsion theories of comparable pairs
    Enumerate {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        field: u32,
        /// Write the torsion-class inclusion order as a DOT digraph
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Check whether two classes form a pretorsion theory
    Check {
        #[command(flatten)]
        backend: BackendArgs,
        /// Members of the first class, comma separated ("0" for the zero class)
        #[arg(long)]
        t: String,
        /// Members of the second class
        #[arg(long)]
        f: String,
        /// Also run the universal-property checks on every sequence
        #[arg(long)]
        thorough: bool,
    },
    /// Decide comparability of two torsion pairs and build the pretorsion theory
    Comparable {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        t2: String,
        #[arg(long)]
        f2: String,
    },
    /// Extend a torsion pair along a Serre subcategory
    SerreExtend {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long)]
        t: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        s: String,
    },
    /// Verify the induced torsion theory in the additive quotient by Z
    Stable {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long)]
        t: String,
        #[arg(long)]
        f: String,
    },
    /// Run a golden reproduction case
    Repro {
        /// Case id, or "list" to print the available cases
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
    },
}

fn run(cmd: &Cmd) -> pretor_core::Result<(Value, bool, Option<(PathBuf, String)>)> {
    match cmd {
        Cmd::Enumerate { n, field, dot } => {
            let (v, ok) = cli::cmd_enumerate(*n, *field)?;
            let dot_out = match dot {
                Some(path) => Some((path.clone(), cli::dot_inclusion(*n, *field)?)),
                None => None,
            };
            Ok((v, ok, dot_out))
        }
        Cmd::Check { backend, t, f, thorough } => {
            let target = match backend.backend.as_str() {
                "typea" => cli::CheckTarget::TypeA { n: backend.n, p: backend.field },
                "abgrp" => cli::CheckTarget::AbGrp { order: backend.order },
                "chaincx" => cli::CheckTarget::Chain {
                    lo: backend.lo,
                    hi: backend.hi,
                    p: backend.field,
                    samples: backend.samples,
                    seed: backend.seed,
                    dims: backend.dims,
                },
                other => return Err(Error::Parse(format!("unknown backend: {}", other))),
            };
            let (v, ok) = cli::cmd_check(&target, t, f, *thorough)?;
            Ok((v, ok, None))
        }
        Cmd::Comparable { n, field, t1, f1, t2, f2 } => {
            let (v, ok) = cli::cmd_comparable(*n, *field, t1, f1, t2, f2)?;
            Ok((v, ok, None))
        }
        Cmd::SerreExtend { n, field, t, f, s } => {
            let (v, ok) = cli::cmd_serre_extend(*n, *field, t, f, s)?;
            Ok((v, ok, None))
        }
        Cmd::Stable { n, field, t, f } => {
            let (v, ok) = cli::cmd_stable(*n, *field, t, f)?;
            Ok((v, ok, None))
        }
        Cmd::Repro { name, n, i, j } => {
            if name == "list" {
                let cases: Vec<Value> = cli::list_cases()
                    .iter()
                    .map(|c| json!({ "id": c.id, "note": c.note }))
                    .collect();
                return Ok((json!({ "version": cli::VERSION, "cases": cases }), true, None));
            }
            let (v, ok) = match (name.as_str(), n, i, j) {
                ("an-chain", Some(n), Some(i), Some(j)) => cli::repro_an_chain(*n, *i, *j)?,
                ("an-quot", Some(n), Some(i), Some(j)) => cli::repro_an_quot(*n, *i, *j)?,
                _ => cli::run_case(name)?,
            };
            Ok((v, ok, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(k).build_global().is_err() {
            eprintln!("warning: worker pool already initialized, --jobs ignored");
        }
    }
    let start = Instant::now();
    match run(&cli.command) {
        Ok((mut report, ok, dot_out)) => {
            if let Some(obj) = report.as_object_mut() {
                obj.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if let Some((path, dot)) = dot_out {
                if let Err(e) = std::fs::write(&path, dot) {
                    eprintln!("cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
            if let Some(path) = cli.json {
                if let Err(e) = std::fs::write(&path, cli::canonical_json(&report)) {
                    eprintln!("cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{}", e);
            match e {
                Error::Parse(_) | Error::Precondition(_) | Error::BoundExceeded(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
