//! Command-line interface.
//!
//! Exit codes of `reproduce`: 0 full, 3 partial, 4 unreproducible, 1 error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use mutapath::manifest::load_program;
use mutapath::{emit, load_manifest, run_corpus_with, Format, RunOptions};
use mutapath_core::treediff::ast_diff_with_script;
use mutapath_core::{
    ast_diff, find_mutation_path, pretty_print, seed_bug, summarize, OperatorSet, OperatorSetName,
    ReproClass, SearchBudget, SearchStatus,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "mutapath",
    version,
    about = "Reproduce bugs as chains of mutation-operator applications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct BudgetArgs {
    /// Maximum number of expanded search nodes.
    #[arg(long, default_value_t = SearchBudget::default().max_expansions)]
    max_expansions: usize,
    /// Maximum number of open search nodes.
    #[arg(long, default_value_t = SearchBudget::default().max_frontier)]
    max_frontier: usize,
    /// Wall-clock limit per search, in seconds.
    #[arg(long, default_value_t = SearchBudget::default().time_limit)]
    time_limit: f64,
    /// Divisor applied to the tree-distance heuristic.
    #[arg(long, default_value_t = SearchBudget::default().heuristic_scale)]
    heuristic_scale: f64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_expansions: self.max_expansions,
            max_frontier: self.max_frontier,
            time_limit: self.time_limit,
            heuristic_scale: self.heuristic_scale,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search for a mutation path from a fixed program to its buggy version.
    Reproduce {
        fixed: PathBuf,
        buggy: PathBuf,
        #[arg(long, default_value = "extended")]
        ops: OperatorSetName,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search every pair of one or more corpus manifests and write reports.
    Run {
        #[arg(required = true)]
        manifests: Vec<PathBuf>,
        /// Operator sets to run, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "pitest,extended")]
        ops: Vec<OperatorSetName>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
        /// Report formats, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "csv,json")]
        format: Vec<Format>,
        /// Record measured wall time (makes reports differ between runs).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Create a buggy variant with a known mutation path.
    Seed {
        fixed: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "extended")]
        ops: OperatorSetName,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the tree edit distance between two programs.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// Also print a minimal edit script.
        #[arg(long)]
        script: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn program(path: &Path) -> Result<mutapath_core::Ast> {
    load_program(path).map_err(anyhow::Error::msg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Reproduce {
            fixed,
            buggy,
            ops,
            budget,
        } => {
            let (fixed, buggy) = (program(&fixed)?, program(&buggy)?);
            let result =
                find_mutation_path(&fixed, &buggy, &OperatorSet::named(ops), &budget.budget())?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            Ok(ExitCode::from(match result.status {
                SearchStatus::Full => 0,
                SearchStatus::Partial => 3,
                SearchStatus::Unreproducible => 4,
            }))
        }
        Command::Run {
            manifests,
            ops,
            parallelism,
            out,
            format,
            timing,
            budget,
        } => {
            if ops.is_empty() || format.is_empty() {
                bail!("--ops and --format need at least one value");
            }
            let corpora = manifests
                .iter()
                .map(|m| load_manifest(m))
                .collect::<Result<Vec<_>, _>>()?;
            let options = RunOptions {
                budget: budget.budget(),
                parallelism,
                record_timing: timing,
            };
            let mut results = Vec::new();
            let mut unique_ops: Vec<OperatorSetName> = Vec::new();
            for name in ops {
                if !unique_ops.contains(&name) {
                    unique_ops.push(name);
                }
            }
            for name in &unique_ops {
                let opset = OperatorSet::named(*name);
                for corpus in &corpora {
                    results.extend(run_corpus_with(corpus, &opset, &options)?);
                }
            }
            let tables = summarize(&results);
            let formats: BTreeSet<Format> = format.into_iter().collect();
            emit(&tables, &results, &out, &formats)
                .with_context(|| format!("writing reports to {}", out.display()))?;
            let summary: Vec<String> = unique_ops
                .iter()
                .map(|name| {
                    let mine = results.iter().filter(|r| r.ops == *name);
                    let count = |c| mine.clone().filter(|r| r.status == Some(c)).count();
                    let excluded = mine.clone().filter(|r| r.excluded).count();
                    format!(
                        "{}: R={} P={} U={} excluded={}",
                        name.as_str(),
                        count(ReproClass::R),
                        count(ReproClass::P),
                        count(ReproClass::U),
                        excluded
                    )
                })
                .collect();
            println!("{}", summary.join("; "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Seed {
            fixed,
            k,
            seed,
            ops,
            out,
        } => {
            let fixed = program(&fixed)?;
            let bug = seed_bug(&fixed, k, seed, &OperatorSet::named(ops))?;
            fs::create_dir_all(&out)?;
            fs::write(out.join("buggy.mini"), pretty_print(&bug.buggy))?;
            let truth = Truth {
                ops,
                seed,
                requested_k: k,
                k: bug.k,
                path: &bug.truth_path,
            };
            fs::write(
                out.join("truth.json"),
                serde_json::to_string_pretty(&truth)? + "\n",
            )?;
            println!("seeded k={} (requested {k}) into {}", bug.k, out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Diff { a, b, script } => {
            let (a, b) = (program(&a)?, program(&b)?);
            if script {
                let diff = ast_diff_with_script(&a, &b)?;
                println!("distance: {}", diff.distance);
                for op in diff.script.unwrap_or_default() {
                    println!("{op}");
                }
            } else {
                println!("distance: {}", ast_diff(&a, &b)?.distance);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct Truth<'a> {
    ops: OperatorSetName,
    seed: u64,
    requested_k: usize,
    k: usize,
    path: &'a mutapath_core::MutationPath,
}
