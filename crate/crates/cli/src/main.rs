use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use growthlab_cli::config::ExperimentConfig;
use growthlab_cli::{cache, run};
use growthlab_core::chartab::CharacterTable;
use growthlab_core::group::{build_group, GroupSpec};

#[derive(Parser)]
#[command(
    name = "growthlab",
    version,
    about = "Growth experiments on small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiments in a JSON config and emit a report.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        /// Report destination (default: config's "output" field, else stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Character table cache directory (GROWTHLAB_CACHE also works).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Worker threads for the parallel inner loops (0 = automatic).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Compute (or load) and audit the character table of one group.
    Table {
        /// Group spec: a JSON file path, or inline like `alternating:5`,
        /// `symmetric:4`, `psl2:7`.
        groupspec: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            out,
            cache_dir,
            threads,
        } => {
            if threads > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                    .context("initializing the thread pool")?;
            }
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let parsed: ExperimentConfig = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", config.display()))?;
            let cache_dir = resolve_cache_dir(cache_dir);
            let report = run(&parsed, cache_dir.as_deref())?;
            let json = serde_json::to_string_pretty(&report)?;
            let destination = out.or_else(|| parsed.output.clone().map(PathBuf::from));
            match destination {
                Some(path) => {
                    std::fs::write(&path, json)
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!(
                        "report: {} ({} experiments, verdict {})",
                        path.display(),
                        report.results.len(),
                        report.verdict
                    );
                }
                None => println!("{json}"),
            }
            for event in &report.cache_events {
                eprintln!("cache: {event}");
            }
            Ok(report.passed())
        }
        Command::Table {
            groupspec,
            cache_dir,
        } => {
            let spec = parse_groupspec(&groupspec)?;
            let group = build_group(&spec)?;
            let cache_dir = resolve_cache_dir(cache_dir);
            let (table, status) = match cache_dir.as_deref() {
                Some(_) => cache::table_cache(&group, cache_dir.as_deref())?,
                None => (
                    CharacterTable::compute(&group)?,
                    cache::CacheStatus::Disabled,
                ),
            };
            let audit = table.verify();
            let doc = serde_json::json!({
                "group": group.name,
                "order": group.order(),
                "class_sizes": group.classes().class_sizes(),
                "degrees": table.degrees.iter().map(|d| d.round() as i64).collect::<Vec<_>>(),
                "values": table.values.iter()
                    .map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "audit": serde_json::to_value(&audit)?,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            if status != cache::CacheStatus::Disabled {
                eprintln!("cache: {}", status.describe(&group.name));
            }
            Ok(audit.pass)
        }
    }
}

fn resolve_cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("GROWTHLAB_CACHE").map(PathBuf::from))
}

fn parse_groupspec(arg: &str) -> anyhow::Result<GroupSpec> {
    let path = std::path::Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    let (kind, param) = arg
        .split_once(':')
        .or_else(|| arg.split_once('('))
        .ok_or_else(|| anyhow::anyhow!("groupspec must be a file or kind:n, e.g. alternating:5"))?;
    let param: u64 = param.trim_end_matches(')').parse()?;
    match kind {
        "symmetric" | "s" => Ok(GroupSpec::Symmetric { n: param as usize }),
        "alternating" | "a" => Ok(GroupSpec::Alternating { n: param as usize }),
        "psl2" => Ok(GroupSpec::Psl2 { q: param as u16 }),
        other => anyhow::bail!("unknown group kind {other}"),
    }
}
