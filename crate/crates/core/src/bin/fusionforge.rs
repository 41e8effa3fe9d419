use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use fusionforge::catalog::{
    analyze, bundled, bundled_names, parse_catalog, run_suite, AnalyzeOptions, Cache, Lookup,
    SUITES,
};

#[derive(Parser)]
#[command(name = "fusionforge", version, about = "p-fusion systems of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the p-fusion system of a bundled group.
    Analyze {
        /// Bundled group name, e.g. M11 or example_2_4_15_4.
        group: String,
        #[arg(short, long)]
        prime: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Largest |S| for full subgroup enumeration; accepts `2^k`.
        #[arg(long, value_parser = parse_bound)]
        max_lattice: Option<u64>,
        /// Enumerate elementary abelian subgroups only.
        #[arg(long)]
        elementary_only: bool,
        /// Neither read nor write the report cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Run a verification suite.
    Verify {
        /// paper-small, stretch or properties.
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Catalog utilities.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Parse and validate every entry of a catalog file.
    Check { path: PathBuf },
    /// List bundled groups.
    List,
}

fn parse_bound(s: &str) -> std::result::Result<u64, String> {
    if let Some(k) = s.strip_prefix("2^") {
        let k: u32 = k.parse().map_err(|_| format!("bad exponent in {}", s))?;
        return 1u64.checked_shl(k).filter(|_| k < 64).ok_or_else(|| "bound too large".into());
    }
    s.parse().map_err(|_| format!("not a number: {}", s))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze {
            group,
            prime,
            json,
            max_lattice,
            elementary_only,
            no_cache,
        } => {
            let lg = bundled(&group).map_err(|e| anyhow!("{}; known groups: {}", e, bundled_names().join(", ")))?;
            let mut opts = AnalyzeOptions {
                elementary_only,
                ..AnalyzeOptions::default()
            };
            if let Some(b) = max_lattice {
                opts.max_lattice = b;
            }
            let cache = (!no_cache).then(Cache::from_env);
            let key = Cache::key(&lg.entry, prime, &opts);
            let cached = match &cache {
                Some(c) => match c.get(&key) {
                    Lookup::Hit(r) => Some(*r),
                    Lookup::Miss => None,
                    Lookup::Corrupt(why) => {
                        eprintln!("warning: discarding cache entry {}: {}", key, why);
                        None
                    }
                },
                None => None,
            };
            let report = match cached {
                Some(r) => r,
                None => {
                    let r = analyze(&lg, prime, &opts)?;
                    if let Some(c) = &cache {
                        if let Err(e) = c.put(&key, &r) {
                            eprintln!("warning: cache write failed: {}", e);
                        }
                    }
                    r
                }
            };
            if json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            } else {
                emit(&report.render_text())?;
            }
            Ok(true)
        }
        Command::Verify { suite, seed, json } => {
            if !SUITES.contains(&suite.as_str()) {
                bail!("unknown suite {}; expected one of {}", suite, SUITES.join(", "));
            }
            let rows = run_suite(&suite, seed)?;
            if json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&rows)?))?;
            } else {
                emit(&rows.iter().map(|r| r.line() + "\n").collect::<String>())?;
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            eprintln!("{}/{} checks passed", passed, rows.len());
            Ok(passed == rows.len())
        }
        Command::Catalog { command } => match command {
            CatalogCommand::Check { path } => {
                let groups = parse_catalog(&path).with_context(|| format!("in {}", path.display()))?;
                emit(&groups
                    .iter()
                    .map(|g| format!("{}: degree {}, order {}\n", g.entry.name, g.entry.degree, g.group.order()))
                    .collect::<String>())?;
                Ok(true)
            }
            CatalogCommand::List => {
                emit(&bundled_names().iter().map(|n| format!("{}\n", n)).collect::<String>())?;
                Ok(true)
            }
        },
    }
}
