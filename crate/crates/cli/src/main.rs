use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::Value;

use cmkl_core::analysis::{characters_json, kl_basis_json};
use cmkl_core::cherednik::{inertia_and_cells, Rank1Params};
use cmkl_core::conjecture::{b2_regime_report, check_rank1_vs_a1, emit_report, Regime, ReportEntry};
use cmkl_core::ordered::parse_rational;
use cmkl_core::{analyze, parse_spec, BigRational, CharacterTable, KlCache, ParsedSpec};

/// Kazhdan–Lusztig and Calogero–Moser cells.
#[derive(Parser)]
#[command(name = "cmkl", version)]
struct Cli {
    /// KL cache directory (default: $CMKL_CACHE_DIR, if set)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the KL cache
    #[arg(long, global = true, conflicts_with = "cache_dir")]
    no_cache: bool,
    /// Write JSON here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Left, right and two-sided cells with cell characters
    Cells {
        /// Specification file, or `-` for standard input
        spec: PathBuf,
    },
    /// The Kazhdan–Lusztig basis in terms of the standard basis
    Klbasis { spec: PathBuf },
    /// The character table of the group
    Characters { spec: PathBuf },
    /// Calogero–Moser cells of the cyclic group of order d
    CmRank1 {
        #[arg(long)]
        d: usize,
        /// Comma-separated c_1..c_{d-1}
        #[arg(long, conflicts_with = "kappa", required_unless_present = "kappa")]
        c: Option<String>,
        /// Comma-separated κ_1..κ_d summing to zero
        #[arg(long)]
        kappa: Option<String>,
    },
    /// Compare CM and KL cells at d = 2 and report B2 regimes
    Conjecture {
        /// Comma-separated values of c for the d = 2 comparison
        #[arg(long, default_value = "0,1/2,1,3,7/5")]
        c: String,
        /// Skip the B2 regime reports
        #[arg(long)]
        no_b2: bool,
        /// Report only this B2 point, given as `a,b`
        #[arg(long, conflicts_with = "no_b2")]
        b2: Option<String>,
    },
}

enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn internal<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Internal(e.into())
}

fn read_spec(path: &Path) -> Result<ParsedSpec, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input)?;
        s
    } else {
        fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(input)?
    };
    parse_spec(&text).map_err(|e| input(anyhow!("{}: {e}", path.display())))
}

fn rationals(list: &str) -> Result<Vec<BigRational>, Failure> {
    list.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| input(anyhow!("not a rational: `{}`", t.trim()))))
        .collect()
}

fn cache_for(cli: &Cli) -> KlCache {
    if cli.no_cache {
        KlCache::disabled()
    } else if let Some(dir) = &cli.cache_dir {
        KlCache::new(dir)
    } else {
        KlCache::from_env()
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let cache = cache_for(cli);
    match &cli.command {
        Command::Cells { spec } => {
            let p = read_spec(spec)?;
            let (table, _) = cache.get_or_compute(&p.group, &p.weights).map_err(internal)?;
            let a = analyze(&p.group, &table).map_err(internal)?;
            Ok(a.to_json(&p.group, &p.weights))
        }
        Command::Klbasis { spec } => {
            let p = read_spec(spec)?;
            let (table, _) = cache.get_or_compute(&p.group, &p.weights).map_err(internal)?;
            Ok(kl_basis_json(&p.group, &table))
        }
        Command::Characters { spec } => {
            let p = read_spec(spec)?;
            Ok(characters_json(&p.group, &CharacterTable::compute(&p.group)))
        }
        Command::CmRank1 { d, c, kappa } => {
            let params = match (c, kappa) {
                (Some(c), _) => Rank1Params::from_rational_c(*d, &rationals(c)?),
                (None, Some(k)) => Rank1Params::from_rational_kappa(*d, &rationals(k)?),
                (None, None) => unreachable!("clap requires one of --c, --kappa"),
            }
            .map_err(input)?;
            Ok(inertia_and_cells(&params).to_json())
        }
        Command::Conjecture { c, no_b2, b2 } => {
            let mut results = Vec::new();
            for c in rationals(c)? {
                let r = check_rank1_vs_a1(&c, &cache).map_err(classify)?;
                results.push(ReportEntry::Rank1(r));
            }
            let points: Vec<(BigRational, BigRational)> = match b2 {
                Some(ab) => match rationals(ab)?.as_slice() {
                    [a, b] => vec![(a.clone(), b.clone())],
                    _ => return Err(input(anyhow!("--b2 expects `a,b`"))),
                },
                None if *no_b2 => Vec::new(),
                None => Regime::ALL.iter().flat_map(|r| r.samples()).collect(),
            };
            for (a, b) in points {
                let r = b2_regime_report(&a, &b, &cache).map_err(classify)?;
                results.push(ReportEntry::B2(Box::new(r)));
            }
            Ok(emit_report(&results))
        }
    }
}

fn classify(e: cmkl_core::conjecture::ConjectureError) -> Failure {
    use cmkl_core::conjecture::ConjectureError;
    match e {
        ConjectureError::NegativeParameter => input(e),
        other => internal(other),
    }
}

fn emit(cli: &Cli, doc: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            use io::Write;
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(&cli).and_then(|doc| emit(&cli, &doc).map_err(input));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
