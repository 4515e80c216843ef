use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use expcert::format::{parse_system, write_points};
use expcert::homotopy::{solve_by_deformation, HomotopyConfig};
use expcert::numeric::MIN_BITS;
use expcert::{ExpKind, ExpSystem};

use crate::{emit, read_file};

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// System file.
    #[arg(long)]
    system: PathBuf,
    /// One truncation degree per link (`3,3,2,2`), or per kind (`sin=3,cos=2`).
    #[arg(long, value_name = "LIST", default_value = "")]
    truncate_degrees: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Precision in bits for endpoint polishing and the written points.
    #[arg(long, default_value_t = 256)]
    precision: u32,
    /// Candidate points file; the ledger goes to `<PATH>.ledger`.
    #[arg(long)]
    output: PathBuf,
    /// Extra attempts under a fresh γ for final-stage paths that fail.
    #[arg(long, default_value_t = 3)]
    retries: usize,
}

/// Resolves the degree list against the system's links.
fn truncation_degrees(system: &ExpSystem, list: &str) -> Result<Vec<u32>> {
    let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.iter().all(|s| !s.contains('=')) {
        let degrees = items
            .iter()
            .map(|s| s.parse::<u32>().with_context(|| format!("bad truncation degree `{s}`")))
            .collect::<Result<Vec<_>>>()?;
        if degrees.len() != system.m() {
            bail!("system has {} links but {} truncation degrees were given", system.m(), degrees.len());
        }
        return Ok(degrees);
    }
    let mut per_kind = Vec::new();
    for item in items {
        let Some((kind, degree)) = item.split_once('=') else {
            bail!("mixed forms in the degree list: `{item}`");
        };
        let kind = ExpKind::from_keyword(kind.trim()).with_context(|| format!("unknown kind `{kind}`"))?;
        let degree: u32 = degree.trim().parse().with_context(|| format!("bad truncation degree `{degree}`"))?;
        per_kind.push((kind, degree));
    }
    system
        .links()
        .iter()
        .map(|link| {
            per_kind
                .iter()
                .find(|(k, _)| *k == link.kind)
                .map(|&(_, d)| d)
                .with_context(|| format!("no truncation degree for {} links", link.kind))
        })
        .collect()
}

pub fn run(args: &SolveArgs) -> Result<u8> {
    let system = parse_system(&read_file(&args.system)?)?;
    let degrees = truncation_degrees(&system, &args.truncate_degrees)?;
    if args.precision < MIN_BITS {
        bail!("--precision must be at least {MIN_BITS} bits");
    }
    let mut config = HomotopyConfig { seed: args.seed, retries: args.retries, ..HomotopyConfig::default() };
    config.tracker.bits = args.precision;
    let run = solve_by_deformation(&system, &degrees, &config)?;
    emit(Some(&args.output), &write_points(&run.candidates))?;
    let mut ledger_path = args.output.clone().into_os_string();
    ledger_path.push(".ledger");
    emit(Some(&PathBuf::from(ledger_path)), &run.ledger.to_text())?;
    print!("{}", run.summary.to_text());
    Ok(0)
}
