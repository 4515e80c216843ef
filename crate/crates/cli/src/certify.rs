use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use expcert::certify::{certify_batch, AlphaConstants, BatchOptions, BatchResult};
use expcert::format::{parse_points, parse_system, AuditEntry, BatchReport, ReportMeta, ResidualEntry, REPORT_DIGITS};
use expcert::numeric::{lift, MIN_BITS};
use expcert::refine::{newton_refine, ResidualTable};
use expcert::{ArithmeticMode, BigComplex, ExactComplex, ExpSystem, Scalar};

use crate::{emit, read_file, Mode, OutputFormat};

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// System file.
    #[arg(long)]
    system: PathBuf,
    /// Points file.
    #[arg(long)]
    points: PathBuf,
    /// Arithmetic mode; defaults to the points file's declared mode, else
    /// rational for polynomial systems and float otherwise.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Floating precision in bits.
    #[arg(long, default_value_t = 96)]
    precision: u32,
    /// Newton steps applied to each point before certifying.
    #[arg(long, value_name = "K")]
    refine: Option<usize>,
    /// Group certified points by provably distinct zeros.
    #[arg(long)]
    distinct: bool,
    /// Decide whether each associated zero is real.
    #[arg(long)]
    real: bool,
    /// Treat the system as mapping reals to reals even with complex data.
    #[arg(long)]
    assume_real_map: bool,
    /// Recorded in the report; certification itself is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Repeat float certification at max(1024, 2·precision) bits and flag
    /// verdicts that change.
    #[arg(long)]
    audit: bool,
}

type Tables<R> = Vec<Option<ResidualTable<R>>>;

fn certify_in<S: Scalar>(
    system: &ExpSystem,
    points: &[Vec<ExactComplex>],
    bits: u32,
    refine: Option<usize>,
    options: BatchOptions,
) -> (BatchResult<S::Real>, Tables<S::Real>) {
    let mut lifted: Vec<Vec<S>> = points.iter().map(|p| lift(p, bits)).collect();
    let mut tables = vec![None; lifted.len()];
    if let Some(k) = refine {
        for (z, table) in lifted.iter_mut().zip(&mut tables) {
            if let Ok((refined, t)) = newton_refine(system, z, k) {
                *z = refined;
                *table = Some(t);
            }
        }
    }
    let result = certify_batch(system, &lifted, options, &AlphaConstants::default());
    (result, tables)
}

fn attach_residuals<R: expcert::numeric::Real>(report: &mut BatchReport, tables: &Tables<R>) {
    for (p, t) in report.points.iter_mut().zip(tables) {
        p.residuals = t.as_ref().map(|t| {
            t.rows
                .iter()
                .map(|r| ResidualEntry { k: r.k, beta: r.beta_decimal(REPORT_DIGITS) })
                .collect()
        });
    }
}

fn float_report(
    system: &ExpSystem,
    points: &[Vec<ExactComplex>],
    bits: u32,
    args: &CertifyArgs,
    options: BatchOptions,
) -> BatchReport {
    let (result, tables) = certify_in::<BigComplex>(system, points, bits, args.refine, options);
    let meta = ReportMeta { mode: ArithmeticMode::Floating, precision: bits, seed: args.seed };
    let mut report = BatchReport::from_batch(&result, &meta);
    attach_residuals(&mut report, &tables);
    report
}

pub fn run(args: &CertifyArgs) -> Result<u8> {
    let system = parse_system(&read_file(&args.system)?)?;
    let file = parse_points(&read_file(&args.points)?, system.dim())?;
    let mode = match (args.mode, file.mode) {
        (Some(Mode::Rational), _) => ArithmeticMode::ExactRational,
        (Some(Mode::Float), _) => ArithmeticMode::Floating,
        (None, Some(declared)) => declared,
        (None, None) if system.m() == 0 => ArithmeticMode::ExactRational,
        (None, None) => ArithmeticMode::Floating,
    };
    if mode == ArithmeticMode::ExactRational && system.m() > 0 {
        bail!("rational mode cannot evaluate exponential links; use --mode float");
    }
    if mode == ArithmeticMode::Floating && args.precision < MIN_BITS {
        bail!("--precision must be at least {MIN_BITS} bits");
    }
    if args.audit && mode == ArithmeticMode::ExactRational {
        bail!("--audit compares two floating precisions and needs --mode float");
    }
    if args.real && !args.assume_real_map && !system.has_real_data() {
        bail!("--real needs a system with real data, or --assume-real-map");
    }
    let options = BatchOptions {
        distinct: args.distinct,
        real: args.real,
        assume_real_map: args.assume_real_map,
    };
    let report = match mode {
        ArithmeticMode::ExactRational => {
            let (result, tables) = certify_in::<ExactComplex>(&system, &file.points, 0, args.refine, options);
            let meta = ReportMeta { mode, precision: MIN_BITS, seed: args.seed };
            let mut report = BatchReport::from_batch(&result, &meta);
            attach_residuals(&mut report, &tables);
            report
        }
        ArithmeticMode::Floating => {
            let mut report = float_report(&system, &file.points, args.precision, args, options);
            if args.audit {
                let high = (2 * args.precision).max(1024);
                let second = float_report(&system, &file.points, high, args, BatchOptions::default());
                for (p, q) in report.points.iter_mut().zip(&second.points) {
                    if p.error.is_none() && q.error.is_none() {
                        p.audit = Some(AuditEntry {
                            precision: high,
                            alpha_bound: q.alpha_bound.clone().unwrap_or_default(),
                            certified: q.certified,
                            agrees: p.certified == q.certified,
                        });
                    }
                }
            }
            report
        }
    };
    let text = match args.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    emit(args.output.as_ref(), &text)?;
    Ok(if report.all_certified() { 0 } else { 1 })
}
