//! Command-line front end: cover generation and serialization, bound tables,
//! star-discrepancy bounding, and cover verification.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 leaf budget exceeded.

use bracket_cover::bounds::{self, BoundsRow};
use bracket_cover::decomposer::BuildOptions;
use bracket_cover::serialize::{
    csv_header, read_point_set, write_leaf, write_truncation_trailer, LeafFormat,
};
use bracket_cover::verify::{self, PartitionChecker, VerificationReport};
use bracket_cover::{build_cover_with, discrepancy, height, Error, TypedBracket};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_MAX_LEAVES: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "bcover",
    version,
    about = "Bracketing covers of anchored boxes: generation, bounds, verification, star-discrepancy sandwich"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the cover for (d, epsilon) and write one leaf per line
    Cover(CoverArgs),
    /// Print the exact tree height and its closed-form bounds
    Height(HeightArgs),
    /// Emit the bound comparison table as CSV
    Bounds(BoundsArgs),
    /// Star-discrepancy sandwich bounds for a point-set file
    Disc(DiscArgs),
    /// Run the verification checks on a generated cover
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

impl From<Format> for LeafFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Jsonl => LeafFormat::Jsonl,
            Format::Csv => LeafFormat::Csv,
        }
    }
}

#[derive(Args)]
struct CoverArgs {
    /// Ambient dimension
    #[arg(short, long)]
    dimension: usize,
    /// Weight threshold in (0,1]
    #[arg(short, long)]
    epsilon: f64,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
    /// Abort after this many leaves
    #[arg(long, default_value_t = DEFAULT_MAX_LEAVES)]
    max_leaves: u64,
}

#[derive(Args)]
struct HeightArgs {
    #[arg(short, long)]
    dimension: usize,
    #[arg(short, long)]
    epsilon: f64,
}

#[derive(Args)]
struct BoundsArgs {
    /// Dimension or inclusive range, e.g. "3" or "2..6"
    #[arg(short, long)]
    dimension: String,
    /// Comma-separated epsilon list, e.g. "0.3,0.1,0.03"
    #[arg(short, long)]
    epsilon: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DiscArgs {
    /// Weight threshold in (0,1]; the sandwich gap is at most this
    #[arg(short, long)]
    epsilon: f64,
    /// Point-set file: one point per line, whitespace-separated coordinates
    #[arg(short, long)]
    input: PathBuf,
    /// Evaluate cover leaves concurrently
    #[arg(long)]
    parallel: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_LEAVES)]
    max_leaves: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    DropLeaf,
    InflateLeaf,
    BadDelta,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    dimension: usize,
    #[arg(short, long)]
    epsilon: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random points for the coverage check
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Sampled path pairs for the monotonicity check
    #[arg(long, default_value_t = 1_000)]
    pairs: usize,
    /// Run the independent checks concurrently
    #[arg(long)]
    parallel: bool,
    /// Corrupt the cover under test; the run must then fail
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cover(args) => cmd_cover(args),
        Command::Height(args) => cmd_height(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Disc(args) => cmd_disc(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_cover(args: CoverArgs) -> Result<ExitCode, Error> {
    let format: LeafFormat = args.format.into();
    let mut out = open_output(&args.output)?;
    if format == LeafFormat::Csv {
        writeln!(out, "{}", csv_header(args.dimension))?;
    }

    let mut write_err: Option<io::Error> = None;
    let opts = BuildOptions::new().max_leaves(args.max_leaves);
    let result = build_cover_with(args.dimension, args.epsilon, &opts, |leaf: &TypedBracket| {
        if write_err.is_none() {
            if let Err(e) = write_leaf(&mut out, leaf, format) {
                write_err = Some(io::Error::other(e.to_string()));
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e.into());
    }

    match result {
        Ok(stats) => {
            out.flush()?;
            drop(out);
            println!(
                "count={} height={} max_leaf_weight={:.17e} min_leaf_weight={:.17e}",
                stats.leaf_count, stats.height, stats.max_leaf_weight, stats.min_leaf_weight
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::BudgetExceeded { emitted }) => {
            write_truncation_trailer(&mut out, emitted, format)?;
            out.flush()?;
            eprintln!("error: leaf budget {} exceeded; output truncated", args.max_leaves);
            Ok(ExitCode::from(3))
        }
        Err(e) => Err(e),
    }
}

fn cmd_height(args: HeightArgs) -> Result<ExitCode, Error> {
    let h = height(args.dimension, args.epsilon)?;
    let bound = bounds::height_bound(args.dimension, args.epsilon)?;
    match bounds::improved_height_bound(args.dimension, args.epsilon) {
        Ok(improved) => println!("height={h} bound={bound} improved_bound={improved}"),
        Err(_) => println!("height={h} bound={bound}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_dimension_range(spec: &str) -> Result<Vec<usize>, Error> {
    let bad = |detail: String| Error::Domain {
        context: "dimension range",
        detail,
    };
    if let Some((lo, hi)) = spec.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().map_err(|e| bad(format!("{e}")))?;
        let hi: usize = hi.trim().parse().map_err(|e| bad(format!("{e}")))?;
        if lo < 1 || hi < lo {
            return Err(bad(format!("empty or invalid range {spec:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        let d: usize = spec.trim().parse().map_err(|e| bad(format!("{e}")))?;
        Ok(vec![d])
    }
}

fn parse_epsilon_list(spec: &str) -> Result<Vec<f64>, Error> {
    spec.split(',')
        .map(|tok| {
            tok.trim().parse::<f64>().map_err(|e| Error::Domain {
                context: "epsilon list",
                detail: format!("bad value {tok:?}: {e}"),
            })
        })
        .collect()
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn cmd_bounds(args: BoundsArgs) -> Result<ExitCode, Error> {
    let dims = parse_dimension_range(&args.dimension)?;
    let epsilons = parse_epsilon_list(&args.epsilon)?;
    let mut out = open_output(&args.output)?;
    writeln!(out, "{}", BoundsRow::COLUMNS.join(","))?;
    for &d in &dims {
        for &eps in &epsilons {
            let row = bounds::bounds_row(d, eps)?;
            let delta_cover = bounds::row_delta_cover(&row);
            let cells = [
                row.dimension.to_string(),
                row.epsilon.to_string(),
                row.height_bound.map(|v| v.to_string()).unwrap_or_default(),
                row.improved_height
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
                row.tree_binomial
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
                fmt_opt_f64(row.new_d2),
                fmt_opt_f64(row.new_dge3),
                fmt_opt_f64(row.intermediate),
                fmt_opt_f64(row.improved_card),
                fmt_opt_f64(row.thiemard),
                fmt_opt_f64(row.gpw),
                fmt_opt_f64(row.d2_explicit),
                fmt_opt_f64(row.rectangle),
                fmt_opt_f64(row.haussler),
                fmt_opt_f64(row.stirling_packing),
                fmt_opt_f64(delta_cover),
            ];
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_disc(args: DiscArgs) -> Result<ExitCode, Error> {
    let file = File::open(&args.input)?;
    let points = read_point_set(BufReader::new(file))?;
    let opts = discrepancy::SandwichOptions::new()
        .parallel(args.parallel)
        .max_leaves(args.max_leaves);
    let b = discrepancy::disc_sandwich_with(&points, args.epsilon, &opts)?;
    println!(
        "{},{},{},{},{},{}",
        b.lower, b.upper, b.epsilon, b.n, b.dimension, b.cover_size
    );
    Ok(ExitCode::SUCCESS)
}

fn run_partition_check(
    args: &VerifyArgs,
    fault: Option<Fault>,
) -> Result<VerificationReport, Error> {
    let mut checker =
        PartitionChecker::new(args.dimension, args.epsilon, args.samples, args.seed)?;
    let mut skipped_first = false;
    let mut seen = 0u64;
    bracket_cover::build_cover(args.dimension, args.epsilon, |leaf| {
        seen += 1;
        match fault {
            Some(Fault::DropLeaf) if !skipped_first => {
                skipped_first = true;
            }
            Some(Fault::InflateLeaf) if seen == 1 => {
                let mut beta = leaf.beta().coords().to_vec();
                beta[0] = (beta[0] * 1.3).min(1.0);
                let inflated = TypedBracket::new(
                    leaf.alpha().clone(),
                    bracket_cover::Point::new(beta).expect("inflated corner stays in the cube"),
                    leaf.type_index(),
                )
                .expect("inflated bracket is still a valid bracket");
                checker.feed(&inflated);
            }
            _ => checker.feed(leaf),
        }
    })?;
    Ok(checker.finish())
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let sibling_opts = match args.inject_fault {
        Some(Fault::BadDelta) => BuildOptions::new().delta_exponent_fault(true),
        _ => BuildOptions::new(),
    };

    type Sections = Vec<(&'static str, Result<VerificationReport, Error>)>;
    let sections: Sections = if args.parallel {
        let (partition, (siblings, (delta, mono))) = rayon::join(
            || run_partition_check(&args, args.inject_fault),
            || {
                rayon::join(
                    || verify::check_sibling_weights(args.dimension, args.epsilon, &sibling_opts),
                    || {
                        rayon::join(
                            || verify::check_delta_recursion(args.dimension, args.epsilon, None),
                            || {
                                verify::check_monotonicity(
                                    args.dimension,
                                    args.epsilon,
                                    args.pairs,
                                    args.seed,
                                )
                            },
                        )
                    },
                )
            },
        );
        vec![
            ("partition", partition),
            ("sibling_weights", siblings),
            ("delta_recursion", delta),
            ("monotonicity", mono),
        ]
    } else {
        vec![
            ("partition", run_partition_check(&args, args.inject_fault)),
            (
                "sibling_weights",
                verify::check_sibling_weights(args.dimension, args.epsilon, &sibling_opts),
            ),
            (
                "delta_recursion",
                verify::check_delta_recursion(args.dimension, args.epsilon, None),
            ),
            (
                "monotonicity",
                verify::check_monotonicity(args.dimension, args.epsilon, args.pairs, args.seed),
            ),
        ]
    };

    let mut all_ok = true;
    for (name, result) in sections {
        println!("[{name}]");
        match result {
            Ok(report) => {
                println!("{report}");
                if !report.all_passed() {
                    all_ok = false;
                }
            }
            Err(e) => return Err(e),
        }
    }
    if all_ok {
        println!("verification: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification: FAIL");
        Ok(ExitCode::from(1))
    }
}
