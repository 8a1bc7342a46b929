//! Command-line front end: analyze one Bott matrix, run the census over a
//! dimension range, or cross-validate the spin^c decision routes.
//!
//! Exit codes: 0 success, 1 I/O error, 2 parse error, 3 refused long run,
//! 4 verification failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use realbott::census::{self, CensusRow};
use realbott::{analyze, AnalysisReport, BottMatrix};

#[derive(Parser)]
#[command(
    name = "realbott",
    version,
    about = "Invariants and census of real Bott manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single matrix file: orientability, Betti numbers, homology,
    /// Stiefel-Whitney data, spin and spin^c flags.
    Analyze {
        /// Path to a matrix in the text format (n lines of n 0/1 tokens,
        /// '#' comment lines allowed)
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Report each spin^c decision route separately
        #[arg(long)]
        all_oracles: bool,
    },
    /// Count orientable, spin^c and spin matrices per dimension.
    Census {
        /// Dimension range, e.g. "4..8" (inclusive) or a single dimension
        #[arg(long, default_value = "4..8")]
        dims: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Permit dimension 10 (2^36 matrices; hours of CPU)
        #[arg(long)]
        allow_long: bool,
        /// Suppress wall-clock timings for byte-stable output
        #[arg(long)]
        no_timing: bool,
    },
    /// Cross-validate all spin^c decision routes against each other.
    Verify {
        /// Exhaustive check up to this dimension (at most 7)
        #[arg(long, default_value_t = 6)]
        max_exhaustive: usize,
        /// Random orientable samples per dimension 4..10
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_REFUSED_LONG: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze {
            path,
            format,
            all_oracles,
        } => cmd_analyze(&path, format, all_oracles),
        Command::Census {
            dims,
            workers,
            format,
            allow_long,
            no_timing,
        } => cmd_census(&dims, workers, format, allow_long, no_timing),
        Command::Verify {
            max_exhaustive,
            samples,
            seed,
        } => cmd_verify(max_exhaustive, samples, seed),
    };
    ExitCode::from(code)
}

fn cmd_analyze(path: &PathBuf, format: Format, all_oracles: bool) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return EXIT_IO;
        }
    };
    let matrix = match BottMatrix::parse(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let report = analyze(&matrix);
    match format {
        Format::Table => print_report_table(&report, all_oracles),
        Format::Csv => print_report_csv(&report),
        Format::JsonLines => println!("{}", report_json(&report, all_oracles)),
    }
    0
}

/// Renders "Z^a + (Z/2)^b" with zero-rank factors omitted.
fn group_string(free_rank: usize, torsion_rank: usize) -> String {
    let mut parts = Vec::new();
    if free_rank > 0 {
        parts.push(format!("Z^{free_rank}"));
    }
    if torsion_rank > 0 {
        parts.push(format!("(Z/2)^{torsion_rank}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn flag(b: Option<bool>) -> String {
    match b {
        Some(true) => "true".into(),
        Some(false) => "false".into(),
        None => "n/a".into(),
    }
}

fn print_report_table(r: &AnalysisReport, all_oracles: bool) {
    println!("n: {}", r.n);
    println!("orientable: {}", r.orientable);
    println!("b1: {}", r.b1);
    println!("b2: {}", r.b2);
    println!(
        "H1: {}",
        group_string(r.homology.h1_free_rank, r.homology.h1_torsion_rank)
    );
    println!(
        "H2(Z): {}",
        group_string(r.homology.h2_free_rank, r.homology.h2_torsion_rank)
    );
    println!("dim img rho2: {}", r.homology.dim_img_rho2);
    println!("w1: {}", r.w1);
    match &r.w2_square_free {
        Some(p) => println!("w2 square-free part: {p}"),
        None => println!("w2 square-free part: n/a"),
    }
    println!("spin: {}", flag(r.spin));
    println!("spinc: {}", flag(r.spinc));
    if all_oracles {
        match &r.spinc_by_oracle {
            Some(o) => {
                println!("spinc (combinatorial): {}", o.combinatorial);
                println!("spinc (linear): {}", o.linear);
                println!("spinc (bockstein): {}", o.bockstein);
            }
            None => println!("spinc oracles: n/a"),
        }
    }
    match &r.derived {
        Some(d) => {
            println!("derived matrix:");
            print!("{d}");
        }
        None => println!("derived matrix: n/a"),
    }
}

fn print_report_csv(r: &AnalysisReport) {
    println!("n,orientable,b1,b2,h1,h2,dim_img_rho2,spin,spinc");
    println!(
        "{},{},{},{},{},{},{},{},{}",
        r.n,
        r.orientable,
        r.b1,
        r.b2,
        group_string(r.homology.h1_free_rank, r.homology.h1_torsion_rank),
        group_string(r.homology.h2_free_rank, r.homology.h2_torsion_rank),
        r.homology.dim_img_rho2,
        flag(r.spin),
        flag(r.spinc),
    );
}

fn report_json(r: &AnalysisReport, all_oracles: bool) -> String {
    let mut obj = serde_json::json!({
        "n": r.n,
        "orientable": r.orientable,
        "b1": r.b1,
        "b2": r.b2,
        "h1": group_string(r.homology.h1_free_rank, r.homology.h1_torsion_rank),
        "h2": group_string(r.homology.h2_free_rank, r.homology.h2_torsion_rank),
        "dim_img_rho2": r.homology.dim_img_rho2,
        "w1": r.w1.to_string(),
        "w2_square_free": r.w2_square_free.as_ref().map(|p| p.to_string()),
        "derived": r.derived.as_ref().map(|d| d.to_string()),
        "spin": r.spin,
        "spinc": r.spinc,
    });
    if all_oracles {
        obj["spinc_by_oracle"] = match &r.spinc_by_oracle {
            Some(o) => serde_json::json!({
                "combinatorial": o.combinatorial,
                "linear": o.linear,
                "bockstein": o.bockstein,
            }),
            None => serde_json::Value::Null,
        };
    }
    obj.to_string()
}

fn parse_dims(spec: &str) -> Option<(usize, usize)> {
    if let Some((a, b)) = spec.split_once("..") {
        let lo = a.trim().parse().ok()?;
        let hi = b.trim().parse().ok()?;
        Some((lo, hi))
    } else {
        let n = spec.trim().parse().ok()?;
        Some((n, n))
    }
}

fn elapsed_string(row: &CensusRow, no_timing: bool) -> String {
    if no_timing {
        "-".to_string()
    } else {
        format!("{:.3}", row.elapsed.as_secs_f64())
    }
}

fn cmd_census(dims: &str, workers: usize, format: Format, allow_long: bool, no_timing: bool) -> u8 {
    let Some((lo, hi)) = parse_dims(dims) else {
        eprintln!("error: cannot parse --dims {dims:?}; expected e.g. 4..8");
        return EXIT_IO;
    };
    if lo < census::MIN_CENSUS_DIM || hi > census::MAX_CENSUS_DIM || lo > hi {
        eprintln!(
            "error: --dims must lie within {}..{}",
            census::MIN_CENSUS_DIM,
            census::MAX_CENSUS_DIM
        );
        return EXIT_IO;
    }
    if hi >= 10 && !allow_long {
        eprintln!(
            "error: dimension 10 enumerates 2^36 ~ 6.9e10 matrices (hours of CPU); \
             pass --allow-long to proceed"
        );
        return EXIT_REFUSED_LONG;
    }
    if workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return EXIT_IO;
    }
    if format == Format::Csv {
        println!("dimension,orientable,spinc,spin,elapsed_s");
    }
    for n in lo..=hi {
        let row = census::census(n, workers).expect("dims validated");
        let elapsed = elapsed_string(&row, no_timing);
        match format {
            Format::Table => {
                let mut line = String::new();
                write!(
                    line,
                    "n={:<3} orientable={:<12} spinc={:<10} spin={:<8}",
                    row.n, row.orientable_count, row.spinc_count, row.spin_count
                )
                .unwrap();
                if !no_timing {
                    write!(line, " elapsed={elapsed}s").unwrap();
                }
                println!("{}", line.trim_end());
            }
            Format::Csv => println!(
                "{},{},{},{},{}",
                row.n, row.orientable_count, row.spinc_count, row.spin_count, elapsed
            ),
            Format::JsonLines => {
                let mut obj = serde_json::json!({
                    "dimension": row.n,
                    "orientable": row.orientable_count,
                    "spinc": row.spinc_count,
                    "spin": row.spin_count,
                });
                if !no_timing {
                    obj["elapsed_s"] = serde_json::json!(row.elapsed.as_secs_f64());
                }
                println!("{obj}");
            }
        }
    }
    0
}

fn cmd_verify(max_exhaustive: usize, samples: usize, seed: u64) -> u8 {
    if max_exhaustive > 7 {
        eprintln!("error: --max-exhaustive is capped at 7");
        return EXIT_IO;
    }
    match census::verify_oracles(max_exhaustive, samples, seed) {
        Ok(report) => {
            println!(
                "ok: {} exhaustive and {} sampled matrices, all oracles agree",
                report.exhaustive_checked, report.sampled_checked
            );
            0
        }
        Err(failure) => {
            eprintln!("verification failed: {}", failure.check);
            eprintln!("counterexample matrix:");
            eprint!("{}", failure.matrix);
            EXIT_VERIFY_FAILED
        }
    }
}
