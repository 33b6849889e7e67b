use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tripletrep::analysis::census_report;
use tripletrep::suite::{census_by_name, eval_word, run_suite, Suite, SuiteError, SuiteSpec};

/// Exact verification of triplet group representations.
#[derive(Parser, Debug)]
#[command(name = "tripletrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a theorem suite and write a JSON report.
    Run {
        /// tits, mu, two-local, l3-families, extensions or all
        suite: String,
        /// Inclusive range such as 3..7
        #[arg(long)]
        n: Option<String>,
        /// Comma-separated primes, e.g. 5,7
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u32>>,
        /// Kernel search depth
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Image closure cap
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
        /// Report path; printed to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the image of a word, e.g. `eval mu:n=3,k=1 "l1 l2"`.
    Eval { rep: String, word: String },
    /// Exhaustive census over F_p: triplet, virtual, welded or l3.
    Census {
        kind: String,
        #[arg(long)]
        p: u32,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), SuiteError> {
    let bad = || SuiteError::InvalidConfig(format!("expected a range like 3..7, got `{s}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn configure_threads() {
    if let Some(n) = std::env::var("TRIPLETREP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn execute(cli: Cli) -> Result<bool, SuiteError> {
    match cli.command {
        Command::Run {
            suite,
            n,
            primes,
            depth,
            cap,
            out,
        } => {
            let mut spec = SuiteSpec::new(suite.parse::<Suite>()?);
            spec.n_range = n.as_deref().map(parse_range).transpose()?;
            spec.primes = primes;
            spec.depth = depth;
            spec.cap = cap;
            let report = run_suite(&spec)?;
            let body = report.to_json();
            match out {
                Some(path) => std::fs::write(&path, body).map_err(|e| {
                    SuiteError::InvalidConfig(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{body}"),
            }
            for c in &report.checks {
                eprintln!("{:<5} {}", format!("{:?}", c.status).to_uppercase(), c.check_name);
            }
            Ok(report.all_passed())
        }
        Command::Eval { rep, word } => {
            println!("{}", eval_word(&rep, &word)?);
            Ok(true)
        }
        Command::Census { kind, p } => {
            let census = census_by_name(&kind, p)?;
            let report = census_report(&census)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
