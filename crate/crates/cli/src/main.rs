//! `seaweed`: indices, winding signatures, contact forms and certificates for
//! type-C seaweed subalgebras of `sp(2n)`.
//!
//! Exit codes: 0 success (or certified), 1 usage or a property that does not
//! hold for the input, 2 parse or validation error, 3 internal inconsistency.

mod render;
mod report;

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use seaweed_core::meander::index_via_meander;
use seaweed_core::seaweed::all_descriptors;
use seaweed_core::verify::{self, gcd_formula, DEFAULT_BOUND, DEFAULT_TRIALS};
use seaweed_core::{winding, SeaweedDescriptor, SeaweedError};

const DEFAULT_SEED: u64 = 2024;

#[derive(Parser, Debug)]
#[command(name = "seaweed", version, about = "Type-C seaweed Lie algebras: index, winding-down, contact forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Oracle {
    /// Random forms tried by the index oracle.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Coefficients are drawn from [-bound, bound].
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: i64,
    #[arg(long, env = "SEAWEED_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full JSON report.
    Report {
        /// e.g. "C16 2|3 / 1|6"; read from stdin when omitted.
        seaweed: Option<String>,
        #[command(flatten)]
        oracle: Oracle,
    },
    /// The index.
    Index {
        seaweed: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Meander)]
        method: Method,
        #[command(flatten)]
        oracle: Oracle,
    },
    /// The homotopy type.
    Homotopy { seaweed: Option<String> },
    /// The winding-down signature.
    Signature { seaweed: Option<String> },
    /// The contact form (index one) or, with --general, the regular form.
    Form {
        seaweed: Option<String>,
        #[arg(long)]
        general: bool,
    },
    /// Exact verification; exits 0 iff the form is certified contact.
    Verify {
        seaweed: Option<String>,
        #[command(flatten)]
        oracle: Oracle,
    },
    /// One JSON line per (top, bottom) pair of rank n.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only seaweeds of this index.
        #[arg(long)]
        index: Option<usize>,
        /// Build and check the regular (or contact) form of each seaweed.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// DOT or SVG picture.
    Render {
        seaweed: Option<String>,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long, short)]
        output: Option<std::path::PathBuf>,
    },
    /// gcd(alpha+beta, beta+gamma) - 1 for alpha|beta / gamma.
    GcdIndex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        gamma: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Meander,
    Homotopy,
    Oracle,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum What {
    Meander,
    FullMeander,
    Matrix,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Dot,
    Svg,
}

enum Failure {
    Usage(String),
    Parse(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Inconsistent(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Inconsistent(m) => m,
        }
    }
}

impl From<SeaweedError> for Failure {
    fn from(e: SeaweedError) -> Self {
        match e {
            SeaweedError::Parse { .. }
            | SeaweedError::ZeroRank
            | SeaweedError::ZeroPart { .. }
            | SeaweedError::CompositionOverflow { .. } => Failure::Parse(e.to_string()),
            SeaweedError::Inconsistent(_) => Failure::Inconsistent(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn descriptor(arg: Option<String>) -> std::result::Result<SeaweedDescriptor, Failure> {
    let text = match arg {
        Some(t) => t,
        None => {
            let mut line = String::new();
            io::stdin().lock().read_line(&mut line)?;
            line
        }
    };
    Ok(text.trim().parse()?)
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Report { seaweed, oracle } => {
            let d = descriptor(seaweed)?;
            let r = report::build_report(&d, oracle.trials, oracle.bound, oracle.seed)?;
            print_json(&r)?;
            if !r.is_consistent() {
                return Err(Failure::Inconsistent(format!("{d}: index methods or verification disagree")));
            }
        }
        Command::Index { seaweed, method, oracle } => {
            let d = descriptor(seaweed)?;
            let params = (oracle.trials, oracle.bound, oracle.seed);
            match method {
                Method::Meander => println!("{}", index_via_meander(&d)),
                Method::Homotopy => println!("{}", winding::index_via_homotopy(&winding::homotopy_type(&d))),
                Method::Oracle => println!("{}", verify::index_oracle(&d, params.0, params.1, params.2)),
                Method::All => {
                    let values = report::IndexValues::compute(&d, Some(params));
                    print_json(&values)?;
                    if !values.agree {
                        return Err(Failure::Inconsistent(format!("{d}: index methods disagree")));
                    }
                }
            }
        }
        Command::Homotopy { seaweed } => {
            let d = descriptor(seaweed)?;
            println!("{}", winding::homotopy_type(&d));
        }
        Command::Signature { seaweed } => {
            let d = descriptor(seaweed)?;
            println!("{}", winding::signature(&d));
        }
        Command::Form { seaweed, general } => {
            let d = descriptor(seaweed)?;
            print_json(&report::build_form(&d, general)?.json)?;
        }
        Command::Verify { seaweed, oracle } => {
            let d = descriptor(seaweed)?;
            let r = report::build_report(&d, oracle.trials, oracle.bound, oracle.seed)?;
            #[derive(Serialize)]
            struct Out<'a> {
                seaweed: &'a str,
                certified: bool,
                kernel: Option<&'a str>,
                index: &'a report::IndexValues,
                verification: &'a verify::VerificationReport,
            }
            print_json(&Out {
                seaweed: &r.seaweed,
                certified: r.certified,
                kernel: r.verification.kernel_basis.first().and(r.form.kernel_generator.as_deref()),
                index: &r.index,
                verification: &r.verification,
            })?;
            if !r.is_consistent() {
                return Err(Failure::Inconsistent(format!("{d}: index methods or verification disagree")));
            }
            if !r.certified {
                return Err(Failure::Usage(format!("{d}: not certified contact")));
            }
        }
        Command::Enumerate { n, index, verify, jobs } => enumerate(n, index, verify, jobs)?,
        Command::Render {
            seaweed,
            what,
            format,
            output,
        } => {
            let d = descriptor(seaweed)?;
            let text = match what {
                What::Meander | What::FullMeander => {
                    let m = render::meander_for(&d, matches!(what, What::FullMeander));
                    match format {
                        Format::Dot => render::meander_dot(&d, &m),
                        Format::Svg => render::meander_svg(&d, &m),
                    }
                }
                What::Matrix => {
                    let form = report::build_form(&d, true)?.form;
                    let pic = render::MatrixPicture::new(&d, form.locations())?;
                    match format {
                        Format::Dot => render::matrix_dot(&d, &pic),
                        Format::Svg => render::matrix_svg(&d, &pic),
                    }
                }
            };
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::GcdIndex { n, alpha, beta, gamma } => {
            let value = verify::gcd_index(n, alpha, beta, gamma)?;
            let d = SeaweedDescriptor::new(n, vec![alpha, beta], vec![gamma])?;
            let meander = index_via_meander(&d);
            #[derive(Serialize)]
            struct Out {
                seaweed: String,
                gcd_index: usize,
                meander_index: usize,
            }
            print_json(&Out {
                seaweed: d.to_string(),
                gcd_index: value,
                meander_index: meander,
            })?;
            if meander != value {
                return Err(Failure::Inconsistent(format!(
                    "{d}: formula {} but meander index {meander}",
                    gcd_formula(alpha, beta, gamma)
                )));
            }
        }
    }
    Ok(())
}

const CHUNK: usize = 256;

fn enumerate(n: usize, index: Option<usize>, check: bool, jobs: usize) -> Outcome {
    if n == 0 {
        return Err(Failure::Parse(SeaweedError::ZeroRank.to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let all: Vec<SeaweedDescriptor> = all_descriptors(n)
        .filter(|d| index.map_or(true, |k| index_via_meander(d) == k))
        .collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for chunk in all.chunks(CHUNK) {
        let lines: Vec<_> = pool.install(|| {
            chunk
                .par_iter()
                .map(|d| report::enumeration_line(d, check))
                .collect::<Vec<_>>()
        });
        for line in lines {
            let line = line?;
            let text = serde_json::to_string(&line.line).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "{text}")?;
            if !line.consistent {
                return Err(Failure::Inconsistent(format!("{}: checks disagree", line.line.seaweed)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
