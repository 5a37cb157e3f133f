use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use terncode_core::{
    automorphism_order, canonical_certificate, count_t, lower_bound, maximal_dimension, save_manifest,
    set_enumeration_cap, Classifier, Error, LinearCode,
};

#[derive(Parser)]
#[command(name = "terncode", version, about = "Classify ternary self-orthogonal codes up to monomial equivalence")]
struct Cli {
    /// Largest dimension enumerated exhaustively (3^cap vectors)
    #[arg(long, global = true, env = "TERNCODE_CAP")]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify self-orthogonal [n,k] codes and print `classes=<c> residual=<r>`
    Classify(ClassifyArgs),
    /// Number of distinct self-orthogonal [n,k] codes
    Mass(Params),
    /// Lower bound on the number of inequivalent self-orthogonal [n,k] codes
    Bound(Params),
    /// Canonical certificate of a code, in hex
    Canon { code: PathBuf },
    /// Whether two codes are monomially equivalent (exit 1 if not)
    Equiv { a: PathBuf, b: PathBuf },
    /// Order of the monomial automorphism group
    Aut { code: PathBuf },
    /// Minimum weight
    Minwt { code: PathBuf },
}

#[derive(Args)]
struct Params {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(short)]
    n: usize,
    #[arg(short, required_unless_present = "maximal", conflicts_with = "maximal")]
    k: Option<usize>,
    /// Classify maximal self-orthogonal codes (k derived from n)
    #[arg(long)]
    maximal: bool,
    /// Directory for the manifest and the cached subproblem manifests
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reuse subproblem manifests already present in the output directory
    #[arg(long, requires = "out")]
    resume: bool,
    /// Worker threads (defaults to the number of CPUs)
    #[arg(long)]
    threads: Option<usize>,
}

/// Failures mapped onto the exit-code contract.
enum Failure {
    /// 1: a well-formed negative answer
    Negative,
    Usage(String),
    Capacity(String),
    Audit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } | Error::OracleCapacity { .. } => Failure::Capacity(e.to_string()),
            Error::Incomplete { .. } | Error::Integrity(_) | Error::Data(_) => Failure::Audit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_code(path: &Path) -> Result<LinearCode, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    LinearCode::parse_code_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn classify(args: &ClassifyArgs) -> Outcome {
    if args.n == 0 || args.n > terncode_core::gf3::MAX_LENGTH {
        return Err(Failure::Usage(format!("length must be in 1..={}", terncode_core::gf3::MAX_LENGTH)));
    }
    let k = args.k.unwrap_or_else(|| maximal_dimension(args.n));
    if k > args.n {
        return Err(Failure::Usage(format!("dimension {k} exceeds length {}", args.n)));
    }
    if args.threads == Some(0) {
        return Err(Failure::Usage("--threads must be positive".into()));
    }
    let mut classifier = Classifier::new();
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        classifier = classifier.with_cache_dir(dir, args.resume, 16);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let manifest = pool.install(|| {
        if args.maximal {
            classifier.maximal_manifest(args.n)
        } else {
            classifier.manifest(args.n, k).cloned()
        }
    })?;
    if let Some(dir) = &args.out {
        if args.maximal {
            save_manifest(&manifest, &dir.join(format!("maximal_n{}.manifest", args.n)))?;
        }
    }
    println!("classes={} residual={}", manifest.class_count(), manifest.residual());
    if manifest.is_complete() {
        Ok(())
    } else {
        Err(Failure::Audit(format!("mass audit of [{},{k}] left residual {}", args.n, manifest.residual())))
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(cap) = cli.cap {
        set_enumeration_cap(cap);
    }
    match &cli.command {
        Command::Classify(args) => classify(args)?,
        Command::Mass(p) => println!("{}", count_t(p.n, p.k)?),
        Command::Bound(p) => println!("{}", lower_bound(p.n, p.k)?),
        Command::Canon { code } => println!("{}", canonical_certificate(&read_code(code)?)?.to_hex()),
        Command::Equiv { a, b } => {
            let (a, b) = (read_code(a)?, read_code(b)?);
            if terncode_core::are_equivalent(&a, &b)? {
                println!("equivalent");
            } else {
                println!("inequivalent");
                return Err(Failure::Negative);
            }
        }
        Command::Aut { code } => println!("{}", automorphism_order(&read_code(code)?)?.order),
        Command::Minwt { code } => println!("{}", read_code(code)?.minimum_weight()?),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Audit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
