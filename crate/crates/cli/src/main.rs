use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use transvect::instance::{generate_random, Instance, RandomParams};
use transvect::report::{amplitude_report, classify_report, toric_report};
use transvect::{closure, sp_order, Error, SymplecticSpace, DEFAULT_CAP};

/// Classify groups of symplectic similitudes over prime fields.
#[derive(Parser)]
#[command(name = "transvect", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the generated group and classify it.
    Classify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Maximum number of group elements to enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Number of files processed in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Amplitude of the representation given in the amplitude section.
    Amplitude { path: PathBuf },
    /// Drop and toric dimension of each generator.
    Toric { path: PathBuf },
    /// Order of Sp(dim, prime) from the formula and, under the cap, by enumeration.
    SpOrder {
        dim: usize,
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print a random block-group instance.
    GenRandom {
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        dimw: usize,
        #[arg(long, visible_alias = "ell")]
        prime: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        with_swap: bool,
        #[arg(long)]
        with_transvection: bool,
    },
}

/// Exit status and message of a failed command.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvariantViolation(_)) { 3 } else { 2 };
        Self { code, msg: e.to_string() }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        msg: format!("{}: {e}", path.display()),
    })?;
    Instance::parse(&text).map_err(|e| Failure {
        code: 2,
        msg: format!("{}: {e}", path.display()),
    })
}

fn classify_one(path: &Path, cap: usize) -> Result<String, Failure> {
    let inst = load(path)?;
    classify_report(&inst, cap).map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

/// Runs `classify_one` over `paths` on up to `jobs` threads, keeping input order.
fn classify_all(paths: &[PathBuf], cap: usize, jobs: usize) -> Vec<Result<String, Failure>> {
    let jobs = jobs.clamp(1, paths.len().max(1));
    let chunk = paths.len().div_ceil(jobs).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = paths
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|p| classify_one(p, cap)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

fn sp_order_report(dim: usize, prime: u64, cap: usize) -> Result<String, Failure> {
    let space = SymplecticSpace::standard(prime, dim)?;
    let formula = sp_order(dim, space.modulus())?;
    let mut out = format!("dim: {dim}\nprime: {prime}\nformula: {formula}\n");
    match closure(&space.sp_generators(), cap) {
        Ok(t) => {
            if t.len() as u128 != formula {
                return Err(Failure {
                    code: 3,
                    msg: format!("enumerated {} elements but the formula gives {formula}", t.len()),
                });
            }
            out.push_str(&format!("enumerated: {}\nmatch: yes\n", t.len()));
        }
        Err(Error::CapExceeded { cap, .. }) => out.push_str(&format!("enumerated: cap-exceeded {cap}\n")),
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Classify { paths, cap, jobs } => {
            let mut out = Vec::new();
            let mut first_err = None;
            for r in classify_all(&paths, cap, jobs) {
                match r {
                    Ok(report) => out.push(report),
                    Err(f) => {
                        eprintln!("error: {}", f.msg);
                        first_err.get_or_insert(f.code);
                    }
                }
            }
            // Reports for the files that worked are still printed.
            print!("{}", out.join("\n"));
            match first_err {
                Some(code) => Err(Failure {
                    code,
                    msg: String::new(),
                }),
                None => Ok(String::new()),
            }
        }
        Command::Amplitude { path } => {
            let inst = load(&path)?;
            amplitude_report(&inst)?.ok_or(Failure {
                code: 2,
                msg: format!("{}: no amplitude section", path.display()),
            })
        }
        Command::Toric { path } => Ok(toric_report(&load(&path)?)?),
        Command::SpOrder { dim, prime, cap } => sp_order_report(dim, prime, cap),
        Command::GenRandom {
            blocks,
            dimw,
            prime,
            seed,
            with_swap,
            with_transvection,
        } => Ok(generate_random(RandomParams {
            blocks,
            block_dim: dimw,
            prime,
            seed,
            with_swap,
            with_transvection,
        })?
        .serialize()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if !f.msg.is_empty() {
                eprintln!("error: {}", f.msg);
            }
            ExitCode::from(f.code)
        }
    }
}
