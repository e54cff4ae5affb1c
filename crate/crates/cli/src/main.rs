//! `multdep`: batch runner for division polynomials, summation polynomials,
//! relation resultants, dependence loci and order sweeps.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand};
use multdep_cli::job::split_functions;
use multdep_cli::{run, Failure, JobSpec, Subcommand};

#[derive(Parser)]
#[command(name = "multdep", version, about = "Reproducible dependence-locus experiments")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory receiving the artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Division-polynomial table and height profile.
    Divpoly {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Summation polynomial construction and zero-set verification.
    Semaev {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Resultant table, T and bound ratios.
    Relate {
        #[command(flatten)]
        common: Common,
        /// MULT_MULT, MULT_LIN or LIN_LIN; inferred when omitted.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Enumerates one of the sets A–E prime by prime.
    Locus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        set: String,
    },
    /// Order sweep over a prime range.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// MULT_MULT, MULT_LIN or LIN_LIN.
        #[arg(long)]
        mode: Option<String>,
        /// Fixed threshold.
        #[arg(long)]
        t: Option<u64>,
        /// Threshold ⌊c·(log p)^e⌋.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        e: Option<f64>,
    },
    /// Runs the acceptance suite.
    Verify {
        /// "all" or a comma-separated list of criterion numbers.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Runs a TOML job spec.
    Run {
        spec: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// Curve as "a=<rational>,b=<rational>".
    #[arg(long)]
    curve: Option<String>,
    /// Comma-separated rational functions of X.
    #[arg(long)]
    phis: Option<String>,
    #[arg(long)]
    rhos: Option<String>,
    #[arg(long = "K")]
    k_box: Option<u64>,
    #[arg(long = "L")]
    l_box: Option<u64>,
    #[arg(long)]
    pmin: Option<u64>,
    #[arg(long)]
    pmax: Option<u64>,
    /// Extension degree d of F_{p^d}.
    #[arg(long)]
    degree: Option<u32>,
}

impl Common {
    fn into_job(self, subcommand: Subcommand) -> JobSpec {
        let mut job = JobSpec::new(subcommand);
        job.curve = self.curve;
        job.phis = self.phis.as_deref().map(split_functions).unwrap_or_default();
        job.rhos = self.rhos.as_deref().map(split_functions).unwrap_or_default();
        job.k_box = self.k_box;
        job.l_box = self.l_box;
        job.pmin = self.pmin;
        job.pmax = self.pmax;
        job.degree = self.degree;
        job
    }
}

fn job_of(command: Command) -> Result<JobSpec, Failure> {
    Ok(match command {
        Command::Divpoly { common, nmax } => {
            let mut job = common.into_job(Subcommand::Divpoly);
            job.nmax = nmax;
            job
        }
        Command::Semaev { common, n } => {
            let mut job = common.into_job(Subcommand::Semaev);
            job.n = n;
            job
        }
        Command::Relate { common, kind } => {
            let mut job = common.into_job(Subcommand::Relate);
            job.kind = kind;
            job
        }
        Command::Locus { common, set } => {
            let mut job = common.into_job(Subcommand::Locus);
            job.set = Some(set);
            job
        }
        Command::Sweep { common, mode, t, c, e } => {
            let mut job = common.into_job(Subcommand::Sweep);
            job.mode = mode;
            job.t = t;
            job.c = c;
            job.e = e;
            job
        }
        Command::Verify { suite, seed } => {
            let mut job = JobSpec::new(Subcommand::Verify);
            job.suite = suite;
            job.seed = seed;
            job
        }
        Command::Run { spec } => {
            let text = std::fs::read_to_string(&spec).map_err(Failure::io)?;
            JobSpec::from_toml(&text)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("thread pool: {e}");
        }
    }
    let outcome = job_of(cli.command).and_then(|mut job| {
        if let Some(dir) = &cli.out {
            job.out = Some(dir.display().to_string());
        }
        let output = run(&job)?;
        if let Some(dir) = &job.out {
            output.write_to(std::path::Path::new(dir))?;
        }
        Ok(output)
    });
    match outcome {
        Ok(output) => {
            print!("{}", output.summary);
            if output.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(failure) => {
            println!("{}", failure.to_json());
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
