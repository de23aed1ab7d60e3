use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sumfree_core::characters::Character;
use sumfree_core::discrepancy::delta_table;
use sumfree_core::harness::config::DEFAULT_SAMPLES;
use sumfree_core::harness::sweep::render;
use sumfree_core::harness::{configure_threads, run_suite, sweep, OutputFormat, SweepConfig};
use sumfree_core::lfunctions::{l_one, ProductCharacter, SmallModulusCharacter};
use sumfree_core::sumfree::{default_cap, sf_exact, sf_lower_bound};
use sumfree_core::{Interval, PrimeContext, Result, SubgroupContext};

#[derive(Parser)]
#[command(name = "sumfree", version, about = "Sum-free subsets, character sums and L(1, χ) over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite over a range of primes.
    Verify(VerifyArgs),
    /// Print the coset discrepancies Δ_ξ as exact fractions.
    Discrepancy {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        index: u32,
        #[arg(long, value_enum, default_value = "thirds")]
        interval: IntervalArg,
    },
    /// Largest solution-free subset of a set.
    Sf(SfArgs),
    /// L(1, χ_t·χ_small) for the character χ_t mod p.
    Lvalue {
        #[arg(long)]
        p: u64,
        #[arg(long = "char-exp")]
        char_exp: u64,
        #[arg(long, value_parser = ["3", "8"])]
        small: String,
    },
    /// Run the suites listed in a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    pmin: u64,
    #[arg(long)]
    pmax: u64,
    /// Subgroup index; repeatable.
    #[arg(long = "index")]
    indices: Vec<u32>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SfArgs {
    #[arg(long)]
    p: u64,
    /// Comma-separated residues.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    set: Vec<u32>,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, conflicts_with = "dilation")]
    exact: bool,
    #[arg(long)]
    dilation: bool,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IntervalArg {
    Thirds,
    Eighths,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Ok(false) when some check failed.
fn run(command: Command) -> Result<bool> {
    configure_threads()?;
    match command {
        Command::Verify(args) => verify(args),
        Command::Discrepancy { p, index, interval } => {
            let ctx = PrimeContext::new(p)?;
            let sub = SubgroupContext::new(&ctx, index)?;
            let iv = match interval {
                IntervalArg::Thirds => Interval::thirds(ctx.p()),
                IntervalArg::Eighths => Interval::eighths(ctx.p()),
            };
            let table = delta_table(&sub, &iv);
            println!("p,n,coset_rep,delta_num,delta_den");
            for (xi, rep) in sub.coset_reps().iter().enumerate() {
                let d = table.delta(xi as u32);
                println!("{p},{index},{rep},{},{}", d.numer(), d.denom());
            }
            Ok(true)
        }
        Command::Sf(args) => {
            let ctx = PrimeContext::new(args.p)?;
            let cap = args.cap.unwrap_or(default_cap(args.k));
            let use_exact = args.exact || (!args.dilation && args.set.len() <= cap);
            let report = if use_exact {
                sf_exact(&ctx, &args.set, args.k, cap)?
            } else {
                sf_lower_bound(&ctx, &args.set, args.k)?
            };
            let witness: Vec<String> = report.witness.iter().map(u32::to_string).collect();
            println!("value={}", report.value);
            println!("psi={}", report.psi);
            println!("witness={}", witness.join(","));
            println!("exact={}", report.exact);
            Ok(true)
        }
        Command::Lvalue { p, char_exp, small } => {
            let ctx = PrimeContext::new(p)?;
            let small = match small.as_str() {
                "3" => SmallModulusCharacter::Chi3,
                _ => SmallModulusCharacter::Chi8,
            };
            let chi = Character::new(&ctx, char_exp);
            let l = l_one(&ProductCharacter::new(chi, small))?;
            println!("re={}", l.re);
            println!("im={}", l.im);
            Ok(true)
        }
        Command::Sweep { config } => {
            let cfg = SweepConfig::load(&config)?;
            let reports = sweep(&cfg)?;
            println!("suite,total,passed,failed");
            for r in &reports {
                let s = r.summary;
                println!("{},{},{},{}", r.suite, s.total, s.passed, s.failed);
            }
            Ok(reports.iter().all(|r| r.all_passed()))
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let mut cfg = SweepConfig::range(args.pmin, args.pmax);
    cfg.indices = args.indices;
    cfg.tolerance = args.tol;
    cfg.samples = args.samples;
    cfg.format = args.format.into();
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let report = run_suite(&args.suite, &cfg)?;
    let text = render(&report, cfg.format)?;
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    let s = report.summary;
    eprintln!("{}: {} cases, {} passed, {} failed", report.suite, s.total, s.passed, s.failed);
    Ok(report.all_passed())
}
