use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use coverhom::cache::CACHE_DIR_ENV;
use coverhom::{run, CliError, Command, ComponentSelector, JobConfig, Report, VerifyLevel};

#[derive(Parser)]
#[command(name = "coverhom", version, about = "Homology representations of surface automorphisms on finite covers")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Rational components of Q[H] with kind, type and target labels.
    Decompose(Common),
    /// Homology of the cover: dimensions, multiplicities, Gram data, P̂.
    Cover(Common),
    /// Action of automorphisms in the stabilizer of p on the cover's homology.
    Act(Common),
    /// Built-in fixtures: the genus-2 double cover and the family classifications.
    Demo(Common),
}

#[derive(Args)]
struct Common {
    /// Surface genus (checked against the homomorphism file).
    #[arg(long)]
    genus: Option<usize>,
    /// Group file with `degree` and `generators`, or a built-in like `symmetric:3`.
    #[arg(long)]
    group: Option<String>,
    /// Homomorphism file.
    #[arg(long)]
    hom: Option<PathBuf>,
    /// Automorphism: built-in twist product such as `Tb1*Ta1^-1`, `id`, or a word file.
    #[arg(long = "aut")]
    auts: Vec<String>,
    /// Component index (0 is trivial) or `all`.
    #[arg(long, default_value = "all")]
    component: String,
    /// Treat the homomorphism as defined on a free group (rose cover).
    #[arg(long)]
    rose: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Character table cache directory; defaults to $COVERHOM_CACHE_DIR.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// `fast`, or `full` to add randomized sweeps.
    #[arg(long, default_value = "fast")]
    verify_level: String,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn config(command: Command, c: Common) -> Result<JobConfig, CliError> {
    let mut cfg = JobConfig::new(command);
    cfg.genus = c.genus;
    cfg.group = c.group;
    cfg.hom = c.hom;
    cfg.auts = c.auts;
    cfg.rose = c.rose;
    cfg.component = c.component.parse::<ComponentSelector>()?;
    cfg.out = c.out;
    cfg.cache_dir = c.cache_dir.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from));
    cfg.verify_level = c.verify_level.parse::<VerifyLevel>()?;
    cfg.seed = c.seed;
    Ok(cfg)
}

fn emit(report: &Report, out: Option<&PathBuf>) -> anyhow::Result<()> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Decompose(c) => (Command::Decompose, c),
        Sub::Cover(c) => (Command::Cover, c),
        Sub::Act(c) => (Command::Act, c),
        Sub::Demo(c) => (Command::Demo, c),
    };
    let start = Instant::now();
    let result = config(command, common).and_then(|cfg| run(&cfg).map(|r| (cfg, r)));
    let code = match result {
        Ok((cfg, report)) => {
            if let Err(e) = emit(&report, cfg.out.as_ref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            let failed = report.failed_checks();
            if failed.is_empty() {
                0
            } else {
                let e = CliError::ChecksFailed(failed.to_vec());
                eprintln!("error: {e}");
                e.exit_code()
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code as u8)
}
