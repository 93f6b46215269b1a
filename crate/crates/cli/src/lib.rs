//! Subcommands behind the `cgp-portrait` binary.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 I/O or image error,
//! 3 invalid genome or mismatched inputs.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use cgp_portrait::evolve::{crossover, mutate, run_seeded};
use cgp_portrait::{
    build_sitter, evaluate, read_final_population, read_genome, render, save_png,
    write_genome, Error, FitnessReport, FocusWeights, Mode, RunConfig, RunResult,
    RunWriter, FOCUSED_W_R,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Parser)]
#[command(name = "cgp-portrait", version, about = "Evolve painterly portraits with Cartesian GP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an evolution against a sitter image.
    Evolve(EvolveArgs),
    /// Render a genome to a PNG at any size.
    Render(RenderArgs),
    /// Cross two genomes and write mutated offspring.
    Mate(MateArgs),
    /// Print resemblance, composition, tonality, harmony, painterly, combined.
    Score(ScoreArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    /// `key = value` config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub sitter: Option<PathBuf>,
    #[arg(long)]
    pub mask: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub generations: Option<u64>,
    /// Override any config key, e.g. `--set population=20`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Start from the final population of an earlier run directory.
    #[arg(long)]
    pub resume: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    pub genome: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub width: usize,
    #[arg(long, default_value_t = 256)]
    pub height: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MateArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Per-gene mutation rate applied after crossover.
    #[arg(long, default_value_t = 0.02)]
    pub mutation: f64,
    #[arg(long, default_value_t = 128)]
    pub width: usize,
    #[arg(long, default_value_t = 128)]
    pub height: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    pub genome: PathBuf,
    #[arg(long)]
    pub sitter: PathBuf,
    #[arg(long)]
    pub mask: Option<PathBuf>,
    #[arg(long = "w-r", default_value_t = FOCUSED_W_R)]
    pub w_r: f64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::Config(_)) => 1,
            CliError::Core(Error::Io { .. } | Error::Image { .. }) => 2,
            CliError::Core(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Resolve the effective configuration: defaults, then the file, then
/// `--set` overrides, then the dedicated flags.
pub fn resolve_config(args: &EvolveArgs) -> CliResult<RunConfig> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    for kv in &args.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    if let Some(s) = &args.sitter {
        cfg.sitter = Some(s.clone());
    }
    if let Some(m) = &args.mask {
        cfg.mask = Some(m.clone());
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(o) = &args.out {
        cfg.out_dir = o.clone();
    }
    if let Some(g) = args.generations {
        cfg.generations = g;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_evolve(args: &EvolveArgs) -> CliResult<RunResult> {
    let cfg = resolve_config(args)?;
    let sitter_path = cfg
        .sitter
        .clone()
        .ok_or_else(|| CliError::Usage("no sitter given (--sitter or `sitter =` in config)".into()))?;
    let sitter = build_sitter(&sitter_path, cfg.mask.as_deref())?;
    let seeds = match &args.resume {
        Some(dir) => read_final_population(dir)?,
        None => Vec::new(),
    };
    let mut writer = RunWriter::create(&cfg, sitter.dims())?;
    Ok(run_seeded(&cfg, &sitter, seeds, &mut writer)?)
}

pub fn cmd_render(args: &RenderArgs) -> CliResult<()> {
    if args.width == 0 || args.height == 0 {
        return Err(CliError::Usage("width and height must be positive".into()));
    }
    let g = read_genome(&args.genome)?;
    save_png(&render(&g, args.width, args.height), &args.out)?;
    Ok(())
}

/// Offspring are crossover of A and B followed by mutation, drawn from one
/// generator seeded with `--seed`. Returns the written genome paths.
pub fn cmd_mate(args: &MateArgs) -> CliResult<Vec<PathBuf>> {
    if !(0.0..=1.0).contains(&args.mutation) {
        return Err(CliError::Usage("--mutation must lie in [0, 1]".into()));
    }
    if args.width == 0 || args.height == 0 {
        return Err(CliError::Usage("width and height must be positive".into()));
    }
    let a = read_genome(&args.a)?;
    let b = read_genome(&args.b)?;
    std::fs::create_dir_all(&args.out).map_err(|e| Error::Io {
        path: args.out.clone(),
        source: e,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut written = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let child = mutate(&crossover(&a, &b, &mut rng)?, args.mutation, &mut rng);
        let stem = args.out.join(format!("child_{i:03}"));
        write_genome(stem.with_extension("cgp"), &child)?;
        save_png(
            &render(&child, args.width, args.height),
            stem.with_extension("png"),
        )?;
        written.push(stem.with_extension("cgp"));
    }
    Ok(written)
}

pub fn cmd_score(args: &ScoreArgs) -> CliResult<FitnessReport> {
    if !(0.0..=1.0).contains(&args.w_r) {
        return Err(CliError::Usage("--w-r must lie in [0, 1]".into()));
    }
    let g = read_genome(&args.genome)?;
    let sitter = build_sitter(&args.sitter, args.mask.as_deref())?;
    let weights = FocusWeights {
        mode: if args.w_r == FOCUSED_W_R {
            Mode::Focused
        } else {
            Mode::Associative
        },
        w_r: args.w_r,
    };
    Ok(evaluate(&g, &sitter, weights)?.1)
}

pub fn format_scores(r: &FitnessReport) -> String {
    format!(
        "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
        r.resemblance, r.composition, r.tonality, r.harmony, r.painterly, r.combined
    )
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let io = |e: std::io::Error| {
        CliError::Core(Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    };
    match &cli.command {
        Command::Evolve(a) => {
            let res = cmd_evolve(a)?;
            let last = res.log.last().expect("at least one generation");
            writeln!(
                out,
                "generation {}: best combined {:.6}, resemblance {:.6}",
                last.generation, last.best_combined, last.best_resemblance
            )
            .map_err(io)?;
        }
        Command::Render(a) => cmd_render(a)?,
        Command::Mate(a) => {
            for p in cmd_mate(a)? {
                writeln!(out, "{}", p.display()).map_err(io)?;
            }
        }
        Command::Score(a) => writeln!(out, "{}", format_scores(&cmd_score(a)?)).map_err(io)?,
    }
    Ok(())
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

