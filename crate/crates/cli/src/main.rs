use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use closed_episodes::oracle::{enumerate_episodes, naive_fclosed, BudgetError};
use closed_episodes::{
    mine_detailed, ClosureMode, EpisodeRecord, Measure, MiningConfig, MiningError,
};

use closed_episodes_cli::corpus::{load_sequence, CorpusOptions};
use closed_episodes_cli::output::{emit, sort_records, write_report, Format};

#[derive(Parser, Debug)]
#[command(
    name = "closed-episodes",
    version,
    about = "Mine closed episodes from a token sequence"
)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force f-closed episodes, for regenerating test fixtures.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MeasureArg {
    Fixed,
    Disjoint,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Fixed => Measure::Fixed,
            MeasureArg::Disjoint => Measure::Disjoint,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ClosureArg {
    I,
    E,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    FClosed,
    IClosed,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Lowercase every token
    #[arg(long)]
    lowercase: bool,
    /// Drop non-alphanumeric characters from tokens
    #[arg(long)]
    strip_punctuation: bool,
    /// File with one stop word per line
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,
}

impl CorpusArgs {
    fn options(&self) -> CorpusOptions {
        CorpusOptions {
            lowercase: self.lowercase,
            strip_punctuation: self.strip_punctuation,
            stopword_file: self.stopwords.clone(),
        }
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Maximal window width
    #[arg(long, required = true)]
    window: Option<usize>,
    /// Frequency threshold, as a count
    #[arg(long, required = true)]
    min_freq: Option<usize>,
    #[arg(long, value_enum, default_value = "fixed")]
    measure: MeasureArg,
    #[arg(long, value_enum, default_value = "i")]
    closure: ClosureArg,
    /// Largest episode to consider
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long, value_enum, default_value = "f-closed")]
    emit: Emit,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write per-size counts as CSV
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Write episodes here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Whitespace-separated tokens
    #[arg(required = true)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    window: usize,
    #[arg(long)]
    min_freq: usize,
    #[arg(long, value_enum, default_value = "fixed")]
    measure: MeasureArg,
    #[arg(long, default_value_t = 4)]
    max_nodes: usize,
    #[command(flatten)]
    corpus: CorpusArgs,
    input: PathBuf,
}

fn writer(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("EPISODE_THREADS") else {
        return Ok(());
    };
    let n: usize = value.trim().parse().map_err(|_| {
        MiningError::Config(format!("EPISODE_THREADS must be a number, got `{value}`"))
    })?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    configure_threads()?;
    let config = MiningConfig {
        window: args.window.expect("required by clap"),
        min_freq: args.min_freq.expect("required by clap"),
        measure: args.measure.into(),
        max_nodes: args.max_nodes,
        closure: match args.closure {
            ClosureArg::I => ClosureMode::Instance,
            ClosureArg::E => ClosureMode::Edge,
        },
        add_intermediate: true,
    };
    config.validate()?;
    let input = args.input.expect("required by clap");
    let seq = load_sequence(&input, &args.corpus.options())?;

    let started = Instant::now();
    let result = mine_detailed(&seq, &config)?;
    let (mut records, kind): (Vec<EpisodeRecord>, &str) = match (args.emit, config.closure) {
        (Emit::FClosed, _) => (result.f_closed.clone(), "f-closed"),
        (Emit::IClosed, ClosureMode::Instance) => (result.closed.clone(), "i-closed"),
        (Emit::IClosed, ClosureMode::Edge) => (result.closed.clone(), "e-closed"),
    };
    sort_records(&mut records);

    let mut out = writer(args.out.as_ref())?;
    emit(
        &mut out,
        &records,
        seq.alphabet(),
        args.format,
        config.measure,
        kind,
    )?;
    out.flush()?;
    if let Some(path) = &args.report {
        let mut report = writer(Some(path))?;
        write_report(
            &mut report,
            &result.f_closed,
            &result.closed,
            &result.level_times,
        )?;
        report.flush()?;
    }
    eprintln!(
        "{} events, {} discovered, {} {kind} in {} ms",
        seq.len(),
        result.discovered,
        records.len(),
        started.elapsed().as_millis()
    );
    Ok(())
}

fn run_oracle(args: OracleArgs) -> anyhow::Result<()> {
    let config = MiningConfig::new(args.window, args.min_freq)
        .measure(args.measure.into())
        .max_nodes(Some(args.max_nodes));
    config.validate()?;
    let seq = load_sequence(&args.input, &args.corpus.options())?;
    let labels: Vec<_> = seq.alphabet().labels().collect();
    let universe = enumerate_episodes(&labels, args.max_nodes)?;
    let found = naive_fclosed(&seq, &config, &universe)?;
    let mut out = writer(None)?;
    for (g, freq) in found {
        writeln!(
            out,
            "freq={freq} {}",
            closed_episodes::format_episode(&g, seq.alphabet())
        )?;
    }
    out.flush()?;
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<MiningError>() || err.is::<BudgetError>() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Oracle(args)) => run_oracle(args),
        None => run(cli.run),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
