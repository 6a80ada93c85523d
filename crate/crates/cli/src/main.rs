mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use richword::morphism::Recipe;
use richword::rational::Rational;
use richword::search::BlockTree;
use richword::word::{read_words, Alphabet, Word};

use report::Format;

/// Longest word accepted through `--word`; longer inputs go through `--input`.
const MAX_INLINE_WORD: usize = 4096;

#[derive(Parser, Debug)]
#[command(name = "richword", version, about = "Verification suites for rich, 14/5-free binary words")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Exponent threshold as NUM/DEN.
    #[arg(long, global = true, default_value = "14/5")]
    threshold: Rational,

    /// Word or prefix length.
    #[arg(long, global = true)]
    length: Option<usize>,

    /// Maximum source length explored by the extension search.
    #[arg(long, global = true, default_value_t = richword::search::DEFAULT_DEPTH_CAP)]
    depth_cap: usize,

    /// Upper index for iterated checks (k_max, factor length, de-substitution depth).
    #[arg(long, global = true)]
    n_max: Option<usize>,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "RICHWORD_JOBS")]
    jobs: Option<usize>,

    /// Output format. `generate` defaults to tsv (the bare word), everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Read words from a file, one per line.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// A word given inline (at most 4096 symbols).
    #[arg(long, global = true)]
    word: Option<String>,

    /// Infinite word to sample: FH, FGH, H, XI, ETAXI or CHAR.
    #[arg(long, global = true)]
    recipe: Option<Recipe>,

    /// Block tree for `lemma-trees`: fig1, fig2 or fig3 (default: all).
    #[arg(long, global = true)]
    tree: Option<BlockTree>,

    /// Factor banned from the extension search; repeatable.
    #[arg(long = "ban", global = true)]
    banned: Vec<String>,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Emit a prefix of a morphic or characteristic word.
    Generate,
    /// Richness report for words.
    RichCheck,
    /// Maximal factor exponent with a witness.
    Exponent,
    /// Longest good right-extensions for the tabulated words.
    Table1,
    /// Longest u in {1,2}* with cube-free image under f, g and h.
    RunBound,
    /// Leaves of the 0-block trees with their witnesses.
    LemmaTrees,
    /// Cube-containment claims behind the forbidden set F.
    FClaims,
    /// De-substitution by f, g and h.
    StructureCheck,
    /// Convergents, E_k ladder, q-identity and Justin's bound.
    SturmianReport,
    /// Factor complexity 2n and complement closure.
    RoteCheck,
    /// Repetition transfer through the first-difference map.
    DeltaCheck,
    /// Every acceptance criterion, stopping at the first failure.
    FullVerify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::RichCheck => "rich-check",
            Command::Exponent => "exponent",
            Command::Table1 => "table1",
            Command::RunBound => "run-bound",
            Command::LemmaTrees => "lemma-trees",
            Command::FClaims => "f-claims",
            Command::StructureCheck => "structure-check",
            Command::SturmianReport => "sturmian-report",
            Command::RoteCheck => "rote-check",
            Command::DeltaCheck => "delta-check",
            Command::FullVerify => "full-verify",
        }
    }
}

/// Validated settings shared by every command.
pub struct Settings {
    pub threshold: Rational,
    pub length: Option<usize>,
    pub depth_cap: usize,
    pub n_max: Option<usize>,
    pub words: Vec<Word>,
    pub recipe: Option<Recipe>,
    pub tree: Option<BlockTree>,
    pub banned: Vec<Word>,
    pub seed: u64,
}

fn settings(cli: &Cli) -> anyhow::Result<Settings> {
    let mut words = Vec::new();
    if let Some(text) = &cli.word {
        if text.len() > MAX_INLINE_WORD {
            bail!("--word takes at most {MAX_INLINE_WORD} symbols; use --input for longer words");
        }
        words.push(text.parse::<Word>().context("parsing --word")?);
    }
    if let Some(path) = &cli.input {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let read = read_words(BufReader::new(file), Alphabet::Ternary)
            .with_context(|| format!("reading {}", path.display()))?;
        // Narrow to Σ₂ where possible so binary-only checks accept them.
        for w in read {
            words.push(w.to_string().parse::<Word>()?);
        }
    }
    let banned = cli
        .banned
        .iter()
        .map(|b| Word::ternary(b).with_context(|| format!("parsing --ban {b}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Settings {
        threshold: cli.threshold.clone(),
        length: cli.length,
        depth_cap: cli.depth_cap,
        n_max: cli.n_max,
        words,
        recipe: cli.recipe.clone(),
        tree: cli.tree,
        banned,
        seed: cli.seed,
    })
}

fn run(cli: &Cli) -> anyhow::Result<report::Report> {
    let s = settings(cli)?;
    match cli.command {
        Command::Generate => commands::generate(&s),
        Command::RichCheck => commands::rich_check(&s),
        Command::Exponent => commands::exponent(&s),
        Command::Table1 => commands::table1(&s),
        Command::RunBound => commands::run_bound(),
        Command::LemmaTrees => Ok(commands::lemma_trees(&s)),
        Command::FClaims => Ok(commands::f_claims()),
        Command::StructureCheck => commands::structure_check(&s),
        Command::SturmianReport => commands::sturmian_report(&s),
        Command::RoteCheck => commands::rote_check(&s),
        Command::DeltaCheck => commands::delta_check(&s),
        Command::FullVerify => Ok(commands::full_verify()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e:#}", cli.command.name());
            return ExitCode::from(2);
        }
    };
    let default_format = if cli.command == Command::Generate {
        Format::Tsv
    } else {
        Format::Json
    };
    let format = cli.format.unwrap_or(default_format);
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut out = BufWriter::new(f);
            report.write(format, &mut out)?;
            out.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            report.write(format, &mut out).and_then(|_| out.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    for m in &report.mismatches {
        eprintln!("mismatch: {m}");
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
