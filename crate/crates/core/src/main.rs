use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rigidity::batch::{collect_dir, run_batch};
use rigidity::config::{Mode, ReportFormat, TestConfig, DEFAULT_ROUNDS};
use rigidity::graph::{generate, Family};
use rigidity::report::{analyze, load_graph, parse_params};

#[derive(Parser)]
#[command(
    name = "rigidity",
    version,
    about = "Generic local and global rigidity tests for graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one graph (edge-list file or gen:<family>[:params]).
    Check {
        graph: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Write a generated graph as a canonical edge list.
    Gen {
        family: String,
        /// Family parameters followed by the output path ("-" for stdout).
        #[arg(num_args = 1.., allow_hyphen_values = true)]
        rest: Vec<String>,
    },
    /// Analyze every file in a directory, or a list of files and gen: specs.
    Batch {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Modular,
    Rational,
}

#[derive(Args)]
struct RunOpts {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = DEFAULT_ROUNDS)]
    rounds: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "modular")]
    mode: ModeArg,
    /// Override the coordinate sample bound N.
    #[arg(long)]
    sample_bound: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Allow rational mode on graphs above the vertex limit.
    #[arg(long)]
    force: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunOpts {
    fn config(&self) -> TestConfig {
        TestConfig {
            dim: self.dim,
            rounds: self.rounds,
            seed: self.seed,
            mode: match self.mode {
                ModeArg::Modular => Mode::Modular,
                ModeArg::Rational => Mode::Rational,
            },
            sample_bound: self.sample_bound,
            format: if self.json {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            },
            force: self.force,
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
    }
}

fn check(graph: &str, opts: &RunOpts) -> Result<u8, String> {
    let g = load_graph(graph).map_err(|e| e.to_string())?;
    let cfg = opts.config();
    let report = analyze(&g, &cfg).map_err(|e| e.to_string())?;
    let text = match cfg.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    emit(opts.out.as_deref(), &text)?;
    Ok(report.exit_code() as u8)
}

fn gen(family: &str, rest: &[String]) -> Result<u8, String> {
    let (out, params) = rest.split_last().ok_or("missing output path")?;
    let family: Family = family
        .parse()
        .map_err(|e: rigidity::graph::GraphError| e.to_string())?;
    let params = parse_params(params.iter().map(String::as_str))
        .map_err(|e| format!("bad parameter: {e}"))?;
    let g = generate(family, &params).map_err(|e| e.to_string())?;
    let path = (out != "-").then(|| Path::new(out));
    emit(path, &g.to_edge_list())?;
    Ok(0)
}

fn batch(inputs: &[String], opts: &RunOpts) -> Result<u8, String> {
    let mut sources = Vec::new();
    for input in inputs {
        let path = Path::new(input);
        if path.is_dir() {
            let files = collect_dir(path).map_err(|e| format!("{input}: {e}"))?;
            sources.extend(files.into_iter().map(|p| p.display().to_string()));
        } else {
            sources.push(input.clone());
        }
    }
    let cfg = opts.config();
    let report = run_batch(&sources, &cfg);
    let text = match cfg.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    emit(opts.out.as_deref(), &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { graph, opts } => check(graph, opts),
        Command::Gen { family, rest } => gen(family, rest),
        Command::Batch { inputs, opts } => batch(inputs, opts),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
