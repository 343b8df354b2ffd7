use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nk::corpus::EXAMPLES;
use nk::{exit, parse_document, process, CliError, Format, RunConfig};
use novikov_core::Direction;

#[derive(Parser)]
#[command(
    name = "nk",
    version,
    about = "Novikov homology of chain complexes, fundamental domains and knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Series precision K (overrides the document).
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// Novikov ring side (overrides the document).
    #[arg(long, global = true, value_enum)]
    direction: Option<Side>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Run redundant cross-checks and fail on disagreement.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job document.
    Run { file: PathBuf },
    /// Parse and validate a job document without running it.
    Validate { file: PathBuf },
    /// Bundled example documents.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List the bundled examples.
    List,
    /// Run every bundled example.
    RunAll,
    /// Print one bundled document.
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        precision: cli.precision,
        direction: cli.direction.map(|d| match d {
            Side::Plus => Direction::Plus,
            Side::Minus => Direction::Minus,
        }),
        oracle: cli.oracle,
    };
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Machine => Format::Machine,
    };
    let code = match cli.command {
        Command::Run { file } => match read(&file) {
            Ok(text) => {
                let out = process(&text, &cfg, format);
                match out.output {
                    Ok(s) => print!("{s}"),
                    Err(e) => eprintln!("error: {e}"),
                }
                out.code
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Command::Validate { file } => match read(&file).and_then(|t| parse_document(&t)) {
            Ok(doc) => {
                println!("ok: {}", doc.kind);
                exit::OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Command::Examples { action } => match action {
            ExamplesAction::List => {
                let width = EXAMPLES.iter().map(|e| e.name.len()).max().unwrap_or(0);
                for e in EXAMPLES {
                    println!("{:<width$}  {}", e.name, e.summary);
                }
                exit::OK
            }
            ExamplesAction::Show { name } => match nk::corpus::find(&name) {
                Some(e) => {
                    print!("{}", e.text);
                    exit::OK
                }
                None => {
                    eprintln!("error: no example named `{name}`");
                    exit::ERROR
                }
            },
            ExamplesAction::RunAll => {
                // Jobs are independent; output keeps the listed order.
                let outcomes: Vec<_> = std::thread::scope(|s| {
                    let handles: Vec<_> = EXAMPLES
                        .iter()
                        .map(|e| s.spawn(move || process(e.text, &cfg, format)))
                        .collect();
                    handles.into_iter().map(|h| h.join().expect("job panicked")).collect()
                });
                let mut worst = exit::OK;
                for (e, out) in EXAMPLES.iter().zip(outcomes) {
                    if format == Format::Text {
                        println!("== {} ==", e.name);
                    }
                    match out.output {
                        Ok(s) => print!("{s}"),
                        Err(err) => eprintln!("error in {}: {err}", e.name),
                    }
                    worst = worst.max(out.code);
                }
                worst
            }
        },
    };
    ExitCode::from(code as u8)
}
