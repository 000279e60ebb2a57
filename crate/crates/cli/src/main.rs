use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kgraph_cli::commands::{self, ExportFormat, Input, Pi1View, EXIT_INPUT};
use kgraph_core::Budget;

/// Work with k-graphs given as `.kg` files.
#[derive(Parser)]
#[command(name = "kgraph", version)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    /// Words the equality search may visit per comparison.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,

    /// Longest intermediate word; defaults to twice the longer input plus 4.
    #[arg(long)]
    max_len: Option<usize>,
}

impl SearchArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget,
            max_len: self.max_len,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the factorization property. Exit 1 when it fails.
    Validate { file: PathBuf },
    /// List the elements with given degree, source and range.
    Hom {
        file: PathBuf,
        /// Source vertex.
        #[arg(long)]
        from: String,
        /// Range vertex.
        #[arg(long)]
        to: String,
        /// Degree as comma-separated coordinates, e.g. `1,1`.
        #[arg(long)]
        degree: String,
    },
    /// Normal form of a path given as edge names in composition order.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Decide equality of two words in the fundamental groupoid.
    /// Exit 0 equal, 1 distinct, 2 undecided.
    Equal {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Print the chain of words.
        #[arg(long)]
        derivation: bool,
    },
    /// Fundamental group at a base vertex.
    Pi1 {
        file: PathBuf,
        /// Base vertex; defaults to the first by name.
        #[arg(long)]
        base: Option<String>,
        #[arg(long, group = "view")]
        presentation: bool,
        #[arg(long, group = "view")]
        tietze: bool,
        #[arg(long, group = "view")]
        abelianization: bool,
    },
    /// Is the canonical functor injective up to a degree bound?
    /// Exit 0 injective, 1 not injective, 2 undecided.
    Injectivity {
        file: PathBuf,
        #[arg(long)]
        max_degree: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check that the image of the canonical functor factorizes uniquely.
    /// Exit 0 holds, 1 counterexample, 2 undecided.
    LambdaBar {
        file: PathBuf,
        #[arg(long)]
        max_degree: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The 1-graph of each color.
    Components { file: PathBuf },
    /// Export as Graphviz or as a 2-complex in JSON.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Complex,
}

fn run(cmd: &Command) -> Result<commands::Report, commands::CliError> {
    match cmd {
        Command::Validate { file } => commands::validate(&Input::read(file)?),
        Command::Hom { file, from, to, degree } => commands::hom(&Input::read(file)?, from, to, degree),
        Command::Normalize { file, word } => commands::normalize(&Input::read(file)?, word),
        Command::Equal {
            file,
            w1,
            w2,
            search,
            derivation,
        } => commands::equal(&Input::read(file)?, w1, w2, search.budget(), *derivation),
        Command::Pi1 {
            file,
            base,
            tietze,
            abelianization,
            ..
        } => {
            let view = if *tietze {
                Pi1View::Tietze
            } else if *abelianization {
                Pi1View::Abelianization
            } else {
                Pi1View::Presentation
            };
            commands::pi1(&Input::read(file)?, base.as_deref(), view)
        }
        Command::Injectivity {
            file,
            max_degree,
            search,
        } => commands::injectivity(&Input::read(file)?, max_degree, search.budget()),
        Command::LambdaBar {
            file,
            max_degree,
            search,
        } => commands::lambda_bar(&Input::read(file)?, max_degree, search.budget()),
        Command::Components { file } => commands::components(&Input::read(file)?),
        Command::Export { file, format } => {
            let fmt = match format {
                Format::Dot => ExportFormat::Dot,
                Format::Complex => ExportFormat::Complex,
            };
            commands::export(&Input::read(file)?, fmt)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("json"));
            } else if !report.text.is_empty() {
                println!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
