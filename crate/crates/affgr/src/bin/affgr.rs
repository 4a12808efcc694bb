//! Command-line interface: enumeration, factorization, smoothness reports,
//! and verification suites over affine Weyl group quotients.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use affgr::cli::{self, Config, FactorInput};
use affgr::Error;

#[derive(Parser)]
#[command(
    name = "affgr",
    version,
    about = "Affine Weyl group quotient combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Affine type, e.g. B3, C2, E8.
    #[arg(long = "type", value_name = "TYPE")]
    ty: String,
    /// Length cap for enumeration.
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    /// Truncation degree for series checks (default 100; 60 for E8).
    #[arg(long)]
    trunc: Option<usize>,
    /// Output format: json, csv, or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Abort if an enumeration layer exceeds this many elements.
    #[arg(long, default_value_t = 1_000_000)]
    cap_elements: usize,
}

impl Common {
    fn config(&self) -> Result<Config, Error> {
        let ty: affgr::cartan::AffineType = self.ty.parse()?;
        Ok(Config {
            ty,
            max_len: self.max_len,
            trunc: self.trunc.unwrap_or(Config::default_trunc(ty)),
            format: self.format.parse()?,
            cap_elements: self.cap_elements,
            threads: Config::threads_from_env(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate W̃^S by length with partitions and reduced words.
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
    /// Factor an element (or preimage of a partition/core/bounded partition).
    Factor {
        #[command(flatten)]
        common: Common,
        /// Reduced word, comma or space separated: "0,3,2,1".
        #[arg(long, conflicts_with_all = ["partition", "core", "bounded"])]
        word: Option<String>,
        /// Colored partition: "7,5^1,5^1,3,1".
        #[arg(long, conflicts_with_all = ["core", "bounded"])]
        partition: Option<String>,
        /// Core partition rows (type A): "5,2,1,1,1".
        #[arg(long, conflicts_with = "bounded")]
        core: Option<String>,
        /// Bounded partition rows (type A): "3,3".
        #[arg(long)]
        bounded: Option<String>,
    },
    /// Per-element smoothness/palindromy classification report.
    Smoothness {
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; nonzero exit on failure.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Generating-function identities against Bott's formula.
    Identities {
        #[command(flatten)]
        common: Common,
    },
    /// Layer sizes = Bott coefficients = partition counts.
    Bijection {
        #[command(flatten)]
        common: Common,
    },
    /// Empirical palindromic set equals the predicted classification.
    Palindromy {
        #[command(flatten)]
        common: Common,
    },
    /// The F₄ NR/NRE decomposition: counts, rank vectors, and identity.
    F4Appendix {
        /// Output format: json or text.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Empirical m_W against the stated values (reports the type D conflict).
    Mw {
        #[command(flatten)]
        common: Common,
    },
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Enumerate { common } => {
            cli::cmd_enumerate(&common.config()?, &mut out)?;
            Ok(true)
        }
        Command::Factor {
            common,
            word,
            partition,
            core,
            bounded,
        } => {
            let cfg = common.config()?;
            let input = if let Some(w) = word {
                FactorInput::Word(cli::parse_word(cfg.ty, &w)?)
            } else if let Some(p) = partition {
                FactorInput::Partition(p)
            } else if let Some(c) = core {
                FactorInput::Core(cli::parse_row_list(&c)?)
            } else if let Some(b) = bounded {
                FactorInput::Bounded(cli::parse_row_list(&b)?)
            } else {
                return Err(Error::InvalidInput(
                    "factor needs --word, --partition, --core, or --bounded".into(),
                ));
            };
            cli::cmd_factor(&cfg, input, &mut out)?;
            Ok(true)
        }
        Command::Smoothness { common } => {
            cli::cmd_smoothness(&common.config()?, &mut out)?;
            Ok(true)
        }
        Command::Verify { suite } => match suite {
            Suite::Identities { common } => cli::verify_identities(&common.config()?, &mut out),
            Suite::Bijection { common } => cli::verify_bijection(&common.config()?, &mut out),
            Suite::Palindromy { common } => cli::verify_palindromy(&common.config()?, &mut out),
            Suite::F4Appendix { format } => {
                let cfg = Config {
                    ty: "F4".parse()?,
                    max_len: 16,
                    trunc: 60,
                    format: format.parse()?,
                    cap_elements: 1_000_000,
                    threads: Config::threads_from_env(),
                };
                cli::verify_f4_appendix(&cfg, &mut out)
            }
            Suite::Mw { common } => cli::verify_mw(&common.config()?, &mut out),
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(cli::EXIT_OK as u8),
        Ok(false) => ExitCode::from(cli::EXIT_VERIFY_FAIL as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for(&e) as u8)
        }
    }
}
