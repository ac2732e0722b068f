use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmrees_cli::{max_order_from_env, run, Command, Format, GroupSelector, RunConfig, Suite, MAX_ORDER_ENV};

#[derive(Parser)]
#[command(name = "cmrees", version, about = "Exact checks on complex reflection groups and their centres")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Character table with class codimensions, fake and invariant degrees.
    Chartab(Common),
    /// Run verification suites; exit status 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suites to run (repeatable). Defaults to every applicable suite.
        #[arg(long, value_enum)]
        suite: Vec<SuiteArg>,
        /// Family partition file, used by the conjecture suite.
        #[arg(long)]
        families: Option<PathBuf>,
        /// G4 fixture file replacing the bundled one (theorem-b suite).
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Graded dimensions of the Rees lattice of a family partition.
    Conjecture {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        families: PathBuf,
    },
    /// List the built-in groups.
    Groups {
        #[arg(long, value_enum, default_value = "tsv")]
        format: FormatArg,
    },
}

#[derive(Args)]
struct Common {
    /// Built-in group name, e.g. G4, S3, Cyc5, G(2,1,2).
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,
    /// Group definition file.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// ħ-truncation order N (default 2n + 4).
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Chartab,
    Identities,
    TheoremA,
    TheoremB,
    Conjecture,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Chartab => Suite::Chartab,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::TheoremA => Suite::TheoremA,
            SuiteArg::TheoremB => Suite::TheoremB,
            SuiteArg::Conjecture => Suite::Conjecture,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn config(cli: Cli, max_order: usize) -> RunConfig {
    let base = |command, common: Common, families, fixture| RunConfig {
        command,
        group: common
            .group
            .map(GroupSelector::Registry)
            .or(common.group_file.map(GroupSelector::File)),
        order: common.order,
        families,
        fixture,
        format: common.format.into(),
        out: common.out,
        max_order,
    };
    match cli.command {
        Cmd::Chartab(common) => base(Command::Chartab, common, None, None),
        Cmd::Verify {
            common,
            suite,
            families,
            fixture,
        } => base(
            Command::Verify(suite.into_iter().map(Suite::from).collect()),
            common,
            families,
            fixture,
        ),
        Cmd::Conjecture { common, families } => base(Command::Conjecture, common, Some(families), None),
        Cmd::Groups { format } => RunConfig {
            command: Command::Groups,
            group: None,
            order: None,
            families: None,
            fixture: None,
            format: format.into(),
            out: None,
            max_order,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_order = match max_order_from_env(std::env::var(MAX_ORDER_ENV).ok()) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let cfg = config(cli, max_order);
    match run(&cfg) {
        Ok(outcome) => {
            if cfg.out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(outcome.text.as_bytes()).is_err() {
                    return ExitCode::from(1);
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                if let Some(w) = outcome.first_witness {
                    eprintln!("FAIL: {w}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
