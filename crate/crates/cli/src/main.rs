use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rlcm_cli::commands::{
    self, CliError, Options, RepSource, CAP_ENV, DEFAULT_CAP, DEFAULT_RADIUS,
};
use rlcm_cli::report::Report;

#[derive(Parser)]
#[command(
    name = "rlcm",
    version,
    about = "Exact computations in finitely presented right-LCM monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ball radius: elements of length at most this are enumerated
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    radius: usize,

    /// Bound on the size of a single defining-relation closure class
    /// (default 1000000, or the RLCM_CAP environment variable)
    #[arg(long)]
    cap: Option<usize>,

    /// Emit a canonical JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the ball of a spec and print its census by length
    Ball {
        /// Monoid spec file
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },

    /// Compute a certified least common multiple
    Lcm {
        /// Monoid spec file
        spec: PathBuf,
        /// First word
        x: Option<String>,
        /// Second word
        y: Option<String>,
        /// Comma-separated words to join all at once, instead of x and y
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        common: Common,
        /// Exit 1 unless the result is resolved
        #[arg(long)]
        assert_holds: bool,
    },

    /// Run a property check on the truncation
    Check {
        /// Monoid spec file
        spec: PathBuf,
        /// One of: cancellativity, rightlcm, inclusion, covariance, wick, zf
        kind: String,
        /// Comma-separated generators of a parabolic submonoid
        #[arg(long)]
        subset: Option<String>,
        /// Comma-separated words (required by zf)
        #[arg(long)]
        set: Option<String>,
        /// Representation: "regular" or a representation file path
        #[arg(long, default_value = "regular")]
        rep: String,
        #[command(flatten)]
        common: Common,
        /// Exit 1 unless every verdict holds
        #[arg(long)]
        assert_holds: bool,
    },

    /// Classify an Artin monoid: type flags and Nica amenability
    Classify {
        /// Monoid spec file (must carry a Coxeter matrix)
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn resolve_options(common: &Common) -> Result<Options, CliError> {
    let cap = match common.cap {
        Some(cap) => cap,
        None => match std::env::var(CAP_ENV) {
            Ok(value) => value.parse().map_err(|_| {
                CliError::Usage(format!("{CAP_ENV} must be a positive integer, not `{value}`"))
            })?,
            Err(_) => DEFAULT_CAP,
        },
    };
    Ok(Options { radius: common.radius, cap })
}

fn read_file(path: &PathBuf, what: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {what} {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(Report, bool, bool), CliError> {
    match cli.command {
        Command::Ball { spec, common } => {
            let opts = resolve_options(&common)?;
            let text = read_file(&spec, "spec")?;
            Ok((commands::cmd_ball(&text, opts)?, common.json, false))
        }
        Command::Lcm { spec, x, y, set, common, assert_holds } => {
            let opts = resolve_options(&common)?;
            let text = read_file(&spec, "spec")?;
            let report =
                commands::cmd_lcm(&text, x.as_deref(), y.as_deref(), set.as_deref(), opts)?;
            Ok((report, common.json, assert_holds))
        }
        Command::Check { spec, kind, subset, set, rep, common, assert_holds } => {
            let opts = resolve_options(&common)?;
            let text = read_file(&spec, "spec")?;
            let rep = if rep == "regular" {
                RepSource::Regular
            } else {
                RepSource::File(read_file(&PathBuf::from(&rep), "representation")?)
            };
            let report = commands::cmd_check(
                &text,
                &kind,
                subset.as_deref(),
                set.as_deref(),
                &rep,
                opts,
            )?;
            Ok((report, common.json, assert_holds))
        }
        Command::Classify { spec, common } => {
            let opts = resolve_options(&common)?;
            let text = read_file(&spec, "spec")?;
            Ok((commands::cmd_classify(&text, opts)?, common.json, false))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json, assert_holds)) => {
            if json {
                print!("{}", report.json());
            } else {
                print!("{}", report.human);
            }
            if assert_holds && !report.all_hold {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("rlcm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
