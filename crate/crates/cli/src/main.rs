use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcells_cli::commands::{self, Format, NormalArgs, Output};
use qcells_cli::verify::{self, VerifyConfig};
use qcells_cli::CliError;
use qcells_core::Sign;

#[derive(Parser)]
#[command(
    name = "qcells",
    version,
    about = "Exact computations in quantum Schubert cell algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    Both,
}

impl SignArg {
    fn signs(self) -> Vec<Sign> {
        match self {
            SignArg::Plus => vec![Sign::Plus],
            SignArg::Minus => vec![Sign::Minus],
            SignArg::Both => vec![Sign::Plus, Sign::Minus],
        }
    }

    fn single(self) -> Result<Sign, CliError> {
        match self {
            SignArg::Plus => Ok(Sign::Plus),
            SignArg::Minus => Ok(Sign::Minus),
            SignArg::Both => Err(CliError::Usage("this command takes a single sign".into())),
        }
    }
}

#[derive(Args)]
struct Common {
    /// Cartan type, e.g. A2, B2, G2.
    #[arg(long = "type")]
    datum: String,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on E/F letters during rewriting.
    #[arg(long, default_value_t = qcells_core::DEFAULT_DEGREE_CAP, value_parser = clap::value_parser!(usize))]
    degree_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Center, lattice, stabilizer and leaf report for a pair (w+, w-).
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        wplus: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        wminus: String,
        /// Tabulate every pair in W x W.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Run the property suites and print a pass/fail ledger.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Restrict word-level suites to one element.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 6)]
        height: u32,
        #[arg(long, default_value_t = 2)]
        margin: i64,
        /// Skip longer elements in word-level suites.
        #[arg(long)]
        max_length: Option<usize>,
        /// Run only these checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Normal elements of one degree.
    Normal {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        word: String,
        /// Degree as a root, e.g. a1 or 2a1+a2.
        #[arg(long)]
        degree: String,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        #[arg(long, default_value_t = 2)]
        margin: i64,
    },
    /// Straightening relation for X_i X_j.
    Ls {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        /// 1-based positions `i,j` with i < j.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
    },
    /// Central elements up to a height.
    Center {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 6)]
        height: u32,
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
    },
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    }
}

fn emit(common: &Common, out: &Output) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, &out.body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{}", out.body);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Report {
            common,
            wplus,
            wminus,
            all_pairs,
        } => {
            let d = commands::parse_datum(&common.datum)?;
            let fmt = format_of(common.format);
            let out = if all_pairs {
                commands::report_all(&d, fmt)?
            } else {
                commands::report_pair(&d, &wplus, &wminus, fmt)?
            };
            emit(&common, &out)?;
            Ok(out.ok)
        }
        Command::Verify {
            common,
            word,
            height,
            margin,
            max_length,
            checks,
            seed,
        } => {
            let d = commands::parse_datum(&common.datum)?;
            if height == 0 || common.degree_cap == 0 {
                return Err(CliError::Usage("caps must be positive".into()));
            }
            let mut cfg = VerifyConfig::new(d.clone());
            cfg.word = match word {
                Some(w) => Some(commands::parse_reduced(&d, &w)?.0),
                None => None,
            };
            cfg.height = height;
            cfg.degree_cap = common.degree_cap;
            cfg.margin = margin;
            cfg.max_length = max_length;
            cfg.seed = seed;
            for c in &checks {
                if !verify::CHECKS.contains(&c.as_str()) {
                    return Err(CliError::Usage(format!(
                        "unknown check '{c}'; known: {}",
                        verify::CHECKS.join(", ")
                    )));
                }
            }
            let results = verify::run(&cfg, &checks)?;
            let ok = results.iter().all(|r| r.passed());
            let body = match common.format {
                FormatArg::Json => {
                    let mut s = serde_json::to_string_pretty(&verify::ledger_json(&cfg, &results)).expect("json");
                    s.push('\n');
                    s
                }
                FormatArg::Text => verify::ledger_text(&results),
            };
            emit(&common, &Output { body, ok })?;
            Ok(ok)
        }
        Command::Normal {
            common,
            word,
            degree,
            sign,
            margin,
        } => {
            let d = commands::parse_datum(&common.datum)?;
            let args = NormalArgs {
                word,
                degree,
                sign: sign.single()?,
                margin,
                degree_cap: common.degree_cap,
            };
            let out = commands::normal(&d, &args, format_of(common.format))?;
            emit(&common, &out)?;
            Ok(out.ok)
        }
        Command::Ls {
            common,
            word,
            pair,
            sign,
        } => {
            let d = commands::parse_datum(&common.datum)?;
            let out = commands::ls(
                &d,
                &word,
                &pair,
                sign.single()?,
                common.degree_cap,
                format_of(common.format),
            )?;
            emit(&common, &out)?;
            Ok(out.ok)
        }
        Command::Center {
            common,
            word,
            height,
            sign,
        } => {
            let d = commands::parse_datum(&common.datum)?;
            let out = commands::center(
                &d,
                &word,
                &sign.signs(),
                height,
                common.degree_cap,
                format_of(common.format),
            )?;
            emit(&common, &out)?;
            Ok(out.ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qcells: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
