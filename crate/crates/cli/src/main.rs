use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use logls_cli::commands::{cmd_conormal, cmd_homology, cmd_kcomplex, cmd_tor, CliError, CliResult, Output};
use logls_cli::corpus::{default_corpus_dir, golden_report, load_corpus};
use logls_cli::input::{build_spec, field_of_char, parse_raw, print_spec, CoefficientChoice, InputSpec};
use logls_cli::report::{canonical_json, Format};
use logls_cli::suites::{registry, run_suites, select};

/// Logarithmic André–Quillen homology in degrees 0 to 2.
#[derive(Parser, Debug)]
#[command(name = "logls", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for corpus runs (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file describing a morphism of prelog rings.
    file: PathBuf,
    /// Recompute over the field of this characteristic instead of the file's field.
    #[arg(long = "char")]
    characteristic: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of the log complex.
    Homology {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        degrees: Vec<usize>,
        /// `self`, `residue`, or a module file.
        #[arg(long)]
        coefficients: Option<String>,
        /// Recompute with alternative choices and compare.
        #[arg(long)]
        alt_choices: bool,
    },
    /// The auxiliary complex of the monoid map and its closed-form homology.
    Kcomplex {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        coefficients: Option<String>,
    },
    /// Conormal module of a log surjection.
    Conormal {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Tor over the source of a log surjection.
    Tor {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Print the canonical form of an input file.
    Normalize {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run a verification suite over the corpus.
    Verify {
        /// strict, prop12, jz, edge, alt, golden or all.
        suite: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Rewrite the golden reports of the corpus.
    Bless {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn load(input: &InputArgs) -> CliResult<InputSpec> {
    let text = std::fs::read_to_string(&input.file).map_err(|e| CliError::Input(format!("{}: {e}", input.file.display())))?;
    let raw = parse_raw(&text).map_err(|e| CliError::Input(format!("{}: {e}", input.file.display())))?;
    let field = input.characteristic.map(field_of_char).transpose()?;
    build_spec(&raw, field).map_err(|e| CliError::Input(format!("{}: {e}", input.file.display())))
}

fn coefficient_choice(arg: &Option<String>, spec: &InputSpec) -> CliResult<CoefficientChoice> {
    match arg {
        Some(a) => Ok(CoefficientChoice::from_arg(a)?),
        None => Ok(spec.coefficients.clone()),
    }
}

fn corpus_dir(arg: &Option<PathBuf>) -> PathBuf {
    arg.clone().unwrap_or_else(default_corpus_dir)
}

fn timed(format: Format, f: impl FnOnce() -> CliResult<Output>) -> CliResult<String> {
    let start = Instant::now();
    let out = f()?;
    let mut s = out.render(format);
    if format == Format::Text {
        s.push_str(&format!("time: {} ms\n", start.elapsed().as_millis()));
    }
    Ok(s)
}

fn verify(suite: &str, dir: &Path, format: Format) -> CliResult<String> {
    let suites = select(suite).ok_or_else(|| {
        let names: Vec<&str> = registry().iter().map(|s| s.name()).collect();
        CliError::Input(format!("unknown suite {suite:?} (expected one of {}, all)", names.join(", ")))
    })?;
    let entries = load_corpus(dir)?;
    let report = run_suites(&suites, &entries);
    let out = match format {
        Format::Json => canonical_json(&report.json()),
        Format::Text => report.text().join("\n") + "\n",
    };
    if let Some(first) = report.failures().next() {
        print!("{out}");
        return Err(CliError::Verify(format!("suite {} failed on instance {}", first.suite, first.instance)));
    }
    Ok(out)
}

fn bless(dir: &Path) -> CliResult<String> {
    use rayon::prelude::*;
    let entries = load_corpus(dir)?;
    let reports: Vec<CliResult<(String, PathBuf)>> =
        entries.par_iter().map(|e| Ok((canonical_json(&golden_report(e)?), e.golden_path.clone()))).collect();
    let mut lines = Vec::new();
    for r in reports {
        let (text, path) = r?;
        std::fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        lines.push(format!("wrote {}", path.display()));
    }
    Ok(lines.join("\n") + "\n")
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Homology { input, degrees, coefficients, alt_choices } => {
            let spec = load(input)?;
            let choice = coefficient_choice(coefficients, &spec)?;
            timed(fmt, || cmd_homology(&spec, degrees, &choice, *alt_choices))
        }
        Command::Kcomplex { input, coefficients } => {
            let spec = load(input)?;
            let choice = coefficient_choice(coefficients, &spec)?;
            timed(fmt, || cmd_kcomplex(&spec, &choice))
        }
        Command::Conormal { input } => {
            let spec = load(input)?;
            timed(fmt, || cmd_conormal(&spec))
        }
        Command::Tor { input, max } => {
            let spec = load(input)?;
            timed(fmt, || cmd_tor(&spec, *max))
        }
        Command::Normalize { input } => Ok(print_spec(&load(input)?)),
        Command::Verify { suite, corpus } => verify(suite, &corpus_dir(corpus), fmt),
        Command::Bless { corpus } => bless(&corpus_dir(corpus)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
