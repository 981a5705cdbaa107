use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cli::config::parse_format;
use cli::{run, CliError, Format, RunConfig};

const COLUMNS: &str = "\
CSV output starts with '#' metadata lines (command, version, config, window, justification),
then a header row. Columns per command:
  dims         k, degree, dim, schur_dim, agree
  ce           p, q, n, dim              (bigraded CE homology, n = p + q)
  ss           page, p, q, dim           (page 'inf' is E-infinity)
  invariants   degree, chain_dim, cohomology_dim
  stable-ring  section, label, degree, value   (sections: generator, poincare)
  stability    section, quantity, p, q, g, value (sections: bound, observed)
  genus        section, key, value
  selftest     check, status, detail
Exit codes: 0 success, 1 computation error or failed selftest, 2 invalid configuration, 3 outside the stable range.";

#[derive(Parser)]
#[command(name = "homaut", version, about = "Stable cohomology of homotopy automorphisms: tables", after_help = COLUMNS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of 𝔤_g per word length, with the Schur functor cross-check
    Dims(Opts),
    /// Bigraded Chevalley–Eilenberg homology of 𝔤_g truncated in word length
    Ce(Opts),
    /// Pages of the word-length spectral sequence
    Ss(Opts),
    /// Invariant Chevalley–Eilenberg complex and its cohomology in the stable range
    Invariants(Opts),
    /// Generators and Poincaré series of the stable cohomology ring
    StableRing(Opts),
    /// Stability bounds and observed invariant dimensions across genera
    Stability(Opts),
    /// Newton classes, L-genus coefficients and the kappa/Borel relation
    Genus(Opts),
    /// Run the built-in property checks
    Selftest(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// `key = value` configuration file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    d: Option<i64>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    g_min: Option<usize>,
    #[arg(long)]
    g_max: Option<usize>,
    /// Largest total degree
    #[arg(long)]
    maxdeg: Option<i64>,
    /// Largest word length of 𝔤_g
    #[arg(long)]
    maxlen: Option<usize>,
    #[arg(long)]
    pages: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    /// Polynomial degree of the coefficient system in the stability bounds
    #[arg(long)]
    ell: Option<usize>,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
    /// csv or json
    #[arg(long, value_parser = parse_format_arg)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// OutFnTable JSON file
    #[arg(long)]
    table: Option<PathBuf>,
}

fn parse_format_arg(s: &str) -> Result<Format, String> {
    parse_format(s).map_err(|e| e.to_string())
}

impl Opts {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                RunConfig::from_text(&text)?
            }
            None => RunConfig::default(),
        };
        Ok(base.merged(RunConfig {
            d: self.d,
            g: self.g,
            g_min: self.g_min,
            g_max: self.g_max,
            maxdeg: self.maxdeg,
            maxlen: self.maxlen,
            pages: self.pages,
            i: self.i,
            ell: self.ell,
            jobs: self.jobs,
            format: self.format,
            seed: self.seed,
            table: self.table.clone(),
        }))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, opts) = match &cli.command {
        Command::Dims(o) => ("dims", o),
        Command::Ce(o) => ("ce", o),
        Command::Ss(o) => ("ss", o),
        Command::Invariants(o) => ("invariants", o),
        Command::StableRing(o) => ("stable-ring", o),
        Command::Stability(o) => ("stability", o),
        Command::Genus(o) => ("genus", o),
        Command::Selftest(o) => ("selftest", o),
    };
    let result = opts.resolve().and_then(|c| run(name, &c).map(|t| (t, c)));
    match result {
        Ok((t, c)) => {
            print!("{}", if c.format() == Format::Json { t.to_json() } else { t.to_csv() });
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::SelftestFailed(t, _) = &e {
                print!("{}", t.to_csv());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
