use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ratcirc::oracle::DEFAULT_ORACLE_BOUND;
use ratcirc::report::{self, AnalysisRequest, DotSource, Format, InputMode};
use ratcirc::{Error, Result};

/// Automorphism groups of rational circulant graphs.
#[derive(Parser)]
#[command(name = "ratcirc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one connection set.
    Analyze(AnalyzeArgs),
    /// One record per divisor subset of n.
    Enumerate {
        n: u64,
        /// Check every record against the brute-force oracle.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        max_oracle_n: usize,
        #[arg(long, default_value = "json", value_parser = ["json", "text"])]
        format: String,
    },
    /// Hasse diagram of a lattice or its poset in DOT.
    ExportDot {
        n: u64,
        /// Orbit divisors of a connection set; exports its S-ring lattice.
        #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
        divisors: Option<String>,
        /// Lattice elements (closed under gcd and lcm with 1 and n).
        #[arg(long)]
        lattice: Option<String>,
        /// Export the weighted poset instead of the lattice.
        #[arg(long)]
        poset: bool,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    n: u64,
    /// Comma-separated residues, reduced mod n.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "divisors", required_unless_present = "divisors")]
    set: Option<String>,
    /// Comma-separated proper divisors d; the set is the union of (Z_n)_d.
    #[arg(long)]
    divisors: Option<String>,
    #[arg(long, default_value = "json", value_parser = ["json", "text", "dot"])]
    format: String,
    /// Include generators on Z_n.
    #[arg(long)]
    generators: bool,
    /// Include the adjacency spectrum.
    #[arg(long)]
    spectrum: bool,
    /// Compare the order with the brute-force oracle.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    max_oracle_n: usize,
    /// Accepted for compatibility; nothing here is randomized.
    #[arg(long)]
    seedless: bool,
}

fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Analyze(a) => {
            let input = match (&a.set, &a.divisors) {
                (Some(s), _) => InputMode::Set(report::parse_list(s)?),
                (None, Some(d)) => InputMode::Divisors(report::parse_list(d)?),
                (None, None) => return Err(Error::InvalidInput("give --set or --divisors".into())),
            };
            let req = AnalysisRequest {
                n: a.n,
                input,
                generators: a.generators,
                spectrum: a.spectrum,
                verify: a.verify,
                max_oracle_n: a.max_oracle_n,
                format: a.format.parse()?,
            };
            let rep = report::cmd_analyze(&req)?;
            Ok((rep.render(req.format)?, rep.oracle_match() != Some(false)))
        }
        Command::Enumerate { n, verify, max_oracle_n, format } => {
            let rep = report::cmd_enumerate(n, verify, max_oracle_n)?;
            let out = match format.parse()? {
                Format::Text => rep.to_text(),
                _ => rep.to_json(),
            };
            Ok((out, rep.verify.all_match))
        }
        Command::ExportDot { n, divisors, lattice, poset } => {
            let source = match (divisors, lattice) {
                (Some(d), _) => DotSource::Divisors(report::parse_list(&d)?),
                (None, Some(l)) => DotSource::Lattice(report::parse_list(&l)?),
                (None, None) => return Err(Error::InvalidInput("give --divisors or --lattice".into())),
            };
            Ok((report::cmd_export_dot(n, &source, poset)?, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: pipeline and oracle disagree");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
