//! `fkt`: build FKT complexes, compute word invariants and van Kampen
//! obstructions, realize `H` in `Q^4`, and certify the hypotheses for a word.
//!
//! Exit codes: 0 success, 1 internal failure, 2 usage or parse error,
//! 3 the requested hypothesis does not hold.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fkt_core::certificate::{certify, Level};
use fkt_core::complex::{attach_disk, build_base_block, build_z, full_skeleton, quotient_points, Complex2};
use fkt_core::geometry::{realize_h, to_off};
use fkt_core::vk::obstruction_verdict;
use fkt_core::word::{magnus_expansion, milnor_invariants, unlink_criterion, Word, INVARIANT_PROBE_DEGREE};

#[derive(Parser)]
#[command(name = "fkt", version, about = "FKT complexes, van Kampen obstructions and Milnor invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a complex as JSON.
    Build {
        #[arg(long, value_enum, ignore_case = true)]
        target: Target,
        /// Attaching word, required for K and SSS.
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponent sums, lower central series depth, mu12 and the Magnus expansion.
    Invariants {
        #[arg(value_name = "PHI", conflicts_with = "phi")]
        word: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Van Kampen obstruction of a complex given as JSON (`-` reads stdin).
    Obstruction {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact embedding of H in Q^4 with its verification report.
    Realize {
        #[arg(long)]
        phi: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the hypotheses for K_phi and emit a certificate.
    Certify {
        #[arg(value_name = "PHI", conflicts_with = "phi")]
        word: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, default_value = "f3", value_parser = parse_level)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Base block on x0..x6.
    X,
    /// Two base blocks glued at x6 = y6.
    Z,
    /// Z with a disk attached along phi.
    K,
    /// K_phi with x1 and y1 identified.
    Sss,
    /// Full 2-skeleton of the 6-simplex.
    Delta6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Off,
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse()
}

/// Bad input from the user; exits with code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn parse_phi(text: Option<String>) -> anyhow::Result<Word> {
    let text = text.ok_or_else(|| Usage("a word is required (positional or --phi)".to_string()))?;
    Word::parse(&text).map_err(|e| Usage(format!("cannot parse '{text}': {e}")).into())
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.context("writing stdout"),
            }
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())).into())
}

fn build(target: Target, phi: Option<String>) -> anyhow::Result<(Complex2, Vec<String>)> {
    Ok(match target {
        Target::X => (build_base_block("x"), Vec::new()),
        Target::Z => (build_z().complex, Vec::new()),
        Target::Delta6 => (full_skeleton("v", 7), Vec::new()),
        Target::K | Target::Sss => {
            let k = attach_disk(&build_z(), &parse_phi(phi)?);
            if matches!(target, Target::K) {
                (k.complex, k.warnings)
            } else {
                (quotient_points(&k.complex, "x1", "y1")?, k.warnings)
            }
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Build { target, phi, out } => {
            let (k, warnings) = build(target, phi)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &k.to_json())?;
        }
        Command::Invariants { word, phi, out } => {
            let w = parse_phi(word.or(phi))?;
            let inv = milnor_invariants(&w);
            let report = json!({
                "phi": w.to_string(),
                "exp": [inv.exp_a, inv.exp_b],
                "in_commutator": inv.exp_a == 0 && inv.exp_b == 0,
                "lcs_depth": inv.lcs_depth,
                "mu12": inv.mu12,
                "magnus": magnus_expansion(&w, INVARIANT_PROBE_DEGREE.min(4)).to_string(),
                "unlink_criterion": unlink_criterion(&w),
            });
            emit(out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
        }
        Command::Obstruction { complex, seed, out } => {
            let text = read_input(&complex)?;
            let k = Complex2::from_json(&text).map_err(|e| Usage(format!("invalid complex: {e}")))?;
            let verdict = obstruction_verdict(&k, seed)?;
            emit(out.as_deref(), &serde_json::to_string_pretty(&verdict.to_json())?)?;
        }
        Command::Realize { phi, format, out } => {
            let w = parse_phi(Some(phi))?;
            let r = realize_h(&w)?;
            let report = serde_json::to_string_pretty(&json!({
                "phi": w.to_string(),
                "embedding": r.report.ok,
                "report": r.report,
                "shrink_round": r.shrink_round,
                "note": r.note,
                "vertices": r.geometry.complex.vertices,
                "placement": r.geometry.placement,
            }))?;
            match format {
                Format::Json => emit(out.as_deref(), &report)?,
                Format::Off => {
                    emit(out.as_deref(), &to_off(&r.geometry))?;
                    eprintln!("embedding verified: {} ({} pairs checked)", r.report.ok, r.report.pairs_checked);
                }
            }
            if !r.report.ok {
                return Err(anyhow!("H placement failed verification"));
            }
        }
        Command::Certify { word, phi, level, seed, out } => {
            let w = parse_phi(word.or(phi))?;
            let cert = certify(&w, level, seed)?;
            emit(out.as_deref(), &cert.to_json_string())?;
            if !cert.passed {
                eprintln!("hypothesis not met");
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
