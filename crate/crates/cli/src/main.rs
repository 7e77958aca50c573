use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use weiljet_core::jets::JetRing;
use weiljet_core::report::Report;
use weiljet_core::scalars::rational::parse_rational;
use weiljet_core::scalars::Rational;
use weiljet_core::serial;
use weiljet_core::suites::{self, KashiwaraParams, MatrixOp};

#[derive(Parser, Debug)]
#[command(name = "weiljet", version, about = "Exact verification of the jet-valued oscillator representation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and print its JSON report.
    #[command(subcommand)]
    Verify(Verify),
    /// Print operator data.
    #[command(subcommand)]
    Emit(Emit),
}

#[derive(Args, Debug)]
struct JetArgs {
    /// Truncation order k of the jets.
    #[arg(long = "jet-order", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    jet_order: u32,
    /// Base point s0 as P/Q, non-zero.
    #[arg(long, default_value = "1", value_parser = parse_base)]
    s0: Rational,
}

impl JetArgs {
    fn ring(&self) -> JetRing {
        JetRing::new(self.s0.clone(), self.jet_order as usize).expect("validated by the parser")
    }
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// sp(2n) bracket relations of the infinitesimal action.
    Sl2 {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=4))]
        vars: u32,
        #[command(flatten)]
        jet: JetArgs,
    },
    /// Fourier inversion and the structure of sigma(J).
    Fourier {
        #[command(flatten)]
        jet: JetArgs,
        /// JSON probe file; defaults to Hermite probes x^m e^{-pi s x^2}, m = 0..6.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// Metaplectic cocycle on random or given word pairs.
    Cocycle {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON array of {"w1": word, "w2": word, "w12"?: word}.
        #[arg(long)]
        words: Option<PathBuf>,
    },
    /// Heisenberg group law and covariance.
    Heisenberg {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lagrangian change, square-class dilation, pairing and involution.
    Intertwiners {
        #[command(flatten)]
        jet: JetArgs,
    },
    /// Functors F and G on truncated induced modules.
    Kashiwara(KashiwaraArgs),
}

#[derive(Args, Debug)]
struct KashiwaraArgs {
    /// Module spec file {n, dim, z_matrix, degree_bound}.
    #[arg(long, conflicts_with_all = ["random", "dim", "pairs", "degree_bound", "samples", "seed"])]
    spec: Option<PathBuf>,
    /// Random modules (the default).
    #[arg(long)]
    random: bool,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
    dim: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    pairs: Option<u32>,
    #[arg(long = "degree-bound", value_parser = clap::value_parser!(u32).range(1..=10))]
    degree_bound: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Emit {
    /// A jet operator matrix; entry (j, m) is the coefficient of e^m in the image of e^j.
    Matrix {
        #[arg(long, value_enum)]
        op: OpArg,
        #[command(flatten)]
        jet: JetArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpArg {
    #[value(name = "S")]
    S,
    #[value(name = "rho-central")]
    RhoCentral,
    #[value(name = "sigmaJ")]
    SigmaJ,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn parse_base(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).ok_or_else(|| format!("not a rational: {s}"))?;
    if r == Rational::from_integer(0.into()) {
        return Err("s0 must be non-zero".into());
    }
    Ok(r)
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn print_report(report: &Report) -> ExitCode {
    let text = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
    println!("{text}");
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        for case in report.failures() {
            eprintln!("failed: {} ({:?})", case.name, case.status);
        }
        ExitCode::from(1)
    }
}

fn verify(cmd: Verify) -> ExitCode {
    let report = match cmd {
        Verify::Sl2 { vars, jet } => suites::sl2(vars as usize, &jet.ring()),
        Verify::Fourier { jet, probes } => {
            let ring = jet.ring();
            let probes = match probes {
                None => None,
                Some(path) => {
                    match read_json(&path).and_then(|v| serial::parse_probes(&v, &ring.variable()).map_err(|e| e.to_string())) {
                        Ok(p) => Some(p),
                        Err(e) => return usage_error(e),
                    }
                }
            };
            suites::fourier_suite(&ring, probes)
        }
        Verify::Cocycle { n, samples, seed, words } => {
            let words = match words {
                None => None,
                Some(path) => {
                    let parsed = read_json(&path).and_then(|v| {
                        v.as_array()
                            .ok_or_else(|| "word file must be a JSON array".to_string())?
                            .iter()
                            .map(|p| serial::parse_word_pair(p).map_err(|e| e.to_string()))
                            .collect::<Result<Vec<_>, _>>()
                    });
                    match parsed {
                        Ok(w) => Some(w),
                        Err(e) => return usage_error(e),
                    }
                }
            };
            suites::cocycle_suite(n as usize, samples, seed, words)
        }
        Verify::Heisenberg { samples, seed } => suites::heisenberg_suite(samples, seed),
        Verify::Intertwiners { jet } => suites::intertwiners_suite(&jet.ring()),
        Verify::Kashiwara(args) => match args.spec {
            Some(path) => match read_json(&path).and_then(|v| serial::parse_module_spec(&v).map_err(|e| e.to_string())) {
                Ok(spec) => suites::kashiwara_spec(&spec),
                Err(e) => return usage_error(e),
            },
            None => {
                let d = KashiwaraParams::default();
                suites::kashiwara_random(&KashiwaraParams {
                    dim: args.dim.map_or(d.dim, |v| v as usize),
                    pairs: args.pairs.map_or(d.pairs, |v| v as usize),
                    degree_bound: args.degree_bound.unwrap_or(d.degree_bound),
                    samples: args.samples.unwrap_or(d.samples),
                    seed: args.seed.unwrap_or(d.seed),
                })
            }
        },
    };
    print_report(&report)
}

fn emit(cmd: Emit) -> ExitCode {
    let Emit::Matrix { op, jet, format } = cmd;
    let op = match op {
        OpArg::S => MatrixOp::S,
        OpArg::RhoCentral => MatrixOp::RhoCentral,
        OpArg::SigmaJ => MatrixOp::SigmaJ,
    };
    match suites::emit_matrix(op, &jet.ring()) {
        Ok(rows) => {
            match format {
                FormatArg::Json => println!("{}", Value::Array(rows.into_iter().map(Value::Array).collect())),
                FormatArg::Csv => print!("{}", suites::matrix_csv(&rows)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(v) => verify(v),
        Command::Emit(e) => emit(e),
    }
}
