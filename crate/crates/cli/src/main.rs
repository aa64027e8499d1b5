//! `qferm`: compute fermionic forms and Kac/Hausel series for a quiver, and
//! verify the identities between them.
//!
//! Exit codes: 0 computed or verified, 1 mismatch, 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qferm::fermion::{fermionic_m, fermionic_m_at, fermionic_n, fermionic_n_at, kleber_check, weyl_antisymmetry_check};
use qferm::fforacle::{count_iso_classes, verify_m_polynomial, OracleConfig};
use qferm::gseries::GradedSeries;
use qferm::huahausel::{
    hausel_ratio, kac_a_series, kac_conjecture_check, main_identity_check, mn_conjecture_probe,
    poincare_table, star_consistency, BracketReading,
};
use qferm::report::{Status, VerificationReport};
use qferm::rootdata::{RootData, RootVector, WeightVector};

#[derive(Parser)]
#[command(name = "qferm", version, about = "Fermionic forms and quiver varieties, exactly")]
struct Cli {
    /// Use the misprinted `[∞, τ_k - τ_{k-1}]` bracket in the r-series.
    #[arg(long, global = true, hide = true)]
    paper_typo_bracket: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a table or a single value.
    #[command(subcommand)]
    Compute(Compute),
    /// Check an identity coefficientwise on a box.
    #[command(subcommand)]
    Verify(Verify),
    /// Count representations over a prime field.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Exploratory comparisons; never fail on disagreement.
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Subcommand)]
enum Compute {
    /// Kac polynomials a_α and representation counts m_α.
    Kac {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long = "box")]
        xbox: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Which table the CSV output flattens.
        #[arg(long, value_enum, default_value_t = KacTableKind::A)]
        table: KacTableKind,
    },
    /// A single fermionic form m(ν,λ) or n(ν,λ).
    Fermionic {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda", allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::M)]
        kind: Kind,
    },
    /// Coefficients of r(ν)/r(0) and the counting polynomials q^d·(r(ν)/r(0))_α.
    Hausel {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Verify {
    MainIdentity(Common),
    Kleber(Common),
    Verma(Common),
    Weyl(Common),
    Star(Common),
    KacConjecture {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long = "box")]
        xbox: String,
        #[arg(long, default_value_t = 10)]
        nu_scale: i64,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Number of isomorphism classes of representations of dimension R over F_P.
    Count {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        prime: u64,
        /// Also partition the representation space into orbits directly.
        #[arg(long)]
        naive: bool,
    },
    /// Compare m_α(p) from the Kac table with orbit counts.
    Verify {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum Probe {
    /// Tabulate m(ν,λ) against n(ν,λ).
    Mn(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    /// Degree bound per vertex; a single number applies to every vertex.
    #[arg(long = "box")]
    xbox: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    M,
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum KacTableKind {
    A,
    M,
}

/// A failure reported as exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Outcome {
    Text(String),
    /// Compute output that failed a consistency check.
    Inconsistent(String, String),
    Report(VerificationReport, bool),
}

struct Loaded {
    rd: RootData,
    params: Vec<(&'static str, Value)>,
}

fn load(path: &PathBuf) -> Result<Loaded, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let rd = RootData::from_json(&text)?;
    let digest = Sha256::digest(rd.quiver().to_json().as_bytes());
    let hash: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let params = vec![("quiver", Value::from(hash)), ("vertices", json!(rd.quiver().vertices()))];
    Ok(Loaded { rd, params })
}

fn parse_vec(what: &str, text: &str, rank: usize) -> Result<Vec<i64>, InputError> {
    let trimmed = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let v: Vec<i64> = trimmed
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| InputError(format!("invalid {what} {text:?}: expected comma-separated integers")))?;
    if v.len() != rank {
        return Err(InputError(format!("{what} has {} entries, quiver has {rank} vertices", v.len())));
    }
    Ok(v)
}

fn parse_box(text: &str, rank: usize) -> Result<Vec<u32>, InputError> {
    let single = text.trim().parse::<u32>().ok();
    let v = match single {
        Some(n) => vec![n as i64; rank],
        None => parse_vec("box", text, rank)?,
    };
    v.into_iter()
        .map(|x| u32::try_from(x).map_err(|_| InputError(format!("box entries must be nonnegative: {text}"))))
        .collect()
}

fn with_params(mut rep: VerificationReport, params: &[(&'static str, Value)]) -> VerificationReport {
    for (k, v) in params {
        rep.params.insert((*k).to_string(), v.clone());
    }
    rep
}

fn alpha_csv(alpha: &[u32]) -> String {
    let joined: Vec<String> = alpha.iter().map(u32::to_string).collect();
    format!("\"{}\"", joined.join(","))
}

fn series_rows(f: &GradedSeries) -> Vec<Value> {
    f.bounds()
        .degrees()
        .into_iter()
        .map(|d| {
            let c = f.coefficient(&d).expect("degree in box");
            json!({ "alpha": d, "value": c.to_string() })
        })
        .collect()
}

fn csv_table(rows: impl IntoIterator<Item = (Vec<u32>, String)>) -> String {
    let mut out = String::from("alpha,value\n");
    for (alpha, value) in rows {
        out.push_str(&format!("{},{value}\n", alpha_csv(&alpha)));
    }
    out
}

fn object(kind: &str, params: Vec<(&'static str, Value)>, body: Vec<(&str, Value)>) -> String {
    let mut map = serde_json::Map::new();
    map.insert("command".into(), kind.into());
    map.insert("params".into(), params.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    for (k, v) in body {
        map.insert(k.into(), v);
    }
    serde_json::to_string_pretty(&Value::Object(map)).expect("serializes")
}

fn compute(cmd: Compute) -> Result<Outcome, InputError> {
    match cmd {
        Compute::Kac { quiver, xbox, format, table } => {
            let Loaded { rd, mut params } = load(&quiver)?;
            let xbox = parse_box(&xbox, rd.rank())?;
            params.push(("box", json!(xbox)));
            let kac = kac_a_series(&rd, &xbox)?;
            Ok(Outcome::Text(match format {
                Format::Json => object(
                    "kac",
                    params,
                    vec![("a", series_rows(kac.a_series()).into()), ("m", series_rows(kac.m_series()).into())],
                ),
                Format::Csv => {
                    let f = match table {
                        KacTableKind::A => kac.a_series(),
                        KacTableKind::M => kac.m_series(),
                    };
                    csv_table(f.bounds().degrees().into_iter().map(|d| {
                        let c = f.coefficient(&d).expect("degree in box").to_string();
                        (d, c)
                    }))
                }
            }))
        }
        Compute::Fermionic { quiver, nu, beta, lambda, kind } => {
            let Loaded { rd, .. } = load(&quiver)?;
            let nu = WeightVector(parse_vec("nu", &nu, rd.rank())?);
            let value = match (beta, lambda) {
                (Some(b), _) => {
                    let beta = RootVector(parse_vec("beta", &b, rd.rank())?);
                    match kind {
                        Kind::M => fermionic_m(&rd, &nu, &beta)?,
                        Kind::N => fermionic_n(&rd, &nu, &beta),
                    }
                }
                (None, Some(l)) => {
                    let lambda = WeightVector(parse_vec("lambda", &l, rd.rank())?);
                    match kind {
                        Kind::M => fermionic_m_at(&rd, &nu, &lambda)?,
                        Kind::N => fermionic_n_at(&rd, &nu, &lambda)?,
                    }
                }
                (None, None) => return Err(InputError("one of --beta or --lambda is required".into())),
            };
            Ok(Outcome::Text(format!("{value}\n")))
        }
        Compute::Hausel { common, format } => {
            let Loaded { rd, mut params } = load(&common.quiver)?;
            let nu = WeightVector(parse_vec("nu", &common.nu, rd.rank())?);
            let xbox = parse_box(&common.xbox, rd.rank())?;
            params.push(("box", json!(xbox)));
            params.push(("nu", json!(nu.0)));
            let ratio = hausel_ratio(&rd, &nu, &xbox)?;
            let table = match poincare_table(&rd, &nu, &xbox) {
                Ok(t) => t,
                Err(e) => return Ok(Outcome::Inconsistent(object("hausel", params, vec![]), e.to_string())),
            };
            let mut rows = Vec::new();
            let mut csv = Vec::new();
            for (d, p) in ratio.bounds().degrees().into_iter().zip(table) {
                let coefficient = ratio.coefficient(&d).expect("degree in box");
                rows.push(json!({
                    "alpha": d, "d": p.d, "ratio": coefficient.to_string(), "poincare": p.poly.to_string()
                }));
                csv.push((d, p.poly.to_string()));
            }
            Ok(Outcome::Text(match format {
                Format::Json => object("hausel", params, vec![("entries", rows.into())]),
                Format::Csv => csv_table(csv),
            }))
        }
    }
}

fn verify(cmd: Verify, reading: BracketReading) -> Result<Outcome, InputError> {
    type Check = fn(&RootData, &WeightVector, &[u32]) -> VerificationReport;
    let (common, check): (Common, Check) = match cmd {
        Verify::MainIdentity(c) => (c, main_identity_check),
        Verify::Kleber(c) => (c, kleber_check),
        Verify::Verma(c) => (c, qferm::huahausel::verma_expansion_check),
        Verify::Weyl(c) => (c, weyl_antisymmetry_check),
        Verify::Star(c) => {
            let Loaded { rd, params } = load(&c.quiver)?;
            let nu = WeightVector(parse_vec("nu", &c.nu, rd.rank())?);
            let xbox = parse_box(&c.xbox, rd.rank())?;
            let rep = star_consistency(&rd, &nu, &xbox, reading);
            return Ok(Outcome::Report(with_params(rep, &params), false));
        }
        Verify::KacConjecture { quiver, xbox, nu_scale } => {
            let Loaded { rd, params } = load(&quiver)?;
            let xbox = parse_box(&xbox, rd.rank())?;
            let rep = kac_conjecture_check(&rd, &xbox, nu_scale);
            return Ok(Outcome::Report(with_params(rep, &params), false));
        }
    };
    let Loaded { rd, params } = load(&common.quiver)?;
    let nu = WeightVector(parse_vec("nu", &common.nu, rd.rank())?);
    let xbox = parse_box(&common.xbox, rd.rank())?;
    Ok(Outcome::Report(with_params(check(&rd, &nu, &xbox), &params), false))
}

fn oracle(cmd: Oracle) -> Result<Outcome, InputError> {
    match cmd {
        Oracle::Count { quiver, dim, prime, naive } => {
            let Loaded { rd, mut params } = load(&quiver)?;
            let alpha = RootVector(parse_vec("dim", &dim, rd.rank())?);
            params.push(("dim", json!(alpha.0)));
            params.push(("prime", json!(prime)));
            let config = OracleConfig { naive_check: naive, ..OracleConfig::default() };
            let count = count_iso_classes(rd.quiver(), &alpha, prime, &config)?;
            Ok(Outcome::Text(object("oracle", params, vec![("count", count.to_string().into())])))
        }
        Oracle::Verify { quiver, dim, primes } => {
            let Loaded { rd, params } = load(&quiver)?;
            let alpha = RootVector(parse_vec("dim", &dim, rd.rank())?);
            Ok(Outcome::Report(with_params(verify_m_polynomial(&rd, &alpha, &primes), &params), false))
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    let reading = if cli.paper_typo_bracket { BracketReading::Backward } else { BracketReading::Forward };
    match cli.command {
        Command::Compute(c) => compute(c),
        Command::Verify(v) => verify(v, reading),
        Command::Oracle(o) => oracle(o),
        Command::Probe(Probe::Mn(c)) => {
            let Loaded { rd, params } = load(&c.quiver)?;
            let nu = WeightVector(parse_vec("nu", &c.nu, rd.rank())?);
            let xbox = parse_box(&c.xbox, rd.rank())?;
            Ok(Outcome::Report(with_params(mn_conjecture_probe(&rd, &nu, &xbox), &params), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Outcome::Text(text)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Ok(Outcome::Inconsistent(text, reason)) => {
            println!("{text}");
            eprintln!("mismatch: {reason}");
            ExitCode::from(1)
        }
        Ok(Outcome::Report(rep, exploratory)) => {
            println!("{}", rep.to_json());
            match rep.status {
                Status::Verified => ExitCode::SUCCESS,
                Status::Mismatch if exploratory => ExitCode::SUCCESS,
                Status::Mismatch => {
                    eprintln!("mismatch: {} coefficient(s) differ", rep.mismatches.len());
                    ExitCode::from(1)
                }
                Status::Error => {
                    eprintln!("error: {}", rep.error.as_deref().unwrap_or("unknown"));
                    ExitCode::from(2)
                }
            }
        }
        Err(InputError(reason)) => {
            eprintln!("error: {reason}");
            ExitCode::from(2)
        }
    }
}
