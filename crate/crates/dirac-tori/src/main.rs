//! Command-line front end: JSON in, JSON out, stable exit codes.
//!
//! Exit codes: 0 ok, 1 input/parse error, 2 singular denominator,
//! 3 not a Dirac structure, 4 dimension mismatch, 5 not Poisson for the
//! chosen I, 6 orbit bound exhausted.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dirac_tori::dirac::DiracStructure;
use dirac_tori::error::Error;
use dirac_tori::exact::{rat_from_str, Rat, RationalMatrix};
use dirac_tori::onn::GroupElement;
use dirac_tori::orbit;
use dirac_tori::poissonize;
use dirac_tori::qtorus;
use dirac_tori::word::{eval_word, parse_word};

#[derive(Parser)]
#[command(
    name = "dirac-tori",
    about = "Exact computation with constant Dirac structures on n-tori",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Force machine-readable JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Suppress non-essential output.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Report characteristic data of a Dirac structure.
    Inspect(InputArg),
    /// Apply a generator word to a Dirac structure.
    Act {
        /// Generator word, e.g. "sigma{1,2}" or "rho[[1,0],[1,1]]".
        #[arg(long)]
        word: String,
        #[command(flatten)]
        input: InputArg,
    },
    /// Convert a Dirac structure to a Poisson matrix and split blocks.
    Poissonize {
        #[command(flatten)]
        input: InputArg,
        /// Index set, e.g. "{1,3}" or "{}"; defaults to the pivot transversal.
        #[arg(long = "I")]
        i_set: Option<String>,
    },
    /// Star product of two Fourier polynomials.
    Star {
        /// Fourier polynomial JSON (path or @- for stdin).
        f: String,
        g: String,
        /// Skew rational matrix JSON (path or @-).
        #[arg(long)]
        pi: String,
        /// Deformation parameter as a rational, default 1.
        #[arg(long, default_value = "1")]
        hbar: String,
    },
    /// Fractional-linear action of a word on a Poisson matrix.
    Fraclin {
        #[arg(long)]
        word: String,
        #[arg(long)]
        pi: String,
    },
    /// Bounded breadth-first orbit exploration.
    Orbit {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long = "max-nodes", default_value_t = 10_000)]
        max_nodes: usize,
        /// Search for a witness word reaching this structure.
        #[arg(long)]
        target: Option<String>,
    },
    /// Finite clock-and-shift representation at a rational angle.
    Rep {
        /// Angle p/q with gcd(p, q) = 1.
        #[arg(long)]
        theta: String,
    },
    /// Run the invariant battery on one structure.
    Verify(InputArg),
}

#[derive(Args)]
struct InputArg {
    /// Path to a DiracStructure JSON file, or @- to read stdin.
    input: String,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::SingularDenominator => 2,
        Error::NotIsotropic | Error::NotMaximal => 3,
        Error::DimensionMismatch(_) => 4,
        Error::NotPoisson => 5,
        Error::NotFoundWithinBounds => 6,
        _ => 1,
    }
}

fn error_tag(err: &Error) -> &'static str {
    match err {
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::Singular => "Singular",
        Error::SingularDenominator => "SingularDenominator",
        Error::NotSaturated => "NotSaturated",
        Error::NotMaximal => "NotMaximal",
        Error::NotIsotropic => "NotIsotropic",
        Error::NotSkew => "NotSkew",
        Error::NotOrthogonal => "NotOrthogonal",
        Error::NotUnimodular => "NotUnimodular",
        Error::IndexOutOfRange(_) => "IndexOutOfRange",
        Error::NotPoisson => "NotPoisson",
        Error::ParseError { .. } => "ParseError",
        Error::NotCoprime => "NotCoprime",
        Error::NotFoundWithinBounds => "NotFoundWithinBounds",
        Error::BadInput(_) => "BadInput",
    }
}

fn read_input(spec: &str) -> Result<String, Error> {
    if spec == "@-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::BadInput(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(spec)
            .map_err(|e| Error::BadInput(format!("cannot read {spec}: {e}")))
    }
}

fn load_json<T: serde::de::DeserializeOwned>(spec: &str) -> Result<T, Error> {
    let text = read_input(spec)?;
    serde_json::from_str(&text).map_err(|e| match classify_serde_error(&e.to_string()) {
        Some(err) => err,
        None => Error::BadInput(format!("malformed JSON in {spec}: {e}")),
    })
}

/// Structure validation failures surface through serde as custom messages;
/// map them back to their error variants so exit codes stay faithful.
fn classify_serde_error(msg: &str) -> Option<Error> {
    if msg.contains("not isotropic") {
        Some(Error::NotIsotropic)
    } else if msg.contains("not have full rank") {
        Some(Error::NotMaximal)
    } else if msg.contains("basis must be") {
        Some(Error::DimensionMismatch(msg.to_string()))
    } else {
        None
    }
}

fn parse_index_set(text: &str) -> Result<Vec<usize>, Error> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::BadInput(format!("index set must look like {{1,2}}, got {t:?}")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadInput(format!("bad index {s:?}")))
        })
        .collect()
}

fn load_poisson(spec: &str) -> Result<qtorus::PoissonMatrix, Error> {
    let m: RationalMatrix = load_json(spec)?;
    qtorus::PoissonMatrix::new(m)
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Inspect(input) => {
            let gamma: DiracStructure = load_json(&input.input)?;
            let cd = gamma.characteristic();
            let desc = qtorus::descriptor(&gamma);
            emit(&json!({
                "n": gamma.n(),
                "basis": gamma.basis(),
                "nullity": cd.nullity,
                "parity": cd.parity,
                "characteristic": cd.characteristic.basis(),
                "p_star": gamma.p_star().basis(),
                "descriptor": desc,
            }));
        }
        Command::Act { word, input } => {
            let gamma: DiracStructure = load_json(&input.input)?;
            let w = parse_word(&word)?;
            let g = eval_word(&w, gamma.n())?;
            let out = g.act(&gamma)?;
            emit(&serde_json::to_value(&out).unwrap());
        }
        Command::Poissonize { input, i_set } => {
            let gamma: DiracStructure = load_json(&input.input)?;
            let i_set = match i_set {
                Some(text) => parse_index_set(&text)?,
                None => poissonize::find_transversal(&gamma).i_set,
            };
            let pi = poissonize::to_poisson(&gamma, &i_set)?;
            let split = poissonize::split_blocks(&gamma, &i_set)?;
            emit(&json!({
                "I": split.i_set,
                "pi": pi,
                "pi_m": split.pi_m,
                "beta": split.beta,
                "beta_mod1": split.beta_mod1,
            }));
        }
        Command::Star { f, g, pi, hbar } => {
            let f: qtorus::FourierPolynomial = load_json(&f)?;
            let g: qtorus::FourierPolynomial = load_json(&g)?;
            let pi = load_poisson(&pi)?;
            let hbar: Rat = rat_from_str(&hbar)?;
            let out = qtorus::star(&f, &g, &pi, &hbar)?;
            emit(&serde_json::to_value(&out).unwrap());
        }
        Command::Fraclin { word, pi } => {
            let pi_mat = load_poisson(&pi)?;
            let w = parse_word(&word)?;
            let g = eval_word(&w, pi_mat.n())?;
            let out = g.frac_linear(pi_mat.matrix())?;
            emit(&serde_json::to_value(&out).unwrap());
        }
        Command::Orbit {
            input,
            depth,
            max_nodes,
            target,
        } => {
            let gamma: DiracStructure = load_json(&input.input)?;
            let gens = orbit::default_generators(gamma.n());
            match target {
                Some(spec) => {
                    let target: DiracStructure = load_json(&spec)?;
                    let w = orbit::connect(&gamma, &target, &gens, depth, max_nodes)?;
                    emit(&json!({
                        "witness": w.to_string(),
                        "depth": w.terms.len(),
                    }));
                }
                None => {
                    let result = orbit::explore(&gamma, &gens, depth, max_nodes);
                    emit(&serde_json::to_value(&result).unwrap());
                }
            }
        }
        Command::Rep { theta } => {
            let q = rat_from_str(&theta)?;
            use num::ToPrimitive;
            let (p, den) = (
                q.numer()
                    .to_i64()
                    .ok_or_else(|| Error::BadInput("theta numerator too large".into()))?,
                q.denom()
                    .to_i64()
                    .ok_or_else(|| Error::BadInput("theta denominator too large".into()))?,
            );
            let rep = qtorus::clock_shift(p, den)?;
            emit(&json!({
                "p": rep.p,
                "q": rep.q,
                "u": rep.u,
                "v": rep.v,
                "relation_residual": rep.relation_residual(),
                "unitarity_residual": rep.unitarity_residual(),
            }));
        }
        Command::Verify(input) => {
            let gamma: DiracStructure = load_json(&input.input)?;
            let (report, all_pass) = verify_battery(&gamma);
            if !cli.quiet {
                for (name, pass) in &report {
                    println!("{} {}", if *pass { "PASS" } else { "FAIL" }, name);
                }
            }
            emit(&json!({
                "checks": report
                    .iter()
                    .map(|(name, pass)| json!({"name": name, "pass": pass}))
                    .collect::<Vec<_>>(),
                "all_pass": all_pass,
            }));
            if !all_pass {
                return Err(Error::BadInput("invariant battery failed".into()));
            }
        }
    }
    Ok(())
}

/// Structure-level invariant battery for `verify`.
fn verify_battery(gamma: &DiracStructure) -> (Vec<(String, bool)>, bool) {
    let n = gamma.n();
    let mut report: Vec<(String, bool)> = Vec::new();
    let push = |name: &str, pass: bool, report: &mut Vec<(String, bool)>| {
        report.push((name.to_string(), pass));
    };

    push(
        "revalidates as maximal isotropic",
        DiracStructure::from_basis(gamma.basis()).is_ok(),
        &mut report,
    );

    let cd = gamma.characteristic();
    push(
        "p_star equals annihilator of characteristic",
        gamma.p_star() == cd.characteristic.annihilator(),
        &mut report,
    );
    push(
        "nullity plus dim p_star equals n",
        cd.nullity + gamma.p_star().dim() == n,
        &mut report,
    );

    let mut nullity_ok = true;
    let mut parity_ok = true;
    for i in 1..=n {
        let s = GroupElement::sigma(&[i], n).unwrap();
        let image = s.act(gamma).unwrap();
        let dn = image.nullity() as i64 - cd.nullity as i64;
        nullity_ok &= dn.abs() == 1;
        parity_ok &= image.parity() != cd.parity;
    }
    push(
        "each sigma_i changes nullity by exactly 1",
        nullity_ok,
        &mut report,
    );
    push("each sigma_i flips parity", parity_ok, &mut report);

    let choice = poissonize::find_transversal(gamma);
    let pivot_ok = match poissonize::to_poisson(gamma, &choice.i_set) {
        Ok(pi) => {
            let graph = DiracStructure::graph_poisson(&pi).unwrap();
            let flipped = GroupElement::sigma(&choice.i_set, n)
                .unwrap()
                .act(gamma)
                .unwrap();
            graph.equals(&flipped).unwrap()
        }
        Err(_) => false,
    };
    push(
        "pivot transversal Poissonizes and matches sigma_I image",
        pivot_ok,
        &mut report,
    );

    let split_ok = poissonize::split_blocks(gamma, &choice.i_set)
        .map(|sd| {
            let k = choice.i_set.len();
            sd.pi_m.rows() == n - k && sd.beta.rows() == n - k && sd.beta.cols() == k
        })
        .unwrap_or(false);
    push("split blocks have consistent shapes", split_ok, &mut report);

    let all_pass = report.iter().all(|(_, p)| *p);
    (report, all_pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("error[BadInput]: {e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", error_tag(&e));
            ExitCode::from(exit_code_for(&e))
        }
    }
}
