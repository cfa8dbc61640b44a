use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lcga::json::{encode_function, encode_generators, encode_operator, MatrixJson, RationalJson, SpectrumEntryJson};
use lcga::realizations::{free_generators, osc_generators, OscNormalization};
use lcga::scalar::{parse_rational, HalfInt};
use lcga::spectrum::{hamiltonian, ladder_state, m_form, matrix_oracle, spectrum, HamiltonianNormalization};
use lcga::verify;
use lcga::weyl::render::{self, Style};
use lcga::weyl::ChartKind;
use lcga::Error;

#[derive(Parser, Debug)]
#[command(name = "lcga", version, about = "Exact operator calculus for conformal Galilei algebras at half-integer ell")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Opts {
    /// Exact half-odd-integer, e.g. `3/2`.
    #[arg(long, global = true, default_value = "3/2")]
    ell: String,
    #[arg(long, global = true, value_enum, default_value_t = ChartArg::Free)]
    chart: ChartArg,
    #[arg(long, global = true, value_enum)]
    normalization: Option<NormArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: u32,
    #[arg(long, global = true, default_value_t = 4)]
    max_total: u32,
    /// Express coefficients through `m` with `c = −(2ℓ+1)m`.
    #[arg(long, global = true)]
    m_form: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generator map of the chosen chart.
    Gens,
    /// The oscillator Hamiltonian.
    Hamiltonian,
    /// Ladder energies for all multi-indices up to `--max-total`.
    Spectrum,
    /// One ladder eigenstate.
    Eigenstate {
        /// Occupation numbers, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
    },
    /// The triangular matrix of the Hamiltonian on polynomial states.
    Matrix,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChartArg {
    Free,
    Osc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NormArg {
    S5,
    S6,
    S7,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Closure,
    Jacobi,
    Duality,
    Onshell,
    Transform,
    Spectrum,
    All,
}

enum Failure {
    Usage(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadEll(_) | Error::NormalizationUnavailable { .. } => Failure::Usage(e.to_string()),
            e => Failure::Check(json!({ "passed": false, "error": e.to_string() })),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn parse_ell(s: &str) -> Result<HalfInt, Failure> {
    let bad = || Failure::Usage(format!("ell must be half-odd-integer, got {s}"));
    let r = parse_rational(s).ok_or_else(bad)?;
    let ell = HalfInt::from_rational(&r).ok_or_else(bad)?;
    if !ell.is_positive_half_odd() {
        return Err(bad());
    }
    Ok(ell)
}

fn osc_norm(n: Option<NormArg>) -> Result<OscNormalization, Failure> {
    match n {
        None | Some(NormArg::S7) => Ok(OscNormalization::Section7),
        Some(NormArg::S5) => Ok(OscNormalization::Section5),
        Some(NormArg::S6) => Err(Failure::Usage("s6 names a Hamiltonian normalization; use s5 or s7".into())),
    }
}

fn ham_norm(n: Option<NormArg>) -> Result<HamiltonianNormalization, Failure> {
    match n {
        None | Some(NormArg::S7) => Ok(HamiltonianNormalization::Section7),
        Some(NormArg::S6) => Ok(HamiltonianNormalization::Section6),
        Some(NormArg::S5) => Err(Failure::Usage("s5 names a chart normalization; use s6 or s7".into())),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn style(f: Format) -> Style {
    match f {
        Format::Latex => Style::Latex,
        _ => Style::Text,
    }
}

fn run(cli: Cli) -> Outcome {
    let o = &cli.opts;
    let ell = parse_ell(&o.ell)?;
    match cli.command {
        Command::Gens => {
            let gens = match o.chart {
                ChartArg::Free => free_generators(ell)?,
                ChartArg::Osc => osc_generators(ell, osc_norm(o.normalization)?)?,
            };
            let out = match o.format {
                Format::Json => pretty(&encode_generators(ell, &gens)),
                f => gens
                    .iter()
                    .map(|(l, g)| format!("{}: {}", l.name(), render::operator(g, "c", style(f))))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((out, true))
        }
        Command::Hamiltonian => {
            let norm = ham_norm(o.normalization)?;
            if o.m_form && norm != HamiltonianNormalization::Section7 {
                return Err(Failure::Usage("--m-form applies to the s7 normalization".into()));
            }
            let mut h = hamiltonian(ell, norm)?;
            let symbol = if o.m_form {
                h = m_form(&h, ell);
                "m"
            } else {
                "c"
            };
            let out = match o.format {
                Format::Json => pretty(&json!({
                    "ell": ell.to_string(),
                    "normalization": norm.name(),
                    "symbol": symbol,
                    "operator": encode_operator(&h),
                })),
                f => render::operator(&h, symbol, style(f)),
            };
            Ok((out, true))
        }
        Command::Spectrum => {
            let records = spectrum(ell, ham_norm(o.normalization)?, o.max_total)?;
            let entries: Vec<SpectrumEntryJson> = records.iter().map(Into::into).collect();
            Ok((pretty(&entries), true))
        }
        Command::Eigenstate { n } => {
            let modes = ((ell.twice() + 1) / 2) as usize;
            if n.len() != modes {
                return Err(Failure::Usage(format!("--n needs {modes} entries at ell = {ell}")));
            }
            let r = ladder_state(ell, ham_norm(o.normalization)?, &n)?;
            let out = json!({
                "ell": ell.to_string(),
                "n": r.n,
                "energy": RationalJson::from(&r.energy),
                "state": encode_function(&r.state),
                "latex": render::function(&r.state, "c", Style::Latex),
            });
            Ok((pretty(&out), true))
        }
        Command::Matrix => {
            let oracle = matrix_oracle(ell, o.max_degree)?;
            let out = json!({
                "matrix": MatrixJson::from(&oracle.matrix),
                "eigenvalues": oracle.eigenvalues.iter().map(RationalJson::from).collect::<Vec<_>>(),
            });
            Ok((pretty(&out), true))
        }
        Command::Verify { suite } => {
            let chart = match o.chart {
                ChartArg::Free => ChartKind::Free,
                ChartArg::Osc => ChartKind::Osc,
            };
            let report = match suite {
                Suite::Closure => verify::closure(ell),
                Suite::Jacobi => verify::jacobi(ell, o.seed),
                Suite::Duality => verify::duality(ell, o.seed),
                Suite::Onshell => {
                    let norm = osc_norm(o.normalization)?;
                    if chart == ChartKind::Osc {
                        norm.require_available(ell)?;
                    }
                    verify::onshell(ell, chart, norm)
                }
                Suite::Transform => {
                    let norm = osc_norm(o.normalization)?;
                    norm.require_available(ell)?;
                    verify::transform(ell, norm)
                }
                Suite::Spectrum => {
                    let norm = ham_norm(o.normalization)?;
                    norm.require_available(ell)?;
                    verify::spectrum_suite(ell, norm, o.max_total)
                }
                Suite::All => {
                    let r = verify::all(ell, o.seed, o.max_total);
                    return Ok((pretty(&r), r.passed));
                }
            };
            Ok((pretty(&report), report.passed))
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(out: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            emit(&out);
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(report)) => {
            emit(&pretty(&report));
            ExitCode::from(1)
        }
    }
}
