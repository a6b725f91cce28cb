//! `aperiodica` command-line front end.

mod commands;
mod golden;

use std::path::PathBuf;
use std::process::ExitCode;

use aperiodica::capcore::{CapParams, Window};
use aperiodica::exactnum::parse_literal;
use aperiodica::QuadraticReal;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] aperiodica::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Failed(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "aperiodica",
    version,
    about = "Exact one-dimensional cut-and-project sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Points or coded word of a cut-and-project set.
    Gen(GenArgs),
    /// Factors, complexity, special factors, densities or breakpoints.
    Analyze(AnalyzeArgs),
    /// Rauzy graph of order n.
    Rauzy(RauzyArgs),
    /// Breakpoint set D_n and its cells.
    Dn(DnArgs),
    /// Beta-expansions and beta-integers.
    Beta(BetaArgs),
    /// Self-similarity of a cut-and-project set.
    Selfsim(SelfsimArgs),
    /// Substitution generating a coded word.
    Subst(SubstArgs),
    /// Replays the reference examples against the golden file.
    PaperCheck(PaperCheckArgs),
}

/// Parameters shared by most subcommands.
#[derive(Args, Debug)]
pub struct SetArgs {
    /// Named parameter set replacing --eps, --eta, --c and --len.
    #[arg(long, value_enum, conflicts_with_all = ["eps", "eta", "c", "len"])]
    pub preset: Option<Preset>,
    /// Slope ε (number literal, e.g. "-1/tau").
    #[arg(long, value_parser = literal, allow_hyphen_values = true, required_unless_present = "preset")]
    pub eps: Option<QuadraticReal>,
    /// Slope η.
    #[arg(long, value_parser = literal, allow_hyphen_values = true, required_unless_present = "preset")]
    pub eta: Option<QuadraticReal>,
    /// Left end of the window.
    #[arg(long, value_parser = literal, allow_hyphen_values = true, required_unless_present = "preset")]
    pub c: Option<QuadraticReal>,
    /// Window length.
    #[arg(long, value_parser = literal, allow_hyphen_values = true, required_unless_present = "preset")]
    pub len: Option<QuadraticReal>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Preset {
    /// ε = −1/τ, η = τ, window [−1, 0).
    Fibonacci,
    /// ε = −1/√2, η = 1/√2, window [0, −2+2√2).
    Octagonal,
}

impl SetArgs {
    pub fn resolve(&self) -> Result<(CapParams, Window), CliError> {
        let (eps, eta, c, len) = match self.preset {
            Some(Preset::Fibonacci) => {
                let t = QuadraticReal::tau();
                (
                    -(QuadraticReal::one() / &t),
                    t,
                    QuadraticReal::from_int(-1),
                    QuadraticReal::one(),
                )
            }
            Some(Preset::Octagonal) => {
                let e = literal("-1/sqrt(2)").expect("valid literal");
                let len = literal("-2+2*sqrt(2)").expect("valid literal");
                (e.clone(), e.conjugate(), QuadraticReal::zero(), len)
            }
            None => {
                let get = |x: &Option<QuadraticReal>| x.clone().expect("required by the parser");
                (get(&self.eps), get(&self.eta), get(&self.c), get(&self.len))
            }
        };
        Ok((CapParams::new(eps, eta)?, Window::new(c, len)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    Json,
    Csv,
    Word,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Points `x_{-N} … x_{-1}` left of the seed; letters for `--format word`.
    #[arg(long, default_value_t = 0)]
    pub left: usize,
    /// Points `x_1 … x_N` right of the seed; letters `u_0 … u_{N-1}` for `--format word`.
    #[arg(long, default_value_t = 20)]
    pub right: usize,
    #[arg(long, value_enum, default_value_t = GenFormat::Json)]
    pub format: GenFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Factors,
    Complexity,
    Special,
    Density,
    Dn,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Factor length.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = What::Complexity)]
    pub what: What,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args, Debug)]
pub struct RauzyArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    pub format: GraphFormat,
    /// Append exact edge weights to DOT labels.
    #[arg(long)]
    pub weights: bool,
    /// Print factors over {A, C} as binary words.
    #[arg(long)]
    pub binary: bool,
}

#[derive(Args, Debug)]
pub struct DnArgs {
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub eps: QuadraticReal,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct BetaArgs {
    /// `m,n,+` for β² = mβ + n, `m,n,-` for β² = mβ − n, or a number literal.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Greedy expansion of a non-negative number.
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub expand: Option<QuadraticReal>,
    /// Digits after the radix point kept by --expand.
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    /// Rényi development of 1.
    #[arg(long)]
    pub renyi: bool,
    /// Parry admissibility of a digit string such as `1010` or `10.01`.
    #[arg(long, value_parser = digit_string)]
    pub admissible: Option<Digits>,
    /// Non-negative beta-integers up to a bound.
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub integers: Option<QuadraticReal>,
    /// Substitution whose fixed point is the gap word of the beta-integers.
    #[arg(long)]
    pub subst: bool,
    /// Compare the beta-integers with a cut-and-project set on this many points.
    #[arg(long)]
    pub equivalence: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SelfsimArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Test whether the set is self-similar.
    #[arg(long)]
    pub check: bool,
    /// Search for a similarity factor.
    #[arg(long)]
    pub find: bool,
    /// Check γΣ ⊆ Σ on this many points.
    #[arg(long)]
    pub verify: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SubstArgs {
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub eps: QuadraticReal,
    /// Defaults to |ε′|.
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub eta: Option<QuadraticReal>,
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub c: QuadraticReal,
    #[arg(long, value_parser = literal, allow_hyphen_values = true)]
    pub len: QuadraticReal,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub gamma_power: u32,
    /// Merge letters with equal images under φ^K.
    #[arg(long, value_name = "K", num_args = 0..=1, default_missing_value = "1", value_parser = clap::value_parser!(u32).range(1..))]
    pub merge: Option<u32>,
    /// Iterate the seed this many rounds.
    #[arg(long)]
    pub iterate: Option<u32>,
    /// Compare the projected fixed point with the coded word on this many letters.
    #[arg(long)]
    pub verify: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PaperCheckArgs {
    /// Golden file replacing the embedded one.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    /// Run a single group of checks.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(golden::GROUPS))]
    pub only: Option<String>,
}

fn literal(s: &str) -> Result<QuadraticReal, String> {
    parse_literal(s).map_err(|e| e.to_string())
}

/// Digits of a β-expansion, radix point removed.
#[derive(Clone, Debug)]
pub struct Digits(pub Vec<u32>);

fn digit_string(s: &str) -> Result<Digits, String> {
    let digits: Option<Vec<u32>> = s
        .chars()
        .filter(|&c| c != '.')
        .map(|c| c.to_digit(10))
        .collect();
    match digits {
        Some(d) if !d.is_empty() && s.matches('.').count() <= 1 => Ok(Digits(d)),
        _ => Err(format!("{s:?} is not a digit string")),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Rauzy(a) => commands::rauzy(&a),
        Command::Dn(a) => commands::dn(&a),
        Command::Beta(a) => commands::beta(&a),
        Command::Selfsim(a) => commands::selfsim(&a),
        Command::Subst(a) => commands::subst(&a),
        Command::PaperCheck(a) => golden::paper_check(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
