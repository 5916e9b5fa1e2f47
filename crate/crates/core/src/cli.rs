//! Command-line front end: `matrix`, `verify` and `gamma` subcommands.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 malformed input,
//! 3 well-formed input outside an operation's domain.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::compact::{commutator_decay, eta};
use crate::dual::{block_decomposition_check, dual_bh_residuals, DualWindow};
use crate::error::{Error, Result};
use crate::gamma::{
    check_gamma_isometry, check_gamma_unitary, matrix_json, point_in_bgamma, point_in_gamma,
    random_diagonal_unitaries, s_toeplitz_solve, synth_gamma_unitary, GammaTuple,
};
use crate::hardy::{bh_residuals, classify_analytic, lift_verify, product_defect, recover_symbol};
use crate::matrix::{assemble, MatrixWindow, NormOptions};
use crate::operator::OperatorSpec;
use crate::partition::{enumerate_window, Part, PartitionIndex};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::symbol::Symbol;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug, Serialize)]
#[command(name = "symtoep", version, about = "Exact Toeplitz and Hankel operators on the symmetrized polydisk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Assemble an operator matrix on a window and export it.
    Matrix(MatrixArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Membership and structure checks for matrix tuples.
    Gamma(GammaArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Number of variables.
    #[arg(long)]
    pub d: Option<usize>,
    /// Largest allowed top entry of window indices.
    #[arg(long)]
    pub maxtop: Option<i64>,
    /// Smallest allowed bottom entry of window indices.
    #[arg(long)]
    pub minbottom: Option<i64>,
    /// Tolerance for floating-point checks (exact checks ignore it).
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Torus grid size for sampled sup norms and polynomial batteries.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Power iterations per norm estimate.
    #[arg(long, default_value_t = 500)]
    pub iterations: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Kind {
    #[value(name = "toeplitz")]
    Toeplitz,
    #[value(name = "laurent")]
    Laurent,
    #[value(name = "hankel")]
    Hankel,
    #[value(name = "dual")]
    Dual,
    #[value(name = "shiftY")]
    ShiftY,
}

#[derive(Args, Debug, Serialize)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Symbol JSON file.
    #[arg(long)]
    pub symbol: Option<PathBuf>,
    /// Index of the shift for `--kind shiftY`.
    #[arg(long)]
    pub j: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    #[value(name = "brown-halmos")]
    BrownHalmos,
    #[value(name = "analytic")]
    Analytic,
    #[value(name = "recover")]
    Recover,
    #[value(name = "product")]
    Product,
    #[value(name = "block")]
    Block,
    #[value(name = "dual-bh")]
    DualBh,
    #[value(name = "eta")]
    Eta,
    #[value(name = "commutator")]
    Commutator,
    #[value(name = "lift")]
    Lift,
    #[value(name = "extension")]
    Extension,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Symbol JSON file.
    #[arg(long)]
    pub symbol: Option<PathBuf>,
    /// Second symbol for the product suite.
    #[arg(long)]
    pub symbol2: Option<PathBuf>,
    /// Operator instead of a symbol: `shiftY<j>`, `toeplitz`, or
    /// `rank-one:<row>:<col>[:<coefficient>]` with indices like `1,0`.
    #[arg(long)]
    pub operator: Option<String>,
    /// Power `j` for the eta suite.
    #[arg(long)]
    pub j: Option<usize>,
    /// Largest conjugation power for the commutator suite.
    #[arg(long, default_value_t = 4)]
    pub jmax: usize,
    /// Orbit bound for the recover suite.
    #[arg(long)]
    pub bound: Option<i64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaAction {
    #[value(name = "member")]
    Member,
    #[value(name = "check-unitary")]
    CheckUnitary,
    #[value(name = "check-isometry")]
    CheckIsometry,
    #[value(name = "solve-toeplitz")]
    SolveToeplitz,
    #[value(name = "synth")]
    Synth,
}

#[derive(Args, Debug, Serialize)]
pub struct GammaArgs {
    #[arg(value_enum)]
    pub action: GammaAction,
    /// Comma-separated complex coordinates such as `0,-1` or `0.5+0.5i,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Require the point to lie on the distinguished boundary.
    #[arg(long)]
    pub boundary: bool,
    /// Tuple JSON file; for `synth`, the commuting unitaries.
    #[arg(long)]
    pub tuple: Option<PathBuf>,
    /// Matrix size for random synthesis.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Degree bound of the polynomial battery in `check-isometry`.
    #[arg(long, default_value_t = 3)]
    pub poly_degree: u32,
    #[command(flatten)]
    pub common: Common,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    let config = serde_json::to_value(&cli.command).expect("arguments serialize");
    let outcome = match &cli.command {
        Command::Matrix(a) => cmd_matrix(a, &config),
        Command::Verify(a) => cmd_verify(a, &config),
        Command::Gamma(a) => cmd_gamma(a, &config),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SYMTOEP_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse(format!("SYMTOEP_THREADS must be a positive integer, got {v:?}")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn read_symbol(path: &Path) -> Result<Symbol> {
    Symbol::from_json(&std::fs::read_to_string(path)?)
}

fn resolve_d(flag: Option<usize>, from_input: Option<usize>) -> Result<usize> {
    match (flag, from_input) {
        (Some(a), Some(b)) if a != b => Err(Error::Dimension(format!("--d {a} but the input has d = {b}"))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(2),
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(common: &Common, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(common, &s)
}

fn norm_options(c: &Common) -> NormOptions {
    NormOptions {
        iterations: c.iterations,
        seed: c.seed,
        grid: c.grid,
        tol: c.tol,
    }
}

/// Writes the report and lists failing checks with their witnesses on
/// standard error.
fn finish(common: &Common, config: &Value, report: &Report) -> Result<i32> {
    emit_json(common, &json!({"config": config, "report": report.to_json()}))?;
    if report.passed() {
        return Ok(EXIT_OK);
    }
    for f in report.failures() {
        eprintln!("FAIL {}", f.check);
        for w in &f.witnesses {
            eprintln!("  witness {w}");
        }
    }
    Ok(EXIT_FAILED)
}

pub fn cmd_matrix(a: &MatrixArgs, config: &Value) -> Result<i32> {
    let symbol = a.symbol.as_deref().map(read_symbol).transpose()?;
    let d = resolve_d(a.common.d, symbol.as_ref().map(Symbol::d))?;
    let need_symbol = || {
        symbol
            .clone()
            .ok_or_else(|| Error::Parse("--symbol is required for this kind".into()))
    };
    let (op, rows_part, cols_part) = match a.kind {
        Kind::Toeplitz => (OperatorSpec::Toeplitz(need_symbol()?), Part::Analytic, Part::Analytic),
        Kind::Laurent => (OperatorSpec::Laurent(need_symbol()?), Part::All, Part::All),
        Kind::Hankel => (OperatorSpec::Hankel(need_symbol()?), Part::NonAnalytic, Part::Analytic),
        Kind::Dual => (OperatorSpec::DualToeplitz(need_symbol()?), Part::NonAnalytic, Part::NonAnalytic),
        Kind::ShiftY => {
            let j = a.j.ok_or_else(|| Error::Parse("--j is required for shiftY".into()))?;
            (OperatorSpec::shift_y(d, j)?, Part::Analytic, Part::Analytic)
        }
    };
    let default_bottom = match (rows_part, cols_part) {
        (Part::Analytic, Part::Analytic) => 0,
        _ => -a.common.maxtop.unwrap_or(d as i64 + 2).max(1),
    };
    let window = enumerate_window(
        d,
        a.common.maxtop.unwrap_or(d as i64 + 2),
        a.common.minbottom.unwrap_or(default_bottom),
    )?;
    let m = assemble(&op, &window.restrict(rows_part), &window.restrict(cols_part))?;
    match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(&a.common, &m.to_csv())?,
        Format::Json => emit_json(&a.common, &json!({"config": config, "matrix": m.to_json()}))?,
    }
    Ok(EXIT_OK)
}

/// `shiftY<j>`, `toeplitz`, or `rank-one:<row>:<col>[:<coefficient>]`.
pub fn parse_operator(s: &str, d: usize, symbol: Option<&Symbol>) -> Result<OperatorSpec> {
    let s = s.trim();
    if let Some(j) = s.strip_prefix("shiftY") {
        let j: usize = j.parse().map_err(|_| Error::Parse(format!("bad shift index in {s:?}")))?;
        return OperatorSpec::shift_y(d, j);
    }
    if s == "toeplitz" {
        let phi = symbol.ok_or_else(|| Error::Parse("operator toeplitz needs --symbol".into()))?;
        return Ok(OperatorSpec::Toeplitz(phi.clone()));
    }
    if let Some(rest) = s.strip_prefix("rank-one:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(Error::Parse(format!("expected rank-one:<row>:<col>[:<coefficient>], got {s:?}")));
        }
        let row = parse_index(parts[0])?;
        let col = parse_index(parts[1])?;
        if row.d() != d || col.d() != d {
            return Err(Error::Dimension(format!("rank-one indices must have length {d}")));
        }
        let c = match parts.get(2) {
            Some(c) => Scalar::parse_parts(c, "0")?,
            None => Scalar::from_integer(1),
        };
        return Ok(OperatorSpec::rank_one(row, col, c));
    }
    Err(Error::Parse(format!("unknown operator {s:?}")))
}

fn parse_index(s: &str) -> Result<PartitionIndex> {
    let entries = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad index {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    PartitionIndex::new(entries).map_err(|e| Error::Parse(e.to_string()))
}

fn residual_report(name: &str, residuals: &[MatrixWindow]) -> Report {
    let mut r = Report::new(name);
    let k = residuals.len();
    for (i, m) in residuals.iter().enumerate() {
        let label = if i + 1 == k { "residual-p".to_string() } else { format!("residual-s{}", i + 1) };
        r.child(Report::exact_zero(label, m));
    }
    r
}

pub fn cmd_verify(a: &VerifyArgs, config: &Value) -> Result<i32> {
    let c = &a.common;
    let symbol = a.symbol.as_deref().map(read_symbol).transpose()?;
    let d = resolve_d(c.d, symbol.as_ref().map(Symbol::d))?;
    let operator = a
        .operator
        .as_deref()
        .map(|s| parse_operator(s, d, symbol.as_ref()))
        .transpose()?;
    let need_symbol = || {
        symbol
            .clone()
            .ok_or_else(|| Error::Parse("this suite needs --symbol".into()))
    };
    let target = || -> Result<OperatorSpec> {
        match &operator {
            Some(op) => Ok(op.clone()),
            None => Ok(OperatorSpec::Toeplitz(need_symbol()?)),
        }
    };
    let height = symbol.as_ref().map_or(1, Symbol::height);
    let analytic_window = |extra: i64| {
        enumerate_window(d, c.maxtop.unwrap_or(height + d as i64 + extra), c.minbottom.unwrap_or(0))
    };
    let full_window = || {
        let top = c.maxtop.unwrap_or(d as i64 + 1 + height);
        enumerate_window(d, top, c.minbottom.unwrap_or(-(height.max(1) + 2)))
    };
    let opts = norm_options(c);

    let report = match a.suite {
        Suite::BrownHalmos => {
            let w = analytic_window(3)?;
            residual_report("brown-halmos", &bh_residuals(&target()?, &w)?)
        }
        Suite::Analytic => classify_analytic(&need_symbol()?, &analytic_window(2)?)?,
        Suite::Recover => {
            let t = target()?;
            let bound = a.bound.unwrap_or(height.max(1));
            let mut r = Report::new("recover");
            match recover_symbol(&t, bound) {
                Ok(phi) => {
                    r.detail("symbol", serde_json::from_str::<Value>(&phi.to_json())?);
                    if operator.is_none() {
                        r.require(Some(&phi) == symbol.as_ref());
                    }
                }
                Err(Error::NotToeplitz(msg)) => {
                    r.detail("notToeplitz", msg).require(false);
                }
                Err(e) => return Err(e),
            }
            r
        }
        Suite::Product => {
            let phi = need_symbol()?;
            let psi = match &a.symbol2 {
                Some(p) => read_symbol(p)?,
                None => phi.clone(),
            };
            let h = phi.height().max(psi.height());
            let w = enumerate_window(d, c.maxtop.unwrap_or(h + d as i64 + 2), c.minbottom.unwrap_or(0))?;
            Report::exact_zero("product-defect", &product_defect(&phi, &psi, &w)?)
        }
        Suite::Block => block_decomposition_check(&need_symbol()?, &full_window()?)?,
        Suite::DualBh => {
            let dw = DualWindow::new(&full_window()?)?;
            let t = match &operator {
                Some(op) => op.clone(),
                None => OperatorSpec::DualToeplitz(need_symbol()?),
            };
            residual_report("dual-brown-halmos", &dual_bh_residuals(&t, &dw)?)
        }
        Suite::Eta => {
            let j = a.j.unwrap_or(1);
            let e = eta(&target()?, j, &analytic_window(j as i64 + 2)?, opts)?;
            let mut r = Report::new("eta");
            r.detail("eta", e.to_json()).require(e.is_zero());
            r
        }
        Suite::Commutator => {
            let t = target()?;
            let w = analytic_window(2)?;
            let decays = (1..d)
                .map(|i| commutator_decay(&t, i, a.jmax, &w, opts))
                .collect::<Result<Vec<_>>>()?;
            if c.format == Some(Format::Csv) {
                let mut out = String::from("i;n;norm;zero\n");
                for r in &decays {
                    for line in r.to_csv().lines().skip(1) {
                        out.push_str(&format!("{};{line}\n", r.i));
                    }
                }
                emit(c, &out)?;
                return Ok(if decays.iter().all(|r| r.zero_from().is_some()) { EXIT_OK } else { EXIT_FAILED });
            }
            let mut r = Report::new("commutator-decay");
            for dr in &decays {
                let mut child = Report::new(format!("commutator-s{}", dr.i));
                child.detail("decay", dr.to_json()).require(dr.zero_from().is_some());
                r.child(child);
            }
            r
        }
        Suite::Lift => {
            let top = c.maxtop.unwrap_or(16);
            let mut tops: Vec<i64> = [top / 4, top / 2, 3 * top / 4, top]
                .into_iter()
                .filter(|&t| t >= d as i64 - 1)
                .collect();
            tops.dedup();
            let windows = tops
                .iter()
                .map(|&t| enumerate_window(d, t, c.minbottom.unwrap_or(-t)))
                .collect::<Result<Vec<_>>>()?;
            lift_verify(&need_symbol()?, &windows, opts)?
        }
        Suite::Extension => crate::gamma::minimal_extension_verify(&need_symbol()?, &full_window()?)?,
    };
    finish(c, config, &report)
}

/// Comma-separated complex numbers.
pub fn parse_point(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|x| {
            let t = x.trim();
            Complex64::from_str(t).map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
        })
        .collect()
}

fn read_tuple(path: Option<&Path>) -> Result<GammaTuple> {
    let p = path.ok_or_else(|| Error::Parse("--tuple is required".into()))?;
    GammaTuple::from_json(&std::fs::read_to_string(p)?)
}

pub fn cmd_gamma(a: &GammaArgs, config: &Value) -> Result<i32> {
    let c = &a.common;
    let report = match a.action {
        GammaAction::Member => {
            let s = a.point.as_deref().ok_or_else(|| Error::Parse("--point is required".into()))?;
            let pt = parse_point(s)?;
            resolve_d(c.d, Some(pt.len()))?;
            let closed = point_in_gamma(&pt, c.tol);
            let boundary = point_in_bgamma(&pt, c.tol);
            let mut r = Report::new("membership");
            r.detail("gamma", closed.to_json()).detail("boundary", boundary.to_json());
            r.require(if a.boundary { boundary.in_set } else { closed.in_set });
            r
        }
        GammaAction::CheckUnitary => check_gamma_unitary(&read_tuple(a.tuple.as_deref())?, c.tol, c.seed)?,
        GammaAction::CheckIsometry => {
            check_gamma_isometry(&read_tuple(a.tuple.as_deref())?, c.tol, a.poly_degree, c.grid)?
        }
        GammaAction::SolveToeplitz => {
            let t = read_tuple(a.tuple.as_deref())?;
            let basis = s_toeplitz_solve(&t, c.tol.max(1e-8))?;
            eprintln!("dimension {}", basis.len());
            let mut r = Report::new("s-toeplitz");
            r.detail("dimension", basis.len())
                .detail("basis", basis.iter().map(matrix_json).collect::<Vec<_>>());
            r
        }
        GammaAction::Synth => {
            let unitaries = match &a.tuple {
                Some(p) => read_tuple(Some(p))?.mats().to_vec(),
                None => {
                    let d = resolve_d(c.d, None)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
                    random_diagonal_unitaries(d, a.n, &mut rng)
                }
            };
            let t = synth_gamma_unitary(&unitaries, c.tol.max(1e-8))?;
            let mut v = t.to_json();
            v["config"] = config.clone();
            emit_json(c, &v)?;
            return Ok(EXIT_OK);
        }
    };
    finish(c, config, &report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_strings() {
        assert!(matches!(parse_operator("shiftY1", 2, None), Ok(OperatorSpec::ShiftY { .. })));
        assert!(matches!(parse_operator("shiftY2", 2, None), Err(Error::Domain(_))));
        assert!(matches!(parse_operator("rank-one:1,0:1,0", 2, None), Ok(OperatorSpec::FiniteRank { .. })));
        assert!(parse_operator("rank-one:1,0:1,0:1/2", 2, None).is_ok());
        assert!(matches!(parse_operator("rank-one:0,1:1,0", 2, None), Err(Error::Parse(_))));
        assert!(matches!(parse_operator("toeplitz", 2, None), Err(Error::Parse(_))));
        assert!(matches!(parse_operator("blob", 2, None), Err(Error::Parse(_))));
    }

    #[test]
    fn point_strings() {
        let p = parse_point("0,-1").unwrap();
        assert_eq!(p, vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let p = parse_point("0.5+0.5i, 2").unwrap();
        assert_eq!(p[0], Complex64::new(0.5, 0.5));
        assert!(parse_point("x").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["symtoep", "matrix"]), EXIT_INPUT);
        assert_eq!(run(["symtoep", "verify", "--suite", "nope"]), EXIT_INPUT);
        assert_eq!(run(["symtoep", "--help"]), EXIT_OK);
    }
}
