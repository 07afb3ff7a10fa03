//! Command implementations behind the `majorant` binary.
//!
//! Each command has a typed library entry point (`bound_report`,
//! `sweep_qubit`, `simplex_qutrit`, `subcoeff_report`, `verify_suite`) and
//! [`run`] wires them to argument parsing and output.
//!
//! Matrices are exchanged as JSON: an array of rows, each row an array of
//! `[re, im]` pairs. Writing and reading back is bit-exact.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    self, comparison_bounds, conditional_bound, sub_coefficients_with_limit, w_lambda, Baseline,
    BaselineValue, SubCoefficients, DEFAULT_MAX_DIMENSION,
};
use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, named, ComplexMatrix, C64};
use crate::oracle::{self, VerificationReport};
use crate::states::Spectrum;
use crate::Tolerances;

// ---------------------------------------------------------------------------
// matrix files

/// Serializes a matrix as rows of `[re, im]` pairs.
pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j))
                .map(|z| [z.re, z.im])
                .collect()
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("finite entries serialize")
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(text)?;
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::Parse("matrix has no entries".into()));
    }
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Parse("rows have different lengths".into()));
    }
    let entries = rows
        .into_iter()
        .flatten()
        .map(|[re, im]| C64::new(re, im))
        .collect();
    ComplexMatrix::new(n_rows, n_cols, entries)
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    matrix_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, matrix_to_json(m) + "\n")?;
    Ok(())
}

// ---------------------------------------------------------------------------
// argument values

/// Where a unitary comes from: a builtin name or a JSON matrix file.
///
/// Builtins: `identity[:n]`, `fourier[:n]`, `hadamard2`, `o3`,
/// `rotation:<θ>` and `haar:<n>` (drawn with `--seed`). Without an explicit
/// size, `identity` and `fourier` take the dimension from the context.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitarySpec {
    Identity(Option<usize>),
    Fourier(Option<usize>),
    Hadamard2,
    O3,
    Rotation(f64),
    Haar(usize),
    File(PathBuf),
}

impl FromStr for UnitarySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let size = |a: Option<&str>| -> Result<Option<usize>> {
            a.map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension in '{s}'")))
            })
            .transpose()
        };
        Ok(match name {
            "identity" => UnitarySpec::Identity(size(arg)?),
            "fourier" => UnitarySpec::Fourier(size(arg)?),
            "hadamard2" if arg.is_none() => UnitarySpec::Hadamard2,
            "o3" if arg.is_none() => UnitarySpec::O3,
            "rotation" => UnitarySpec::Rotation(parse_real(arg.ok_or_else(|| {
                Error::Parse("rotation needs an angle, e.g. rotation:pi/3".into())
            })?)?),
            "haar" => UnitarySpec::Haar(
                size(arg)?
                    .ok_or_else(|| Error::Parse("haar needs a dimension, e.g. haar:4".into()))?,
            ),
            _ if Path::new(s).extension().is_some_and(|e| e == "json") || Path::new(s).exists() => {
                UnitarySpec::File(PathBuf::from(s))
            }
            _ => return Err(Error::Parse(format!("unknown unitary '{s}'"))),
        })
    }
}

impl UnitarySpec {
    /// Builds the matrix and checks that it is unitary. `dim` fills in the
    /// size of `identity` and `fourier` when none was given.
    pub fn resolve(&self, dim: Option<usize>, seed: u64) -> Result<ComplexMatrix> {
        let need_dim = |d: Option<usize>| {
            d.or(dim).ok_or_else(|| {
                Error::InvalidArguments("dimension required, e.g. identity:3".into())
            })
        };
        let u = match self {
            UnitarySpec::Identity(d) => ComplexMatrix::identity(need_dim(*d)?),
            UnitarySpec::Fourier(d) => named::fourier(need_dim(*d)?)?,
            UnitarySpec::Hadamard2 => named::hadamard2(),
            UnitarySpec::O3 => named::o3(),
            UnitarySpec::Rotation(theta) => named::rotation(*theta)?,
            UnitarySpec::Haar(n) => haar_unitary(*n, seed)?,
            UnitarySpec::File(path) => read_matrix(path)?,
        };
        if !u.is_square() {
            return Err(Error::InvalidInput(format!(
                "unitary must be square, got {}x{}",
                u.rows(),
                u.cols()
            )));
        }
        u.ensure_unitary(Tolerances::default().unitary)?;
        Ok(u)
    }
}

/// Parses a real number, also accepting fractions such as `1/3` and
/// multiples of π such as `pi/3`, `2pi/3` or `0.5*pi`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let lower = t.to_ascii_lowercase().replace('π', "pi");
    let bad = || Error::Parse(format!("cannot parse number '{s}'"));
    if !lower.contains("pi") {
        let (num, den) = lower.split_once('/').ok_or_else(bad)?;
        let num = num.trim().parse::<f64>().map_err(|_| bad())?;
        let den = den.trim().parse::<f64>().map_err(|_| bad())?;
        return Ok(num / den);
    }
    let (pre, post) = lower.split_once("pi").ok_or_else(bad)?;
    let pre = pre.trim().trim_end_matches('*').trim();
    let factor = if pre.is_empty() {
        1.0
    } else {
        pre.parse::<f64>().map_err(|_| bad())?
    };
    let post = post.trim();
    let divisor = match post.strip_prefix('/') {
        Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
        None if post.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(factor * PI / divisor)
}

/// Parses a comma-separated spectrum.
pub fn parse_spectrum(s: &str, renormalize: bool) -> Result<Spectrum> {
    let values = s.split(',').map(parse_real).collect::<Result<Vec<_>>>()?;
    if renormalize {
        Spectrum::new_renormalized(values)
    } else {
        Spectrum::new(values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntropySelector {
    Shannon,
    Renyi(f64),
    Tsallis(f64),
}

impl FromStr for EntropySelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let order =
            || -> Result<f64> {
                parse_real(arg.ok_or_else(|| {
                    Error::Parse(format!("'{name}' needs an order, e.g. {name}:0.5"))
                })?)
            };
        match name.to_ascii_lowercase().as_str() {
            "shannon" if arg.is_none() => Ok(EntropySelector::Shannon),
            "renyi" => Ok(EntropySelector::Renyi(order()?)),
            "tsallis" => Ok(EntropySelector::Tsallis(order()?)),
            _ => Err(Error::Parse(format!("unknown entropy '{s}'"))),
        }
    }
}

impl fmt::Display for EntropySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropySelector::Shannon => f.write_str("shannon"),
            EntropySelector::Renyi(a) => write!(f, "renyi:{a}"),
            EntropySelector::Tsallis(a) => write!(f, "tsallis:{a}"),
        }
    }
}

/// Unit for reported entropies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    #[default]
    Nats,
    Bits,
}

impl Base {
    /// Converts a value in nats.
    pub fn scale(self, nats: f64) -> f64 {
        match self {
            Base::Nats => nats,
            Base::Bits => nats / LN_2,
        }
    }
}

/// `%g`-style formatting with 12 significant digits.
pub fn format_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn scaled_baselines(values: Vec<BaselineValue>, base: Base) -> Vec<BaselineValue> {
    values
        .into_iter()
        .map(|mut b| {
            b.value = b.value.map(|v| base.scale(v));
            b
        })
        .collect()
}

// ---------------------------------------------------------------------------
// bound

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub dimension: usize,
    pub entropy: String,
    pub conditional: bool,
    pub base: Base,
    pub lambda: Vec<f64>,
    pub s: Vec<f64>,
    pub c: f64,
    #[serde(rename = "W")]
    pub w: Vec<f64>,
    #[serde(rename = "W_lambda")]
    pub w_lambda: Vec<f64>,
    pub bound: f64,
    pub baselines: Vec<BaselineValue>,
    pub notes: Vec<String>,
}

/// Evaluates the requested lower bound. With `conditional`, the bound is the
/// one on `H(X|B) + H(Y|B)` for a bipartite pure state with Schmidt vector
/// `λ` and only Shannon entropy is accepted. Comparison baselines (which
/// bound the same conditional quantity) are always included.
pub fn bound_report(
    u: &ComplexMatrix,
    lambda: &Spectrum,
    entropy: EntropySelector,
    conditional: bool,
    base: Base,
) -> Result<BoundReport> {
    let n = u.rows();
    if lambda.len() != n {
        return Err(Error::InvalidArguments(format!(
            "spectrum has {} entries but the unitary is {n}x{n}",
            lambda.len()
        )));
    }
    let s = sub_coefficients_with_limit(u, DEFAULT_MAX_DIMENSION)?;
    let wl = w_lambda(&s, lambda);
    let mut notes = vec![format!(
        "entropies in {}",
        if base == Base::Nats { "nats" } else { "bits" }
    )];

    let bound = match (entropy, conditional) {
        (EntropySelector::Shannon, true) => base.scale(conditional_bound(lambda, &s)),
        (_, true) => {
            return Err(Error::InvalidArguments(
                "the conditional bound is defined for Shannon entropy only".into(),
            ))
        }
        (EntropySelector::Shannon, false) => base.scale(bounds::shannon_bound(&wl)),
        (EntropySelector::Renyi(a), false) => base.scale(bounds::renyi_bound(&wl, a)?),
        (EntropySelector::Tsallis(a), false) => {
            if base == Base::Bits {
                notes.push("Tsallis values carry no logarithm and are not rescaled".into());
            }
            bounds::tsallis_bound(&wl, a)?
        }
    };
    notes.push(
        "baselines bound H(X|B) + H(Y|B) for a pure bipartite state with Schmidt vector lambda"
            .into(),
    );

    Ok(BoundReport {
        dimension: n,
        entropy: entropy.to_string(),
        conditional,
        base,
        lambda: lambda.values().to_vec(),
        s: s.values().to_vec(),
        c: s.c(),
        w: s.w_vector().into_values(),
        w_lambda: wl.values().to_vec(),
        bound,
        baselines: scaled_baselines(comparison_bounds(lambda, &s, &Baseline::ALL), base),
        notes,
    })
}

// ---------------------------------------------------------------------------
// sweeps

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    /// Vary the rotation angle at a fixed smaller eigenvalue.
    Theta,
    /// Vary the smaller eigenvalue at a fixed rotation angle.
    Lambda,
}

/// `steps` equally spaced points from `min` to `max`, both included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.steps < 2
            || self.max.partial_cmp(&self.min) != Some(std::cmp::Ordering::Greater)
            || !self.min.is_finite()
            || !self.max.is_finite()
        {
            return Err(Error::InvalidArguments(format!(
                "degenerate grid [{}, {}] with {} steps",
                self.min, self.max, self.steps
            )));
        }
        let last = self.steps - 1;
        Ok((0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last as f64
                }
            })
            .collect())
    }
}

/// One row of a qubit sweep. All bounds are in nats and clamped at zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub prkz: f64,
    pub berta: f64,
    pub maassen_uffink: f64,
    pub direct_sum: f64,
}

fn qubit_point(theta: f64, smaller: f64) -> Result<SweepRow> {
    let u = named::rotation(theta)?;
    let s = sub_coefficients_with_limit(&u, 2)?;
    let lambda = Spectrum::new(vec![1.0 - smaller, smaller])?;
    let b = comparison_bounds(
        &lambda,
        &s,
        &[
            Baseline::Berta,
            Baseline::MaassenUffink,
            Baseline::DirectSum,
        ],
    );
    let v = |i: usize| b[i].value.expect("implemented baseline");
    Ok(SweepRow {
        x: f64::NAN,
        prkz: conditional_bound(&lambda, &s),
        berta: v(0),
        maassen_uffink: v(1),
        direct_sum: v(2),
    })
}

fn check_smaller_eigenvalue(x: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&x) {
        return Err(Error::InvalidArguments(format!(
            "smaller eigenvalue {x} outside [0, 1/2]"
        )));
    }
    Ok(())
}

/// Conditional bounds for a qubit measured in the computational basis and in
/// a basis rotated by `θ`, along one axis of the `(θ, λ)` plane. `fixed` is
/// the smaller eigenvalue in `theta` mode and the angle in `lambda` mode.
pub fn sweep_qubit(mode: SweepMode, fixed: f64, grid: Grid) -> Result<Vec<SweepRow>> {
    let points = grid.points()?;
    match mode {
        SweepMode::Theta => check_smaller_eigenvalue(fixed)?,
        SweepMode::Lambda => {
            check_smaller_eigenvalue(grid.min)?;
            check_smaller_eigenvalue(grid.max)?;
        }
    }
    points
        .into_iter()
        .map(|x| {
            let row = match mode {
                SweepMode::Theta => qubit_point(x, fixed)?,
                SweepMode::Lambda => qubit_point(fixed, x)?,
            };
            Ok(SweepRow { x, ..row })
        })
        .collect()
}

pub const SWEEP_HEADER: &str = "x,B_PRKZ,B_B,B_MU,B_directsum";

pub fn sweep_csv(rows: &[SweepRow], base: Base) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.x,
            base.scale(r.prkz),
            base.scale(r.berta),
            base.scale(r.maassen_uffink),
            base.scale(r.direct_sum),
        ];
        out.push_str(&cols.map(format_g12).join(","));
        out.push('\n');
    }
    out
}

/// One point of the ordered qutrit simplex. Bounds in nats, clamped at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexRow {
    pub lambda: [f64; 3],
    pub prkz: f64,
    pub berta: f64,
    pub direct_sum: f64,
}

/// Evaluates the bounds on the barycentric grid `(i, j, k) / resolution`
/// restricted to `i ≥ j ≥ k`.
pub fn simplex_qutrit(u: &ComplexMatrix, resolution: usize) -> Result<Vec<SimplexRow>> {
    if u.rows() != 3 || u.cols() != 3 {
        return Err(Error::InvalidArguments(format!(
            "simplex needs a 3x3 unitary, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    if resolution < 2 {
        return Err(Error::InvalidArguments(format!(
            "resolution {resolution} < 2"
        )));
    }
    let s = sub_coefficients_with_limit(u, 3)?;
    let r = resolution as f64;
    let mut rows = Vec::new();
    for i in (0..=resolution).rev() {
        for j in (0..=resolution - i).rev() {
            let k = resolution - i - j;
            if i < j || j < k {
                continue;
            }
            let values = [i as f64 / r, j as f64 / r, k as f64 / r];
            rows.push(simplex_point(values, &s)?);
        }
    }
    Ok(rows)
}

fn simplex_point(values: [f64; 3], s: &SubCoefficients) -> Result<SimplexRow> {
    let lambda = Spectrum::new(values.to_vec())?;
    let b = comparison_bounds(&lambda, s, &[Baseline::Berta, Baseline::DirectSum]);
    Ok(SimplexRow {
        lambda: values,
        prkz: conditional_bound(&lambda, s),
        berta: b[0].value.expect("implemented"),
        direct_sum: b[1].value.expect("implemented"),
    })
}

pub const SIMPLEX_HEADER: &str = "λ1,λ2,λ3,B_PRKZ,B_B,B_directsum";

pub fn simplex_csv(rows: &[SimplexRow], base: Base) -> String {
    let mut out = String::from(SIMPLEX_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.lambda[0],
            r.lambda[1],
            r.lambda[2],
            base.scale(r.prkz),
            base.scale(r.berta),
            base.scale(r.direct_sum),
        ];
        out.push_str(&cols.map(format_g12).join(","));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// subcoeffs

#[derive(Clone, Debug, Serialize)]
pub struct SubcoeffReport {
    pub dimension: usize,
    pub s: Vec<f64>,
    pub c: f64,
    #[serde(rename = "W")]
    pub w: Vec<f64>,
    /// `−Σ W ln W`, in the requested base.
    pub entropy_w: f64,
    pub base: Base,
}

pub fn subcoeff_report(
    u: &ComplexMatrix,
    max_dimension: usize,
    base: Base,
) -> Result<SubcoeffReport> {
    let s = sub_coefficients_with_limit(u, max_dimension)?;
    let w = s.w_vector();
    Ok(SubcoeffReport {
        dimension: s.dim(),
        s: s.values().to_vec(),
        c: s.c(),
        entropy_w: base.scale(crate::majorize::tilde_entropy(&w)),
        w: w.into_values(),
        base,
    })
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Majorization,
    Lemma,
    Identities,
    Ladder,
    Entropic,
    Convexity,
    Qubit,
    /// Every suite above; `qubit` only when `n = 2`.
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub violations: u64,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

pub fn verify_suite(n: usize, trials: u64, seed: u64, suite: Suite) -> Result<VerifySummary> {
    if n > oracle::MAX_ORACLE_DIMENSION {
        return Err(Error::ResourceLimit {
            n,
            max: oracle::MAX_ORACLE_DIMENSION,
        });
    }
    let selected: Vec<Suite> = match suite {
        Suite::All => {
            let mut all = vec![
                Suite::Majorization,
                Suite::Lemma,
                Suite::Identities,
                Suite::Ladder,
                Suite::Entropic,
                Suite::Convexity,
            ];
            if n == 2 {
                all.push(Suite::Qubit);
            }
            all
        }
        one => vec![one],
    };
    let mut reports = Vec::with_capacity(selected.len());
    for s in selected {
        reports.push(match s {
            Suite::Majorization => oracle::verify_majorization(n, trials, seed)?,
            Suite::Lemma => oracle::verify_lemma(n, trials, seed)?,
            Suite::Identities => oracle::verify_identities_random(n, trials, seed)?,
            Suite::Ladder => oracle::verify_ladder_random(n, trials, seed)?,
            Suite::Entropic => oracle::verify_entropic_bounds(n, trials, seed)?,
            Suite::Convexity => {
                let mut r = oracle::verify_convexity(&haar_unitary(n, seed)?, trials, seed)?;
                r.seed = seed;
                r
            }
            Suite::Qubit => {
                if n != 2 {
                    return Err(Error::InvalidArguments(
                        "the qubit suite needs n = 2".into(),
                    ));
                }
                oracle::verify_qubit_extras(trials, seed)
            }
            Suite::All => unreachable!("expanded above"),
        });
    }
    let violations = reports.iter().map(|r| r.violations).sum();
    Ok(VerifySummary {
        suite,
        n,
        trials,
        seed,
        violations,
        passed: violations == 0,
        reports,
    })
}

// ---------------------------------------------------------------------------
// command line

#[derive(Debug, Parser)]
#[command(
    name = "majorant",
    version,
    about = "Majorization uncertainty bounds for two orthogonal measurements"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for random unitaries and verification trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Unit of reported entropies.
    #[arg(long, global = true, value_enum, default_value_t = Base::Nats)]
    pub base: Base,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an entropic lower bound for one unitary and spectrum.
    Bound {
        /// identity[:n], fourier[:n], hadamard2, o3, rotation:<θ>, haar:<n>, or a JSON file.
        #[arg(long)]
        unitary: String,
        /// Comma-separated eigenvalues of the state.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// shannon, renyi:<α> or tsallis:<α>.
        #[arg(long, default_value = "shannon")]
        entropy: String,
        /// Bound H(X|B) + H(Y|B) for a pure bipartite state with Schmidt vector λ.
        #[arg(long)]
        conditional: bool,
        /// Rescale a spectrum whose total is within 1e-6 of one.
        #[arg(long)]
        renormalize: bool,
    },
    /// Conditional bounds for a qubit along θ or along the smaller eigenvalue.
    SweepQubit {
        #[arg(long, value_enum)]
        mode: SweepMode,
        /// Smaller eigenvalue (theta mode) or angle (lambda mode); accepts pi/3 etc.
        #[arg(long)]
        fixed: String,
        /// Grid start [default: 0].
        #[arg(long)]
        min: Option<String>,
        /// Grid end [default: pi/2 in theta mode, 1/2 in lambda mode].
        #[arg(long)]
        max: Option<String>,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Conditional bounds over the ordered qutrit simplex.
    SimplexQutrit {
        #[arg(long, default_value = "o3")]
        unitary: String,
        #[arg(long, default_value_t = 50)]
        resolution: usize,
    },
    /// Print the coefficients s_k and the vector W of a unitary.
    Subcoeffs {
        #[arg(long)]
        unitary: String,
        /// Dimension for identity/fourier without an explicit size.
        #[arg(long)]
        dim: Option<usize>,
        /// Largest dimension to enumerate.
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dim: usize,
        /// Also write the resolved unitary as a JSON matrix.
        #[arg(long)]
        save_unitary: Option<PathBuf>,
    },
    /// Run randomized verification suites.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Result of a command: the text to emit and whether the claim held.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let Common { seed, base, .. } = cli.common;
    let done = |text: String| Ok(Outcome { text, ok: true });
    match &cli.command {
        Command::Bound {
            unitary,
            lambda,
            entropy,
            conditional,
            renormalize,
        } => {
            let lambda = parse_spectrum(lambda, *renormalize)?;
            let u = unitary
                .parse::<UnitarySpec>()?
                .resolve(Some(lambda.len()), seed)?;
            let report = bound_report(&u, &lambda, entropy.parse()?, *conditional, base)?;
            done(json(&report))
        }
        Command::SweepQubit {
            mode,
            fixed,
            min,
            max,
            steps,
        } => {
            let default_max = match mode {
                SweepMode::Theta => PI / 2.0,
                SweepMode::Lambda => 0.5,
            };
            let grid = Grid {
                min: min.as_deref().map(parse_real).transpose()?.unwrap_or(0.0),
                max: max
                    .as_deref()
                    .map(parse_real)
                    .transpose()?
                    .unwrap_or(default_max),
                steps: *steps,
            };
            let rows = sweep_qubit(*mode, parse_real(fixed)?, grid)?;
            done(sweep_csv(&rows, base))
        }
        Command::SimplexQutrit {
            unitary,
            resolution,
        } => {
            let u = unitary.parse::<UnitarySpec>()?.resolve(Some(3), seed)?;
            done(simplex_csv(&simplex_qutrit(&u, *resolution)?, base))
        }
        Command::Subcoeffs {
            unitary,
            dim,
            max_dim,
            save_unitary,
        } => {
            let u = unitary.parse::<UnitarySpec>()?.resolve(*dim, seed)?;
            if let Some(path) = save_unitary {
                write_matrix(path, &u)?;
            }
            done(json(&subcoeff_report(&u, *max_dim, base)?))
        }
        Command::Verify { n, trials, suite } => {
            let summary = verify_suite(*n, *trials, seed, *suite)?;
            Ok(Outcome {
                text: json(&summary),
                ok: summary.passed,
            })
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

/// Machine-readable error line written to stderr.
pub fn error_json(err: &Error) -> String {
    serde_json::to_string(&ErrorReport {
        error: ErrorBody {
            code: err.code(),
            message: err.to_string(),
        },
    })
    .expect("error serializes")
}

/// Exit status: success with no violations.
pub const EXIT_OK: i32 = 0;
/// Exit status: a verification suite found violations.
pub const EXIT_VIOLATIONS: i32 = 1;
/// Exit status: bad arguments, bad input or I/O failure.
pub const EXIT_ERROR: i32 = 2;

/// Parses `args` (including the program name), runs the command and writes
/// its output to `--out` or `stdout`. Errors go to `stderr` as one JSON line.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = execute(&cli).and_then(|outcome| {
        match &cli.common.out {
            Some(path) => std::fs::write(path, &outcome.text)?,
            None => stdout.write_all(outcome.text.as_bytes())?,
        }
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VIOLATIONS,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("majorant").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn format_g12_examples() {
        assert_eq!(format_g12(0.0), "0");
        assert_eq!(format_g12(1.0), "1");
        assert_eq!(format_g12(0.5), "0.5");
        assert_eq!(format_g12(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(format_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_g12(1e-7), "1e-07");
        assert_eq!(format_g12(1.5e12), "1.5e+12");
        assert_eq!(format_g12(-2.25), "-2.25");
        assert_eq!(format_g12(0.9999999999999), "1");
    }

    #[test]
    fn parse_real_accepts_pi_forms() {
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert_eq!(parse_real("pi/3").unwrap(), PI / 3.0);
        assert_eq!(parse_real("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_real("0.5*pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_real("π").unwrap(), PI);
        assert_eq!(parse_real("1/3").unwrap(), 1.0 / 3.0);
        assert!(parse_real("pi3").is_err());
        assert!(parse_real("x").is_err());
    }

    #[test]
    fn unitary_spec_parsing() {
        assert_eq!("o3".parse::<UnitarySpec>().unwrap(), UnitarySpec::O3);
        assert_eq!(
            "identity:4".parse::<UnitarySpec>().unwrap(),
            UnitarySpec::Identity(Some(4))
        );
        assert_eq!(
            "rotation:pi/8".parse::<UnitarySpec>().unwrap(),
            UnitarySpec::Rotation(PI / 8.0)
        );
        assert!("nonsense".parse::<UnitarySpec>().is_err());
        assert!(UnitarySpec::Identity(None).resolve(None, 0).is_err());
        assert_eq!(UnitarySpec::O3.resolve(None, 0).unwrap(), named::o3());
    }

    #[test]
    fn matrix_json_round_trip_is_bit_exact() {
        let u = haar_unitary(4, 99).unwrap();
        let back = matrix_from_json(&matrix_to_json(&u)).unwrap();
        for (a, b) in u.to_row_major().iter().zip(back.to_row_major()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        assert!(matrix_from_json("[[[1,0]],[[0,0],[1,0]]]").is_err());
        assert!(matrix_from_json("[]").is_err());
    }

    #[test]
    fn bound_examples() {
        let lambda = Spectrum::pure(2).unwrap();
        let r = bound_report(
            &named::hadamard2(),
            &lambda,
            EntropySelector::Shannon,
            false,
            Base::Nats,
        )
        .unwrap();
        assert_abs_diff_eq!(r.bound, 0.6047, epsilon = 1e-3);
        assert_eq!(r.baselines.len(), 5);
        assert_eq!(r.baselines[3].value, None);

        let lambda = Spectrum::new(vec![0.7, 0.3]).unwrap();
        let r = bound_report(
            &ComplexMatrix::identity(2),
            &lambda,
            EntropySelector::Shannon,
            true,
            Base::Nats,
        )
        .unwrap();
        assert!(r.bound.abs() < 1e-12);

        let r = bound_report(
            &named::o3(),
            &Spectrum::pure(3).unwrap(),
            EntropySelector::Shannon,
            false,
            Base::Bits,
        )
        .unwrap();
        assert_abs_diff_eq!(r.bound * LN_2, 0.476_664_517_507_629, epsilon = 1e-12);

        assert!(bound_report(
            &named::o3(),
            &lambda,
            EntropySelector::Shannon,
            false,
            Base::Nats
        )
        .is_err());
        let err = bound_report(
            &named::hadamard2(),
            &lambda,
            EntropySelector::Renyi(0.5),
            true,
            Base::Nats,
        );
        assert_eq!(err.unwrap_err().code(), "invalid_arguments");
    }

    #[test]
    fn sweep_examples() {
        let rows = sweep_qubit(
            SweepMode::Lambda,
            PI / 3.0,
            Grid {
                min: 0.0,
                max: 0.5,
                steps: 11,
            },
        )
        .unwrap();
        assert_eq!(rows.len(), 11);
        assert_abs_diff_eq!(rows[0].prkz, 0.393_873_007_585_169_6, epsilon = 1e-9);
        assert!(rows[10].prkz.abs() < 1e-12);

        let rows = sweep_qubit(
            SweepMode::Theta,
            1.0 / 3.0,
            Grid {
                min: 0.0,
                max: PI / 2.0,
                steps: 5,
            },
        )
        .unwrap();
        let first = rows[0];
        assert_eq!(
            [
                first.prkz,
                first.berta,
                first.maassen_uffink,
                first.direct_sum
            ],
            [0.0; 4]
        );

        let rows = sweep_qubit(
            SweepMode::Lambda,
            PI / 8.0,
            Grid {
                min: 0.0,
                max: 0.5,
                steps: 3,
            },
        )
        .unwrap();
        assert!(rows[2].prkz.abs() < 1e-12);

        assert!(sweep_qubit(
            SweepMode::Lambda,
            0.1,
            Grid {
                min: 0.0,
                max: 0.0,
                steps: 3
            }
        )
        .is_err());
        assert!(sweep_qubit(
            SweepMode::Lambda,
            0.1,
            Grid {
                min: 0.0,
                max: 0.6,
                steps: 3
            }
        )
        .is_err());
        assert!(sweep_qubit(
            SweepMode::Theta,
            0.7,
            Grid {
                min: 0.0,
                max: 1.0,
                steps: 3
            }
        )
        .is_err());
    }

    #[test]
    fn sweep_csv_shape_and_bits() {
        let rows = sweep_qubit(
            SweepMode::Lambda,
            PI / 4.0,
            Grid {
                min: 0.0,
                max: 0.5,
                steps: 3,
            },
        )
        .unwrap();
        let nats = sweep_csv(&rows, Base::Nats);
        let bits = sweep_csv(&rows, Base::Bits);
        assert_eq!(nats.lines().next().unwrap(), SWEEP_HEADER);
        assert_eq!(nats.lines().count(), 4);
        // H(W) = ln 2 nats = 1 bit for the Hadamard-like rotation at a pure state
        assert_eq!(bits.lines().nth(1).unwrap().split(',').nth(2).unwrap(), "1");
    }

    #[test]
    fn simplex_examples() {
        let rows = simplex_qutrit(&named::o3(), 6).unwrap();
        // partitions of 6 into at most three ordered parts
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0].lambda, [1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(rows[0].prkz, 0.476_664_517_507_629, epsilon = 1e-12);
        let centroid = rows.iter().find(|r| r.lambda == [2.0 / 6.0; 3]).unwrap();
        assert!(centroid.prkz.abs() < 1e-9);
        for r in &rows {
            assert!(r.prkz >= r.direct_sum - 1e-9);
        }
        assert_eq!(
            simplex_qutrit(&named::hadamard2(), 6).unwrap_err().code(),
            "invalid_arguments"
        );
        assert!(simplex_qutrit(&named::o3(), 1).is_err());
    }

    #[test]
    fn verify_examples() {
        let s = verify_suite(2, 1, 0, Suite::Majorization).unwrap();
        assert_eq!(s.reports[0].trials, 1);
        assert_eq!(s.violations, 0);
        assert_eq!(
            verify_suite(12, 1, 0, Suite::All).unwrap_err().code(),
            "resource_limit"
        );
        assert!(verify_suite(3, 1, 0, Suite::Qubit).is_err());
    }

    #[test]
    fn run_dispatch_and_errors() {
        let (code, out, _) = run_capture(&["bound", "--unitary", "hadamard2", "--lambda", "1,0"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_abs_diff_eq!(v["bound"].as_f64().unwrap(), 0.6047, epsilon = 1e-3);
        assert!(v["baselines"][3]["value"].is_null());

        let (code, _, err) =
            run_capture(&["bound", "--unitary", "hadamard2", "--lambda", "0.5,0.4"]);
        assert_eq!(code, EXIT_ERROR);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["code"], "invalid_input");

        let (code, _, err) = run_capture(&["verify", "--n", "12"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("resource_limit"));

        let (code, _, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, EXIT_ERROR);
    }
}
