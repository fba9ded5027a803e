//! Command-line surface and its translation into core types.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trispectra::solver::{DEFAULT_CONV_TOL, DEFAULT_PLATEAU_TOL, MIN_PLATEAU_POINTS};
use trispectra::{BasisSpec, KratzerParams, MorseParams, PotentialSpec, YukawaParams, YukawaVariant};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "trispectra", version, about = "Bound-state spectra of 2D radial Schrödinger problems in a Laguerre basis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies at one λ, or per level over a λ grid.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Lowest levels across a λ grid with plateau detection.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Recompute a reference table and diff it against the embedded values.
    #[command(args_override_self = true)]
    Table(TableArgs),
    /// Largest analytic-vs-quadrature matrix element deviation.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialKind {
    Yukawa,
    YukawaCos,
    YukawaSin,
    Kratzer,
    Morse,
}

impl PotentialKind {
    fn name(self) -> &'static str {
        match self {
            PotentialKind::Yukawa => "yukawa",
            PotentialKind::YukawaCos => "yukawa-cos",
            PotentialKind::YukawaSin => "yukawa-sin",
            PotentialKind::Kratzer => "kratzer",
            PotentialKind::Morse => "morse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
}

/// Potential family, its parameters, and the basis.
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialKind,
    /// Coupling strength (Yukawa, Kratzer); default 1.
    #[arg(long = "A")]
    pub a: Option<f64>,
    /// Kratzer inverse-square coefficient.
    #[arg(long = "B")]
    pub b: Option<f64>,
    /// Complex screening with μ_R = μ_I = δ (yukawa-cos, yukawa-sin).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Real screening (yukawa).
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "mu-re")]
    pub mu_re: Option<f64>,
    #[arg(long = "mu-im")]
    pub mu_im: Option<f64>,
    /// Morse depth.
    #[arg(long = "V0")]
    pub v0: Option<f64>,
    /// Morse equilibrium radius.
    #[arg(long)]
    pub r0: Option<f64>,
    /// Morse exponent.
    #[arg(long)]
    pub width: Option<f64>,
    /// Morse attraction factor; default 1.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub ell: i32,
    /// Basis size.
    #[arg(long = "N", default_value_t = 100)]
    pub size: usize,
}

/// A λ grid given either as a list or as min/max/step.
#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    #[arg(long = "lambda-min")]
    pub lambda_min: Option<f64>,
    #[arg(long = "lambda-max")]
    pub lambda_max: Option<f64>,
    #[arg(long = "lambda-step")]
    pub lambda_step: Option<f64>,
    /// Explicit comma-separated λ values.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub grid: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for the parallel build; machine parallelism when absent.
    #[arg(long)]
    pub threads: Option<usize>,
    /// File of key=value lines, keys as long flag names. Flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Basis scale. Without it, each level takes the lowest value over the grid.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Maximum number of bound levels reported.
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    /// A level whose change from N - N/10 to N exceeds this is marked `drift`.
    #[arg(long = "tol-conv", default_value_t = DEFAULT_CONV_TOL)]
    pub tol_conv: f64,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Print the effective configuration as key=value lines and exit.
    #[arg(long = "dump-config")]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Number of lowest levels traced.
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Relative spread allowed inside the plateau.
    #[arg(long = "tol-plateau", default_value_t = DEFAULT_PLATEAU_TOL)]
    pub tol_plateau: f64,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long = "dump-config")]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Table number.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub lambda: f64,
    /// Largest basis index compared; the basis has `limit + 1` functions and `--N` is ignored.
    #[arg(long, default_value_t = 60)]
    pub limit: usize,
    /// Minimum quadrature order.
    #[arg(long, default_value_t = trispectra::quadrature::DEFAULT_MIN_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long = "dump-config")]
    pub dump_config: bool,
}

/// Ordered `key=value` pairs.
pub type Pairs = Vec<(&'static str, String)>;

/// Shortest round-tripping decimal or scientific form of `v`.
pub fn fmt_num(v: f64) -> String {
    let (plain, sci) = (v.to_string(), format!("{v:e}"));
    if sci.len() < plain.len() {
        sci
    } else {
        plain
    }
}

fn push_opt(out: &mut Pairs, key: &'static str, v: Option<f64>) {
    if let Some(v) = v {
        out.push((key, fmt_num(v)));
    }
}

impl ProblemArgs {
    /// Validated potential. Parameters that the chosen family does not use are rejected.
    pub fn potential(&self) -> CliResult<PotentialSpec> {
        let kind = self.potential;
        let allowed: &[&str] = match kind {
            PotentialKind::Yukawa => &["A", "mu"],
            PotentialKind::YukawaCos | PotentialKind::YukawaSin => &["A", "delta", "mu-re", "mu-im"],
            PotentialKind::Kratzer => &["A", "B"],
            PotentialKind::Morse => &["V0", "r0", "width", "beta"],
        };
        let given = [
            ("A", self.a),
            ("B", self.b),
            ("delta", self.delta),
            ("mu", self.mu),
            ("mu-re", self.mu_re),
            ("mu-im", self.mu_im),
            ("V0", self.v0),
            ("r0", self.r0),
            ("width", self.width),
            ("beta", self.beta),
        ];
        if let Some((key, _)) = given.iter().find(|(k, v)| v.is_some() && !allowed.contains(k)) {
            return Err(CliError::config(format!("--{key} does not apply to potential {}", kind.name())));
        }
        let require =
            |key: &str, v: Option<f64>| v.ok_or_else(|| CliError::config(format!("potential {} needs --{key}", kind.name())));
        let strength = self.a.unwrap_or(1.0);
        let spec = match kind {
            PotentialKind::Yukawa => {
                PotentialSpec::Yukawa(YukawaParams::classical(strength, require("mu", self.mu)?).map_err(CliError::invalid)?)
            }
            PotentialKind::YukawaCos | PotentialKind::YukawaSin => {
                let variant = if kind == PotentialKind::YukawaCos { YukawaVariant::Cosine } else { YukawaVariant::Sine };
                let (re, im) = match (self.delta, self.mu_re, self.mu_im) {
                    (Some(d), None, None) => (d, d),
                    (None, Some(re), Some(im)) => (re, im),
                    _ => return Err(CliError::config("give either --delta or both --mu-re and --mu-im")),
                };
                PotentialSpec::Yukawa(YukawaParams::new(strength, re, im, variant).map_err(CliError::invalid)?)
            }
            PotentialKind::Kratzer => {
                PotentialSpec::Kratzer(KratzerParams::new(strength, require("B", self.b)?).map_err(CliError::invalid)?)
            }
            PotentialKind::Morse => PotentialSpec::Morse(
                MorseParams::new(
                    require("V0", self.v0)?,
                    require("r0", self.r0)?,
                    require("width", self.width)?,
                    self.beta.unwrap_or(1.0),
                )
                .map_err(CliError::invalid)?,
            ),
        };
        Ok(spec)
    }

    /// Basis at scale `lambda`, checked against the potential.
    pub fn basis(&self, potential: &PotentialSpec, lambda: f64) -> CliResult<BasisSpec> {
        let basis = BasisSpec::new(lambda, self.ell, self.size).map_err(CliError::invalid)?;
        potential.check_basis(&basis).map_err(CliError::invalid)?;
        Ok(basis)
    }

    pub fn pairs(&self) -> Pairs {
        let mut out = vec![("potential", self.potential.name().to_string())];
        let uses_strength = self.potential != PotentialKind::Morse;
        if uses_strength {
            out.push(("A", fmt_num(self.a.unwrap_or(1.0))));
        }
        push_opt(&mut out, "B", self.b);
        push_opt(&mut out, "delta", self.delta);
        push_opt(&mut out, "mu", self.mu);
        push_opt(&mut out, "mu-re", self.mu_re);
        push_opt(&mut out, "mu-im", self.mu_im);
        push_opt(&mut out, "V0", self.v0);
        push_opt(&mut out, "r0", self.r0);
        push_opt(&mut out, "width", self.width);
        if self.potential == PotentialKind::Morse {
            out.push(("beta", fmt_num(self.beta.unwrap_or(1.0))));
        }
        out.push(("ell", self.ell.to_string()));
        out.push(("N", self.size.to_string()));
        out
    }
}

impl GridArgs {
    /// The grid, or `None` when no grid option was given.
    pub fn resolve(&self) -> CliResult<Option<Vec<f64>>> {
        let range = (self.lambda_min, self.lambda_max, self.lambda_step);
        if !self.grid.is_empty() {
            if range != (None, None, None) {
                return Err(CliError::config("--grid cannot be combined with --lambda-min/--lambda-max/--lambda-step"));
            }
            return Ok(Some(self.grid.clone()));
        }
        match range {
            (None, None, None) => Ok(None),
            (Some(lo), Some(hi), Some(step)) => {
                if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
                    return Err(CliError::config(format!("bad λ range {lo}..{hi} step {step}")));
                }
                Ok(Some(lambda_range(lo, hi, step)))
            }
            _ => Err(CliError::config("--lambda-min, --lambda-max and --lambda-step go together")),
        }
    }

    pub fn pairs(&self) -> Pairs {
        let mut out = Pairs::new();
        push_opt(&mut out, "lambda-min", self.lambda_min);
        push_opt(&mut out, "lambda-max", self.lambda_max);
        push_opt(&mut out, "lambda-step", self.lambda_step);
        if !self.grid.is_empty() {
            out.push(("grid", self.grid.iter().map(|&v| fmt_num(v)).collect::<Vec<_>>().join(",")));
        }
        out
    }
}

/// `lo, lo + step, …` up to `hi` inclusive. Points are rounded to 1e-12 so
/// that e.g. `0.3 + 7·0.1` lands on 1.
pub fn lambda_range(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12).collect()
}

/// Checks a grid for a λ scan: enough points, positive and ascending.
pub fn check_scan_grid(grid: &[f64]) -> CliResult<()> {
    if grid.len() < MIN_PLATEAU_POINTS {
        return Err(CliError::config(format!("λ grid has {} points, a scan needs at least {MIN_PLATEAU_POINTS}", grid.len())));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CliError::config("λ grid must be strictly ascending"));
    }
    Ok(())
}

impl OutputArgs {
    /// Keys that do not affect results; excluded from the CSV header echo.
    pub fn pairs(&self) -> Pairs {
        let mut out = Pairs::new();
        if let Some(p) = &self.out {
            out.push(("out", p.display().to_string()));
        }
        out.push(("format", "csv".to_string()));
        if let Some(t) = self.threads {
            out.push(("threads", t.to_string()));
        }
        out
    }
}

impl SolveArgs {
    pub fn pairs(&self) -> Pairs {
        let mut out = self.problem.pairs();
        push_opt(&mut out, "lambda", self.lambda);
        out.extend(self.grid.pairs());
        out.push(("levels", self.levels.to_string()));
        out.push(("tol-conv", fmt_num(self.tol_conv)));
        out
    }
}

impl ScanArgs {
    pub fn pairs(&self) -> Pairs {
        let mut out = self.problem.pairs();
        out.extend(self.grid.pairs());
        out.push(("levels", self.levels.to_string()));
        out.push(("tol-plateau", fmt_num(self.tol_plateau)));
        out
    }
}

impl ValidateArgs {
    pub fn pairs(&self) -> Pairs {
        // The basis size is `limit + 1`; `N` is not used.
        let mut out: Pairs = self.problem.pairs().into_iter().filter(|(k, _)| *k != "N").collect();
        out.push(("lambda", fmt_num(self.lambda)));
        out.push(("limit", self.limit.to_string()));
        out.push(("order", self.order.to_string()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
        GridArgs { lambda_min: Some(lo), lambda_max: Some(hi), lambda_step: Some(step), grid: vec![] }.resolve().unwrap().unwrap()
    }

    #[test]
    fn range_grid_hits_decimal_points() {
        let g = grid(0.3, 3.0, 0.1);
        assert_eq!(g.len(), 28);
        assert_eq!(g[7], 1.0);
        assert_eq!(*g.last().unwrap(), 3.0);
        assert_eq!(grid(1.0, 5.0, 0.5).len(), 9);
    }

    #[test]
    fn numbers_round_trip_in_short_form() {
        assert_eq!(fmt_num(1e-12), "1e-12");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-10.0), "-10");
        for v in [0.1 + 0.2, 1.0 / 3.0, 6.02e23, 1e-300] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn partial_range_rejected() {
        let g = GridArgs { lambda_min: Some(1.0), ..Default::default() };
        assert!(g.resolve().is_err());
    }

    #[test]
    fn scan_grid_checks() {
        assert!(check_scan_grid(&[1.0, 2.0]).is_err());
        assert!(check_scan_grid(&[1.0, 2.0, 3.0, 3.0, 4.0]).is_err());
        assert!(check_scan_grid(&[1.0, 2.0, 3.0, 4.0, 5.0]).is_ok());
    }
}
