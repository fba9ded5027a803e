use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use trispectra::solver::{bound_states, converge_in_n, lambda_scan, variational_levels, SpectrumResult, ZERO_BAND};
use trispectra::{BasisSpec, KratzerParams, MorseParams, PotentialSpec, YukawaParams};

use crate::args::{check_scan_grid, fmt_num, lambda_range, Pairs, ScanArgs, SolveArgs, TableArgs, ValidateArgs};
use crate::error::{CliError, CliResult};
use crate::golden;

/// Validation threshold for `validate`.
pub const VALIDATE_TOL: f64 = 1e-11;

/// Command output plus an optional regression diagnostic (exit 4).
#[derive(Debug, Default)]
pub struct Report {
    pub csv: String,
    pub regression: Option<String>,
}

fn header(command: &str, pairs: &Pairs) -> String {
    let echo: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# trispectra {command} {}\n", echo.join(" "))
}

fn energy(e: f64) -> String {
    format!("{e:.14e}")
}

/// Tail-guard and N-convergence status of one level.
fn level_status(r: &SpectrumResult, level: usize, tol_conv: f64) -> CliResult<&'static str> {
    if r.unconverged.contains(&level) {
        return Ok("tail");
    }
    let n = r.basis.size();
    let coarse = n - (n / 10).max(1);
    if coarse == 0 {
        return Ok("ok");
    }
    let table = converge_in_n(&r.potential, &r.basis, &[coarse, n], level + 1, tol_conv)?;
    let (a, b) = (table.traces[0].get(level), table.traces[1].get(level));
    Ok(match (a, b) {
        (Some(a), Some(b)) if (a - b).abs() <= tol_conv => "ok",
        _ => "drift",
    })
}

pub fn solve(args: &SolveArgs) -> CliResult<Report> {
    let potential = args.problem.potential()?;
    let grid = args.grid.resolve()?;
    if args.levels == 0 {
        return Err(CliError::config("--levels must be >= 1"));
    }
    let mut csv = header("solve", &args.pairs());
    csv.push_str("level,energy,N,lambda,status\n");
    match (args.lambda, grid) {
        (Some(_), Some(_)) => return Err(CliError::config("give either --lambda or a λ grid, not both")),
        (None, None) => {
            return Err(CliError::config("need --lambda or a λ grid (--grid or --lambda-min/--lambda-max/--lambda-step)"))
        }
        (Some(lambda), None) => {
            let basis = args.problem.basis(&potential, lambda)?;
            let r = bound_states(&potential, &basis)?;
            if !r.unresolved.is_empty() {
                log::warn!("{} eigenvalue(s) within {ZERO_BAND:e} of zero are not reported", r.unresolved.len());
            }
            for (i, &e) in r.bound.iter().take(args.levels).enumerate() {
                let status = level_status(&r, i, args.tol_conv)?;
                writeln!(csv, "{i},{},{},{},{status}", energy(e), basis.size(), fmt_num(lambda)).expect("string write");
            }
        }
        (None, Some(grid)) => {
            let mut template = None;
            for &l in &grid {
                template = Some(args.problem.basis(&potential, l)?);
            }
            let template = template.ok_or_else(|| CliError::config("λ grid is empty"))?;
            let levels = variational_levels(&potential, &template, &grid, args.levels)?;
            let mut cache: BTreeMap<u64, SpectrumResult> = BTreeMap::new();
            for (i, &(lambda, e)) in levels.iter().enumerate() {
                if !(e < -ZERO_BAND) {
                    break;
                }
                let spectrum = match cache.entry(lambda.to_bits()) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(v) => v.insert(bound_states(&potential, &template.with_lambda(lambda)?)?),
                };
                let status = level_status(spectrum, i, args.tol_conv)?;
                writeln!(csv, "{i},{},{},{},{status}", energy(e), template.size(), fmt_num(lambda)).expect("string write");
            }
        }
    }
    Ok(Report { csv, regression: None })
}

pub fn scan(args: &ScanArgs) -> CliResult<Report> {
    let potential = args.problem.potential()?;
    let grid = args.grid.resolve()?.ok_or_else(|| CliError::config("scan needs a λ grid"))?;
    check_scan_grid(&grid)?;
    if args.levels == 0 {
        return Err(CliError::config("--levels must be >= 1"));
    }
    if !(args.tol_plateau > 0.0) {
        return Err(CliError::config("--tol-plateau must be > 0"));
    }
    let template = args.problem.basis(&potential, grid[0])?;
    for &l in &grid[1..] {
        args.problem.basis(&potential, l)?;
    }
    let report = lambda_scan(&potential, &template, &grid, args.levels, args.tol_plateau)?;
    let mut csv = header("scan", &args.pairs());
    csv.push_str("lambda,level,energy\n");
    for (lambda, trace) in report.grid.iter().zip(&report.traces) {
        for (level, &e) in trace.iter().enumerate() {
            writeln!(csv, "{lambda},{level},{}", energy(e)).expect("string write");
        }
    }
    match (report.bounds(), report.max_spread()) {
        (Some((lo, hi)), Some(spread)) => {
            writeln!(csv, "# plateau lambda=[{lo},{hi}] points={} spread={spread:.3e} tol={:e}", report.width(), report.tol)
        }
        _ => writeln!(csv, "# plateau none tol={:e}", report.tol),
    }
    .expect("string write");
    Ok(Report { csv, regression: None })
}

pub fn validate(args: &ValidateArgs) -> CliResult<Report> {
    let potential = args.problem.potential()?;
    let basis = BasisSpec::new(args.lambda, args.problem.ell, args.limit + 1).map_err(CliError::invalid)?;
    potential.check_basis(&basis).map_err(CliError::invalid)?;
    let dev = potential.oracle_deviation(&basis, args.order)?;
    let mut csv = header("validate", &args.pairs());
    csv.push_str("max_rel,n,m,analytic,quadrature,floor,order\n");
    writeln!(
        csv,
        "{:.3e},{},{},{:.16e},{:.16e},{:e},{}",
        dev.max_rel,
        dev.at.0,
        dev.at.1,
        dev.analytic + 0.0,
        dev.quadrature + 0.0,
        dev.floor,
        dev.order
    )
    .expect("string write");
    let regression = (!(dev.max_rel <= VALIDATE_TOL))
        .then(|| format!("max relative deviation {:.3e} at ({}, {}) exceeds {VALIDATE_TOL:e}", dev.max_rel, dev.at.0, dev.at.1));
    Ok(Report { csv, regression })
}

/// One reproduced table cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub case: String,
    pub level: usize,
    pub lambda: f64,
    pub minus_e: f64,
    pub golden: f64,
    pub tol: f64,
    /// A cell outside tolerance that is reported but does not fail the table.
    pub flagged_only: bool,
}

impl Cell {
    pub fn diff(&self) -> f64 {
        (self.minus_e - self.golden).abs()
    }

    pub fn status(&self) -> &'static str {
        match (self.diff() <= self.tol, self.flagged_only) {
            (true, _) => "pass",
            (false, true) => "flagged",
            (false, false) => "fail",
        }
    }
}

/// λ grid, basis size and description of each table's computation.
pub struct TableSetup {
    pub grid: Vec<f64>,
    pub size: usize,
    pub golden: &'static str,
}

pub fn table_setup(id: u8) -> TableSetup {
    match id {
        1 => TableSetup { grid: lambda_range(1.0, 5.0, 0.5), size: 100, golden: "analytic" },
        2 => TableSetup { grid: lambda_range(0.3, 3.0, 0.1), size: 100, golden: "exact" },
        _ => TableSetup { grid: lambda_range(10.0, 15.0, 0.5), size: 70, golden: "analytic" },
    }
}

fn cells_for(
    potential: PotentialSpec,
    ell: i32,
    setup: &TableSetup,
    golden: &[f64],
    case: &str,
    tol: impl Fn(usize) -> f64,
    flag: impl Fn(usize) -> bool,
) -> CliResult<Vec<Cell>> {
    let template = BasisSpec::new(setup.grid[0], ell, setup.size)?;
    let levels = variational_levels(&potential, &template, &setup.grid, golden.len())?;
    if levels.len() < golden.len() {
        return Err(CliError::Numerical(trispectra::Error::Dimension(format!(
            "{case}: basis yields {} levels, table has {}",
            levels.len(),
            golden.len()
        ))));
    }
    Ok(golden
        .iter()
        .zip(&levels)
        .enumerate()
        .map(|(level, (&g, &(lambda, e)))| Cell {
            case: case.to_string(),
            level,
            lambda,
            minus_e: -e,
            golden: g,
            tol: tol(level),
            flagged_only: flag(level),
        })
        .collect())
}

/// Recomputes every cell of table `id` (1, 2 or 3).
pub fn table_cells(id: u8) -> CliResult<Vec<Cell>> {
    let setup = table_setup(id);
    let mut cells = Vec::new();
    match id {
        1 => {
            for (delta, analytic, _) in golden::TABLE1 {
                let d = golden::value(delta);
                let tol = if d <= 2.0 { 1e-9 } else { 1e-6 };
                let p = PotentialSpec::Yukawa(YukawaParams::cosine(1.0, d)?);
                cells.extend(cells_for(p, 0, &setup, &golden::values(analytic), &format!("delta={delta}"), |_| tol, |_| false)?);
            }
        }
        2 => {
            let mut seen: Vec<&str> = Vec::new();
            for (b, _, _) in golden::TABLE2 {
                if seen.contains(b) {
                    continue;
                }
                seen.push(b);
                let bval = golden::value(b);
                let p = PotentialSpec::Kratzer(KratzerParams::new(1.0, bval)?);
                for (j, &ell) in golden::TABLE2_ELLS.iter().enumerate() {
                    let exact: Vec<f64> =
                        golden::TABLE2.iter().filter(|(bb, _, _)| bb == b).map(|(_, _, cols)| golden::value(cols[j].0)).collect();
                    // Small-B, high-n cells converge slowly in N; report them without failing.
                    let flag = |level: usize| bval < 1.0 && level >= 3;
                    cells.extend(cells_for(p, ell, &setup, &exact, &format!("B={b} ell={ell}"), |_| 1e-9, flag)?);
                }
            }
        }
        _ => {
            for row in golden::TABLE3 {
                for (beta, analytic, _) in &row.columns {
                    let p = PotentialSpec::Morse(MorseParams::new(
                        golden::value(row.depth),
                        golden::value(row.r0),
                        golden::value(row.width),
                        golden::value(beta),
                    )?);
                    let case = format!("ell={} r0={} width={} V0={} beta={beta}", row.ell, row.r0, row.width, row.depth);
                    cells.extend(cells_for(p, row.ell, &setup, &golden::values(analytic), &case, |_| 1e-8, |_| false)?);
                }
            }
        }
    }
    Ok(cells)
}

pub fn table(args: &TableArgs) -> CliResult<Report> {
    let setup = table_setup(args.id);
    let cells = table_cells(args.id)?;
    let (lo, hi) = (setup.grid[0], setup.grid[setup.grid.len() - 1]);
    let mut csv = format!(
        "# trispectra table {} N={} lambda=per-level-min over [{lo},{hi}] ({} points) golden={}\n",
        args.id,
        setup.size,
        setup.grid.len(),
        setup.golden
    );
    csv.push_str("case,level,lambda,minus_e,golden,diff,tol,status\n");
    for c in &cells {
        writeln!(
            csv,
            "{},{},{},{},{:e},{:.3e},{:e},{}",
            c.case,
            c.level,
            c.lambda,
            energy(c.minus_e),
            c.golden,
            c.diff(),
            c.tol,
            c.status()
        )
        .expect("string write");
    }
    let failed: Vec<&Cell> = cells.iter().filter(|c| c.status() == "fail").collect();
    let regression = (!failed.is_empty()).then(|| {
        let worst = failed.iter().max_by(|a, b| a.diff().total_cmp(&b.diff())).expect("non-empty");
        format!(
            "{} cell(s) outside tolerance; worst {} level {} diff {:.3e} > {:e}",
            failed.len(),
            worst.case,
            worst.level,
            worst.diff(),
            worst.tol
        )
    });
    Ok(Report { csv, regression })
}
