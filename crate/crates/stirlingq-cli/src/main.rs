//! Command-line surface for the quantum Stirling engine library.
//!
//! Subcommands: `cycle` (one cycle evaluation), `sweep` (1-D parameter scan
//! to CSV), `optimize` (efficiency/work maximum over the bath ratio),
//! `table1`/`table2` (maximum-efficiency tables for the oscillator and the
//! box), and `figure` (per-figure curve data). All output is CSV on stdout
//! or to `--out`.
//!
//! Exit codes: 0 success, 2 usage error, 3 numeric or convergence failure.

mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stirlingq::{
    carnot, maximize_efficiency, maximize_work, run_cycle, sweep, CycleInput, Grid, Medium,
    Quantity, SeriesControl, SweepParam, SweepSpec,
};

use output::{Cell, CsvTable};

#[derive(Parser)]
#[command(
    name = "stirlingq",
    version,
    about = "Quantum Stirling heat engine: cycles, sweeps, optima and table/figure data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MediumArgs {
    /// Working medium: harmonic oscillator (ho) or particle in a box (pib)
    #[arg(long, value_parser = ["ho", "pib"])]
    medium: String,

    /// Reduced oscillator frequency ħω/(k_B·T_c); ho only
    #[arg(long)]
    u: Option<f64>,

    /// Reduced box half-length a/λ; pib only
    #[arg(long)]
    ell: Option<f64>,

    /// Number of inserted barriers (ho supports exactly 1)
    #[arg(long, default_value_t = 1)]
    barriers: u32,

    /// Compartment ratio d = x/y for an off-centre barrier; pib only
    #[arg(long, default_value_t = 1.0)]
    d: f64,
}

#[derive(Args)]
struct SeriesArgs {
    /// Relative truncation tolerance for series summation
    #[arg(long)]
    tol: Option<f64>,

    /// Term cap for series summation; the STIRLINGQ_MAX_TERMS environment
    /// variable overrides the default when this flag is absent
    #[arg(long)]
    max_terms: Option<usize>,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one full cycle at a given bath-temperature ratio
    Cycle {
        #[command(flatten)]
        medium: MediumArgs,
        /// Bath-temperature ratio T_h/T_c (at least 1)
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sweep one parameter and tabulate cycle quantities
    Sweep {
        #[command(flatten)]
        medium: MediumArgs,
        /// Fixed bath-temperature ratio (forbidden when sweeping r itself)
        #[arg(long)]
        r: Option<f64>,
        /// Parameter to sweep: r, u, ell, B or d
        #[arg(long = "sweep")]
        param: String,
        /// Lower end of the sweep grid
        #[arg(long)]
        from: f64,
        /// Upper end of the sweep grid
        #[arg(long)]
        to: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Geometric instead of linear spacing
        #[arg(long)]
        log: bool,
        /// Comma-separated quantities (default W_net,eta); any of
        /// W_net,eta,eta_over_carnot,Q12,Q23,Q34,Q41,Q_in
        #[arg(long, value_delimiter = ',')]
        quantities: Vec<String>,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Maximize efficiency or net work over the bath-temperature ratio
    Optimize {
        #[command(flatten)]
        medium: MediumArgs,
        /// Quantity to maximize
        #[arg(long, value_parser = ["efficiency", "work"], default_value = "efficiency")]
        target: String,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Regenerate the oscillator maximum-efficiency table
    Table1 {
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Regenerate the particle-in-a-box maximum-efficiency table
    Table2 {
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit the data behind one figure (2..=10)
    Figure {
        /// Figure number
        n: u32,
        /// Points per sweep grid
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Barrier counts for figure 8 (comma separated)
        #[arg(long, value_delimiter = ',')]
        barriers_set: Option<Vec<u32>>,
        /// Compartment ratios for figure 9 (comma separated)
        #[arg(long, value_delimiter = ',')]
        d_set: Option<Vec<f64>>,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

enum AppError {
    Usage(String),
    Numeric(String),
    Io(std::io::Error),
}

impl From<stirlingq::Error> for AppError {
    fn from(e: stirlingq::Error) -> Self {
        match e {
            stirlingq::Error::Config(msg) => AppError::Usage(msg),
            other => AppError::Numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(AppError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Cycle {
            medium,
            r,
            series,
            out,
        } => {
            let table = cmd_cycle(&medium.build()?, r, &series.control()?)?;
            Ok(table.write(&out.out)?)
        }
        Command::Sweep {
            medium,
            r,
            param,
            from,
            to,
            points,
            log,
            quantities,
            series,
            out,
        } => {
            let table = cmd_sweep(
                &medium,
                r,
                &param,
                from,
                to,
                points,
                log,
                &quantities,
                &series.control()?,
            )?;
            Ok(table.write(&out.out)?)
        }
        Command::Optimize {
            medium,
            target,
            series,
            out,
        } => {
            let table = cmd_optimize(&medium.build()?, &target, &series.control()?)?;
            Ok(table.write(&out.out)?)
        }
        Command::Table1 { series, out } => {
            let table = cmd_table1(&series.control()?)?;
            Ok(table.write(&out.out)?)
        }
        Command::Table2 { series, out } => {
            let table = cmd_table2(&series.control()?)?;
            Ok(table.write(&out.out)?)
        }
        Command::Figure {
            n,
            points,
            barriers_set,
            d_set,
            series,
            out,
        } => {
            if points < 2 {
                return Err(usage(format!("--points must be at least 2, got {points}")));
            }
            let barrier_set = barriers_set.unwrap_or_else(|| figures::DEFAULT_BARRIER_SET.to_vec());
            let d_set = d_set.unwrap_or_else(|| figures::DEFAULT_D_SET.to_vec());
            let table = figures::figure_table(n, points, &barrier_set, &d_set, &series.control()?)?;
            Ok(table.write(&out.out)?)
        }
    }
}

impl MediumArgs {
    fn build(&self) -> Result<Medium, AppError> {
        match self.medium.as_str() {
            "ho" => {
                if self.ell.is_some() {
                    return Err(usage("--ell applies to --medium pib"));
                }
                if self.d != 1.0 {
                    return Err(usage("--d applies to --medium pib"));
                }
                let u = self.u.ok_or_else(|| usage("--medium ho requires --u"))?;
                Ok(Medium::harmonic_oscillator(u, self.barriers)?)
            }
            "pib" => {
                if self.u.is_some() {
                    return Err(usage("--u applies to --medium ho"));
                }
                let ell = self
                    .ell
                    .ok_or_else(|| usage("--medium pib requires --ell"))?;
                Ok(Medium::particle_in_box(ell, self.barriers, self.d)?)
            }
            other => Err(usage(format!("unknown medium {other}"))),
        }
    }

    /// Template for sweeps: the swept field may be omitted on the command
    /// line, in which case the grid start stands in for it.
    fn build_template(&self, param: SweepParam, from: f64) -> Result<Medium, AppError> {
        let mut args = MediumArgs {
            medium: self.medium.clone(),
            u: self.u,
            ell: self.ell,
            barriers: self.barriers,
            d: self.d,
        };
        match param {
            SweepParam::Frequency if args.u.is_none() => args.u = Some(from),
            SweepParam::BoxLength if args.ell.is_none() => args.ell = Some(from),
            _ => {}
        }
        args.build()
    }
}

impl SeriesArgs {
    fn control(&self) -> Result<SeriesControl, AppError> {
        let rel_tol = self.tol.unwrap_or(SeriesControl::DEFAULT_REL_TOL);
        let max_terms = match self.max_terms {
            Some(m) => m,
            None => match std::env::var("STIRLINGQ_MAX_TERMS") {
                Ok(v) => v.trim().parse().map_err(|_| {
                    usage(format!(
                        "STIRLINGQ_MAX_TERMS must be a positive integer, got {v:?}"
                    ))
                })?,
                Err(_) => SeriesControl::DEFAULT_MAX_TERMS,
            },
        };
        Ok(SeriesControl::new(rel_tol, max_terms)?)
    }
}

fn cmd_cycle(medium: &Medium, r: f64, ctrl: &SeriesControl) -> Result<CsvTable, AppError> {
    let input = CycleInput::new(*medium, r, *ctrl)?;
    let c = run_cycle(&input)?;
    let mut t = CsvTable::new(
        ["Q12", "Q23", "Q34", "Q41", "W_net", "Q_in", "eta", "engine_regime"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    t.push(vec![
        Cell::Num(c.q12),
        Cell::Num(c.q23),
        Cell::Num(c.q34),
        Cell::Num(c.q41),
        Cell::Num(c.w_net),
        Cell::Num(c.q_in),
        Cell::opt(c.efficiency),
        Cell::Flag(c.engine_regime),
    ]);
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    medium_args: &MediumArgs,
    r: Option<f64>,
    param: &str,
    from: f64,
    to: f64,
    points: usize,
    log: bool,
    quantity_names: &[String],
    ctrl: &SeriesControl,
) -> Result<CsvTable, AppError> {
    let param = SweepParam::parse(param).ok_or_else(|| {
        usage(format!(
            "unknown sweep parameter {param:?} (use r, u, ell, B or d)"
        ))
    })?;

    let temperature_ratio = if param == SweepParam::TemperatureRatio {
        if r.is_some() {
            return Err(usage("--r conflicts with --sweep r"));
        }
        1.0
    } else {
        r.ok_or_else(|| usage("--r is required unless sweeping r"))?
    };

    let quantities: Vec<Quantity> = if quantity_names.is_empty() {
        vec![Quantity::WNet, Quantity::Eta]
    } else {
        quantity_names
            .iter()
            .map(|name| {
                Quantity::parse(name).ok_or_else(|| usage(format!("unknown quantity {name:?}")))
            })
            .collect::<Result<_, _>>()?
    };

    let grid = if log {
        Grid::Geometric {
            min: from,
            max: to,
            count: points,
        }
    } else {
        Grid::Linear {
            min: from,
            max: to,
            count: points,
        }
    };

    let spec = SweepSpec {
        medium: medium_args.build_template(param, from)?,
        temperature_ratio,
        param,
        grid,
        quantities: quantities.clone(),
    };
    let rows = sweep(&spec, ctrl)?;

    let mut header = vec![param.name().to_string()];
    header.extend(quantities.iter().map(|q| q.name().to_string()));
    header.push("engine_regime".to_string());
    let mut t = CsvTable::new(header);
    for row in rows {
        let mut cells = vec![Cell::Num(row.value)];
        cells.extend(row.quantities.iter().map(|q| Cell::opt(*q)));
        cells.push(Cell::Flag(row.engine_regime));
        t.push(cells);
    }
    Ok(t)
}

fn cmd_optimize(medium: &Medium, target: &str, ctrl: &SeriesControl) -> Result<CsvTable, AppError> {
    let result = match target {
        "efficiency" => maximize_efficiency(medium, ctrl)?,
        "work" => maximize_work(medium, ctrl)?,
        other => return Err(usage(format!("unknown optimize target {other:?}"))),
    };
    let mut t = CsvTable::new(
        ["r_star", "value", "bracket_lo", "bracket_hi", "iterations"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    t.push(vec![
        Cell::Num(result.r_star),
        Cell::Num(result.value),
        Cell::Num(result.bracket.0),
        Cell::Num(result.bracket.1),
        Cell::Int(result.iterations as u64),
    ]);
    Ok(t)
}

fn cmd_table1(ctrl: &SeriesControl) -> Result<CsvTable, AppError> {
    let mut t = CsvTable::new(
        ["u", "r_star", "eta_max", "eta_carnot"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    for u in [5.0, 10.0, 15.0, 50.0, 150.0, 350.0] {
        let medium = Medium::harmonic_oscillator(u, 1)?;
        let opt = maximize_efficiency(&medium, ctrl)
            .map_err(|e| AppError::Numeric(format!("table1 row u={u}: {e}")))?;
        t.push(vec![
            Cell::Num(u),
            Cell::Num(opt.r_star),
            Cell::Num(opt.value),
            Cell::Num(carnot(opt.r_star)),
        ]);
    }
    Ok(t)
}

fn cmd_table2(ctrl: &SeriesControl) -> Result<CsvTable, AppError> {
    let mut t = CsvTable::new(
        ["ell", "r_star", "eta_max", "eta_carnot"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    for denom in [3.0, 4.0, 5.0, 10.0, 20.0] {
        let ell = 1.0 / denom;
        let medium = Medium::particle_in_box(ell, 1, 1.0)?;
        let opt = maximize_efficiency(&medium, ctrl)
            .map_err(|e| AppError::Numeric(format!("table2 row ell=1/{denom}: {e}")))?;
        t.push(vec![
            Cell::Num(ell),
            Cell::Num(opt.r_star),
            Cell::Num(opt.value),
            Cell::Num(carnot(opt.r_star)),
        ]);
    }
    Ok(t)
}
