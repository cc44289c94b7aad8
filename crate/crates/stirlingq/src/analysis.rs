//! Limits, optima and parameter sweeps over the cycle.
//!
//! The optimizers share one strategy: a coarse scan brackets the extremum,
//! golden section refines it. Temperature-ratio scans run on a geometric
//! grid over [1 + 10⁻⁶, 10⁴], which resolves optima from r* ≈ 1.5 up to the
//! r* ≈ 96 reached by the smallest boxes considered here.

use crate::cycle::{carnot, run_cycle, CycleInput, CycleResult};
use crate::error::{Boundary, Error, Result};
use crate::series::SeriesControl;
use crate::solvers;
use crate::spectra::Medium;

const R_SCAN_LO: f64 = 1.0 + 1e-6;
const R_SCAN_HI: f64 = 1e4;
const R_SCAN_POINTS: usize = 200;
/// Golden-section width tolerance on r; an order below the precision the
/// optima are quoted at.
const R_TOL: f64 = 1e-6;

const ELL_SCAN_LO: f64 = 1e-3;
const ELL_SCAN_HI: f64 = 5.0;
const ELL_SCAN_POINTS: usize = 600;
const ELL_TOL: f64 = 1e-6;
/// Net work below this floor counts as "not yet positive" when hunting for
/// the positive region; asymmetric media sit at W ≈ 0 (to rounding) in the
/// deep quantum regime and must not trigger a crossing there.
const WORK_POSITIVE_FLOOR: f64 = 1e-9;

/// Result of a bracketed scalar maximization over the temperature ratio.
#[derive(Clone, Copy, Debug)]
pub struct OptimizeResult {
    /// Location of the maximum.
    pub r_star: f64,
    /// Maximized quantity (efficiency or net work).
    pub value: f64,
    /// Bracket handed to the golden-section refinement.
    pub bracket: (f64, f64),
    /// Golden-section iterations performed.
    pub iterations: usize,
}

/// Low-temperature (high-frequency) asymptote of the oscillator net work:
/// (r − 1)·ln 2, one ln 2 of work per unit of bath-temperature contrast from
/// the two-fold ground degeneracy behind the barrier.
pub fn ho_low_temp_work(r: f64) -> f64 {
    (r - 1.0) * std::f64::consts::LN_2
}

/// Hot-bath limit (r → ∞) of the oscillator net work at reduced frequency
/// m: ln[(1 + e^m)/2] − m/2.
pub fn ho_hot_limit_work(m: f64) -> f64 {
    // Rewritten as m/2 − ln 2 + ln(1 + e^{−m}) so large m cannot overflow.
    0.5 * m - std::f64::consts::LN_2 + (-m).exp().ln_1p()
}

/// Low-temperature asymptote of the box net work with B symmetric barriers:
/// (r − 1)·ln(B + 1).
pub fn pib_low_temp_work(r: f64, barriers: u32) -> f64 {
    (r - 1.0) * ((barriers + 1) as f64).ln()
}

/// Low-temperature work asymptote for any medium: (r − 1)·ln g₀ with g₀ the
/// ground degeneracy of the barrier spectrum. Asymmetric insertion leaves
/// the ground state nondegenerate, so its limit is exactly zero.
pub fn low_temp_work(medium: &Medium, r: f64) -> f64 {
    (r - 1.0) * (medium.barrier_ground_degeneracy() as f64).ln()
}

/// Maximize the cycle efficiency over the temperature ratio.
///
/// Efficiency rises from zero at r = 1, peaks, and decays to zero, so an
/// interior maximum exists whenever the medium works as an engine at all.
pub fn maximize_efficiency(medium: &Medium, ctrl: &SeriesControl) -> Result<OptimizeResult> {
    maximize_over_ratio(medium, ctrl, |c| {
        c.efficiency.unwrap_or(f64::NEG_INFINITY)
    })
}

/// Maximize the net work over the temperature ratio.
///
/// Box media peak at a finite ratio. Oscillator work instead grows
/// monotonically toward its hot-bath asymptote, and the scan reports that as
/// a monotone-profile error naming the upper bound.
pub fn maximize_work(medium: &Medium, ctrl: &SeriesControl) -> Result<OptimizeResult> {
    maximize_over_ratio(medium, ctrl, |c| c.w_net)
}

fn maximize_over_ratio(
    medium: &Medium,
    ctrl: &SeriesControl,
    objective: impl Fn(&CycleResult) -> f64,
) -> Result<OptimizeResult> {
    medium.validate()?;
    let eval = |r: f64| -> Result<f64> {
        let input = CycleInput {
            medium: *medium,
            temperature_ratio: r,
            ctrl: *ctrl,
        };
        Ok(objective(&run_cycle(&input)?))
    };

    let grid = solvers::geometric_grid(R_SCAN_LO, R_SCAN_HI, R_SCAN_POINTS);
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &r) in grid.iter().enumerate() {
        let v = eval(r)?;
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    if best_val == f64::NEG_INFINITY {
        return Err(Error::NoEngineRegime);
    }
    if best == 0 {
        return Err(Error::MonotoneProfile(Boundary::Lower));
    }
    if best == grid.len() - 1 {
        return Err(Error::MonotoneProfile(Boundary::Upper));
    }
    let bracket = (grid[best - 1], grid[best + 1]);
    let g = solvers::golden_section_max(eval, bracket.0, bracket.1, R_TOL)?;
    Ok(OptimizeResult {
        r_star: g.x,
        value: g.value,
        bracket,
        iterations: g.iterations,
    })
}

/// Smallest box half-length at which the net work crosses zero from above,
/// at fixed ratio r > 1 and barrier configuration. Scans ℓ ∈ [10⁻³, 5],
/// skips to the genuinely positive-work region, then bisects the first
/// sign change to a width of 10⁻⁶.
pub fn zero_work_length(r: f64, barriers: u32, asym_d: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(r.is_finite() && r > 1.0) {
        return Err(Error::Config(format!(
            "zero-work search needs a ratio above 1, got {r}"
        )));
    }
    let work = |ell: f64| -> Result<f64> {
        let medium = Medium::particle_in_box(ell, barriers, asym_d)?;
        let input = CycleInput {
            medium,
            temperature_ratio: r,
            ctrl: *ctrl,
        };
        Ok(run_cycle(&input)?.w_net)
    };

    let grid = solvers::linear_grid(ELL_SCAN_LO, ELL_SCAN_HI, ELL_SCAN_POINTS);
    let mut start = None;
    for (i, &ell) in grid.iter().enumerate() {
        if work(ell)? > WORK_POSITIVE_FLOOR {
            start = Some(i);
            break;
        }
    }
    let start = start.ok_or(Error::NoSignChange {
        lo: ELL_SCAN_LO,
        hi: ELL_SCAN_HI,
    })?;
    for i in start + 1..grid.len() {
        if work(grid[i])? <= 0.0 {
            return solvers::bisect_root(work, grid[i - 1], grid[i], ELL_TOL);
        }
    }
    Err(Error::NoSignChange {
        lo: grid[start],
        hi: ELL_SCAN_HI,
    })
}

/// Which cycle parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    /// Bath-temperature ratio r = T_h/T_c.
    TemperatureRatio,
    /// Oscillator reduced frequency u.
    Frequency,
    /// Box reduced half-length ℓ.
    BoxLength,
    /// Barrier count B (grid values must be whole numbers).
    Barriers,
    /// Compartment ratio d.
    AsymRatio,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::TemperatureRatio => "r",
            SweepParam::Frequency => "u",
            SweepParam::BoxLength => "ell",
            SweepParam::Barriers => "B",
            SweepParam::AsymRatio => "d",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "r" => Some(SweepParam::TemperatureRatio),
            "u" => Some(SweepParam::Frequency),
            "ell" => Some(SweepParam::BoxLength),
            "B" | "b" => Some(SweepParam::Barriers),
            "d" => Some(SweepParam::AsymRatio),
            _ => None,
        }
    }
}

/// A per-cycle quantity a sweep can report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    WNet,
    Eta,
    EtaOverCarnot,
    Q12,
    Q23,
    Q34,
    Q41,
    QIn,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Quantity::WNet,
        Quantity::Eta,
        Quantity::EtaOverCarnot,
        Quantity::Q12,
        Quantity::Q23,
        Quantity::Q34,
        Quantity::Q41,
        Quantity::QIn,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::WNet => "W_net",
            Quantity::Eta => "eta",
            Quantity::EtaOverCarnot => "eta_over_carnot",
            Quantity::Q12 => "Q12",
            Quantity::Q23 => "Q23",
            Quantity::Q34 => "Q34",
            Quantity::Q41 => "Q41",
            Quantity::QIn => "Q_in",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Quantity::ALL.iter().copied().find(|q| q.name() == s)
    }

    /// Extract this quantity from a cycle result. Efficiency-like
    /// quantities are absent outside the engine regime (and η/η_C also at
    /// r = 1 where the Carnot bound is zero).
    fn extract(&self, c: &CycleResult, r: f64) -> Option<f64> {
        match self {
            Quantity::WNet => Some(c.w_net),
            Quantity::Eta => c.efficiency,
            Quantity::EtaOverCarnot => {
                let bound = carnot(r);
                c.efficiency.filter(|_| bound > 0.0).map(|e| e / bound)
            }
            Quantity::Q12 => Some(c.q12),
            Quantity::Q23 => Some(c.q23),
            Quantity::Q34 => Some(c.q34),
            Quantity::Q41 => Some(c.q41),
            Quantity::QIn => Some(c.q_in),
        }
    }
}

/// Grid of swept values.
#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    Linear { min: f64, max: f64, count: usize },
    Geometric { min: f64, max: f64, count: usize },
    Explicit(Vec<f64>),
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        match self {
            Grid::Linear { min, max, count } => {
                check_range(*min, *max, *count)?;
                Ok(solvers::linear_grid(*min, *max, *count))
            }
            Grid::Geometric { min, max, count } => {
                check_range(*min, *max, *count)?;
                if *min <= 0.0 {
                    return Err(Error::Config(
                        "geometric grids need a positive lower bound".into(),
                    ));
                }
                Ok(solvers::geometric_grid(*min, *max, *count))
            }
            Grid::Explicit(values) => {
                if values.is_empty() {
                    return Err(Error::Config("explicit grid must not be empty".into()));
                }
                if values.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::Config(
                        "explicit grid must be strictly increasing".into(),
                    ));
                }
                Ok(values.clone())
            }
        }
    }
}

fn check_range(min: f64, max: f64, count: usize) -> Result<()> {
    if !(min.is_finite() && max.is_finite() && max > min) {
        return Err(Error::Config(format!(
            "grid bounds must be finite with max > min, got [{min}, {max}]"
        )));
    }
    if count < 2 {
        return Err(Error::Config(format!(
            "grid needs at least 2 points, got {count}"
        )));
    }
    Ok(())
}

/// A one-dimensional sweep request. The medium acts as a template; the
/// swept parameter replaces the matching field (or the ratio) point by
/// point.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub medium: Medium,
    /// Fixed ratio used when `param` is not the ratio itself.
    pub temperature_ratio: f64,
    pub param: SweepParam,
    pub grid: Grid,
    pub quantities: Vec<Quantity>,
}

/// One evaluated grid point. `quantities` aligns with
/// [`SweepSpec::quantities`]; entries are `None` where a quantity is
/// undefined (efficiency outside the engine regime) or the whole row
/// failed (`error` set).
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub value: f64,
    pub quantities: Vec<Option<f64>>,
    pub engine_regime: bool,
    pub error: Option<String>,
}

/// Evaluate the sweep. Grid or template errors fail the whole sweep;
/// per-point evaluation failures are recorded in their row.
pub fn sweep(spec: &SweepSpec, ctrl: &SeriesControl) -> Result<Vec<SweepRow>> {
    spec.medium.validate()?;
    if spec.quantities.is_empty() {
        return Err(Error::Config("sweep requests no quantities".into()));
    }
    match (spec.param, &spec.medium) {
        (SweepParam::Frequency, Medium::ParticleInBox { .. }) => {
            return Err(Error::Config(
                "frequency sweeps apply to the harmonic oscillator only".into(),
            ))
        }
        (
            SweepParam::BoxLength | SweepParam::Barriers | SweepParam::AsymRatio,
            Medium::HarmonicOscillator { .. },
        ) => {
            return Err(Error::Config(
                "box-geometry sweeps apply to the particle in a box only".into(),
            ))
        }
        _ => {}
    }
    if spec.param != SweepParam::TemperatureRatio {
        check_fixed_ratio(spec.temperature_ratio)?;
    }
    let points = spec.grid.points()?;

    let mut rows = Vec::with_capacity(points.len());
    for &v in &points {
        rows.push(evaluate_point(spec, v, ctrl));
    }
    Ok(rows)
}

fn check_fixed_ratio(r: f64) -> Result<()> {
    if r.is_finite() && r >= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "fixed temperature ratio must be finite and at least 1, got {r}"
        )))
    }
}

fn evaluate_point(spec: &SweepSpec, value: f64, ctrl: &SeriesControl) -> SweepRow {
    let blank = |msg: String| SweepRow {
        value,
        quantities: vec![None; spec.quantities.len()],
        engine_regime: false,
        error: Some(msg),
    };
    let (medium, r) = match apply_param(spec, value) {
        Ok(pair) => pair,
        Err(e) => return blank(e.to_string()),
    };
    let input = CycleInput {
        medium,
        temperature_ratio: r,
        ctrl: *ctrl,
    };
    match run_cycle(&input) {
        Ok(c) => SweepRow {
            value,
            quantities: spec
                .quantities
                .iter()
                .map(|q| q.extract(&c, r))
                .collect(),
            engine_regime: c.engine_regime,
            error: None,
        },
        Err(e) => blank(e.to_string()),
    }
}

fn apply_param(spec: &SweepSpec, value: f64) -> Result<(Medium, f64)> {
    let fixed_r = spec.temperature_ratio;
    match (spec.param, spec.medium) {
        (SweepParam::TemperatureRatio, m) => {
            if value < 1.0 {
                return Err(Error::Config(format!(
                    "swept ratio must be at least 1, got {value}"
                )));
            }
            Ok((m, value))
        }
        (SweepParam::Frequency, Medium::HarmonicOscillator { .. }) => {
            Ok((Medium::harmonic_oscillator(value, 1)?, fixed_r))
        }
        (
            SweepParam::BoxLength,
            Medium::ParticleInBox {
                barriers, asym_d, ..
            },
        ) => Ok((Medium::particle_in_box(value, barriers, asym_d)?, fixed_r)),
        (SweepParam::Barriers, Medium::ParticleInBox { ell, asym_d, .. }) => {
            if value.fract() != 0.0 || value < 1.0 || value > u32::MAX as f64 {
                return Err(Error::Config(format!(
                    "barrier count must be a whole number of at least 1, got {value}"
                )));
            }
            Ok((Medium::particle_in_box(ell, value as u32, asym_d)?, fixed_r))
        }
        (SweepParam::AsymRatio, Medium::ParticleInBox { ell, barriers, .. }) => {
            Ok((Medium::particle_in_box(ell, barriers, value)?, fixed_r))
        }
        _ => unreachable!("parameter/medium mismatch is rejected up front"),
    }
}
