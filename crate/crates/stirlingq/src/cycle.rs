//! The four-stroke quantum Stirling cycle.
//!
//! Strokes, with β_h = 1/r and β_c = 1 in reduced units:
//!
//! 1→2  isothermal barrier insertion at the hot bath:
//!        W12 = r·ln(Z₂/Z₁),  Q12 = (U₂ − U₁) + W12
//! 2→3  isochoric cooling (spectrum fixed, no work):  Q23 = U₃ − U₂
//! 3→4  isothermal barrier removal at the cold bath:
//!        W34 = ln(Z₄/Z₃),   Q34 = (U₄ − U₃) + W34
//! 4→1  isochoric heating (no work):                  Q41 = U₁ − U₄
//!
//! Stages 1/4 share the free spectrum and 2/3 the barrier spectrum; only two
//! spectra are ever built. Net work W12 + W34 equals the sum of all four
//! heats exactly, and the efficiency W_net/(Q12 + Q41) is reported only when
//! the device actually runs as an engine (positive net work and heat input).

use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::spectra::{Medium, Stage};

/// A cycle evaluation request: medium, bath-temperature ratio r = T_h/T_c,
/// and series controls.
#[derive(Clone, Copy, Debug)]
pub struct CycleInput {
    pub medium: Medium,
    pub temperature_ratio: f64,
    pub ctrl: SeriesControl,
}

impl CycleInput {
    pub fn new(medium: Medium, temperature_ratio: f64, ctrl: SeriesControl) -> Result<Self> {
        medium.validate()?;
        check_ratio(temperature_ratio)?;
        Ok(Self {
            medium,
            temperature_ratio,
            ctrl,
        })
    }
}

/// Heats, works and efficiency for one full cycle, in units of k_B·T_c.
#[derive(Clone, Copy, Debug)]
pub struct CycleResult {
    pub q12: f64,
    pub q23: f64,
    pub q34: f64,
    pub q41: f64,
    pub w12: f64,
    pub w34: f64,
    /// W12 + W34; the isochoric strokes do no work.
    pub w_net: f64,
    /// Q12 + Q41, the heat drawn from the hot bath over the cycle.
    pub q_in: f64,
    /// W_net/Q_in, present only in the engine regime.
    pub efficiency: Option<f64>,
    /// True when W_net > 0 and Q_in > 0.
    pub engine_regime: bool,
}

/// Carnot efficiency 1 − T_c/T_h at ratio r = T_h/T_c ≥ 1.
pub fn carnot(r: f64) -> f64 {
    debug_assert!(r >= 1.0);
    1.0 - 1.0 / r
}

/// Evaluate all strokes of the cycle.
pub fn run_cycle(input: &CycleInput) -> Result<CycleResult> {
    input.medium.validate()?;
    check_ratio(input.temperature_ratio)?;
    let r = input.temperature_ratio;
    let ctrl = &input.ctrl;

    let free = input.medium.stage_spectrum(Stage::FreeHot)?;
    let wall = input.medium.stage_spectrum(Stage::BarrierHot)?;

    let hot_free = free.canonical(r, ctrl)?; // stage 1
    let hot_wall = wall.canonical(r, ctrl)?; // stage 2
    let cold_wall = wall.canonical(1.0, ctrl)?; // stage 3
    let cold_free = free.canonical(1.0, ctrl)?; // stage 4

    let w12 = r * (hot_wall.ln_z - hot_free.ln_z);
    let w34 = cold_free.ln_z - cold_wall.ln_z;
    let q12 = (hot_wall.mean_energy - hot_free.mean_energy) + w12;
    let q23 = cold_wall.mean_energy - hot_wall.mean_energy;
    let q34 = (cold_free.mean_energy - cold_wall.mean_energy) + w34;
    let q41 = hot_free.mean_energy - cold_free.mean_energy;

    let w_net = w12 + w34;
    let q_in = q12 + q41;
    let engine_regime = w_net > 0.0 && q_in > 0.0;
    Ok(CycleResult {
        q12,
        q23,
        q34,
        q41,
        w12,
        w34,
        w_net,
        q_in,
        efficiency: engine_regime.then(|| w_net / q_in),
        engine_regime,
    })
}

fn check_ratio(r: f64) -> Result<()> {
    if r.is_finite() && r >= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "temperature ratio T_h/T_c must be finite and at least 1, got {r}"
        )))
    }
}
