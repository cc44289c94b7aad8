//! Canonical-ensemble quantities built on ln Z.
//!
//! All quantities are per particle and in reduced units: energies in
//! k_B·T_c, entropy and heat capacity in units of k_B.

use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::solvers;
use crate::spectra::StageSpectrum;

/// One spectrum evaluated at one temperature.
#[derive(Clone, Copy, Debug)]
pub struct ThermoPoint {
    /// Reduced temperature τ = T/T_c.
    pub tau: f64,
    pub ln_z: f64,
    /// U = −∂ ln Z/∂β.
    pub internal_energy: f64,
    /// S/k_B = ln Z + U/τ, i.e. (1 − β ∂/∂β) ln Z.
    pub entropy: f64,
    /// F = −τ ln Z.
    pub free_energy: f64,
    /// C/k_B = (∂²ln Z/∂β²)/τ², the scaled energy variance; never negative.
    pub heat_capacity: f64,
}

/// Evaluate ln Z, U, S, F and C for one spectrum at reduced temperature τ.
pub fn thermo_point(spectrum: &StageSpectrum, tau: f64, ctrl: &SeriesControl) -> Result<ThermoPoint> {
    let c = spectrum.canonical(tau, ctrl)?;
    Ok(ThermoPoint {
        tau,
        ln_z: c.ln_z,
        internal_energy: c.mean_energy,
        entropy: c.ln_z + c.mean_energy / tau,
        free_energy: -tau * c.ln_z,
        heat_capacity: c.energy_variance / (tau * tau),
    })
}

/// Number of points in the coarse log-grid used to bracket the heat-capacity
/// maximum before golden-section refinement.
const CAPACITY_BRACKET_POINTS: usize = 61;
/// Golden-section width tolerance in τ.
const CAPACITY_TAU_TOL: f64 = 1e-8;

/// Locate the heat-capacity maximum of a single box segment of reduced
/// length `ell`. The profile has a single interior maximum of about
/// 9/16·k_B; the search brackets it on a log grid over
/// τ ∈ [10⁻³/ℓ², 10³/ℓ²] and refines by golden section.
///
/// Returns (τ*, C_max).
pub fn pib_heat_capacity_max(ell: f64, ctrl: &SeriesControl) -> Result<(f64, f64)> {
    let spectrum = StageSpectrum::pib_segment(ell)?;
    let capacity = |tau: f64| -> Result<f64> {
        Ok(thermo_point(&spectrum, tau, ctrl)?.heat_capacity)
    };

    let lo = 1e-3 / (ell * ell);
    let hi = 1e3 / (ell * ell);
    let grid = solvers::geometric_grid(lo, hi, CAPACITY_BRACKET_POINTS);
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &tau) in grid.iter().enumerate() {
        let c = capacity(tau)?;
        if c > best_val {
            best_val = c;
            best = i;
        }
    }
    if best == 0 {
        return Err(Error::MonotoneProfile(crate::error::Boundary::Lower));
    }
    if best == grid.len() - 1 {
        return Err(Error::MonotoneProfile(crate::error::Boundary::Upper));
    }
    let g = solvers::golden_section_max(capacity, grid[best - 1], grid[best + 1], CAPACITY_TAU_TOL)?;
    Ok((g.x, g.value))
}
