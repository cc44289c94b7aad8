//! Degeneracy-assisted quantum Stirling heat engine.
//!
//! A quantum Stirling cycle runs a single-particle working medium through
//! four strokes: quasi-static insertion of an infinite delta barrier while
//! coupled to a hot bath, an isochoric swap to the cold bath, quasi-static
//! removal of the barrier at the cold bath, and an isochoric swap back. The
//! barrier reshapes the energy spectrum — for a harmonic oscillator it lifts
//! even levels onto odd ones leaving a two-fold degenerate ladder, for a box
//! it creates degenerate compartment spectra — and that degeneracy is what
//! the engine converts into work: in the deep quantum limit the net work per
//! cycle is (T_h/T_c − 1)·k_B·T_c·ln g₀, with g₀ the ground degeneracy
//! behind the barrier.
//!
//! The crate computes, in reduced units (energies in k_B·T_c, temperatures
//! as τ = T/T_c):
//!
//! - per-stage spectra and ln Z with its first two β-derivatives
//!   ([`spectra`]), using geometric closed forms for the oscillator and
//!   theta sums with a modular-transform fallback for box segments;
//! - internal energy, entropy, free energy and heat capacity ([`thermo`]);
//! - all heats, works, net work and efficiency of the cycle ([`cycle`]);
//! - asymptotic limits, efficiency/work maximization over the bath ratio,
//!   zero-work box lengths, and tabulated parameter sweeps ([`analysis`]).

pub mod analysis;
pub mod cycle;
mod error;
mod series;
mod solvers;
pub mod spectra;
pub mod thermo;

pub use analysis::{
    ho_hot_limit_work, ho_low_temp_work, low_temp_work, maximize_efficiency, maximize_work,
    pib_low_temp_work, sweep, zero_work_length, Grid, OptimizeResult, Quantity, SweepParam,
    SweepRow, SweepSpec,
};
pub use cycle::{carnot, run_cycle, CycleInput, CycleResult};
pub use error::{Boundary, Error, Result};
pub use series::SeriesControl;
pub use spectra::{ClosedForm, Levels, Medium, Stage, StageSpectrum};
pub use thermo::{pib_heat_capacity_max, thermo_point, ThermoPoint};
