//! Working media, per-stage energy spectra, and canonical sums over them.
//!
//! Everything is expressed in reduced units: energies in k_B·T_c,
//! temperatures as τ = T/T_c, and β = 1/τ in units of 1/(k_B·T_c). The two
//! media are
//!
//! - a harmonic oscillator of reduced frequency u = ħω/(k_B·T_c). The free
//!   ladder is E_n = (n + 1/2)·u. A hard wall at the potential centre forces
//!   a node there, lifting even states onto their odd neighbours:
//!   E_n = (2n + 3/2)·u, every level two-fold degenerate.
//! - a particle in a box of half-length ℓ = a/λ, with λ = h/√(2π·m·k_B·T_c)
//!   the thermal de Broglie wavelength at the cold-bath temperature. A box
//!   segment of reduced length L/λ contributes E_n = π·n²/(4·(L/λ)²).
//!   Inserting B barriers symmetrically leaves B+1 identical compartments of
//!   length 2a/(B+1) and (B+1)-fold degenerate levels; one off-centre barrier
//!   splits the box into lengths x and y with x + y = 2a and d = x/y, and the
//!   spectrum is the merged union of the two compartment spectra.
//!
//! Partition functions use closed forms where they exist (geometric sums for
//! the oscillator, theta sums for box segments) and a direct truncated
//! Boltzmann sum over the level stream otherwise.

use crate::error::{Error, Result};
use crate::series::{log_sum_exp, ln_one_minus_exp_neg, theta_sums, SeriesControl};

/// Reduced level constant of a box segment: E_n = π·n²/(4·L²) for a segment
/// of reduced length L = (physical length)/λ.
pub(crate) fn segment_scale(reduced_length: f64) -> f64 {
    std::f64::consts::PI / (4.0 * reduced_length * reduced_length)
}

/// Two energies within one part in 10¹² are treated as the same level when
/// merging compartment spectra.
const LEVEL_MERGE_RTOL: f64 = 1e-12;

/// A working medium for the Stirling cycle.
///
/// Construct through [`Medium::harmonic_oscillator`] or
/// [`Medium::particle_in_box`]; those validate and normalize the parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Medium {
    HarmonicOscillator {
        /// Reduced frequency ħω/(k_B·T_c), positive.
        u: f64,
    },
    ParticleInBox {
        /// Reduced half-length a/λ, positive.
        ell: f64,
        /// Number of inserted barriers, at least 1.
        barriers: u32,
        /// Compartment length ratio d = x/y in (0, 1]; 1 means symmetric.
        /// Asymmetric splits are defined only for a single barrier.
        asym_d: f64,
    },
}

impl Medium {
    /// Harmonic-oscillator medium. Only a single central barrier is
    /// supported, so `barriers` must be 1.
    pub fn harmonic_oscillator(u: f64, barriers: u32) -> Result<Self> {
        if barriers != 1 {
            return Err(Error::Config(format!(
                "harmonic oscillator supports exactly one barrier, got {barriers}"
            )));
        }
        let m = Medium::HarmonicOscillator { u };
        m.validate()?;
        Ok(m)
    }

    /// Particle-in-a-box medium. `asym_d` is the compartment ratio x/y; any
    /// d > 1 is folded to 1/d since both describe the same split. Asymmetric
    /// insertion (d ≠ 1) requires `barriers == 1`.
    pub fn particle_in_box(ell: f64, barriers: u32, asym_d: f64) -> Result<Self> {
        if !(asym_d.is_finite() && asym_d > 0.0) {
            return Err(Error::Config(format!(
                "compartment ratio d must be positive and finite, got {asym_d}"
            )));
        }
        let d = if asym_d > 1.0 { 1.0 / asym_d } else { asym_d };
        let m = Medium::ParticleInBox {
            ell,
            barriers,
            asym_d: d,
        };
        m.validate()?;
        Ok(m)
    }

    /// Check the medium invariants (used again by [`Medium::stage_spectrum`]
    /// so that hand-rolled values fail loudly).
    pub fn validate(&self) -> Result<()> {
        match *self {
            Medium::HarmonicOscillator { u } => {
                if !(u.is_finite() && u > 0.0) {
                    return Err(Error::Config(format!(
                        "reduced frequency u must be positive and finite, got {u}"
                    )));
                }
            }
            Medium::ParticleInBox {
                ell,
                barriers,
                asym_d,
            } => {
                if !(ell.is_finite() && ell > 0.0) {
                    return Err(Error::Config(format!(
                        "reduced half-length ell must be positive and finite, got {ell}"
                    )));
                }
                if barriers == 0 {
                    return Err(Error::Config(
                        "particle in a box needs at least one barrier".into(),
                    ));
                }
                if !(asym_d.is_finite() && asym_d > 0.0 && asym_d <= 1.0) {
                    return Err(Error::Config(format!(
                        "compartment ratio d must lie in (0, 1] after normalization, got {asym_d}"
                    )));
                }
                if asym_d != 1.0 && barriers != 1 {
                    return Err(Error::Config(
                        "asymmetric insertion is defined for a single barrier only".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_asymmetric(&self) -> bool {
        matches!(self, Medium::ParticleInBox { asym_d, .. } if *asym_d != 1.0)
    }

    /// Ground-state degeneracy of the barrier spectrum: 2 for the
    /// oscillator, B+1 for symmetric insertion, 1 for asymmetric.
    pub fn barrier_ground_degeneracy(&self) -> u32 {
        match *self {
            Medium::HarmonicOscillator { .. } => 2,
            Medium::ParticleInBox {
                barriers, asym_d, ..
            } => {
                if asym_d == 1.0 {
                    barriers + 1
                } else {
                    1
                }
            }
        }
    }

    /// Spectrum for one cycle stage. The free stages share one spectrum and
    /// the barrier stages another; temperature is not part of a spectrum.
    pub fn stage_spectrum(&self, stage: Stage) -> Result<StageSpectrum> {
        self.validate()?;
        let kind = match (*self, stage.has_barrier()) {
            (Medium::HarmonicOscillator { u }, false) => SpectrumKind::HoFree { u },
            (Medium::HarmonicOscillator { u }, true) => SpectrumKind::HoBarrier { u },
            (Medium::ParticleInBox { ell, .. }, false) => SpectrumKind::Pib {
                segments: vec![PibSegment {
                    level_scale: segment_scale(2.0 * ell),
                    multiplicity: 1,
                }],
            },
            (
                Medium::ParticleInBox {
                    ell,
                    barriers,
                    asym_d,
                },
                true,
            ) => {
                let segments = if asym_d == 1.0 {
                    let compartments = barriers + 1;
                    vec![PibSegment {
                        level_scale: segment_scale(2.0 * ell / compartments as f64),
                        multiplicity: compartments,
                    }]
                } else {
                    let x = 2.0 * ell * asym_d / (1.0 + asym_d);
                    let y = 2.0 * ell / (1.0 + asym_d);
                    // y ≥ x, so the y-segment carries the ground state.
                    vec![
                        PibSegment {
                            level_scale: segment_scale(y),
                            multiplicity: 1,
                        },
                        PibSegment {
                            level_scale: segment_scale(x),
                            multiplicity: 1,
                        },
                    ]
                };
                SpectrumKind::Pib { segments }
            }
        };
        let closed_form = Some(match &kind {
            SpectrumKind::HoFree { .. } => ClosedForm::HoFree,
            SpectrumKind::HoBarrier { .. } => ClosedForm::HoBarrier,
            SpectrumKind::Pib { segments } if segments.len() == 1 => ClosedForm::PibTheta,
            SpectrumKind::Pib { .. } => ClosedForm::PibThetaSum,
        });
        Ok(StageSpectrum { kind, closed_form })
    }
}

/// The four strokes of the quantum Stirling cycle, labelled by which
/// spectrum they see and which bath they touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    FreeHot,
    BarrierHot,
    BarrierCold,
    FreeCold,
}

impl Stage {
    pub fn has_barrier(&self) -> bool {
        matches!(self, Stage::BarrierHot | Stage::BarrierCold)
    }
}

/// Tag identifying which exact partition-function expression applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// Z = 1/(2 sinh(u/(2τ)))
    HoFree,
    /// Z = 2 e^{−3u/(2τ)}/(1 − e^{−2u/τ})
    HoBarrier,
    /// Z = m · (Θ₃(0, e^{−cβ}) − 1)/2 for one box segment
    PibTheta,
    /// Sum of theta terms over several box segments
    PibThetaSum,
}

/// One box compartment: levels E_n = level_scale·n², each with the given
/// multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct PibSegment {
    pub level_scale: f64,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq)]
enum SpectrumKind {
    HoFree { u: f64 },
    HoBarrier { u: f64 },
    Pib { segments: Vec<PibSegment> },
}

/// Energy spectrum of one cycle stage: an unbounded stream of
/// (energy, degeneracy) pairs in strictly increasing energy order, plus an
/// optional closed-form tag used by the partition-function evaluators.
#[derive(Clone, Debug, PartialEq)]
pub struct StageSpectrum {
    kind: SpectrumKind,
    closed_form: Option<ClosedForm>,
}

/// Canonical-ensemble sums at one temperature.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Canonical {
    pub ln_z: f64,
    pub mean_energy: f64,
    pub energy_variance: f64,
}

impl StageSpectrum {
    /// Spectrum of a single isolated box segment of the given reduced
    /// length (levels π·n²/(4L²), nondegenerate).
    pub fn pib_segment(reduced_length: f64) -> Result<Self> {
        if !(reduced_length.is_finite() && reduced_length > 0.0) {
            return Err(Error::Config(format!(
                "segment length must be positive and finite, got {reduced_length}"
            )));
        }
        Ok(StageSpectrum {
            kind: SpectrumKind::Pib {
                segments: vec![PibSegment {
                    level_scale: segment_scale(reduced_length),
                    multiplicity: 1,
                }],
            },
            closed_form: Some(ClosedForm::PibTheta),
        })
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        self.closed_form
    }

    /// Copy of this spectrum with the closed-form tag cleared, forcing every
    /// evaluation through the direct level sum. Used to cross-check the
    /// closed forms against an independent route.
    pub fn series_only(&self) -> Self {
        StageSpectrum {
            kind: self.kind.clone(),
            closed_form: None,
        }
    }

    /// Unbounded iterator over (energy, degeneracy), energies strictly
    /// increasing. Compartment unions merge levels that coincide to one part
    /// in 10¹², summing their degeneracies.
    pub fn levels(&self) -> Levels<'_> {
        let inner = match &self.kind {
            SpectrumKind::HoFree { u } => LevelsInner::Ladder {
                n: 0,
                origin: 0.5 * u,
                step: *u,
                degeneracy: 1,
            },
            SpectrumKind::HoBarrier { u } => LevelsInner::Ladder {
                n: 0,
                origin: 1.5 * u,
                step: 2.0 * u,
                degeneracy: 2,
            },
            SpectrumKind::Pib { segments } => LevelsInner::Segments {
                segments,
                next_n: [1, 1],
            },
        };
        Levels { inner }
    }

    /// Ground level (energy, degeneracy).
    pub fn ground(&self) -> (f64, u32) {
        self.levels().next().expect("spectra are unbounded")
    }

    /// ln Z(τ) through the closed form when one is tagged, otherwise through
    /// the truncated level sum.
    pub fn ln_partition(&self, tau: f64, ctrl: &SeriesControl) -> Result<f64> {
        Ok(self.canonical(tau, ctrl)?.ln_z)
    }

    /// ln Z(τ) by direct summation of g·e^{−E/τ} over the level stream,
    /// ignoring any closed form. The sum stops once the next term falls
    /// below rel_tol times the running sum.
    pub fn ln_partition_series(&self, tau: f64, ctrl: &SeriesControl) -> Result<f64> {
        check_tau(tau)?;
        Ok(self.series_sums(1.0 / tau, ctrl)?.ln_z)
    }

    /// d ln Z/dβ at β = 1/τ; equals −U with U the mean energy.
    pub fn dlnz_dbeta(&self, tau: f64, ctrl: &SeriesControl) -> Result<f64> {
        Ok(-self.canonical(tau, ctrl)?.mean_energy)
    }

    /// d² ln Z/dβ² at β = 1/τ; the energy variance, hence never negative.
    pub fn d2lnz_dbeta2(&self, tau: f64, ctrl: &SeriesControl) -> Result<f64> {
        Ok(self.canonical(tau, ctrl)?.energy_variance)
    }

    /// All canonical sums at once.
    pub(crate) fn canonical(&self, tau: f64, ctrl: &SeriesControl) -> Result<Canonical> {
        check_tau(tau)?;
        let beta = 1.0 / tau;
        match (self.closed_form, &self.kind) {
            (Some(ClosedForm::HoFree), SpectrumKind::HoFree { u }) => Ok(ho_free_canonical(*u, beta)),
            (Some(ClosedForm::HoBarrier), SpectrumKind::HoBarrier { u }) => {
                Ok(ho_barrier_canonical(*u, beta))
            }
            (Some(ClosedForm::PibTheta) | Some(ClosedForm::PibThetaSum), SpectrumKind::Pib { segments }) => {
                pib_canonical(segments, beta, ctrl)
            }
            _ => self.series_sums(beta, ctrl),
        }
    }

    /// Truncated Boltzmann sum over the level stream with the ground term
    /// factored out, accumulating excess-energy moments.
    fn series_sums(&self, beta: f64, ctrl: &SeriesControl) -> Result<Canonical> {
        let mut levels = self.levels();
        let (e0, g0) = levels.next().expect("spectra are unbounded");
        let mut m0 = g0 as f64;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        let mut terms: usize = 1;
        for (e, g) in levels {
            let d = e - e0;
            let w = g as f64 * (-d * beta).exp();
            m0 += w;
            m1 += w * d;
            m2 += w * d * d;
            terms += 1;
            if w <= ctrl.rel_tol() * m0 && w * d * d <= ctrl.rel_tol() * m2 {
                break;
            }
            if terms >= ctrl.max_terms() {
                return Err(Error::Convergence {
                    partial_sum: (-e0 * beta).exp() * m0,
                    terms_used: terms,
                });
            }
        }
        let mean_excess = m1 / m0;
        Ok(Canonical {
            ln_z: -e0 * beta + m0.ln(),
            mean_energy: e0 + mean_excess,
            energy_variance: (m2 / m0 - mean_excess * mean_excess).max(0.0),
        })
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "reduced temperature must be positive and finite, got {tau}"
        )))
    }
}

/// Free oscillator: ln Z = −ln(2 sinh(uβ/2)).
fn ho_free_canonical(u: f64, beta: f64) -> Canonical {
    let x = 0.5 * u * beta;
    let t = (-x).exp();
    let one_minus_t2 = -(-2.0 * x).exp_m1(); // 1 − e^{−2x}
    let csch = u * t / one_minus_t2; // u/(2 sinh x)
    Canonical {
        ln_z: -x - ln_one_minus_exp_neg(2.0 * x),
        mean_energy: 0.5 * u + u / (u * beta).exp_m1(),
        energy_variance: csch * csch,
    }
}

/// Oscillator with a central wall: ln Z = ln 2 − 3uβ/2 − ln(1 − e^{−2uβ}).
fn ho_barrier_canonical(u: f64, beta: f64) -> Canonical {
    let y = 2.0 * u * beta;
    let t = (-0.5 * y).exp();
    let one_minus_t2 = -(-y).exp_m1();
    let csch = 2.0 * u * t / one_minus_t2;
    Canonical {
        ln_z: std::f64::consts::LN_2 - 1.5 * u * beta - ln_one_minus_exp_neg(y),
        mean_energy: 1.5 * u + 2.0 * u / y.exp_m1(),
        energy_variance: csch * csch,
    }
}

/// Theta route for box spectra. Each segment contributes
/// m_j·S(c_j β); segments combine by log-sum-exp, and the energy variance
/// uses the law of total variance so every term stays non-negative.
fn pib_canonical(segments: &[PibSegment], beta: f64, ctrl: &SeriesControl) -> Result<Canonical> {
    let mut ln_terms = Vec::with_capacity(segments.len());
    let mut means = Vec::with_capacity(segments.len());
    let mut vars = Vec::with_capacity(segments.len());
    for seg in segments {
        let sums = theta_sums(seg.level_scale * beta, ctrl)?;
        ln_terms.push((seg.multiplicity as f64).ln() + sums.ln_sum);
        means.push(seg.level_scale * sums.mean_n2);
        vars.push(seg.level_scale * seg.level_scale * sums.var_n2.max(0.0));
    }
    let ln_z = log_sum_exp(&ln_terms);
    let mut mean = 0.0;
    for (lt, m) in ln_terms.iter().zip(&means) {
        mean += (lt - ln_z).exp() * m;
    }
    let mut var = 0.0;
    for ((lt, m), v) in ln_terms.iter().zip(&means).zip(&vars) {
        let p = (lt - ln_z).exp();
        var += p * (v + (m - mean) * (m - mean));
    }
    Ok(Canonical {
        ln_z,
        mean_energy: mean,
        energy_variance: var,
    })
}

/// See [`StageSpectrum::levels`].
pub struct Levels<'a> {
    inner: LevelsInner<'a>,
}

enum LevelsInner<'a> {
    Ladder {
        n: u64,
        origin: f64,
        step: f64,
        degeneracy: u32,
    },
    Segments {
        segments: &'a [PibSegment],
        next_n: [u64; 2],
    },
}

impl Iterator for Levels<'_> {
    type Item = (f64, u32);

    fn next(&mut self) -> Option<(f64, u32)> {
        match &mut self.inner {
            LevelsInner::Ladder {
                n,
                origin,
                step,
                degeneracy,
            } => {
                let e = *origin + *step * *n as f64;
                *n += 1;
                Some((e, *degeneracy))
            }
            LevelsInner::Segments { segments, next_n } => {
                let energy_of = |j: usize, n: u64| segments[j].level_scale * (n * n) as f64;
                if segments.len() == 1 {
                    let e = energy_of(0, next_n[0]);
                    next_n[0] += 1;
                    return Some((e, segments[0].multiplicity));
                }
                let e0 = energy_of(0, next_n[0]);
                let e1 = energy_of(1, next_n[1]);
                if (e0 - e1).abs() <= LEVEL_MERGE_RTOL * e0.abs().max(e1.abs()) {
                    next_n[0] += 1;
                    next_n[1] += 1;
                    Some((
                        0.5 * (e0 + e1),
                        segments[0].multiplicity + segments[1].multiplicity,
                    ))
                } else if e0 < e1 {
                    next_n[0] += 1;
                    Some((e0, segments[0].multiplicity))
                } else {
                    next_n[1] += 1;
                    Some((e1, segments[1].multiplicity))
                }
            }
        }
    }
}
