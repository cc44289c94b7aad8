//! Truncated-series evaluation: controls and the theta-sum kernel.
//!
//! Box spectra lead to partition sums of the form
//!   S(s) = Σ_{n≥1} e^{−n²s},   s = (level scale)·β,
//! which is Θ₃ in disguise: Θ₃(0, e^{−s}) = 1 + 2·S(s). The sum converges
//! slowly for small s (hot baths, large boxes), so below [`MODULAR_SWITCH`]
//! it is rewritten through the modular identity
//!   Θ₃(0, e^{−s}) = √(π/s) · Θ₃(0, e^{−π²/s}),
//! whose dual series needs only a handful of terms. Either route also yields
//! the first two β-moments of n², which the spectra layer turns into mean
//! energy and energy variance.

use crate::error::{Error, Result};

/// Switch point between the direct theta series and its modular transform.
/// At s = 0.5 the direct sum needs ~8 terms and the dual sum ~2, so both
/// sides of the switch stay well under 50 terms everywhere.
pub(crate) const MODULAR_SWITCH: f64 = 0.5;

/// Truncation policy for every series summation in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesControl {
    pub const DEFAULT_REL_TOL: f64 = 1e-14;
    pub const DEFAULT_MAX_TERMS: usize = 200_000;

    /// Build a control; `rel_tol` must lie in (0, 1e-6) and `max_terms`
    /// must be at least 1000.
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-6) {
            return Err(Error::Config(format!(
                "rel_tol must lie in (0, 1e-6), got {rel_tol:e}"
            )));
        }
        if max_terms < 1000 {
            return Err(Error::Config(format!(
                "max_terms must be at least 1000, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Same tolerance with a different term cap.
    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Self::new(self.rel_tol, max_terms)
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: Self::DEFAULT_REL_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// ln S(s) together with the mean and variance of n² under the weights
/// e^{−n²s}/S(s). The moments are kept in n²-space; callers scale by the
/// level constant to get energies.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ThetaSums {
    pub ln_sum: f64,
    pub mean_n2: f64,
    pub var_n2: f64,
}

/// Evaluate S(s) = Σ_{n≥1} e^{−n²s} and its n²-moments for s > 0.
pub(crate) fn theta_sums(s: f64, ctrl: &SeriesControl) -> Result<ThetaSums> {
    debug_assert!(s > 0.0);
    if s >= MODULAR_SWITCH {
        theta_sums_direct(s, ctrl)
    } else {
        theta_sums_modular(s, ctrl)
    }
}

/// Direct summation with the ground term factored out:
/// S(s) = e^{−s} Σ_{n≥1} e^{−(n²−1)s}. Working in the excess variable
/// m = n²−1 keeps the low-temperature moments free of cancellation.
fn theta_sums_direct(s: f64, ctrl: &SeriesControl) -> Result<ThetaSums> {
    let mut m0 = 1.0; // n = 1 term
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    let mut n: usize = 2;
    loop {
        let excess = (n * n - 1) as f64;
        let w = (-excess * s).exp();
        m0 += w;
        m1 += w * excess;
        m2 += w * excess * excess;
        if w <= ctrl.rel_tol * m0 && w * excess * excess <= ctrl.rel_tol * m2 {
            break;
        }
        n += 1;
        if n > ctrl.max_terms {
            return Err(Error::Convergence {
                partial_sum: (-s).exp() * m0,
                terms_used: n - 1,
            });
        }
    }
    let mean_excess = m1 / m0;
    Ok(ThetaSums {
        ln_sum: -s + m0.ln(),
        mean_n2: 1.0 + mean_excess,
        var_n2: m2 / m0 - mean_excess * mean_excess,
    })
}

/// Modular route for s < 0.5. With P = √(π/s) and q_k = e^{−π²k²/s},
///   Θ(s) = P·(1 + 2Σ q_k),
/// and the s-derivatives follow term-wise (dq_k/ds = q_k·π²k²/s²).
/// Then S = (Θ−1)/2, ⟨n²⟩ = −Θ′/(Θ−1), ⟨n⁴⟩ = Θ″/(Θ−1).
fn theta_sums_modular(s: f64, ctrl: &SeriesControl) -> Result<ThetaSums> {
    let pi = std::f64::consts::PI;
    let p = (pi / s).sqrt();

    // Dual-series accumulators: t0 = Σ q_k, t1 = Σ q_k·a_k, t2 = Σ q_k·a_k²,
    // with a_k = π²k²/s.
    let mut t0 = 0.0;
    let mut t1 = 0.0;
    let mut t2 = 0.0;
    let mut k: usize = 1;
    loop {
        let a = pi * pi * (k * k) as f64 / s;
        let q = (-a).exp();
        t0 += q;
        t1 += q * a;
        t2 += q * a * a;
        // a_k ≥ π²/s > 19 here, so q·a² decays faster than geometrically.
        if q * (1.0 + a * a) <= ctrl.rel_tol * (1.0 + t2) {
            break;
        }
        k += 1;
        if k > ctrl.max_terms {
            return Err(Error::Convergence {
                partial_sum: (p * (1.0 + 2.0 * t0) - 1.0) / 2.0,
                terms_used: k - 1,
            });
        }
    }

    let theta_hat = 1.0 + 2.0 * t0;
    let theta = p * theta_hat;
    // dΘ̂/ds = 2Σ q·a/s ; d²Θ̂/ds² = 2Σ q·(a² − 2a)/s².
    let theta_hat_d1 = 2.0 * t1 / s;
    let theta_hat_d2 = 2.0 * (t2 - 2.0 * t1) / (s * s);
    // P′ = −P/(2s), P″ = 3P/(4s²).
    let theta_d1 = p * (theta_hat_d1 - theta_hat / (2.0 * s));
    let theta_d2 = p * (0.75 * theta_hat / (s * s) - theta_hat_d1 / s + theta_hat_d2);

    let sum = (theta - 1.0) / 2.0;
    let mean_n2 = -theta_d1 / (theta - 1.0);
    let mean_n4 = theta_d2 / (theta - 1.0);
    Ok(ThetaSums {
        ln_sum: sum.ln(),
        mean_n2,
        var_n2: mean_n4 - mean_n2 * mean_n2,
    })
}

/// ln(1 − e^{−x}) for x > 0 without cancellation.
pub(crate) fn ln_one_minus_exp_neg(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// Numerically stable log-sum-exp.
pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct sum with the ground term factored, so the reference mean and
    /// variance stay exact in the frozen-out limit. Returns (ln S, ⟨n²⟩, var).
    fn brute_force(s: f64) -> (f64, f64, f64) {
        let mut m0 = 1.0;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        for n in 2..=4000u64 {
            let excess = (n * n - 1) as f64;
            let w = (-excess * s).exp();
            m0 += w;
            m1 += w * excess;
            m2 += w * excess * excess;
        }
        let me = m1 / m0;
        (-s + m0.ln(), 1.0 + me, m2 / m0 - me * me)
    }

    #[test]
    fn control_validates_bounds() {
        assert!(SeriesControl::new(1e-14, 200_000).is_ok());
        assert!(SeriesControl::new(0.0, 200_000).is_err());
        assert!(SeriesControl::new(1e-5, 200_000).is_err());
        assert!(SeriesControl::new(1e-14, 999).is_err());
    }

    #[test]
    fn direct_branch_matches_brute_force() {
        let ctrl = SeriesControl::default();
        for &s in &[0.5, 0.8, 1.0, 2.5, 10.0] {
            let t = theta_sums(s, &ctrl).unwrap();
            let (ln_z, mean, var) = brute_force(s);
            assert!(
                (t.ln_sum - ln_z).abs() < 1e-13,
                "ln_sum mismatch at s={s}: {} vs {ln_z}",
                t.ln_sum
            );
            assert!((t.mean_n2 - mean).abs() < 1e-10 * mean.abs());
            assert!((t.var_n2 - var).abs() < 1e-9 * var.abs().max(1e-300));
        }
    }

    #[test]
    fn modular_branch_matches_brute_force() {
        let ctrl = SeriesControl::default();
        for &s in &[0.01, 0.05, 0.2, 0.4, 0.4999] {
            let t = theta_sums(s, &ctrl).unwrap();
            let (ln_z, mean, var) = brute_force(s);
            assert!(
                (t.ln_sum - ln_z).abs() < 1e-12,
                "ln_sum mismatch at s={s}: {} vs {ln_z}",
                t.ln_sum
            );
            assert!(
                (t.mean_n2 - mean).abs() < 1e-10 * mean,
                "mean_n2 mismatch at s={s}: {} vs {mean}",
                t.mean_n2
            );
            assert!(
                (t.var_n2 - var).abs() < 1e-9 * var,
                "var_n2 mismatch at s={s}: {} vs {var}",
                t.var_n2
            );
        }
    }

    #[test]
    fn branches_agree_at_the_switch() {
        let ctrl = SeriesControl::default();
        let lo = theta_sums_modular(MODULAR_SWITCH, &ctrl).unwrap();
        let hi = theta_sums_direct(MODULAR_SWITCH, &ctrl).unwrap();
        assert!((lo.ln_sum - hi.ln_sum).abs() < 1e-13);
        assert!((lo.mean_n2 - hi.mean_n2).abs() < 1e-12 * hi.mean_n2);
        assert!((lo.var_n2 - hi.var_n2).abs() < 1e-11 * hi.var_n2);
    }

    #[test]
    fn deep_freeze_out_keeps_ground_state() {
        // For very large s only n = 1 survives; the factored form must not
        // underflow ln S even when e^{−s} itself does.
        let ctrl = SeriesControl::default();
        let t = theta_sums(5e4, &ctrl).unwrap();
        assert_eq!(t.ln_sum, -5e4);
        assert_eq!(t.mean_n2, 1.0);
        assert!(t.var_n2.abs() < 1e-300);
    }

    #[test]
    fn ln_one_minus_exp_neg_is_accurate() {
        // Moderate x: the naive expression is already well-conditioned.
        for &x in &[0.5f64, 1.0, 5.0] {
            let naive = (1.0 - (-x).exp()).ln();
            let got = ln_one_minus_exp_neg(x);
            assert!((got - naive).abs() <= 1e-14 * naive.abs(), "x={x}: {got} vs {naive}");
        }
        // Small x: check against the expansion ln x − x/2 + x²/24.
        let x = 1e-8f64;
        let series = x.ln() - x / 2.0 + x * x / 24.0;
        assert!((ln_one_minus_exp_neg(x) - series).abs() < 1e-12);
        // Large x: ln(1 − ε) = −ε to first order; the naive route would
        // round 1 − e^{−50} to 1 and lose the value entirely.
        let x = 50.0f64;
        assert!((ln_one_minus_exp_neg(x) + (-x).exp()).abs() < 1e-30);
        // Huge x: 1 − e^{−x} rounds to 1.
        assert_eq!(ln_one_minus_exp_neg(800.0), 0.0);
    }

    #[test]
    fn log_sum_exp_handles_spread_terms() {
        let v = log_sum_exp(&[-1000.0, -1000.0]);
        assert!((v - (-1000.0 + std::f64::consts::LN_2)).abs() < 1e-12);
        let v = log_sum_exp(&[0.0, -800.0]);
        assert!((v - 0.0).abs() < 1e-15);
    }
}
