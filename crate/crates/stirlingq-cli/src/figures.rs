//! Per-figure CSV builders: one x column, one column per curve.
//!
//! Grids and curve families per figure:
//!
//!   2  HO work/efficiency vs frequency at r ∈ {2, 3, 4}
//!   3  HO work/efficiency vs ratio at u ∈ {5, 10, 15}
//!   4  HO normalized efficiency η/η_C vs ratio
//!   5  HO heat decomposition Q12, Q23, Q34, Q41 vs ratio at u = 5
//!   6  PIB work/efficiency vs half-length at r ∈ {2, 3, 4}
//!   7  PIB work/efficiency (and η/η_C) vs ratio at a = λ/3, λ/4, λ/5
//!   8  PIB multi-barrier work/efficiency vs half-length at r = 2
//!   9  PIB asymmetric work/efficiency vs half-length at r = 2
//!  10  PIB asymmetric work/efficiency vs ratio at d = 0.95
//!
//! Grid densities are configurable; the barrier and ratio sets of figures
//! 8 and 9 are flag-overridable.

use stirlingq::{carnot, run_cycle, CycleInput, CycleResult, Medium, Result, SeriesControl};

use crate::output::{Cell, CsvTable};

pub const DEFAULT_BARRIER_SET: [u32; 3] = [1, 2, 3];
pub const DEFAULT_D_SET: [f64; 3] = [0.95, 0.9, 0.8];

fn linear(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    v[0] = lo;
    v[n - 1] = hi;
    v
}

fn cycle(medium: Medium, r: f64, ctrl: &SeriesControl) -> Result<CycleResult> {
    run_cycle(&CycleInput {
        medium,
        temperature_ratio: r,
        ctrl: *ctrl,
    })
}

fn trim(x: f64) -> String {
    let s = format!("{x}");
    s.replace('.', "p")
}

/// Build the CSV for figure `n` (2..=10).
pub fn figure_table(
    n: u32,
    points: usize,
    barrier_set: &[u32],
    d_set: &[f64],
    ctrl: &SeriesControl,
) -> Result<CsvTable> {
    match n {
        2 => {
            let ratios = [2.0, 3.0, 4.0];
            let grid = linear(0.1, 20.0, points);
            let mut header = vec!["u".to_string()];
            header.extend(ratios.iter().map(|r| format!("W_net_r{r}")));
            header.extend(ratios.iter().map(|r| format!("eta_r{r}")));
            let mut t = CsvTable::new(header);
            for &u in &grid {
                let m = Medium::harmonic_oscillator(u, 1)?;
                let results: Vec<CycleResult> = ratios
                    .iter()
                    .map(|&r| cycle(m, r, ctrl))
                    .collect::<Result<_>>()?;
                let mut row = vec![Cell::Num(u)];
                row.extend(results.iter().map(|c| Cell::Num(c.w_net)));
                row.extend(results.iter().map(|c| Cell::opt(c.efficiency)));
                t.push(row);
            }
            Ok(t)
        }
        3 | 4 => {
            let us = [5.0, 10.0, 15.0];
            // η/η_C needs r > 1; the work/efficiency plot starts at r = 1.
            let grid = if n == 4 {
                linear(1.001, 20.0, points)
            } else {
                linear(1.0, 20.0, points)
            };
            let mut header = vec!["r".to_string()];
            if n == 3 {
                header.extend(us.iter().map(|u| format!("W_net_u{u}")));
                header.extend(us.iter().map(|u| format!("eta_u{u}")));
            } else {
                header.extend(us.iter().map(|u| format!("eta_over_carnot_u{u}")));
            }
            let mut t = CsvTable::new(header);
            for &r in &grid {
                let results: Vec<CycleResult> = us
                    .iter()
                    .map(|&u| cycle(Medium::harmonic_oscillator(u, 1)?, r, ctrl))
                    .collect::<Result<_>>()?;
                let mut row = vec![Cell::Num(r)];
                if n == 3 {
                    row.extend(results.iter().map(|c| Cell::Num(c.w_net)));
                    row.extend(results.iter().map(|c| Cell::opt(c.efficiency)));
                } else {
                    let bound = carnot(r);
                    row.extend(
                        results
                            .iter()
                            .map(|c| Cell::opt(c.efficiency.map(|e| e / bound))),
                    );
                }
                t.push(row);
            }
            Ok(t)
        }
        5 => {
            let u = 5.0;
            let grid = linear(1.0, 10.0, points);
            let mut t = CsvTable::new(
                ["r", "Q12", "Q23", "Q34", "Q41"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            let m = Medium::harmonic_oscillator(u, 1)?;
            for &r in &grid {
                let c = cycle(m, r, ctrl)?;
                t.push(vec![
                    Cell::Num(r),
                    Cell::Num(c.q12),
                    Cell::Num(c.q23),
                    Cell::Num(c.q34),
                    Cell::Num(c.q41),
                ]);
            }
            Ok(t)
        }
        6 => {
            let ratios = [2.0, 3.0, 4.0];
            let grid = linear(0.05, 1.2, points);
            let mut header = vec!["ell".to_string()];
            header.extend(ratios.iter().map(|r| format!("W_net_r{r}")));
            header.extend(ratios.iter().map(|r| format!("eta_r{r}")));
            let mut t = CsvTable::new(header);
            for &ell in &grid {
                let m = Medium::particle_in_box(ell, 1, 1.0)?;
                let results: Vec<CycleResult> = ratios
                    .iter()
                    .map(|&r| cycle(m, r, ctrl))
                    .collect::<Result<_>>()?;
                let mut row = vec![Cell::Num(ell)];
                row.extend(results.iter().map(|c| Cell::Num(c.w_net)));
                row.extend(results.iter().map(|c| Cell::opt(c.efficiency)));
                t.push(row);
            }
            Ok(t)
        }
        7 | 10 => {
            // λ/3, λ/4, λ/5 boxes vs ratio; figure 10 repeats the layout
            // with one barrier inserted off-centre at d = 0.95.
            let lengths = [(3u32, 1.0 / 3.0), (4, 0.25), (5, 0.2)];
            let d = if n == 10 { 0.95 } else { 1.0 };
            let grid = linear(1.0, 20.0, points);
            let mut header = vec!["r".to_string()];
            header.extend(lengths.iter().map(|(k, _)| format!("W_net_lam{k}")));
            header.extend(lengths.iter().map(|(k, _)| format!("eta_lam{k}")));
            if n == 7 {
                header.extend(
                    lengths
                        .iter()
                        .map(|(k, _)| format!("eta_over_carnot_lam{k}")),
                );
            }
            let mut t = CsvTable::new(header);
            for &r in &grid {
                let results: Vec<CycleResult> = lengths
                    .iter()
                    .map(|&(_, ell)| cycle(Medium::particle_in_box(ell, 1, d)?, r, ctrl))
                    .collect::<Result<_>>()?;
                let mut row = vec![Cell::Num(r)];
                row.extend(results.iter().map(|c| Cell::Num(c.w_net)));
                row.extend(results.iter().map(|c| Cell::opt(c.efficiency)));
                if n == 7 {
                    let bound = carnot(r);
                    row.extend(results.iter().map(|c| {
                        Cell::opt(c.efficiency.filter(|_| bound > 0.0).map(|e| e / bound))
                    }));
                }
                t.push(row);
            }
            Ok(t)
        }
        8 => {
            let r = 2.0;
            let grid = linear(0.05, 1.5, points);
            let mut header = vec!["ell".to_string()];
            header.extend(barrier_set.iter().map(|b| format!("W_net_B{b}")));
            header.extend(barrier_set.iter().map(|b| format!("eta_B{b}")));
            let mut t = CsvTable::new(header);
            for &ell in &grid {
                let results: Vec<CycleResult> = barrier_set
                    .iter()
                    .map(|&b| cycle(Medium::particle_in_box(ell, b, 1.0)?, r, ctrl))
                    .collect::<Result<_>>()?;
                let mut row = vec![Cell::Num(ell)];
                row.extend(results.iter().map(|c| Cell::Num(c.w_net)));
                row.extend(results.iter().map(|c| Cell::opt(c.efficiency)));
                t.push(row);
            }
            Ok(t)
        }
        9 => {
            let r = 2.0;
            let grid = linear(0.05, 1.5, points);
            let mut header = vec!["ell".to_string()];
            header.extend(d_set.iter().map(|d| format!("W_net_d{}", trim(*d))));
            header.extend(d_set.iter().map(|d| format!("eta_d{}", trim(*d))));
            let mut t = CsvTable::new(header);
            for &ell in &grid {
                let results: Vec<CycleResult> = d_set
                    .iter()
                    .map(|&d| cycle(Medium::particle_in_box(ell, 1, d)?, r, ctrl))
                    .collect::<Result<_>>()?;
                let mut row = vec![Cell::Num(ell)];
                row.extend(results.iter().map(|c| Cell::Num(c.w_net)));
                row.extend(results.iter().map(|c| Cell::opt(c.efficiency)));
                t.push(row);
            }
            Ok(t)
        }
        _ => Err(stirlingq::Error::Config(format!(
            "figure number must lie in 2..=10, got {n}"
        ))),
    }
}
