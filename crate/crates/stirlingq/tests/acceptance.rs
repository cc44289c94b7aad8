//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance is pinned in code next to its assertion.

use std::time::Instant;

use stirlingq::{
    carnot, maximize_efficiency, pib_heat_capacity_max, run_cycle, thermo_point, zero_work_length,
    CycleInput, CycleResult, Medium, SeriesControl, Stage,
};

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($fmt)+));
        }
    };
}

fn report(name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("{name}: PASS"),
        Err(msg) => {
            println!("{name}: FAIL — {msg}");
            panic!("{name}: {msg}");
        }
    }
}

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

fn ho(u: f64) -> Medium {
    Medium::harmonic_oscillator(u, 1).unwrap()
}

fn pib(ell: f64, barriers: u32) -> Medium {
    Medium::particle_in_box(ell, barriers, 1.0).unwrap()
}

fn cycle(medium: Medium, r: f64) -> CycleResult {
    run_cycle(&CycleInput::new(medium, r, ctrl()).unwrap()).unwrap()
}

#[test]
fn criterion_1_table1_reproduction() {
    report("criterion 1 (HO efficiency-maximum table)", (|| {
        let rows = [
            (5.0, 2.66, 0.47),
            (10.0, 4.15, 0.68),
            (15.0, 5.58, 0.77),
            (50.0, 14.57, 0.92),
            (150.0, 36.93, 0.97),
            (350.0, 77.14, 0.98),
        ];
        let start = Instant::now();
        for (u, r_ref, eta_ref) in rows {
            let opt = maximize_efficiency(&ho(u), &ctrl()).map_err(|e| e.to_string())?;
            ensure!(
                (opt.r_star - r_ref).abs() <= 0.02 * r_ref,
                "u={u}: r* = {} vs {r_ref} (±2% rel)",
                opt.r_star
            );
            ensure!(
                (opt.value - eta_ref).abs() <= 0.01,
                "u={u}: eta_max = {} vs {eta_ref} (±0.01)",
                opt.value
            );
            let eta_c = carnot(opt.r_star);
            ensure!(
                (eta_c - (1.0 - 1.0 / opt.r_star)).abs() <= 0.005,
                "u={u}: carnot column mismatch"
            );
        }
        let elapsed = start.elapsed();
        ensure!(
            elapsed.as_secs_f64() < 10.0,
            "table 1 took {:.2} s (budget 10 s)",
            elapsed.as_secs_f64()
        );
        Ok(())
    })());
}

#[test]
fn criterion_2_table2_reproduction() {
    report("criterion 2 (PIB efficiency-maximum table)", (|| {
        let rows = [
            (1.0 / 3.0, 3.669, 0.585),
            (0.25, 5.850, 0.749),
            (0.2, 8.488, 0.833),
            (0.1, 28.067, 0.954),
            (0.05, 95.988, 0.987),
        ];
        let start = Instant::now();
        for (ell, r_ref, eta_ref) in rows {
            let opt = maximize_efficiency(&pib(ell, 1), &ctrl()).map_err(|e| e.to_string())?;
            ensure!(
                (opt.r_star - r_ref).abs() <= 0.02 * r_ref,
                "ell={ell}: r* = {} vs {r_ref} (±2% rel)",
                opt.r_star
            );
            ensure!(
                (opt.value - eta_ref).abs() <= 0.005,
                "ell={ell}: eta_max = {} vs {eta_ref} (±0.005)",
                opt.value
            );
        }
        let elapsed = start.elapsed();
        ensure!(
            elapsed.as_secs_f64() < 30.0,
            "table 2 took {:.2} s (budget 30 s)",
            elapsed.as_secs_f64()
        );
        Ok(())
    })());
}

#[test]
fn criterion_3_asymptotes() {
    report("criterion 3 (work and efficiency asymptotes)", (|| {
        let stiff = cycle(ho(50.0), 2.0);
        let ln2 = std::f64::consts::LN_2;
        ensure!(
            (stiff.w_net - ln2).abs() <= 1e-3,
            "W_net(u=50, r=2) = {} vs ln 2 (±1e-3)",
            stiff.w_net
        );
        let eta = stiff.efficiency.ok_or("u=50, r=2 not in engine regime")?;
        ensure!(
            (eta - 0.5).abs() <= 1e-3,
            "eta(u=50, r=2) = {eta} vs Carnot 0.5 (±1e-3)"
        );
        let hot = cycle(ho(5.0), 1e4);
        let limit = ((1.0 + 5f64.exp()) / 2.0).ln() - 2.5;
        ensure!(
            (hot.w_net - limit).abs() <= 1e-2,
            "W_net(u=5, r=1e4) = {} vs {limit} (±1e-2)",
            hot.w_net
        );
        Ok(())
    })());
}

#[test]
fn criterion_4_zero_work_crossing() {
    report("criterion 4 (zero-work box length)", (|| {
        let ell = zero_work_length(2.0, 1, 1.0, &ctrl()).map_err(|e| e.to_string())?;
        ensure!(
            (ell - 0.65).abs() <= 0.01,
            "zero-work length = {ell} vs 0.65 (±0.01)"
        );
        Ok(())
    })());
}

#[test]
fn criterion_5_multi_barrier_low_temperature() {
    report("criterion 5 (multi-barrier low-temperature limit)", (|| {
        let c = cycle(pib(0.05, 2), 2.0);
        let ln3 = 3f64.ln();
        ensure!(
            (c.w_net - ln3).abs() <= 1e-3,
            "W_net(ell=0.05, B=2, r=2) = {} vs ln 3 (±1e-3)",
            c.w_net
        );
        let etas: Vec<f64> = (1..=3)
            .map(|b| cycle(pib(0.05, b), 2.0).efficiency.unwrap())
            .collect();
        for (i, eta) in etas.iter().enumerate() {
            ensure!(
                (eta - etas[0]).abs() <= 1e-3,
                "eta(B={}) = {eta} vs eta(B=1) = {} (±1e-3)",
                i + 1,
                etas[0]
            );
        }
        Ok(())
    })());
}

#[test]
fn criterion_6_spot_efficiencies() {
    report("criterion 6 (spot efficiencies)", (|| {
        let cases = [
            (5.0, 2.0, 0.43),
            (5.0, 3.0, 0.46),
            (5.0, 4.0, 0.41),
            (10.0, 2.0, 0.49),
            (10.0, 3.0, 0.64),
            (10.0, 4.0, 0.68),
        ];
        for (u, r, eta_ref) in cases {
            let eta = cycle(ho(u), r)
                .efficiency
                .ok_or_else(|| format!("u={u}, r={r} not in engine regime"))?;
            ensure!(
                (eta - eta_ref).abs() <= 0.01,
                "eta(u={u}, r={r}) = {eta} vs {eta_ref} (±0.01)"
            );
        }
        Ok(())
    })());
}

#[test]
fn criterion_7_property_suites() {
    report("criterion 7 (property suites)", (|| {
        let ctrl = ctrl();

        // First-law closure and Carnot bound over a 400-point grid per medium.
        let ratios: Vec<f64> = (0..20).map(|i| 1.0 + 99.0 * i as f64 / 19.0).collect();
        let ho_grid: Vec<f64> = (0..20).map(|i| 0.2 + i as f64).collect();
        let pib_grid: Vec<f64> = (0..20).map(|i| 0.05 + 0.1 * i as f64).collect();
        let mut points = 0usize;
        for (medium, r) in ho_grid
            .iter()
            .flat_map(|&u| ratios.iter().map(move |&r| (ho(u), r)))
            .chain(
                pib_grid
                    .iter()
                    .flat_map(|&ell| ratios.iter().map(move |&r| (pib(ell, 1), r))),
            )
        {
            let c = cycle(medium, r);
            let residual = (c.w_net - (c.q12 + c.q23 + c.q34 + c.q41)).abs();
            ensure!(
                residual <= 1e-9 * c.w_net.abs().max(1.0),
                "first-law residual {residual:e} at {medium:?}, r={r}"
            );
            if let Some(eta) = c.efficiency {
                ensure!(
                    eta <= carnot(r) + 1e-9,
                    "Carnot violation at {medium:?}, r={r}: {eta} > {}",
                    carnot(r)
                );
            }
            points += 1;
        }
        ensure!(points == 800, "expected 800 grid points, ran {points}");

        // Closed form vs direct-sum oracle.
        for medium in [ho(1.0), ho(5.0), pib(0.5, 1), pib(0.3, 2)] {
            for stage in [Stage::FreeHot, Stage::BarrierHot] {
                let s = medium.stage_spectrum(stage).unwrap();
                for tau in [0.2, 1.0, 5.0] {
                    let closed = s.ln_partition(tau, &ctrl).unwrap();
                    let series = s.ln_partition_series(tau, &ctrl).unwrap();
                    ensure!(
                        (closed - series).abs() <= 1e-10,
                        "closed-vs-series gap {:e} at {medium:?} {stage:?} tau={tau}",
                        (closed - series).abs()
                    );
                }
            }
        }

        // Derivatives vs central finite differences.
        for medium in [ho(2.0), pib(0.4, 1)] {
            let s = medium.stage_spectrum(Stage::BarrierHot).unwrap();
            for tau in [0.5, 1.0, 5.0] {
                let beta = 1.0 / tau;
                let h = 1e-6 * tau * tau;
                let lnz = |b: f64| s.ln_partition(1.0 / b, &ctrl).unwrap();
                let fd = (lnz(beta + h) - lnz(beta - h)) / (2.0 * h);
                let exact = s.dlnz_dbeta(tau, &ctrl).unwrap();
                ensure!(
                    (exact - fd).abs() <= 1e-6 * exact.abs(),
                    "derivative mismatch at {medium:?} tau={tau}: {exact} vs {fd}"
                );
            }
        }

        // Asymmetric d = 1 ≡ symmetric, multi-barrier B = 1 ≡ single.
        let sym = pib(0.5, 1).stage_spectrum(Stage::BarrierHot).unwrap();
        let via_asym_path = Medium::particle_in_box(0.5, 1, 1.0 - 1e-14)
            .unwrap()
            .stage_spectrum(Stage::BarrierHot)
            .unwrap();
        for tau in [0.3, 1.0, 4.0] {
            let a = via_asym_path.ln_partition(tau, &ctrl).unwrap();
            let b = sym.ln_partition(tau, &ctrl).unwrap();
            ensure!(
                (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                "asym/sym gap at tau={tau}: {a} vs {b}"
            );
        }
        let single = pib(0.5, 1).stage_spectrum(Stage::BarrierHot).unwrap();
        let multi_b1 = pib(0.5, 1).stage_spectrum(Stage::BarrierCold).unwrap();
        let la: Vec<_> = single.levels().take(50).collect();
        let lb: Vec<_> = multi_b1.levels().take(50).collect();
        ensure!(la == lb, "B=1 spectra differ between stages");
        for tau in [0.3, 1.0, 4.0] {
            let a = single.ln_partition(tau, &ctrl).unwrap();
            let b = multi_b1.ln_partition(tau, &ctrl).unwrap();
            ensure!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "B=1 gap at tau={tau}");
        }
        Ok(())
    })());
}

#[test]
fn criterion_8_heat_capacity() {
    report("criterion 8 (heat-capacity structure)", (|| {
        let (_, c_max) = pib_heat_capacity_max(0.5, &ctrl()).map_err(|e| e.to_string())?;
        ensure!(
            (c_max - 0.5625).abs() <= 0.005,
            "PIB C_max = {c_max} vs 9/16 (±0.005)"
        );

        let ho_spec = ho(1.0).stage_spectrum(Stage::FreeHot).unwrap();
        let c_ho = thermo_point(&ho_spec, 100.0, &ctrl()).unwrap().heat_capacity;
        ensure!(
            (c_ho - 1.0).abs() <= 1e-3,
            "HO C(tau=100) = {c_ho} vs 1 (±1e-3)"
        );

        let box_spec = pib(0.5, 1).stage_spectrum(Stage::FreeHot).unwrap();
        let c_box = thermo_point(&box_spec, 200.0, &ctrl()).unwrap().heat_capacity;
        ensure!(
            c_box > 0.5 && c_box < 0.52,
            "PIB C(tau=200) = {c_box}, expected in (0.5, 0.52)"
        );
        Ok(())
    })());
}
