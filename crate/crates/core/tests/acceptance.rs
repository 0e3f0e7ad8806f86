//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured margin. Run with
//! `cargo test -p twopath --test acceptance -- --nocapture`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use twopath::decoherence::{
    overlap_oracle, sinc_overlap, visibility_for_kd, EmissionModel, QuadratureSpec,
    visibility_after_emission,
};
use twopath::double_slit::{interference_information, pair_information, FringeGeometry};
use twopath::information::{complementarity_split, info_measures, shannon_sum};
use twopath::interferometer::{output_amplitudes, port_probabilities};
use twopath::montecarlo::{
    empirical_information, estimate_visibility, sample_pattern, sample_ports, Mode,
};
use twopath::TwoPathState;

/// Pseudo-random pure states: a = cos(theta), b = sin(theta) with theta
/// uniform on [0, pi/2] and chi uniform on [0, 2*pi).
fn random_states(n: usize, seed: u64) -> Vec<TwoPathState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let theta = rng.random::<f64>() * PI / 2.0;
            let chi = rng.random::<f64>() * TAU;
            TwoPathState::new(theta.cos(), theta.sin(), chi).expect("normalized by construction")
        })
        .collect()
}

fn unit_geometry() -> FringeGeometry {
    FringeGeometry::new(TAU, 1.0, 1.0).unwrap()
}

#[test]
fn criterion_01_complementarity_totality() {
    let mut worst: f64 = 0.0;
    for state in random_states(10_000, 1) {
        let triple = info_measures(&port_probabilities(&state));
        let split = complementarity_split(&triple);
        worst = worst.max((triple.total() - 1.0).abs());
        worst = worst.max((split.total() - 1.0).abs());
    }
    assert!(worst < 1e-12, "worst totality defect {worst}");
    println!("criterion 01 complementarity-totality: PASS (max |total-1| = {worst:.3e})");
}

#[test]
fn criterion_02_unitarity_and_amplitude_route() {
    let mut worst: f64 = 0.0;
    for state in random_states(10_000, 2) {
        let p = port_probabilities(&state);
        worst = worst.max(p.unitarity_defect());
        let amps = output_amplitudes(&state);
        worst = worst.max((amps.psi3.norm_sqr() - p.p3).abs());
        worst = worst.max((amps.psi4.norm_sqr() - p.p4).abs());
    }
    assert!(worst < 1e-12, "worst unitarity defect {worst}");
    println!("criterion 02 unitarity: PASS (max defect = {worst:.3e})");
}

#[test]
fn criterion_03_integral_matches_closed_form_and_modules() {
    let geom = unit_geometry();
    let mut worst_closed: f64 = 0.0;
    let mut worst_cross: f64 = 0.0;
    for state in random_states(100, 3) {
        let integral = interference_information(&state, &geom);
        let closed = 4.0 * state.a().powi(2) * state.b().powi(2);
        worst_closed = worst_closed.max((integral - closed).abs());
        let triple = info_measures(&port_probabilities(&state));
        worst_cross = worst_cross.max((integral - (triple.i2 + triple.i3)).abs());
    }
    assert!(worst_closed < 1e-9, "integral vs closed form {worst_closed}");
    assert!(worst_cross < 1e-9, "integral vs i2+i3 {worst_cross}");
    println!(
        "criterion 03 fringe-information integral: PASS (|int-4a2b2| <= {worst_closed:.3e}, |int-(i2+i3)| <= {worst_cross:.3e})"
    );
}

#[test]
fn criterion_04_pointwise_pair_totality() {
    let geom = unit_geometry();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for state in random_states(100, 40) {
        let i1 = (state.a() * state.a() - state.b() * state.b()).powi(2);
        for _ in 0..100 {
            let y = rng.random::<f64>() * geom.period();
            let (i_a, i_b) = pair_information(y, &state, &geom).unwrap();
            worst = worst.max((i1 + i_a + i_b - 1.0).abs());
        }
    }
    assert!(worst < 1e-12, "worst pointwise totality defect {worst}");
    println!("criterion 04 pointwise pair totality: PASS (max defect = {worst:.3e})");
}

#[test]
fn criterion_05_oracle_convergence() {
    let cutoffs = [100.0, 1000.0, 10_000.0];
    for kd in [0.6283185, 1.0, 2.0, 3.0] {
        let sinc = sinc_overlap(kd, 1.0).unwrap();
        let mut errors = Vec::new();
        for &xi_max in &cutoffs {
            let spec = QuadratureSpec::new(xi_max).unwrap();
            let oracle = overlap_oracle(kd, 1.0, &spec).unwrap();
            errors.push((oracle.value - Complex64::new(sinc, 0.0)).norm());
        }
        assert!(
            errors[1] < 1e-2,
            "kd={kd}: |oracle(1e3) - sinc| = {} >= 1e-2",
            errors[1]
        );
        assert!(
            errors[0] > errors[1] && errors[1] > errors[2],
            "kd={kd}: errors not monotone {errors:?}"
        );
        // Least-squares slope of ln(err) against ln(1/xi_max).
        let xs: Vec<f64> = cutoffs.iter().map(|x| (1.0 / x).ln()).collect();
        let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        let xm = xs.iter().sum::<f64>() / 3.0;
        let ym = ys.iter().sum::<f64>() / 3.0;
        let slope = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - xm) * (y - ym))
            .sum::<f64>()
            / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
        assert!(slope >= 0.8, "kd={kd}: convergence order {slope} < 0.8");
        println!(
            "criterion 05 oracle convergence (kd={kd}): PASS (errors {errors:?}, order {slope:.3})"
        );
    }
}

#[test]
fn criterion_06_fullerene_regime() {
    let v1 = visibility_after_emission(&EmissionModel::from_wavelength(10.0, 1.0, 1).unwrap());
    let v2 = visibility_after_emission(&EmissionModel::from_wavelength(10.0, 1.0, 2).unwrap());
    assert!((v1 - 0.9354893).abs() < 1e-6, "V(N=1) = {v1}");
    assert!((v2 - 0.8751403).abs() < 1e-6, "V(N=2) = {v2}");
    assert!(v1 > 0.85 && v2 > 0.85, "high visibility must survive N <= 2");
    println!("criterion 06 fullerene regime: PASS (V1 = {v1:.7}, V2 = {v2:.7})");
}

#[test]
fn criterion_07_visibility_zeros() {
    let mut worst: f64 = 0.0;
    for m in 1..=3 {
        for n in [1u32, 2, 7] {
            let v = visibility_for_kd(m as f64 * PI, n).unwrap();
            worst = worst.max(v);
        }
    }
    assert!(worst < 1e-12, "visibility at sinc zeros reached {worst}");
    println!("criterion 07 visibility zeros: PASS (max V = {worst:.3e})");
}

#[test]
fn criterion_08_monte_carlo_fidelity() {
    let n = 1_000_000u64;
    let state = TwoPathState::new(0.8, 0.6, PI / 6.0).unwrap();
    let probs = port_probabilities(&state);
    let modes = [
        (Mode::PathMeasurement, probs.p1),
        (Mode::InterferometerOutput, probs.p3),
        (Mode::InterferometerShifted, probs.p3_shift),
    ];

    let mut passing_seeds = 0;
    for seed in 0..100u64 {
        let mut all_within = true;
        for &(mode, p) in &modes {
            let run = sample_ports(&state, mode, n, seed).unwrap();
            let freq = run.counts().unwrap()[0] as f64 / n as f64;
            let bound = 4.0 * (p * (1.0 - p) / n as f64).sqrt();
            if (freq - p).abs() >= bound {
                all_within = false;
            }
        }
        if all_within {
            passing_seeds += 1;
        }
    }
    assert!(passing_seeds >= 99, "only {passing_seeds}/100 seeds within 4 sigma");

    let geom = unit_geometry();
    for (asq, chi, seed) in [(0.5f64, 0.7f64, 8u64), (0.8, 0.0, 9)] {
        let s = TwoPathState::from_probability_split(asq, chi).unwrap();
        let run = sample_pattern(&s, &geom, n, seed).unwrap();
        let est = estimate_visibility(&run, &geom).unwrap();
        let expected = 2.0 * s.a() * s.b();
        assert!(
            (est.value - expected.min(1.0)).abs() < 0.01,
            "asq={asq}: estimate {} vs {expected}",
            est.value
        );
    }

    let path = sample_ports(&state, Mode::PathMeasurement, n, 81).unwrap();
    let output = sample_ports(&state, Mode::InterferometerOutput, n, 82).unwrap();
    let shifted = sample_ports(&state, Mode::InterferometerShifted, n, 83).unwrap();
    let triple = empirical_information(&path, &output, &shifted).unwrap();
    assert!(
        (triple.total() - 1.0).abs() < 0.01,
        "empirical total {}",
        triple.total()
    );
    println!(
        "criterion 08 monte carlo fidelity: PASS ({passing_seeds}/100 seeds, empirical total {:.4})",
        triple.total()
    );
}

#[test]
fn criterion_09_shannon_measure_is_not_constant() {
    let all_left = port_probabilities(&TwoPathState::new(1.0, 0.0, 0.0).unwrap());
    let tilted = port_probabilities(&TwoPathState::new(0.8, 0.6, PI / 6.0).unwrap());
    let s_left = shannon_sum(&all_left);
    let s_tilted = shannon_sum(&tilted);
    assert!((s_left - 1.0).abs() < 1e-12);
    // Direct evaluation of the complemented binary entropies gives
    // 0.8133914013 bits here (30-digit arithmetic agrees); the gap to the
    // all-left state is far above the 0.004 threshold.
    assert!((s_tilted - 0.813391401307447).abs() < 1e-12, "got {s_tilted}");
    assert!((s_left - s_tilted).abs() > 0.004);

    // A chi sweep at fixed amplitudes already spans a gap above 0.1.
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for k in 0..=256 {
        let chi = TAU * k as f64 / 256.0;
        let s = shannon_sum(&port_probabilities(&TwoPathState::new(0.8, 0.6, chi).unwrap()));
        lo = lo.min(s);
        hi = hi.max(s);
    }
    assert!(hi - lo > 0.1, "sweep spread {}", hi - lo);
    println!(
        "criterion 09 shannon non-constancy: PASS ({s_left:.4} vs {s_tilted:.4}, sweep spread {:.4})",
        hi - lo
    );
}

#[test]
fn criterion_10_seeded_cli_runs_are_byte_identical() {
    let exe = env!("CARGO_BIN_EXE_twopath");
    let dir = std::env::temp_dir().join(format!("twopath-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    for (label, args) in [
        (
            "sample-pattern-csv",
            vec![
                "sample", "--mode", "pattern", "--asq", "0.8", "--n", "20000", "--seed", "42",
            ],
        ),
        (
            "pattern-summary-json",
            vec![
                "pattern", "--asq", "0.8", "--samples", "20000", "--seed", "7", "--format", "json",
            ],
        ),
        (
            "sample-output-csv",
            vec![
                "sample", "--mode", "output", "--asq", "0.5", "--chi", "0.3", "--n", "50000",
                "--seed", "11",
            ],
        ),
    ] {
        let mut outputs = Vec::new();
        for pass in 0..2 {
            let path = dir.join(format!("{label}-{pass}"));
            let status = std::process::Command::new(exe)
                .args(&args)
                .arg("--out")
                .arg(&path)
                .status()
                .unwrap();
            assert!(status.success(), "{label}: run {pass} failed");
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{label}: outputs differ between runs");
        assert!(!outputs[0].is_empty());
    }
    std::fs::remove_dir_all(&dir).ok();
    println!("criterion 10 seeded determinism: PASS (byte-identical reruns)");
}
