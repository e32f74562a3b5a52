//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured numbers (run with `--nocapture` to see them).

use actap::{
    adiabaticity_general, adiabaticity_peak_closed_form, build_hamiltonian, cli, contrast_fidelity,
    dark_state, diagonalize, propagate, required_tmax, sample_disordered_run, steps_for,
    symmetric5_eigensystem, ChainSpec, ContrastSpec, CouplingVector, DisorderSpec, Experiment,
    PulseSchedule, RunConfig, StateVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ideal_setup(num_sites: usize, omega_max: f64, t_max: f64) -> (ChainSpec, PulseSchedule) {
    let schedule = PulseSchedule::ideal(num_sites - 1, omega_max, t_max).unwrap();
    let spec = ChainSpec::new(num_sites, schedule.edge_bounds()).unwrap();
    (spec, schedule)
}

#[test]
fn criterion_01_protocol_time_estimate() {
    let t = required_tmax(10.0, 0.01).unwrap();
    assert!(
        (69.0..=76.0).contains(&t),
        "required_tmax(10, 0.01) = {t} outside [69, 76] ns"
    );
    println!("ACCEPTANCE 1 PASS — required_tmax(10 ns⁻¹, 0.01) = {t:.4} ns ∈ [69, 76]");
}

#[test]
fn criterion_02_adiabaticity_closed_form_at_crossing() {
    for product in [100.0, 700.0, 1000.0] {
        let omega_max = 10.0;
        let t_max = product / omega_max;
        let (spec, schedule) = ideal_setup(5, omega_max, t_max);
        let general = adiabaticity_general(&spec, &schedule, t_max / 2.0).unwrap();
        let closed = adiabaticity_peak_closed_form(omega_max, t_max).unwrap();
        let rel = (general - closed).abs() / closed;
        assert!(
            rel <= 1e-3,
            "product {product}: general {general} vs closed {closed} (rel {rel:.2e})"
        );
    }
    println!(
        "ACCEPTANCE 2 PASS — matrix-element adiabaticity matches 4π/(√3 Ω t) within 0.1% \
         at Ω·t ∈ {{100, 700, 1000}}"
    );
}

#[test]
fn criterion_03_headline_transfer_fidelity() {
    let (spec, schedule) = ideal_setup(5, 10.0, 70.0);
    let initial = StateVector::basis_state(5, 1).unwrap();
    let trace = propagate(&spec, &schedule, &initial, 14_000).unwrap();
    assert!(
        trace.transfer_fidelity >= 0.999,
        "final |5⟩ population {}",
        trace.transfer_fidelity
    );
    let mut max_even = 0.0f64;
    let mut max_center = 0.0f64;
    for row in &trace.populations {
        max_even = max_even.max(row[1]).max(row[3]);
        max_center = max_center.max(row[2]);
    }
    assert!(max_even <= 1e-2, "even-site population reached {max_even}");
    assert!(
        (max_center - 1.0 / 3.0).abs() <= 0.02,
        "center-site peak {max_center} not within 0.33 ± 0.02"
    );
    println!(
        "ACCEPTANCE 3 PASS — F = {:.6}, max even-site population {:.2e}, center peak {:.4}",
        trace.transfer_fidelity, max_even, max_center
    );
}

#[test]
fn criterion_04_contrast_numbers() {
    let f = contrast_fidelity(&ContrastSpec::new(0.5, 10.0, 0.5, 10.0).unwrap());
    let expected = 0.05f64.powi(4) / 8.0;
    assert!(
        (f.first_order_error_rate - expected).abs() <= 1e-12 * expected,
        "error rate {} vs (0.05)⁴/8 = {expected}",
        f.first_order_error_rate
    );
    assert!((7e-7..2e-6).contains(&f.first_order_error_rate));

    let f2 = contrast_fidelity(&ContrastSpec::new(0.1, 10.0, 0.1, 10.0).unwrap());
    let expected2 = 0.01f64.powi(4) / 8.0;
    assert!((f2.first_order_error_rate - expected2).abs() <= 1e-12 * expected2);
    assert!((1e-9..2e-9).contains(&f2.first_order_error_rate));

    let f3 = contrast_fidelity(&ContrastSpec::new(3.0, 10.0, 3.0, 10.0).unwrap());
    assert!(
        f3.first_order >= 0.9989,
        "ratio 0.3 first-order fidelity {}",
        f3.first_order
    );
    println!(
        "ACCEPTANCE 4 PASS — error rates {:.3e} (0.5/10), {:.3e} (0.1/10); \
         ratio 0.3 fidelity {:.6}",
        f.first_order_error_rate, f2.first_order_error_rate, f3.first_order
    );
}

#[test]
fn criterion_05_null_state_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05);
    let mut checked = 0usize;
    for (num_sites, count) in [(5usize, 334usize), (7, 333), (9, 333)] {
        let spec = ChainSpec::uniform(num_sites, 0.0, 10.0).unwrap();
        for _ in 0..count {
            let values: Vec<f64> = (0..num_sites - 1)
                .map(|_| rng.gen_range(0.1..=10.0))
                .collect();
            let om = CouplingVector::new(values).unwrap();
            let d0 = dark_state(&om).unwrap();
            for k in (1..num_sites).step_by(2) {
                assert_eq!(d0.amplitudes()[k].re, 0.0, "even site {k} not exactly zero");
            }
            let h = build_hamiltonian(&spec, &om).unwrap();
            let real: Vec<f64> = d0.amplitudes().iter().map(|a| a.re).collect();
            let resid: f64 = h.apply(&real).iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(
                resid <= 1e-10 * om.norm(),
                "‖H·D₀‖ = {resid:.3e} exceeds 1e-10·‖Ω‖ for {:?}",
                om.values()
            );
            let eigs = diagonalize(&h);
            let numeric = eigs.eigenvector(eigs.zero_index().unwrap());
            let overlap: f64 = real.iter().zip(numeric.iter()).map(|(a, b)| a * b).sum();
            assert!(
                overlap.abs() >= 1.0 - 1e-10,
                "analytic/numeric overlap {overlap} for {:?}",
                om.values()
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 1000);
    println!("ACCEPTANCE 5 PASS — 1000 random chains (5/7/9 sites): ‖H·D₀‖ ≤ 1e-10·‖Ω‖, even sites exactly 0, numeric overlap ≥ 1 − 1e-10");
}

#[test]
fn criterion_06_eigensystem_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x06);
    let spec = ChainSpec::uniform(5, 0.0, 10.0).unwrap();
    for _ in 0..1000 {
        let omega1 = rng.gen_range(0.1..=10.0);
        let omega2 = rng.gen_range(0.1..=10.0);
        let closed = symmetric5_eigensystem(omega1, omega2).unwrap();
        let om = CouplingVector::new(vec![omega1, omega2, omega1, omega2]).unwrap();
        let numeric = diagonalize(&build_hamiltonian(&spec, &om).unwrap());
        let max_abs = numeric
            .eigenvalues()
            .iter()
            .fold(0.0f64, |m, &e| m.max(e.abs()));
        for k in 0..5 {
            assert!(
                (closed.eigenvalues()[k] - numeric.eigenvalues()[k]).abs() <= 1e-10,
                "eigenvalue {k} mismatch at ({omega1}, {omega2})"
            );
            let mirrored = -numeric.eigenvalues()[4 - k];
            assert!(
                (numeric.eigenvalues()[k] - mirrored).abs() <= 1e-10 * max_abs.max(1.0),
                "spectrum asymmetric at ({omega1}, {omega2})"
            );
            let dot: f64 = closed
                .eigenvector(k)
                .iter()
                .zip(numeric.eigenvector(k).iter())
                .map(|(a, b)| a * b)
                .sum();
            assert!(
                dot.abs() >= 1.0 - 1e-8,
                "eigenvector {k} overlap {dot} at ({omega1}, {omega2})"
            );
        }
    }
    println!("ACCEPTANCE 6 PASS — closed-form vs numeric eigensystems agree (eigenvalues 1e-10, vector overlaps 1e-8) over 1000 draws; spectra symmetric about 0");
}

#[test]
fn criterion_07_unitarity_and_mirror_symmetry() {
    let mut worst_drift = 0.0f64;
    for num_sites in [5usize, 7] {
        let (spec, schedule) = ideal_setup(num_sites, 10.0, 70.0);
        let steps = steps_for(10.0, 70.0);
        let fwd = propagate(
            &spec,
            &schedule,
            &StateVector::basis_state(num_sites, 1).unwrap(),
            steps,
        )
        .unwrap();
        assert!(
            fwd.max_norm_drift <= 1e-9,
            "{num_sites}-site norm drift {}",
            fwd.max_norm_drift
        );
        worst_drift = worst_drift.max(fwd.max_norm_drift);
        let rev = propagate(
            &spec,
            &schedule.time_reversed(),
            &StateVector::basis_state(num_sites, num_sites).unwrap(),
            steps,
        )
        .unwrap();
        let back = rev.populations.last().unwrap()[0];
        assert!(
            (back - fwd.transfer_fidelity).abs() <= 1e-9,
            "{num_sites}-site mirror: forward {} vs reversed {back}",
            fwd.transfer_fidelity
        );
    }
    println!(
        "ACCEPTANCE 7 PASS — norm drift ≤ {worst_drift:.2e} (≤ 1e-9); time-reversed runs \
         reproduce forward fidelity to 1e-9"
    );
}

#[test]
fn criterion_08_longer_chains() {
    let mut results = Vec::new();
    for num_sites in [7usize, 9] {
        let (spec, schedule) = ideal_setup(num_sites, 10.0, 70.0);
        let trace = propagate(
            &spec,
            &schedule,
            &StateVector::basis_state(num_sites, 1).unwrap(),
            steps_for(10.0, 70.0),
        )
        .unwrap();
        assert!(
            trace.transfer_fidelity >= 0.99,
            "{num_sites}-site fidelity {}",
            trace.transfer_fidelity
        );
        results.push((num_sites, trace.transfer_fidelity));
    }
    println!(
        "ACCEPTANCE 8 PASS — transfer fidelity {:.6} (7 sites), {:.6} (9 sites) at Ω·t = 700",
        results[0].1, results[1].1
    );
}

#[test]
fn criterion_09_plot_data_regeneration() {
    let dir = tempfile::tempdir().unwrap();

    // Eigenvalue branches: five curves, the middle one pinned at zero.
    let mut config = RunConfig::new(Experiment::Spectrum);
    config.out = dir.path().join("spectrum.csv");
    cli::run(&config).unwrap();
    let mut reader = csv::Reader::from_path(&config.out).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        vec!["t_ns", "E1", "E2", "E3", "E4", "E5"]
    );
    let mut rows = 0;
    for record in reader.records() {
        let record = record.unwrap();
        let e3: f64 = record[3].parse().unwrap();
        assert!(e3.abs() <= 1e-9, "zero branch wanders: E3 = {e3}");
        rows += 1;
    }
    assert_eq!(rows, 201);

    // Populations: crossover with a single transient center bump.
    let mut config = RunConfig::new(Experiment::Evolve);
    config.out = dir.path().join("evolve.csv");
    cli::run(&config).unwrap();
    let mut reader = csv::Reader::from_path(&config.out).unwrap();
    let mut first: Option<Vec<f64>> = None;
    let mut last: Option<Vec<f64>> = None;
    let mut max_center = 0.0f64;
    let mut max_even = 0.0f64;
    for record in reader.records() {
        let record = record.unwrap();
        let row: Vec<f64> = (1..=5).map(|i| record[i].parse().unwrap()).collect();
        if first.is_none() {
            first = Some(row.clone());
        }
        max_center = max_center.max(row[2]);
        max_even = max_even.max(row[1]).max(row[3]);
        last = Some(row);
    }
    let first = first.unwrap();
    let last = last.unwrap();
    assert!(first[0] == 1.0 && last[0] <= 1e-3, "site-1 crossover");
    assert!(last[4] >= 0.999, "site-5 arrival {}", last[4]);
    assert!(
        (max_center - 1.0 / 3.0).abs() <= 0.02,
        "center bump {max_center}"
    );
    assert!(max_even <= 1e-2, "even sites lit up: {max_even}");

    // Peak adiabaticity against protocol duration: A_peak ∝ 1/t_max.
    let mut config = RunConfig::new(Experiment::Adiabaticity);
    config.tmax_grid = vec![35.0, 70.0, 140.0, 700.0];
    config.out = dir.path().join("adiabaticity.csv");
    cli::run(&config).unwrap();
    let mut reader = csv::Reader::from_path(&config.out).unwrap();
    let mut products = Vec::new();
    for record in reader.records() {
        let record = record.unwrap();
        let t_max: f64 = record[0].parse().unwrap();
        let a_peak: f64 = record[1].parse().unwrap();
        products.push(a_peak * t_max);
    }
    assert_eq!(products.len(), 4);
    let (lo, hi) = products
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
            (lo.min(p), hi.max(p))
        });
    assert!(
        (hi - lo) / lo <= 1e-3,
        "A_peak · t_max spread {:.3e} exceeds 0.1%",
        (hi - lo) / lo
    );
    println!(
        "ACCEPTANCE 9 PASS — spectrum has a flat zero branch, populations cross over with one \
         center bump, A_peak·t_max constant to {:.2e}",
        (hi - lo) / lo
    );
}

#[test]
fn criterion_10_disorder_robustness() {
    let (spec, schedule) = ideal_setup(5, 10.0, 70.0);
    let d = DisorderSpec::new(2.0, 100, 0x0A).unwrap();
    let samples = sample_disordered_run(&spec, &schedule, &d).unwrap();
    assert_eq!(samples.len(), 100);
    let mut min_fidelity = f64::INFINITY;
    for s in &samples {
        // Dark state exists and pins |1⟩ exactly at t = 0 for every draw.
        let scaled = schedule
            .clone()
            .with_scales(s.factors.clone())
            .unwrap()
            .evaluate(0.0)
            .unwrap();
        let d0 = dark_state(&scaled).unwrap();
        assert_eq!(d0.amplitudes()[0].re, 1.0);
        let out = s.outcome.as_ref().expect("sample failed");
        min_fidelity = min_fidelity.min(out.transfer_fidelity);
    }
    assert!(
        min_fidelity >= 0.99,
        "minimum disordered fidelity {min_fidelity}"
    );
    println!(
        "ACCEPTANCE 10 PASS — 100 seeds at r = 2: dark state exists for all, \
         min fidelity {min_fidelity:.6} ≥ 0.99"
    );
}
