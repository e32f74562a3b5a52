//! Command-line front end: flag/config merging, experiment execution, and
//! CSV/JSON emission.
//!
//! Every run writes one CSV (header row, floats with 17 significant digits)
//! plus a JSON sidecar of scalar results next to it. Outputs are
//! deterministic: the same config and seed give byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::adiabaticity::{
    adiabaticity_general, adiabaticity_peak_closed_form, adiabaticity_trace, required_tmax,
};
use crate::chain::{build_hamiltonian, ChainSpec};
use crate::config::{Experiment, RunConfig};
use crate::contrast::{
    contrast_fidelity, endpoint_overlap_final, endpoint_overlap_initial, ContrastSpec,
};
use crate::darkstate::StateVector;
use crate::error::{Error, Result};
use crate::evolution::{propagate, steps_for, transfer_fidelity_vs_tmax};
use crate::pulses::{PulseSchedule, PulseSpec};
use crate::robustness::{sample_disordered_run, DisorderSpec};
use crate::spectrum::{diagonalize, gap_to_nearest};

#[derive(Debug, Parser)]
#[command(
    name = "actap",
    version,
    about = "Adiabatic-passage transport simulator for odd chains with alternating couplings"
)]
pub struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Number of chain sites (odd, >= 3).
    #[arg(long, global = true)]
    num_sites: Option<usize>,
    /// Sets the ceiling of both pulses, in ns⁻¹.
    #[arg(long, global = true)]
    omega_max: Option<f64>,
    /// Floor of the odd-TME pulse (Ω₁, Ω₃, …), ns⁻¹.
    #[arg(long, global = true)]
    odd_min: Option<f64>,
    /// Ceiling of the odd-TME pulse, ns⁻¹.
    #[arg(long, global = true)]
    odd_max: Option<f64>,
    /// Floor of the even-TME pulse (Ω₂, Ω₄, …), ns⁻¹.
    #[arg(long, global = true)]
    even_min: Option<f64>,
    /// Ceiling of the even-TME pulse, ns⁻¹.
    #[arg(long, global = true)]
    even_max: Option<f64>,
    /// Protocol duration in ns.
    #[arg(long, global = true)]
    t_max: Option<f64>,
    /// Integration steps (default: 20 per coupling cycle, at least 100).
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Output grid resolution for sampled quantities.
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Comma-separated protocol durations for sweeps, in ns.
    #[arg(long, global = true, value_delimiter = ',')]
    tmax_grid: Option<Vec<f64>>,
    /// Target peak adiabaticity used for the protocol-time estimate.
    #[arg(long, global = true)]
    a_target: Option<f64>,
    /// Disorder band: per-edge factors are log-uniform on [1/ratio, ratio].
    #[arg(long, global = true)]
    ratio: Option<f64>,
    /// Number of disorder samples.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated static per-edge scale factors.
    #[arg(long, global = true, value_delimiter = ',')]
    scales: Option<Vec<f64>>,
    /// Output CSV path (the JSON summary lands next to it).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    experiment: ExperimentCmd,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum ExperimentCmd {
    /// The two pulse controls sampled along the protocol.
    Pulses,
    /// Eigenvalue branches along the protocol.
    Spectrum,
    /// Site populations, adiabaticity, and dark-state fidelity over time.
    Evolve,
    /// Transfer fidelity versus protocol duration.
    SweepTmax,
    /// Peak adiabaticity versus protocol duration.
    Adiabaticity,
    /// Endpoint overlaps and fidelity under imperfect contrast.
    Contrast,
    /// Fidelity statistics under per-edge disorder.
    Disorder,
}

impl From<ExperimentCmd> for Experiment {
    fn from(cmd: ExperimentCmd) -> Self {
        match cmd {
            ExperimentCmd::Pulses => Experiment::Pulses,
            ExperimentCmd::Spectrum => Experiment::Spectrum,
            ExperimentCmd::Evolve => Experiment::Evolve,
            ExperimentCmd::SweepTmax => Experiment::SweepTmax,
            ExperimentCmd::Adiabaticity => Experiment::Adiabaticity,
            ExperimentCmd::Contrast => Experiment::Contrast,
            ExperimentCmd::Disorder => Experiment::Disorder,
        }
    }
}

impl Cli {
    /// Defaults, then config file, then flags.
    pub fn into_config(self) -> Result<RunConfig> {
        let mut config = RunConfig::new(self.experiment.into());
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            config.apply_file(&text)?;
        }
        if let Some(omega_max) = self.omega_max {
            config.odd_max = omega_max;
            config.even_max = omega_max;
        }
        merge(&mut config.num_sites, self.num_sites);
        merge(&mut config.odd_min, self.odd_min);
        merge(&mut config.odd_max, self.odd_max);
        merge(&mut config.even_min, self.even_min);
        merge(&mut config.even_max, self.even_max);
        merge(&mut config.t_max, self.t_max);
        if self.steps.is_some() {
            config.steps = self.steps;
        }
        if self.points.is_some() {
            config.points = self.points;
        }
        if let Some(grid) = self.tmax_grid {
            config.tmax_grid = grid;
        }
        merge(&mut config.a_target, self.a_target);
        merge(&mut config.ratio, self.ratio);
        merge(&mut config.samples, self.samples);
        merge(&mut config.seed, self.seed);
        if self.scales.is_some() {
            config.scales = self.scales;
        }
        merge(&mut config.out, self.out);
        Ok(config)
    }
}

fn merge<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match run(&config) {
        Ok(summary) => {
            println!(
                "{}: wrote {} and {}",
                config.experiment.name(),
                summary.out_csv.display(),
                summary.out_summary.display()
            );
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Scalar results of a run, serialized as the JSON sidecar.
#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub experiment: &'static str,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transfer_fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_peak: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_peak: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_norm_drift: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlap_initial: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlap_final: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_first_order: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_rate_first_order: Option<f64>,
    /// Protocol time needed to reach `a_target` with the configured ceiling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required_tmax: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_samples: Option<usize>,
    pub out_csv: PathBuf,
    pub out_summary: PathBuf,
}

impl RunSummary {
    fn new(config: &RunConfig) -> Self {
        let mut out_summary = config.out.clone();
        out_summary.set_extension("summary.json");
        Self {
            experiment: config.experiment.name(),
            config: config.clone(),
            steps: None,
            transfer_fidelity: None,
            a_peak: None,
            t_peak: None,
            max_norm_drift: None,
            min_gap: None,
            fidelity_min: None,
            fidelity_max: None,
            overlap_initial: None,
            overlap_final: None,
            fidelity_exact: None,
            fidelity_first_order: None,
            error_rate_first_order: None,
            required_tmax: None,
            failed_samples: None,
            out_csv: config.out.clone(),
            out_summary,
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
    writer
        .write_record(header)
        .and_then(|_| rows.iter().try_for_each(|r| writer.write_record(r)))
        .map_err(|e| Error::Config(format!("csv write failed: {e}")))?;
    writer
        .flush()
        .map_err(|e| Error::Config(format!("csv flush failed: {e}")))?;
    Ok(())
}

fn write_summary(summary: &RunSummary) -> Result<()> {
    let mut file = fs::File::create(&summary.out_summary)?;
    let text = serde_json::to_string_pretty(summary)
        .map_err(|e| Error::Config(format!("summary serialization failed: {e}")))?;
    file.write_all(text.as_bytes())?;
    file.write_all(b"\n")?;
    Ok(())
}

fn build_setup(config: &RunConfig) -> Result<(ChainSpec, PulseSchedule)> {
    let odd = PulseSpec::new(config.odd_min, config.odd_max)?;
    let even = PulseSpec::new(config.even_min, config.even_max)?;
    let mut schedule = PulseSchedule::new(config.num_sites - 1, config.t_max, odd, even)?;
    if let Some(scales) = &config.scales {
        schedule = schedule.with_scales(scales.clone())?;
    }
    let spec = ChainSpec::new(config.num_sites, schedule.edge_bounds())?;
    Ok((spec, schedule))
}

/// Executes the configured experiment, writes its CSV and JSON sidecar, and
/// returns the summary.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    config.validate()?;
    let mut summary = RunSummary::new(config);
    let omega_ceiling = config.odd_max.max(config.even_max);
    if omega_ceiling > 0.0 && config.a_target > 0.0 && config.a_target < 1.0 {
        summary.required_tmax = Some(required_tmax(omega_ceiling, config.a_target)?);
    }

    match config.experiment {
        Experiment::Pulses => run_pulses(config, &mut summary)?,
        Experiment::Spectrum => run_spectrum(config, &mut summary)?,
        Experiment::Evolve => run_evolve(config, &mut summary)?,
        Experiment::SweepTmax => run_sweep_tmax(config, &mut summary)?,
        Experiment::Adiabaticity => run_adiabaticity(config, &mut summary)?,
        Experiment::Contrast => run_contrast(config, &mut summary)?,
        Experiment::Disorder => run_disorder(config, &mut summary)?,
    }

    write_summary(&summary)?;
    Ok(summary)
}

fn run_pulses(config: &RunConfig, _summary: &mut RunSummary) -> Result<()> {
    let (_, schedule) = build_setup(config)?;
    let points = config.points.unwrap_or(201).max(2);
    let header: Vec<String> = ["t_ns", "omega_odd", "omega_even"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = (0..points)
        .map(|i| {
            let t = config.t_max * i as f64 / (points - 1) as f64;
            let (odd, even) = schedule.control_values(t)?;
            Ok(vec![fmt(t), fmt(odd), fmt(even)])
        })
        .collect::<Result<_>>()?;
    write_csv(&config.out, &header, &rows)
}

fn run_spectrum(config: &RunConfig, summary: &mut RunSummary) -> Result<()> {
    let (spec, schedule) = build_setup(config)?;
    let points = config.points.unwrap_or(201).max(2);
    let n = spec.num_sites();

    let mut header = vec!["t_ns".to_string()];
    header.extend((1..=n).map(|k| format!("E{k}")));

    let mut rows = Vec::with_capacity(points);
    let mut min_gap = f64::INFINITY;
    for i in 0..points {
        let t = config.t_max * i as f64 / (points - 1) as f64;
        let eigs = diagonalize(&build_hamiltonian(&spec, &schedule.evaluate(t)?)?);
        if let Ok(gap) = gap_to_nearest(&eigs) {
            min_gap = min_gap.min(gap);
        }
        let mut row = vec![fmt(t)];
        row.extend(eigs.eigenvalues().iter().map(|&e| fmt(e)));
        rows.push(row);
    }
    if min_gap.is_finite() {
        summary.min_gap = Some(min_gap);
    }
    write_csv(&config.out, &header, &rows)
}

fn run_evolve(config: &RunConfig, summary: &mut RunSummary) -> Result<()> {
    let (spec, schedule) = build_setup(config)?;
    let steps = config
        .steps
        .unwrap_or_else(|| steps_for(schedule.max_coupling(), config.t_max));
    let initial = StateVector::basis_state(spec.num_sites(), 1)?;
    let trace = propagate(&spec, &schedule, &initial, steps)?;

    let n = spec.num_sites();
    let mut header = vec!["t_ns".to_string()];
    header.extend((1..=n).map(|k| format!("P{k}")));
    header.push("A_t".to_string());
    header.push("D0_fidelity".to_string());

    let mut a_peak = f64::NEG_INFINITY;
    let mut t_peak = 0.0;
    let mut rows = Vec::with_capacity(trace.times.len());
    for (i, &t) in trace.times.iter().enumerate() {
        let a_t = adiabaticity_general(&spec, &schedule, t).ok();
        if let Some(a) = a_t {
            if a > a_peak {
                a_peak = a;
                t_peak = t;
            }
        }
        let mut row = vec![fmt(t)];
        row.extend(trace.populations[i].iter().map(|&p| fmt(p)));
        row.push(fmt_opt(a_t));
        row.push(fmt_opt(trace.dark_state_fidelity[i]));
        rows.push(row);
    }

    summary.steps = Some(steps);
    summary.transfer_fidelity = Some(trace.transfer_fidelity);
    summary.max_norm_drift = Some(trace.max_norm_drift);
    if a_peak.is_finite() {
        summary.a_peak = Some(a_peak);
        summary.t_peak = Some(t_peak);
    }
    write_csv(&config.out, &header, &rows)
}

fn run_sweep_tmax(config: &RunConfig, summary: &mut RunSummary) -> Result<()> {
    let (spec, schedule) = build_setup(config)?;
    let pairs = transfer_fidelity_vs_tmax(&spec, &schedule, &config.tmax_grid)?;

    let header: Vec<String> = [
        "t_max_ns",
        "num_sites",
        "omega_ceiling",
        "steps",
        "transfer_fidelity",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let omega_ceiling = schedule.max_coupling();
    let rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|&(t_max, fidelity)| {
            vec![
                fmt(t_max),
                config.num_sites.to_string(),
                fmt(omega_ceiling),
                steps_for(omega_ceiling, t_max).to_string(),
                fmt(fidelity),
            ]
        })
        .collect();

    summary.fidelity_min = pairs.iter().map(|p| p.1).reduce(f64::min);
    summary.fidelity_max = pairs.iter().map(|p| p.1).reduce(f64::max);
    write_csv(&config.out, &header, &rows)
}

fn run_adiabaticity(config: &RunConfig, summary: &mut RunSummary) -> Result<()> {
    let (spec, schedule) = build_setup(config)?;
    let points = config.points.unwrap_or(1001).max(2);
    let omega_ceiling = config.odd_max.max(config.even_max);

    let traces: Vec<(f64, f64, f64)> = config
        .tmax_grid
        .par_iter()
        .map(|&t_max| {
            let sched = schedule.with_t_max(t_max)?;
            let trace = adiabaticity_trace(&spec, &sched, points)?;
            Ok((t_max, trace.a_peak, trace.t_peak))
        })
        .collect::<Result<_>>()?;

    let header: Vec<String> = ["t_max_ns", "a_peak", "t_peak_ns", "a_peak_closed_form"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = traces
        .iter()
        .map(|&(t_max, a_peak, t_peak)| {
            let closed = adiabaticity_peak_closed_form(omega_ceiling, t_max).ok();
            vec![fmt(t_max), fmt(a_peak), fmt(t_peak), fmt_opt(closed)]
        })
        .collect();

    summary.a_peak = traces.iter().map(|t| t.1).reduce(f64::max);
    write_csv(&config.out, &header, &rows)
}

fn run_contrast(config: &RunConfig, summary: &mut RunSummary) -> Result<()> {
    let c = ContrastSpec::new(
        config.odd_min,
        config.odd_max,
        config.even_min,
        config.even_max,
    )?;
    let initial = endpoint_overlap_initial(&c);
    let fin = endpoint_overlap_final(&c);
    let fid = contrast_fidelity(&c);

    let header: Vec<String> = [
        "omega1_min",
        "omega1_max",
        "omega2_min",
        "omega2_max",
        "overlap_initial",
        "overlap_final",
        "fidelity_exact",
        "fidelity_first_order",
        "error_rate_first_order",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let rows = vec![vec![
        fmt(c.omega1_min),
        fmt(c.omega1_max),
        fmt(c.omega2_min),
        fmt(c.omega2_max),
        fmt(initial),
        fmt(fin),
        fmt(fid.exact),
        fmt(fid.first_order),
        fmt(fid.first_order_error_rate),
    ]];

    summary.overlap_initial = Some(initial);
    summary.overlap_final = Some(fin);
    summary.fidelity_exact = Some(fid.exact);
    summary.fidelity_first_order = Some(fid.first_order);
    summary.error_rate_first_order = Some(fid.first_order_error_rate);
    write_csv(&config.out, &header, &rows)
}

fn run_disorder(config: &RunConfig, summary: &mut RunSummary) -> Result<()> {
    let (spec, schedule) = build_setup(config)?;
    let d = DisorderSpec::new(config.ratio, config.samples, config.seed)?;
    let samples = sample_disordered_run(&spec, &schedule, &d)?;

    let mut header = vec!["sample".to_string()];
    header.extend((1..=spec.num_edges()).map(|k| format!("factor{k}")));
    header.push("status".to_string());
    header.push("transfer_fidelity".to_string());
    header.push("a_peak".to_string());

    let mut failed = 0usize;
    let mut fid_min = f64::INFINITY;
    let mut fid_max = f64::NEG_INFINITY;
    let mut a_max = f64::NEG_INFINITY;
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| {
            let mut row = vec![s.index.to_string()];
            row.extend(s.factors.iter().map(|&f| fmt(f)));
            match &s.outcome {
                Ok(out) => {
                    fid_min = fid_min.min(out.transfer_fidelity);
                    fid_max = fid_max.max(out.transfer_fidelity);
                    a_max = a_max.max(out.a_peak);
                    row.push("ok".to_string());
                    row.push(fmt(out.transfer_fidelity));
                    row.push(fmt(out.a_peak));
                }
                Err(e) => {
                    failed += 1;
                    row.push(format!("error: {e}"));
                    row.push(String::new());
                    row.push(String::new());
                }
            }
            row
        })
        .collect();

    summary.failed_samples = Some(failed);
    if fid_min.is_finite() {
        summary.fidelity_min = Some(fid_min);
        summary.fidelity_max = Some(fid_max);
        summary.a_peak = Some(a_max);
    }
    write_csv(&config.out, &header, &rows)
}
