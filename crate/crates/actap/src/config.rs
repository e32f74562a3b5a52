//! Run configuration: defaults, config-file ingestion, and validation.
//!
//! A run is described by one [`RunConfig`]. Values start from the documented
//! defaults (the 5-site chain driven at `omega_max = 10 ns⁻¹` with target
//! adiabaticity 0.01), are overlaid by an optional TOML config file, and
//! finally by command-line flags.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What a run computes and emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// The two global pulse controls along the protocol.
    Pulses,
    /// Instantaneous eigenvalues along the protocol.
    Spectrum,
    /// Time-dependent populations, adiabaticity, dark-state fidelity.
    Evolve,
    /// Transfer fidelity as a function of protocol duration.
    SweepTmax,
    /// Peak adiabaticity as a function of protocol duration.
    Adiabaticity,
    /// Endpoint overlaps and fidelity under imperfect contrast.
    Contrast,
    /// Fidelity statistics under per-edge multiplicative disorder.
    Disorder,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Pulses => "pulses",
            Experiment::Spectrum => "spectrum",
            Experiment::Evolve => "evolve",
            Experiment::SweepTmax => "sweep-tmax",
            Experiment::Adiabaticity => "adiabaticity",
            Experiment::Contrast => "contrast",
            Experiment::Disorder => "disorder",
        }
    }

    fn default_out(&self) -> PathBuf {
        PathBuf::from(format!("{}.csv", self.name().replace('-', "_")))
    }
}

/// Everything one run needs. Field semantics follow the CLI flags of the
/// same names.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub num_sites: usize,
    pub odd_min: f64,
    pub odd_max: f64,
    pub even_min: f64,
    pub even_max: f64,
    pub t_max: f64,
    /// Integration steps; `None` derives them from the coupling-cycle count.
    pub steps: Option<usize>,
    /// Grid resolution for sampled quantities; `None` uses the
    /// per-experiment default (201 for spectra, 1001 for adiabaticity).
    pub points: Option<usize>,
    pub tmax_grid: Vec<f64>,
    pub a_target: f64,
    pub ratio: f64,
    pub samples: usize,
    pub seed: u64,
    pub scales: Option<Vec<f64>>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            num_sites: 5,
            odd_min: 0.0,
            odd_max: 10.0,
            even_min: 0.0,
            even_max: 10.0,
            t_max: 70.0,
            steps: None,
            points: None,
            tmax_grid: Vec::new(),
            a_target: 0.01,
            ratio: 2.0,
            samples: 100,
            seed: 1,
            scales: None,
            out: experiment.default_out(),
        }
    }

    /// Overlays values parsed from a TOML config file.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        let file: FileConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))?;
        if let Some(chain) = file.chain {
            merge(&mut self.num_sites, chain.num_sites);
            if chain.scales.is_some() {
                self.scales = chain.scales;
            }
        }
        if let Some(p) = file.pulses {
            if let Some(omega_max) = p.omega_max {
                self.odd_max = omega_max;
                self.even_max = omega_max;
            }
            merge(&mut self.odd_min, p.odd_min);
            merge(&mut self.odd_max, p.odd_max);
            merge(&mut self.even_min, p.even_min);
            merge(&mut self.even_max, p.even_max);
            merge(&mut self.t_max, p.t_max);
        }
        if let Some(r) = file.run {
            if r.steps.is_some() {
                self.steps = r.steps;
            }
            if r.points.is_some() {
                self.points = r.points;
            }
            merge(&mut self.seed, r.seed);
            merge(&mut self.out, r.out);
        }
        if let Some(s) = file.sweep {
            if let Some(grid) = s.tmax_grid {
                self.tmax_grid = grid;
            }
            merge(&mut self.a_target, s.a_target);
        }
        if let Some(d) = file.disorder {
            merge(&mut self.ratio, d.ratio);
            merge(&mut self.samples, d.samples);
        }
        Ok(())
    }

    /// Cheap structural checks; physical validation happens when the domain
    /// types are constructed.
    pub fn validate(&self) -> Result<()> {
        if self.num_sites < 3 || self.num_sites.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "num_sites must be odd and >= 3, got {}",
                self.num_sites
            )));
        }
        let needs_grid = matches!(
            self.experiment,
            Experiment::SweepTmax | Experiment::Adiabaticity
        );
        if needs_grid && self.tmax_grid.is_empty() {
            return Err(Error::Config(format!(
                "{} needs a non-empty tmax_grid",
                self.experiment.name()
            )));
        }
        if let Some(grid_min) = self.tmax_grid.iter().cloned().reduce(f64::min) {
            if !grid_min.is_finite() || grid_min <= 0.0 {
                return Err(Error::Config("tmax_grid entries must be > 0".into()));
            }
        }
        Ok(())
    }
}

fn merge<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    chain: Option<ChainSection>,
    pulses: Option<PulsesSection>,
    run: Option<RunSection>,
    sweep: Option<SweepSection>,
    disorder: Option<DisorderSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainSection {
    num_sites: Option<usize>,
    scales: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulsesSection {
    omega_max: Option<f64>,
    odd_min: Option<f64>,
    odd_max: Option<f64>,
    even_min: Option<f64>,
    even_max: Option<f64>,
    t_max: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    steps: Option<usize>,
    points: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    tmax_grid: Option<Vec<f64>>,
    a_target: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DisorderSection {
    ratio: Option<f64>,
    samples: Option<usize>,
}
