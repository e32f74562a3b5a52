//! Disorder studies: randomized per-edge TME scale factors standing in for
//! fabrication spread, with fidelity and adiabaticity statistics per sample.
//!
//! Factors are drawn log-uniformly from `[1/r, r]` — TMEs depend
//! exponentially on site spacing, so placement straggle acts multiplicatively.
//! Each sample gets its own RNG stream derived from `(seed, index)`, making
//! batches deterministic and order-independent under parallel execution.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::adiabaticity::adiabaticity_trace;
use crate::chain::ChainSpec;
use crate::darkstate::StateVector;
use crate::error::{Error, Result};
use crate::evolution::{propagate, steps_for};
use crate::pulses::PulseSchedule;

/// Multiplicative disorder model: log-uniform factors on `[1/ratio, ratio]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderSpec {
    pub ratio: f64,
    pub samples: usize,
    pub seed: u64,
}

impl DisorderSpec {
    pub fn new(ratio: f64, samples: usize, seed: u64) -> Result<Self> {
        if !ratio.is_finite() || ratio < 1.0 {
            return Err(Error::Domain(format!("ratio must be >= 1, got {ratio}")));
        }
        if samples == 0 {
            return Err(Error::Domain("samples must be >= 1".into()));
        }
        Ok(Self {
            ratio,
            samples,
            seed,
        })
    }
}

/// Scalar results of one disordered run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderOutcome {
    pub transfer_fidelity: f64,
    pub a_peak: f64,
}

/// One disorder draw: the factors applied and what the run produced. Failed
/// runs keep their error instead of aborting the batch.
#[derive(Debug)]
pub struct DisorderSample {
    pub index: usize,
    pub factors: Vec<f64>,
    pub outcome: Result<DisorderOutcome>,
}

/// Grid resolution used for the per-sample adiabaticity peak.
const A_PEAK_POINTS: usize = 1001;

fn draw_factors(rng: &mut ChaCha8Rng, num_edges: usize, ratio: f64) -> Vec<f64> {
    let ln_r = ratio.ln();
    (0..num_edges)
        .map(|_| {
            if ln_r == 0.0 {
                1.0
            } else {
                rng.gen_range(-ln_r..=ln_r).exp()
            }
        })
        .collect()
}

/// Runs `d.samples` disordered protocols. The schedule must keep its endpoint
/// nulling (both pulse floors at zero) so the dark state pins the chain ends
/// for every draw.
pub fn sample_disordered_run(
    spec: &ChainSpec,
    schedule: &PulseSchedule,
    d: &DisorderSpec,
) -> Result<Vec<DisorderSample>> {
    if schedule.num_edges() != spec.num_edges() {
        return Err(Error::Dimension(format!(
            "schedule drives {} edges, chain has {}",
            schedule.num_edges(),
            spec.num_edges()
        )));
    }
    if schedule.odd_pulse().omega_min != 0.0 || schedule.even_pulse().omega_min != 0.0 {
        return Err(Error::Domain(
            "disorder runs require endpoint nulling: both pulse floors must be 0".into(),
        ));
    }
    let initial = StateVector::basis_state(spec.num_sites(), 1)?;
    let samples: Vec<DisorderSample> = (0..d.samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(d.seed);
            rng.set_stream(index as u64);
            let factors = draw_factors(&mut rng, spec.num_edges(), d.ratio);
            let combined: Vec<f64> = schedule
                .scales()
                .iter()
                .zip(&factors)
                .map(|(s, f)| s * f)
                .collect();
            let outcome = schedule.clone().with_scales(combined).and_then(|sched| {
                let steps = steps_for(sched.max_coupling(), sched.t_max());
                let trace = propagate(spec, &sched, &initial, steps)?;
                let a = adiabaticity_trace(spec, &sched, A_PEAK_POINTS)?;
                Ok(DisorderOutcome {
                    transfer_fidelity: trace.transfer_fidelity,
                    a_peak: a.a_peak,
                })
            });
            DisorderSample {
                index,
                factors,
                outcome,
            }
        })
        .collect();
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darkstate::dark_state;

    fn setup() -> (ChainSpec, PulseSchedule) {
        let schedule = PulseSchedule::ideal(4, 10.0, 70.0).unwrap();
        let spec = ChainSpec::new(5, schedule.edge_bounds()).unwrap();
        (spec, schedule)
    }

    #[test]
    fn unit_ratio_reproduces_the_clean_run() {
        let (spec, schedule) = setup();
        let d = DisorderSpec::new(1.0, 3, 42).unwrap();
        let samples = sample_disordered_run(&spec, &schedule, &d).unwrap();
        let initial = StateVector::basis_state(5, 1).unwrap();
        let clean = propagate(
            &spec,
            &schedule,
            &initial,
            steps_for(schedule.max_coupling(), 70.0),
        )
        .unwrap();
        for s in &samples {
            assert!(s.factors.iter().all(|&f| f == 1.0));
            let out = s.outcome.as_ref().unwrap();
            assert_eq!(
                out.transfer_fidelity.to_bits(),
                clean.transfer_fidelity.to_bits()
            );
        }
    }

    #[test]
    fn fixed_seed_is_bit_deterministic() {
        let (spec, schedule) = setup();
        let d = DisorderSpec::new(2.0, 4, 7).unwrap();
        let a = sample_disordered_run(&spec, &schedule, &d).unwrap();
        let b = sample_disordered_run(&spec, &schedule, &d).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.factors, y.factors);
            let (ox, oy) = (x.outcome.as_ref().unwrap(), y.outcome.as_ref().unwrap());
            assert_eq!(
                ox.transfer_fidelity.to_bits(),
                oy.transfer_fidelity.to_bits()
            );
            assert_eq!(ox.a_peak.to_bits(), oy.a_peak.to_bits());
        }
    }

    #[test]
    fn factors_stay_within_the_ratio_band() {
        let (spec, schedule) = setup();
        let d = DisorderSpec::new(2.0, 20, 3).unwrap();
        let samples = sample_disordered_run(&spec, &schedule, &d).unwrap();
        for s in &samples {
            for &f in &s.factors {
                assert!((0.5..=2.0).contains(&f), "factor {f} outside [1/2, 2]");
            }
        }
    }

    #[test]
    fn dark_state_still_pins_site_one_at_start() {
        let (spec, schedule) = setup();
        let d = DisorderSpec::new(2.0, 10, 11).unwrap();
        let samples = sample_disordered_run(&spec, &schedule, &d).unwrap();
        for s in &samples {
            let scaled = schedule
                .clone()
                .with_scales(s.factors.clone())
                .unwrap()
                .evaluate(0.0)
                .unwrap();
            let d0 = dark_state(&scaled).unwrap();
            assert_eq!(d0.amplitudes()[0].re, 1.0);
            assert!(d0.amplitudes()[1..]
                .iter()
                .all(|a| a.re == 0.0 && a.im == 0.0));
        }
    }

    #[test]
    fn near_unit_ratio_converges_to_clean_fidelity() {
        let (spec, schedule) = setup();
        let clean = sample_disordered_run(&spec, &schedule, &DisorderSpec::new(1.0, 1, 5).unwrap())
            .unwrap()[0]
            .outcome
            .as_ref()
            .unwrap()
            .transfer_fidelity;
        let near = sample_disordered_run(
            &spec,
            &schedule,
            &DisorderSpec::new(1.0 + 1e-12, 1, 5).unwrap(),
        )
        .unwrap()[0]
            .outcome
            .as_ref()
            .unwrap()
            .transfer_fidelity;
        assert!((clean - near).abs() < 1e-9);
    }

    #[test]
    fn floored_schedule_is_rejected() {
        let schedule = PulseSchedule::new(
            4,
            70.0,
            crate::pulses::PulseSpec::new(0.5, 10.0).unwrap(),
            crate::pulses::PulseSpec::new(0.0, 10.0).unwrap(),
        )
        .unwrap();
        let spec = ChainSpec::new(5, schedule.edge_bounds()).unwrap();
        let d = DisorderSpec::new(2.0, 1, 0).unwrap();
        assert!(matches!(
            sample_disordered_run(&spec, &schedule, &d),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(DisorderSpec::new(0.5, 1, 0).is_err());
        assert!(DisorderSpec::new(2.0, 0, 0).is_err());
    }
}
