//! The adiabaticity parameter `A(t)` and the protocol-time estimate.
//!
//! `A = |⟨D₊| ∂H/∂t |D₀⟩| / |E₊ − E₀|²` measured between the dark state and
//! the nearest positive-energy eigenstate. For the ideal symmetric schedule
//! the peak sits at the pulse crossing and reduces to
//! `A_peak = 4π / (√3 Ω_max t_max)`, which inverts to the run time needed for
//! a target adiabaticity.

use rayon::prelude::*;

use crate::chain::{build_hamiltonian, ChainSpec};
use crate::error::{Error, Result};
use crate::pulses::PulseSchedule;
use crate::spectrum::diagonalize;

/// Gap below which the spectrum is treated as degenerate, in ns⁻¹.
pub const GAP_CUTOFF: f64 = 1e-12;

/// `A(t)` sampled over the protocol.
#[derive(Debug, Clone)]
pub struct AdiabaticityTrace {
    pub times: Vec<f64>,
    pub a_values: Vec<f64>,
    pub a_peak: f64,
    pub t_peak: f64,
}

/// `⟨u|T|v⟩` for the tridiagonal symmetric matrix with off-diagonal `w`.
fn tridiag_bilinear(u: &[f64], w: &[f64], v: &[f64]) -> f64 {
    w.iter()
        .enumerate()
        .map(|(k, &wk)| wk * (u[k] * v[k + 1] + u[k + 1] * v[k]))
        .sum()
}

/// Evaluates the matrix-element form of `A` at time `t`.
///
/// `∂H/∂t` is built analytically from the pulse derivatives (the Hamiltonian
/// is linear in the couplings), `|D₀⟩` is the eigenstate of smallest `|E|`
/// and `|D₊⟩` the smallest-positive-energy eigenstate.
pub fn adiabaticity_general(spec: &ChainSpec, schedule: &PulseSchedule, t: f64) -> Result<f64> {
    if schedule.num_edges() != spec.num_edges() {
        return Err(Error::Dimension(format!(
            "schedule drives {} edges, chain has {}",
            schedule.num_edges(),
            spec.num_edges()
        )));
    }
    let omegas = schedule.evaluate(t)?;
    let rates = schedule.evaluate_derivative(t)?;
    let eigs = diagonalize(&build_hamiltonian(spec, &omegas)?);

    let zero = eigs
        .eigenvalues()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .expect("non-empty spectrum");
    let e0 = eigs.eigenvalues()[zero];
    let mut plus: Option<(usize, f64)> = None;
    for (i, &e) in eigs.eigenvalues().iter().enumerate() {
        if e > e0 + GAP_CUTOFF && plus.is_none_or(|(_, best)| e < best) {
            plus = Some((i, e));
        }
    }
    let (plus, e_plus) = plus
        .ok_or_else(|| Error::Degenerate(format!("no state above the dark state at t = {t} ns")))?;
    let gap = e_plus - e0;
    if gap <= GAP_CUTOFF {
        return Err(Error::Degenerate(format!(
            "vanishing gap {gap:.3e} at t = {t} ns"
        )));
    }
    let d0 = eigs.eigenvector(zero);
    let dp = eigs.eigenvector(plus);
    let element = tridiag_bilinear(dp.as_slice(), &rates, d0.as_slice());
    Ok(element.abs() / (gap * gap))
}

/// Samples `A(t)` on a uniform grid of `points` times (endpoints included).
pub fn adiabaticity_trace(
    spec: &ChainSpec,
    schedule: &PulseSchedule,
    points: usize,
) -> Result<AdiabaticityTrace> {
    if points < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 points, got {points}"
        )));
    }
    let t_max = schedule.t_max();
    let times: Vec<f64> = (0..points)
        .map(|i| t_max * i as f64 / (points - 1) as f64)
        .collect();
    let a_values: Vec<f64> = times
        .par_iter()
        .map(|&t| adiabaticity_general(spec, schedule, t))
        .collect::<Result<_>>()?;
    let (peak_idx, &a_peak) = a_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least two samples");
    Ok(AdiabaticityTrace {
        t_peak: times[peak_idx],
        times,
        a_values,
        a_peak,
    })
}

/// Peak adiabaticity of the ideal symmetric schedule:
/// `4π / (√3 Ω_max t_max)`.
pub fn adiabaticity_peak_closed_form(omega_max: f64, t_max: f64) -> Result<f64> {
    if !(omega_max.is_finite() && t_max.is_finite()) || omega_max <= 0.0 || t_max <= 0.0 {
        return Err(Error::Domain(format!(
            "omega_max and t_max must be > 0, got ({omega_max}, {t_max})"
        )));
    }
    Ok(4.0 * std::f64::consts::PI / (3f64.sqrt() * omega_max * t_max))
}

/// Protocol duration needed to hit a target peak adiabaticity:
/// `t_max = 4π / (√3 Ω_max A)`.
pub fn required_tmax(omega_max: f64, a_target: f64) -> Result<f64> {
    if !omega_max.is_finite() || omega_max <= 0.0 {
        return Err(Error::Domain(format!(
            "omega_max must be > 0, got {omega_max}"
        )));
    }
    if !a_target.is_finite() || a_target <= 0.0 || a_target >= 1.0 {
        return Err(Error::Domain(format!(
            "a_target must be in (0, 1), got {a_target}"
        )));
    }
    Ok(4.0 * std::f64::consts::PI / (3f64.sqrt() * omega_max * a_target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulses::PulseSpec;
    use approx::assert_relative_eq;

    fn ideal(t_max: f64) -> (ChainSpec, PulseSchedule) {
        let schedule = PulseSchedule::ideal(4, 10.0, t_max).unwrap();
        let spec = ChainSpec::new(5, schedule.edge_bounds()).unwrap();
        (spec, schedule)
    }

    /// Independent oracle: the full closed-form expression for the five-site
    /// symmetric case evaluated directly from the pulse formulas.
    fn closed_form_oracle(omega_max: f64, t_max: f64, t: f64) -> f64 {
        let phase = std::f64::consts::PI * t / (2.0 * t_max);
        let o1 = omega_max * phase.sin().powi(2);
        let o2 = omega_max * phase.cos().powi(2);
        let d1 = omega_max * std::f64::consts::PI / (2.0 * t_max)
            * (std::f64::consts::PI * t / t_max).sin();
        let d2 = -d1;
        let num = d1 * o2 * o2 - d2 * o1 * o1 + o1 * o2 * (d1 - d2);
        let den = 2.0
            * (o1.powi(4) + o1 * o1 * o2 * o2 + o2.powi(4)).sqrt()
            * (o1 * o1 - o1 * o2 + o2 * o2);
        (num / den).abs()
    }

    #[test]
    fn crossing_matches_simple_form() {
        let (spec, schedule) = ideal(70.0);
        let a = adiabaticity_general(&spec, &schedule, 35.0).unwrap();
        let simple = adiabaticity_peak_closed_form(10.0, 70.0).unwrap();
        assert_relative_eq!(a, simple, max_relative = 1e-9);
    }

    #[test]
    fn zero_at_protocol_endpoints() {
        let (spec, schedule) = ideal(70.0);
        let a = adiabaticity_general(&spec, &schedule, 0.0).unwrap();
        assert!(a.abs() < 1e-30, "A(0) = {a}");
    }

    #[test]
    fn general_form_matches_closed_form_on_a_grid() {
        let (spec, schedule) = ideal(70.0);
        for i in 1..50 {
            let t = 70.0 * i as f64 / 50.0;
            let general = adiabaticity_general(&spec, &schedule, t).unwrap();
            let oracle = closed_form_oracle(10.0, 70.0, t);
            assert_relative_eq!(general, oracle, max_relative = 1e-9);
        }
    }

    #[test]
    fn trace_peaks_at_the_crossing() {
        let (spec, schedule) = ideal(70.0);
        let trace = adiabaticity_trace(&spec, &schedule, 1001).unwrap();
        let step = 70.0 / 1000.0;
        assert!((trace.t_peak - 35.0).abs() <= step + 1e-12);
        let simple = adiabaticity_peak_closed_form(10.0, 70.0).unwrap();
        assert_relative_eq!(trace.a_peak, simple, max_relative = 1e-3);
        assert!(trace.a_values.iter().all(|&a| a >= 0.0));
    }

    #[test]
    fn scaling_invariance() {
        // A depends only on the product Ω_max · t_max.
        let (spec, s1) = ideal(70.0);
        let s2 = PulseSchedule::ideal(4, 20.0, 35.0).unwrap();
        for i in 1..10 {
            let frac = i as f64 / 10.0;
            let a1 = adiabaticity_general(&spec, &s1, 70.0 * frac).unwrap();
            let a2 = adiabaticity_general(&spec, &s2, 35.0 * frac).unwrap();
            assert_relative_eq!(a1, a2, max_relative = 1e-9);
        }
        // At fixed Ω_max the whole curve scales as 1/t_max.
        let (_, s3) = ideal(140.0);
        for i in 1..10 {
            let frac = i as f64 / 10.0;
            let a1 = adiabaticity_general(&spec, &s1, 70.0 * frac).unwrap();
            let a3 = adiabaticity_general(&spec, &s3, 140.0 * frac).unwrap();
            assert_relative_eq!(a1 * 70.0, a3 * 140.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn closed_form_values() {
        // 4π/(√3 · 100) evaluated independently.
        assert_relative_eq!(
            adiabaticity_peak_closed_form(10.0, 70.0).unwrap(),
            0.010364567795624103,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            adiabaticity_peak_closed_form(10.0, 7.0).unwrap(),
            0.10364567795624103,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            adiabaticity_peak_closed_form(10.0, 70.0).unwrap(),
            adiabaticity_peak_closed_form(20.0, 35.0).unwrap(),
            epsilon = 1e-18
        );
    }

    #[test]
    fn required_tmax_values() {
        let t = required_tmax(10.0, 0.01).unwrap();
        assert_relative_eq!(t, 72.55197456936872, epsilon = 1e-10);
        assert_relative_eq!(
            required_tmax(10.0, 0.001).unwrap(),
            725.5197456936872,
            epsilon = 1e-9
        );
        // Algebraic inverse.
        let a = adiabaticity_peak_closed_form(10.0, t).unwrap();
        assert_relative_eq!(a, 0.01, epsilon = 1e-12);
        assert!(required_tmax(0.0, 0.01).is_err());
        assert!(required_tmax(10.0, 0.0).is_err());
        assert!(required_tmax(10.0, 1.0).is_err());
        assert!(adiabaticity_peak_closed_form(-1.0, 1.0).is_err());
    }

    #[test]
    fn degenerate_spectrum_is_an_error() {
        // Odd pulse pinned at zero: at t = t_max every coupling vanishes.
        let schedule = PulseSchedule::new(
            4,
            70.0,
            PulseSpec::new(0.0, 0.0).unwrap(),
            PulseSpec::new(0.0, 10.0).unwrap(),
        )
        .unwrap();
        let spec = ChainSpec::new(5, schedule.edge_bounds()).unwrap();
        assert!(matches!(
            adiabaticity_general(&spec, &schedule, 70.0),
            Err(Error::Degenerate(_))
        ));
    }
}
