//! Counter-intuitive pulse schedules for the alternating chain.
//!
//! Two global controls drive the chain: the odd-numbered TMEs (`Ω₁, Ω₃, …`)
//! ramp up as `sin²(πt/2t_max)` while the even-numbered TMEs (`Ω₂, Ω₄, …`)
//! ramp down as `cos²(πt/2t_max)`, so the couplings far from the occupied end
//! are applied first. Each pulse may have a floor `omega_min` when the
//! hardware cannot null a TME completely:
//!
//! ```text
//! Ω(t) = Ω_min + (Ω_max − Ω_min) · sin²/cos²(πt / 2t_max)
//! ```
//!
//! Static per-edge scale factors model fabrication spread without touching
//! the global controls.

use std::f64::consts::PI;

use crate::chain::CouplingVector;
use crate::error::{Error, Result};

/// One global pulse: its floor and ceiling in ns⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub omega_min: f64,
    pub omega_max: f64,
}

impl PulseSpec {
    pub fn new(omega_min: f64, omega_max: f64) -> Result<Self> {
        if !(omega_min.is_finite() && omega_max.is_finite())
            || omega_min < 0.0
            || omega_min > omega_max
        {
            return Err(Error::Domain(format!(
                "pulse must satisfy 0 <= omega_min <= omega_max, got ({omega_min}, {omega_max})"
            )));
        }
        Ok(Self {
            omega_min,
            omega_max,
        })
    }

    fn amplitude(&self) -> f64 {
        self.omega_max - self.omega_min
    }
}

/// The full schedule: protocol duration, the two global pulses, and per-edge
/// scale factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    t_max: f64,
    odd: PulseSpec,
    even: PulseSpec,
    scales: Vec<f64>,
    reversed: bool,
}

impl PulseSchedule {
    pub fn new(num_edges: usize, t_max: f64, odd: PulseSpec, even: PulseSpec) -> Result<Self> {
        if num_edges < 2 || !num_edges.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "an odd chain has an even number of edges >= 2, got {num_edges}"
            )));
        }
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(Error::Domain(format!("t_max must be > 0, got {t_max}")));
        }
        if odd.omega_max == 0.0 && even.omega_max == 0.0 {
            return Err(Error::Domain(
                "at least one pulse must have omega_max > 0".into(),
            ));
        }
        Ok(Self {
            t_max,
            odd,
            even,
            scales: vec![1.0; num_edges],
            reversed: false,
        })
    }

    /// The ideal schedule: both pulses swing over `[0, omega_max]`.
    pub fn ideal(num_edges: usize, omega_max: f64, t_max: f64) -> Result<Self> {
        let pulse = PulseSpec::new(0.0, omega_max)?;
        Self::new(num_edges, t_max, pulse, pulse)
    }

    /// Replaces the per-edge scale factors (all must be finite and > 0).
    pub fn with_scales(mut self, scales: Vec<f64>) -> Result<Self> {
        if scales.len() != self.scales.len() {
            return Err(Error::Dimension(format!(
                "expected {} scale factors, got {}",
                self.scales.len(),
                scales.len()
            )));
        }
        if let Some(bad) = scales.iter().find(|s| !s.is_finite() || **s <= 0.0) {
            return Err(Error::Domain(format!(
                "scale factors must be finite and > 0, got {bad}"
            )));
        }
        self.scales = scales;
        Ok(self)
    }

    /// Same pulses over a different protocol duration.
    pub fn with_t_max(&self, t_max: f64) -> Result<Self> {
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(Error::Domain(format!("t_max must be > 0, got {t_max}")));
        }
        let mut out = self.clone();
        out.t_max = t_max;
        Ok(out)
    }

    /// The schedule run backwards: couplings at `t` equal the original's at
    /// `t_max − t`.
    pub fn time_reversed(&self) -> Self {
        let mut out = self.clone();
        out.reversed = !out.reversed;
        out
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn num_edges(&self) -> usize {
        self.scales.len()
    }

    pub fn odd_pulse(&self) -> PulseSpec {
        self.odd
    }

    pub fn even_pulse(&self) -> PulseSpec {
        self.even
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Largest coupling the schedule can produce; sets the time resolution
    /// the integrator needs.
    pub fn max_coupling(&self) -> f64 {
        let base = self.odd.omega_max.max(self.even.omega_max);
        let scale = self.scales.iter().cloned().fold(0.0, f64::max);
        base * scale
    }

    /// Per-edge `(min, max)` bounds implied by the pulses and scale factors.
    pub fn edge_bounds(&self) -> Vec<(f64, f64)> {
        self.scales
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let p = if k % 2 == 0 { self.odd } else { self.even };
                (p.omega_min * s, p.omega_max * s)
            })
            .collect()
    }

    fn check_time(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 0.0 || t > self.t_max {
            return Err(Error::Domain(format!(
                "t = {t} outside [0, {}]",
                self.t_max
            )));
        }
        Ok(if self.reversed { self.t_max - t } else { t })
    }

    /// The two global control values `(odd, even)` at time `t`, before
    /// per-edge scaling.
    pub fn control_values(&self, t: f64) -> Result<(f64, f64)> {
        let t = self.check_time(t)?;
        let phase = PI * t / (2.0 * self.t_max);
        let s2 = phase.sin().powi(2);
        let c2 = 1.0 - s2;
        Ok((
            self.odd.omega_min + self.odd.amplitude() * s2,
            self.even.omega_min + self.even.amplitude() * c2,
        ))
    }

    /// TMEs at time `t`.
    pub fn evaluate(&self, t: f64) -> Result<CouplingVector> {
        let (odd, even) = self.control_values(t)?;
        let values = self
            .scales
            .iter()
            .enumerate()
            .map(|(k, &s)| s * if k % 2 == 0 { odd } else { even })
            .collect();
        CouplingVector::new(values)
    }

    /// Analytic time derivatives of the TMEs at time `t`, in ns⁻².
    pub fn evaluate_derivative(&self, t: f64) -> Result<Vec<f64>> {
        let tt = self.check_time(t)?;
        let sign = if self.reversed { -1.0 } else { 1.0 };
        let rate = PI / (2.0 * self.t_max) * (PI * tt / self.t_max).sin();
        let odd = sign * self.odd.amplitude() * rate;
        let even = -sign * self.even.amplitude() * rate;
        Ok(self
            .scales
            .iter()
            .enumerate()
            .map(|(k, &s)| s * if k % 2 == 0 { odd } else { even })
            .collect())
    }
}
