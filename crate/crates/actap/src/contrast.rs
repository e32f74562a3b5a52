//! Endpoint overlaps and transfer fidelity under imperfect pulse contrast.
//!
//! When the odd pulse cannot be nulled below `Ω_1min` the initial state has
//! overlap `⟨1|D₀(0)⟩ = Ω²_2max / √(Ω⁴_1min + Ω⁴_2max + Ω²_1min Ω²_2max)`
//! with the dark state, and symmetrically at the end of the protocol. The
//! product of squared overlaps bounds the transfer fidelity; to first order
//! in the contrast ratios it is `1 − Ω²_1min Ω²_2min / (8 Ω²_1max Ω²_2max)`.

use crate::error::{Error, Result};

/// Floor and ceiling of each pulse group, in ns⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContrastSpec {
    pub omega1_min: f64,
    pub omega1_max: f64,
    pub omega2_min: f64,
    pub omega2_max: f64,
}

impl ContrastSpec {
    pub fn new(omega1_min: f64, omega1_max: f64, omega2_min: f64, omega2_max: f64) -> Result<Self> {
        for (lo, hi, name) in [
            (omega1_min, omega1_max, "omega1"),
            (omega2_min, omega2_max, "omega2"),
        ] {
            if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
                return Err(Error::Domain(format!(
                    "{name} must satisfy 0 <= min <= max, got ({lo}, {hi})"
                )));
            }
            if hi <= 0.0 {
                return Err(Error::Domain(format!("{name}_max must be > 0, got {hi}")));
            }
        }
        Ok(Self {
            omega1_min,
            omega1_max,
            omega2_min,
            omega2_max,
        })
    }
}

/// Exact and first-order values of the endpoint-overlap fidelity.
///
/// The exact product is the authoritative number; the first-order pair is
/// kept because its simple form is what device-level error budgets quote.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContrastFidelity {
    /// `|⟨5|D₀(t_max)⟩ ⟨D₀(0)|1⟩|²` from the unexpanded overlaps.
    pub exact: f64,
    /// `1 − Ω²_1min Ω²_2min / (8 Ω²_1max Ω²_2max)`.
    pub first_order: f64,
    /// `Ω²_1min Ω²_2min / (8 Ω²_1max Ω²_2max)`, computed directly so tiny
    /// rates keep full precision.
    pub first_order_error_rate: f64,
}

fn overlap(floor: f64, ceiling: f64) -> f64 {
    // 1/√(1 + r² + r⁴) with r = floor/ceiling, written to stay stable for
    // any magnitudes.
    let f2 = floor * floor;
    let c2 = ceiling * ceiling;
    c2 / (f2 * f2 + c2 * c2 + f2 * c2).sqrt()
}

/// `⟨1|D₀(t=0)⟩`: how well the dark state matches the occupied end site at
/// the start of the protocol.
pub fn endpoint_overlap_initial(c: &ContrastSpec) -> f64 {
    overlap(c.omega1_min, c.omega2_max)
}

/// `⟨D₀(t=t_max)|2n+1⟩`: the matching overlap at the end of the protocol.
pub fn endpoint_overlap_final(c: &ContrastSpec) -> f64 {
    overlap(c.omega2_min, c.omega1_max)
}

/// Transfer-fidelity estimate from the endpoint overlaps.
pub fn contrast_fidelity(c: &ContrastSpec) -> ContrastFidelity {
    let product = endpoint_overlap_initial(c) * endpoint_overlap_final(c);
    let r1 = c.omega1_min / c.omega1_max;
    let r2 = c.omega2_min / c.omega2_max;
    let rate = (r1 * r1) * (r2 * r2) / 8.0;
    ContrastFidelity {
        exact: product * product,
        first_order: 1.0 - rate,
        first_order_error_rate: rate,
    }
}
