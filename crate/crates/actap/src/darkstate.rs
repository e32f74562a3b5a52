//! Analytic zero-energy (dark) state of the alternating chain.
//!
//! For an odd chain the Hamiltonian always has a null vector supported on the
//! odd sites only. Writing the edge TMEs as `Ω_1 … Ω_2n` (1-based), the
//! unnormalized amplitude on site `2j+1` is
//!
//! ```text
//! c_j = (-1)^j · Ω_1 Ω_3 … Ω_{2j-1} · Ω_{2j+2} Ω_{2j+4} … Ω_{2n}
//! ```
//!
//! i.e. a product of the odd-indexed TMEs to the left and the even-indexed
//! TMEs to the right. Only TME ratios enter after normalization, and the form
//! involves no division, so individual zero couplings are harmless.

use num_complex::Complex64;

use crate::chain::CouplingVector;
use crate::error::{Error, Result};

/// A pure state over the position basis `|1⟩ … |2n+1⟩`, kept at unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes and wraps the given amplitudes; errors on zero norm.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Dimension("state must have at least one site".into()));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Degenerate(
                "state has zero or non-finite norm".into(),
            ));
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self { amps })
    }

    /// The basis state `|site⟩` (1-based) on a chain of `num_sites` sites.
    pub fn basis_state(num_sites: usize, site: usize) -> Result<Self> {
        if site == 0 || site > num_sites {
            return Err(Error::Domain(format!(
                "site must be in 1..={num_sites}, got {site}"
            )));
        }
        let mut amps = vec![Complex64::ZERO; num_sites];
        amps[site - 1] = Complex64::ONE;
        Ok(Self { amps })
    }

    pub fn num_sites(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `|amplitude|²` per site.
    pub fn populations(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Population of one site (1-based).
    pub fn population(&self, site: usize) -> Result<f64> {
        if site == 0 || site > self.amps.len() {
            return Err(Error::Domain(format!(
                "site must be in 1..={}, got {site}",
                self.amps.len()
            )));
        }
        Ok(self.amps[site - 1].norm_sqr())
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub(crate) fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        let amps = re
            .iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        Self::new(amps)
    }
}

/// Unnormalized dark-state amplitudes on the odd sites (`n+1` values for a
/// chain with `2n` edges).
fn odd_site_products(omegas: &[f64]) -> Vec<f64> {
    let n = omegas.len() / 2;
    // prefix[j] = product of odd TMEs Ω_1 Ω_3 … Ω_{2j-1}
    let mut prefix = vec![1.0; n + 1];
    for j in 1..=n {
        prefix[j] = prefix[j - 1] * omegas[2 * j - 2];
    }
    // suffix[j] = product of even TMEs Ω_{2j+2} Ω_{2j+4} … Ω_{2n}
    let mut suffix = vec![1.0; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1] * omegas[2 * j + 1];
    }
    (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * prefix[j] * suffix[j]
        })
        .collect()
}

/// The normalized null state `|D₀⟩` for the given TMEs.
///
/// Even-site amplitudes are exactly zero; the global phase is fixed by making
/// the first nonzero amplitude positive real. Errors when the normalization
/// vanishes (the null space is then more than one-dimensional and no single
/// dark state is defined).
pub fn dark_state(omegas: &CouplingVector) -> Result<StateVector> {
    if !omegas.len().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "dark state needs an even number of couplings (odd chain), got {}",
            omegas.len()
        )));
    }
    // Only ratios matter; rescale so products stay tame.
    let max = omegas.values().iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::Degenerate(
            "all couplings are zero; the null space is degenerate".into(),
        ));
    }
    let scaled: Vec<f64> = omegas.values().iter().map(|&w| w / max).collect();
    let coeffs = odd_site_products(&scaled);
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Degenerate(
            "dark-state normalization vanishes for these couplings".into(),
        ));
    }
    let flip = match coeffs.iter().find(|&&c| c != 0.0) {
        Some(&c) if c < 0.0 => -1.0,
        _ => 1.0,
    };
    let num_sites = omegas.len() + 1;
    let mut amps = vec![Complex64::ZERO; num_sites];
    for (j, &c) in coeffs.iter().enumerate() {
        amps[2 * j] = Complex64::new(flip * c / norm, 0.0);
    }
    Ok(StateVector { amps })
}

/// `|⟨site|D₀⟩|` for a 1-based site index.
pub fn dark_state_overlap(omegas: &CouplingVector, site: usize) -> Result<f64> {
    let num_sites = omegas.len() + 1;
    if site == 0 || site > num_sites {
        return Err(Error::Domain(format!(
            "site must be in 1..={num_sites}, got {site}"
        )));
    }
    let d0 = dark_state(omegas)?;
    Ok(d0.amplitudes()[site - 1].norm())
}
