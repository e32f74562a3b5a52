//! Chain geometry and the instantaneous tight-binding Hamiltonian.
//!
//! A chain has an odd number of sites `2n+1` labelled `|1⟩ … |2n+1⟩` with
//! degenerate on-site energies, so the Hamiltonian is fully described by the
//! `2n` tunneling matrix elements (TMEs) on its edges. TMEs are plain inverse
//! time (1 GHz ↔ 1 ns⁻¹, ħ = 1) so `Ω · t` is dimensionless.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Static description of a chain: its size and the admissible TME range of
/// each edge.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    n_half: usize,
    coupling_bounds: Vec<(f64, f64)>,
}

impl ChainSpec {
    /// Builds a chain with `num_sites = 2n+1` sites and one `(omega_min,
    /// omega_max)` bound per edge, in ns⁻¹.
    pub fn new(num_sites: usize, coupling_bounds: Vec<(f64, f64)>) -> Result<Self> {
        if num_sites < 3 || num_sites.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "num_sites must be odd and >= 3, got {num_sites}"
            )));
        }
        if coupling_bounds.len() != num_sites - 1 {
            return Err(Error::Dimension(format!(
                "expected {} coupling bounds for {} sites, got {}",
                num_sites - 1,
                num_sites,
                coupling_bounds.len()
            )));
        }
        for (k, &(lo, hi)) in coupling_bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
                return Err(Error::Domain(format!(
                    "coupling bound {k} must satisfy 0 <= min <= max, got ({lo}, {hi})"
                )));
            }
        }
        if coupling_bounds.iter().all(|&(_, hi)| hi == 0.0) {
            return Err(Error::Domain(
                "at least one coupling must have omega_max > 0".into(),
            ));
        }
        Ok(Self {
            n_half: (num_sites - 1) / 2,
            coupling_bounds,
        })
    }

    /// Chain with the same `(omega_min, omega_max)` bound on every edge.
    pub fn uniform(num_sites: usize, omega_min: f64, omega_max: f64) -> Result<Self> {
        if num_sites < 3 || num_sites.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "num_sites must be odd and >= 3, got {num_sites}"
            )));
        }
        Self::new(num_sites, vec![(omega_min, omega_max); num_sites - 1])
    }

    /// The `n` in `2n+1`.
    pub fn n_half(&self) -> usize {
        self.n_half
    }

    pub fn num_sites(&self) -> usize {
        2 * self.n_half + 1
    }

    pub fn num_edges(&self) -> usize {
        2 * self.n_half
    }

    pub fn coupling_bounds(&self) -> &[(f64, f64)] {
        &self.coupling_bounds
    }
}

/// Instantaneous TMEs, one non-negative value per edge; `values[k]` couples
/// site `k+1` to site `k+2` (1-based labels).
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingVector {
    values: Vec<f64>,
}

impl CouplingVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("coupling vector must be non-empty".into()));
        }
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "coupling {k} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Euclidean norm of the TME vector.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// The chain Hamiltonian at one instant: real symmetric, zero diagonal,
/// nonzero only on the first off-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSnapshot {
    offdiag: Vec<f64>,
}

impl HamiltonianSnapshot {
    pub fn num_sites(&self) -> usize {
        self.offdiag.len() + 1
    }

    /// The off-diagonal entries; `offdiagonal()[k]` is matrix entry `(k, k+1)`.
    pub fn offdiagonal(&self) -> &[f64] {
        &self.offdiag
    }

    /// Dense matrix form.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let n = self.num_sites();
        let mut m = DMatrix::zeros(n, n);
        for (k, &w) in self.offdiag.iter().enumerate() {
            m[(k, k + 1)] = w;
            m[(k + 1, k)] = w;
        }
        m
    }

    /// `H v` for a real vector, using the tridiagonal structure.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.num_sites();
        assert_eq!(v.len(), n, "vector length must match chain size");
        let mut out = vec![0.0; n];
        for (k, &w) in self.offdiag.iter().enumerate() {
            out[k] += w * v[k + 1];
            out[k + 1] += w * v[k];
        }
        out
    }
}

/// Builds the instantaneous Hamiltonian for the given TMEs.
pub fn build_hamiltonian(spec: &ChainSpec, omegas: &CouplingVector) -> Result<HamiltonianSnapshot> {
    if omegas.len() != spec.num_edges() {
        return Err(Error::Dimension(format!(
            "chain with {} sites needs {} couplings, got {}",
            spec.num_sites(),
            spec.num_edges(),
            omegas.len()
        )));
    }
    Ok(HamiltonianSnapshot {
        offdiag: omegas.values().to_vec(),
    })
}
