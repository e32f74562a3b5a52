//! Simulator for coherent tunneling adiabatic passage over odd chains with
//! alternating tunnel couplings.
//!
//! A single particle sits on a chain of `2n+1` sites whose nearest-neighbor
//! tunneling matrix elements are driven as two global groups (odd-numbered
//! and even-numbered edges). The chain always carries a zero-energy dark
//! state confined to the odd sites; sweeping the two groups through a
//! counter-intuitive pulse sequence drags that state — and the particle —
//! from one end of the chain to the other without populating the even sites.
//!
//! The crate provides the analytic dark state and five-site eigensystem,
//! numeric eigenspectra, norm-preserving time evolution, the adiabaticity
//! parameter with its closed-form peak, imperfect-contrast fidelity bounds,
//! and disorder statistics, plus a CLI that emits plot-ready CSV data.

pub mod adiabaticity;
pub mod chain;
pub mod cli;
pub mod config;
pub mod contrast;
pub mod darkstate;
pub mod error;
pub mod evolution;
pub mod pulses;
pub mod robustness;
pub mod spectrum;

pub use adiabaticity::{
    adiabaticity_general, adiabaticity_peak_closed_form, adiabaticity_trace, required_tmax,
    AdiabaticityTrace,
};
pub use chain::{build_hamiltonian, ChainSpec, CouplingVector, HamiltonianSnapshot};
pub use config::{Experiment, RunConfig};
pub use contrast::{
    contrast_fidelity, endpoint_overlap_final, endpoint_overlap_initial, ContrastFidelity,
    ContrastSpec,
};
pub use darkstate::{dark_state, dark_state_overlap, StateVector};
pub use error::{Error, Result};
pub use evolution::{propagate, steps_for, transfer_fidelity_vs_tmax, EvolutionTrace};
pub use pulses::{PulseSchedule, PulseSpec};
pub use robustness::{sample_disordered_run, DisorderOutcome, DisorderSample, DisorderSpec};
pub use spectrum::{diagonalize, gap_to_nearest, symmetric5_eigensystem, EigenSystem};
