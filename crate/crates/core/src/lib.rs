//! Open Jaynes-Cummings model under individual or common heat baths.
//!
//! The crate builds the exact dressed-state eigensystem of the JC
//! Hamiltonian, assembles the secular (Pauli) rate equation for the
//! eigenstate populations under two bath topologies, solves for steady
//! states, and quantifies thermalization through effective temperatures
//! and trace distances to reference Gibbs states. A separate module
//! computes the logarithmic negativity of the thermal state, both by a
//! closed 2x2 block decomposition of the partial transpose and by a dense
//! numeric oracle.
//!
//! Everything is expressed in natural units: hbar = k_B = 1 and all
//! frequencies, rates, and temperatures are measured in units of the
//! two-level splitting omega_0.
//!
//! ```
//! use jc_thermo::eigensystem::JCParams;
//! use jc_thermo::bath::BathConfig;
//! use jc_thermo::steady_state::{build_rate_graph, steady_state};
//! use jc_thermo::diagnostics::{thermalization_verdict, Verdict, DEFAULT_VERDICT_TOL};
//!
//! let params = JCParams::resonant(0.02).unwrap();
//! let bath = BathConfig::Individual {
//!     gamma_sigma: 1e-4,
//!     gamma_a: 1e-4,
//!     t_sigma: 2.0,
//!     t_a: 2.0,
//! };
//! let graph = build_rate_graph(&params, &bath, 17).unwrap();
//! let p = steady_state(&graph).unwrap();
//! match thermalization_verdict(&p, &params, DEFAULT_VERDICT_TOL).unwrap() {
//!     Verdict::Thermalized { t_star } => assert!((t_star - 2.0).abs() < 1e-6),
//!     Verdict::NotThermalized => panic!("equal-temperature baths must thermalize"),
//! }
//! ```

pub mod bath;
pub mod diagnostics;
pub mod eigensystem;
mod error;
pub mod negativity;
pub mod runner;
pub mod steady_state;

pub use error::JcError;
