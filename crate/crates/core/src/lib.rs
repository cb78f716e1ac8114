//! Tripartite qubit states near Schwarzschild and GHS dilaton black holes:
//! mode dressing, partial traces, concurrence, tangle and teleportation
//! fidelity, with sweep and cross-check tooling on top.
//!
//! ```
//! use horizonq::horizon::{build_reduced, BlackHoleModel, Family, Scenario};
//! use horizonq::qstate::QubitLabel;
//! use horizonq::teleport::teleportation_fidelity;
//!
//! let model = BlackHoleModel::schwarzschild_temperature(1.0).unwrap();
//! let sc = Scenario::new(Family::W, model, 1.0).tracing(QubitLabel::b());
//! let rho = build_reduced(&sc).unwrap();
//! let f = teleportation_fidelity(&rho).unwrap();
//! assert!((f.fidelity - 0.7456).abs() < 1e-3);
//! ```

pub mod analysis;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod horizon;
pub mod numkernel;
pub mod qstate;
pub mod teleport;

pub use error::{Error, Result};
