//! Quantum Fisher information of an unbalanced Mach–Zehnder interferometer
//! fed by coherent and squeezed light, with a truncated Fock-space oracle
//! for cross-checking the closed forms.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_form;
pub mod detection;
pub mod error;
pub mod fock;
pub mod model;
pub mod optimize;
pub mod presets;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    qcrb_sensitivity, reduce_fisher, BeamSplitter, CoherentAmplitude, CoherentSqueezedVacuum, DualCoherent,
    FisherMatrix, InputScenario, PhaseConfig, ScenarioKind, SqueezeParam, SqueezedCoherentSqueezedVacuum,
};
