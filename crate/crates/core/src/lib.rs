//! Two-qubit states carried by accelerated observers: the Unruh channel,
//! its region projections, and the entanglement measures used to compare
//! travelled states with their preparation.

pub mod channel;
pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod printed;
pub mod random;
pub mod states;
pub mod sweep;
pub mod tolerances;

pub use channel::{all_regions, channel, AccelerationPair, Region, RegionSelector};
pub use error::{Error, Result};
pub use measures::{
    concurrence, concurrence_self_transposed, overlap_fidelity, purity, separability_self_transposed,
    separability_verdict, teleportation_criterion, Measure, MeasureReport, Verdict,
};
pub use states::{bloch_to_density, density_to_bloch, make_state, BlochForm, DensityMatrix, StateFamily};
