//! Bosonic Fock-state evolution through linear-optical networks.

mod evolve;
mod permanent;
mod state;

pub use evolve::{
    evolve, post_select, transition_amplitude, ModeConstraint, Outcome, OutputDistribution,
    Selection,
};
pub use permanent::{permanent, permanent_naive};
pub use state::{enumerate_basis, FockBasis, FockState};
