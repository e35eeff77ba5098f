//! Cesàro means of composition operators along orbits, orbit densities,
//! Weyl sums, the boundary gap witness and the per-space verdict.

mod cesaro;
mod density;
mod verdict;

use thiserror::Error;

pub use cesaro::{
    cesaro_apply, cesaro_final, cesaro_orbit_mean, monomial_mean, monomial_mean_turns, rotation_cesaro_limit,
    CesaroTrace, MonomialMean, TestFunction,
};
pub use density::{boundary_gap_witness, orbit_density, weyl_test, DensityEstimate, GapWitness, WeylReport};
pub use verdict::{verdict, Decision, ErgodicityVerdict, Evidence, Space, VerdictBudgets, WeightModel};

use crate::dynamics::DynamicsError;
use crate::symbols::SymbolError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ErgodicityError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("orbit of 0 reaches the Denjoy-Wolff point to working precision at step {n}")]
    OrbitTooClose { n: usize },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}
