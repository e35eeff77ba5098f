//! Weighted sup-norm spaces: lacunary exponents from continued fractions,
//! the `v_α` weights and the rotation counterexample pair.

mod cf;
mod counter;
mod lacunary;
mod weight;

use thiserror::Error;

pub use cf::{convergents, Angle, Convergent, FLOAT_HORIZON, ROOT_OF_UNITY_ORDER};
pub use counter::{
    counterexample_pair, default_probe_radii, h2_norm_sq, CounterexamplePair, CounterexampleReport, H2Norm, Probe,
};
pub use lacunary::{lacunary_exponents, LacunarySequence};
pub use weight::{lacunary_sum, make_weight_v_alpha, weighted_sup_norm, Weight, WEIGHT_CLAMP};

/// Default number of lacunary terms.
pub const DEFAULT_TERMS: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightedError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("angle is a root of unity of order {order}")]
    RootOfUnity { order: u64 },
    #[error("no admissible exponent n_{k} <= {n_max}")]
    BudgetExceeded { k: usize, n_max: u64 },
}
