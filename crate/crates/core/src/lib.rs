//! Dynamics of holomorphic self-maps of the unit disc and mean ergodicity of
//! the composition operators `C_φ f = f ∘ φ` they induce.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`symbols`] represents, validates and evaluates self-maps of the closed
//!   disc (Möbius maps, finite Blaschke products, polynomials, truncated
//!   power series).
//! * [`dynamics`] locates fixed and Denjoy–Wolff points, classifies symbols
//!   and estimates sup-norms of iterates.
//! * [`ergodicity`] computes Cesàro means along orbits, orbit densities,
//!   Weyl sums, the boundary gap witness and the per-space verdict.
//! * [`weighted`] builds lacunary exponent sequences, the `v_α` weights and
//!   the rotation counterexample pair for weighted sup-norm spaces.
//! * [`gallery`] ships the named reference symbols.

pub mod dynamics;
pub mod ergodicity;
pub mod gallery;
pub mod grid;
pub mod symbols;
pub mod weighted;

pub use num_complex::Complex64 as Complex;

pub use dynamics::{DwResult, DynamicsError, SymbolClass};
pub use ergodicity::{CesaroTrace, DensityEstimate, ErgodicityError, ErgodicityVerdict, Space, TestFunction};
pub use symbols::{Orbit, Symbol, SymbolError};
pub use weighted::{Angle, LacunarySequence, Weight, WeightedError};
