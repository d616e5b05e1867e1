//! Conditional steerability of three-qubit states.
//!
//! A tripartite state is conditionally steerable when some projective
//! measurement by one party leaves the remaining pair in a bipartite state
//! whose steerability is certified by one of two sufficient criteria: the
//! norm-based detector S1 or the canonical-frame nonlinear detector S2.
//! This crate provides the state families, noise channels, conditioning
//! machinery and detection criteria needed to map out those regions, plus
//! negativity-based entanglement diagnostics of the underlying tripartite
//! states.
//!
//! All operations are pure functions over immutable values and are safe to
//! run concurrently over disjoint parameter points.

pub mod channels;
pub mod conditioning;
pub mod error;
pub mod qmat;
pub mod random;
pub mod states;
pub mod steering;
pub mod tripartite;

pub use error::{Error, Result};
pub use qmat::{CMat, CVec, DensityMatrix};
