//! Sparse tensors over an exact scalar domain, contraction networks, and a
//! greedy contraction planner. Every weight system compiles down to this.
//!
//! Tensors live in super vector spaces: each axis carries the parity of its
//! basis vectors and every rearrangement of odd indices follows the Koszul
//! rule. With all-even spaces the engine is ordinary index contraction.

mod network;
mod scalar;
mod sparse;

pub use network::{ContractionNetwork, ContractionPlan, Pairing, PlanStep, Slot};
pub use scalar::Scalar;
pub use sparse::{even_space, koszul_negative, next_permutation, Space, SparseTensor};
