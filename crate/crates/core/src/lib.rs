//! Exact computational algebra for the triplet group `L_n` and its virtual and
//! welded extensions.
//!
//! The crate builds every representation as exact matrices (or monomial free
//! group automorphisms) and checks their properties mechanically: relation
//! satisfaction, irreducibility through the Burnside span criterion,
//! faithfulness on finite groups, certified kernel elements, and exhaustive
//! classifications of 2-local representations over small prime fields.

pub mod scalar;
pub mod linalg;
pub mod freegroup;
pub mod groups;
pub mod reps;
pub mod analysis;
pub mod suite;
