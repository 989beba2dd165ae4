//! Cremona dynamics of point configurations in P³ and the induced action on
//! the Picard lattice of the blown-up threefold, in exact arithmetic.
//!
//! - [`geometry`]: points, condition (*), the Cremona move on configurations,
//!   and equivalence up to PGL(4) and relabeling.
//! - [`lattice`]: divisor and curve classes, the Cremona and permutation
//!   actions, the Coxeter element and its certificates.
//! - [`orbit`]: words of moves, the first-four-then-shift iteration with
//!   geometric/lattice cross-checks, and breadth-first orbit search.

pub mod error;
pub mod geometry;
pub mod lattice;
pub mod orbit;
mod perm;
pub(crate) mod serde_big;

pub use error::{Error, Result, StarViolation};
pub use perm::Permutation;
