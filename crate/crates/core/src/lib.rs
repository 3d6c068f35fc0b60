//! Construction, spectral analysis and existence classification of
//! hypoenergetic trees.
//!
//! A tree of order `n` is *hypoenergetic* when its energy (the sum of the
//! absolute values of its adjacency eigenvalues) is below `n`, and *strongly
//! hypoenergetic* when it is below `n - 1`.
//!
//! - [`tree`]: the [`Tree`] value type, coalescence, canonical codes, text formats.
//! - [`spectral`]: exact characteristic polynomials, nullity, certified energies.
//! - [`constructions`]: stars, paths, complete d-ary trees, `T*(n, d)`,
//!   maximum-nullity trees.
//! - [`enumeration`]: isomorph-free free-tree generation and exhaustive searches.
//! - [`classify`]: the existence classification by `(n, delta)` with certified witnesses.
//! - [`verify`]: recomputation of the published energy values.

pub mod classify;
pub mod cli;
pub mod constructions;
pub mod enumeration;
pub mod reference;
pub mod spectral;
pub mod tree;
pub mod verify;

pub use classify::{certify, hypo_exists, strong_exists, witness, Verdict, Witness};
pub use spectral::{char_poly, energy, nullity, CharPoly, EnergyResult, Method};
pub use tree::{CanonicalCode, Tree, TreeError};
