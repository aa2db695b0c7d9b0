//! Exact-arithmetic workbench for the combinatorics and matrix identities
//! behind theta representations of metaplectic covers: nilpotent orbit
//! bookkeeping, unipotent subgroup manipulation over the rationals, tame
//! character sums in cyclotomic fields, and assembly of the resulting
//! Whittaker-value formulas.
//!
//! Everything is computed exactly: matrices over `BigRational`, character
//! sums in `Q(zeta_m)`, and formal scalars with rational exponents. All
//! serialized output is canonical, so repeated runs are byte-identical.

pub mod charsum;
pub mod cyclotomic;
pub mod error;
pub mod matgroup;
pub mod matrix;
pub mod partitions;
pub mod rat;
pub mod suites;
pub mod whittaker;

pub use error::{Error, Result};
