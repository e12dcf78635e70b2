//! Exact total positivity for `GL_n`.
//!
//! The crate covers the totally positive parts of the unipotent radicals, the
//! torus and the group (in Lusztig's coordinates along reduced words), the
//! positive and negative parts of the flag variety, the positive part of the
//! space of maximal tori obtained by intersecting a positive with a negative
//! Borel subgroup, and the map sending a totally positive matrix to its
//! connected centralizer. All group-level computations run over exact
//! rationals.

pub mod error;
pub mod exact_linalg;
pub mod explorer;
pub mod flags;
pub mod gl_small;
pub mod pimap;
pub mod pinning;
pub mod tori;

pub use error::{Error, Result};
