//! Formal contexts, derivation operators, and the extent lattice.

mod bitset;
mod formal;
mod lattice;

pub use bitset::{AttributeSet, BitSet, ObjectSet, Ones};
pub use formal::FormalContext;
pub use lattice::{ExtentLattice, DEFAULT_EXTENT_LIMIT};

use crate::error::Result;

/// Every extent of `ctx` in lectic order, with covers computed.
pub fn all_extents(ctx: &FormalContext) -> Result<ExtentLattice> {
    ExtentLattice::build(ctx)
}
