//! Conceptual scaling for formal concept analysis.
//!
//! The crate covers the path from many-valued data to formal contexts via
//! standard scales, the theory of scale measures and views, and the
//! computation of the ordinal and interordinal scaling dimensions of a
//! context together with checkable witnesses (chain covers and extent
//! ladders) and many-valued reconstructions that realise them.

pub mod context;
pub mod dimensions;
pub mod error;
pub mod io;
pub mod measures;
pub mod scaling;

#[cfg(test)]
pub(crate) mod testing;

pub use context::{all_extents, AttributeSet, BitSet, ExtentLattice, FormalContext, ObjectSet};
pub use error::{Error, Result};
