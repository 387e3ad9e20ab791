//! Scaling dimensions.

mod cover;
mod ferrers;
mod interordinal;
mod ladder;
mod ordinal;
mod report;
mod width;

pub use ferrers::{
    ferrers_order_dimension, is_ferrers, FerrersRelation, OrderDimension, DEFAULT_MAX_CELLS,
};
pub use interordinal::{
    interordinal_derivability, interordinal_scaling_dimension,
    interordinal_scaling_dimension_with_budget, isd_bounds, isd_exists,
    reconstruct_interordinal_mv, Blocker, DerivabilityCheck, InterordinalDimension,
    InterordinalReconstruction, IsdBounds, IsdExistence, IsdSolution, DEFAULT_SEARCH_BUDGET,
};
pub use ladder::{is_extent_ladder, ExtentLadder, LadderCover, LadderViolation};
pub use ordinal::{
    ordinal_scaling_dimension, reconstruct_ordinal_mv, OrdinalDimension, OrdinalReconstruction,
    TOP_VALUE,
};
pub use report::{analyze, AnalysisOptions, DimensionReport};
pub use width::{poset_width, ChainCover};
