//! File formats.

mod cxt;
mod dot;
mod mv;
mod report;

pub use cxt::{parse_cxt, write_cxt};
pub use dot::{export_dot, PALETTE};
pub use mv::{
    parse_mv, parse_mv_table, parse_scaling_spec, write_mv_table, write_scaling_spec,
    AttributeScaling, MvInput,
};
pub use report::{
    AnalysisReport, Derivability, IsdSearch, OrderDimensionSearch, Witnesses, SCHEMA_VERSION,
};
