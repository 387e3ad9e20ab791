use super::ferrers::{ferrers_order_dimension, OrderDimension, DEFAULT_MAX_CELLS};
use super::interordinal::{
    interordinal_scaling_dimension_with_budget, isd_bounds, DerivabilityCheck,
    InterordinalDimension, IsdBounds, DEFAULT_SEARCH_BUDGET,
};
use super::ordinal::{ordinal_scaling_dimension, OrdinalDimension};
use crate::context::ExtentLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub search_budget: u64,
    pub max_cells: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            search_budget: DEFAULT_SEARCH_BUDGET,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

/// Every dimension of one context, each with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub concepts: usize,
    pub meet_irreducibles: usize,
    pub osd: OrdinalDimension,
    pub isd: InterordinalDimension,
    pub bounds: IsdBounds,
    pub order_dimension: OrderDimension,
    pub derivability: DerivabilityCheck,
}

/// Runs the ordinal, interordinal and order-dimension solvers side by side.
pub fn analyze(lat: &ExtentLattice, options: AnalysisOptions) -> DimensionReport {
    let (osd, isd, order_dimension) = std::thread::scope(|s| {
        let osd = s.spawn(|| ordinal_scaling_dimension(lat));
        let isd =
            s.spawn(|| interordinal_scaling_dimension_with_budget(lat, options.search_budget));
        let od = ferrers_order_dimension(lat.context(), options.max_cells);
        (
            osd.join().expect("ordinal solver panicked"),
            isd.join().expect("interordinal solver panicked"),
            od,
        )
    });
    let derivability = match &isd {
        InterordinalDimension::Undefined(ex) => ex.derivability.clone(),
        InterordinalDimension::Defined(_) => super::interordinal::interordinal_derivability(lat),
    };
    DimensionReport {
        concepts: lat.len(),
        meet_irreducibles: lat.meet_irreducibles().len(),
        bounds: isd_bounds(lat),
        osd,
        isd,
        order_dimension,
        derivability,
    }
}
