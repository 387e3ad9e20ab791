//! Machine-readable analysis reports.

use serde::{Deserialize, Serialize};

use crate::context::{ExtentLattice, FormalContext, ObjectSet};
use crate::dimensions::{
    is_extent_ladder, is_ferrers, DimensionReport, ExtentLadder, InterordinalDimension, LadderCover,
};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivability {
    pub atomistic: bool,
    pub attribute_complements_closed: bool,
    pub derivable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsdSearch {
    pub defined: bool,
    pub exact: bool,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub nodes: u64,
    /// Why the dimension is undefined.
    pub blocker: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDimensionSearch {
    pub exact: bool,
    pub searched: bool,
    pub lower: usize,
    pub upper: usize,
}

/// Witnesses as object names, so they can be checked against the context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    /// Minimum chain cover of the meet-irreducible extents.
    pub chains: Vec<Vec<Vec<String>>>,
    pub antichain: Vec<Vec<String>>,
    /// Ladder cover of the meet-irreducible extents, each ladder as its
    /// member extents.
    pub ladders: Vec<Vec<Vec<String>>>,
    /// Ferrers relations as `[object, attribute]` pairs.
    pub ferrers: Vec<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub objects: usize,
    pub attributes: usize,
    pub incidences: usize,
    pub concepts: usize,
    pub meet_irreducibles: usize,
    pub osd: usize,
    /// `null` when undefined or when the search budget ran out.
    pub isd: Option<usize>,
    /// `null` when only bounds are known.
    pub order_dimension: Option<usize>,
    pub width: usize,
    pub isd_bounds: [usize; 2],
    pub derivability: Derivability,
    pub isd_search: IsdSearch,
    pub order_dimension_search: OrderDimensionSearch,
    pub witnesses: Witnesses,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl AnalysisReport {
    pub fn new(lat: &ExtentLattice, report: &DimensionReport) -> Self {
        let ctx = lat.context();
        let names = |s: &ObjectSet| ctx.object_names(s);
        let (isd_search, ladders) = match &report.isd {
            InterordinalDimension::Undefined(ex) => (
                IsdSearch {
                    defined: false,
                    exact: true,
                    lower: None,
                    upper: None,
                    nodes: 0,
                    blocker: ex.describe(lat),
                },
                Vec::new(),
            ),
            InterordinalDimension::Defined(sol) => (
                IsdSearch {
                    defined: true,
                    exact: sol.is_exact(),
                    lower: Some(sol.lower),
                    upper: Some(sol.upper),
                    nodes: sol.nodes,
                    blocker: None,
                },
                sol.cover
                    .ladders
                    .iter()
                    .map(|l| l.members().iter().map(names).collect())
                    .collect(),
            ),
        };
        let od = &report.order_dimension;
        Self {
            schema_version: SCHEMA_VERSION,
            objects: ctx.num_objects(),
            attributes: ctx.num_attributes(),
            incidences: ctx.incidence_count(),
            concepts: report.concepts,
            meet_irreducibles: report.meet_irreducibles,
            osd: report.osd.dimension,
            isd: report.isd.dimension(),
            order_dimension: od.value(),
            width: report.bounds.width,
            isd_bounds: [report.bounds.lower, report.bounds.upper],
            derivability: Derivability {
                atomistic: report.derivability.atomistic,
                attribute_complements_closed: report.derivability.attribute_complements_closed,
                derivable: report.derivability.derivable(),
            },
            isd_search,
            order_dimension_search: OrderDimensionSearch {
                exact: od.is_exact(),
                searched: od.searched,
                lower: od.lower,
                upper: od.upper,
            },
            witnesses: Witnesses {
                chains: report
                    .osd
                    .chains
                    .chains
                    .iter()
                    .map(|c| c.iter().map(names).collect())
                    .collect(),
                antichain: report.osd.chains.antichain.iter().map(names).collect(),
                ladders,
                ferrers: od
                    .witness
                    .iter()
                    .map(|f| {
                        f.pairs()
                            .into_iter()
                            .map(|(g, m)| [ctx.objects()[g].clone(), ctx.attributes()[m].clone()])
                            .collect()
                    })
                    .collect(),
            },
            elapsed_ms: None,
        }
    }

    /// Pretty JSON with a trailing newline; field order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// Re-checks every witness against `ctx`: chains are chains of extents
    /// covering the meet-irreducibles, the antichain is one and as large,
    /// ladders are ladders covering the meet-irreducibles, and the Ferrers
    /// relations are staircases filling exactly the non-incidence.
    pub fn verify(&self, ctx: &FormalContext) -> Result<()> {
        let lat = ExtentLattice::build(ctx)?;
        let fail = |m: String| Err(Error::Spec(m));
        let set = |names: &Vec<String>| ctx.object_set(names);
        let mi = lat.meet_irreducibles();
        let w = &self.witnesses;

        let chains = w
            .chains
            .iter()
            .map(|c| c.iter().map(set).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if chains.len() != self.osd {
            return fail(format!(
                "{} chains for ordinal dimension {}",
                chains.len(),
                self.osd
            ));
        }
        for c in &chains {
            if c.iter().any(|e| !lat.is_extent(e))
                || c.windows(2).any(|p| !p[0].is_proper_subset(&p[1]))
            {
                return fail("a witness chain is not a chain of extents".into());
            }
        }
        if let Some(e) = mi
            .iter()
            .find(|e| !chains.iter().flatten().any(|x| x == *e))
        {
            return fail(format!("chains miss {}", ctx.render_objects(e)));
        }
        let antichain = w.antichain.iter().map(set).collect::<Result<Vec<_>>>()?;
        let incomparable = antichain
            .iter()
            .enumerate()
            .all(|(i, a)| antichain[i + 1..].iter().all(|b| a.is_incomparable(b)));
        if antichain.len() != self.osd || !incomparable || antichain.iter().any(|e| !mi.contains(e))
        {
            return fail("antichain does not certify the chain cover".into());
        }

        if self.isd_search.defined {
            let mut ladders = Vec::new();
            for l in &w.ladders {
                let members = l.iter().map(set).collect::<Result<Vec<_>>>()?;
                is_extent_ladder(&lat, &members).map_err(|v| Error::Spec(v.to_string()))?;
                ladders.push(
                    ExtentLadder::new(&lat, &members).map_err(|v| Error::Spec(v.to_string()))?,
                );
            }
            if Some(ladders.len()) != self.isd_search.upper {
                return fail("ladder count differs from the reported upper bound".into());
            }
            LadderCover {
                ladders,
                covered: mi,
            }
            .validate(&lat)
            .map_err(Error::Spec)?;
        }

        let mut filled = vec![vec![false; ctx.num_attributes()]; ctx.num_objects()];
        for f in &w.ferrers {
            let mut rows = vec![ctx.empty_attributes(); ctx.num_objects()];
            for [g, m] in f {
                let (Some(g), Some(m)) = (ctx.object_index(g), ctx.attribute_index(m)) else {
                    return fail(format!("unknown pair ({g}, {m})"));
                };
                if ctx.incident(g, m) {
                    return fail("Ferrers relation meets the incidence".into());
                }
                rows[g].insert(m);
                filled[g][m] = true;
            }
            if !is_ferrers(&rows) {
                return fail("witness relation is not Ferrers".into());
            }
        }
        let all_filled = (0..ctx.num_objects())
            .all(|g| (0..ctx.num_attributes()).all(|m| ctx.incident(g, m) || filled[g][m]));
        if !all_filled || w.ferrers.len() != self.order_dimension_search.upper {
            return fail("Ferrers witness does not fill the non-incidence".into());
        }
        Ok(())
    }
}
