use super::width::{poset_width, ChainCover};
use crate::context::{ExtentLattice, ObjectSet};
use crate::error::{Error, Result};
use crate::scaling::{AttributeDomain, ManyValuedContext, PreScaling};

/// Value token used for objects above every extent of a chain.
pub const TOP_VALUE: &str = "⊤";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalDimension {
    pub dimension: usize,
    /// Minimum chain cover of the meet-irreducible extents.
    pub chains: ChainCover,
}

/// Width of the meet-irreducible extents, with the chain cover that
/// realises it.
pub fn ordinal_scaling_dimension(lat: &ExtentLattice) -> OrdinalDimension {
    let chains = poset_width(&lat.meet_irreducibles());
    OrdinalDimension {
        dimension: chains.width(),
        chains,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalReconstruction {
    pub context: ManyValuedContext,
    pub prescaling: PreScaling,
}

/// One many-valued attribute per chain. The value of an object is the
/// smallest chain extent containing it, or [`TOP_VALUE`]; values are
/// ordered by inclusion. Ordinal scaling of the result has the same
/// extents as `lat`.
pub fn reconstruct_ordinal_mv(
    lat: &ExtentLattice,
    chains: &[Vec<ObjectSet>],
) -> Result<OrdinalReconstruction> {
    let ctx = lat.context();
    let n = ctx.num_objects();
    let mut sorted_chains = Vec::with_capacity(chains.len());
    for chain in chains {
        let mut c: Vec<ObjectSet> = chain.iter().filter(|e| !e.is_full()).cloned().collect();
        c.sort_by_key(ObjectSet::len);
        if let Some(e) = c.iter().find(|e| e.domain() != n || !lat.is_extent(e)) {
            return Err(Error::Spec(format!("chain member {e:?} is not an extent")));
        }
        if let Some(w) = c.windows(2).find(|w| !w[0].is_proper_subset(&w[1])) {
            return Err(Error::Spec(format!(
                "{} and {} do not form a chain",
                ctx.render_objects(&w[0]),
                ctx.render_objects(&w[1])
            )));
        }
        sorted_chains.push(c);
    }
    if let Some(mi) = lat
        .meet_irreducibles()
        .into_iter()
        .find(|mi| !sorted_chains.iter().flatten().any(|e| e == mi))
    {
        return Err(Error::Spec(format!(
            "chains miss meet-irreducible extent {}",
            ctx.render_objects(&mi)
        )));
    }

    let attributes: Vec<String> = (1..=sorted_chains.len())
        .map(|i| format!("chain{i}"))
        .collect();
    let mut domains = Vec::with_capacity(sorted_chains.len());
    let mut columns: Vec<Vec<Option<String>>> = Vec::with_capacity(sorted_chains.len());
    for chain in &sorted_chains {
        let mut tokens: Vec<String> = chain.iter().map(|e| ctx.render_objects(e)).collect();
        tokens.push(TOP_VALUE.to_string());
        let column = (0..n)
            .map(|g| {
                let k = chain
                    .iter()
                    .position(|e| e.contains(g))
                    .unwrap_or(chain.len());
                Some(tokens[k].clone())
            })
            .collect();
        columns.push(column);
        domains.push(AttributeDomain::linear(tokens));
    }
    let rows = (0..n)
        .map(|g| columns.iter().map(|c| c[g].clone()).collect())
        .collect();
    Ok(OrdinalReconstruction {
        context: ManyValuedContext::new(ctx.objects().to_vec(), attributes, rows)?,
        prescaling: PreScaling::new(domains)?,
    })
}
