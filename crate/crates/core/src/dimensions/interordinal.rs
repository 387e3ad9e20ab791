use std::collections::{BTreeMap, BTreeSet};

use super::cover::min_set_cover;
use super::ladder::{is_extent_ladder, ExtentLadder, LadderCover};
use super::width::{poset_width, ChainCover};
use crate::context::{BitSet, ExtentLattice, ObjectSet};
use crate::error::{Error, Result};
use crate::scaling::{
    build_scale, AttributeDomain, ManyValuedContext, PreScaling, Scale, ScaleKind,
};

/// Default node budget for the ladder-cover search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Derivability conditions for interordinal scaling: atomisticity and
/// complement-closedness of the attribute extents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivabilityCheck {
    pub atomistic: bool,
    pub attribute_complements_closed: bool,
    /// First attribute whose extent complement is not an extent.
    pub open_attribute: Option<usize>,
}

impl DerivabilityCheck {
    pub fn derivable(&self) -> bool {
        self.atomistic && self.attribute_complements_closed
    }
}

pub fn interordinal_derivability(lat: &ExtentLattice) -> DerivabilityCheck {
    let ctx = lat.context();
    let open_attribute = ctx
        .columns()
        .iter()
        .position(|c| !lat.complement_is_extent(c));
    DerivabilityCheck {
        atomistic: ctx.is_atomistic(),
        attribute_complements_closed: open_attribute.is_none(),
        open_attribute,
    }
}

/// Why no ladder can contain a meet-irreducible extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Blocker {
    /// The empty set is meet-irreducible; ladders hold nonempty extents only.
    EmptyIrreducible,
    /// The complement of this meet-irreducible extent is not an extent.
    OpenComplement(ObjectSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsdExistence {
    /// Every meet-irreducible extent fits in some ladder.
    pub exists: bool,
    /// Lectically first obstruction.
    pub blocker: Option<Blocker>,
    pub derivability: DerivabilityCheck,
}

impl IsdExistence {
    pub fn describe(&self, lat: &ExtentLattice) -> Option<String> {
        self.blocker.as_ref().map(|b| match b {
            Blocker::EmptyIrreducible => "the empty extent is meet-irreducible".to_string(),
            Blocker::OpenComplement(e) => format!(
                "complement of {} is not an extent",
                lat.context().render_objects(e)
            ),
        })
    }
}

/// Whether the meet-irreducible extents can be covered by ladders at all.
pub fn isd_exists(lat: &ExtentLattice) -> IsdExistence {
    let blocker = lat.meet_irreducibles().into_iter().find_map(|e| {
        if e.is_empty() {
            Some(Blocker::EmptyIrreducible)
        } else if !lat.complement_is_extent(&e) {
            Some(Blocker::OpenComplement(e))
        } else {
            None
        }
    });
    IsdExistence {
        exists: blocker.is_none(),
        blocker,
        derivability: interordinal_derivability(lat),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsdBounds {
    /// Width of the meet-irreducible extents.
    pub width: usize,
    pub lower: usize,
    pub upper: usize,
    pub chains: ChainCover,
    /// One ladder per chain (chain plus complements); present when the
    /// interordinal dimension is defined.
    pub upper_witness: Option<LadderCover>,
}

/// `⌈w/2⌉ ≤ isd ≤ w` for the width `w` of the meet-irreducible extents.
pub fn isd_bounds(lat: &ExtentLattice) -> IsdBounds {
    let mi = lat.meet_irreducibles();
    let chains = poset_width(&mi);
    let width = chains.width();
    let upper_witness = if isd_exists(lat).exists {
        let ladders = chains
            .chains
            .iter()
            .map(|c| {
                ExtentLadder::from_chain(lat, c).expect("complemented chain of extents is a ladder")
            })
            .collect();
        Some(LadderCover {
            ladders,
            covered: mi,
        })
    } else {
        None
    };
    IsdBounds {
        width,
        lower: width.div_ceil(2),
        upper: width,
        chains,
        upper_witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsdSolution {
    pub lower: usize,
    pub upper: usize,
    /// Best cover found; its size is `upper`.
    pub cover: LadderCover,
    pub nodes: u64,
}

impl IsdSolution {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn dimension(&self) -> Option<usize> {
        self.is_exact().then_some(self.upper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterordinalDimension {
    Undefined(IsdExistence),
    Defined(IsdSolution),
}

impl InterordinalDimension {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            InterordinalDimension::Defined(s) => s.dimension(),
            InterordinalDimension::Undefined(_) => None,
        }
    }
}

pub fn interordinal_scaling_dimension(lat: &ExtentLattice) -> InterordinalDimension {
    interordinal_scaling_dimension_with_budget(lat, DEFAULT_SEARCH_BUDGET)
}

/// Smallest number of extent ladders covering all meet-irreducible extents.
///
/// Candidates are the ladders spanned by maximal chains inside
/// `S = MI ∪ {G∖E : E ∈ MI}`; any ladder's coverage of `MI` is contained in
/// one of them. A branch-and-bound set cover picks the minimum, seeded with
/// the width-many ladders of [`isd_bounds`]. `budget` caps the nodes of
/// both the chain enumeration and the cover search; when it runs out the
/// result carries `lower < upper`.
pub fn interordinal_scaling_dimension_with_budget(
    lat: &ExtentLattice,
    budget: u64,
) -> InterordinalDimension {
    let existence = isd_exists(lat);
    if !existence.exists {
        return InterordinalDimension::Undefined(existence);
    }
    let bounds = isd_bounds(lat);
    let fallback = bounds
        .upper_witness
        .expect("defined dimension has a witness");
    let mi = fallback.covered.clone();
    let lower = bounds.lower;

    let Some((candidates, mut nodes)) = candidate_ladders(lat, &mi, budget) else {
        return InterordinalDimension::Defined(IsdSolution {
            lower,
            upper: fallback.len(),
            cover: fallback,
            nodes: budget,
        });
    };

    let position: BTreeMap<&ObjectSet, usize> =
        mi.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let coverage: Vec<BitSet> = candidates
        .iter()
        .map(|c| BitSet::from_indices(mi.len(), c.iter().filter_map(|e| position.get(e).copied())))
        .collect();
    // seed with the chain-cover witness, expressed through the candidates
    let seed: Vec<usize> = fallback
        .ladders
        .iter()
        .map(|l| {
            let want = BitSet::from_indices(
                mi.len(),
                l.members().iter().filter_map(|e| position.get(e).copied()),
            );
            (0..coverage.len())
                .find(|&i| want.is_subset(&coverage[i]))
                .expect("every ladder's coverage lies within a candidate")
        })
        .collect();
    let search = min_set_cover(
        mi.len(),
        &coverage,
        lower,
        Some(seed),
        budget.saturating_sub(nodes),
    )
    .expect("candidates cover every meet-irreducible extent");
    nodes += search.nodes;

    let mut chosen = search.best;
    chosen.sort_unstable();
    let ladders = chosen
        .iter()
        .map(|&i| ExtentLadder::new(lat, &candidates[i]).expect("candidate is a ladder"))
        .collect::<Vec<_>>();
    let upper = ladders.len();
    InterordinalDimension::Defined(IsdSolution {
        lower: if search.exact { upper } else { lower },
        upper,
        cover: LadderCover {
            ladders,
            covered: mi,
        },
        nodes,
    })
}

/// Ladders from maximal chains of `S`, reduced to those whose coverage of
/// `mi` is not strictly contained in another's. Lectic order of member
/// lists; `None` when the enumeration exceeds `budget`.
fn candidate_ladders(
    lat: &ExtentLattice,
    mi: &[ObjectSet],
    budget: u64,
) -> Option<(Vec<Vec<ObjectSet>>, u64)> {
    let mut pool: BTreeSet<ObjectSet> = mi.iter().cloned().collect();
    pool.extend(mi.iter().map(ObjectSet::complement));
    let pool: Vec<ObjectSet> = pool.into_iter().collect();
    let n = pool.len();
    // Hasse diagram of S
    let up: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    pool[i].is_proper_subset(&pool[j])
                        && !(0..n).any(|k| {
                            pool[i].is_proper_subset(&pool[k]) && pool[k].is_proper_subset(&pool[j])
                        })
                })
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..n)
        .filter(|&j| !(0..n).any(|i| up[i].contains(&j)))
        .collect();

    let mut ladders: BTreeSet<Vec<ObjectSet>> = BTreeSet::new();
    let mut nodes = 0u64;
    let mut stack: Vec<usize> = Vec::new();
    fn walk(
        at: usize,
        up: &[Vec<usize>],
        pool: &[ObjectSet],
        stack: &mut Vec<usize>,
        ladders: &mut BTreeSet<Vec<ObjectSet>>,
        nodes: &mut u64,
        budget: u64,
    ) -> bool {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        stack.push(at);
        if up[at].is_empty() {
            let mut members: BTreeSet<ObjectSet> = BTreeSet::new();
            for &i in stack.iter() {
                members.insert(pool[i].clone());
                members.insert(pool[i].complement());
            }
            ladders.insert(members.into_iter().collect());
        } else {
            for &next in &up[at] {
                if !walk(next, up, pool, stack, ladders, nodes, budget) {
                    return false;
                }
            }
        }
        stack.pop();
        true
    }
    for &start in &minimal {
        if !walk(
            start,
            &up,
            &pool,
            &mut stack,
            &mut ladders,
            &mut nodes,
            budget,
        ) {
            return None;
        }
    }

    let ladders: Vec<Vec<ObjectSet>> = ladders.into_iter().collect();
    let mi_set: BTreeSet<&ObjectSet> = mi.iter().collect();
    let cover_of = |l: &Vec<ObjectSet>| -> BTreeSet<ObjectSet> {
        l.iter().filter(|e| mi_set.contains(e)).cloned().collect()
    };
    let covers: Vec<BTreeSet<ObjectSet>> = ladders.iter().map(cover_of).collect();
    let keep: Vec<Vec<ObjectSet>> = ladders
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !covers.iter().enumerate().any(|(j, other)| {
                j != i && covers[i].is_subset(other) && (covers[i].len() < other.len() || j < i)
            })
        })
        .map(|(_, l)| l.clone())
        .collect();
    debug_assert!(keep.iter().all(|l| is_extent_ladder(lat, l).is_ok()));
    Some((keep, nodes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterordinalReconstruction {
    pub context: ManyValuedContext,
    pub prescaling: PreScaling,
    /// Interordinal scale of each attribute; its attribute extents pulled
    /// back to the objects are exactly the ladder's members.
    pub scales: Vec<Scale>,
}

/// One many-valued attribute per ladder. Its values are the ladder's
/// blocks (minimal nonempty intersections of members) in chain order, and
/// each object takes the block containing it. Interordinal scaling of the
/// result reproduces every meet-irreducible extent and hence every extent
/// of `lat`.
pub fn reconstruct_interordinal_mv(
    lat: &ExtentLattice,
    cover: &LadderCover,
) -> Result<InterordinalReconstruction> {
    cover.validate(lat).map_err(Error::Spec)?;
    let ctx = lat.context();
    let n = ctx.num_objects();
    let attributes: Vec<String> = (1..=cover.ladders.len())
        .map(|i| format!("ladder{i}"))
        .collect();
    let mut domains = Vec::new();
    let mut columns: Vec<Vec<Option<String>>> = Vec::new();
    for ladder in &cover.ladders {
        let blocks = ladder.blocks(n);
        let tokens: Vec<String> = blocks.iter().map(|b| ctx.render_objects(b)).collect();
        let column = (0..n)
            .map(|g| {
                let k = blocks
                    .iter()
                    .position(|b| b.contains(g))
                    .expect("blocks partition G");
                Some(tokens[k].clone())
            })
            .collect();
        columns.push(column);
        domains.push(AttributeDomain::linear(tokens));
    }
    let scales = domains
        .iter()
        .map(|d| build_scale(ScaleKind::Interordinal, d))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..n)
        .map(|g| columns.iter().map(|c| c[g].clone()).collect())
        .collect();
    Ok(InterordinalReconstruction {
        context: ManyValuedContext::new(ctx.objects().to_vec(), attributes, rows)?,
        prescaling: PreScaling::new(domains)?,
        scales,
    })
}
