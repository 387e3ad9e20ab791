use std::collections::HashMap;

use super::bitset::ObjectSet;
use super::formal::FormalContext;
use crate::error::{Error, Result};

/// Default cap on the number of extents [`ExtentLattice::build`] will enumerate.
pub const DEFAULT_EXTENT_LIMIT: usize = 1_000_000;

/// All extents of a context in lectic order, with the cover relation.
///
/// The lectic order used throughout treats the first object as the least
/// significant position, so extents appear in ascending order of their
/// characteristic binary number: `∅` first, `G` last.
#[derive(Debug, Clone)]
pub struct ExtentLattice {
    context: FormalContext,
    extents: Vec<ObjectSet>,
    upper_covers: Vec<Vec<usize>>,
    index: HashMap<ObjectSet, usize>,
}

/// Lectic successor of `current` among the closed sets of `close`.
fn next_closure(current: &ObjectSet, close: impl Fn(&ObjectSet) -> ObjectSet) -> Option<ObjectSet> {
    let n = current.domain();
    for i in 0..n {
        if current.contains(i) {
            continue;
        }
        let mut prefix = current.clone();
        prefix.retain_above(i);
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let closed = close(&candidate);
        let mut high = closed.clone();
        high.retain_above(i);
        if high == prefix {
            return Some(closed);
        }
    }
    None
}

impl ExtentLattice {
    /// Enumerates all extents with the default capacity limit.
    pub fn build(context: &FormalContext) -> Result<Self> {
        Self::build_with_limit(context, DEFAULT_EXTENT_LIMIT)
    }

    pub fn build_with_limit(context: &FormalContext, limit: usize) -> Result<Self> {
        let mut extents = Vec::new();
        let mut current = context.close(&context.empty_objects());
        loop {
            if extents.len() == limit {
                return Err(Error::Capacity {
                    limit,
                    found: extents.len(),
                });
            }
            extents.push(current.clone());
            match next_closure(&current, |a| context.close(a)) {
                Some(next) => current = next,
                None => break,
            }
        }
        let index: HashMap<ObjectSet, usize> = extents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let upper_covers = extents
            .iter()
            .map(|e| {
                let mut candidates: Vec<usize> = (0..context.num_objects())
                    .filter(|&g| !e.contains(g))
                    .map(|g| {
                        let mut s = e.clone();
                        s.insert(g);
                        index[&context.close(&s)]
                    })
                    .collect();
                candidates.sort_unstable();
                candidates.dedup();
                candidates
                    .iter()
                    .copied()
                    .filter(|&c| {
                        !candidates
                            .iter()
                            .any(|&d| d != c && extents[d].is_proper_subset(&extents[c]))
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            context: context.clone(),
            extents,
            upper_covers,
            index,
        })
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn extents(&self) -> &[ObjectSet] {
        &self.extents
    }

    pub fn len(&self) -> usize {
        self.extents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extents.is_empty()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn index_of(&self, set: &ObjectSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn is_extent(&self, set: &ObjectSet) -> bool {
        self.index.contains_key(set)
    }

    pub fn complement_is_extent(&self, set: &ObjectSet) -> bool {
        self.is_extent(&set.complement())
    }

    /// Extents with exactly one upper cover, in lectic order. `G` has none
    /// and is never returned.
    pub fn meet_irreducibles(&self) -> Vec<ObjectSet> {
        self.upper_covers
            .iter()
            .zip(&self.extents)
            .filter(|(covers, _)| covers.len() == 1)
            .map(|(_, e)| e.clone())
            .collect()
    }

    /// Pairs `(lower, upper)` of the cover relation.
    pub fn cover_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::BitSet;
    use crate::testing::{diag3, drive, names, nominal2};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn brute_force_extents(ctx: &FormalContext) -> BTreeSet<ObjectSet> {
        let n = ctx.num_objects();
        (0u32..1 << n)
            .map(|mask| {
                let a = BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
                // A'' computed cell by cell, without the bit-set helpers
                let intent: Vec<usize> = (0..ctx.num_attributes())
                    .filter(|&m| a.iter().all(|g| ctx.incident(g, m)))
                    .collect();
                BitSet::from_indices(
                    n,
                    (0..n).filter(|&g| intent.iter().all(|&m| ctx.incident(g, m))),
                )
            })
            .collect()
    }

    #[test]
    fn drive_has_24_extents() {
        let lat = ExtentLattice::build(&drive()).unwrap();
        assert_eq!(lat.len(), 24);
    }

    #[test]
    fn empty_context_has_one_extent() {
        let ctx = FormalContext::new(vec![], vec![], vec![]).unwrap();
        let lat = ExtentLattice::build(&ctx).unwrap();
        assert_eq!(lat.len(), 1);
        assert!(lat.extents()[0].is_empty());
        assert!(lat.meet_irreducibles().is_empty());
    }

    #[test]
    fn nominal_pair_extents() {
        let ctx = nominal2();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let rendered: Vec<String> = lat
            .extents()
            .iter()
            .map(|e| ctx.render_objects(e))
            .collect();
        assert_eq!(rendered, ["{}", "{a}", "{b}", "{a,b}"]);
        let mi: Vec<String> = lat
            .meet_irreducibles()
            .iter()
            .map(|e| ctx.render_objects(e))
            .collect();
        assert_eq!(mi, ["{a}", "{b}"]);
    }

    #[test]
    fn capacity_error() {
        let err = ExtentLattice::build_with_limit(&drive(), 10).unwrap_err();
        assert_eq!(
            err,
            Error::Capacity {
                limit: 10,
                found: 10
            }
        );
    }

    #[test]
    fn drive_meet_irreducibles_are_attribute_extents() {
        let ctx = drive();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let mi: BTreeSet<_> = lat.meet_irreducibles().into_iter().collect();
        let attr: BTreeSet<_> = ctx.columns().iter().cloned().collect();
        assert_eq!(mi, attr);
        assert_eq!(mi.len(), 6);
    }

    #[test]
    fn staircase_chain_meet_irreducibles() {
        // g1:{m1}, g2:{}: extents ∅ ⊂ {g1} ⊂ {g1,g2}
        let ctx = FormalContext::new(
            names(&["g1", "g2"]),
            names(&["m1", "m2"]),
            vec![vec![true, false], vec![false, false]],
        )
        .unwrap();
        let lat = ExtentLattice::build(&ctx).unwrap();
        assert_eq!(lat.len(), 3);
        let mi: Vec<String> = lat
            .meet_irreducibles()
            .iter()
            .map(|e| ctx.render_objects(e))
            .collect();
        assert_eq!(mi, ["{}", "{g1}"]);
    }

    #[test]
    fn extent_membership() {
        let ctx = drive();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let one = ctx.extent(0).clone();
        assert_eq!(
            ctx.render_objects(&one),
            "{All-Wheel,Mid-Wheel,Rear-Wheel,Front-Wheel}"
        );
        assert!(lat.is_extent(&one));
        assert!(lat.complement_is_extent(&one));
        let g = ctx.all_objects();
        assert!(lat.is_extent(&g));
        assert_eq!(
            lat.complement_is_extent(&g),
            lat.is_extent(&ctx.empty_objects())
        );

        let d = diag3();
        let dl = ExtentLattice::build(&d).unwrap();
        let g1 = d.object_set(&["g1"]).unwrap();
        assert!(dl.is_extent(&g1));
        assert!(!dl.complement_is_extent(&g1));
    }

    #[test]
    fn lectic_order_is_ascending() {
        let lat = ExtentLattice::build(&drive()).unwrap();
        assert!(lat.extents().windows(2).all(|w| w[0] < w[1]));
        assert!(lat.extents().last().unwrap().is_full());
    }

    fn arb_small_context(max_g: usize, max_m: usize) -> impl Strategy<Value = FormalContext> {
        (0usize..=max_g, 0usize..=max_m).prop_flat_map(|(g, m)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), g).prop_map(
                move |rows| {
                    FormalContext::new(
                        (0..g).map(|i| format!("g{i}")).collect(),
                        (0..m).map(|i| format!("m{i}")).collect(),
                        rows,
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(ctx in arb_small_context(5, 6)) {
            let lat = ExtentLattice::build(&ctx).unwrap();
            let got: BTreeSet<_> = lat.extents().iter().cloned().collect();
            prop_assert_eq!(got.len(), lat.len());
            prop_assert_eq!(got, brute_force_extents(&ctx));
        }

        #[test]
        fn covers_are_transitive_reduction(ctx in arb_small_context(6, 6)) {
            let lat = ExtentLattice::build(&ctx).unwrap();
            let ext = lat.extents();
            for i in 0..ext.len() {
                for j in 0..ext.len() {
                    let is_cover = ext[i].is_proper_subset(&ext[j])
                        && !ext.iter().any(|k| ext[i].is_proper_subset(k) && k.is_proper_subset(&ext[j]));
                    prop_assert_eq!(lat.upper_covers(i).contains(&j), is_cover);
                }
            }
        }

        #[test]
        fn meet_irreducibles_are_indecomposable(ctx in arb_small_context(6, 6)) {
            let lat = ExtentLattice::build(&ctx).unwrap();
            let mi: BTreeSet<_> = lat.meet_irreducibles().into_iter().collect();
            for e in lat.extents() {
                let mut meet = ctx.all_objects();
                for f in lat.extents().iter().filter(|f| e.is_proper_subset(f)) {
                    meet.intersect_with(f);
                }
                // an extent is meet-irreducible iff it is not the meet of its proper supersets
                prop_assert_eq!(mi.contains(e), !e.is_full() && meet != *e);
            }
            for col in ctx.columns() {
                prop_assert!(lat.is_extent(col));
            }
        }

        #[test]
        fn clarify_preserves_extent_lattice(ctx in arb_small_context(6, 6)) {
            let clar = ctx.clarify();
            let a = ExtentLattice::build(&ctx).unwrap();
            let b = ExtentLattice::build(&clar).unwrap();
            prop_assert_eq!(a.len(), b.len());
            // map each clarified object back to the original objects sharing its intent
            let lift = |e: &ObjectSet| {
                BitSet::from_indices(ctx.num_objects(), (0..ctx.num_objects()).filter(|&g| {
                    let rep = clar.object_index(&ctx.objects()[(0..ctx.num_objects())
                        .find(|&h| ctx.intent(h) == ctx.intent(g)).unwrap()]).unwrap();
                    e.contains(rep)
                }))
            };
            let lifted: BTreeSet<_> = b.extents().iter().map(lift).collect();
            let orig: BTreeSet<_> = a.extents().iter().cloned().collect();
            prop_assert_eq!(lifted, orig);
        }
    }
}
