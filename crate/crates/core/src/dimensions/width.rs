use std::collections::VecDeque;

use crate::context::ObjectSet;

/// Minimum chain cover of a family of sets ordered by inclusion, together
/// with an antichain of the same size certifying minimality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCover {
    /// Each chain in ascending order.
    pub chains: Vec<Vec<ObjectSet>>,
    pub antichain: Vec<ObjectSet>,
}

impl ChainCover {
    pub fn width(&self) -> usize {
        self.chains.len()
    }
}

/// Maximum matching in the strict-containment graph `i → j` iff `e_i ⊂ e_j`.
struct Matching {
    adj: Vec<Vec<usize>>,
    /// Right partner of each left vertex.
    left: Vec<Option<usize>>,
    /// Left partner of each right vertex.
    right: Vec<Option<usize>>,
}

impl Matching {
    fn new(elements: &[ObjectSet]) -> Self {
        let n = elements.len();
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| elements[i].is_proper_subset(&elements[j]))
                    .collect()
            })
            .collect();
        let mut m = Self {
            adj,
            left: vec![None; n],
            right: vec![None; n],
        };
        for u in 0..n {
            let mut seen = vec![false; n];
            m.augment(u, &mut seen);
        }
        m
    }

    fn augment(&mut self, u: usize, seen: &mut [bool]) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match self.right[v] {
                None => true,
                Some(w) => self.augment(w, seen),
            };
            if free {
                self.left[u] = Some(v);
                self.right[v] = Some(u);
                return true;
            }
        }
        false
    }

    fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }
}

/// Width of `elements` under `⊆`, with a minimum chain cover and a maximum
/// antichain.
///
/// Chains come from a maximum matching on the containment DAG (Dilworth via
/// König); the antichain is read off the minimum vertex cover. Duplicate
/// elements are ignored after their first occurrence.
pub fn poset_width(elements: &[ObjectSet]) -> ChainCover {
    let mut unique: Vec<ObjectSet> = Vec::with_capacity(elements.len());
    for e in elements {
        if !unique.contains(e) {
            unique.push(e.clone());
        }
    }
    let elements = &unique[..];
    let n = elements.len();
    let matching = Matching::new(elements);

    let chains: Vec<Vec<ObjectSet>> = (0..n)
        .filter(|&v| matching.right[v].is_none())
        .map(|start| {
            let mut chain = vec![elements[start].clone()];
            let mut at = start;
            while let Some(next) = matching.left[at] {
                chain.push(elements[next].clone());
                at = next;
            }
            chain
        })
        .collect();

    // Alternating reachability from unmatched left vertices.
    let mut reach_left = vec![false; n];
    let mut reach_right = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| matching.left[u].is_none()).collect();
    for &u in &queue {
        reach_left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &matching.adj[u] {
            if reach_right[v] {
                continue;
            }
            reach_right[v] = true;
            if let Some(w) = matching.right[v] {
                if !reach_left[w] {
                    reach_left[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let antichain: Vec<ObjectSet> = (0..n)
        .filter(|&i| reach_left[i] && !reach_right[i])
        .map(|i| elements[i].clone())
        .collect();

    assert_eq!(chains.len(), n - matching.size());
    assert_eq!(
        antichain.len(),
        chains.len(),
        "antichain and chain cover must certify each other"
    );
    ChainCover { chains, antichain }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::BitSet;
    use crate::testing::drive;
    use proptest::prelude::*;

    fn brute_force_width(elements: &[ObjectSet]) -> usize {
        let n = elements.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<&ObjectSet> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| &elements[i])
                    .collect();
                picked.iter().enumerate().all(|(a, x)| {
                    picked[a + 1..]
                        .iter()
                        .all(|y| !x.is_subset(y) && !y.is_subset(x))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn check(elements: &[ObjectSet], cover: &ChainCover) {
        let mut all: Vec<&ObjectSet> = cover.chains.iter().flatten().collect();
        assert_eq!(all.len(), elements.len());
        all.sort();
        all.dedup();
        assert_eq!(all.len(), elements.len());
        for chain in &cover.chains {
            assert!(chain.windows(2).all(|w| w[0].is_proper_subset(&w[1])));
        }
        for (i, a) in cover.antichain.iter().enumerate() {
            for b in &cover.antichain[i + 1..] {
                assert!(a.is_incomparable(b));
            }
        }
    }

    #[test]
    fn drive_attribute_extents_have_width_four() {
        let ctx = drive();
        let cover = poset_width(ctx.columns());
        check(ctx.columns(), &cover);
        assert_eq!(cover.width(), 4);
        assert_eq!(brute_force_width(ctx.columns()), 4);
    }

    #[test]
    fn chain_has_width_one() {
        let chain: Vec<ObjectSet> = (0..5).map(|k| BitSet::from_indices(5, 0..k)).collect();
        assert_eq!(poset_width(&chain).width(), 1);
    }

    #[test]
    fn singletons_form_an_antichain() {
        let sets: Vec<ObjectSet> = (0..3).map(|k| BitSet::from_indices(3, [k])).collect();
        let cover = poset_width(&sets);
        assert_eq!(cover.width(), 3);
        assert_eq!(cover.antichain.len(), 3);
    }

    #[test]
    fn empty_family() {
        let cover = poset_width(&[]);
        assert_eq!(cover.width(), 0);
        assert!(cover.antichain.is_empty());
    }

    proptest! {
        #[test]
        fn matches_brute_force(masks in proptest::collection::btree_set(0u32..64, 0..12)) {
            let elements: Vec<ObjectSet> = masks
                .iter()
                .map(|m| BitSet::from_indices(6, (0..6).filter(|i| m >> i & 1 == 1)))
                .collect();
            let cover = poset_width(&elements);
            check(&elements, &cover);
            prop_assert_eq!(cover.width(), brute_force_width(&elements));
        }
    }
}
