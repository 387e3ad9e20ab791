//! Exact minimum set cover by depth-first branch and bound.

use crate::context::BitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CoverSearch {
    /// Indices of the chosen sets, in the order they were chosen.
    pub best: Vec<usize>,
    /// Search ran to completion (or met the lower bound).
    pub exact: bool,
    pub nodes: u64,
}

struct Search<'a> {
    sets: &'a [BitSet],
    containing: Vec<Vec<usize>>,
    lower: usize,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    stack: Vec<usize>,
    aborted: bool,
}

/// Smallest subfamily of `sets` whose union is `0..universe`.
///
/// `initial` seeds the incumbent (it must be a cover). The search branches
/// on the uncovered element with the fewest candidate sets and tries those
/// sets by descending fresh coverage, ties broken by index. It stops at
/// `lower` or after `budget` nodes, in which case `exact` is false.
/// Returns `None` when the sets do not cover the universe.
pub(crate) fn min_set_cover(
    universe: usize,
    sets: &[BitSet],
    lower: usize,
    initial: Option<Vec<usize>>,
    budget: u64,
) -> Option<CoverSearch> {
    let mut containing = vec![Vec::new(); universe];
    for (i, s) in sets.iter().enumerate() {
        for e in s {
            containing[e].push(i);
        }
    }
    if containing.iter().any(Vec::is_empty) {
        return None;
    }
    let initial = initial.unwrap_or_else(|| greedy(universe, sets));
    let mut search = Search {
        sets,
        containing,
        lower,
        budget,
        nodes: 0,
        best: initial,
        stack: Vec::new(),
        aborted: false,
    };
    if search.best.len() > lower {
        search.descend(BitSet::full(universe));
    }
    Some(CoverSearch {
        exact: !search.aborted,
        nodes: search.nodes,
        best: search.best,
    })
}

/// Repeatedly takes the set with the largest fresh coverage.
pub(crate) fn greedy(universe: usize, sets: &[BitSet]) -> Vec<usize> {
    let mut uncovered = BitSet::full(universe);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (i, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection(&uncovered).len()))
            .fold((usize::MAX, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if gain == 0 {
            break;
        }
        chosen.push(i);
        uncovered.difference_with(&sets[i]);
    }
    chosen
}

impl Search<'_> {
    fn descend(&mut self, uncovered: BitSet) {
        if self.aborted || self.best.len() <= self.lower {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if uncovered.is_empty() {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        let max_gain = self
            .sets
            .iter()
            .map(|s| s.intersection(&uncovered).len())
            .max()
            .unwrap_or(0);
        let needed = uncovered.len().div_ceil(max_gain.max(1));
        if self.stack.len() + needed.max(1) >= self.best.len() {
            return;
        }
        let pivot = uncovered
            .iter()
            .min_by_key(|&e| self.containing[e].len())
            .expect("uncovered is nonempty");
        let mut options: Vec<(usize, usize)> = self.containing[pivot]
            .iter()
            .map(|&i| (i, self.sets[i].intersection(&uncovered).len()))
            .collect();
        options.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (i, _) in options {
            self.stack.push(i);
            self.descend(uncovered.difference(&self.sets[i]));
            self.stack.pop();
            if self.aborted {
                return;
            }
        }
    }
}
