use std::collections::BTreeSet;

use super::cover::{greedy, min_set_cover};
use crate::context::{AttributeSet, BitSet, FormalContext};

/// Largest `|G|·|M|` solved exactly by default.
pub const DEFAULT_MAX_CELLS: usize = 48;

/// Node budget of the exact cover search.
const COVER_BUDGET: u64 = 2_000_000;

/// A relation between objects and attributes, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FerrersRelation {
    pub rows: Vec<AttributeSet>,
}

impl FerrersRelation {
    pub fn contains(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    pub fn cells(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    /// Object-attribute pairs, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(g, r)| r.iter().map(move |m| (g, m)))
            .collect()
    }
}

/// Rows pairwise nested, i.e. the relation is staircase-shaped.
pub fn is_ferrers(rows: &[AttributeSet]) -> bool {
    rows.iter().enumerate().all(|(i, a)| {
        rows[i + 1..]
            .iter()
            .all(|b| a.is_subset(b) || b.is_subset(a))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDimension {
    pub lower: usize,
    pub upper: usize,
    /// Ferrers relations inside the non-incidence whose union is all of it;
    /// there are `upper` of them.
    pub witness: Vec<FerrersRelation>,
    /// The exact search ran (rather than the bounds heuristics).
    pub searched: bool,
}

impl OrderDimension {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.upper)
    }
}

/// Non-incidence in the orientation with fewer rows.
struct Grid {
    rows: Vec<BitSet>,
    transposed: bool,
    cols: usize,
}

impl Grid {
    fn new(ctx: &FormalContext) -> Self {
        let transposed = ctx.num_attributes() < ctx.num_objects();
        let (rows, cols) = if transposed {
            (ctx.columns().to_vec(), ctx.num_objects())
        } else {
            (ctx.rows().to_vec(), ctx.num_attributes())
        };
        Self {
            rows: rows.iter().map(BitSet::complement).collect(),
            transposed,
            cols,
        }
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, s)| s.iter().map(move |c| (r, c)))
            .collect()
    }

    /// Back to object rows over attributes.
    fn relation(&self, rows: &[BitSet]) -> FerrersRelation {
        if !self.transposed {
            return FerrersRelation {
                rows: rows.to_vec(),
            };
        }
        let mut out = vec![BitSet::empty(rows.len()); self.cols];
        for (m, r) in rows.iter().enumerate() {
            for g in r {
                out[g].insert(m);
            }
        }
        FerrersRelation { rows: out }
    }

    fn incompatible(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        !self.rows[b.0].contains(a.1) && !self.rows[a.0].contains(b.1)
    }
}

/// Maximal Ferrers subrelations of the grid. Each is the nested family
/// `N(r₁), N(r₁)∩N(r₂), …` along some row order; rows already containing
/// the running intersection are taken without branching.
fn maximal_ferrers(grid: &Grid) -> Vec<Vec<BitSet>> {
    fn grow(
        grid: &Grid,
        cur: BitSet,
        assigned: Vec<Option<BitSet>>,
        found: &mut BTreeSet<Vec<BitSet>>,
    ) {
        let mut assigned = assigned;
        for (r, slot) in assigned.iter_mut().enumerate() {
            if slot.is_none() && cur.is_subset(&grid.rows[r]) {
                *slot = Some(cur.clone());
            }
        }
        let open: Vec<usize> = (0..assigned.len())
            .filter(|&r| assigned[r].is_none())
            .collect();
        if open.is_empty() || cur.is_empty() {
            let rows = assigned
                .into_iter()
                .map(|s| s.unwrap_or_else(|| BitSet::empty(grid.cols)))
                .collect();
            found.insert(rows);
            return;
        }
        for r in open {
            let mut next = assigned.clone();
            let narrowed = cur.intersection(&grid.rows[r]);
            next[r] = Some(narrowed.clone());
            grow(grid, narrowed, next, found);
        }
    }
    let mut found = BTreeSet::new();
    grow(
        grid,
        BitSet::full(grid.cols),
        vec![None; grid.rows.len()],
        &mut found,
    );
    let found: Vec<Vec<BitSet>> = found.into_iter().collect();
    let within = |a: &[BitSet], b: &[BitSet]| a.iter().zip(b).all(|(x, y)| x.is_subset(y));
    found
        .iter()
        .filter(|f| !found.iter().any(|o| o != *f && within(f, o)))
        .cloned()
        .collect()
}

/// Greedy clique of pairwise incompatible cells; no Ferrers relation inside
/// the non-incidence holds two of them.
fn crown_bound(grid: &Grid, cells: &[(usize, usize)]) -> usize {
    let degree = |c: (usize, usize)| cells.iter().filter(|&&d| grid.incompatible(c, d)).count();
    let mut order: Vec<(usize, usize)> = cells.to_vec();
    order.sort_by_key(|&c| std::cmp::Reverse(degree(c)));
    let mut best = 0;
    for start in 0..order.len() {
        let mut clique = vec![order[start]];
        for &c in &order {
            if clique.iter().all(|&d| grid.incompatible(c, d)) {
                clique.push(c);
            }
        }
        best = best.max(clique.len());
    }
    best.max(usize::from(!cells.is_empty()))
}

/// Ferrers relation grown greedily around uncovered cells.
fn greedy_bounds(grid: &Grid, cells: &[(usize, usize)]) -> Vec<Vec<BitSet>> {
    let mut uncovered: BTreeSet<(usize, usize)> = cells.iter().copied().collect();
    let mut chosen = Vec::new();
    while let Some(&(r0, _)) = uncovered.iter().next() {
        let n = grid.rows.len();
        let mut cur = grid.rows[r0].clone();
        let mut rows = vec![BitSet::empty(grid.cols); n];
        rows[r0] = cur.clone();
        let mut placed = vec![false; n];
        placed[r0] = true;
        loop {
            let gain = |r: usize, set: &BitSet| {
                set.iter().filter(|&c| uncovered.contains(&(r, c))).count()
            };
            let next = (0..n)
                .filter(|&r| !placed[r])
                .map(|r| {
                    let s = cur.intersection(&grid.rows[r]);
                    (gain(r, &s), r, s)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            match next {
                Some((g, r, s)) if g > 0 => {
                    placed[r] = true;
                    rows[r] = s.clone();
                    cur = s;
                }
                _ => break,
            }
        }
        for (r, s) in rows.iter().enumerate() {
            for c in s {
                uncovered.remove(&(r, c));
            }
        }
        chosen.push(rows);
    }
    chosen
}

/// Order dimension of the concept lattice of `ctx`, as the least number of
/// Ferrers relations whose union is the non-incidence.
///
/// Contexts with at most `max_cells` incidence cells are solved exactly by
/// set cover over the maximal Ferrers subrelations; larger ones (or an
/// exhausted search) get a crown lower bound and a greedy upper bound.
pub fn ferrers_order_dimension(ctx: &FormalContext, max_cells: usize) -> OrderDimension {
    let grid = Grid::new(ctx);
    let cells = grid.cells();
    if cells.is_empty() {
        return OrderDimension {
            lower: 0,
            upper: 0,
            witness: Vec::new(),
            searched: true,
        };
    }
    let lower = crown_bound(&grid, &cells);
    let greedy_cover = greedy_bounds(&grid, &cells);
    let bounds_only = |lower: usize, searched: bool| OrderDimension {
        lower: lower.min(greedy_cover.len()),
        upper: greedy_cover.len(),
        witness: greedy_cover.iter().map(|r| grid.relation(r)).collect(),
        searched,
    };
    if ctx.num_objects() * ctx.num_attributes() > max_cells {
        return bounds_only(lower, false);
    }

    let candidates = maximal_ferrers(&grid);
    let index = |cell: &(usize, usize)| cells.binary_search(cell).expect("cell of the grid");
    let sets: Vec<BitSet> = candidates
        .iter()
        .map(|rows| {
            let pairs: Vec<usize> = rows
                .iter()
                .enumerate()
                .flat_map(|(r, s)| s.iter().map(move |c| (r, c)))
                .map(|c| index(&c))
                .collect();
            BitSet::from_indices(cells.len(), pairs)
        })
        .collect();
    let seed = greedy(cells.len(), &sets);
    let search = min_set_cover(cells.len(), &sets, lower, Some(seed), COVER_BUDGET)
        .expect("every cell lies in a maximal Ferrers relation");
    if !search.exact && search.best.len() >= greedy_cover.len() {
        return bounds_only(lower, true);
    }
    let mut chosen = search.best.clone();
    chosen.sort_unstable();
    let upper = chosen.len();
    OrderDimension {
        lower: if search.exact { upper } else { lower },
        upper,
        witness: chosen
            .iter()
            .map(|&i| grid.relation(&candidates[i]))
            .collect(),
        searched: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{diag3, drive, names};
    use proptest::prelude::*;

    fn covers_non_incidence(ctx: &FormalContext, od: &OrderDimension) -> bool {
        od.witness.len() == od.upper
            && od.witness.iter().all(|f| is_ferrers(&f.rows))
            && (0..ctx.num_objects()).all(|g| {
                (0..ctx.num_attributes()).all(|m| {
                    let inside = od.witness.iter().any(|f| f.contains(g, m));
                    if ctx.incident(g, m) {
                        !inside
                    } else {
                        inside
                    }
                })
            })
    }

    /// Smallest k such that k Ferrers relations inside N cover N, trying
    /// every row order for every relation.
    fn brute_force(ctx: &FormalContext) -> usize {
        let n = ctx.num_objects();
        let cols = ctx.num_attributes();
        let non: Vec<BitSet> = ctx.rows().iter().map(BitSet::complement).collect();
        if non.iter().all(BitSet::is_empty) {
            return 0;
        }
        // all Ferrers relations inside N with nested rows, as cell masks
        let mut rels: BTreeSet<u64> = BTreeSet::new();
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        for order in perms(n) {
            let mut cur = BitSet::full(cols);
            let mut mask = 0u64;
            for &g in &order {
                cur.intersect_with(&non[g]);
                for m in &cur {
                    mask |= 1 << (g * cols + m);
                }
            }
            rels.insert(mask);
        }
        let target: u64 = (0..n)
            .flat_map(|g| non[g].iter().map(move |m| 1u64 << (g * cols + m)))
            .fold(0, |a, b| a | b);
        let rels: Vec<u64> = rels.into_iter().collect();
        let mut reach: BTreeSet<u64> = [0].into();
        for k in 1.. {
            reach = reach
                .iter()
                .flat_map(|&r| rels.iter().map(move |&f| r | f))
                .collect();
            if reach.contains(&target) {
                return k;
            }
        }
        unreachable!()
    }

    #[test]
    fn diag3_has_ferrers_dimension_two() {
        let ctx = diag3();
        let od = ferrers_order_dimension(&ctx, DEFAULT_MAX_CELLS);
        assert_eq!(od.value(), Some(2));
        assert!(covers_non_incidence(&ctx, &od));
    }

    #[test]
    fn drive_has_order_dimension_four() {
        let ctx = drive();
        let od = ferrers_order_dimension(&ctx, DEFAULT_MAX_CELLS);
        assert!(od.searched);
        assert_eq!(od.value(), Some(4));
        assert!(covers_non_incidence(&ctx, &od));
        assert_eq!(brute_force(&ctx), 4);
    }

    #[test]
    fn staircase_is_one() {
        let ctx = FormalContext::new(
            names(&["a", "b", "c"]),
            names(&["x", "y", "z"]),
            vec![
                vec![true, true, true],
                vec![false, true, true],
                vec![false, false, true],
            ],
        )
        .unwrap();
        assert_eq!(
            ferrers_order_dimension(&ctx, DEFAULT_MAX_CELLS).value(),
            Some(1)
        );
    }

    #[test]
    fn full_incidence_is_zero() {
        let ctx = FormalContext::new(names(&["a"]), names(&["x"]), vec![vec![true]]).unwrap();
        assert_eq!(
            ferrers_order_dimension(&ctx, DEFAULT_MAX_CELLS).value(),
            Some(0)
        );
    }

    #[test]
    fn bounds_mode_brackets_the_exact_value() {
        let ctx = drive();
        let od = ferrers_order_dimension(&ctx, 10);
        assert!(!od.searched);
        assert!(od.lower <= 4 && 4 <= od.upper);
        assert!(covers_non_incidence(&ctx, &od));
    }

    #[test]
    fn is_ferrers_checks_nesting() {
        let rows = [
            BitSet::from_indices(3, [0, 1]),
            BitSet::from_indices(3, [1]),
        ];
        assert!(is_ferrers(&rows));
        let rows = [BitSet::from_indices(3, [0]), BitSet::from_indices(3, [1])];
        assert!(!is_ferrers(&rows));
    }

    proptest! {
        #[test]
        fn matches_brute_force(g in 1usize..5, m in 1usize..5, bits in any::<u32>()) {
            let rows = (0..g).map(|i| (0..m).map(|j| bits >> (i * m + j) & 1 == 1).collect()).collect();
            let ctx = FormalContext::new(
                (0..g).map(|i| format!("g{i}")).collect(),
                (0..m).map(|j| format!("m{j}")).collect(),
                rows,
            ).unwrap();
            let od = ferrers_order_dimension(&ctx, DEFAULT_MAX_CELLS);
            prop_assert!(covers_non_incidence(&ctx, &od));
            prop_assert_eq!(od.value(), Some(brute_force(&ctx)));
            let bounds = ferrers_order_dimension(&ctx, 0);
            prop_assert!(bounds.lower <= od.upper && od.upper <= bounds.upper);
            prop_assert!(covers_non_incidence(&ctx, &bounds));
        }
    }
}
