//! Fixtures shared by unit tests.

use crate::context::FormalContext;

pub(crate) fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn from_strings(objects: &[&str], attributes: &[&str], rows: &[&str]) -> FormalContext {
    FormalContext::new(
        names(objects),
        names(attributes),
        rows.iter()
            .map(|r| r.chars().map(|c| c == 'X').collect())
            .collect(),
    )
    .unwrap()
}

pub(crate) fn drive() -> FormalContext {
    from_strings(
        &[
            "Conventional",
            "All-Wheel",
            "Mid-Wheel",
            "Rear-Wheel",
            "Front-Wheel",
        ],
        &["1", "2", "3", "4", "5", "6"],
        &["..XXXX", "X..XXX", "XX..XX", "XXX..X", "XXXXX."],
    )
}

pub(crate) fn diag3() -> FormalContext {
    from_strings(
        &["g1", "g2", "g3"],
        &["m1", "m2", "m3"],
        &["X..", ".X.", "..X"],
    )
}

pub(crate) fn nominal2() -> FormalContext {
    from_strings(&["a", "b"], &["p", "q"], &["X.", ".X"])
}

pub(crate) fn staircase() -> FormalContext {
    from_strings(&["g1", "g2"], &["m1", "m2"], &["XX", ".X"])
}

/// Exhaustive interordinal scaling dimension: every complement-closed
/// family of extent pairs is tried as a ladder, then the fewest ladders
/// covering all meet-irreducibles are found by breadth-first search over
/// coverage masks. `None` when some meet-irreducible fits in no ladder.
pub(crate) fn isd_oracle(ctx: &FormalContext) -> Option<usize> {
    use crate::context::ObjectSet;
    use std::collections::BTreeSet;
    let n = ctx.num_objects();
    let extents: BTreeSet<ObjectSet> = (0u32..1 << n)
        .map(|mask| ObjectSet::from_indices(n, (0..n).filter(|g| mask >> g & 1 == 1)))
        .filter(|a| ctx.common_objects(&ctx.common_attributes(a)) == *a)
        .collect();
    let full = ObjectSet::full(n);
    let mi: Vec<&ObjectSet> = extents
        .iter()
        .filter(|e| {
            let above: Vec<&ObjectSet> = extents.iter().filter(|f| e.is_proper_subset(f)).collect();
            !above.is_empty()
                && above
                    .iter()
                    .fold(full.clone(), |acc, f| acc.intersection(f))
                    != **e
        })
        .collect();
    let mut pairs: Vec<(ObjectSet, ObjectSet)> = Vec::new();
    for e in &extents {
        let c = e.complement();
        if !e.is_empty()
            && !c.is_empty()
            && extents.contains(&c)
            && !pairs.iter().any(|p| p.1 == *e)
        {
            pairs.push((e.clone(), c));
        }
    }
    let k = pairs.len();
    assert!(k < 20, "oracle too large");
    let mut coverage: BTreeSet<u32> = BTreeSet::new();
    for mask in 1u32..1 << k {
        let members: Vec<&ObjectSet> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| [&pairs[i].0, &pairs[i].1])
            .collect();
        let wide = members.iter().enumerate().any(|(a, x)| {
            members[a + 1..].iter().enumerate().any(|(b, y)| {
                x.is_incomparable(y)
                    && members[a + b + 2..]
                        .iter()
                        .any(|z| x.is_incomparable(z) && y.is_incomparable(z))
            })
        });
        if !wide {
            let cov = (0..mi.len())
                .filter(|&i| members.contains(&mi[i]))
                .fold(0u32, |acc, i| acc | 1 << i);
            coverage.insert(cov);
        }
    }
    let target = (1u32 << mi.len()) - 1;
    if target == 0 {
        return Some(0);
    }
    let mut reach: BTreeSet<u32> = [0].into();
    for d in 1..=mi.len() {
        reach = reach
            .iter()
            .flat_map(|r| coverage.iter().map(move |c| r | c))
            .collect();
        if reach.contains(&target) {
            return Some(d);
        }
    }
    None
}

pub(crate) fn random_context(
    rng: &mut impl rand::Rng,
    g: usize,
    m: usize,
    density: f64,
) -> FormalContext {
    FormalContext::new(
        (0..g).map(|i| format!("g{i}")).collect(),
        (0..m).map(|j| format!("m{j}")).collect(),
        (0..g)
            .map(|_| (0..m).map(|_| rng.gen_bool(density)).collect())
            .collect(),
    )
    .unwrap()
}

/// A three-ladder cover of the drive lattice: the eight outer extents plus
/// two dichotomic ladders.
pub(crate) fn outer_ladder_cover(lat: &crate::ExtentLattice) -> crate::dimensions::LadderCover {
    use crate::dimensions::{ExtentLadder, LadderCover};
    let ctx = lat.context();
    let set = |xs: &[&str]| ctx.object_set(xs).unwrap();
    let outer = ExtentLadder::from_chain(
        lat,
        &[
            set(&["Conventional"]),
            set(&["Conventional", "All-Wheel"]),
            set(&["Conventional", "All-Wheel", "Front-Wheel"]),
            set(&["Conventional", "All-Wheel", "Mid-Wheel", "Front-Wheel"]),
        ],
    )
    .unwrap();
    let a = ExtentLadder::from_chain(lat, &[set(&["All-Wheel", "Mid-Wheel"])]).unwrap();
    let b = ExtentLadder::from_chain(lat, &[set(&["Front-Wheel"])]).unwrap();
    assert_eq!(outer.len(), 8);
    let cover = LadderCover {
        ladders: vec![outer, a, b],
        covered: lat.meet_irreducibles(),
    };
    cover.validate(lat).unwrap();
    cover
}
