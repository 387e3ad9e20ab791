use std::collections::BTreeSet;

use thiserror::Error;

use super::width::poset_width;
use crate::context::{ExtentLattice, ObjectSet};

/// Why a family of object sets is not an extent ladder.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderViolation {
    #[error("member ranges over {found} objects, context has {expected}")]
    ForeignSet { expected: usize, found: usize },
    #[error("ladder members must be nonempty")]
    EmptyMember,
    #[error("member {0:?} is not an extent")]
    NotAnExtent(ObjectSet),
    #[error("complement of member {0:?} is missing")]
    MissingComplement(ObjectSet),
    #[error("members {0:?} are mutually incomparable")]
    ThreeAntichain([ObjectSet; 3]),
}

/// A complement-closed family of nonempty extents without three mutually
/// incomparable members.
///
/// Every such family splits into two chains of equal length:
/// `chain_a` holds the members containing the lectically first minimal
/// member, and `chain_b[i]` is the complement of `chain_a[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtentLadder {
    members: Vec<ObjectSet>,
    chain_a: Vec<ObjectSet>,
    chain_b: Vec<ObjectSet>,
}

/// Checks the ladder conditions for `members` against `lat`.
pub fn is_extent_ladder(lat: &ExtentLattice, members: &[ObjectSet]) -> Result<(), LadderViolation> {
    let n = lat.context().num_objects();
    for m in members {
        if m.domain() != n {
            return Err(LadderViolation::ForeignSet {
                expected: n,
                found: m.domain(),
            });
        }
        if m.is_empty() {
            return Err(LadderViolation::EmptyMember);
        }
        if !lat.is_extent(m) {
            return Err(LadderViolation::NotAnExtent(m.clone()));
        }
    }
    let set: BTreeSet<&ObjectSet> = members.iter().collect();
    if let Some(m) = members.iter().find(|m| !set.contains(&m.complement())) {
        return Err(LadderViolation::MissingComplement(m.clone()));
    }
    let cover = poset_width(members);
    if cover.width() > 2 {
        let a = &cover.antichain;
        return Err(LadderViolation::ThreeAntichain([
            a[0].clone(),
            a[1].clone(),
            a[2].clone(),
        ]));
    }
    Ok(())
}

impl ExtentLadder {
    pub fn new(lat: &ExtentLattice, members: &[ObjectSet]) -> Result<Self, LadderViolation> {
        is_extent_ladder(lat, members)?;
        let members: Vec<ObjectSet> = members
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let Some(bottom) = members
            .iter()
            .find(|m| !members.iter().any(|o| o.is_proper_subset(m)))
        else {
            return Ok(Self {
                members,
                chain_a: Vec::new(),
                chain_b: Vec::new(),
            });
        };
        let mut chain_a: Vec<ObjectSet> = members
            .iter()
            .filter(|m| bottom.is_subset(m))
            .cloned()
            .collect();
        chain_a.sort_by_key(ObjectSet::len);
        let chain_b = chain_a.iter().map(ObjectSet::complement).collect();
        Ok(Self {
            members,
            chain_a,
            chain_b,
        })
    }

    /// The ladder generated by a chain of extents and their complements.
    pub fn from_chain(lat: &ExtentLattice, chain: &[ObjectSet]) -> Result<Self, LadderViolation> {
        let mut members: Vec<ObjectSet> = chain.to_vec();
        members.extend(chain.iter().map(ObjectSet::complement));
        Self::new(lat, &members)
    }

    /// Members in lectic order.
    pub fn members(&self) -> &[ObjectSet] {
        &self.members
    }

    /// Ascending chain.
    pub fn chain_a(&self) -> &[ObjectSet] {
        &self.chain_a
    }

    /// Complements of `chain_a`, index by index (so descending).
    pub fn chain_b(&self) -> &[ObjectSet] {
        &self.chain_b
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &ObjectSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    /// Minimal nonempty intersections of members, ordered along `chain_a`:
    /// `E₁, E₂∖E₁, …, G∖Eₖ`. They partition the object set.
    pub fn blocks(&self, num_objects: usize) -> Vec<ObjectSet> {
        let mut blocks = Vec::with_capacity(self.chain_a.len() + 1);
        let mut below = ObjectSet::empty(num_objects);
        for e in &self.chain_a {
            blocks.push(e.difference(&below));
            below = e.clone();
        }
        blocks.push(below.complement());
        blocks
    }
}

/// Ladders whose union contains every meet-irreducible extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderCover {
    pub ladders: Vec<ExtentLadder>,
    /// The meet-irreducible extents, in lectic order.
    pub covered: Vec<ObjectSet>,
}

impl LadderCover {
    /// Checks every ladder against `lat` and that all meet-irreducibles are
    /// covered; returns the first uncovered one otherwise.
    pub fn validate(&self, lat: &ExtentLattice) -> Result<(), String> {
        for (i, l) in self.ladders.iter().enumerate() {
            is_extent_ladder(lat, l.members()).map_err(|v| format!("ladder {i}: {v}"))?;
        }
        for mi in lat.meet_irreducibles() {
            if !self.ladders.iter().any(|l| l.contains(&mi)) {
                return Err(format!(
                    "meet-irreducible extent {} is not covered",
                    lat.context().render_objects(&mi)
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ladders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ladders.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{BitSet, FormalContext};
    use crate::testing::{drive, nominal2};

    #[test]
    fn nominal_pair_is_a_ladder() {
        let ctx = nominal2();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let members = vec![
            ctx.object_set(&["a"]).unwrap(),
            ctx.object_set(&["b"]).unwrap(),
        ];
        assert_eq!(is_extent_ladder(&lat, &members), Ok(()));
        let ladder = ExtentLadder::new(&lat, &members).unwrap();
        assert_eq!(ladder.chain_a(), &[members[0].clone()]);
        assert_eq!(ladder.chain_b(), &[members[1].clone()]);
        assert_eq!(ladder.blocks(2), members);
    }

    #[test]
    fn missing_complement() {
        let ctx = nominal2();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let a = ctx.object_set(&["a"]).unwrap();
        assert_eq!(
            is_extent_ladder(&lat, std::slice::from_ref(&a)),
            Err(LadderViolation::MissingComplement(a))
        );
    }

    #[test]
    fn empty_and_non_extent_members() {
        let ctx = drive();
        let lat = ExtentLattice::build(&ctx).unwrap();
        assert_eq!(
            is_extent_ladder(&lat, &[ctx.empty_objects(), ctx.all_objects()]),
            Err(LadderViolation::EmptyMember)
        );
        let odd = ctx.object_set(&["Conventional", "Mid-Wheel"]).unwrap();
        assert_eq!(
            is_extent_ladder(&lat, std::slice::from_ref(&odd)),
            Err(LadderViolation::NotAnExtent(odd))
        );
        assert!(matches!(
            is_extent_ladder(&lat, &[BitSet::full(3)]),
            Err(LadderViolation::ForeignSet { .. })
        ));
    }

    #[test]
    fn three_singletons_and_complements_are_too_wide() {
        let ctx = FormalContext::new(
            (0..3).map(|i| format!("g{i}")).collect(),
            (0..6).map(|i| format!("m{i}")).collect(),
            vec![
                vec![true, false, false, false, true, true],
                vec![false, true, false, true, false, true],
                vec![false, false, true, true, true, false],
            ],
        )
        .unwrap();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let members: Vec<ObjectSet> = ctx.columns().to_vec();
        assert!(matches!(
            is_extent_ladder(&lat, &members),
            Err(LadderViolation::ThreeAntichain(_))
        ));
    }

    #[test]
    fn chain_and_complements() {
        // interordinal scale on 1<2<3<4 seen as a context
        let ctx = FormalContext::new(
            (1..=4).map(|i| format!("g{i}")).collect(),
            (0..6).map(|i| format!("m{i}")).collect(),
            vec![
                vec![true, true, true, false, false, false],
                vec![false, true, true, true, false, false],
                vec![false, false, true, true, true, false],
                vec![false, false, false, true, true, true],
            ],
        )
        .unwrap();
        let lat = ExtentLattice::build(&ctx).unwrap();
        let ladder = ExtentLadder::new(&lat, ctx.columns()).unwrap();
        assert_eq!(ladder.len(), 6);
        assert_eq!(ladder.chain_a().len(), 3);
        let rendered: Vec<String> = ladder
            .blocks(4)
            .iter()
            .map(|b| ctx.render_objects(b))
            .collect();
        assert_eq!(rendered, ["{g1}", "{g2}", "{g3}", "{g4}"]);
        let again = ExtentLadder::from_chain(&lat, ladder.chain_a()).unwrap();
        assert_eq!(again, ladder);
    }
}
