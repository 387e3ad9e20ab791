//! Scale measures, views, and the canonical `(G, 𝒜, ∈)` representation.
//!
//! Measures are explicit maps between object sets. Every check here
//! materialises the extent lattice of the target (and, for fullness, of the
//! source), so cost is exponential in the worst case.

use std::collections::BTreeSet;

use crate::context::{BitSet, ExtentLattice, FormalContext, ObjectSet};
use crate::error::{Error, Result};

/// A map from the objects of `source` to the objects of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleMeasure {
    source: FormalContext,
    target: FormalContext,
    map: Vec<usize>,
}

/// Outcome of [`is_scale_measure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureCheck {
    pub is_measure: bool,
    /// Lectically first target extent whose preimage is not a source extent.
    pub violation: Option<ObjectSet>,
}

impl ScaleMeasure {
    pub fn new(source: FormalContext, target: FormalContext, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.num_objects() {
            return Err(Error::Structural(format!(
                "map covers {} objects, source has {}",
                map.len(),
                source.num_objects()
            )));
        }
        if let Some((g, &t)) = map
            .iter()
            .enumerate()
            .find(|(_, &t)| t >= target.num_objects())
        {
            return Err(Error::Structural(format!(
                "object {:?} mapped to index {t}, target has {} objects",
                source.objects()[g],
                target.num_objects()
            )));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    /// Identity on a shared object list.
    pub fn identity(source: FormalContext, target: FormalContext) -> Result<Self> {
        if source.objects() != target.objects() {
            return Err(Error::Structural(
                "identity measure needs identical object lists".into(),
            ));
        }
        let map = (0..source.num_objects()).collect();
        Self::new(source, target, map)
    }

    /// Builds the map from pairs of object names.
    pub fn from_names<S: AsRef<str>>(
        source: FormalContext,
        target: FormalContext,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut map = vec![None; source.num_objects()];
        for (from, to) in pairs {
            let (from, to) = (from.as_ref(), to.as_ref());
            let g = source
                .object_index(from)
                .ok_or_else(|| Error::Spec(format!("unknown source object {from:?}")))?;
            let t = target
                .object_index(to)
                .ok_or_else(|| Error::Spec(format!("unknown target object {to:?}")))?;
            if map[g].replace(t).is_some_and(|prev| prev != t) {
                return Err(Error::Spec(format!("object {from:?} mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(g, t)| {
                t.ok_or_else(|| {
                    Error::Spec(format!("object {:?} is not mapped", source.objects()[g]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &FormalContext {
        &self.source
    }

    pub fn target(&self) -> &FormalContext {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `σ⁻¹(set)` for a set of target objects.
    pub fn preimage(&self, set: &ObjectSet) -> ObjectSet {
        BitSet::from_indices(
            self.map.len(),
            self.map
                .iter()
                .enumerate()
                .filter(|(_, &t)| set.contains(t))
                .map(|(g, _)| g),
        )
    }

    /// `τ ∘ σ` where `self` is `σ`.
    pub fn then(&self, next: &ScaleMeasure) -> Result<ScaleMeasure> {
        if self.target != next.source {
            return Err(Error::Structural(
                "composed measures must share the intermediate context".into(),
            ));
        }
        let map = self.map.iter().map(|&t| next.map[t]).collect();
        ScaleMeasure::new(self.source.clone(), next.target.clone(), map)
    }
}

/// Whether every target extent pulls back to a source extent.
pub fn is_scale_measure(sm: &ScaleMeasure) -> Result<MeasureCheck> {
    let target = ExtentLattice::build(&sm.target)?;
    let violation = target
        .extents()
        .iter()
        .find(|e| {
            let pre = sm.preimage(e);
            sm.source.close(&pre) != pre
        })
        .cloned();
    Ok(MeasureCheck {
        is_measure: violation.is_none(),
        violation,
    })
}

/// Whether every source extent is the preimage of some target extent.
pub fn is_full_scale_measure(sm: &ScaleMeasure) -> Result<bool> {
    if !is_scale_measure(sm)?.is_measure {
        return Err(Error::Precondition(
            "fullness is only defined for scale measures".into(),
        ));
    }
    let source = ExtentLattice::build(&sm.source)?;
    let target = ExtentLattice::build(&sm.target)?;
    let reached: BTreeSet<ObjectSet> = target.extents().iter().map(|e| sm.preimage(e)).collect();
    Ok(source.extents().iter().all(|e| reached.contains(e)))
}

/// Named columns, each generated by a set of base attributes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViewSpec {
    pub columns: Vec<(String, Vec<String>)>,
}

impl ViewSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn column<S: Into<String>>(
        mut self,
        name: impl Into<String>,
        generators: impl IntoIterator<Item = S>,
    ) -> Self {
        self.columns.push((
            name.into(),
            generators.into_iter().map(Into::into).collect(),
        ));
        self
    }
}

/// The view of `base` whose column `n` is the extent of its generating
/// attribute set. An empty generator set gives the full column.
pub fn make_view(base: &FormalContext, spec: &ViewSpec) -> Result<FormalContext> {
    let mut names = Vec::with_capacity(spec.columns.len());
    let mut columns = Vec::with_capacity(spec.columns.len());
    for (name, generators) in &spec.columns {
        let attrs = base.attribute_set(generators)?;
        names.push(name.clone());
        columns.push(base.common_objects(&attrs));
    }
    FormalContext::from_columns(base.objects().to_vec(), names, columns)
}

/// Whether `candidate` is a view of `base`, i.e. the identity on their
/// shared objects is a scale measure from `base` into `candidate`.
pub fn is_view(candidate: &FormalContext, base: &FormalContext) -> Result<bool> {
    let sm = ScaleMeasure::identity(base.clone(), candidate.clone())?;
    Ok(is_scale_measure(&sm)?.is_measure)
}

/// `(G, 𝒜, ∈)`: one attribute per chosen extent, named by its objects.
/// Repeated members are kept once.
pub fn canonical_view(base: &FormalContext, family: &[ObjectSet]) -> Result<FormalContext> {
    let mut seen = BTreeSet::new();
    let mut names = Vec::new();
    let mut columns = Vec::new();
    for e in family {
        if e.domain() != base.num_objects() {
            return Err(Error::Structural(
                "family member over a different object set".into(),
            ));
        }
        if base.close(e) != *e {
            return Err(Error::Spec(format!(
                "{} is not an extent of the base context",
                base.render_objects(e)
            )));
        }
        if seen.insert(e.clone()) {
            names.push(base.render_objects(e));
            columns.push(e.clone());
        }
    }
    FormalContext::from_columns(base.objects().to_vec(), names, columns)
}
