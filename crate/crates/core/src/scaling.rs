//! Many-valued contexts, pre-scalings, standard scales, and plain scaling.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::context::{BitSet, ExtentLattice, FormalContext, ObjectSet};
use crate::error::{Error, Result};

/// A partial object × attribute table of opaque value tokens. `None` is a
/// missing value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManyValuedContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    values: Vec<Vec<Option<String>>>,
}

impl ManyValuedContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        values: Vec<Vec<Option<String>>>,
    ) -> Result<Self> {
        unique(&objects, "object")?;
        unique(&attributes, "many-valued attribute")?;
        if values.len() != objects.len() {
            return Err(Error::Structural(format!(
                "{} value rows for {} objects",
                values.len(),
                objects.len()
            )));
        }
        if let Some(g) = values.iter().position(|r| r.len() != attributes.len()) {
            return Err(Error::Structural(format!(
                "value row of {:?} has {} cells for {} attributes",
                objects[g],
                values[g].len(),
                attributes.len()
            )));
        }
        Ok(Self {
            objects,
            attributes,
            values,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn value(&self, g: usize, m: usize) -> Option<&str> {
        self.values[g][m].as_deref()
    }

    pub fn rows(&self) -> &[Vec<Option<String>>] {
        &self.values
    }

    /// No missing values.
    pub fn is_complete(&self) -> bool {
        self.values.iter().flatten().all(Option::is_some)
    }

    /// Distinct values of attribute `m` in order of first appearance.
    pub fn observed_values(&self, m: usize) -> Vec<String> {
        let mut seen = HashSet::new();
        self.values
            .iter()
            .filter_map(|row| row[m].as_ref())
            .filter(|v| seen.insert(v.as_str()))
            .cloned()
            .collect()
    }
}

fn unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    match names.iter().find(|n| !seen.insert(n.as_str())) {
        Some(dup) => Err(Error::Structural(format!("duplicate {what} name {dup:?}"))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrder {
    Unordered,
    /// The listed order is the linear order.
    Linear,
}

/// Value domain of one many-valued attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeDomain {
    pub values: Vec<String>,
    pub order: ValueOrder,
}

impl AttributeDomain {
    pub fn linear<S: Into<String>>(values: impl IntoIterator<Item = S>) -> Self {
        Self {
            values: values.into_iter().map(Into::into).collect(),
            order: ValueOrder::Linear,
        }
    }

    pub fn unordered<S: Into<String>>(values: impl IntoIterator<Item = S>) -> Self {
        Self {
            values: values.into_iter().map(Into::into).collect(),
            order: ValueOrder::Unordered,
        }
    }

    pub fn is_linear(&self) -> bool {
        self.order == ValueOrder::Linear
    }

    fn position(&self, value: &str) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }
}

/// Value domains, one per many-valued attribute in attribute order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreScaling {
    domains: Vec<AttributeDomain>,
}

impl PreScaling {
    pub fn new(domains: Vec<AttributeDomain>) -> Result<Self> {
        for (m, d) in domains.iter().enumerate() {
            let mut seen = HashSet::new();
            if let Some(dup) = d.values.iter().find(|v| !seen.insert(v.as_str())) {
                return Err(Error::Configuration(format!(
                    "value {dup:?} listed twice in the domain of attribute #{m}"
                )));
            }
        }
        Ok(Self { domains })
    }

    /// Unordered domains inferred from the values present in `ctx`.
    pub fn observed(ctx: &ManyValuedContext) -> Self {
        Self {
            domains: (0..ctx.num_attributes())
                .map(|m| AttributeDomain::unordered(ctx.observed_values(m)))
                .collect(),
        }
    }

    pub fn domains(&self) -> &[AttributeDomain] {
        &self.domains
    }

    pub fn domain(&self, m: usize) -> &AttributeDomain {
        &self.domains[m]
    }

    /// Checks that every stored value lies in its attribute's domain.
    pub fn validate(&self, ctx: &ManyValuedContext) -> Result<()> {
        if self.domains.len() != ctx.num_attributes() {
            return Err(Error::Structural(format!(
                "pre-scaling has {} domains for {} attributes",
                self.domains.len(),
                ctx.num_attributes()
            )));
        }
        for (g, row) in ctx.values.iter().enumerate() {
            for (m, cell) in row.iter().enumerate() {
                if let Some(v) = cell {
                    if self.domains[m].position(v).is_none() {
                        return Err(Error::Scaling {
                            object: ctx.objects[g].clone(),
                            attribute: ctx.attributes[m].clone(),
                            value: v.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A scale: a formal context whose objects include the values it interprets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    context: FormalContext,
    values: Vec<String>,
}

impl Scale {
    pub fn new(context: FormalContext, values: Vec<String>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| context.object_index(v).is_none()) {
            return Err(Error::Configuration(format!(
                "scale value {v:?} is not an object of the scale context"
            )));
        }
        Ok(Self { context, values })
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    /// The value domain this scale interprets.
    pub fn values(&self) -> &[String] {
        &self.values
    }

    /// Row of the scale context carrying `value`.
    pub fn value_index(&self, value: &str) -> Option<usize> {
        self.context.object_index(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleKind {
    Nominal,
    Ordinal,
    Interordinal,
    /// Ordinal downward on `values[..split]`, upward on `values[split..]`.
    Biordinal {
        split: usize,
    },
    Dichotomic,
    Contranominal,
}

impl ScaleKind {
    pub fn requires_order(self) -> bool {
        matches!(
            self,
            ScaleKind::Ordinal | ScaleKind::Interordinal | ScaleKind::Biordinal { .. }
        )
    }
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleKind::Nominal => f.write_str("nominal"),
            ScaleKind::Ordinal => f.write_str("ordinal"),
            ScaleKind::Interordinal => f.write_str("interordinal"),
            ScaleKind::Biordinal { split } => write!(f, "biordinal:{split}"),
            ScaleKind::Dichotomic => f.write_str("dichotomic"),
            ScaleKind::Contranominal => f.write_str("contranominal"),
        }
    }
}

impl FromStr for ScaleKind {
    type Err = Error;

    /// Accepts the names printed by `Display`; biordinal takes its split as
    /// `biordinal:K`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nominal" => ScaleKind::Nominal,
            "ordinal" => ScaleKind::Ordinal,
            "interordinal" => ScaleKind::Interordinal,
            "dichotomic" => ScaleKind::Dichotomic,
            "contranominal" => ScaleKind::Contranominal,
            other => match other.strip_prefix("biordinal:") {
                Some(k) => ScaleKind::Biordinal {
                    split: k
                        .parse()
                        .map_err(|_| Error::Configuration(format!("bad biordinal split {k:?}")))?,
                },
                None => return Err(Error::Configuration(format!("unknown scale kind {s:?}"))),
            },
        })
    }
}

/// Builds the standard scale of `kind` over `domain`.
///
/// Attribute names are `=v`, `≠v`, `≤v` and `≥v`. Interordinal scales drop
/// columns that are full or empty on the domain; ordinal scales keep the
/// full `≤max` column.
pub fn build_scale(kind: ScaleKind, domain: &AttributeDomain) -> Result<Scale> {
    let values = &domain.values;
    let n = values.len();
    if n == 0 {
        return Err(Error::Configuration("empty value domain".into()));
    }
    if kind.requires_order() && !domain.is_linear() {
        return Err(Error::Configuration(format!(
            "{kind} scale needs a linearly ordered domain"
        )));
    }
    let mut attributes = Vec::new();
    let mut columns: Vec<ObjectSet> = Vec::new();
    let mut push = |name: String, col: ObjectSet| {
        attributes.push(name);
        columns.push(col);
    };
    let below = |v: usize| BitSet::from_indices(n, 0..=v);
    let above = |v: usize| BitSet::from_indices(n, v..n);
    match kind {
        ScaleKind::Nominal => {
            for (v, name) in values.iter().enumerate() {
                push(format!("={name}"), BitSet::from_indices(n, [v]));
            }
        }
        ScaleKind::Contranominal => {
            for (v, name) in values.iter().enumerate() {
                push(
                    format!("≠{name}"),
                    BitSet::from_indices(n, [v]).complement(),
                );
            }
        }
        ScaleKind::Ordinal => {
            for (v, name) in values.iter().enumerate() {
                push(format!("≤{name}"), below(v));
            }
        }
        ScaleKind::Interordinal => {
            let keep = |c: &ObjectSet| !c.is_empty() && !c.is_full();
            for (v, name) in values.iter().enumerate() {
                let c = below(v);
                if keep(&c) {
                    push(format!("≤{name}"), c);
                }
            }
            for (v, name) in values.iter().enumerate() {
                let c = above(v);
                if keep(&c) {
                    push(format!("≥{name}"), c);
                }
            }
        }
        ScaleKind::Dichotomic => {
            if n != 2 {
                return Err(Error::Configuration(format!(
                    "dichotomic scale needs exactly two values, got {n}"
                )));
            }
            push(format!("≤{}", values[0]), below(0));
            push(format!("≥{}", values[1]), above(1));
        }
        ScaleKind::Biordinal { split } => {
            if split == 0 || split >= n {
                return Err(Error::Configuration(format!(
                    "biordinal split {split} must lie strictly inside a domain of {n} values"
                )));
            }
            for (v, name) in values.iter().enumerate().take(split) {
                push(format!("≤{name}"), below(v));
            }
            for (v, name) in values.iter().enumerate().skip(split) {
                push(format!("≥{name}"), above(v));
            }
        }
    }
    let context = FormalContext::from_columns(values.clone(), attributes, columns)?;
    Scale::new(context, values.clone())
}

/// Plain scaling: every many-valued column is replaced by the columns of
/// its scale, named `m:n`. Missing values produce no crosses in the block.
pub fn plain_scaling(ctx: &ManyValuedContext, scales: &[Scale]) -> Result<FormalContext> {
    if scales.len() != ctx.num_attributes() {
        return Err(Error::Structural(format!(
            "{} scales for {} many-valued attributes",
            scales.len(),
            ctx.num_attributes()
        )));
    }
    let mut attributes = Vec::new();
    let mut columns = Vec::new();
    for (m, scale) in scales.iter().enumerate() {
        let rows = value_rows(ctx, m, scale)?;
        let sc = scale.context();
        for (n, name) in sc.attributes().iter().enumerate() {
            attributes.push(format!("{}:{}", ctx.attributes[m], name));
            let col = sc.extent(n);
            columns.push(BitSet::from_indices(
                ctx.num_objects(),
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r.is_some_and(|w| col.contains(w)))
                    .map(|(g, _)| g),
            ));
        }
    }
    FormalContext::from_columns(ctx.objects.clone(), attributes, columns)
}

/// Scale row of each object's value at `m` (the scale measure `σ_m`).
fn value_rows(ctx: &ManyValuedContext, m: usize, scale: &Scale) -> Result<Vec<Option<usize>>> {
    let lookup: HashMap<&str, usize> = scale
        .context()
        .objects()
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    ctx.values
        .iter()
        .enumerate()
        .map(|(g, row)| match &row[m] {
            None => Ok(None),
            Some(v) => lookup
                .get(v.as_str())
                .map(|&i| Some(i))
                .ok_or_else(|| Error::Scaling {
                    object: ctx.objects[g].clone(),
                    attribute: ctx.attributes[m].clone(),
                    value: v.clone(),
                }),
        })
        .collect()
}

/// Scales each attribute with the standard scale of its kind.
pub fn derive(
    ctx: &ManyValuedContext,
    prescaling: &PreScaling,
    kinds: &[ScaleKind],
) -> Result<FormalContext> {
    prescaling.validate(ctx)?;
    if kinds.len() != ctx.num_attributes() {
        return Err(Error::Structural(format!(
            "{} scale kinds for {} many-valued attributes",
            kinds.len(),
            ctx.num_attributes()
        )));
    }
    let scales = kinds
        .iter()
        .zip(prescaling.domains())
        .zip(&ctx.attributes)
        .map(|((&k, d), name)| {
            build_scale(k, d).map_err(|e| match e {
                Error::Configuration(msg) => {
                    Error::Configuration(format!("attribute {name:?}: {msg}"))
                }
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    plain_scaling(ctx, &scales)
}

/// Interordinal scaling of every attribute.
pub fn interordinal_derive(
    ctx: &ManyValuedContext,
    prescaling: &PreScaling,
) -> Result<FormalContext> {
    derive(
        ctx,
        prescaling,
        &vec![ScaleKind::Interordinal; ctx.num_attributes()],
    )
}

/// Ordinal scaling of every attribute.
pub fn ordinal_derive(ctx: &ManyValuedContext, prescaling: &PreScaling) -> Result<FormalContext> {
    derive(
        ctx,
        prescaling,
        &vec![ScaleKind::Ordinal; ctx.num_attributes()],
    )
}

/// Preimage of a scale object set under `σ_m`.
pub(crate) fn preimage(rows: &[Option<usize>], set: &ObjectSet) -> ObjectSet {
    BitSet::from_indices(
        rows.len(),
        rows.iter()
            .enumerate()
            .filter(|(_, r)| r.is_some_and(|w| set.contains(w)))
            .map(|(g, _)| g),
    )
}

/// Closes a family of subsets of `0..n` under pairwise intersection and
/// adds the full set.
pub(crate) fn intersection_closure(
    n: usize,
    family: impl IntoIterator<Item = ObjectSet>,
) -> BTreeSet<ObjectSet> {
    let mut closed: BTreeSet<ObjectSet> = BTreeSet::new();
    closed.insert(BitSet::full(n));
    let mut pending: Vec<ObjectSet> = family.into_iter().collect();
    while let Some(s) = pending.pop() {
        if closed.contains(&s) {
            continue;
        }
        let fresh: Vec<ObjectSet> = closed
            .iter()
            .map(|t| t.intersection(&s))
            .filter(|i| !closed.contains(i))
            .collect();
        closed.insert(s);
        pending.extend(fresh);
    }
    closed
}

/// Checks that the extents of the plainly scaled context are exactly the
/// intersections of preimages of scale extents.
///
/// Both sides are computed independently: the left from the derived
/// context's own closure system, the right from the scales alone. Requires
/// a complete many-valued context.
pub fn verify_preimage_lemma(ctx: &ManyValuedContext, scales: &[Scale]) -> Result<bool> {
    if !ctx.is_complete() {
        return Err(Error::Precondition(
            "preimage characterisation needs a complete many-valued context".into(),
        ));
    }
    let derived = plain_scaling(ctx, scales)?;
    let lhs: BTreeSet<ObjectSet> = ExtentLattice::build(&derived)?
        .extents()
        .iter()
        .cloned()
        .collect();
    let mut preimages = Vec::new();
    for (m, scale) in scales.iter().enumerate() {
        let rows = value_rows(ctx, m, scale)?;
        let scale_lattice = ExtentLattice::build(scale.context())?;
        preimages.extend(scale_lattice.extents().iter().map(|e| preimage(&rows, e)));
    }
    Ok(lhs == intersection_closure(ctx.num_objects(), preimages))
}

/// Scale-measure map `g ↦ m(g)` into the rows of `scale`. Fails on missing
/// or foreign values.
pub fn value_map(ctx: &ManyValuedContext, m: usize, scale: &Scale) -> Result<Vec<usize>> {
    value_rows(ctx, m, scale)?
        .into_iter()
        .enumerate()
        .map(|(g, r)| {
            r.ok_or_else(|| {
                Error::Precondition(format!(
                    "object {:?} has no value at {:?}",
                    ctx.objects[g], ctx.attributes[m]
                ))
            })
        })
        .collect()
}
