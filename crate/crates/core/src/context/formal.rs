use std::collections::{HashMap, HashSet};

use super::bitset::{AttributeSet, BitSet, ObjectSet};
use crate::error::{Error, Result};

/// A formal context: objects, attributes, and a cross table between them.
///
/// Rows (object intents) and columns (attribute extents) are both kept as
/// bit sets so that either derivation operator is a sequence of word-wise
/// intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
    columns: Vec<ObjectSet>,
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::Structural(format!("duplicate {what} name {name:?}")));
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from a row-major incidence table.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::Structural(format!(
                "incidence has {} rows for {} objects",
                incidence.len(),
                objects.len()
            )));
        }
        let rows = incidence
            .iter()
            .enumerate()
            .map(|(g, row)| {
                if row.len() != attributes.len() {
                    Err(Error::Structural(format!(
                        "row {g} has {} entries for {} attributes",
                        row.len(),
                        attributes.len()
                    )))
                } else {
                    Ok(BitSet::from_bools(row))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from object intents.
    pub fn from_rows(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttributeSet>,
    ) -> Result<Self> {
        check_unique(&objects, "object")?;
        check_unique(&attributes, "attribute")?;
        if rows.len() != objects.len() {
            return Err(Error::Structural(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        if let Some(bad) = rows.iter().position(|r| r.domain() != attributes.len()) {
            return Err(Error::Structural(format!(
                "row {bad} ranges over {} attributes, context has {}",
                rows[bad].domain(),
                attributes.len()
            )));
        }
        let mut columns = vec![BitSet::empty(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row {
                columns[m].insert(g);
            }
        }
        Ok(Self {
            objects,
            attributes,
            rows,
            columns,
        })
    }

    /// Builds a context from attribute extents.
    pub fn from_columns(
        objects: Vec<String>,
        attributes: Vec<String>,
        columns: Vec<ObjectSet>,
    ) -> Result<Self> {
        if columns.len() != attributes.len() {
            return Err(Error::Structural(format!(
                "{} columns for {} attributes",
                columns.len(),
                attributes.len()
            )));
        }
        if let Some(bad) = columns.iter().position(|c| c.domain() != objects.len()) {
            return Err(Error::Structural(format!(
                "column {bad} ranges over {} objects, context has {}",
                columns[bad].domain(),
                objects.len()
            )));
        }
        let mut rows = vec![BitSet::empty(attributes.len()); objects.len()];
        for (m, col) in columns.iter().enumerate() {
            for g in col {
                rows[g].insert(m);
            }
        }
        Self::from_rows(objects, attributes, rows)
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

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// Object intent `{g}'`.
    pub fn intent(&self, g: usize) -> &AttributeSet {
        &self.rows[g]
    }

    /// Attribute extent `{m}'`.
    pub fn extent(&self, m: usize) -> &ObjectSet {
        &self.columns[m]
    }

    pub fn rows(&self) -> &[AttributeSet] {
        &self.rows
    }

    pub fn columns(&self) -> &[ObjectSet] {
        &self.columns
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn empty_objects(&self) -> ObjectSet {
        BitSet::empty(self.objects.len())
    }

    pub fn all_objects(&self) -> ObjectSet {
        BitSet::full(self.objects.len())
    }

    pub fn empty_attributes(&self) -> AttributeSet {
        BitSet::empty(self.attributes.len())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        BitSet::full(self.attributes.len())
    }

    /// Derivation of an object set: attributes shared by every object in `objects`.
    pub fn prime_objects(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        if objects.domain() != self.objects.len() {
            return Err(Error::Structural(format!(
                "object set over {} elements used with a context of {} objects",
                objects.domain(),
                self.objects.len()
            )));
        }
        Ok(self.common_attributes(objects))
    }

    /// Derivation of an attribute set: objects having every attribute in `attributes`.
    pub fn prime_attributes(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        if attributes.domain() != self.attributes.len() {
            return Err(Error::Structural(format!(
                "attribute set over {} elements used with a context of {} attributes",
                attributes.domain(),
                self.attributes.len()
            )));
        }
        Ok(self.common_objects(attributes))
    }

    /// Closure `A''` of an object set.
    pub fn closure(&self, objects: &ObjectSet) -> Result<ObjectSet> {
        self.prime_objects(objects)
            .map(|intent| self.common_objects(&intent))
    }

    pub(crate) fn common_attributes(&self, objects: &ObjectSet) -> AttributeSet {
        let mut out = self.all_attributes();
        for g in objects {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    pub(crate) fn common_objects(&self, attributes: &AttributeSet) -> ObjectSet {
        let mut out = self.all_objects();
        for m in attributes {
            out.intersect_with(&self.columns[m]);
        }
        out
    }

    pub(crate) fn close(&self, objects: &ObjectSet) -> ObjectSet {
        self.common_objects(&self.common_attributes(objects))
    }

    /// `{g}' ⊆ {h}'` implies `{g}' = {h}'` for every pair of objects.
    pub fn is_atomistic(&self) -> bool {
        self.rows.iter().enumerate().all(|(g, a)| {
            self.rows
                .iter()
                .enumerate()
                .all(|(h, b)| g == h || !a.is_proper_subset(b))
        })
    }

    /// Merges objects with equal intents and attributes with equal extents.
    ///
    /// The first occurrence keeps its name and position. The extent lattice
    /// of the result is isomorphic to the input's.
    pub fn clarify(&self) -> FormalContext {
        let keep_objects = first_occurrences(&self.rows);
        let keep_attributes = first_occurrences(&self.columns);
        let objects = keep_objects
            .iter()
            .map(|&g| self.objects[g].clone())
            .collect();
        let attributes = keep_attributes
            .iter()
            .map(|&m| self.attributes[m].clone())
            .collect();
        let rows = keep_objects
            .iter()
            .map(|&g| {
                BitSet::from_indices(
                    keep_attributes.len(),
                    keep_attributes
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| self.rows[g].contains(m))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        FormalContext::from_rows(objects, attributes, rows)
            .expect("sub-context of a valid context is valid")
    }

    /// Renders an object set with object names, e.g. `{a,b}`.
    pub fn render_objects(&self, set: &ObjectSet) -> String {
        render(set, &self.objects)
    }

    pub fn render_attributes(&self, set: &AttributeSet) -> String {
        render(set, &self.attributes)
    }

    /// Resolves object names to a set.
    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut set = self.empty_objects();
        for name in names {
            let g = self
                .object_index(name.as_ref())
                .ok_or_else(|| Error::Spec(format!("unknown object {:?}", name.as_ref())))?;
            set.insert(g);
        }
        Ok(set)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut set = self.empty_attributes();
        for name in names {
            let m = self
                .attribute_index(name.as_ref())
                .ok_or_else(|| Error::Spec(format!("unknown attribute {:?}", name.as_ref())))?;
            set.insert(m);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }
}

fn first_occurrences(sets: &[BitSet]) -> Vec<usize> {
    let mut seen = HashMap::with_capacity(sets.len());
    let mut keep = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if seen.insert(s, i).is_none() {
            keep.push(i);
        }
    }
    keep
}

pub(crate) fn render(set: &BitSet, names: &[String]) -> String {
    let mut out = String::from("{");
    for (k, i) in set.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&names[i]);
    }
    out.push('}');
    out
}
