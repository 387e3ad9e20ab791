//! Many-valued data as CSV plus a JSON scaling specification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaling::{AttributeDomain, ManyValuedContext, PreScaling, ScaleKind, ValueOrder};

/// Scaling of one attribute as written in the JSON specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeScaling {
    pub kind: String,
    /// Linearly ordered domain, least value first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    /// Unordered domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    /// Biordinal split point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvInput {
    pub context: ManyValuedContext,
    pub prescaling: PreScaling,
    pub kinds: Vec<ScaleKind>,
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Reads a table whose header names the attributes after a leading object
/// column. Empty cells are missing values.
pub fn parse_mv_table(csv_text: &str) -> Result<ManyValuedContext> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(csv_text.as_bytes());
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "missing header row".into(),
        });
    }
    let attributes: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let mut cells = record.iter();
        objects.push(cells.next().unwrap_or_default().to_string());
        rows.push(
            cells
                .map(|c| (!c.is_empty()).then(|| c.to_string()))
                .collect(),
        );
    }
    ManyValuedContext::new(objects, attributes, rows)
}

/// Reads the scaling specification, a JSON object from attribute name to
/// [`AttributeScaling`], against the attributes of `ctx`.
pub fn parse_scaling_spec(
    ctx: &ManyValuedContext,
    json: &str,
) -> Result<(PreScaling, Vec<ScaleKind>)> {
    let spec: BTreeMap<String, AttributeScaling> =
        serde_json::from_str(json).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
    if let Some(extra) = spec.keys().find(|k| !ctx.attributes().contains(k)) {
        return Err(Error::Spec(format!(
            "scaling given for unknown attribute {extra:?}"
        )));
    }
    let mut domains = Vec::new();
    let mut kinds = Vec::new();
    for (m, name) in ctx.attributes().iter().enumerate() {
        let entry = spec
            .get(name)
            .ok_or_else(|| Error::Spec(format!("no scaling given for attribute {name:?}")))?;
        let kind = match (entry.kind.as_str(), entry.split) {
            ("biordinal", Some(split)) => ScaleKind::Biordinal { split },
            ("biordinal", None) => {
                return Err(Error::Spec(format!(
                    "biordinal scaling of {name:?} needs a split"
                )))
            }
            (k, _) => k.parse()?,
        };
        let domain = match (&entry.order, &entry.values) {
            (Some(_), Some(_)) => {
                return Err(Error::Spec(format!(
                    "attribute {name:?} has both an order and a value set"
                )))
            }
            (Some(order), None) => AttributeDomain::linear(order.iter().cloned()),
            (None, Some(values)) => AttributeDomain::unordered(values.iter().cloned()),
            (None, None) if kind.requires_order() => {
                return Err(Error::Spec(format!(
                    "{kind} scaling of {name:?} needs an order"
                )))
            }
            (None, None) => AttributeDomain::unordered(ctx.observed_values(m)),
        };
        domains.push(domain);
        kinds.push(kind);
    }
    let prescaling = PreScaling::new(domains)?;
    prescaling.validate(ctx)?;
    Ok((prescaling, kinds))
}

pub fn parse_mv(csv_text: &str, scaling_json: &str) -> Result<MvInput> {
    let context = parse_mv_table(csv_text)?;
    let (prescaling, kinds) = parse_scaling_spec(&context, scaling_json)?;
    Ok(MvInput {
        context,
        prescaling,
        kinds,
    })
}

/// CSV with an `object` header cell; missing values become empty cells.
pub fn write_mv_table(ctx: &ManyValuedContext) -> Result<String> {
    if let Some(g) = ctx
        .rows()
        .iter()
        .position(|r| r.iter().any(|v| v.as_deref() == Some("")))
    {
        return Err(Error::Structural(format!(
            "object {:?} has an empty value token, which would read back as missing",
            ctx.objects()[g]
        )));
    }
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let write =
        |w: &mut csv::Writer<Vec<u8>>, record: Vec<&str>| w.write_record(record).map_err(csv_error);
    write(
        &mut writer,
        std::iter::once("object")
            .chain(ctx.attributes().iter().map(String::as_str))
            .collect(),
    )?;
    for (g, row) in ctx.rows().iter().enumerate() {
        write(
            &mut writer,
            std::iter::once(ctx.objects()[g].as_str())
                .chain(row.iter().map(|v| v.as_deref().unwrap_or("")))
                .collect(),
        )?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Structural(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Structural(e.to_string()))
}

/// Pretty JSON scaling specification, keys in attribute-name order.
pub fn write_scaling_spec(
    ctx: &ManyValuedContext,
    prescaling: &PreScaling,
    kinds: &[ScaleKind],
) -> Result<String> {
    let spec: BTreeMap<&str, AttributeScaling> = ctx
        .attributes()
        .iter()
        .zip(prescaling.domains())
        .zip(kinds)
        .map(|((name, domain), kind)| {
            let (kind, split) = match kind {
                ScaleKind::Biordinal { split } => ("biordinal".to_string(), Some(*split)),
                k => (k.to_string(), None),
            };
            let (order, values) = match domain.order {
                ValueOrder::Linear => (Some(domain.values.clone()), None),
                ValueOrder::Unordered => (None, Some(domain.values.clone())),
            };
            (
                name.as_str(),
                AttributeScaling {
                    kind,
                    order,
                    values,
                    split,
                },
            )
        })
        .collect();
    let mut text =
        serde_json::to_string_pretty(&spec).map_err(|e| Error::Structural(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
