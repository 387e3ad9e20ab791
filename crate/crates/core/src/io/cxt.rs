//! Burmeister `.cxt` files.

use crate::context::FormalContext;
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads a Burmeister context: `B`, a name line, object and attribute
/// counts, the names one per line, then one row of `.`/`X` per object.
/// Blank lines between the counts and the names are skipped; CRLF endings
/// are accepted.
pub fn parse_cxt(input: &str) -> Result<FormalContext> {
    let mut lines = input
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .peekable();
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| {
            parse_error(
                input.lines().count() + 1,
                format!("unexpected end of file, expected {what}"),
            )
        })
    };
    let (n, header) = next("header")?;
    if header.trim() != "B" {
        return Err(parse_error(
            n,
            format!("expected header \"B\", found {header:?}"),
        ));
    }
    next("context name")?;
    let mut count = |what: &str| -> Result<usize> {
        loop {
            let (n, l) = next(what)?;
            if l.trim().is_empty() {
                continue;
            }
            return l
                .trim()
                .parse()
                .map_err(|_| parse_error(n, format!("expected {what}, found {l:?}")));
        }
    };
    let num_objects = count("object count")?;
    let num_attributes = count("attribute count")?;

    let mut names = Vec::with_capacity(num_objects + num_attributes);
    while names.len() < num_objects + num_attributes {
        let (_, l) = next("a name")?;
        if names.is_empty() && l.trim().is_empty() {
            continue;
        }
        names.push(l.to_string());
    }
    let attributes = names.split_off(num_objects);
    let objects = names;

    let mut rows = Vec::with_capacity(num_objects);
    for object in &objects {
        let (n, l) = next("an incidence row")?;
        let l = l.trim_end();
        if l.chars().count() != num_attributes {
            return Err(parse_error(
                n,
                format!(
                    "row of {:?} has {} symbols, expected {num_attributes}",
                    object,
                    l.chars().count()
                ),
            ));
        }
        let row = l
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                other => Err(parse_error(n, format!("bad incidence symbol {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push(row);
    }
    for (n, l) in lines {
        if !l.trim().is_empty() {
            return Err(parse_error(
                n,
                format!("trailing content {l:?} after {num_objects} rows"),
            ));
        }
    }
    FormalContext::new(objects, attributes, rows).map_err(|e| match e {
        Error::Structural(m) => parse_error(0, m),
        other => other,
    })
}

/// Writes `ctx` in Burmeister format with LF endings.
pub fn write_cxt(ctx: &FormalContext) -> Result<String> {
    let mut names = ctx.objects().iter().chain(ctx.attributes());
    // a blank first name would be read back as padding
    if let Some(first) = names.clone().next().filter(|s| s.trim().is_empty()) {
        return Err(Error::Structural(format!(
            "leading name {first:?} cannot be written to a .cxt file"
        )));
    }
    if let Some(bad) = names.find(|s| s.contains(['\n', '\r'])) {
        return Err(Error::Structural(format!(
            "name {bad:?} cannot be written to a .cxt file"
        )));
    }
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.num_objects(), ctx.num_attributes());
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for row in ctx.rows() {
        out.extend((0..ctx.num_attributes()).map(|m| if row.contains(m) { 'X' } else { '.' }));
        out.push('\n');
    }
    Ok(out)
}
