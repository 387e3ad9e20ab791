//! Command line front end: parsing, dispatch and output formatting.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use scaldim::dimensions::{
    analyze, ferrers_order_dimension, interordinal_derivability,
    interordinal_scaling_dimension_with_budget, isd_bounds, isd_exists, ordinal_scaling_dimension,
    reconstruct_interordinal_mv, reconstruct_ordinal_mv, AnalysisOptions, InterordinalDimension,
    DEFAULT_MAX_CELLS, DEFAULT_SEARCH_BUDGET,
};
use scaldim::io::{
    export_dot, parse_cxt, parse_mv, write_cxt, write_mv_table, write_scaling_spec, AnalysisReport,
};
use scaldim::measures::{
    is_full_scale_measure, is_scale_measure, is_view, make_view, ScaleMeasure, ViewSpec,
};
use scaldim::scaling::{derive, ScaleKind};
use scaldim::{Error, ExtentLattice, FormalContext, ObjectSet};

#[derive(Debug, Parser)]
#[command(
    name = "scaldim",
    version,
    about = "Scaling dimensions of formal contexts"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print witnesses (chains, ladders, Ferrers relations).
    #[arg(long, global = true)]
    witness: bool,
    /// Node budget for the ladder-cover search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Largest |G|·|M| for which the order dimension is solved exactly.
    #[arg(long = "max-cells", global = true, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List all concepts (extent and intent).
    Concepts { context: PathBuf },
    /// List the meet-irreducible extents.
    Irreducibles { context: PathBuf },
    /// Ordinal scaling dimension.
    Osd { context: PathBuf },
    /// Interordinal scaling dimension; exits 1 when undefined.
    Isd { context: PathBuf },
    /// Width-based bounds on the interordinal scaling dimension.
    Bounds { context: PathBuf },
    /// Order dimension via Ferrers relations.
    OrderDim { context: PathBuf },
    /// Derivability from interordinal scaling; exits 1 when not derivable.
    CheckInterordinal { context: PathBuf },
    /// Scale a many-valued CSV table into a formal context.
    Derive {
        table: PathBuf,
        scaling: PathBuf,
        /// Use this scale kind for every attribute.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Check whether a map between object sets is a scale measure.
    Measure {
        source: PathBuf,
        target: PathBuf,
        /// JSON object from source object name to target object name.
        map: PathBuf,
    },
    /// Build a view from a column specification, or check a candidate.
    View {
        base: PathBuf,
        /// JSON list of {"name", "attributes"} columns.
        spec: Option<PathBuf>,
        /// Check whether this context is a view of the base.
        #[arg(long, conflicts_with = "spec")]
        check: Option<PathBuf>,
    },
    /// Rebuild a many-valued table realising the dimension.
    Reconstruct {
        context: PathBuf,
        /// `ordinal` or `interordinal`.
        #[arg(long, default_value = "interordinal")]
        kind: String,
        /// Also write the scaling specification here.
        #[arg(long = "scaling-out")]
        scaling_out: Option<PathBuf>,
    },
    /// Graphviz diagram of the concept lattice.
    Dot {
        context: PathBuf,
        /// Colour a minimum ladder cover.
        #[arg(long)]
        ladders: bool,
    },
    /// All dimensions at once.
    Report {
        context: PathBuf,
        /// Include wall-clock time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

/// Exit status 1: the queried predicate is false or undefined.
const NEGATIVE: i32 = 1;
/// Exit status 2: usage, input or parse problems.
const FAILURE: i32 = 2;

struct Output {
    text: String,
    code: i32,
    /// Explanation for a negative answer, sent to the error stream.
    note: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: 0,
            note: None,
        }
    }

    fn negative(text: String, note: String) -> Self {
        Self {
            text,
            code: NEGATIVE,
            note: Some(note),
        }
    }
}

type Outcome = std::result::Result<Output, String>;

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { FAILURE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let out = match execute(&cli) {
        Ok(out) => out,
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            return FAILURE;
        }
    };
    if let Some(note) = &out.note {
        let _ = writeln!(stderr, "{note}");
    }
    match &cli.common.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &out.text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return FAILURE;
            }
        }
        None => {
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return FAILURE;
            }
        }
    }
    out.code
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn located(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn load_context(path: &Path) -> Result<FormalContext, String> {
    parse_cxt(&read(path)?).map_err(located(path))
}

fn load_lattice(path: &Path) -> Result<ExtentLattice, String> {
    ExtentLattice::build(&load_context(path)?).map_err(located(path))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn names(ctx: &FormalContext, set: &ObjectSet) -> Vec<String> {
    ctx.object_names(set)
}

fn execute(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Concepts { context } => concepts(context, c),
        Command::Irreducibles { context } => irreducibles(context, c),
        Command::Osd { context } => osd(context, c),
        Command::Isd { context } => isd(context, c),
        Command::Bounds { context } => bounds(context, c),
        Command::OrderDim { context } => order_dim(context, c),
        Command::CheckInterordinal { context } => check_interordinal(context, c),
        Command::Derive {
            table,
            scaling,
            kind,
        } => derive_cmd(table, scaling, kind.as_deref()),
        Command::Measure {
            source,
            target,
            map,
        } => measure(source, target, map, c),
        Command::View { base, spec, check } => view(base, spec.as_deref(), check.as_deref(), c),
        Command::Reconstruct {
            context,
            kind,
            scaling_out,
        } => reconstruct(context, kind, scaling_out.as_deref(), c),
        Command::Dot { context, ladders } => dot(context, *ladders, c),
        Command::Report { context, timing } => report(context, *timing, c),
    }
}

fn concepts(path: &Path, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let ctx = lat.context();
    let intent = |e: &ObjectSet| {
        let b = ctx.prime_objects(e).expect("extent of this context");
        ctx.attributes()
            .iter()
            .enumerate()
            .filter(|(m, _)| b.contains(*m))
            .map(|(_, n)| n.clone())
            .collect::<Vec<_>>()
    };
    if c.json {
        let list: Vec<BTreeMap<&str, Vec<String>>> = lat
            .extents()
            .iter()
            .map(|e| BTreeMap::from([("extent", names(ctx, e)), ("intent", intent(e))]))
            .collect();
        return Ok(Output::ok(json(&list)));
    }
    let mut text = String::new();
    for e in lat.extents() {
        let b = ctx.prime_objects(e).expect("extent of this context");
        text += &format!("{} {}\n", ctx.render_objects(e), ctx.render_attributes(&b));
    }
    Ok(Output::ok(text))
}

fn irreducibles(path: &Path, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let ctx = lat.context();
    let mi = lat.meet_irreducibles();
    if c.json {
        let list: Vec<Vec<String>> = mi.iter().map(|e| names(ctx, e)).collect();
        return Ok(Output::ok(json(&list)));
    }
    Ok(Output::ok(
        mi.iter().map(|e| ctx.render_objects(e) + "\n").collect(),
    ))
}

fn osd(path: &Path, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let ctx = lat.context();
    let d = ordinal_scaling_dimension(&lat);
    if c.json {
        let chains: Vec<Vec<Vec<String>>> = d
            .chains
            .chains
            .iter()
            .map(|ch| ch.iter().map(|e| names(ctx, e)).collect())
            .collect();
        let antichain: Vec<Vec<String>> =
            d.chains.antichain.iter().map(|e| names(ctx, e)).collect();
        return Ok(Output::ok(json(&serde_json::json!({
            "osd": d.dimension,
            "chains": chains,
            "antichain": antichain,
        }))));
    }
    let mut text = format!("ordinal scaling dimension: {}\n", d.dimension);
    if c.witness {
        for (i, ch) in d.chains.chains.iter().enumerate() {
            let parts: Vec<String> = ch.iter().map(|e| ctx.render_objects(e)).collect();
            text += &format!("chain {}: {}\n", i + 1, parts.join(" < "));
        }
        let anti: Vec<String> = d
            .chains
            .antichain
            .iter()
            .map(|e| ctx.render_objects(e))
            .collect();
        text += &format!("antichain: {}\n", anti.join(" "));
    }
    Ok(Output::ok(text))
}

fn isd(path: &Path, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let ctx = lat.context();
    match interordinal_scaling_dimension_with_budget(&lat, c.budget) {
        InterordinalDimension::Undefined(ex) => {
            let why = ex.describe(&lat).unwrap_or_default();
            let text = if c.json {
                json(&serde_json::json!({ "defined": false, "isd": null, "blocker": why }))
            } else {
                String::new()
            };
            Ok(Output::negative(text, format!("ISD undefined: {why}")))
        }
        InterordinalDimension::Defined(sol) => {
            let ladders: Vec<Vec<Vec<String>>> = sol
                .cover
                .ladders
                .iter()
                .map(|l| l.members().iter().map(|e| names(ctx, e)).collect())
                .collect();
            if c.json {
                return Ok(Output::ok(json(&serde_json::json!({
                    "defined": true,
                    "isd": sol.dimension(),
                    "lower": sol.lower,
                    "upper": sol.upper,
                    "exact": sol.is_exact(),
                    "nodes": sol.nodes,
                    "ladders": ladders,
                }))));
            }
            let mut text = match sol.dimension() {
                Some(d) => format!("interordinal scaling dimension: {d}\n"),
                None => format!(
                    "interordinal scaling dimension: between {} and {} (search budget exhausted)\n",
                    sol.lower, sol.upper
                ),
            };
            if c.witness {
                for (i, l) in sol.cover.ladders.iter().enumerate() {
                    let a: Vec<String> =
                        l.chain_a().iter().map(|e| ctx.render_objects(e)).collect();
                    let b: Vec<String> =
                        l.chain_b().iter().map(|e| ctx.render_objects(e)).collect();
                    text += &format!("ladder {}: {} | {}\n", i + 1, a.join(" < "), b.join(" > "));
                }
            }
            Ok(Output::ok(text))
        }
    }
}

fn bounds(path: &Path, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let b = isd_bounds(&lat);
    let defined = isd_exists(&lat).exists;
    if c.json {
        return Ok(Output::ok(json(&serde_json::json!({
            "width": b.width,
            "lower": b.lower,
            "upper": b.upper,
            "defined": defined,
        }))));
    }
    let mut text = format!("width: {}\nISD bounds: {}..{}\n", b.width, b.lower, b.upper);
    if !defined {
        text += "ISD undefined for this context; bounds do not apply\n";
    }
    Ok(Output::ok(text))
}

fn order_dim(path: &Path, c: &Common) -> Outcome {
    let ctx = load_context(path)?;
    let od = ferrers_order_dimension(&ctx, c.max_cells);
    let relations: Vec<Vec<[String; 2]>> = od
        .witness
        .iter()
        .map(|f| {
            f.pairs()
                .into_iter()
                .map(|(g, m)| [ctx.objects()[g].clone(), ctx.attributes()[m].clone()])
                .collect()
        })
        .collect();
    if c.json {
        return Ok(Output::ok(json(&serde_json::json!({
            "order_dimension": od.value(),
            "lower": od.lower,
            "upper": od.upper,
            "searched": od.searched,
            "ferrers": relations,
        }))));
    }
    let mut text = match od.value() {
        Some(d) => format!("order dimension: {d}\n"),
        None => format!("order dimension: between {} and {}\n", od.lower, od.upper),
    };
    if c.witness {
        for (i, r) in relations.iter().enumerate() {
            let cells: Vec<String> = r.iter().map(|[g, m]| format!("({g},{m})")).collect();
            text += &format!("ferrers {}: {}\n", i + 1, cells.join(" "));
        }
    }
    Ok(Output::ok(text))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_interordinal(path: &Path, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let d = interordinal_derivability(&lat);
    let ex = isd_exists(&lat);
    let text = if c.json {
        json(&serde_json::json!({
            "derivable": d.derivable(),
            "atomistic": d.atomistic,
            "attribute_complements_closed": d.attribute_complements_closed,
            "ladder_coverable": ex.exists,
        }))
    } else {
        format!(
            "atomistic: {}\nattribute extent complements are extents: {}\nmeet-irreducibles coverable by ladders: {}\nderivable from interordinal scaling: {}\n",
            yes(d.atomistic),
            yes(d.attribute_complements_closed),
            yes(ex.exists),
            yes(d.derivable())
        )
    };
    if d.derivable() {
        return Ok(Output::ok(text));
    }
    let ctx = lat.context();
    let reason = match d.open_attribute {
        Some(m) => format!(
            "complement of the extent of attribute {:?} is not an extent",
            ctx.attributes()[m]
        ),
        None => "the context is not atomistic".to_string(),
    };
    Ok(Output::negative(text, format!("not derivable: {reason}")))
}

fn derive_cmd(table: &Path, scaling: &Path, kind: Option<&str>) -> Outcome {
    let mut mv = parse_mv(&read(table)?, &read(scaling)?).map_err(located(table))?;
    if let Some(k) = kind {
        let k: ScaleKind = k.parse().map_err(|e: Error| e.to_string())?;
        mv.kinds = vec![k; mv.kinds.len()];
    }
    let ctx = derive(&mv.context, &mv.prescaling, &mv.kinds).map_err(|e| e.to_string())?;
    write_cxt(&ctx).map(Output::ok).map_err(|e| e.to_string())
}

fn measure(source: &Path, target: &Path, map: &Path, c: &Common) -> Outcome {
    let s = load_context(source)?;
    let t = load_context(target)?;
    let pairs: BTreeMap<String, String> =
        serde_json::from_str(&read(map)?).map_err(|e| format!("{}: {e}", map.display()))?;
    let pairs: Vec<(String, String)> = pairs.into_iter().collect();
    let sm = ScaleMeasure::from_names(s, t, &pairs).map_err(located(map))?;
    let check = is_scale_measure(&sm).map_err(|e| e.to_string())?;
    let full = if check.is_measure {
        Some(is_full_scale_measure(&sm).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let violation = check
        .violation
        .as_ref()
        .map(|v| sm.target().render_objects(v));
    let text = if c.json {
        json(&serde_json::json!({
            "scale_measure": check.is_measure,
            "full": full,
            "violation": violation,
        }))
    } else {
        match full {
            Some(f) => format!("scale measure: yes\nfull: {}\n", yes(f)),
            None => "scale measure: no\n".to_string(),
        }
    };
    match violation {
        Some(v) => Ok(Output::negative(
            text,
            format!("preimage of target extent {v} is not an extent"),
        )),
        None => Ok(Output::ok(text)),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ViewColumn {
    name: String,
    attributes: Vec<String>,
}

fn view(base: &Path, spec: Option<&Path>, check: Option<&Path>, c: &Common) -> Outcome {
    let ctx = load_context(base)?;
    if let Some(candidate) = check {
        let cand = load_context(candidate)?;
        let ok = is_view(&cand, &ctx).map_err(|e| e.to_string())?;
        let text = if c.json {
            json(&serde_json::json!({ "view": ok }))
        } else {
            format!("view: {}\n", yes(ok))
        };
        return Ok(if ok {
            Output::ok(text)
        } else {
            Output::negative(
                text,
                "some attribute extent of the candidate is not an extent of the base".into(),
            )
        });
    }
    let Some(spec) = spec else {
        return Err("view needs a column specification or --check".into());
    };
    let columns: Vec<ViewColumn> =
        serde_json::from_str(&read(spec)?).map_err(|e| format!("{}: {e}", spec.display()))?;
    let spec_value = columns
        .into_iter()
        .fold(ViewSpec::new(), |s, col| s.column(col.name, col.attributes));
    let v = make_view(&ctx, &spec_value).map_err(|e| e.to_string())?;
    write_cxt(&v).map(Output::ok).map_err(|e| e.to_string())
}

fn reconstruct(path: &Path, kind: &str, scaling_out: Option<&Path>, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let (table, prescaling, kind) = match kind {
        "ordinal" => {
            let d = ordinal_scaling_dimension(&lat);
            let r = reconstruct_ordinal_mv(&lat, &d.chains.chains).map_err(|e| e.to_string())?;
            (r.context, r.prescaling, ScaleKind::Ordinal)
        }
        "interordinal" => match interordinal_scaling_dimension_with_budget(&lat, c.budget) {
            InterordinalDimension::Undefined(ex) => {
                return Ok(Output::negative(
                    String::new(),
                    format!("ISD undefined: {}", ex.describe(&lat).unwrap_or_default()),
                ))
            }
            InterordinalDimension::Defined(sol) => {
                let r = reconstruct_interordinal_mv(&lat, &sol.cover).map_err(|e| e.to_string())?;
                (r.context, r.prescaling, ScaleKind::Interordinal)
            }
        },
        other => {
            return Err(format!(
                "unknown reconstruction kind {other:?} (ordinal or interordinal)"
            ))
        }
    };
    if let Some(out) = scaling_out {
        let spec = write_scaling_spec(&table, &prescaling, &vec![kind; table.num_attributes()])
            .map_err(|e| e.to_string())?;
        fs::write(out, spec).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    write_mv_table(&table)
        .map(Output::ok)
        .map_err(|e| e.to_string())
}

fn dot(path: &Path, ladders: bool, c: &Common) -> Outcome {
    let lat = load_lattice(path)?;
    let cover = if ladders {
        match interordinal_scaling_dimension_with_budget(&lat, c.budget) {
            InterordinalDimension::Defined(sol) => Some(sol.cover),
            InterordinalDimension::Undefined(ex) => {
                return Ok(Output::negative(
                    export_dot(&lat, None),
                    format!("ISD undefined: {}", ex.describe(&lat).unwrap_or_default()),
                ))
            }
        }
    } else {
        None
    };
    Ok(Output::ok(export_dot(&lat, cover.as_ref())))
}

fn report(path: &Path, timing: bool, c: &Common) -> Outcome {
    let start = Instant::now();
    let lat = load_lattice(path)?;
    let options = AnalysisOptions {
        search_budget: c.budget,
        max_cells: c.max_cells,
    };
    let dims = analyze(&lat, options);
    let mut r = AnalysisReport::new(&lat, &dims);
    if timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    if c.json {
        return Ok(Output::ok(r.to_json()));
    }
    let opt = |v: Option<usize>, fallback: String| v.map_or(fallback, |d| d.to_string());
    let mut text = format!(
        "objects: {}\nattributes: {}\nconcepts: {}\nmeet-irreducibles: {}\nordinal scaling dimension: {}\n",
        r.objects, r.attributes, r.concepts, r.meet_irreducibles, r.osd
    );
    let isd_text = match (
        &r.isd_search.blocker,
        r.isd_search.lower,
        r.isd_search.upper,
    ) {
        (Some(b), _, _) => format!("undefined ({b})"),
        (None, Some(l), Some(u)) => opt(r.isd, format!("between {l} and {u}")),
        _ => "unknown".into(),
    };
    text += &format!("interordinal scaling dimension: {isd_text}\n");
    text += &format!(
        "ISD bounds: {}..{} (width {})\n",
        r.isd_bounds[0], r.isd_bounds[1], r.width
    );
    let od = &r.order_dimension_search;
    text += &format!(
        "order dimension: {}\n",
        opt(
            r.order_dimension,
            format!("between {} and {}", od.lower, od.upper)
        )
    );
    text += &format!(
        "atomistic: {}\nattribute extent complements are extents: {}\n",
        yes(r.derivability.atomistic),
        yes(r.derivability.attribute_complements_closed)
    );
    if let Some(ms) = r.elapsed_ms {
        text += &format!("elapsed: {ms} ms\n");
    }
    Ok(Output::ok(text))
}
