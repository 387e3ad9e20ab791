use std::fs;
use std::path::PathBuf;

use scaldim::io::{parse_cxt, parse_mv, AnalysisReport};
use scaldim::scaling::interordinal_derive;
use scaldim::ExtentLattice;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn scaldim(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("scaldim").chain(args.iter().copied());
    let code = scaldim_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn report_drive_json() {
    let drive = data("drive.cxt");
    let (code, out, _) = scaldim(&["report", &drive, "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["concepts"], 24);
    assert_eq!(v["osd"], 4);
    assert_eq!(v["order_dimension"], 4);
    assert_eq!(v["schema_version"], 1);
    // the exhaustive minimum for this table
    assert_eq!(v["isd"], 2);
    assert!(v.get("elapsed_ms").is_none());

    let report = AnalysisReport::from_json(&out).unwrap();
    let ctx = parse_cxt(&fs::read_to_string(&drive).unwrap()).unwrap();
    report.verify(&ctx).unwrap();

    let (_, again, _) = scaldim(&["report", &drive, "--json"]);
    assert_eq!(out, again);
    let (_, timed, _) = scaldim(&["report", &drive, "--json", "--timing"]);
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn isd_undefined_on_diag3() {
    let (code, out, err) = scaldim(&["isd", &data("diag3.cxt")]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert_eq!(
        err.trim(),
        "ISD undefined: complement of {g1} is not an extent"
    );
}

#[test]
fn derive_then_isd_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_cxt = dir.path().join("out.cxt");
    let out_cxt = out_cxt.to_str().unwrap();
    let (code, _, err) = scaldim(&[
        "derive",
        &data("fig2.csv"),
        &data("fig2-scaling.json"),
        "--kind",
        "interordinal",
        "-o",
        out_cxt,
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = scaldim(&["isd", out_cxt]);
    assert_eq!(code, 0);
    assert_eq!(out, "interordinal scaling dimension: 1\n");
    let (_, out, _) = scaldim(&["osd", out_cxt]);
    assert_eq!(out, "ordinal scaling dimension: 2\n");
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(scaldim(&["frobnicate"]).0, 2);
    assert_eq!(scaldim(&["osd"]).0, 2);
    assert_eq!(scaldim(&["osd", "/nonexistent/file.cxt"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cxt");
    fs::write(&bad, "B\n\n1\n2\n\ng\nm\nn\nX\n").unwrap();
    let (code, _, err) = scaldim(&["concepts", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 9"), "{err}");
    let (code, out, _) = scaldim(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("order-dim"));
}

#[test]
fn small_queries() {
    let drive = data("drive.cxt");
    let (_, out, _) = scaldim(&["concepts", &drive]);
    assert_eq!(out.lines().count(), 24);
    let (_, out, _) = scaldim(&["irreducibles", &drive, "--json"]);
    let v: Vec<Vec<String>> = serde_json::from_str(&out).unwrap();
    assert_eq!(v.len(), 6);
    let (_, out, _) = scaldim(&["bounds", &drive]);
    assert!(out.contains("ISD bounds: 2..4"));
    let (code, out, _) = scaldim(&["order-dim", &data("diag3.cxt")]);
    assert_eq!((code, out.as_str()), (0, "order dimension: 2\n"));
    let (code, _, _) = scaldim(&["check-interordinal", &drive]);
    assert_eq!(code, 0);
    let (code, _, err) = scaldim(&["check-interordinal", &data("diag3.cxt")]);
    assert_eq!(code, 1);
    assert!(err.contains("not derivable"));
}

#[test]
fn reconstruct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let drive = data("drive.cxt");
    let ctx = parse_cxt(&fs::read_to_string(&drive).unwrap()).unwrap();
    let lat = ExtentLattice::build(&ctx).unwrap();
    let csv = dir.path().join("mv.csv");
    let spec = dir.path().join("spec.json");
    let (code, _, err) = scaldim(&[
        "reconstruct",
        &drive,
        "--kind",
        "interordinal",
        "-o",
        csv.to_str().unwrap(),
        "--scaling-out",
        spec.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let mv = parse_mv(
        &fs::read_to_string(&csv).unwrap(),
        &fs::read_to_string(&spec).unwrap(),
    )
    .unwrap();
    let derived = interordinal_derive(&mv.context, &mv.prescaling).unwrap();
    assert_eq!(
        ExtentLattice::build(&derived).unwrap().extents(),
        lat.extents()
    );

    let (code, _, _) = scaldim(&[
        "reconstruct",
        &drive,
        "--kind",
        "ordinal",
        "-o",
        csv.to_str().unwrap(),
        "--scaling-out",
        spec.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let header = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert_eq!(header, "object,chain1,chain2,chain3,chain4");
    let (code, out, _) = scaldim(&["derive", csv.to_str().unwrap(), spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    let derived = parse_cxt(&out).unwrap();
    assert_eq!(
        ExtentLattice::build(&derived).unwrap().extents(),
        lat.extents()
    );

    assert_eq!(scaldim(&["reconstruct", &data("diag3.cxt")]).0, 1);
}

#[test]
fn measure_and_view() {
    let dir = tempfile::tempdir().unwrap();
    let drive = data("drive.cxt");
    let identity = dir.path().join("id.json");
    fs::write(
        &identity,
        r#"{"Conventional":"Conventional","All-Wheel":"All-Wheel","Mid-Wheel":"Mid-Wheel","Rear-Wheel":"Rear-Wheel","Front-Wheel":"Front-Wheel"}"#,
    )
    .unwrap();
    let (code, out, _) = scaldim(&["measure", &drive, &drive, identity.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "scale measure: yes\nfull: yes\n");

    let collapse = dir.path().join("collapse.json");
    fs::write(
        &collapse,
        r#"{"Conventional":"g1","All-Wheel":"g2","Mid-Wheel":"g1","Rear-Wheel":"g3","Front-Wheel":"g3"}"#,
    )
    .unwrap();
    let (code, _, err) = scaldim(&[
        "measure",
        &drive,
        &data("diag3.cxt"),
        collapse.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("{g1}"), "{err}");

    let spec = dir.path().join("view.json");
    fs::write(
        &spec,
        r#"[{"name":"n","attributes":["1","2"]},{"name":"k","attributes":["6"]}]"#,
    )
    .unwrap();
    let view = dir.path().join("view.cxt");
    let (code, _, err) = scaldim(&[
        "view",
        &drive,
        spec.to_str().unwrap(),
        "-o",
        view.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let v = parse_cxt(&fs::read_to_string(&view).unwrap()).unwrap();
    assert_eq!(
        v.render_objects(v.extent(0)),
        "{Mid-Wheel,Rear-Wheel,Front-Wheel}"
    );
    assert_eq!(
        scaldim(&["view", &drive, "--check", view.to_str().unwrap()]).0,
        0
    );
    assert_eq!(
        scaldim(&["view", &data("diag3.cxt"), "--check", &data("diag3.cxt")]).0,
        0
    );
}

#[test]
fn dot_output() {
    let drive = data("drive.cxt");
    let (code, out, _) = scaldim(&["dot", &drive, "--ladders"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches(" [label=").count(), 24);
    assert_eq!(out, scaldim(&["dot", &drive, "--ladders"]).1);
    assert_eq!(scaldim(&["dot", &data("diag3.cxt"), "--ladders"]).0, 1);
}
