use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn polytile(args: &[&str]) -> Output {
    polytile_env(args, &[])
}

fn polytile_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polytile"));
    cmd.args(args).env_remove("POLYTILE_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn polytile")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn discretize_unit_square_writes_scale_seven_and_49_rows() {
    let out = polytile(&["discretize", p(&data("square.json"))]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scale 7"));
    assert_eq!(lines.count(), 49);
}

#[test]
fn discretize_svg_shows_four_face_colors() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("chevron.svg");
    let out = polytile(&["discretize", p(&data("chevron.json")), "--svg", p(&svg)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    for c in &polytile_core::render::PALETTE[..4] {
        assert!(text.contains(&format!(r#"fill="{c}""#)), "missing {c}");
    }
    assert!(!text.contains(&format!(r#"fill="{}""#, polytile_core::render::PALETTE[4])));
}

#[test]
fn malformed_json_exits_65_with_diagnostic() {
    let out = polytile(&["discretize", p(&data("bad.json"))]);
    assert_eq!(code(&out), 65);
    assert!(stderr(&out).contains("bad.json"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&polytile(&["bogus"])), 64);
    assert_eq!(code(&polytile(&["decide"])), 64);
    assert_eq!(code(&polytile(&["decide", p(&data("missing.json"))])), 64);
    assert_eq!(code(&polytile(&["analyze", "a", "b", "--earthquake", "0,0"])), 64);
    let out = polytile_env(&["decide", p(&data("square.json"))], &[("POLYTILE_THREADS", "0")]);
    assert_eq!(code(&out), 64);
    assert_eq!(code(&polytile(&["--help"])), 0);
}

#[test]
fn decide_unit_square_certificate() {
    let out = polytile(&["decide", p(&data("square.json"))]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["lattice"], serde_json::json!([[7, 0], [0, 7]]));
    assert_eq!(cert["translates"], serde_json::json!([[0, 0]]));
    assert_eq!(cert["scale"], 7);
}

#[test]
fn decide_triangle_refutes_at_radius_four() {
    let out = polytile_env(&["decide", p(&data("triangle.json"))], &[("POLYTILE_THREADS", "4")]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    assert_eq!(json(&out), serde_json::json!({"radius": 4}));
}

#[test]
fn decide_row_tile_refutes() {
    let out = polytile(&["decide", p(&data("row.tile"))]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out), serde_json::json!({"radius": 2}));
}

#[test]
fn budgeted_tromino_resumes_to_the_same_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    let cert = dir.path().join("cert.json");
    let tromino = data("tromino.json");

    let first = polytile(&["decide", p(&tromino), "--budget", "1", "--state", p(&state)]);
    assert_eq!(code(&first), 2, "{}", stderr(&first));
    assert!(first.stdout.is_empty());
    let saved: Value = serde_json::from_slice(&std::fs::read(&state).unwrap()).unwrap();
    assert_eq!(saved["version"], "polytile-session/1");
    assert_eq!(saved["round"], 1);
    assert_eq!(saved["position"], 1);

    let resumed = polytile(&["decide", p(&tromino), "--resume", p(&state), "--emit-certificate", p(&cert)]);
    assert_eq!(code(&resumed), 0, "{}", stderr(&resumed));
    let whole = polytile(&["decide", p(&tromino)]);
    assert_eq!(resumed.stdout, whole.stdout);
    assert_eq!(std::fs::read(&cert).unwrap(), whole.stdout);
    assert_eq!(json(&whole)["lattice"], serde_json::json!([[21, 7], [0, 7]]));

    let verified = polytile(&["verify", p(&tromino), p(&cert)]);
    assert_eq!(code(&verified), 0, "{}", stderr(&verified));
}

#[test]
fn state_for_another_tile_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    assert_eq!(code(&polytile(&["decide", p(&data("tromino.json")), "--budget", "1", "--state", p(&state)])), 2);
    let out = polytile(&["decide", p(&data("square.json")), "--resume", p(&state)]);
    assert_eq!(code(&out), 65);
    assert!(stderr(&out).contains("different tile"));
}

#[test]
fn thread_count_does_not_change_the_certificate() {
    let one = polytile(&["decide", p(&data("chevron.json"))]);
    let four = polytile_env(&["decide", p(&data("chevron.json"))], &[("POLYTILE_THREADS", "4")]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, r#"{"lattice": [[7, 0], [0, 14]], "translates": [[0, 0]], "scale": 7}"#).unwrap();
    let out = polytile(&["verify", p(&data("square.json")), p(&cert)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("uncovered cell (1,0)"), "{}", stderr(&out));

    std::fs::write(&cert, r#"{"lattice": [[7, 0], [0, 7]], "translates": [[0, 0]], "scale": 9}"#).unwrap();
    assert_eq!(code(&polytile(&["verify", p(&data("square.json")), p(&cert)])), 65);
}

#[test]
fn analyze_rejects_a_non_tiling() {
    let out = polytile(&["analyze", p(&data("square.json")), p(&data("2z2.json"))]);
    assert_eq!(code(&out), 1);
    assert_eq!(stderr(&out).trim(), "not a tiling: uncovered cell (1,0)");
}

#[test]
fn earthquake_on_the_square_lattice_gives_columns() {
    let out = polytile(&["analyze", p(&data("square.json")), p(&data("z2.json")), "--earthquake", "0,1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&out);
    let plates = &r["plates"];
    assert_eq!(plates["direction"], serde_json::json!([0, 1]));
    // infinitely many plates, each a vertical column
    assert_eq!(plates["count"], Value::Null);
    assert_eq!(plates["plates"].as_array().unwrap().len(), 1);
    assert_eq!(plates["plates"][0]["periods"], serde_json::json!([["0", "1"]]));
    assert_eq!(r["classes"]["count"], 1);
}

#[test]
fn tromino_staircase_is_doubly_periodic() {
    let out = polytile(&["analyze", p(&data("tromino.json")), p(&data("staircase.json"))]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["periodicity"]["classification"], "DoublyPeriodic");
    assert_eq!(r["periodicity"]["periods"], serde_json::json!([["3", "0"], ["1", "1"]]));
}

#[test]
fn column_shifted_squares_slide_vertically() {
    let out = polytile(&["analyze", p(&data("square.json")), p(&data("shifted.json"))]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["tiling"], "sheared");
    assert_eq!(r["classes"]["count"], Value::Null);
    assert_eq!(r["sliding_direction"], serde_json::json!([0, 1]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let svg = dir.path().join(format!("a{i}.svg"));
            let disc = dir.path().join(format!("d{i}.svg"));
            let a = polytile(&[
                "analyze",
                p(&data("square.json")),
                p(&data("z2.json")),
                "--earthquake",
                "0,1",
                "--svg",
                p(&svg),
            ]);
            let d = polytile(&["discretize", p(&data("chevron.json")), "--svg", p(&disc)]);
            let r = polytile(&["render", p(&data("chevron.json")), "--target", "partition"]);
            assert_eq!(code(&a) + code(&d) + code(&r), 0);
            [a.stdout, std::fs::read(&svg).unwrap(), d.stdout, std::fs::read(&disc).unwrap(), r.stdout].concat()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn render_targets() {
    let poly = polytile(&["render", p(&data("chevron.json"))]);
    assert_eq!(code(&poly), 0);
    assert_eq!(stdout(&poly).matches("<path").count(), 1);
    let disc = polytile(&["render", p(&data("row.tile")), "--target", "discrete"]);
    assert_eq!(stdout(&disc).matches("<path").count(), 3);
    let plates = polytile(&[
        "render",
        p(&data("square.json")),
        "--target",
        "plates",
        "--tiling",
        p(&data("z2.json")),
        "--earthquake",
        "0,1",
    ]);
    assert_eq!(code(&plates), 0);
    // one color per column meeting the 4 x 4 window
    let text = stdout(&plates);
    let colors: std::collections::BTreeSet<&str> =
        text.split(r#"fill=""#).skip(1).filter_map(|s| s.split('"').next()).filter(|&c| c != "white").collect();
    assert_eq!(colors.len(), 6);
    assert_eq!(code(&polytile(&["render", p(&data("square.json")), "--target", "plates"])), 64);
    assert_eq!(code(&polytile(&["render", p(&data("row.tile")), "--target", "partition"])), 65);
}
