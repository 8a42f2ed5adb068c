use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn stacky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stacky"))
        .args(args)
        .env_remove("STACKY_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Runs the command, expects `want` as exit code and returns stdout.
fn run(args: &[&str], want: i32) -> String {
    let o = stacky(args);
    assert_eq!(
        code(&o),
        want,
        "{args:?}\nstdout: {}\nstderr: {}",
        stdout(&o),
        stderr(&o)
    );
    stdout(&o)
}

fn json(args: &[&str], want: i32) -> (String, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let text = run(&all, want);
    let v = serde_json::from_str(&text).expect("stdout is JSON");
    (text, v)
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.to_string().contains(['.', 'e', 'E']),
        Value::Array(xs) => xs.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn validate_reports_each_condition() {
    let out = run(&["validate", &fixture("p15_10_6.json")], 0);
    for name in [
        "rays span: pass",
        "nonzero rays: pass",
        "simplicial cones: pass",
        "finite cokernel: pass",
    ] {
        assert!(out.contains(name), "{out}");
    }
    assert!(out.trim_end().ends_with("valid"));

    let out = run(&["validate", &fixture("zero_ray.json")], 2);
    assert!(out.contains("nonzero rays: fail ZeroRay(1)"), "{out}");
    assert!(out.contains("finite cokernel: skipped"), "{out}");

    let out = run(&["validate", &fixture("dependent_cone.json")], 2);
    assert!(out.contains("NonSimplicialCone"), "{out}");
}

#[test]
fn parse_and_io_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"schema_version\": \"1\", \"N\": ").unwrap();
    let o = stacky(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("ParseError"));

    std::fs::write(&bad, r#"{"schema_version": "2", "N": {"rank": 1}, "beta": [[1], [-1]], "max_cones": [[0], [1]], "polytopal": true}"#).unwrap();
    assert_eq!(code(&stacky(&["group", bad.to_str().unwrap()])), 1);

    let missing = dir.path().join("missing.json");
    let o = stacky(&["group", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("IoError"));
}

#[test]
fn query_on_invalid_document_exits_two() {
    let o = stacky(&["group", &fixture("zero_ray.json")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("ZeroRay(1)"));
}

#[test]
fn group_examples() {
    assert_eq!(
        run(&["group", &fixture("segment_4_6.json")], 0).trim(),
        "DG \u{2245} Z x Z/2; G \u{2245} T x Z/2; G/G0 \u{2245} Z/2"
    );
    assert_eq!(
        run(&["group", &fixture("p15_10_6.json")], 0).trim(),
        "DG \u{2245} Z; G \u{2245} T; G/G0 trivial"
    );
    assert!(run(&["group", &fixture("fig2.json")], 0).contains("G/G0 \u{2245} Z/2"));

    let (_, v) = json(&["group", &fixture("segment_4_6.json")], 0);
    assert_eq!(v["dual_group"]["free_rank"], 1);
    assert_eq!(v["dual_group"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(v["g"]["text"], "T x Z/2");
    assert_eq!(v["component_group"]["text"], "Z/2");
}

#[test]
fn isotropy_examples() {
    assert_eq!(
        run(
            &["isotropy", &fixture("p15_10_6.json"), "--zeros", "0,2"],
            0
        )
        .trim(),
        "Z/10"
    );
    assert_eq!(
        run(&["isotropy", &fixture("fig2.json"), "--cone", "0,1"], 0).trim(),
        "Z/2 x Z/12"
    );

    let o = stacky(&["isotropy", &fixture("p15_10_6.json"), "--zeros", "0,1,2"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("NotInZSigma"));

    let o = stacky(&["isotropy", &fixture("fig2.json"), "--cone", "0,2"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("InvalidCone({0,2})"));

    let o = stacky(&["isotropy", &fixture("p15_10_6.json"), "--cone", "0,7"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("IndexOutOfRange"));
}

#[test]
fn isotropy_selectors_are_exclusive_and_required() {
    assert_eq!(
        code(&stacky(&[
            "isotropy",
            &fixture("p15_10_6.json"),
            "--cone",
            "0",
            "--all"
        ])),
        1
    );
    assert_eq!(code(&stacky(&["isotropy", &fixture("p15_10_6.json")])), 1);
    assert_eq!(
        code(&stacky(&[
            "isotropy",
            &fixture("p15_10_6.json"),
            "--cone",
            "x"
        ])),
        1
    );
}

#[test]
fn isotropy_all_is_ascending_with_generators() {
    let out = run(
        &[
            "isotropy",
            &fixture("p15_10_6.json"),
            "--all",
            "--generators",
        ],
        0,
    );
    let cones: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with(' '))
        .map(|l| l.split(':').next().unwrap())
        .collect();
    assert_eq!(
        cones,
        ["{}", "{0}", "{0,1}", "{0,2}", "{1}", "{1,2}", "{2}"]
    );
    assert!(
        out.contains("{0,2}: Z/10\n  (1/2, 0, 4/5) of order 10"),
        "{out}"
    );

    // Generators need a torsion-free N.
    let o = stacky(&[
        "isotropy",
        &fixture("torsion_wps.json"),
        "--all",
        "--generators",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("TorsionAmbient"));
}

#[test]
fn classify_examples() {
    assert!(run(&["classify", &fixture("torsion_wps.json")], 0)
        .starts_with("weighted projective: P(30,20,12)\n"));
    let out = run(&["classify", &fixture("segment_4_6.json")], 0);
    assert!(
        out.starts_with("fake weighted projective: cover P(2,3), \u{39b} \u{2245} Z/2\n"),
        "{out}"
    );
    assert!(out.contains("P(2,3)/\u{39b}"));
    assert!(run(&["classify", &fixture("fig2.json")], 0).starts_with("neither (n \u{2260} d+1)"));

    let (_, v) = json(&["classify", &fixture("torsion_wps.json")], 0);
    assert_eq!(v["kind"], "weighted_projective");
    assert_eq!(v["weights"], serde_json::json!([30, 20, 12]));
}

#[test]
fn classify_needs_polytopal_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("np.json");
    let text = std::fs::read_to_string(fixture("p15_10_6.json"))
        .unwrap()
        .replace("\"polytopal\": true", "\"polytopal\": false");
    std::fs::write(&path, text).unwrap();
    let o = stacky(&["classify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("NotPolytopal"));
}

#[test]
fn cover_examples_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cover.json");
    let out_s = out.to_str().unwrap();

    let text = run(&["cover", &fixture("segment_2_2.json"), "--out", out_s], 0);
    assert!(text.contains("global quotient: [P^1/Z/2]"), "{text}");
    let written = std::fs::read_to_string(&out).unwrap();
    let doc: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(doc["beta"], serde_json::json!([[-1], [1]]));
    assert!(run(&["group", out_s], 0).contains("G/G0 trivial"));

    let text = run(&["cover", &fixture("segment_4_6.json"), "--out", out_s], 0);
    assert!(text.contains("not a global quotient"), "{text}");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["beta"], serde_json::json!([[-3], [2]]));
    assert!(run(&["group", out_s], 0).contains("G/G0 trivial"));
    assert!(run(&["classify", out_s], 0).starts_with("weighted projective: P(2,3)"));

    let text = run(&["cover", &fixture("p15_10_6.json"), "--out", out_s], 0);
    assert!(text.contains("cover = self"), "{text}");
    let again: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let original: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("p15_10_6.json")).unwrap()).unwrap();
    assert_eq!(again["beta"], original["beta"]);
    assert_eq!(again["max_cones"], original["max_cones"]);

    // The torsion fan's cover drops the torsion.
    run(&["cover", &fixture("fig2.json"), "--out", out_s], 0);
    let (_, v) = json(&["group", out_s], 0);
    assert_eq!(v["component_group"]["text"], "1");
    assert!(run(&["validate", out_s], 0).trim_end().ends_with("valid"));
}

#[test]
fn cover_to_unwritable_path_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("no").join("such").join("dir.json");
    let o = stacky(&[
        "cover",
        &fixture("segment_4_6.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("IoError"));
}

#[test]
fn sheared_examples() {
    let out = run(
        &["sheared", "--a", "1,1", "--labels", "2,3,5", "--report"],
        0,
    );
    assert_eq!(
        out.lines().next().unwrap(),
        "WPS: P(15,10,6); G/G0 trivial; not global quotient"
    );
    assert_eq!(out.lines().filter(|l| l.starts_with("row ")).count(), 4);
    assert!(!out.contains("DISAGREE"));

    assert_eq!(
        run(
            &["sheared", "--a", "1,2", "--labels", "2,4,1", "--zeros", "0,1"],
            0
        )
        .trim(),
        "sub Z/2 x Z/4; quot Z/2; full Z/2 x Z/8"
    );
    let out = run(
        &["sheared", "--a", "1,1", "--labels", "1,1,1", "--report"],
        0,
    );
    assert_eq!(out.lines().next().unwrap(), "WPS: P(1,1,1); smooth");
}

#[test]
fn sheared_errors() {
    let o = stacky(&["sheared", "--a", "2,4", "--labels", "1,1,1"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("NotPrimitive"));
    let o = stacky(&["sheared", "--a", "1,1", "--labels", "1,0,1"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("NonPositive"));
    let o = stacky(&[
        "sheared", "--a", "1,1", "--labels", "1,1,1", "--zeros", "0,1,2",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("NotInZSigma"));
    assert_eq!(
        code(&stacky(&["sheared", "--a", "1,q", "--labels", "1,1,1"])),
        1
    );
}

#[test]
fn sheared_document_matches_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    run(
        &[
            "sheared",
            "--a",
            "1,1",
            "--labels",
            "2,3,5",
            "--out",
            out.to_str().unwrap(),
        ],
        0,
    );
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let fixture: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("p15_10_6.json")).unwrap()).unwrap();
    assert_eq!(written["beta"], fixture["beta"]);
    assert_eq!(written["metadata"]["labels"], serde_json::json!([2, 3, 5]));
    assert_eq!(
        run(&["isotropy", out.to_str().unwrap(), "--zeros", "0,2"], 0).trim(),
        "Z/10"
    );
}

#[test]
fn json_is_stable_and_integer_only() {
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("c.json");
    let cases: Vec<Vec<String>> = vec![
        vec!["validate".into(), fixture("zero_ray.json")],
        vec!["group".into(), fixture("fig2.json")],
        vec![
            "isotropy".into(),
            fixture("p15_10_6.json"),
            "--all".into(),
            "--generators".into(),
        ],
        vec!["classify".into(), fixture("segment_4_6.json")],
        vec![
            "cover".into(),
            fixture("segment_4_6.json"),
            "--out".into(),
            cover.to_string_lossy().into(),
        ],
        vec![
            "sheared".into(),
            "--a".into(),
            "1,2".into(),
            "--labels".into(),
            "2,4,1".into(),
            "--zeros".into(),
            "0,1".into(),
            "--report".into(),
        ],
        vec![
            "isotropy".into(),
            fixture("p15_10_6.json"),
            "--zeros".into(),
            "0,1,2".into(),
        ],
    ];
    for args in cases {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.push("--json");
        let o = stacky(&args);
        let text = stdout(&o);
        let v: Value =
            serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
        assert_eq!(
            serde_json::to_string_pretty(&v).unwrap() + "\n",
            text,
            "{args:?}"
        );
        assert!(!has_float(&v), "{args:?}");
        if code(&o) == 3 {
            assert_eq!(v["error"]["kind"], "NotInZSigma");
            assert_eq!(v["error"]["exit_code"], 3);
        }
    }
}

#[test]
fn large_integers_survive() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    // Segment with labels 2^64 + 1 and 3: coker beta is trivial, DG has torsion 1.
    let big = "18446744073709551617";
    std::fs::write(
        &path,
        format!(r#"{{"schema_version": "1", "N": {{"rank": 1, "torsion": []}}, "beta": [["-{big}"], [3]], "max_cones": [[0], [1]], "polytopal": true}}"#),
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["classify", p], 0);
    assert!(
        out.starts_with(&format!("weighted projective: P(3,{big})")),
        "{out}"
    );
    let (_, v) = json(&["classify", p], 0);
    assert_eq!(v["weights"], serde_json::json!([3, big]));
    assert_eq!(run(&["isotropy", p, "--cone", "1"], 0).trim(), "Z/3");
    assert_eq!(
        run(&["isotropy", p, "--cone", "0"], 0).trim(),
        format!("Z/{big}")
    );
}

#[test]
fn quiet_suppresses_stdout() {
    let o = stacky(&["--quiet", "group", &fixture("fig2.json")]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let o = stacky(&["validate", &fixture("zero_ray.json"), "-q"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn selftest_is_seeded() {
    let with_seed = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_stacky"))
            .args(["selftest", "--matrices", "40", "--simplices", "15"])
            .env("STACKY_SEED", seed)
            .output()
            .unwrap()
    };
    let a = with_seed("12345");
    let b = with_seed("12345");
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("seed 12345: 55 instances"));
    assert!(stdout(&with_seed("0x10")).starts_with("seed 16:"));
    assert_eq!(code(&with_seed("seven")), 1);
}

#[test]
fn help_exits_zero() {
    let o = stacky(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("isotropy"));
}
