use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_surlink"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&o.stdout)
        )
    })
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_is_idempotent() {
    let first = run(&["validate", arg(&fixture("example1.json"))]);
    assert_eq!(
        code(&first),
        0,
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let text = String::from_utf8(first.stdout).unwrap();
    let second = run_stdin(&["validate"], &text);
    assert_eq!(code(&second), 0);
    assert_eq!(String::from_utf8(second.stdout).unwrap(), text);
}

#[test]
fn validate_rejects_framingless_surgery() {
    let bad = r#"{"components":[{"name":"X","role":"surgery","edges":[1]}],"crossings":[]}"#;
    let o = run_stdin(&["validate"], bad);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("framing"));
}

#[test]
fn missing_input_file_is_an_input_error() {
    let o = run(&["validate", arg(&fixture("no_such_file.json"))]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_subcommand_is_an_input_error() {
    let o = run(&["frobnicate"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn help_succeeds() {
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("pipeline"));
}

#[test]
fn lkmatrix_of_example1_is_the_identity() {
    let o = run(&["lkmatrix", arg(&fixture("example1.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        json(&o),
        serde_json::json!({
            "names": ["L1", "L2", "L3"],
            "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        })
    );
}

#[test]
fn lkmatrix_of_the_empty_diagram_is_0x0() {
    let o = run(&["lkmatrix", arg(&fixture("empty.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o), serde_json::json!({"names": [], "matrix": []}));
}

#[test]
fn homology_of_both_examples() {
    let o = run(&["homology", arg(&fixture("example1.json"))]);
    assert_eq!(json(&o)["is_homology_sphere"], Value::Bool(true));
    // det [[0,1],[1,0]] = -1, still a homology sphere presentation
    let o = run(&["homology", arg(&fixture("example2.json"))]);
    assert_eq!(json(&o)["is_homology_sphere"], Value::Bool(true));
}

#[test]
fn solve_finds_the_example_solutions() {
    let o = run(&["solve", arg(&fixture("example1.json")), "--curve", "K"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["v"], serde_json::json!([-1, 0, 0]));
    assert_eq!(v["x"], serde_json::json!([-1, 0, 0]));

    let o = run(&["solve", arg(&fixture("example2.json")), "--curve", "K"]);
    let v = json(&o);
    assert_eq!(v["v"], serde_json::json!([0, -1]));
    assert_eq!(v["x"], serde_json::json!([-1, 0]));
}

#[test]
fn solve_exits_two_when_unsolvable() {
    let o = run(&["solve", arg(&fixture("unsolvable.json")), "--curve", "K"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not null-homologous"));
}

#[test]
fn solve_rejects_surgery_components() {
    let o = run(&["solve", arg(&fixture("example1.json")), "--curve", "L1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn plan_is_one_positive_slide() {
    let o = run(&["plan", arg(&fixture("example1.json")), "--curve", "K"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "[{\"component\":\"L1\",\"orient\":1}]\n"
    );
}

#[test]
fn slide_drives_the_linking_vector_to_zero() {
    let o = run(&["slide", arg(&fixture("example1.json")), "--curve", "K"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ledger"]["v_current"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["verify"]["status"], Value::String("pass".into()));
    assert_eq!(v["verify"]["skipped"], serde_json::json!(0));
}

#[test]
fn slide_accepts_a_band_file() {
    let o = run(&[
        "slide",
        arg(&fixture("example1.json")),
        "--curve",
        "K",
        "--bands",
        arg(&fixture("bands_example1.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["verify"]["status"], Value::String("pass".into()));
    // the band detour adds a cancelling crossing pair
    assert_eq!(v["diagram"]["crossings"].as_array().unwrap().len(), 9);
}

#[test]
fn slide_rejects_wrong_band_count() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"[{\"over\":[]},{\"over\":[]}]").unwrap();
    let o = run(&[
        "slide",
        arg(&fixture("example1.json")),
        "--curve",
        "K",
        "--bands",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn lky_subtracts_the_correction() {
    let o = run(&[
        "lky",
        arg(&fixture("twoknots.json")),
        "--curve",
        "A",
        "--curve",
        "B",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "{\"value\":0,\"lk_s3\":1,\"correction\":1,\"solution_used\":[1]}\n"
    );
}

#[test]
fn lky_is_symmetric_on_the_fixture() {
    let ab = run(&[
        "lky",
        arg(&fixture("twoknots.json")),
        "--curve",
        "A",
        "--curve",
        "B",
    ]);
    let ba = run(&[
        "lky",
        arg(&fixture("twoknots.json")),
        "--curve",
        "B",
        "--curve",
        "A",
    ]);
    assert_eq!(json(&ab)["value"], json(&ba)["value"]);
}

#[test]
fn lky_needs_exactly_two_curves() {
    let o = run(&["lky", arg(&fixture("twoknots.json")), "--curve", "A"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn seifert_matrix_matches_both_examples() {
    for f in ["example1_basis.json", "example2_basis.json"] {
        let o = run(&["seifert", arg(&fixture(f))]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert_eq!(v["seifert_matrix"], serde_json::json!([[-1, 0], [1, -1]]));
        assert_eq!(v["symplectic_basis"], Value::Bool(true));
    }
}

#[test]
fn seifert_accepts_a_bare_matrix() {
    let o = run_stdin(&["signature"], "[[-1,0],[1,-1]]");
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["signature"], serde_json::json!(-2));
}

#[test]
fn alexander_with_genus_window() {
    let o = run(&["alexander", arg(&fixture("example1_basis.json"))]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["alexander"], serde_json::json!([1, -1, 1]));
    assert_eq!(v["display"], Value::String("t^2 - t + 1".into()));
    assert_eq!(
        v["genus"],
        serde_json::json!({"lower": 1, "upper": 1, "tight": true})
    );
}

#[test]
fn signature_of_the_examples() {
    for f in ["example1_basis.json", "example2_basis.json"] {
        let o = run(&["signature", arg(&fixture(f))]);
        assert_eq!(json(&o)["signature"], serde_json::json!(-2));
    }
}

#[test]
fn framing_conversion_examples() {
    let o = run(&["convert-framing", arg(&fixture("convert1.json"))]);
    assert_eq!(
        json(&o),
        serde_json::json!({"p": -1, "correction": 1, "coefficient": 0})
    );
    let o = run(&["convert-framing", arg(&fixture("convert2.json"))]);
    assert_eq!(
        json(&o),
        serde_json::json!({"p": 0, "correction": 0, "coefficient": 0})
    );
}

#[test]
fn extended_h1_examples() {
    let o = run(&["extend-h1", arg(&fixture("extend1.json"))]);
    let v = json(&o);
    assert_eq!(v["h1"]["is_homology_sphere"], Value::Bool(true));
    let o = run(&["extend-h1", arg(&fixture("extend2.json"))]);
    let v = json(&o);
    assert_eq!(v["h1"]["free_rank"], serde_json::json!(1));
    assert_eq!(v["h1"]["torsion"], serde_json::json!([]));
}

#[test]
fn pipeline_reproduces_example1() {
    let o = run(&["pipeline", arg(&fixture("example1_pipeline.json"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["x"], serde_json::json!([-1, 0, 0]));
    assert_eq!(
        v["plan"],
        serde_json::json!([{"component": "L1", "orient": 1}])
    );
    assert_eq!(v["ledger"]["v_current"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["verify"]["status"], Value::String("pass".into()));
    assert_eq!(
        v["seifert"]["matrix"],
        serde_json::json!([[-1, 0], [1, -1]])
    );
    assert_eq!(v["seifert"]["signature"], serde_json::json!(-2));
    assert_eq!(v["seifert"]["alexander"], serde_json::json!([1, -1, 1]));
    assert_eq!(
        v["seifert"]["genus"],
        serde_json::json!({"lower": 1, "upper": 1, "tight": true})
    );
    assert_eq!(v["extension"]["s3_coefficient"], serde_json::json!(0));
    assert_eq!(
        v["extension"]["h1"]["is_homology_sphere"],
        Value::Bool(true)
    );
}

#[test]
fn pipeline_reproduces_example2() {
    let o = run(&["pipeline", arg(&fixture("example2_pipeline.json"))]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["x"], serde_json::json!([-1, 0]));
    assert_eq!(v["ledger"]["v_current"], serde_json::json!([0, 0]));
    assert_eq!(
        v["seifert"]["matrix"],
        serde_json::json!([[-1, 0], [1, -1]])
    );
    assert_eq!(v["seifert"]["signature"], serde_json::json!(-2));
    assert_eq!(
        v["seifert"]["alexander_display"],
        Value::String("t^2 - t + 1".into())
    );
    assert_eq!(v["extension"]["s3_coefficient"], serde_json::json!(0));
    assert_eq!(v["extension"]["h1"]["free_rank"], serde_json::json!(1));
}

#[test]
fn output_bytes_are_deterministic() {
    let a = run(&["pipeline", arg(&fixture("example1_pipeline.json"))]);
    let b = run(&["pipeline", arg(&fixture("example1_pipeline.json"))]);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let c = run(&[
        "pipeline",
        arg(&fixture("example1_pipeline.json")),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&c), 0);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn pretty_output_is_the_same_json() {
    let compact = run(&["pipeline", arg(&fixture("example2_pipeline.json"))]);
    let pretty = run(&[
        "pipeline",
        arg(&fixture("example2_pipeline.json")),
        "--pretty",
    ]);
    assert_eq!(code(&pretty), 0);
    assert_ne!(compact.stdout, pretty.stdout);
    assert_eq!(json(&compact), json(&pretty));
}
