use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upsilon")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn upsilon_text() {
    assert_eq!(stdout(&["upsilon", "torus(2,3)"]), "(0,0) (1,-1) (2,0)");
    assert_eq!(stdout(&["upsilon", "unknot"]), "(0,0) (2,0)");
    assert_eq!(stdout(&["upsilon", "torus(3,4)", "--method", "formula"]), "(0,0) (2/3,-2) (4/3,-2) (2,0)");
}

#[test]
fn upsilon_eval() {
    assert_eq!(stdout(&["upsilon", "cable(torus(3,7);3,35)", "--eval", "5/7"]), "-169/7");
    assert_eq!(stdout(&["upsilon", "cable(torus(3,7);3,35)", "--eval", "7/8", "--method", "formula"]), "-107/4");
}

#[test]
fn upsilon_formats() {
    let csv = stdout(&["upsilon", "torus(2,3)", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("t,value"));
    assert_eq!(csv.lines().count(), 4);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["upsilon", "torus(2,3)", "--format", "json"])).unwrap();
    assert_eq!(json["breakpoints"].as_array().unwrap().len(), 3);
    let svg = stdout(&["upsilon", "torus(3,4)", "--format", "svg", "--overlay", "torus(2,5)"]);
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains("<title>(2/3, -2)</title>"));
}

#[test]
fn upsilon_to_file() {
    let path = std::env::temp_dir().join(format!("upsilon-cli-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["upsilon", "torus(2,5)", "--out", p]), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim_end(), "(0,0) (1,-2) (2,0)");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn crosscheck_can_be_skipped() {
    let out = Command::new(env!("CARGO_BIN_EXE_upsilon"))
        .args(["upsilon", "cable(torus(2,3);2,3)"])
        .env("UPSILON_NO_CROSSCHECK", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), stdout(&["upsilon", "torus(3,4)"]));
}

#[test]
fn scalar_invariants() {
    assert_eq!(stdout(&["integral", "torus(3,4)"]), "-8/3");
    assert_eq!(stdout(&["integral", "cable(torus(2,3);2,5)", "--iterated"]), "-3");
    assert_eq!(stdout(&["tau", "torus(3,7)"]), "6");
    assert_eq!(stdout(&["tau", "cable(pretzel(2);2,15)"]), "15");
    assert_eq!(stdout(&["semigroup", "torus(3,7)"]), "{0,3,6,7,9,10} ∪ Z≥12");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["semigroup", "torus(2,3)", "--format", "json"])).unwrap();
    assert_eq!(json["genus"], 1);
    assert_eq!(json["gaps"], serde_json::json!([1]));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["upsilon", "torus(2,"]), 2);
    assert_eq!(code(&["upsilon", "torus(2,3)", "--eval", "x/y"]), 2);
    assert_eq!(code(&["upsilon", "torus(2,3)", "--eval", "5/2"]), 2);
    assert_eq!(code(&["upsilon", "torus(2,3)", "--format", "png"]), 2);
    assert_eq!(code(&["verify", "thm-x"]), 2);
    assert_eq!(code(&["upsilon", "cable(torus(2,3);2,1)"]), 3);
    assert_eq!(code(&["integral", "cable(torus(3,7);3,35)", "--iterated"]), 3);
    assert_eq!(code(&["verify", "thm-main", "--core", "cable(torus(2,3);2,1)"]), 3);
    assert_eq!(code(&["tau", "torus(4,6)"]), 2);
}

#[test]
fn verify_emits_ordered_json_lines() {
    let out = run(&["verify", "thm-cor", "--core", "torus"]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["id"] == "thm-cor" && l["status"] == "pass"));
    assert_eq!(lines[0]["params"], serde_json::json!({"core": "torus(2,3)", "p": 2, "q": 3}));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("passed, 0 failed"), "{stderr}");
}

#[test]
fn verify_prop8_prints_the_note_once() {
    let out = run(&["verify", "prop8", "--pmax", "3", "--qmax", "12"]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.matches("normalization:").count(), 1);
}

#[test]
fn verify_every_tag_on_a_small_sweep() {
    for tag in ["thm-main", "thm-s", "sandwich", "lemma18", "thm9", "fk", "wang", "symmetry"] {
        let out = run(&["verify", tag, "--core", "torus(2,3)", "--pmax", "3", "--qmax", "20"]);
        assert!(out.status.success(), "{tag}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{tag}");
    }
}
