use std::process::{Command, Output};

fn modsheaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modsheaf"))
        .args(args)
        .env_remove("MODSHEAF_BOX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn mo_generator_of_monomial() {
    let o = modsheaf(&["mo", "--ring", "x,y", "--f", "x^3*y^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generator 1/(x^2*y)"), "{}", stdout(&o));
}

#[test]
fn mo_membership_answers() {
    let o = modsheaf(&["mo", "--ring", "x", "--f", "1", "--test", "7"]);
    assert!(stdout(&o).contains("7: member"));
    let o = modsheaf(&[
        "mo", "--ring", "x", "--f", "x^2", "--test", "1/x^2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tests"][0]["member"], false);
    assert_eq!(v["generator"], "1/x");
}

#[test]
fn mo_dual_numbers_and_spec_file() {
    let dir = std::env::temp_dir().join(format!("modsheaf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    std::fs::write(
        &path,
        r#"{"variables": ["t"], "coefficients": "dual_numbers", "factors": [["t", 1]]}"#,
    )
    .unwrap();
    let o = modsheaf(&[
        "mo",
        "--spec",
        path.to_str().unwrap(),
        "--test",
        "eps/t",
        "--test",
        "1/t",
        "--format",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o);
    assert_eq!(v["tests"][0]["member"], true);
    assert_eq!(v["tests"][1]["member"], false);
    assert!(v.get("generator").is_none());
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = modsheaf(&["mo", "--ring", "x", "--f", "x^2", "--test", "1/(x"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column"), "{err}");
}

#[test]
fn cech_examples() {
    let o = modsheaf(&["cech", "pn", "--n", "2", "--twist", "-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^2: 1"));
    let o = modsheaf(&[
        "cech", "pn", "--n", "1", "--twist", "-1", "--format", "json",
    ]);
    let v = json(&o);
    assert!(v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .all(|d| d["total"] == 0));
    let o = modsheaf(&[
        "cech", "blowup", "--n", "1", "--twist", "1", "--box", "-4..4", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v["degrees"][1]["total"], 0);
    assert_eq!(
        v["box"],
        serde_json::json!([{"var": "t0", "lo": -4, "hi": 4}, {"var": "t1", "lo": -4, "hi": 4}])
    );
}

#[test]
fn cech_product_and_bad_space() {
    let o = modsheaf(&[
        "cech",
        "product",
        "--base",
        "pn",
        "--n",
        "1",
        "--twist",
        "1",
        "--line-twist",
        "1",
        "--box",
        "3",
    ]);
    assert!(stdout(&o).contains("H^0: 4"), "{}", stdout(&o));
    assert_eq!(modsheaf(&["cech", "torus"]).status.code(), Some(2));
    assert_eq!(
        modsheaf(&["cech", "pn", "--box", "3..1"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_counterexamples() {
    let o = modsheaf(&["verify", "nonreduced", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdicts"][0]["status"], "strict-inclusion-witnessed");
    assert!(v["verdicts"][0]["witness"]
        .as_str()
        .unwrap()
        .starts_with("eps*t"));
    let o = modsheaf(&["verify", "gabber", "--box", "3", "--format", "json"]);
    assert_eq!(
        json(&o)["verdicts"][0]["observations"]["dims"]["O_E(0)"],
        serde_json::json!([1, 1])
    );
    let o = modsheaf(&["counterexamples", "--box", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["flatbc", "gabber", "nonreduced"] {
        assert!(text.contains(id));
    }
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        modsheaf(&["verify", "gabber", "--cubic", "t0*t1*t2", "--box", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(modsheaf(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(modsheaf(&["verify"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_modsheaf"))
        .args(["verify", "snc"])
        .env("MODSHEAF_BOX", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_report_is_deterministic_and_records_seed() {
    let args = [
        "verify",
        "projcoh",
        "snc",
        "filtration",
        "--box",
        "3",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    let a = modsheaf(&args);
    let b = modsheaf(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["box_bound"], 3);
    assert_eq!(v["all_expected"], true);
    let ids: Vec<&str> = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["filtration", "projcoh", "snc"]);
    assert!(v["verdicts"][0].get("elapsed_ms").is_none());
}

#[test]
fn env_box_default() {
    let o = Command::new(env!("CARGO_BIN_EXE_modsheaf"))
        .args(["verify", "filtration", "--format", "json"])
        .env("MODSHEAF_BOX", "4")
        .output()
        .unwrap();
    assert_eq!(json(&o)["box_bound"], 4);
    assert_eq!(
        json(&o)["verdicts"][0]["observations"]["dims"],
        serde_json::json!([1, 2, 3, 4])
    );
}
