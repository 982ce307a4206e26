use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betaexp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn roots_examples() {
    assert_eq!(ok(&["roots", "--poly", "1,-1,0,-1,-1,1", "--window", "1,2", "--digits", "5"]).trim(), "1.68042");
    assert_eq!(ok(&["roots", "--poly", "-2,-2,-1,-1,0,1", "--window", "1,2", "--digits", "5"]).trim(), "1.66184");
    assert_eq!(ok(&["roots", "--poly", "-1,-1,1", "--window", "1,2", "--digits", "5"]).trim(), "1.61803");
    let all = ok(&["roots", "--poly", "-1,-1,1"]);
    assert_eq!(all.lines().collect::<Vec<_>>(), ["-0.61803", "1.61803"]);
}

#[test]
fn roots_errors() {
    assert_eq!(code(&["roots", "--poly", "1,x"]), 2);
    assert!(String::from_utf8(run(&["roots", "--poly", "1,x"]).stderr).unwrap().contains("malformed"));
    assert_eq!(code(&["roots", "--poly", "0"]), 3);
    assert_eq!(code(&["roots", "--poly", "-1,-1,1", "--window", "2,1"]), 3);
    assert_eq!(code(&["roots"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn classify_examples() {
    let out = ok(&["classify", "--q", "q3", "--x", "one"]);
    assert!(out.contains("verdict: CountablyInfinite"), "{out}");
    assert!(out.contains("cycle w = T1(1) = y1"), "{out}");
    assert!(out.contains("b = 1000"), "{out}");

    let out = ok(&["classify", "--q", "q1", "--x", "y:2"]);
    assert!(out.contains("null infinite: no, both sides infinite at"), "{out}");

    let out = ok(&["classify", "--q", "q2", "--x", "pi:0|0"]);
    assert!(out.contains("verdict: Unique"), "{out}");
}

#[test]
fn classify_errors() {
    assert_eq!(code(&["classify", "--q", "golden", "--x", "one"]), 3);
    assert_eq!(code(&["classify", "--q", "qf", "--x", "one"]), 3);
    assert_eq!(code(&["classify", "--q", "q3", "--x", "y:zero"]), 2);
    assert_eq!(code(&["classify", "--q", "q3", "--x", "2"]), 3);
    assert_eq!(code(&["classify", "--q", "nope", "--x", "one"]), 2);
}

#[test]
fn depth_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_betaexp"))
        .args(["classify", "--q", "q1", "--x", "y:2"])
        .env("BETA_BRANCH_DEPTH", "8")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("verdict: DepthExceeded(8)"));
}

#[test]
fn tables_examples() {
    let two = ok(&["tables", "--which", "2"]);
    assert_eq!(two.lines().count(), 11);
    assert!(two
        .lines()
        .any(|l| l.starts_with("1.67365") && l.ends_with("printed 1.67365 x^5 - 2x^4 + x^3 - x^2 + x - 1")));

    let csv = ok(&["tables", "--which", "3", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().any(|r| &r[0] == "T0(T1(y3)) = z3" && &r[3] == "1.64541"));

    let one = ok(&["tables", "--which", "1"]);
    assert!(one.lines().filter(|l| !l.contains("[Match]")).count() >= 1);
    assert_eq!(code(&["tables", "--which", "4"]), 2);
}

#[test]
fn search_examples() {
    let out = ok(&["search", "--window", "1.619,1.681"]);
    for name in ["1.64541 (q1)", "1.65462 (q2)", "1.68042 (q3)"] {
        assert!(out.contains(name), "{out}");
    }
    assert_eq!(out.matches("certificate valid").count(), 3);
    assert_eq!(code(&["search", "--window", "1.6,1.7"]), 3);
    assert_eq!(code(&["search", "--window", "1.7,1.6"]), 3);
    assert!(ok(&["search", "--window", "1.62,1.64"]).contains("0 base(s)"));
}

#[test]
fn certify_examples() {
    let out = ok(&["certify", "--theorem", "4.2"]);
    assert!(out.starts_with("4.2 Certified"), "{out}");
    assert!(out.contains("-1.20458"));
    let all = ok(&["certify", "--theorem", "all"]);
    assert_eq!(all.lines().filter(|l| l.contains(" Certified: ")).count(), 4);
    assert_eq!(code(&["certify", "--theorem", "4.1", "--q3-poly", "1,-2,0,-1,-1,1"]), 4);
    assert_eq!(code(&["certify", "--theorem", "9.9"]), 2);
}

#[test]
fn tree_renders() {
    let out = ok(&["tree", "--q", "q3", "--x", "one", "--levels", "6"]);
    assert!(!out.is_empty());
    let json = ok(&["tree", "--q", "q3", "--x", "one", "--levels", "6", "--format", "json"]);
    serde_json::from_str::<serde_json::Value>(&json).unwrap();
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: &[&[&str]] = &[
        &["roots", "--poly", "-1,-1,1", "--format", "json"],
        &["classify", "--q", "q3", "--x", "one", "--format", "json"],
        &["classify", "--q", "q1", "--x", "y:2", "--format", "json"],
        &["tables", "--which", "3", "--format", "json"],
        &["search", "--window", "1.619,1.681", "--format", "json"],
        &["certify", "--theorem", "all", "--format", "json"],
        &["tree", "--q", "q2", "--x", "one", "--format", "json"],
    ];
    for args in cases {
        let out = ok(args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out, "{args:?}");
        // no binary floats anywhere
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(n) => !n.is_f64(),
                serde_json::Value::Array(a) => a.iter().all(no_floats),
                serde_json::Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&v), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["search", "--window", "1.619,1.681", "--format", "json"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["classify", "--q", "q1", "--x", "y:2"];
    assert_eq!(ok(&args), ok(&args));
}
