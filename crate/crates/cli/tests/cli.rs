use std::process::{Command, Output};

const ERLANG: &str = r#"{"family":"erlang","k":2,"rate":2}"#;
const LINEAR: &str = r#"{"family":"mrl_linear","a":1,"b":1}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrlai"))
        .args(args)
        .output()
        .expect("spawn mrlai")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv_lines(text).into_iter().skip(1).collect()
}

fn csv_lines(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn verdicts(o: &Output) -> Vec<(String, String)> {
    csv_rows(&stdout(o))
        .into_iter()
        .map(|r| (r[0].clone(), r[1].clone()))
        .collect()
}

#[test]
fn eval_tabulates_known_values() {
    let o = run(&["eval", ERLANG, "--grid", "0.5:4.5:0.5", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("t,survival,mu,mu_avg,L,hazard_ai\n"), "{text}");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0][0], "0.5");
    assert_eq!(rows[0][4], "0.885924163724");
    assert_eq!(rows[3][4], "0.855700709221");
}

#[test]
fn eval_json_and_file_spec() {
    let dir = std::env::temp_dir().join(format!("mrlai-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("erlang.json");
    std::fs::write(&spec, ERLANG).unwrap();
    let out = dir.join("out.json");
    let o = run(&[
        "eval",
        spec.to_str().unwrap(),
        "--grid",
        "0.5:2:0.5",
        "--format",
        "json",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert!((rows[0]["L"].as_f64().unwrap() - 0.885924163724462).abs() < 1e-11);
}

#[test]
fn bad_inputs_exit_2() {
    for args in [
        vec!["eval", ERLANG],
        vec!["eval", ERLANG, "--grid", "3:1:0.1"],
        vec!["eval", r#"{"family":"erlang","k":2}"#, "--grid", "0:1:0.1"],
        vec!["eval", r#"{"family":"exponential","rate":-1}"#, "--grid", "0:1:0.1"],
        vec!["eval", "/no/such/spec.json", "--grid", "0:1:0.1"],
        vec!["compare", ERLANG, LINEAR, "--grid", "0.1:5/32", "--orders", "bogus"],
        vec!["plotdata", ERLANG, "--grid", "0.1:5/32", "--quantity", "nope"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn classify_verdicts() {
    let o = run(&["classify", ERLANG, "--grid", "0.1:10/400", "--format", "csv"]);
    assert!(o.status.success());
    let v = verdicts(&o);
    assert_eq!(v[0], ("mrl".into(), "decreasing".into()));
    assert_eq!(v[2], ("mrlai".into(), "non_monotone".into()));

    let o = run(&["classify", LINEAR, "--grid", "0.05:50/400", "--format", "csv"]);
    let v = verdicts(&o);
    for q in ["mrl", "mrla", "mrlai"] {
        assert!(v.contains(&(q.into(), "increasing".into())), "{v:?}");
    }
}

#[test]
fn compare_counterexamples() {
    let x = r#"{"family":"exponential","rate":0.5}"#;
    let y = r#"{"family":"pareto","shape":2,"scale":1}"#;
    let o = run(&[
        "compare",
        x,
        y,
        "--orders",
        "mrlai,icx",
        "--conv",
        "formal",
        "--grid",
        "0.1:20/200",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        verdicts(&o),
        [("mrlai".into(), "holds".into()), ("icx".into(), "fails".into())]
    );

    let x = r#"{"family":"erlang","k":2,"rate":3}"#;
    let o = run(&[
        "compare",
        x,
        ERLANG,
        "--orders",
        "lr,mrlai",
        "--grid",
        "0.05:10/200",
        "--format",
        "csv",
    ]);
    assert_eq!(
        verdicts(&o),
        [("lr".into(), "holds".into()), ("mrlai".into(), "fails".into())]
    );
}

#[test]
fn compare_with_itself_holds_everywhere() {
    let o = run(&["compare", ERLANG, ERLANG, "--grid", "0.1:10/100", "--format", "csv"]);
    assert!(o.status.success());
    let v = verdicts(&o);
    assert_eq!(v.len(), 6);
    assert!(v.iter().all(|(_, r)| r == "holds"), "{v:?}");
}

#[test]
fn reproduce_full_and_filtered() {
    let o = run(&["reproduce"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 MISMATCH"), "{text}");

    let o = run(&["reproduce", "--filter", "ex3.*", "--format", "json"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["summary"]["cases"], 5);
    assert_eq!(r["summary"]["disputed_cases"], serde_json::json!(["ex3.3", "ex3.5"]));

    let o = run(&["reproduce", "--filter", "nothing*", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matched no cases"));
    assert_eq!(csv_rows(&stdout(&o)).len(), 0);
}

#[test]
fn reproduce_tol_override_can_fail() {
    let o = run(&["reproduce", "--filter", "ex2.4", "--tol", "1e-14"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn list_cases() {
    let o = run(&["list", "--format", "csv", "--filter", "thm4.*"]);
    assert!(o.status.success());
    let ids: Vec<String> = csv_rows(&stdout(&o)).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(ids, ["thm4.1", "thm4.2", "thm4.3", "thm4.4", "thm4.5"]);
}

#[test]
fn plotdata_single_and_long() {
    let o = run(&["plotdata", ERLANG, "--grid", "0.5:4.5:2"]);
    assert!(o.status.success());
    let lines = csv_lines(&stdout(&o));
    assert_eq!(lines[0], ["t", "L"]);
    assert_eq!(lines[1], ["0.5", "0.885924163724"]);

    let o = run(&["plotdata", ERLANG, LINEAR, "--grid", "0.5:4.5:2", "--quantity", "mu"]);
    let lines = csv_lines(&stdout(&o));
    assert_eq!(lines[0], ["series", "t", "mu"]);
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1][0], "erlang1");
    assert_eq!(lines[4], ["mrl_linear2", "0.5", "1.5"]);
}

#[test]
fn table_and_csv_carry_the_same_numbers() {
    let csv = stdout(&run(&["eval", LINEAR, "--grid", "0.5:3:0.5", "--format", "csv"]));
    let table = stdout(&run(&["eval", LINEAR, "--grid", "0.5:3:0.5"]));
    let from_table: Vec<Vec<String>> = table
        .lines()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    assert_eq!(from_table[0], ["t", "survival", "mu", "mu_avg", "L", "hazard_ai"]);
    assert_eq!(from_table, csv_lines(&csv));
}

#[test]
fn undefined_orders_are_reported_not_fatal() {
    let x = r#"{"family":"exponential","rate":0.5}"#;
    let y = r#"{"family":"pareto","shape":2,"scale":1}"#;
    let o = run(&[
        "compare",
        x,
        y,
        "--conv",
        "formal",
        "--grid",
        "0.1:20/200",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let v = verdicts(&o);
    assert!(v.contains(&("vrl".into(), "undefined".into())), "{v:?}");
    assert!(v.contains(&("mrlai".into(), "holds".into())));
}

#[test]
fn exponential_has_constant_unit_mrlai() {
    let o = run(&[
        "eval",
        r#"{"family":"exponential","rate":0.3}"#,
        "--grid",
        "0.1:30/40",
        "--format",
        "csv",
    ]);
    for row in csv_rows(&stdout(&o)) {
        assert_eq!(row[4], "1");
    }
}
