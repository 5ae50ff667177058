use std::process::{Command, Output};

fn pie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pie"))
        .args(args)
        .env_remove("PIE_FORMAT")
        .env_remove("PIE_N_MAX")
        .env_remove("PIE_MODE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn verify_class_sum() {
    let o = pie(&["verify", "--id", "class_sum", "--n-max", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["id"], "CLASS_SUM");
    assert!(reports[0]["first_failure"].is_null());
}

#[test]
fn series_k_csv() {
    let o = pie(&["series", "--name", "K", "--m", "1", "--c", "1", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,1\n2,2\n3,2\n4,3\n5,2\n");
}

#[test]
fn series_symbolic_weight() {
    let o = pie(&["series", "--name", "entry4", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,c\n2,c + c^2\n3,c + c^3\n4,c + c^2 + c^4\n");
}

#[test]
fn involution_trace() {
    let o = pie(&["involution", "--n", "6", "--N-divisor", "3", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pair N=3 input=4+2\ncase case2\n"));
    assert!(text.contains("step 2 insert 3 | 3+2+1\noutput 3+2+1\n"));
    assert!(text.contains("pair N=3 input=3+2+1\ncase case1\n"));
    assert!(text.contains("output 4+2\n"));
}

#[test]
fn involution_sweep() {
    let o = pie(&["involution", "--n", "20", "--sweep", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 20 * 21 / 2);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("pass")));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--id", "no_such_identity"],
        vec!["verify", "--bogus"],
        vec!["verify", "--id", "bs_basic", "--n-max", "201"],
        vec!["verify", "--id", "class_sum", "--mode", "numeric"],
        vec!["verify", "--id", "bs_onevar", "--mode", "numeric", "--c", "0.95"],
        vec!["series", "--name", "K", "--m", "0", "--c", "1"],
        vec!["series", "--name", "A", "--c", "one"],
    ] {
        let o = pie(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("Usage:"), "{args:?}");
    }
}

#[test]
fn failures_exit_1_with_location() {
    let o = pie(&["verify", "--id", "thm_2_3", "--mode", "numeric", "--n-max", "12", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v[0]["status"], "fail");
    let failure = &v[0]["first_failure"];
    assert!(failure["location"].as_str().unwrap().starts_with("n="));
    assert!(failure["lhs"].is_string() && failure["rhs"].is_string());
}

#[test]
fn output_is_deterministic() {
    let args = ["report-all", "--n-max", "16", "--q-order", "12", "--m-max", "3"];
    let a = pie(&args);
    let b = pie(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains(&b'\r'));
    assert!(json(&a).as_array().unwrap().iter().all(|r| r["elapsed_ms"].is_null()));
}

#[test]
fn timings_are_opt_in() {
    let o = pie(&["verify", "--id", "bs_basic", "--n-max", "10", "--timings"]);
    assert!(json(&o)[0]["elapsed_ms"].is_u64());
}

#[test]
fn flags_override_environment() {
    let base = || {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pie"));
        c.env_remove("PIE_FORMAT").env("PIE_N_MAX", "7");
        c
    };
    let o = base().args(["verify", "--id", "bs_basic"]).output().unwrap();
    assert_eq!(json(&o)[0]["range"]["n_max"], 7);
    let o = base().args(["verify", "--id", "bs_basic", "--n-max", "9"]).output().unwrap();
    assert_eq!(json(&o)[0]["range"]["n_max"], 9);
    let o = base().env("PIE_FORMAT", "text").args(["verify", "--id", "bs_basic"]).output().unwrap();
    assert_eq!(stdout(&o), "PASS BS_BASIC (exact)\n");
}

#[test]
fn exact_c_values_are_strings() {
    let o = pie(&["verify", "--id", "thm_2_2_bell", "--c", "2/3,-1/2", "--q-order", "12", "--m-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)[0]["range"]["c_values"], serde_json::json!(["2/3", "-1/2"]));
}

#[test]
fn output_file_and_write_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = pie(&["verify", "--id", "cor_2_5", "--n-max", "30", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "id,mode,status,location,elapsed_ms\nCOR_2_5,exact,pass,,\n");

    let o = pie(&["verify", "--id", "bs_basic", "--n-max", "5", "--output", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write output"));
}

#[test]
fn numeric_all_covers_the_complex_forms() {
    let o = pie(&["verify", "--all", "--mode", "numeric", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let ids: Vec<_> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap().to_string()).collect();
    assert_eq!(ids, ["BS_ONEVAR", "THM_2_3", "COR_2_4", "THM_2_6"]);
}
