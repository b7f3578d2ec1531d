use std::process::{Command, Output};

use serde_json::Value;

fn xconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xconn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sing_lists_elements() {
    let o = xconn(&["sing", "-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Sing(2): 2 elements\n1,1\n2,2\n");
}

#[test]
fn sing_exports() {
    let o = xconn(&["sing", "-n", "3", "--export", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["roster"].as_array().unwrap().len(), 21);
    assert_eq!(v["table"].as_array().unwrap().len(), 21);

    let o = xconn(&["sing", "-n", "2", "--export", "csv"]);
    assert_eq!(
        stdout(&o),
        "*,\"1,1\",\"2,2\"\n\"1,1\",\"1,1\",\"2,2\"\n\"2,2\",\"1,1\",\"2,2\"\n"
    );
}

#[test]
fn factorize_both_categories() {
    let o = xconn(&[
        "factorize",
        "--cat",
        "P",
        "-n",
        "4",
        "--morphism",
        "f: {1,2,3}->{1,2,4} [1,1,4]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("q = f: {1,2,3}->{1,3} [1,1,3]"));
    assert!(out.ends_with("recomposes: true\n"));

    let o = xconn(&[
        "factorize",
        "--cat",
        "Pi",
        "-n",
        "3",
        "--morphism",
        "eta: 12|3 -> 13|2 [1,0]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("recomposes: true\n"));

    let o = xconn(&[
        "factorize",
        "--cat",
        "Pi",
        "-n",
        "4",
        "--morphism",
        "eta: 12|3 -> 13|2 [1,0]",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cones_and_dual() {
    let o = xconn(&["cones", "--build", "TP", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphic to Sing(3): true"));
    let o = xconn(&["cones", "--build", "TPi", "-n", "3"]);
    assert!(stdout(&o).contains("anti-isomorphic to Sing(3): true"));
    let o = xconn(&["dual", "--verify", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    let o = xconn(&["dual", "-n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn crossconn_verbs() {
    let o = xconn(&["crossconn", "enumerate", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("6 cross-connections\n"));
    assert_eq!(out.lines().count(), 7);

    let o = xconn(&["crossconn", "build", "--theta", "2,3,1", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("21 linked pairs"));

    let o = xconn(&["crossconn", "verify", "--all", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 6);

    let o = xconn(&["crossconn", "build", "--theta", "2,1", "-n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ideal_summary_json() {
    let o = xconn(&["ideal", "build", "-n", "3", "--exclude", "12|3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 15);
    assert_eq!(v["excluded_count"], 6);
    assert_eq!(v["regular"], true);
    assert_eq!(v["right_reductive"], true);

    let o = xconn(&[
        "ideal",
        "build",
        "-n",
        "3",
        "--exclude",
        "12|3",
        "--exclude",
        "13|2",
        "--exclude",
        "1|23",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
}

#[test]
fn verify_suite_matrix() {
    let o = xconn(&["verify", "--suite", "all", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let labels: Vec<&str> = out
        .lines()
        .filter(|l| l.contains(" PASS ") || l.contains(" FAIL "))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(
        labels,
        [
            "powerset-cones-iso",
            "partition-cones-anti-iso",
            "dual-of-powerset",
            "dual-of-partitions",
            "mset-cross-sections",
            "duality-natural",
            "cxn-semigroup-iso",
            "all-cxn-from-permutations",
            "total-ideal-criterion",
            "right-reductive-subsemigroup",
        ]
    );
    assert!(out.ends_with("ALL PASS\n"));

    let o = xconn(&["verify", "--suite", "mset-cross-sections", "-n", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["label"], "mset-cross-sections");
    assert_eq!(v[0]["report"]["violation_count"], 0);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(xconn(&["sing", "-n", "1"]).status.code(), Some(2));
    assert_eq!(xconn(&["sing"]).status.code(), Some(2));
    assert_eq!(xconn(&["bogus"]).status.code(), Some(2));
    assert_eq!(xconn(&["verify", "--suite", "nope", "-n", "3"]).status.code(), Some(2));
    assert_eq!(
        xconn(&["factorize", "--cat", "P", "-n", "3", "--morphism", "f: {1,2}->{3} [3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "all", "-n", "3"][..],
        &["cones", "--build", "TPi", "-n", "3", "--export", "csv"][..],
        &["crossconn", "enumerate", "-n", "3"][..],
    ] {
        assert_eq!(xconn(args).stdout, xconn(args).stdout, "{args:?}");
    }
}
