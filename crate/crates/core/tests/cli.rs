use std::path::Path;
use std::process::{Command, Output};

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratavol"))
        .args(args)
        .env("STRATAVOL_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn volume_json() {
    let o = run(&["volume", "3,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "{\"mu\":[3,1],\"genus\":3,\"dim\":7,\"c\":{\"num\":\"8\",\"den\":\"42525\",\"pi_pow\":6},\
         \"volume\":{\"num\":\"8\",\"den\":\"297675\",\"pi_pow\":6},\"route\":\"general\"}\n"
    );
}

#[test]
fn volume_of_simple_stratum_with_cross_check() {
    let o = run(&["volume", "1,1", "--cross-check"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["volume"]["num"], "1");
    assert_eq!(v["volume"]["den"], "1350");
    assert_eq!(v["volume"]["pi_pow"], 4);
    assert_eq!(v["route"], "simple-closed-form");
}

#[test]
fn odd_stratum_is_exit_2() {
    let o = run(&["volume", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("|μ| must be even"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn malformed_input_is_exit_2() {
    assert_eq!(run(&["volume", "3,x"]).status.code(), Some(2));
    assert_eq!(run(&["cconst", "1,2"]).status.code(), Some(2));
    assert_eq!(
        run(&["npoint-check", "--s", "1", "--order", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cumulant_and_fk() {
    let o = run(&["cumulant", "4,2", "--output", "plain"]);
    assert_eq!(stdout(&o), "<<4,2>> = 416/315 pi^6\n");
    let o = run(&["cumulant", "4,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"]["num"], "416");
    assert_eq!(v["value"]["den"], "315");
    assert_eq!(v["value"]["pi_pow"], 6);
    let o = run(&["fk", "4", "--output", "plain"]);
    assert_eq!(stdout(&o), "1/4 p[4] - 1 p[2,1]\n");
}

#[test]
fn covers_csv() {
    let o = run(&[
        "covers",
        "2,2",
        "--dmax",
        "4",
        "--connected",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "profile;d;kind;count\n2,2;0;connected;0/1\n2,2;1;connected;0/1\n\
         2,2;2;connected;2/1\n2,2;3;connected;16/1\n2,2;4;connected;60/1\n"
    );
}

#[test]
fn approx_is_labeled_and_optional() {
    let exact = stdout(&run(&["cconst", "2,2", "--output", "plain"]));
    assert_eq!(exact, "c(2,2) = 1/270 pi^4\n");
    let approx = stdout(&run(&["cconst", "2,2", "--output", "plain", "--approx"]));
    assert!(approx.starts_with(&exact));
    assert!(approx.contains("0.3607744112"));
    assert!(approx.contains("pi to 50 digits"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["volume", "2,2"]);
    let b = run(&["volume", "2,2", "--threads", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites_pass_and_cache_reloads() {
    let dir = tempfile::tempdir().unwrap();
    for _ in 0..2 {
        let o = run_in(
            dir.path(),
            &["verify", "orthogonality", "--output", "plain"],
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).starts_with("PASS orthogonality"));
    }
    assert!(dir.path().join("characters-d6.json").exists());
    let o = run_in(dir.path(), &["verify", "forests"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["suite"], "forests");
    assert_eq!(v[0]["passed"], true);
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn resource_cap_from_config_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("stratavol.toml");
    std::fs::write(&config, "[caps]\nset_partition_n = 3\n").unwrap();
    let o = run(&["cumulant", "1,1,1,1", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    std::fs::write(&config, "[caps]\nset_partition_n = 3\nunknown = 1\n").unwrap();
    let o = run(&["cumulant", "1", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&config, "output = \"plain\"\n").unwrap();
    let o = run(&["cumulant", "1", "--config", config.to_str().unwrap()]);
    assert_eq!(stdout(&o), "<<1>> = 1/6 pi^2\n");
}

#[test]
fn simple_table_and_npoint() {
    let o = run(&["simple-table", "--nmax", "4", "--output", "csv"]);
    assert_eq!(
        stdout(&o),
        "n;num;den;pi_pow\n1;0;1;0\n2;1;270;4\n3;0;1;0\n4;1;9720;6\n"
    );
    let o = run(&["npoint-check", "--s", "5/2", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    let o = run(&[
        "npoint-check",
        "--s",
        "-3",
        "--order",
        "4",
        "--output",
        "plain",
    ]);
    assert!(stdout(&o).contains("holds"));
}
