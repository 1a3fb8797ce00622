use std::process::{Command, Output};

fn gcdgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcdgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn charpoly_matches_table_row() {
    let o = gcdgraph(&["charpoly", "--q", "3", "--f", "x*(x+1)", "--D", "1,x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(x - 6)*(x + 3)^2*x^6\n");
}

#[test]
fn table1_text() {
    let o = gcdgraph(&["table", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "[] | x^9\n\
         [1], [x, x + 1] | (x - 4)*(x - 1)^4*(x + 2)^4\n\
         [x], [x + 1] | (x - 2)^3*(x + 1)^6\n\
         [1, x], [1, x + 1] | (x - 6)*(x + 3)^2*x^6\n\
         [1, x, x + 1] | (x - 8)*(x + 1)^8\n"
    );
}

#[test]
fn table3_csv_spot_values() {
    let o = gcdgraph(&["table", "3", "--q", "2,3,11", "--n", "5..6"]);
    assert_eq!(stdout(&o), "n,2,3,11\n5,9,12,14\n6,15,22,26\n");
}

#[test]
fn graph_formats() {
    let json = stdout(&gcdgraph(&["graph", "--q", "2", "--f", "x", "--D", "1"]));
    assert_eq!(json, "{\"modulus\":{\"coeffs\":[[0],[1]]},\"D\":[{\"coeffs\":[[1]]}],\"n\":2,\"edges\":[[0,1]]}\n");
    let csv = stdout(&gcdgraph(&["graph", "--q", "2", "--f", "x", "--D", "1", "--format", "csv"]));
    assert_eq!(csv, "u,v\n0,1\n");
    let dot = stdout(&gcdgraph(&["graph", "--q", "3", "--f", "x^2", "--D", "x", "--format", "dot"]));
    assert!(dot.starts_with("graph \"G\" {"), "{dot}");
    assert_eq!(dot.matches(" -- ").count(), 9);
}

#[test]
fn spectrum_json_and_recovery() {
    let o = gcdgraph(&["spectrum", "--q", "3", "--f", "x^2", "--D", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let eig = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eig.len(), 3);
    assert_eq!(eig[0]["value"], 6);
    let o = gcdgraph(&["recover-d", "--q", "3", "--f", "x^2", "--vector", "0,-3,6"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "[1]\n"));
    let o = gcdgraph(&["recover-d", "--q", "3", "--f", "x^2", "--vector", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pp_report_json_fields() {
    let o = gcdgraph(&["pp-report", "--q", "3", "--f", "x^2", "--D", "x"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["exponents"], serde_json::json!([1]));
}

#[test]
fn census_isomorphism_mode_splits_f2_counterexample() {
    let o = gcdgraph(&["census", "--q", "2", "--f", "x^3*(x+1)^2", "--format", "json"]);
    let spectral: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(spectral["split_classes"], 4);
    let o = gcdgraph(&["census", "--q", "2", "--f", "x^3*(x+1)^2", "--mode", "isomorphism", "--format", "json"]);
    let iso: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let n = |v: &serde_json::Value| v["classes"].as_array().unwrap().len();
    assert_eq!(n(&iso), n(&spectral) + 4);
}

#[test]
fn iso_check_pair_and_sweep() {
    let o = gcdgraph(&["iso-check", "--q", "3", "--f", "x^2*(x+1)", "--D1", "1,x,x^2", "--D2", "1,x+1"]);
    assert_eq!(stdout(&o), "isomorphic\n");
    let o = gcdgraph(&["iso-check", "--q", "2", "--f", "x^3*(x+1)^2", "--D1", "1,x^2,x*(x+1),x^2*(x+1)^2", "--D2", "1,x^2,x*(x+1),x^3*(x+1)"]);
    assert_eq!(stdout(&o), "not isomorphic\n");
    let o = gcdgraph(&["iso-check", "--kind", "coprime", "--q", "2", "--max-vertices", "32"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(" 0 failures\n"));
}

#[test]
fn verify_suite_exit_code() {
    let o = gcdgraph(&["verify", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("table1: PASS"));
    assert_eq!(gcdgraph(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(gcdgraph(&["charpoly", "--q", "3", "--f", "x+"]).status.code(), Some(2));
    assert_eq!(gcdgraph(&["charpoly", "--q", "3", "--f", "x", "--D", "x+1"]).status.code(), Some(2));
    assert_eq!(gcdgraph(&["graph", "--q", "5", "--f", "x^5"]).status.code(), Some(3));
    assert_eq!(gcdgraph(&["charpoly", "--q", "5", "--f", "x^4", "--matrix"]).status.code(), Some(3));
    assert_eq!(gcdgraph(&[]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("gcdgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "q = 3\nformat = \"csv\"\n[caps]\nmax_vertices = 8\n").unwrap();
    let p = path.to_str().unwrap();
    let o = gcdgraph(&["--config", p, "spectrum", "--f", "x"]);
    assert_eq!(stdout(&o), "eigenvalue,multiplicity\n0,3\n");
    assert_eq!(gcdgraph(&["--config", p, "graph", "--f", "x^2"]).status.code(), Some(3));
    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(gcdgraph(&["--config", p, "spectrum", "--f", "x"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["census", "--q", "3", "--f", "x^2*(x+1)", "--format", "json"];
    assert_eq!(gcdgraph(&args).stdout, gcdgraph(&args).stdout);
}
