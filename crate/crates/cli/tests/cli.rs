use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn genus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(args)
        .env_remove("GENUS_BUDGET")
        .env_remove("GENUS_WIDTH")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn milgram_m4_verifies() {
    let out = genus(&["milgram", "--k", "4", "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vertices"], 28);
    assert_eq!(v["betti"], 15);
    assert_eq!(v["genus"], 4);
    assert_eq!(v["max_genus"], 7);
}

#[test]
fn gtable_row() {
    let out = genus(&["gtable", "--kmax", "11", "--output", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("g(k)")).unwrap();
    assert_eq!(row, "g(k) <=\t4\t8\t12\t15\t18\t21\t25\t29\t33\t36\t39");
}

#[test]
fn planar_builtins() {
    let out = genus(&["planar", "c15chords4", "--expect", "true"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["planar"], true);
    assert_eq!(genus(&["planar", "k33", "--expect", "true"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(genus(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(genus(&["milgram", "--k", "7"]).status.code(), Some(2));
    assert_eq!(genus(&["genus", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(genus(&["genus", "k5", "--expect", "2"]).status.code(), Some(1));
    assert_eq!(genus(&["--budget", "1", "genus", "m4"]).status.code(), Some(3));
    assert_eq!(genus(&["--help"]).status.code(), Some(0));
}

#[test]
fn deterministic_output_is_stable() {
    for args in [
        &["genus", "petersen", "--deterministic"][..],
        &["maxgenus", "h3", "--deterministic"],
        &["census", "--n", "10", "--deterministic"],
    ] {
        let a = genus(args);
        let b = genus(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    }
}

#[test]
fn genus_capped() {
    let v = json(&genus(&["genus", "k33", "--cap", "1", "--deterministic"]));
    assert_eq!(v["genus_at_least"], 1);
    let v = json(&genus(&["genus", "k33", "--cap", "2", "--deterministic"]));
    assert_eq!(v["genus"], 1);
}

#[test]
fn edge_list_and_graph6_files() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("k4.txt");
    std::fs::write(&edges, "# K4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let v = json(&genus(&["betti", edges.to_str().unwrap()]));
    assert_eq!(v["betti"], 3);
    assert_eq!(v["is_cubic"], true);

    let g6 = genus(&["show", "k33", "--format", "graph6"]);
    assert_eq!(g6.status.code(), Some(0));
    let path = dir.path().join("k33.g6");
    std::fs::write(&path, &g6.stdout).unwrap();
    let v = json(&genus(&["genus", path.to_str().unwrap(), "--deterministic"]));
    assert_eq!(v["genus"], 1);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n2\n").unwrap();
    assert_eq!(genus(&["betti", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn census_from_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.g6");
    let mut f = std::fs::File::create(&path).unwrap();
    for name in ["k33", "petersen"] {
        f.write_all(&genus(&["show", name, "--format", "graph6"]).stdout).unwrap();
    }
    writeln!(f, "not graph6 at all").unwrap();
    drop(f);

    let out = genus(&["census", "--ingest", path.to_str().unwrap(), "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 6);
    assert_eq!(v["total"], 1);
    assert_eq!(v["genus_histogram"]["1"], 1);
    assert_eq!(v["duke_check"], true);
    assert_eq!(v["issues"].as_array().unwrap().len(), 2);
}
