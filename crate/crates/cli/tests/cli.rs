use std::process::Command;

use clap::Parser;
use feynman_gw_cli::{run, Outcome, RunConfig};

fn exec(args: &[&str]) -> Outcome {
    let mut argv = vec!["feynman-gw"];
    argv.extend_from_slice(args);
    run(&RunConfig::try_parse_from(argv).expect("arguments parse"))
}

fn ok(args: &[&str]) -> String {
    let out = exec(args);
    assert_eq!(out.exit, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn error_code(out: &Outcome) -> String {
    let v: serde_json::Value = serde_json::from_str(&out.stderr).expect("error object is JSON");
    v["error"]["code"].as_str().unwrap().to_string()
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_feynman-gw"))
}

#[test]
fn theta_fixture() {
    assert_eq!(ok(&["integral", "--catalog", "theta", "--branch-type", "0,0,2"]), "4\n");
    assert_eq!(ok(&["integral", "--catalog", "theta", "--branch-type", "0,0,2", "--algo", "naive"]), "4\n");
    assert_eq!(ok(&["integral", "--catalog", "theta", "--branch-type", "1,1,1"]), "0\n");
}

#[test]
fn collapsed_series_doubles_exponents() {
    assert_eq!(ok(&["series", "--catalog", "theta", "--degree", "2", "--collapse"]), "q^4: 24\n");
    assert_eq!(ok(&["series", "--catalog", "theta", "--degree", "2", "--collapse", "--raw"]), "q^2: 24\n");
}

#[test]
fn series_json_round_trips() {
    let text = ok(&["series", "--catalog", "caterpillar3", "--degree", "3", "--format", "json"]);
    let j: feynman_gw_core::DegreeSeriesJson = serde_json::from_str(&text).unwrap();
    let s = feynman_gw_core::DegreeSeries::<feynman_gw_core::Integer>::from_json(&j).unwrap();
    let direct = feynman_gw_core::feynman_integral_degree(&feynman_gw_core::catalog::get("caterpillar3").unwrap(), 3).unwrap();
    assert_eq!(s, direct);
    assert_eq!(j.exponent_convention, "q^(2d)");
}

#[test]
fn flip_and_naive_series_agree() {
    for name in ["dumbbell", "star"] {
        let flip = ok(&["series", "--catalog", name, "--degree", "3", "--format", "json"]);
        let naive = ok(&["series", "--catalog", name, "--degree", "3", "--format", "json", "--algo", "naive"]);
        assert_eq!(flip, naive, "{name}");
    }
}

#[test]
fn graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("theta.json");
    std::fs::write(&json, r#"{"vertices":2,"edges":[[1,2],[1,2],[1,2]]}"#).unwrap();
    let text = dir.path().join("dumbbell.txt");
    std::fs::write(&text, "1 1\n1 2\n2 2\n").unwrap();
    let json = json.to_str().unwrap();
    let text = text.to_str().unwrap();
    assert_eq!(ok(&["integral", "--graph", json, "--branch-type", "0,0,2"]), "4\n");
    assert_eq!(
        ok(&["series", "--graph", text, "--degree", "4"]),
        ok(&["series", "--catalog", "dumbbell", "--degree", "4"])
    );
    // automorphisms are brute-forced for files
    assert_eq!(
        ok(&["assemble", "--graph", json, "--graph", text, "--degree", "4"]),
        ok(&["assemble", "--catalog", "theta,dumbbell", "--degree", "4"])
    );
}

#[test]
fn assemble_and_fit() {
    assert_eq!(
        ok(&["assemble", "--catalog", "theta,dumbbell", "--degree", "4"]),
        "q^4: 2\nq^6: 16\nq^8: 60\n"
    );
    assert_eq!(
        ok(&["assemble", "--catalog", "theta,dumbbell", "--aut", "12,8", "--degree", "4", "--raw"]),
        "q^2: 2\nq^3: 16\nq^4: 60\n"
    );
    let fit = ok(&["fit", "--catalog", "theta,dumbbell", "--degree", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&fit).unwrap();
    assert_eq!(v["weight"], 6);
    assert_eq!(v["residual_ok"], true);
    assert_eq!(v["verified_through"], 12);
    assert_eq!(v["lambda"], serde_json::json!(["-1/12960", "-1/8640", "1/5184"]));
    let wrong = ok(&["fit", "--catalog", "theta,dumbbell", "--degree", "12", "--weight", "8", "--format", "json"]);
    assert!(wrong.contains("\"residual_ok\":false"));
}

#[test]
fn fit_from_series_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f2.json");
    let series = ok(&["assemble", "--catalog", "theta,dumbbell", "--degree", "12", "--format", "json"]);
    std::fs::write(&path, series).unwrap();
    let p = path.to_str().unwrap();
    let from_file = ok(&["fit", "--series", p, "--degree", "12", "--weight", "6"]);
    assert_eq!(from_file, ok(&["fit", "--catalog", "theta,dumbbell", "--degree", "12"]));
    let out = exec(&["fit", "--series", p, "--degree", "12"]);
    assert_eq!((out.exit, error_code(&out)), (2, "usage".to_string()));
}

#[test]
fn descendant() {
    let zero = ok(&["descendant", "--catalog", "theta", "--genus", "0,0", "--degree", "3", "--format", "json"]);
    let hurwitz = ok(&["series", "--catalog", "theta", "--degree", "3", "--format", "json"]);
    assert_eq!(zero.replace("descendant", "hurwitz").replace("q^d", "q^(2d)"), hurwitz);

    let loop_vertex = std::env::temp_dir().join(format!("loop-{}.txt", std::process::id()));
    std::fs::write(&loop_vertex, "1 1\n").unwrap();
    let p = loop_vertex.to_str().unwrap();
    assert_eq!(ok(&["descendant", "--graph", p, "--genus", "1", "--branch-type", "1"]), "q1^1: 1/24\n");
    assert_eq!(ok(&["descendant", "--graph", p, "--genus", "1", "--branch-type", "2"]), "q1^2: 5/8\n");
    std::fs::remove_file(loop_vertex).unwrap();

    let out = exec(&["descendant", "--catalog", "star", "--genus", "0,0,0,0", "--degree", "2"]);
    assert_eq!((out.exit, error_code(&out)), (2, "psi_data".to_string()));
    ok(&["descendant", "--catalog", "star", "--genus", "0,0,0,0", "--degree", "2", "--no-psi-check"]);
}

#[test]
fn error_objects() {
    let out = exec(&["series", "--catalog", "nope", "--degree", "2"]);
    assert_eq!((out.exit, error_code(&out)), (2, "unknown_catalog".to_string()));
    let out = exec(&["integral", "--catalog", "theta", "--branch-type", "0,2"]);
    assert_eq!((out.exit, error_code(&out)), (2, "length_mismatch".to_string()));
    let out = exec(&["series", "--catalog", "theta", "--degree", "0"]);
    assert_eq!((out.exit, error_code(&out)), (2, "usage".to_string()));
    let out = exec(&["assemble", "--catalog", "theta,caterpillar3", "--degree", "2"]);
    assert_eq!((out.exit, error_code(&out)), (2, "genus_mismatch".to_string()));
    assert!(out.stdout.is_empty());
}

#[test]
fn size_guard_exits_with_limit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    let edges: String = (1..9).map(|v| format!("{v} {}\n", v + 1)).collect();
    std::fs::write(&path, edges).unwrap();
    let out = exec(&["series", "--graph", path.to_str().unwrap(), "--degree", "1", "--algo", "naive"]);
    assert_eq!((out.exit, error_code(&out)), (3, "size_limit".to_string()));
}

#[test]
fn bench_csv_shape() {
    let csv = ok(&["bench", "--catalog", "theta", "--degrees", "1..3", "--algos", "flip,naive"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "degree,algorithm,seconds");
    assert_eq!(lines.len(), 7);
    for (line, (d, algo)) in lines[1..].iter().zip([(1, "flip"), (1, "naive"), (2, "flip"), (2, "naive"), (3, "flip"), (3, "naive")]) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[..2], [d.to_string().as_str(), algo]);
        assert!(cells[2].parse::<f64>().is_ok(), "{line}");
    }
    let capped = ok(&["bench", "--catalog", "theta", "--degrees", "1,2", "--algos", "naive", "--budget", "0"]);
    assert_eq!(capped, "degree,algorithm,seconds\n1,naive,--\n2,naive,--\n");
}

#[test]
fn catalog_listing() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["catalog", "--format", "json"])).unwrap();
    let names: Vec<&str> = v["graphs"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["theta", "dumbbell", "caterpillar2", "caterpillar3", "caterpillar4", "star"]);
    assert_eq!(v["graphs"][0]["automorphisms"], 12);
}

#[test]
fn binary_exit_codes_and_output_file() {
    let out = binary().args(["integral", "--catalog", "theta", "--branch-type", "0,0,2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4\n");

    let out = binary().args(["series", "--degree", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "usage");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = binary()
        .args(["series", "--catalog", "theta", "--degree", "2", "--collapse", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "q^4: 24\n");
}

#[test]
fn thread_count_does_not_change_output() {
    let run_with = |threads: &str| {
        let out = binary()
            .args(["series", "--catalog", "caterpillar3", "--degree", "4", "--format", "json"])
            .env("FEYNMAN_GW_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run_with("1"), run_with("4"));
    let flag = binary()
        .args(["series", "--catalog", "caterpillar3", "--degree", "4", "--format", "json", "--threads", "3"])
        .output()
        .unwrap();
    assert_eq!(flag.stdout, run_with("1"));
}
