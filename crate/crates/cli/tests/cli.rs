use std::path::PathBuf;
use std::process::{Command, Output};

use cospectral_cli::{
    fuzz_exit_status, EXIT_COUNTEREXAMPLE, EXIT_DATA, EXIT_OK, EXIT_USAGE, WORKERS_ENV,
};
use cospectral_core::coalescing::{family, twostep_check, ProbeConfig};
use cospectral_core::complement::complement_family;
use cospectral_core::exactmath::{int, ratio};
use cospectral_core::graph::parse_graph6;
use cospectral_core::search::{
    distance_fuzz, find_pairs, normalized_demo, Corpus, CounterexampleCandidate, FuzzConfig,
    SearchOptions, SetPair,
};
use cospectral_core::spectral::{distance_char_poly, lq_char_poly};
use cospectral_core::{Graph, Polynomial, VertexSet};
use serde_json::Value;

fn cospectral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cospectral"))
        .args(args)
        .env_remove(WORKERS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cospectral(&full);
    assert_eq!(
        out.status.code(),
        Some(EXIT_OK),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn poly(v: &Value) -> Polynomial {
    let items: Vec<String> = serde_json::from_value(v.clone()).unwrap();
    Polynomial::from_strings(&items).unwrap()
}

fn polys(v: &Value) -> Vec<Polynomial> {
    v.as_array().unwrap().iter().map(poly).collect()
}

fn fixture(n: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/fixtures/graphs{n}.g6"))
}

#[test]
fn charpoly_text_and_json() {
    let out = cospectral(&["charpoly", "--q", "0", "--graph6", "Bg"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&out), "x^3 - 2x\n");

    let v = json(&["charpoly", "--q", "0", "--graph6", "Bg"]);
    assert_eq!(v["coefficients"], serde_json::json!(["0", "-2", "0", "1"]));
    let v = json(&[
        "charpoly",
        "--q",
        "-2/3",
        "--json",
        r#"{"n":4,"edges":[[0,1],[0,2],[0,3]]}"#,
    ]);
    assert_eq!(
        poly(&v["coefficients"]),
        lq_char_poly(&Graph::star(3), &ratio(-2, 3))
    );
    let v = json(&["charpoly", "--matrix", "distance", "--graph6", "Bg"]);
    assert_eq!(
        poly(&v["coefficients"]),
        distance_char_poly(&Graph::path(3)).unwrap()
    );
    assert_eq!(v["q"], Value::Null);
}

#[test]
fn families_and_complement() {
    let out = cospectral(&["families", "--q", "0", "--graph6", "Bg", "--set", "1"]);
    assert_eq!(stdout(&out), "f_0 = x^3 - 2x\nf_1 = x^2\n");

    let v = json(&[
        "complement",
        "--q",
        "0",
        "--graph6",
        "Bg",
        "--set",
        "1",
        "--dump-weights",
    ]);
    let p3 = Graph::path(3);
    let expected = complement_family(&family(&p3, &VertexSet::new([1]), &int(0)).unwrap()).unwrap();
    assert_eq!(polys(&v["family"]["polys"]), expected.polys);
    assert_eq!(
        expected.polys,
        vec![
            Polynomial::from_ints(&[0, -2, 0, 1]),
            Polynomial::from_ints(&[-2, 0, 2]),
            Polynomial::x()
        ]
    );
    assert_eq!(v["complement_set"], serde_json::json!([0, 2]));
    assert_eq!(v["weights"]["omega"][1][1], "-2");
}

#[test]
fn coalesce_and_check_pair() {
    let v = json(&[
        "coalesce", "--q", "1", "--graph6", "Bg", "--set", "0,2", "--rooted", "Bg", "--root", "0",
    ]);
    assert_eq!(v["formula_agrees"], true);
    let glued = parse_graph6(v["graph6"].as_str().unwrap()).unwrap();
    assert_eq!(glued.order(), 7);
    assert_eq!(poly(&v["charpoly"]), lq_char_poly(&glued, &int(1)));

    let v = json(&[
        "check-pair",
        "--q",
        "1",
        "--g1",
        "Cs",
        "--set1",
        "",
        "--g2",
        "Cw",
        "--set2",
        "-",
    ]);
    assert_eq!(v["coalescing_cospectral"], true);
    assert_eq!(v["main_theorem"]["complements_match"], true);
    let v = json(&[
        "check-pair",
        "--q",
        "0",
        "--g1",
        "Bg",
        "--set1",
        "0",
        "--g2",
        "Bg",
        "--set2",
        "1",
    ]);
    assert_eq!(v["coalescing_cospectral"], false);
}

#[test]
fn twostep_matches_library() {
    let v = json(&[
        "twostep", "--q", "0", "--g1", "Bg", "--set1", "0", "--v1", "1", "--g2", "Bg", "--set2",
        "2", "--v2", "1",
    ]);
    let p3 = Graph::path(3);
    let r = twostep_check(
        &p3,
        &VertexSet::new([0]),
        1,
        &p3,
        &VertexSet::new([2]),
        1,
        &int(0),
        &ProbeConfig::default(),
    )
    .unwrap();
    assert_eq!(v, serde_json::to_value(&r).unwrap());
    assert_eq!(v["probes"].as_array().unwrap().len(), 20);
}

#[test]
fn search_matches_library_and_ignores_workers() {
    let path = fixture(4);
    let file = path.to_str().unwrap();
    let v = json(&["search", "--q", "1", file]);
    let mut corpus = Corpus::default();
    corpus.add_file(&path, 10).unwrap().unwrap();
    let report = find_pairs(&corpus, &int(1), &SearchOptions::default()).unwrap();
    assert_eq!(v, serde_json::to_value(&report).unwrap());
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);

    let six = fixture(6);
    let serial = cospectral(&["search", "--q", "0", six.to_str().unwrap()]);
    let parallel = Command::new(env!("CARGO_BIN_EXE_cospectral"))
        .args(["search", "--q", "0", six.to_str().unwrap()])
        .env(WORKERS_ENV, "3")
        .output()
        .unwrap();
    assert_eq!(parallel.status.code(), Some(EXIT_OK));
    assert_eq!(serial.stdout, parallel.stdout);
    assert!(stdout(&serial).contains("5 cospectral pairs"));
}

#[test]
fn search_reports_bad_lines() {
    let dir = std::env::temp_dir().join(format!("cospectral-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mixed.g6");
    std::fs::write(&path, "Cs\nnot-a-graph\nCw\n").unwrap();
    let v = json(&["search", "--q", "1", path.to_str().unwrap()]);
    assert_eq!(v["skipped"][0]["line"], 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fuzz_is_deterministic() {
    let args = [
        "--format",
        "json",
        "fuzz-distance",
        "--seed",
        "5",
        "--count",
        "60",
    ];
    let a = cospectral(&args);
    let b = cospectral(&args);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let config = FuzzConfig {
        seed: 5,
        count: 60,
        ..FuzzConfig::default()
    };
    assert_eq!(
        v,
        serde_json::to_value(distance_fuzz(&config).unwrap()).unwrap()
    );
}

#[test]
fn counterexample_exit_status() {
    let mut report = distance_fuzz(&FuzzConfig {
        count: 5,
        ..FuzzConfig::default()
    })
    .unwrap();
    assert_eq!(fuzz_exit_status(&report), EXIT_OK);
    let sets = SetPair::new(&VertexSet::empty(), &VertexSet::empty());
    report
        .counterexample_candidates
        .push(CounterexampleCandidate {
            g1: "Bw".into(),
            g2: "Bw".into(),
            sets: sets.clone(),
            complement: sets,
            failing_probe: "K2".into(),
            polys: [Polynomial::one(), Polynomial::x()],
        });
    assert_eq!(fuzz_exit_status(&report), EXIT_COUNTEREXAMPLE);
}

#[test]
fn demo_matches_library() {
    let v = json(&["demo-normalized"]);
    let d = normalized_demo().unwrap();
    assert_eq!(polys(&v["before"]), d.before.to_vec());
    assert_eq!(polys(&v["after"]), d.after.to_vec());
    assert_eq!(v["cospectral_before"], true);
    assert_eq!(v["cospectral_after"], false);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["bogus"],
        vec!["charpoly", "--graph6", "Bg"],
        vec![
            "charpoly", "--matrix", "distance", "--q", "0", "--graph6", "Bg",
        ],
        vec!["charpoly", "--q", "1.5", "--graph6", "Bg"],
        vec!["charpoly", "--q", "1/-2", "--graph6", "Bg"],
        vec!["charpoly", "--q", "0"],
        vec!["families", "--q", "0", "--graph6", "Bg", "--set", "a"],
        vec!["fuzz-distance", "--max-order", "11"],
    ] {
        let out = cospectral(&args);
        assert_eq!(out.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(env!("CARGO_BIN_EXE_cospectral"))
        .args(["search", "--q", "0", fixture(3).to_str().unwrap()])
        .env(WORKERS_ENV, "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn data_errors() {
    for args in [
        vec!["charpoly", "--q", "0", "--graph6", "B~~"],
        vec![
            "charpoly",
            "--q",
            "0",
            "--json",
            r#"{"n":2,"edges":[[0,0]]}"#,
        ],
        vec!["families", "--q", "0", "--graph6", "Bg", "--set", "3"],
        vec!["charpoly", "--matrix", "distance", "--graph6", "B?"],
        vec!["charpoly", "--q", "0", "--file", "/nonexistent/graph.g6"],
        vec!["search", "--q", "0", "/nonexistent/corpus.g6"],
    ] {
        let out = cospectral(&args);
        assert_eq!(out.status.code(), Some(EXIT_DATA), "{args:?}");
        assert!(stdout(&out).is_empty());
    }
}
