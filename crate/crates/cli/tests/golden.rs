//! Exit-code contract over the fixture corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn flexcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flexcolor")).args(args).env_remove("FLEXCOLOR_WORKERS").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

const MAXSAT: &[(&str, i32)] = &[
    ("witness_k2n_t2_n2.json", 0),
    ("witness_k2n_t2_n3.json", 0),
    ("witness_k3n_t3_flex_n7.json", 0),
    ("witness_k3n_t3_flex_n8.json", 0),
    ("witness_k37_32.json", 1),
    ("witness_k45_32.json", 1),
    ("witness_k46_23.json", 1),
    ("singletons_equal.json", 1),
    ("triangle_full_request.json", 0),
    ("k22_no_request.json", 0),
    ("k23_2lists_full_request.json", 0),
    ("k23_3lists_full_request.json", 0),
    ("k44_4lists_full_request.json", 0),
    ("k55_5lists_full_request.json", 0),
    ("k1111_4lists_full_request.json", 0),
    ("k123_4lists_full_request.json", 0),
    ("malformed.json", 2),
    ("empty_list.json", 2),
    ("duplicate_color.json", 2),
    ("request_color_not_in_list.json", 2),
    ("unknown_field.json", 2),
    ("wrong_part_count.json", 2),
    ("zero_part.json", 2),
    ("entry_k37_32.json", 2),
];

#[test]
fn maxsat_exit_codes() {
    let corpus = std::fs::read_dir(fixture("")).unwrap().count();
    assert!(corpus >= 20, "fixture corpus has {corpus} files");
    for &(file, code) in MAXSAT {
        let out = flexcolor(&["maxsat", "--instance", &fixture(file)]);
        assert_eq!(out.status.code(), Some(code), "{file}: {}", String::from_utf8_lossy(&out.stderr));
        if code == 2 {
            assert!(out.stdout.is_empty());
            assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{file}");
        } else {
            let v = json(&out);
            assert_eq!(v["tool"], "flexcolor");
            assert_eq!(v["catalog_hash"].as_str().unwrap().len(), 64);
        }
    }
}

#[test]
fn maxsat_values() {
    let v = json(&flexcolor(&["maxsat", "--instance", &fixture("witness_k2n_t2_n3.json")]));
    assert_eq!(v["result"]["best"], 0);
    let v = json(&flexcolor(&["maxsat", "--instance", &fixture("witness_k3n_t3_flex_n8.json")]));
    assert_eq!(v["result"]["best"], 1);
    assert_eq!(v["result"]["domain_size"], 3);
    let v = json(&flexcolor(&["maxsat", "--instance", &fixture("triangle_full_request.json")]));
    assert_eq!(v["result"]["best"], 1);
}

#[test]
fn diagnostics_name_the_location() {
    let err = |f: &str| String::from_utf8(flexcolor(&["maxsat", "--instance", &fixture(f)]).stderr).unwrap();
    assert!(err("malformed.json").contains("line 2"));
    assert!(err("empty_list.json").contains("lists[1][1]"));
    assert!(err("request_color_not_in_list.json").contains("request[0]"));
}

#[test]
fn construct_exit_codes() {
    let cases: &[(&str, &str, i32)] = &[
        ("k23_3lists_full_request.json", "thm1", 0),
        ("k1111_4lists_full_request.json", "thm1", 0),
        ("k123_4lists_full_request.json", "thm1", 0),
        ("k44_4lists_full_request.json", "knn", 0),
        ("k55_5lists_full_request.json", "knn", 0),
        ("k23_2lists_full_request.json", "thm1", 2),
        ("k23_3lists_full_request.json", "knn", 2),
        ("k22_no_request.json", "thm1", 2),
        ("malformed.json", "thm1", 2),
    ];
    for &(file, alg, code) in cases {
        let out = flexcolor(&["construct", "--instance", &fixture(file), "--algorithm", alg]);
        assert_eq!(out.status.code(), Some(code), "{file} {alg}: {}", String::from_utf8_lossy(&out.stderr));
        if code == 0 {
            let r = &json(&out)["result"];
            let sat = r["satisfied"].as_u64().unwrap();
            assert!(sat >= r["guarantee"].as_u64().unwrap());
            assert!(sat <= r["exact_best"].as_u64().unwrap());
        }
    }
    let r = &json(&flexcolor(&["construct", "--instance", &fixture("k23_3lists_full_request.json"), "--algorithm", "thm1"]))["result"];
    assert!(r["satisfied"].as_u64().unwrap() >= 3);
    let r = &json(&flexcolor(&["construct", "--instance", &fixture("k44_4lists_full_request.json"), "--algorithm", "knn"]))["result"];
    assert!(r["satisfied"].as_u64().unwrap() >= 4);
}

#[test]
fn choosable_exit_codes() {
    let run = |args: &[&str]| flexcolor(&[&["choosable"], args].concat());
    let out = run(&["--sizes", "3,6", "--list-sizes", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["decision"], "choosable");
    let out = run(&["--sizes", "4,5", "--list-sizes", "3,2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["--sizes", "2,9", "--list-sizes", "3,2", "--mode", "shortcut"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["method"], "precolor-rule");
    let out = run(&["--sizes", "4,4", "--list-sizes", "2,2", "--mode", "shortcut"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--sizes", "20,20", "--list-sizes", "3,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-large"));
}

#[test]
fn choosable_timeout_exits_3() {
    let out = flexcolor(&["choosable", "--sizes", "8,8", "--list-sizes", "3,3", "--mode", "exhaustive", "--budget", "0.05"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["result"]["decision"], "timeout");
}

#[test]
fn witness_out_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cx.json");
    let out = flexcolor(&["choosable", "--sizes", "3,7", "--list-sizes", "3,2", "--witness-out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let again = flexcolor(&["maxsat", "--instance", path.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(1), "the written counterexample must be uncolorable");
}

#[test]
fn hall_values() {
    let rho = |s: &str| json(&flexcolor(&["hall", "--sizes", s]))["result"].clone();
    assert_eq!(rho("3,7")["rho"], "2/1");
    assert_eq!(rho("1,1,1")["rho"], "3/1");
    let r = rho("2,2,5");
    assert_eq!((r["rho"].as_str(), r["agrees"].as_bool()), (Some("3/1"), Some(true)));
}

#[test]
fn verify_entries() {
    let out = flexcolor(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["entries"], 9);
    let out = flexcolor(&["verify", "--entry", &fixture("entry_k37_32.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = flexcolor(&["verify", "--entry", &fixture("entry_k37_32_tampered.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["result"]["rows"][0]["diff"].as_str().unwrap().contains("lists[1][0]"));
    assert_eq!(flexcolor(&["verify", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn bounds_csv_columns() {
    let out = flexcolor(&["bounds", "--max-m", "3", "--max-n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("m,n,t,lower,upper,lower_cert,upper_cert"));
    assert!(text.contains("\n2,3,2,0/1,0/1,choosability,witness:k2n_t2_n3\n"));
    assert!(text.contains("\n3,7,3,1/3,1/3,literature:one-third,witness:k3n_t3_flex_n7\n"));
}

#[test]
fn sample_reports() {
    let out = flexcolor(&["sample", "--sizes", "2,3", "--k", "4", "--epsilon", "51/100", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["mode"], "counterexample-found");
    let out = flexcolor(&["sample", "--sizes", "2,3", "--k", "4", "--epsilon", "1/2", "--trials", "500", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["result"]["explored"], 500);
}
