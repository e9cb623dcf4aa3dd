use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_planegroups")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8 report"))
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).expect("report is JSON"))
}

#[test]
fn reproduce_thm_main_k2() {
    let (code, r) = report(&["reproduce", "thm-main-k2"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["order"], "3^6");
    assert_eq!(res["t1"]["system_type"], serde_json::json!([3, 3, 3, 3]));
    assert_eq!(res["t2"]["system_type"], serde_json::json!([3, 3, 3, 3]));
    assert_eq!(res["disjoint"], true);
    assert_eq!(res["invariants"]["genus1"], 244);
    assert_eq!(res["invariants"]["chi"], "81");
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn reproduce_heawood_has_witness() {
    let (code, r) = report(&["reproduce", "heawood"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["witness"].as_array().unwrap().len(), 14);
    assert_eq!(r["result"]["witness_verified"], true);
}

#[test]
fn missing_external_data_exits_4() {
    let (code, r) = report(&["pquotient", "--group", "G2", "--prime", "2", "--class", "2"]);
    assert_eq!(code, 4);
    assert_eq!(r["ok"], false);
}

#[test]
fn external_data_from_data_dir() {
    let dir = std::env::temp_dir().join(format!("planegroups-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("G2.txt"), "gens: a b\nrel: a^2\nrel: b^2\nrel: a^-1*b^-1*a*b\n").unwrap();
    let (code, r) = report(&["--data-dir", dir.to_str().unwrap(), "pquotient", "--group", "G2", "--prime", "2", "--class", "2"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 0);
    assert_eq!(r["result"]["order"], "2^2");
}

#[test]
fn failed_verification_exits_2() {
    // the k = 3 tuples do not meet the stated types
    let (code, r) = report(&["ramify", "verify", "--family", "thm-main", "--class", "3"]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["order"], "3^8");
}

#[test]
fn dense_cap_refusal_exits_3() {
    let (code, _) = report(&["--dense-cap", "10", "ramify", "search", "--group", "Z7xZ7", "-p", "7", "--type-a", "7,7,7", "--type-b", "7,7,7"]);
    assert_eq!(code, 3);
}

#[test]
fn reports_are_byte_identical() {
    for args in [&["reproduce", "beauville-7"][..], &["ramify", "search", "--group", "Z7xZ7", "-p", "7", "--type-a", "7,7,7", "--type-b", "7,7,7", "--strategy", "random", "--samples", "200", "--seed", "5"]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a, b);
    }
}

#[test]
fn presentation_file_round_trip() {
    let path = std::env::temp_dir().join(format!("planegroups-g0-{}.txt", std::process::id()));
    let (_, shown) = report(&["present", "show", "--group", "G0"]);
    std::fs::write(&path, shown["result"]["text"].as_str().unwrap()).unwrap();
    let (code, r) = report(&["subgroup", "abelianize", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(r["result"]["torsion"], serde_json::json!([2, 2, 6]));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, _) = report(&["surface", "--order", "16", "--type-a", "2,2,2,2", "--type-b", "4,4,4"]);
    assert_eq!(code, 2);
}
