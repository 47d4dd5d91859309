//! End-to-end checks of the command-line surface: output shapes, exit
//! codes, and determinism.

use std::process::{Command, Output};

fn bitpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bitpath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = bitpath(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    bitpath(args).status.code().expect("exit code")
}

#[test]
fn f_values_and_methods() {
    assert_eq!(stdout_of(&["f", "473"]).trim(), "13");
    assert_eq!(stdout_of(&["f", "[3,2,0]1", "--method", "formula"]).trim(), "13");
    assert_eq!(stdout_of(&["f", "0"]).trim(), "0");
    assert_eq!(stdout_of(&["f", "69632", "--method", "canonical"]).trim(), "83");
    assert_eq!(stdout_of(&["f", "473", "--method", "oracle"]).trim(), "13");
    assert_eq!(
        stdout_of(&["f", "473", "--method", "all"]).trim(),
        "oracle=13 canonical=13 formula=13"
    );
    assert_eq!(stdout_of(&["f", "473", "--radix", "16"]).trim(), "d");
}

#[test]
fn g_and_steenrod() {
    assert_eq!(stdout_of(&["g", "19"]).trim(), "5");
    assert_eq!(stdout_of(&["steenrod", "19"]).trim(), "6");
    assert_eq!(stdout_of(&["steenrod", "0"]).trim(), "1");
}

#[test]
fn class_report() {
    let out = stdout_of(&["class", "473"]);
    for line in [
        "n: 473",
        "class: 236",
        "bracket: [3,2,0]1",
        "tail: 1",
        "dimension: 3",
        "S: 13",
        "S': 5",
        "vakil: no",
    ] {
        assert!(out.contains(line), "missing {line:?} in {out}");
    }
    let out = stdout_of(&["class", "69632"]);
    assert!(out.contains("vakil: yes, pair (11, 17)"), "{out}");
    let out = stdout_of(&["class", "7"]);
    assert!(out.contains("bracket: [0]3"), "{out}");
    assert!(out.contains("dimension: 0"), "{out}");
}

#[test]
fn path_listings() {
    let out = stdout_of(&["path", "473", "--format", "int"]);
    assert!(out.starts_with("473 -> 469 -> 467 -> "), "{out}");
    assert!(out.trim_end().ends_with("-> 127"), "{out}");
    assert_eq!(out.matches(" -> ").count(), 13);

    let out = stdout_of(&["path", "236", "--format", "bracket"]);
    assert_eq!(
        out.trim(),
        "[3,2,0] -> [3,1,1] -> [3,1,0] -> [3,0,1] -> [3,0,0] -> [2,1,0] -> [2,0,1] -> \
         [2,0,0] -> [1,1,0] -> [1,0,1] -> [1,0,0] -> [2] -> [1] -> [0]"
    );

    let out = stdout_of(&["path", "236", "--reduced", "--format", "int"]);
    assert_eq!(
        out.trim(),
        "236 -> 234 -> 116 -> 114 -> 56 -> 52 -> 50 -> 24 -> 20 -> 18 -> 8 -> 6 -> 2 -> 0"
    );

    assert_eq!(stdout_of(&["path", "7"]).trim(), "7");

    let out = stdout_of(&["path", "10", "--format", "json"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["from"], "10");
    assert_eq!(first["s"], 0);
}

#[test]
fn graph_exports() {
    let out = stdout_of(&["graph", "10", "--labels", "binary"]);
    assert!(out.contains("\"1010\" -> \"1001\";"), "{out}");
    assert!(out.contains("\"1010\" -> \"110\";"), "{out}");
    assert_eq!(out.matches(" -> ").count(), 6);

    let out = stdout_of(&["graph", "10", "--reduced", "--labels", "bracket"]);
    for label in ["[1,1]", "[2]", "[1,0]", "[1]", "[0]"] {
        assert!(out.contains(&format!("\"{label}\"")), "missing {label} in {out}");
    }

    let out = stdout_of(&["graph", "7"]);
    assert!(out.contains("\"7\";"), "{out}");
    assert!(!out.contains("->"), "{out}");
}

#[test]
fn table_formats() {
    let csv = stdout_of(&["table", "--dim", "16", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "a,k,t_k4,pair_a,pair_k,delta,bracket,skip");
    assert_eq!(
        lines[1],
        "11,16,0,11,16,66,\"[1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]\",false"
    );
    assert_eq!(
        lines[4],
        "13,28,,14,14,,\"[3,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]\",true"
    );

    let json: serde_json::Value =
        serde_json::from_str(&stdout_of(&["table", "--dim", "16", "--format", "json"])).unwrap();
    assert_eq!(json["dimension"], 16);
    assert_eq!(json["rows"][1]["delta"], 67);
    assert_eq!(json["rows"][3]["skip"], true);

    let pretty = stdout_of(&["table", "--dim", "53"]);
    assert!(pretty.contains("1104"), "{pretty}");
    assert!(pretty.contains("(51,62), skip"), "{pretty}");
}

#[test]
fn vakil_reports() {
    let out = stdout_of(&["vakil", "69632"]);
    assert!(out.contains("vakil: yes"), "{out}");
    assert!(out.contains("pair: (11, 17)"), "{out}");
    assert!(out.contains("f: 83"), "{out}");

    let out = stdout_of(&["vakil", "473"]);
    assert!(out.contains("vakil: no"), "{out}");
    assert!(out.contains("first_vakil: [2,0,0]"), "{out}");
    assert!(out.contains("steps: 7"), "{out}");
    assert!(out.contains("delta: 0"), "{out}");
}

#[test]
fn freq_table() {
    let out = stdout_of(&["freq", "--levels", "15"]);
    let values: Vec<u64> = out
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values, vec![2, 2, 4, 4, 4, 8, 8, 8, 8, 16, 16, 16, 16, 16, 32]);
}

#[test]
fn verify_runs_and_is_deterministic() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("bitpath-verify-j1.json");
    let p8 = dir.join("bitpath-verify-j8.json");
    let out = stdout_of(&[
        "verify",
        "--max",
        "1024",
        "--jobs",
        "1",
        "--out",
        p1.to_str().unwrap(),
    ]);
    assert!(out.contains("0 mismatches"), "{out}");
    stdout_of(&[
        "verify",
        "--max",
        "1024",
        "--jobs",
        "8",
        "--out",
        p8.to_str().unwrap(),
    ]);
    let r1 = std::fs::read(&p1).unwrap();
    let r8 = std::fs::read(&p8).unwrap();
    assert_eq!(r1, r8, "reports differ between job counts");
    let json: serde_json::Value = serde_json::from_slice(&r1).unwrap();
    assert_eq!(json["max"], 1024);
    assert_eq!(json["triples"].as_array().unwrap().len(), 1025);
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p8);
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(exit_code(&["f", "not-a-number"]), 1);
    assert_eq!(exit_code(&["f", "[0,2]"]), 1);
    assert_eq!(exit_code(&["table", "--dim", "4"]), 1);
    assert_eq!(exit_code(&["f", "473", "--radix", "99"]), 1);
    assert_eq!(exit_code(&["no-such-command"]), 1);
    // budget errors
    assert_eq!(exit_code(&["f", "1048576", "--method", "oracle"]), 2);
    assert_eq!(exit_code(&["f", "[20000000,0,0]", "--method", "canonical"]), 2);
    assert_eq!(exit_code(&["verify", "--max", "9999999999"]), 2);
    // success paths
    assert_eq!(exit_code(&["f", "[20000000,0,0]", "--method", "formula"]), 0);
    assert_eq!(exit_code(&["verify", "--max", "20"]), 0);
    assert_eq!(exit_code(&["--help"]), 0);
}

#[test]
fn env_overrides_budgets() {
    let out = Command::new(env!("CARGO_BIN_EXE_bitpath"))
        .args(["f", "473", "--method", "canonical"])
        .env("BITPATH_STEP_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_bitpath"))
        .args(["graph", "473"])
        .env("BITPATH_VERTEX_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
