use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn aplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_matches_golden_file() {
    let o = aplab(&["generate", "--family", "quad-line", "--d", "2", "--window=-5,5", "--radius", "100"]);
    assert_eq!(code(&o), 0);
    let golden = include_str!("golden/quad_line_d2_w5_r100.csv");
    assert_eq!(String::from_utf8(o.stdout).unwrap(), golden);
}

#[test]
fn golden_rows_agree_with_brute_force() {
    // |a + b√2| ≤ 100 and |a − b√2| ≤ 5 force |a| ≤ 52.5 and |b| ≤ 37.2
    let r2 = 2f64.sqrt();
    let mut want = BTreeSet::new();
    for a in -60i64..=60 {
        for b in -45i64..=45 {
            let (x, y) = (a as f64 + b as f64 * r2, a as f64 - b as f64 * r2);
            if x.abs() <= 100.0 && y.abs() <= 5.0 {
                want.insert((a, b));
            }
        }
    }
    let golden = include_str!("golden/quad_line_d2_w5_r100.csv");
    let got: BTreeSet<(i64, i64)> = golden
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('a'))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(got, want);
    assert!(got.contains(&(0, 0)) && got.contains(&(1, 1)));
}

#[test]
fn ag3_on_integers_passes_with_trivial_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = aplab(&["verify", "--check", "ag3", "--family", "lattice", "--radius", "30", "--r", "0.5", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out);
    assert_eq!(r["witnesses"], serde_json::json!(["0"]));
    assert_eq!(r["failures"], serde_json::json!([]));
}

#[test]
fn ag3_on_visible_points_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = aplab(&["verify", "--check", "ag3", "--family", "visible", "--n", "40", "--out", s(&out)]);
    assert_eq!(code(&o), 2);
    let r = read_json(&out);
    assert_eq!(r["witnesses"]["kind"], "structural");
    assert_eq!(r["witnesses"]["pair"].as_array().unwrap().len(), 2);
    assert!(!r["failures"].as_array().unwrap().is_empty());
}

#[test]
fn budget_overrun_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = aplab(&["distortion", "--n-min", "6", "--n-max", "6", "--budget", "10", "--out", s(&out)]);
    assert_eq!(code(&o), 3);
    assert!(read_json(&out)["failures"][0].as_str().unwrap().contains("budget"));
}

#[test]
fn invalid_configurations_exit_one() {
    assert_eq!(code(&aplab(&["generate", "--family", "quad-line", "--radius", "10"])), 1);
    assert_eq!(code(&aplab(&["generate", "--family", "quad-line", "--window=5,-5", "--radius", "10"])), 1);
    assert_eq!(code(&aplab(&["walk", "--atom", "1,-1,0.5"])), 1);
    assert_eq!(code(&aplab(&["nonsense"])), 1);
    assert_eq!(code(&aplab(&[])), 1);
    assert_eq!(code(&aplab(&["--help"])), 0);
    // a core radius of 10 cannot hold 2ρ = 40
    assert_eq!(code(&aplab(&["patches", "--family", "fish", "--blocks", "2", "--rho", "20"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"seed": 1}"#).unwrap();
    assert_eq!(code(&aplab(&["--config", s(&bad)])), 1);
    let broken = dir.path().join("broken.csv");
    std::fs::write(&broken, "# d: 2\n").unwrap();
    let o = aplab(&["verify", "--check", "delone", "--input", s(&broken)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.csv:"));
}

#[test]
fn walk_is_byte_stable_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    // same paths each time: the report embeds them
    let out = dir.path().join("walk.json");
    let csv = dir.path().join("walk.csv");
    let run = |seed: &str| {
        let o = aplab(&[
            "walk", "--atom", "1,-1,0.5", "--atom=-1,0.2,0.5", "--trials", "50", "--horizon", "30",
            "--seed", seed, "--out", s(&out), "--csv", s(&csv),
        ]);
        assert!(code(&o) == 0 || code(&o) == 2);
        (std::fs::read(&out).unwrap(), std::fs::read(&csv).unwrap())
    };
    let a = run("11");
    let b = run("11");
    let c = run("12");
    assert_eq!(a, b);
    assert_ne!(a.1, c.1);
}

#[test]
fn saved_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let first = dir.path().join("first.json");
    let o = aplab(&[
        "qi", "--mode", "rho", "--family", "quad-line", "--window=-5,5", "--radius", "40",
        "--kradius", "0.7", "--n-max", "5", "--save-config", s(&cfg), "--out", s(&first),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let second = dir.path().join("second.json");
    let o = aplab(&["--config", s(&cfg), "--out", s(&second)]);
    assert_eq!(code(&o), 0);
    let (a, b) = (read_json(&first), read_json(&second));
    assert_eq!(a["result"], b["result"]);
    // the report embeds the resolved configuration
    let saved: Value = read_json(&cfg);
    assert_eq!(a["config"], saved);
    assert_eq!(b["config"]["task"], saved["task"]);
}

#[test]
fn file_input_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("fish.csv");
    assert_eq!(code(&aplab(&["generate", "--family", "fish", "--blocks", "6", "--out", s(&pts)])), 0);
    let out = dir.path().join("r.json");
    let o = aplab(&["verify", "--check", "chain", "--input", s(&pts), "--rho", "3", "--kradius", "4", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out);
    assert_eq!(r["inputProvenance"]["kind"], "fish");
    assert_eq!(r["result"]["packingRadius"], 2.0);
}

#[test]
fn every_subcommand_dispatches() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["patches", "--family", "fish", "--blocks", "8", "--rho", "7"],
        &["hull-freq", "--family", "fish", "--blocks", "10", "--rho", "3", "--avg", "50:20"],
        &["qi", "--mode", "folner", "--family", "lattice", "--dim", "2", "--radius", "20", "--folner-radius", "8"],
        &["distortion", "--n-min", "1", "--n-max", "5"],
        &["cartan", "--source", "word-ball", "--radius", "4"],
        &["cartan", "--t-max", "5", "--steps", "50"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = dir.path().join(format!("{i}.json"));
        let csv = dir.path().join(format!("{i}.csv"));
        let mut v = args.to_vec();
        v.extend(["--out", s(&out), "--csv", s(&csv)]);
        let o = aplab(&v);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(read_json(&out)["check"].as_str().unwrap().starts_with(args[0]));
        assert!(std::fs::read_to_string(&csv).unwrap().lines().count() > 1);
    }
}
