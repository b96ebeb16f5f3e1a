use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn facethue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facethue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn color_wheel_is_verified() {
    let o = facethue(&[
        "color",
        "--graph",
        "wheel:10",
        "--lists",
        "uniform:12",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("V=11, E=20, F=11"));
    assert!(s.contains("status      completed"));
    assert!(s.contains("verified    yes"));
}

#[test]
fn single_edge_in_one_step() {
    let o = facethue(&[
        "color",
        "--graph",
        "path:2",
        "--lists",
        "uniform:12",
        "--seed",
        "1",
        "--max-steps",
        "1",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn two_colours_exhaust_on_a_grid() {
    let o = facethue(&[
        "color",
        "--graph",
        "grid:3x3",
        "--lists",
        "uniform:2",
        "--seed",
        "1",
        "--max-steps",
        "1000",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("exhausted"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&facethue(&["color"])), 1);
    assert_eq!(code(&facethue(&["color", "--graph", "torus:3"])), 1);
    assert_eq!(
        code(&facethue(&[
            "color",
            "--graph",
            "path:3",
            "--lists",
            "uniform:0"
        ])),
        1
    );
    assert_eq!(code(&facethue(&["frobnicate"])), 1);
    assert_eq!(code(&facethue(&["--help"])), 0);
}

#[test]
fn artifacts_and_offline_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = facethue(&[
        "color",
        "--graph",
        "grid:4x4",
        "--lists",
        "random:12:5",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["graph.json", "trace.txt", "report.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "completed");
    assert_eq!(report["summary"]["edges"], 24);
    assert_eq!(report["verification"]["valid"], true);
    assert_eq!(report["seed"], 3);

    // the written document carries the lists, so replay needs nothing else
    let graph = out.join("graph.json");
    let trace = out.join("trace.txt");
    let args = |cmd| {
        vec![
            cmd,
            "--graph",
            graph.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
        ]
    };
    let o = facethue(&args("replay"));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("replay ok"));
    assert_eq!(code(&facethue(&args("verify"))), 0);
    assert_eq!(code(&facethue(&args("replay-check"))), 0);

    corrupt(&trace);
    let o = facethue(&args("replay"));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("corrupt record"), "{}", stderr(&o));
}

fn corrupt(trace: &Path) {
    let text = fs::read_to_string(trace).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let i = lines.iter().position(|l| l.ends_with(" null")).unwrap();
    lines[i] = lines[i].replace(" null", " 9,17,2,2");
    fs::write(trace, lines.join("\n") + "\n").unwrap();
}

#[test]
fn generated_documents_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("c5.json");
    let o = facethue(&[
        "generate",
        "--graph",
        "cycle:5",
        "--out",
        doc.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = facethue(&["color", "--graph", doc.to_str().unwrap(), "--seed", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("V=5, E=5, F=2"));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"vertices": 2, "edges": [[1,2],[2,1]], "rotations": [[1,2],[1,2]]}"#,
    )
    .unwrap();
    let o = facethue(&["color", "--graph", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("parallel"), "{}", stderr(&o));
}

#[test]
fn replay_check_passes() {
    let o = facethue(&[
        "replay-check",
        "--graph",
        "grid:4x4",
        "--trials",
        "100",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("trials passed 100/100"));
    let o = facethue(&["replay-check", "--graph", "path:2", "--trials", "1"]);
    assert!(stdout(&o).contains("trials passed 1/1"));
}

#[test]
fn analyze_sections() {
    let o = facethue(&["analyze", "--n-max", "18", "--table"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let rows: Vec<Vec<&str>> = s
        .lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(rows.len(), 18);
    for r in &rows {
        assert_eq!(r[1], r[2]);
        assert_eq!(r[1], r[3]);
    }

    let o = facethue(&["analyze", "--roots"]);
    let s = stdout(&o);
    let l0 = s.lines().find(|l| l.starts_with("lambda0")).unwrap();
    let v: f64 = l0.split('\t').nth(1).unwrap().parse().unwrap();
    assert!((v - 3.383).abs() < 5e-4);

    let o = facethue(&["analyze", "--threshold", "--m", "5", "--k", "11"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("KTooSmall"));
    let o = facethue(&["analyze", "--threshold", "--m", "5"]);
    assert!(stdout(&o).contains("threshold_steps\t279"));
}

#[test]
fn bench_table() {
    let o = facethue(&[
        "bench",
        "--graphs",
        "wheel:20",
        "--trials",
        "30",
        "--steps",
        "m-1,m,2m,4m,8m",
    ]);
    assert_eq!(code(&o), 0);
    let fractions: Vec<f64> = stdout(&o)
        .lines()
        .skip(2)
        .map(|l| l.split('\t').next_back().unwrap().parse().unwrap())
        .collect();
    assert_eq!(fractions.len(), 5);
    assert_eq!(fractions[0], 1.0);
    assert!(fractions.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(fractions[4], 0.0);
    assert_eq!(
        code(&facethue(&[
            "bench", "--graphs", "wheel:20", "--trials", "5"
        ])),
        1
    );
}
