use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_equitiler"));
    c.env_remove("EQUITILER_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";

#[test]
fn decide_examples() {
    let d = tempfile::tempdir().unwrap();
    let k4 = write(d.path(), "k4.txt", K4);
    let o = run(&["decide", s(&k4), "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["kind"], "clique");
    assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 4);

    let c5 = write(d.path(), "c5.txt", C5);
    let o = run(&["decide", s(&c5), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut sizes: Vec<usize> = v["certificate"]["coloring"]["classes"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2, 2]);

    let k33 = d.path().join("k33.txt");
    let o = run(&["gen", "biclique", "--k", "3", "--m", "3", "--out", s(&k33)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["decide", s(&k33), "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["kind"], "biclique");
    assert_eq!(v["witness"]["left"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_examples() {
    let d = tempfile::tempdir().unwrap();
    let k6 = d.path().join("k6.txt");
    std::fs::write(&k6, {
        let mut t = String::from("6 15\n");
        for u in 0..6 {
            for v in u + 1..6 {
                t.push_str(&format!("{u} {v}\n"));
            }
        }
        t
    })
    .unwrap();
    let cert = d.path().join("k6.json");
    assert_eq!(run(&["factor", s(&k6), "--r", "3", "--out", s(&cert)]).status.code(), Some(0));
    assert_eq!(run(&["verify", s(&k6), s(&cert)]).status.code(), Some(0));

    let c6 = write(d.path(), "c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let o = run(&["decide", s(&c6), "--k", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();

    let mut bad = v.clone();
    bad["certificate"]["coloring"]["classes"] = serde_json::json!([[0, 1], [2, 4], [3, 5]]);
    let p = write(d.path(), "bad.json", &bad.to_string());
    let o = run(&["verify", s(&c6), s(&p)]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class independence"), "{}", stdout(&o));

    let mut bad = v.clone();
    bad["certificate"]["coloring"]["classes"] = serde_json::json!([[0, 2, 4], [1, 3, 5], []]);
    let p = write(d.path(), "unbalanced.json", &bad.to_string());
    let o = run(&["verify", s(&c6), s(&p)]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equitability"), "{}", stdout(&o));

    let other = write(d.path(), "c5.txt", C5);
    let p = write(d.path(), "good.json", &v.to_string());
    let o = run(&["verify", s(&other), s(&p)]);
    assert!(stdout(&o).contains("graph"), "{}", stdout(&o));
}

#[test]
fn gen_examples() {
    let o = run(&["gen", "ex2", "--n", "9", "--r", "3", "--s", "1"]);
    let text = stdout(&o);
    assert!(text.starts_with("9 "), "{text}");
    let o = run(&["gen", "random-ore", "--n", "30", "--r", "3", "--alpha", "0.02", "--seed", "7"]);
    let a = stdout(&o);
    let b = stdout(&run(&["gen", "random-ore", "--n", "30", "--r", "3", "--alpha", "0.02", "--seed", "7"]));
    assert_eq!(a, b);
    assert_eq!(run(&["gen", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "ex2", "--n", "9", "--r", "3", "--s", "2"]).status.code(), Some(3));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "bad.txt", "3 2\n0 1\n1 1\n");
    let o = run(&["decide", s(&p), "--k", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let p = write(d.path(), "g.col", "c x\np edge 3 1\ne 1 4\n");
    let o = run(&["decide", s(&p), "--k", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn sweep_small_labeled() {
    let o = run(&["sweep", "--n-max", "5", "--mode", "dichotomy", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"]["anomalies"], 0);
    let o = run(&["bench", "--n-max", "4"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn decide_verify_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in 0..1000 {
        let n = 1 + (next() % 12) as usize;
        let p = (next() % 100) as f64 / 100.0;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if ((next() % 1000) as f64) < p * 1000.0 {
                    edges.push((u, v));
                }
            }
        }
        let mut text = format!("{n} {}\n", edges.len());
        for (u, v) in &edges {
            text.push_str(&format!("{u} {v}\n"));
        }
        let g = write(d.path(), "g.txt", &text);
        let cert = d.path().join("c.json");
        let k = 1 + (next() % n as u64) as usize;
        let o = run(&["decide", s(&g), "--k", &k.to_string(), "--out", s(&cert)]);
        assert!(matches!(o.status.code(), Some(0 | 1)), "run {i}: {:?}", o);
        let first = std::fs::read_to_string(&cert).unwrap();
        let o = run(&["verify", s(&g), s(&cert)]);
        assert_eq!(o.status.code(), Some(0), "run {i}: {}", stdout(&o));
        if i % 100 == 0 {
            run(&["decide", s(&g), "--k", &k.to_string(), "--out", s(&cert)]);
            assert_eq!(std::fs::read_to_string(&cert).unwrap(), first);
        }
    }
}
