use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pmbisect_cli::output::{fmt_sig, HUMAN_DIGITS};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn pmbisect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmbisect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.trim().strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in {out}"))
        .trim()
}

#[test]
fn example1_solve_with_trace_and_boxes() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let boxes = dir.path().join("boxes.jsonl");
    let o = pmbisect(&[
        "solve",
        &config("example1.toml"),
        "--trace",
        trace.to_str().unwrap(),
        "--boxes",
        boxes.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(field(&out, "status:"), "converged");
    assert_eq!(field(&out, "iterations:"), "50");
    assert_eq!(field(&out, "preconditionings:"), "0");
    assert_eq!(field(&out, "y ="), "0.999999999999999");

    let mut rdr = csv::Reader::from_path(&trace).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header.join(","),
        "k,x_lo,x_hi,y_lo,y_hi,c_x,c_y,residual,subcube,preconditioned"
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 50);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), i + 1);
        let h = 0.5f64.powi(i as i32 + 1);
        assert_eq!(row[5].parse::<f64>().unwrap(), h);
        assert_eq!(row[6].parse::<f64>().unwrap(), 1.0 - h);
        assert_eq!(&row[9], "false");
    }
    let last = rows.last().unwrap();
    assert_eq!(&last[8], "");
    assert!(rows[..49].iter().all(|r| &r[8] == "2"));
    assert_eq!(
        fmt_sig(last[5].parse().unwrap(), HUMAN_DIGITS),
        field(&out, "x =")
    );
    assert_eq!(
        fmt_sig(last[6].parse().unwrap(), HUMAN_DIGITS),
        field(&out, "y =")
    );
    assert_eq!(
        fmt_sig(last[7].parse().unwrap(), HUMAN_DIGITS),
        field(&out, "residual:")
    );

    let text = std::fs::read_to_string(&boxes).unwrap();
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 50);
    let dims = |v: &serde_json::Value| -> Vec<(f64, f64)> {
        v["box"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| (d[0].as_f64().unwrap(), d[1].as_f64().unwrap()))
            .collect()
    };
    assert_eq!(dims(&records[0]), vec![(0.0, 1.0), (0.0, 1.0)]);
    for w in records.windows(2) {
        let (outer, inner) = (dims(&w[0]), dims(&w[1]));
        assert!(outer
            .iter()
            .zip(&inner)
            .all(|(a, b)| a.0 <= b.0 && b.1 <= a.1));
        assert_eq!(w[1]["k"].as_u64().unwrap(), w[0]["k"].as_u64().unwrap() + 1);
    }
}

#[test]
fn f6_solve() {
    let o = pmbisect(&["solve", &config("f6.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let x: f64 = field(&out, "x =").parse().unwrap();
    let y: f64 = field(&out, "y =").parse().unwrap();
    assert!((x - 0.510030862987151).abs() < 1e-12);
    assert!((y - 0.048996913701194).abs() < 1e-12);
}

#[test]
fn stalled_run_trace_matches_iterations() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    let o = pmbisect(&[
        "solve",
        &config("f1.toml"),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert_eq!(field(&out, "status:"), "stalled");
    let iterations: usize = field(&out, "iterations:").parse().unwrap();
    let rows: Vec<csv::StringRecord> = csv::Reader::from_path(&trace)
        .unwrap()
        .records()
        .map(Result::unwrap)
        .collect();
    assert_eq!(rows.len(), iterations);
    assert_eq!(
        fmt_sig(rows.last().unwrap()[5].parse().unwrap(), HUMAN_DIGITS),
        field(&out, "x =")
    );
    assert!(rows.iter().any(|r| &r[9] == "true"));
}

#[test]
fn flag_overrides() {
    let o = pmbisect(&[
        "solve",
        &config("example1.toml"),
        "--delta",
        "1e-2",
        "--norm",
        "inf",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "iterations:"), "7");
    assert_eq!(field(&out, "x ="), "0.0078125");

    let o = pmbisect(&[
        "solve",
        &config("example1.toml"),
        "--delta",
        "1e-5",
        "--derivative-mode",
        "paper_fd",
        "--subdivisions",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "iterations:"), "17");
}

#[test]
fn quiet_prints_nothing() {
    let o = pmbisect(&["solve", &config("example1.toml"), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn exit_codes_for_other_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(
        &dir,
        "bad.toml",
        "variables = [\"x\", \"y\"]\nfunctions = [\"x-5\", \"y\"]\nbox = [[0, 1], [0, 1]]\n",
    );
    let o = pmbisect(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "status:"), "bad_initial_box");
    assert_eq!(field(&stdout(&o), "iterations:"), "0");

    let capped = std::fs::read_to_string(configs().join("example1.toml"))
        .unwrap()
        .replace("max_iterations = 500", "max_iterations = 5");
    let capped = write_config(&dir, "cap.toml", &capped);
    let o = pmbisect(&["solve", &capped]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(field(&stdout(&o), "status:"), "iteration_cap");
    assert_eq!(field(&stdout(&o), "iterations:"), "5");
}

#[test]
fn config_errors_exit_one_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "variables = [\"x\", \"y\"]\nfunctions = [\"x\", \"y\"]\nbox = [[0, 1], [0, 1], [0, 1]]\n",
            "box",
        ),
        (
            "variables = [\"x\", \"y\"]\nfunctions = [\"x\", \"y+\"]\nbox = [[0, 1], [0, 1]]\n",
            "functions[1]",
        ),
        (
            "variables = [\"x\", \"y\"]\nfunctions = [\"x\", \"y\"]\nbox = [[0, 1], [0, 1]]\nnorm = \"l2\"\n",
            "norm",
        ),
        ("variables = [\"x\"]\nfunctions = [\"x\"]\n", "box"),
    ];
    for (i, (body, name)) in cases.iter().enumerate() {
        let path = write_config(&dir, &format!("c{i}.toml"), body);
        let o = pmbisect(&["solve", &path]);
        assert_eq!(o.status.code(), Some(1), "{body}");
        assert!(stderr(&o).contains(name), "{name}: {}", stderr(&o));
    }

    let o = pmbisect(&["solve", "/nonexistent/config.toml"]);
    assert_eq!(o.status.code(), Some(1));
    let o = pmbisect(&["solve", &config("f1.toml"), "--norm", "max"]);
    assert_eq!(o.status.code(), Some(1));
    let o = pmbisect(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_box() {
    for (name, code) in [("example1.toml", 0), ("f4.toml", 0)] {
        let o = pmbisect(&["check-box", &config(name)]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        assert!(stdout(&o).contains("sign condition holds"));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(
        &dir,
        "bad.toml",
        "variables = [\"x\", \"y\"]\nfunctions = [\"x-5\", \"y\"]\nbox = [[0, 1], [0, 1]]\n",
    );
    let o = pmbisect(&["check-box", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("sign condition fails"));
    let f1 = out.lines().find(|l| l.starts_with("f1")).unwrap();
    assert_eq!(
        f1.split_whitespace().collect::<Vec<_>>(),
        ["f1", "x", "-", "-", "no"]
    );
    let f2 = out.lines().find(|l| l.starts_with("f2")).unwrap();
    assert_eq!(
        f2.split_whitespace().collect::<Vec<_>>(),
        ["f2", "y", "0", "+", "yes"]
    );
}

#[test]
fn eval_box() {
    let o = pmbisect(&[
        "eval-box",
        &config("example1.toml"),
        "--component",
        "1",
        "--extension",
        "natural",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[-1, 1]");

    let dir = tempfile::tempdir().unwrap();
    let one = write_config(
        &dir,
        "one.toml",
        "variables = [\"x\"]\nfunctions = [\"x*(1-x)\"]\nbox = [[0, 1]]\n",
    );
    let run = |ext: &str, n: &str| {
        let o = pmbisect(&[
            "eval-box",
            &one,
            "--component",
            "1",
            "--extension",
            ext,
            "-N",
            n,
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o).trim().to_string()
    };
    assert_eq!(run("affine", "1"), "[0, 0.5]");
    assert_eq!(run("natural", "1"), "[0, 1]");
    assert_eq!(run("affine", "2"), "[0, 0.375]");

    let o = pmbisect(&["eval-box", &one, "--component", "2", "--extension", "mean"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("component"));
}
