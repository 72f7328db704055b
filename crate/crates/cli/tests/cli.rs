use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn evobench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evobench"))
        .args(args)
        .env_remove("EVOBENCH_THREADS")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn small_run(out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "run",
        "--algorithm",
        "shade",
        "--dim",
        "10",
        "--problems",
        "1,4",
        "--instances",
        "1",
        "--runs",
        "3",
        "--max-fes",
        "2000",
        "--pop-size",
        "20",
        "--seed",
        "42",
        "--record-interval",
        "200",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    evobench(&args)
}

#[test]
fn list_problems_prints_the_registry() {
    let a = evobench(&["list-problems"]);
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().any(|r| r.contains("hybrid_1")) && rows.iter().any(|r| r.contains("hybrid_2")));
    assert!(rows[0].contains("-100") && rows[0].contains("100"));
    assert_eq!(a.stdout, evobench(&["list-problems"]).stdout);
}

#[test]
fn unknown_algorithm_exits_2() {
    let o = evobench(&["run", "--algorithm", "nosuch", "--out", "unused.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("algorithm"));
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn configuration_errors_name_the_flag() {
    let out = tmp("cfg.csv");
    let out = out.to_str().unwrap();
    for (args, flag) in [
        (vec!["--dim", "11"], "--dim"),
        (vec!["--problems", "13"], "--problems"),
        (vec!["--set", "nokey=1"], "--set"),
        (vec!["--runs", "0"], "--runs"),
        (vec!["--pop-size", "2"], "--pop-size"),
    ] {
        let mut full = vec!["run", "--algorithm", "de", "--out", out];
        full.extend(args);
        let o = evobench(&full);
        assert_eq!(o.status.code(), Some(2), "{full:?}");
        assert!(String::from_utf8(o.stderr).unwrap().contains(flag), "{full:?}");
    }
}

#[test]
fn row_count_and_determinism_across_thread_counts() {
    let (a, b, c) = (tmp("det_a.csv"), tmp("det_b.csv"), tmp("det_c.csv"));
    assert!(small_run(&a, &["--threads", "1"]).status.success());
    assert!(small_run(&b, &["--threads", "3"]).status.success());
    assert!(small_run(&c, &["--sequential"]).status.success());
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    assert_eq!(text, fs::read(&c).unwrap());
    let text = String::from_utf8(text).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 3 * 10);
    assert!(text.ends_with('\n') && !text.ends_with("\n\n") && !text.contains('\r'));
}

#[test]
fn thread_count_from_environment() {
    let out = tmp("env.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_evobench"))
        .args(["run", "--algorithm", "pso", "--max-fes", "400", "--pop-size", "20", "--problems", "2"])
        .arg("--out")
        .arg(&out)
        .env("EVOBENCH_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("--threads"));
}

#[test]
fn parameter_trace_and_single_precision() {
    let (out, params) = (tmp("jade.csv"), tmp("jade_params.csv"));
    let o = evobench(&[
        "run",
        "--algorithm",
        "jade",
        "--problems",
        "3",
        "--max-fes",
        "1000",
        "--pop-size",
        "20",
        "--precision",
        "f32",
        "--out",
        out.to_str().unwrap(),
        "--param-out",
        params.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&params).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("problem,instance,run,generation,mu_f,mu_cr"));
    assert_eq!(lines.count(), (1000 - 20) / 20);
}

#[test]
fn analyze_summaries() {
    let path = tmp("finals.csv");
    fs::write(
        &path,
        "suite,problem,instance,dim,run,fes,best_so_far\n\
         s,1,1,10,0,200,5\ns,1,1,10,0,400,1\n\
         s,1,1,10,1,200,4\ns,1,1,10,1,400,3\n\
         s,2,1,10,0,200,7\ns,2,1,10,0,400,7\n",
    )
    .unwrap();
    let o = evobench(&["analyze", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(&row[..3], &["1", "1", "2"]);
    assert_eq!(row[3].parse::<f64>().unwrap(), 2.0);
    assert_eq!(row[5].parse::<f64>().unwrap(), 1.0);
    let single: Vec<&str> = text.lines().nth(2).unwrap().split_whitespace().collect();
    assert_eq!(single[4].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn analyze_errors_carry_line_numbers() {
    let empty = tmp("empty.csv");
    fs::write(&empty, "").unwrap();
    let o = evobench(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains(":1:"));

    let bad = tmp("bad.csv");
    fs::write(&bad, "suite,problem,instance,dim,run,fes,best_so_far\ns,1,1,10,0,200,5\ns,1,1,10,zero,400,1\n").unwrap();
    let o = evobench(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains(":3:"));

    let o = evobench(&["analyze", tmp("missing.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
