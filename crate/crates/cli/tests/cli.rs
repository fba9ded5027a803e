use std::process::{Command, Output};

use trispectra_cli::golden;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trispectra")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows (non-comment lines after the column header), split on commas.
fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn solve_cosine_yukawa() {
    let o =
        run(&["solve", "--potential", "yukawa-cos", "--A", "1", "--delta", "0.5", "--ell", "0", "--N", "100", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r.len(), 1);
    assert!((num(&r[0][1]) + 1.5123062833952).abs() < 1e-12);
    assert_eq!(r[0][2], "100");
    assert_eq!(r[0][3], "2");
}

#[test]
fn solve_kratzer_five_levels() {
    let o = run(&["solve", "--potential", "kratzer", "--A", "1", "--B", "50", "--ell", "1", "--N", "100", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r.len(), 5);
    for (row, (_, _, cols)) in r.iter().zip(golden::TABLE2.iter().take(5)) {
        let exact = golden::value(cols[0].0);
        assert!((num(&row[1]) + exact).abs() < 1e-9, "{row:?} vs {exact}");
    }
}

#[test]
fn kratzer_rejects_s_wave() {
    let o = run(&["solve", "--potential", "kratzer", "--B", "50", "--ell", "0", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nu = 2|ell| = 0"));
}

#[test]
fn solve_over_grid_picks_lowest_per_level() {
    let o = run(&[
        "solve",
        "--potential",
        "yukawa-cos",
        "--delta",
        "0.1",
        "--lambda-min",
        "1",
        "--lambda-max",
        "5",
        "--lambda-step",
        "0.5",
        "--levels",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    let expected = golden::values(golden::TABLE1[2].1);
    assert_eq!(r.len(), 3);
    for (row, e) in r.iter().zip(expected) {
        assert!((num(&row[1]) + e).abs() < 1e-9);
    }
}

#[test]
fn solve_needs_a_lambda() {
    assert_eq!(run(&["solve", "--potential", "yukawa-cos", "--delta", "0.5"]).status.code(), Some(2));
    let both = run(&["solve", "--potential", "yukawa-cos", "--delta", "0.5", "--lambda", "2", "--grid", "1,2"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn unrelated_parameters_rejected() {
    let o = run(&["solve", "--potential", "yukawa-cos", "--delta", "0.5", "--B", "3", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--B"));
}

#[test]
fn scan_finds_plateaus() {
    let o = run(&[
        "scan",
        "--potential",
        "yukawa-cos",
        "--A",
        "1",
        "--delta",
        "0.5",
        "--lambda-min",
        "1",
        "--lambda-max",
        "5",
        "--lambda-step",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# plateau lambda=[1,5] points=9"));
    assert_eq!(rows(&o).len(), 9);

    let morse = run(&[
        "scan",
        "--potential",
        "morse",
        "--V0",
        "-10",
        "--r0",
        "1",
        "--width",
        "2",
        "--beta",
        "1",
        "--N",
        "70",
        "--grid",
        "10,11,12,13,14,15",
        "--levels",
        "3",
    ]);
    assert_eq!(morse.status.code(), Some(0));
    assert!(stdout(&morse).contains("# plateau lambda=[10,15] points=6"));
}

#[test]
fn scan_rejects_short_grid() {
    let o = run(&["scan", "--potential", "yukawa-cos", "--delta", "0.5", "--grid", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_examples() {
    for args in [
        &["validate", "--potential", "yukawa-cos", "--delta", "0.5", "--lambda", "2", "--limit", "40"][..],
        &[
            "validate",
            "--potential",
            "morse",
            "--V0",
            "-6",
            "--r0",
            "4",
            "--width",
            "1.5",
            "--beta",
            "1",
            "--ell",
            "1",
            "--lambda",
            "12",
            "--limit",
            "40",
        ],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(num(&rows(&o)[0][0]) <= 1e-11);
    }
    let zero = run(&["validate", "--potential", "yukawa-cos", "--A", "0", "--delta", "0.5", "--lambda", "2", "--limit", "40"]);
    assert_eq!(zero.status.code(), Some(0));
    assert_eq!(num(&rows(&zero)[0][0]), 0.0);
}

#[test]
fn table_one_and_three_reproduce() {
    let t1 = run(&["table", "1"]);
    assert_eq!(t1.status.code(), Some(0));
    let r = rows(&t1);
    assert_eq!(r.len(), 21);
    let d1 = r.iter().find(|c| c[0] == "delta=1").unwrap();
    assert!((num(&d1[3]) - 1.08022847887960).abs() < 1e-9);

    let t3 = run(&["table", "3"]);
    assert_eq!(t3.status.code(), Some(0));
    let cells: Vec<_> = rows(&t3).into_iter().filter(|c| c[0] == "ell=2 r0=4 width=1.5 V0=-6 beta=1.2").collect();
    assert_eq!(cells.len(), 2);
    assert!((num(&cells[0][3]) - 14.526564734920).abs() < 1e-8);
    assert!((num(&cells[1][3]) - 3.894631587677).abs() < 1e-8);
}

#[test]
fn table_two_exit_code_tracks_failed_cells() {
    let o = run(&["table", "2"]);
    let r = rows(&o);
    assert_eq!(r.len(), 60);
    let b5 = r.iter().find(|c| c[0] == "B=5 ell=5" && c[1] == "0").unwrap();
    assert!((num(&b5[3]) - 0.013994929411735).abs() < 1e-9);
    let failed: Vec<_> = r.iter().filter(|c| c[7] == "fail").collect();
    assert_eq!(o.status.code(), Some(if failed.is_empty() { 0 } else { 4 }));
    for c in r {
        assert!(num(&c[5]) <= 1e-8, "{c:?}");
    }
}

#[test]
fn dump_config_round_trips() {
    let args = [
        "solve",
        "--potential",
        "morse",
        "--V0",
        "-6",
        "--r0",
        "4",
        "--width",
        "1.5",
        "--beta",
        "0.8",
        "--ell",
        "1",
        "--N",
        "70",
        "--lambda",
        "12",
        "--levels",
        "4",
    ];
    let direct = run(&args);
    assert_eq!(direct.status.code(), Some(0));
    let mut with_dump = args.to_vec();
    with_dump.push("--dump-config");
    let dumped = run(&with_dump);
    assert_eq!(dumped.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, &dumped.stdout).unwrap();
    let replay = run(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(replay.stdout, direct.stdout);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "potential=yukawa-cos\ndelta=0.5\nlambda=2\nN=50\n").unwrap();
    let o = run(&["solve", "--config", path.to_str().unwrap(), "--N", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().contains(" N=60 "));
    assert_eq!(rows(&o)[0][2], "60");
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "potential=yukawa-cos\ndelta=0.5\nlambda=2\ncolour=blue\n").unwrap();
    assert_eq!(run(&["solve", "--config", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--config", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let args = ["scan", "--potential", "yukawa-sin", "--delta", "0.2", "--grid", "1,1.5,2,2.5,3", "--levels", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap(), "--threads", "2"]);
    let c = run(&with_out);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}
