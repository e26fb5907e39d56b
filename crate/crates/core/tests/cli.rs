use std::fs;
use std::process::{Command, Output};

fn audit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_audit"))
        .args(args)
        .output()
        .expect("audit binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn taylor_prints_exact_rows() {
    let o = audit(&["taylor", "--problem", "ex4", "--trunc", "12"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "3: 1/12"));
    assert!(out.lines().any(|l| l == "9: -1/12960"));

    let out = stdout(&audit(&["taylor", "--problem", "ex3", "--trunc", "20"]));
    assert!(out.lines().any(|l| l == "2: 1"));
    assert!(out.contains("polynomial closure at degree 2"));
}

#[test]
fn unknown_problem_is_a_usage_error() {
    let o = audit(&["taylor", "--problem", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown problem"));
    assert_eq!(audit(&["taylor"]).status.code(), Some(2));
    assert_eq!(audit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn problem_files_are_accepted_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("cubic.txt");
    fs::write(
        &good,
        "# y = x^2 again\nname = mine\nk = 2\nf = y^3 - (6 + x^6)\nA = 0\nB = 0\n",
    )
    .unwrap();
    let out = stdout(&audit(&["taylor", "--problem", good.to_str().unwrap()]));
    assert!(out.contains("polynomial closure at degree 2"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "name = bad\nk = 2\nf = y^3 +\nA = 0\nB = 0\n").unwrap();
    assert_eq!(
        audit(&["taylor", "--problem", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let slope = dir.path().join("slope.txt");
    fs::write(&slope, "name = s\nk = 2\nf = y\nA = 0\nB = 1\n").unwrap();
    assert_eq!(
        audit(&["hpm", "--problem", slope.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn hpm_prints_partial_sums_and_noise() {
    let out = stdout(&audit(&["hpm", "--problem", "ex3", "--orders", "1"]));
    assert!(out.lines().any(|l| l == "S1 = x^2 + 1/72 x^8"));

    let out = stdout(&audit(&["hpm", "--problem", "ex2", "--orders", "2"]));
    assert!(out.contains("noise 1/20 x^4 + 1/30 x^5"), "{out}");

    let out = stdout(&audit(&["hpm", "--problem", "ex3", "--orders", "4"]));
    assert!(
        out.lines().any(|l| l == "x^8: 0, 1/72, 1/72, 1/72, 0"),
        "{out}"
    );

    let out = stdout(&audit(&[
        "hpm",
        "--problem",
        "ex3",
        "--orders",
        "1",
        "--embedding",
        "keep-g",
    ]));
    assert!(out.lines().any(|l| l == "y0 = x^2 + 1/72 x^8"), "{out}");
}

#[test]
fn integrate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ex3.csv");
    let o = audit(&[
        "integrate",
        "--problem",
        "ex3",
        "--x-max",
        "1",
        "--samples",
        "11",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,dy");
    assert_eq!(lines.len(), 12);
    let last: Vec<f64> = lines[11].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 1.0).abs() < 1e-8);
}

#[test]
fn integrate_long_run_is_finite() {
    let o = audit(&[
        "integrate",
        "--problem",
        "ex4",
        "--x-max",
        "100",
        "--samples",
        "2000",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2001);
    for line in text.lines().skip(1) {
        assert!(line
            .split(',')
            .all(|v| v.parse::<f64>().unwrap().is_finite()));
    }
}

#[test]
fn unwritable_path_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("missing").join("out.csv");
    let o = audit(&[
        "integrate",
        "--problem",
        "ex3",
        "--x-max",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn solver_errors_are_reported() {
    let o = audit(&[
        "integrate",
        "--problem",
        "ex3",
        "--x-start",
        "2",
        "--x-max",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fig1_files() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, svg) = (dir.path().join("f.csv"), dir.path().join("f.svg"));
    let args = [
        "fig1",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ];
    let o = audit(&args);
    assert!(o.status.success());
    let out = stdout(&o);
    let crossings: usize = out
        .lines()
        .find_map(|l| l.strip_prefix("crossings of sqrt(ln x / x) on [2, 100]: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(crossings >= 3);

    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("x,y_numeric,y_series,y_asymptote")
    );
    assert_eq!(text.lines().count(), 2001);
    for line in text.lines().skip(1) {
        let x: f64 = line.split(',').next().unwrap().parse().unwrap();
        assert_eq!(line.ends_with(','), x <= 1.0, "{line}");
    }
    let picture = fs::read_to_string(&svg).unwrap();
    assert!(picture.contains("<svg") && picture.matches("<polyline").count() >= 3);
    assert!(picture.contains("numeric solution") && picture.contains("power series"));

    let first = fs::read(&csv).unwrap();
    assert!(audit(&args).status.success());
    assert_eq!(fs::read(&csv).unwrap(), first);
}

#[test]
fn fig1_two_samples_is_degenerate_but_valid() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, svg) = (dir.path().join("f.csv"), dir.path().join("f.svg"));
    let o = audit(&[
        "fig1",
        "--samples",
        "2",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 3);
    assert!(fs::read_to_string(&svg)
        .unwrap()
        .trim_end()
        .ends_with("</svg>"));
}

#[test]
fn run_all_report_and_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    audit(&["run-all", "--out", out.to_str().unwrap()]);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let claims = report["claims"].as_array().unwrap();
    let ids: Vec<u64> = claims.iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, (1..=12).collect::<Vec<_>>());
    assert!(claims.iter().all(|c| c["runtime_ms"].is_number()));
    assert_eq!(claims[1]["status"], "discrepancy");
    let text = fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(
        text.contains("discrepancy (documented)") && text.contains("residual of x^4 - x^3 is -x^4")
    );

    // a broken ex3 must flip exactly the claims that depend on it
    let fixture = dir.path().join("ex3.txt");
    fs::write(
        &fixture,
        "name = ex3\nk = 2\nf = y^3 - (7 + x^6)\nA = 0\nB = 0\n",
    )
    .unwrap();
    let bad = dir.path().join("bad");
    let o = audit(&[
        "run-all",
        "--out",
        bad.to_str().unwrap(),
        "--override",
        &format!("ex3={}", fixture.display()),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(bad.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["claims"][3]["status"], "fail");
    assert_eq!(report["claims"][4]["status"], "fail");

    let o = audit(&[
        "run-all",
        "--out",
        bad.to_str().unwrap(),
        "--override",
        "ex3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}
