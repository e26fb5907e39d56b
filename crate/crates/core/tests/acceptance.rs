//! The twelve acceptance criteria, one test each. Every test prints a
//! single `PASS`/`FAIL` line before asserting.

use std::fs;
use std::path::Path;
use std::process::Command;

use hpm_audit::numeric::{
    asymptote_residual, crossing_count, rk_integrate, uniform_grid, SolverConfig,
};
use hpm_audit::{
    builtin, hpm_expand, rat, residual_series, taylor_solve, Embedding, Rational, TruncatedSeries,
};
use num_traits::Zero;

fn int(n: i64) -> Rational {
    rat(n, 1)
}

fn poly(terms: &[(usize, Rational)], trunc: usize) -> TruncatedSeries {
    TruncatedSeries::from_terms(terms.iter().cloned(), trunc)
}

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!(
        "{} criterion {id:>2} ({name}): {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_example_one_exact_solution() {
    let p = builtin("ex1_corrected").unwrap();
    let t = taylor_solve(&p, 30).unwrap();
    let r = residual_series(&p, &t.series).unwrap();
    let ok = t.terminated && t.series == poly(&[(3, int(-1)), (4, int(1))], 30) && r.is_zero();
    report(
        1,
        "example 1 exact solution",
        ok,
        format!("series {}, residual {r}", t.series),
    );
}

#[test]
fn criterion_02_example_one_misprint_witness() {
    let p = builtin("ex1_literal").unwrap();
    let r = residual_series(&p, &poly(&[(4, int(1)), (3, int(-1))], 30)).unwrap();
    let a6 = taylor_solve(&p, 30).unwrap().coeff(6).cloned().unwrap();
    let ok = r == poly(&[(4, int(-1))], 28) && a6 == rat(1, 78);
    report(
        2,
        "example 1 misprint witness",
        ok,
        format!("residual {r}, a6 = {a6}"),
    );
}

#[test]
fn criterion_03_example_two_exact_solution() {
    let t = taylor_solve(&builtin("ex2").unwrap(), 30).unwrap();
    let ok = t.terminated && t.series == poly(&[(2, int(1)), (3, int(1))], 30);
    report(
        3,
        "example 2 exact solution",
        ok,
        format!("series {}", t.series),
    );
}

#[test]
fn criterion_04_example_three_exact_solution() {
    let t = taylor_solve(&builtin("ex3").unwrap(), 40).unwrap();
    let ok = t.terminated && t.closure_degree == Some(2) && t.series == poly(&[(2, int(1))], 40);
    report(
        4,
        "example 3 exact solution",
        ok,
        format!("series {}, closure {:?}", t.series, t.closure_degree),
    );
}

#[test]
fn criterion_05_wrong_first_order_result() {
    let h = hpm_expand(&builtin("ex3").unwrap(), 1, 40, Embedding::ThetaTimesF).unwrap();
    let s = h.partial_sum(1).unwrap();
    let ok = s == poly(&[(2, int(1)), (8, rat(1, 72))], 40);
    report(5, "wrong perturbation result", ok, format!("S1 = {s}"));
}

#[test]
fn criterion_06_noise_cancellation() {
    let h = hpm_expand(&builtin("ex3").unwrap(), 3, 40, Embedding::ThetaTimesF).unwrap();
    let y2 = &h.corrections[2];
    let a8 = h.partial_sum(3).unwrap().coeff(8).cloned().unwrap();
    let ok = y2.is_zero() && a8.is_zero();
    report(
        6,
        "noise cancellation",
        ok,
        format!(
            "y2 = {y2}, y3 = {}, x^8 coefficient of S3 = {a8}",
            h.corrections[3]
        ),
    );
}

#[test]
fn criterion_07_noise_in_example_two() {
    let p = builtin("ex2").unwrap();
    let exact = poly(&[(2, int(1)), (3, int(1))], 40);
    let h = hpm_expand(&p, 4, 40, Embedding::ThetaTimesF).unwrap();
    let mut depths = Vec::new();
    let mut residuals_nonzero = true;
    for j in 1..=4 {
        let s = h.partial_sum(j).unwrap();
        residuals_nonzero &= !residual_series(&p, &s).unwrap().is_zero();
        depths.push(s.first_difference(&exact));
    }
    let monotone = depths.iter().all(Option::is_some) && depths.windows(2).all(|w| w[0] <= w[1]);
    report(
        7,
        "noise in example 2",
        residuals_nonzero && monotone,
        format!("residuals nonzero: {residuals_nonzero}, first differing degrees {depths:?}"),
    );
}

#[test]
fn criterion_08_exp_example_coefficients() {
    let t = taylor_solve(&builtin("ex4").unwrap(), 15).unwrap();
    let ok = (0..=9).all(|n| {
        let c = t.coeff(n).unwrap();
        match n {
            3 => *c == rat(1, 12),
            9 => *c == rat(-1, 12960),
            _ => c.is_zero(),
        }
    });
    report(
        8,
        "example 4 coefficients",
        ok,
        format!("series {}", t.series),
    );
}

#[test]
fn criterion_09_numeric_tracks_exact_solutions() {
    let solve = |name: &str, x_max: f64| {
        let cfg = SolverConfig {
            x_max,
            rel_tol: 1e-10,
            ..SolverConfig::default()
        };
        rk_integrate(&builtin(name).unwrap(), &cfg)
            .unwrap()
            .last()
            .y
    };
    let e3 = (solve("ex3", 1.0) - 1.0).abs();
    let e2 = (solve("ex2", 2.0) - 12.0).abs();
    report(
        9,
        "numeric vs exact",
        e3 < 1e-8 && e2 < 1e-7,
        format!("|y(1) - 1| = {e3:.3e}, |y(2) - 12| = {e2:.3e}"),
    );
}

#[test]
fn criterion_10_oscillation_about_asymptote() {
    let cfg = SolverConfig {
        x_max: 100.0,
        ..SolverConfig::default()
    };
    let t = rk_integrate(&builtin("ex4").unwrap(), &cfg).unwrap();
    let rs = asymptote_residual(&t, &uniform_grid(2.0, 100.0, 2000)).unwrap();
    let n = crossing_count(&rs);
    let max_abs = |lo: f64, hi: f64| {
        rs.iter()
            .filter(|(x, _)| *x >= lo && *x <= hi)
            .map(|(_, r)| r.abs())
            .fold(0.0, f64::max)
    };
    let (late, early) = (max_abs(50.0, 100.0), max_abs(2.0, 20.0));
    report(
        10,
        "oscillation about the asymptote",
        n >= 3 && late < early,
        format!("{n} crossings, max|r| [50,100] = {late:.3e}, [2,20] = {early:.3e}"),
    );
}

#[test]
fn criterion_11_series_validity_window() {
    let p = builtin("ex4").unwrap();
    let cfg = SolverConfig {
        x_start: 0.1,
        x_max: 5.0,
        startup_trunc: 30,
        ..SolverConfig::default()
    };
    let t = rk_integrate(&p, &cfg).unwrap();
    let full = taylor_solve(&p, 30).unwrap().series;
    let two = |x: f64| x.powi(3) / 12.0 - x.powi(9) / 12960.0;
    let mut xs: Vec<f64> = t
        .samples
        .iter()
        .map(|s| s.x)
        .filter(|&x| x <= 0.5)
        .collect();
    xs.push(0.5);
    let (mut e_two, mut e_full) = (0.0f64, 0.0f64);
    for &x in &xs {
        let y = t.sample_at(x).unwrap().y;
        e_two = e_two.max((two(x) - y).abs());
        e_full = e_full.max((full.eval(x) - y).abs());
    }
    let m = t.first_local_max().expect("a local maximum on [0.1, 5]");
    let d_max = (two(m.x) - m.y).abs();
    let d_half = (two(0.5) - t.sample_at(0.5).unwrap().y).abs();
    report(
        11,
        "series validity window",
        e_two < 1e-6 && e_full < 1e-9 && d_max > d_half,
        format!(
            "two-term err {e_two:.3e}, full err {e_full:.3e} on {} points; at max x = {:.4}: {d_max:.3e} vs {d_half:.3e}",
            xs.len(),
            m.x
        ),
    );
}

fn run_all(out: &Path, extra: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_audit"))
        .arg("run-all")
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .expect("audit binary runs")
        .status
        .code()
        .expect("exit code")
}

fn csv_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn criterion_12_determinism_and_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let corrupted = tmp.path().join("ex3_corrupted.txt");
    fs::write(
        &corrupted,
        "name = ex3\nk = 2\nf = y^3 - (7 + x^6)\nA = 0\nB = 0\n",
    )
    .unwrap();
    let corrupted_code = run_all(
        &tmp.path().join("bad"),
        &["--override", &format!("ex3={}", corrupted.display())],
    );

    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let code_a = run_all(&a, &[]);
    let code_b = run_all(&b, &[]);
    let (fa, fb) = (csv_files(&a), csv_files(&b));
    let identical = !fa.is_empty() && fa == fb;
    report(
        12,
        "determinism and exit codes",
        identical && code_a == 0 && code_b == 0 && corrupted_code == 1,
        format!(
            "{} CSV files identical: {identical}; exit codes {code_a}, {code_b}; corrupted fixture exit {corrupted_code}",
            fa.len()
        ),
    );
}
