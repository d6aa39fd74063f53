use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use igfading::sample_inverse_gamma;
use tempfile::TempDir;

const RAYLEIGH_2: &str = r#"{"shadowing":{"m":2},"fading":{"type":"rayleigh"}}"#;

fn igfading(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igfading")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "status {:?}, stderr: {}", out.status, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Parses a headed numeric CSV into its header and rows.
fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn column(text: &str, i: usize) -> Vec<f64> {
    table(text).1.into_iter().map(|r| r[i]).collect()
}

#[test]
fn every_subcommand_has_help() {
    for cmd in ["eval", "outage", "fit", "simulate", "gmgf"] {
        let out = igfading(&[cmd, "--help"]);
        assert!(out.status.success() && !out.stdout.is_empty(), "{cmd}");
    }
}

#[test]
fn eval_single_point() {
    let out = igfading(&["eval", "--config", RAYLEIGH_2, "--quantity", "pdf", "--grid", "1:1:1"]);
    assert_eq!(stdout(&out), "u,value\n1,0.25\n");
}

#[test]
fn amplitude_cdf_is_power_cdf_at_the_square() {
    let amp = stdout(&igfading(&["eval", "--config", RAYLEIGH_2, "--quantity", "amp-cdf", "--grid", "0.5:0.5:3"]));
    let power = stdout(&igfading(&["eval", "--config", RAYLEIGH_2, "--quantity", "cdf", "--grid", "0.25:0.25:9"]));
    let (r, a) = (column(&amp, 0), column(&amp, 1));
    let (u, p) = (column(&power, 0), column(&power, 1));
    for (ri, ai) in r.iter().zip(&a) {
        let j = u.iter().position(|x| (x - ri * ri).abs() < 1e-12).expect("square on the power grid");
        assert_eq!(*ai, p[j], "r = {ri}");
    }
}

#[test]
fn truncated_mixture_amplitude_densities_integrate_to_one() {
    // (m, K, mean power, terms, grid)
    let cases = [
        (2.0, 1.0, 1.0, "15", "0.004:0.004:60"),
        (5.0, 2.0, 1.0, "15", "0.002:0.002:15"),
        (3.0, 4.0, 8.0, "30", "0.004:0.004:40"),
        (5.0, 8.0, 8.0, "30", "0.002:0.002:20"),
    ];
    for (m, k, w, terms, grid) in cases {
        let config = format!(r#"{{"shadowing":{{"m":{m}}},"fading":{{"type":"twdp","k":{k},"delta":0.9}},"mean_power":{w}}}"#);
        let out = stdout(&igfading(&[
            "eval", "--config", &config, "--quantity", "amp-pdf", "--grid", grid, "--strategy", "mixture", "--terms", terms,
        ]));
        let (r, f) = (column(&out, 0), column(&out, 1));
        let area: f64 = r[0] * f[0] / 2.0 + r.windows(2).zip(f.windows(2)).map(|(x, y)| (x[1] - x[0]) * (y[0] + y[1]) / 2.0).sum::<f64>();
        assert!((area - 1.0).abs() < 1e-4, "m={m} K={k} W̄={w}: area {area}");
        assert!(f.iter().all(|v| *v >= 0.0));
    }
}

#[test]
fn terms_need_the_mixture_strategy() {
    let out = igfading(&[
        "eval", "--config", RAYLEIGH_2, "--quantity", "pdf", "--grid", "1:1:2", "--strategy", "gmgf-general", "--terms", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outage_table_meets_its_asymptote() {
    let config = r#"{"shadowing":{"m":2},"fading":{"type":"twdp","k":2,"delta":0.3}}"#;
    let out = stdout(&igfading(&["outage", "--config", config, "--grid", "-60:5:10", "--asymptotic"]));
    let (header, rows) = table(&out);
    assert_eq!(header, ["gamma_th_db", "exact", "asymptote"]);
    let at = |db: f64| rows.iter().find(|r| r[0] == db).unwrap().clone();
    let r40 = at(-40.0);
    assert!((r40[1] / r40[2] - 1.0).abs() < 0.02, "{r40:?}");
    assert!(rows.windows(2).all(|w| w[1][1] >= w[0][1]));
    let decades = (at(-50.0)[1] / at(-60.0)[1]).log10();
    assert!((decades - 1.0).abs() < 0.01, "{decades}");
}

#[test]
fn outage_without_asymptote_has_two_columns() {
    let out = stdout(&igfading(&["outage", "--config", RAYLEIGH_2, "--grid", "0:1:0"]));
    assert_eq!(out, "gamma_th_db,exact\n0,0.75\n");
}

fn write_samples(dir: &Path, m: f64, n: usize) -> std::path::PathBuf {
    let path = dir.join("samples.csv");
    let mut text = String::from("value\n");
    for v in sample_inverse_gamma(m, 1.0, n, 99).unwrap() {
        text.push_str(&format!("{v}\n"));
    }
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn fit_ranks_inverse_gamma_first_on_its_own_samples() {
    let dir = TempDir::new().unwrap();
    let input = write_samples(dir.path(), 5.0, 20_000);
    let report = dir.path().join("report.csv");
    let out = igfading(&["fit", input.to_str().unwrap(), "--scale", "linear", "--out", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(report).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "rank,family,param1,value1,param2,value2,cvm,converged");
    let best: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(best[1], "Inverse Gamma");
    assert_eq!(best[2], "m");
    let m: f64 = best[3].parse().unwrap();
    assert!((m - 5.0).abs() < 0.25, "{m}");
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn fit_integer_m_adds_a_row() {
    let dir = TempDir::new().unwrap();
    let input = write_samples(dir.path(), 4.0, 5_000);
    let out = stdout(&igfading(&[
        "fit", input.to_str().unwrap(), "--scale", "linear", "--families", "inverse-gamma", "--integer-m",
    ]));
    let families: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(families.len(), 2);
    assert!(families.contains(&"Inverse Gamma m∈N⁺"), "{families:?}");
    let row = out.lines().find(|l| l.contains("m∈N⁺")).unwrap();
    let m: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert_eq!(m, m.round());
}

#[test]
fn fit_scales_agree() {
    // the same data in dB (conventional direction) and in natural log units
    let dir = TempDir::new().unwrap();
    let samples = sample_inverse_gamma(3.0, 1.0, 3_000, 5).unwrap();
    let (db, ln) = (dir.path().join("db.csv"), dir.path().join("ln.csv"));
    let mut a = String::from("value\n");
    let mut b = String::from("value\n");
    for v in &samples {
        a.push_str(&format!("{}\n", 20.0 * v.log10()));
        b.push_str(&format!("{}\n", v.ln()));
    }
    fs::write(&db, a).unwrap();
    fs::write(&ln, b).unwrap();
    let run = |p: &Path, extra: &[&str]| {
        let mut args = vec!["fit", p.to_str().unwrap(), "--families", "gamma"];
        args.extend_from_slice(extra);
        stdout(&igfading(&args))
    };
    let from_db = run(&db, &["--scale", "db", "--db-direction", "conventional"]);
    let from_ln = run(&ln, &["--scale", "ln"]);
    let cvm = |s: &str| -> f64 { s.lines().nth(1).unwrap().split(',').nth(6).unwrap().parse().unwrap() };
    assert!((cvm(&from_db) - cvm(&from_ln)).abs() < 1e-6 * cvm(&from_ln), "{from_db}\n{from_ln}");
}

#[test]
fn fit_rejects_bad_files_by_line() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("t,cdf\n0,0.1\n1,0.5\n2,0.4\n", "line 4"),
        ("t,cdf\n0,0.1\n0,0.5\n", "line 3"),
        ("value\n1\nx\n", "line 3"),
        ("value\n1\n-2\n", "line 3"),
        ("v\n1\n", "header"),
        ("value\n", "empty"),
    ];
    for (i, (content, needle)) in cases.into_iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.csv"));
        fs::write(&path, content).unwrap();
        let scale = if content.contains("-2") { "linear" } else { "ln" };
        let out = igfading(&["fit", path.to_str().unwrap(), "--scale", scale]);
        assert_eq!(out.status.code(), Some(2), "{content}");
        assert!(stderr(&out).contains(needle), "{content}: {}", stderr(&out));
    }
    let out = igfading(&["fit", dir.path().join("missing.csv").to_str().unwrap(), "--scale", "ln"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fit_accepts_ecdf_pairs() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("pairs.csv");
    let mut text = String::from("t,cdf\n");
    for i in 0..200 {
        let t = -3.0 + 6.0 * i as f64 / 199.0;
        let f = 0.5 * (1.0 + libm_erf(t / std::f64::consts::SQRT_2));
        text.push_str(&format!("{t},{f}\n"));
    }
    fs::write(&path, text).unwrap();
    let out = stdout(&igfading(&["fit", path.to_str().unwrap(), "--scale", "ln", "--families", "lognormal"]));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let (mu, sigma): (f64, f64) = (row[3].parse().unwrap(), row[5].parse().unwrap());
    assert!(mu.abs() < 0.02 && (sigma - 1.0).abs() < 0.02, "{out}");
}

fn libm_erf(x: f64) -> f64 {
    igfading::numerics::erf(x)
}

#[test]
fn simulate_validates_a_shadowed_kappa_mu_composite() {
    let config = r#"{"shadowing":{"m":3},"fading":{"type":"kappa-mu-shadowed","kappa":2,"mu":1.5,"m":3}}"#;
    let out = stdout(&igfading(&["simulate", "--config", config, "--count", "1000000", "--seed", "7", "--validate"]));
    let (header, rows) = {
        let mut l = out.lines();
        (l.next().unwrap().to_string(), l.next().unwrap().to_string())
    };
    assert_eq!(header, "count,seed,sup_distance,cvm,guard,passed");
    assert!(rows.ends_with(",0.003,true"), "{rows}");
}

#[test]
fn simulate_small_counts_get_a_wide_guard() {
    let out = stdout(&igfading(&["simulate", "--config", RAYLEIGH_2, "--count", "100", "--seed", "3", "--validate"]));
    assert!(out.lines().nth(1).unwrap().ends_with(",0.3,true"), "{out}");
}

#[test]
fn simulate_is_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    let config = r#"{"shadowing":{"m":2.5},"fading":{"type":"twdp","k":4,"delta":0.9},"mean_power":2}"#;
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("s{i}.csv"))).collect();
    for p in &paths {
        let out = igfading(&["simulate", "--config", config, "--count", "5000", "--seed", "42", "--emit-samples", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 5001);
    let other = stdout(&igfading(&["simulate", "--config", config, "--count", "5000", "--seed", "43"]));
    assert_ne!(other.as_bytes(), fs::read(&paths[0]).unwrap());
}

#[test]
fn gmgf_values() {
    let out = stdout(&igfading(&["gmgf", "--fading", r#"{"type":"rayleigh","omega":1}"#, "-p", "1", "-s", "0"]));
    assert_eq!(out, "p,s,value\n1,0,1\n");

    let out = stdout(&igfading(&["gmgf", "--fading", r#"{"type":"twdp","k":4,"delta":0.9}"#, "-p", "2", "-s", "-1.5", "--check"]));
    let (header, rows) = table(&out);
    assert_eq!(header, ["p", "s", "value", "numeric", "rel_diff"]);
    assert!(rows[0][4] < 1e-7, "{out}");

    let kms = stdout(&igfading(&["gmgf", "--fading", r#"{"type":"kappa-mu-shadowed","kappa":0,"mu":2.5,"m":4}"#, "-p", "1.5", "-s", "-2"]));
    let nak = stdout(&igfading(&["gmgf", "--fading", r#"{"type":"nakagami","m":2.5}"#, "-p", "1.5", "-s", "-2"]));
    assert_eq!(kms, nak);
}

#[test]
fn gmgf_rejects_positive_arguments() {
    let out = igfading(&["gmgf", "--fading", r#"{"type":"rayleigh"}"#, "-p", "1", "-s", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_errors_exit_with_two() {
    let cases = [
        r#"{"shadowing":{"m":2},"fading":{"type":"rayleigh","extra":1}}"#,
        r#"{"shadowing":{"m":0.5},"fading":{"type":"rayleigh"}}"#,
        r#"{"shadowing":{"m":2},"fading":{"type":"twdp","k":4,"delta":2}}"#,
        r#"{"shadowing":{"m":2},"fading":{"type":"nakagami"}}"#,
        r#"{"shadowing":{"m":2}}"#,
        "not json",
    ];
    for config in cases {
        let out = igfading(&["eval", "--config", config, "--quantity", "pdf", "--grid", "1:1:1"]);
        assert_eq!(out.status.code(), Some(2), "{config}");
        assert!(stderr(&out).starts_with("igfading: input error"), "{}", stderr(&out));
    }
}

#[test]
fn config_can_be_a_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("model.json");
    fs::write(&path, RAYLEIGH_2).unwrap();
    let out = stdout(&igfading(&["eval", "--config", path.to_str().unwrap(), "--quantity", "cdf", "--grid", "1:1:1"]));
    assert_eq!(out, "u,value\n1,0.75\n");
}

#[test]
fn failed_evaluations_leave_no_file() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("curve.csv");
    let out = igfading(&[
        "eval", "--config", RAYLEIGH_2, "--quantity", "pdf", "--grid", "0:0.5:2", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
}

#[test]
fn eval_output_round_trips_through_the_file() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("curve.csv");
    let config = r#"{"shadowing":{"m":3.5},"fading":{"type":"hoyt","q":0.4},"mean_power":2}"#;
    let out = igfading(&["eval", "--config", config, "--quantity", "cdf", "--grid", "0.1:0.3:6", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let model = igfading::CompositeModel::new(3.5, 2.0, igfading::FadingModel::Hoyt { q: 0.4, omega_x: 1.0 }).unwrap();
    let text = fs::read_to_string(out_path).unwrap();
    for row in table(&text).1 {
        let want = model.cdf(row[0], igfading::Strategy::Auto, &igfading::Tolerance::default()).unwrap();
        assert!((row[1] - want).abs() <= 1e-11 * want, "{row:?} vs {want}");
    }
}

#[test]
fn db_direction_defaults_to_the_literal_rescaling() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("db.csv");
    let mut text = String::from("value\n");
    for v in sample_inverse_gamma(3.0, 1.0, 500, 8).unwrap() {
        text.push_str(&format!("{}\n", 10.0 * v.log10()));
    }
    fs::write(&path, text).unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["fit", path.to_str().unwrap(), "--scale", "db", "--families", "lognormal"];
        args.extend_from_slice(extra);
        stdout(&igfading(&args))
    };
    let default = run(&[]);
    assert_eq!(default, run(&["--db-direction", "literal"]));
    assert_eq!(default, run(&["--db-direction", "paper"]));
    assert_ne!(default, run(&["--db-direction", "conventional"]));
}
