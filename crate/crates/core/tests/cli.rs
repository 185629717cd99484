mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use slidevar::cli::{cmd_backtest, cmd_compute, cmd_simulate, BacktestInput, Cell, OutputFormat, RunConfig, Table};
use slidevar::LossSeries;

const SMALL: &str = r#"
[sweep]
samples = 4000
seed = 5
histogram_bins = 20

[synthetic]
length = 900
switches = 2
seed = 5
"#;

fn slidevar(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slidevar"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn numbers(text: &str) -> String {
    let mut out = String::from("loss\n");
    for line in text.lines() {
        out.push_str(line);
        out.push('\n');
    }
    out
}

#[test]
fn compute_on_one_to_hundred() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("d.csv");
    fs::write(
        &data,
        numbers(&(1..=100).map(|k| k.to_string()).collect::<Vec<_>>().join("\n")),
    )
    .unwrap();
    let cfg = tmp.path().join("flat.toml");
    fs::write(
        &cfg,
        "[aversion]\nfamily = \"flat\"\n[normalization]\nfamily = \"piecewise-linear\"\na = 96.0\nb = 100.0\n",
    )
    .unwrap();
    let o = slidevar(
        &["compute", "--config", "flat.toml", "--data", "d.csv", "--out", "o"],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(tmp.path().join("o/measures.csv")).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let get = |name: &str| -> f64 { row[header.iter().position(|h| h == name).unwrap()].parse().unwrap() };
    assert!((get("slidevar") - 98.0).abs() < 1e-12);
    assert_eq!(get("var_beta"), 96.0);
    assert!((get("weight") - 0.5).abs() < 1e-12);
}

#[test]
fn compute_defaults_match_oracles() {
    let xs: Vec<f64> = (1..=100).map(f64::from).collect();
    let table = cmd_compute(&RunConfig::default(), &LossSeries::from_losses(xs.clone())).unwrap();
    let row = &table.rows[0];
    let col = |name: &str| match row[table.header.iter().position(|h| *h == name).unwrap()] {
        Cell::Float(x) => x,
        ref other => panic!("{other:?}"),
    };
    let phi = common::Phi::Exponential { beta: 0.95, gamma: 0.2 };
    assert!((col("tail_thickness") - common::tail_thickness(&xs, &phi)).abs() < 1e-12);
    assert!((col("slidevar") - common::slide_var(&xs, 0.99, &phi, 1.0, 4.0)).abs() < 1e-12);
    assert!((col("cvar_beta") - common::cvar(&xs, 0.95)).abs() < 1e-12);
}

#[test]
fn saturated_normalization_reports_cvar() {
    let cfg = RunConfig::from_toml("[normalization]\nfamily = \"constant\"\nvalue = 1.0\n").unwrap();
    let xs: Vec<f64> = (0..300).map(|i| ((i * 37) % 101) as f64 - 50.0).collect();
    let table = cmd_compute(&cfg, &LossSeries::from_losses(xs)).unwrap();
    let at = |name: &str| table.rows[0][table.header.iter().position(|h| *h == name).unwrap()].clone();
    assert_eq!(at("slidevar"), at("cvar_alpha"));
}

#[test]
fn exit_status_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path();
    fs::write(p.join("bad.toml"), "[measure]\nalpha = \"high\"\n").unwrap();
    fs::write(p.join("inverted.toml"), "[measure]\nalpha = 0.9\nbeta = 0.95\n").unwrap();
    fs::write(p.join("prices.csv"), "date,price\n2020-01-01,100\n2020-01-02,-3\n").unwrap();
    fs::write(p.join("short.csv"), "loss\n1\n2\n3\n").unwrap();

    let cases: &[(&[&str], i32)] = &[
        (&["compute", "--config", "missing.toml", "--data", "short.csv"], 2),
        (&["compute"], 2),
        (&["simulate"], 2),
        (&["backtest"], 2),
        (&["frobnicate"], 2),
        (&["simulate", "--seed", "x"], 2),
        (&["compute", "--data", "missing.csv"], 1),
        (&["compute", "--config", "bad.toml", "--data", "short.csv"], 3),
        (&["compute", "--config", "inverted.toml", "--data", "short.csv"], 3),
        (&["compute", "--data", "prices.csv"], 3),
        (&["backtest", "--data", "short.csv"], 3),
        (&["compute", "--data", "short.csv", "--out", "ok"], 0),
    ];
    for (args, want) in cases {
        let o = slidevar(args, p);
        assert_eq!(code(&o), *want, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = slidevar(&["backtest", "--data", "short.csv"], p);
    assert!(String::from_utf8_lossy(&o.stderr).contains("251"));
    let o = slidevar(&["compute", "--data", "prices.csv"], p);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn simulate_and_backtest_are_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("small.toml"), SMALL).unwrap();
    for format in ["csv", "json-lines"] {
        for cmd in ["simulate", "backtest"] {
            let runs: Vec<_> = ["a", "b"]
                .iter()
                .map(|run| {
                    let out = format!("{cmd}-{format}-{run}");
                    let o = slidevar(
                        &[cmd, "--config", "small.toml", "--out", &out, "--format", format],
                        tmp.path(),
                    );
                    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
                    dir_contents(&tmp.path().join(out))
                })
                .collect();
            assert!(!runs[0].is_empty());
            assert_eq!(runs[0], runs[1], "{cmd} {format}");
        }
    }
    // --seed overrides the configured seed
    let o = slidevar(
        &["simulate", "--config", "small.toml", "--seed", "6", "--out", "other"],
        tmp.path(),
    );
    assert_eq!(code(&o), 0);
    assert_ne!(
        dir_contents(&tmp.path().join("other")),
        dir_contents(&tmp.path().join("simulate-csv-a"))
    );
}

fn assert_round_trip(table: &Table, dir: &Path) {
    for format in [OutputFormat::Csv, OutputFormat::JsonLines] {
        let path = table.write(dir, format).unwrap();
        let text = fs::read_to_string(path).unwrap();
        let parsed: Vec<Vec<String>> = match format {
            OutputFormat::Csv => {
                let mut rdr = csv::Reader::from_reader(text.as_bytes());
                assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), table.header);
                rdr.records()
                    .map(|r| r.unwrap().iter().map(str::to_owned).collect())
                    .collect()
            }
            OutputFormat::JsonLines => text
                .lines()
                .map(|l| {
                    let v: serde_json::Value = serde_json::from_str(l).unwrap();
                    table
                        .header
                        .iter()
                        .map(|h| match &v[*h] {
                            serde_json::Value::String(s) => s.clone(),
                            serde_json::Value::Null => String::new(),
                            other => other.to_string(),
                        })
                        .collect()
                })
                .collect(),
        };
        assert_eq!(parsed.len(), table.rows.len());
        for (row, back) in table.rows.iter().zip(&parsed) {
            for (cell, s) in row.iter().zip(back) {
                if let Cell::Float(x) = cell {
                    let y: f64 = s.parse().unwrap();
                    let rel = if *x == 0.0 { y.abs() } else { ((y - x) / x).abs() };
                    assert!(rel < 5e-15, "{x} -> {s}");
                }
            }
        }
    }
}

#[test]
fn emitted_tables_round_trip() {
    let cfg = RunConfig::from_toml(SMALL).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let mut tables = cmd_simulate(&cfg, 5).unwrap();
    tables.extend(cmd_backtest(&cfg, BacktestInput::Synthetic { seed: 5 }).unwrap());
    for t in &tables {
        assert_round_trip(t, tmp.path());
    }
}

#[test]
fn backtest_on_a_price_file_carries_dates() {
    let tmp = tempfile::tempdir().unwrap();
    let mut text = String::from("date,price\n");
    let start = chrono::NaiveDate::from_ymd_opt(2015, 1, 1).unwrap();
    let mut price = 100.0f64;
    for i in 0..320u32 {
        let date = start + chrono::Days::new(u64::from(i));
        price *= 1.0 + 0.01 * ((i * 7919 % 23) as f64 - 11.0) / 11.0;
        text.push_str(&format!("{date},{price}\n"));
    }
    fs::write(tmp.path().join("p.csv"), text).unwrap();
    let o = slidevar(&["backtest", "--data", "p.csv", "--out", "bt"], tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let windows = fs::read_to_string(tmp.path().join("bt/backtest_windows.csv")).unwrap();
    let first = windows.lines().nth(1).unwrap();
    // 319 losses dated from the second price; loss 250 falls on price 251
    assert!(first.starts_with("250,2015-09-09,,"), "{first}");
    assert_eq!(windows.lines().count(), 1 + 69);
    assert!(!tmp.path().join("bt/synthetic_series.csv").exists());
}

#[test]
fn check_writes_a_machine_readable_table() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("c.toml"), "[check]\ncases = 25\nseed = 4\n").unwrap();
    let o = slidevar(
        &["check", "--config", "c.toml", "--out", "ck", "--format", "json-lines"],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = fs::read_to_string(tmp.path().join("ck/check.jsonl")).unwrap();
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows
        .iter()
        .all(|r| r["passed"] == true && r["counterexample"].is_null()));
    assert_eq!(rows[0]["cases"], 25);
}
