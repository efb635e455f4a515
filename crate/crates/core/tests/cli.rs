use std::path::Path;
use std::process::{Command, Output};

use ewh_nexus::cli::SWEEP_CSV_HEADER;
use ewh_nexus::config::Config;

fn ewh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn sweep_csv_has_fixed_header_and_21_rows() {
    let o = ewh(&["sweep", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], SWEEP_CSV_HEADER.join(","));
    assert_eq!(
        lines[0],
        "plant,product,beta,capital_usd,operational_usd_per_day,revenue_usd_per_day,daily_cost_usd_per_day,increased_price_usd_per_kwh,carbon_penalty_usd_per_ton"
    );
    assert_eq!(lines.len(), 22);
    assert!(lines[1].starts_with("biomass,none,0,"));
    assert!(!text.contains(';'));
    assert_eq!(stdout(&ewh(&["--command", "sweep", "--format", "csv"])), text);
}

#[test]
fn breakeven_for_biomass() {
    let o = ewh(&["breakeven", "--plant", "biomass", "--format", "csv", "--tolerance", "0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let km: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((km - 61.0).abs() < 2.0, "{row}");
}

#[test]
fn curve_panels_as_csv() {
    let o = ewh(&["curve", "--distances", "60,260,300", "--flows", "0,50,100", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 9);
    assert!(text.lines().nth(1).unwrap().starts_with("biomass,methane,60,0,"));
}

#[test]
fn json_and_table_formats() {
    let o = ewh(&["penalty", "--plant", "biomass", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    let o = ewh(&["scenario", "--plant", "coal", "--product", "ethanol", "--beta", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("chemical_revenue"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = ewh(&["sweep", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 22);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let typo = Config::paper_2024_toml().replace("r_cts =", "r_ctss =");
    let bad = write_config(dir.path(), "typo.toml", &typo);
    let o = ewh(&["sweep", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r_ctss"));

    let o = ewh(&["sweep", "--beta", "1.2"]);
    assert_eq!(o.status.code(), Some(2));

    let narrow = format!("{}\n[breakeven]\nd_lo = \"200 km\"\nd_hi = \"300 km\"\n", Config::paper_2024_toml());
    let narrow = write_config(dir.path(), "narrow.toml", &narrow);
    let o = ewh(&["breakeven", "--plant", "biomass", "--config", &narrow]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no break-even crossing"));

    let o = ewh(&["sweep", "--config", "/nonexistent/ewh.toml"]);
    assert_eq!(o.status.code(), Some(4));

    let o = ewh(&["sweep", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn exported_config_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let exported = write_config(dir.path(), "resolved.toml", &Config::paper_2024().to_toml());
    let a = stdout(&ewh(&["sweep", "--format", "csv"]));
    let b = stdout(&ewh(&["sweep", "--format", "csv", "--config", &exported]));
    assert_eq!(a, b);
}
