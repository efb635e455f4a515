//! Command-line front end: load a parameter file, run one command, render
//! the result as a table, CSV or JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{
    breakeven_distance, penalty_threshold, scenario_sweep, transfer_cost_curve, Strategy, SweepCell,
};
use crate::ccss::ReuseFraction;
use crate::config::{load_config, Config};
use crate::conversion::{ProductKind, ProductSpec};
use crate::economics::{total_daily_cost, ScenarioResult};
use crate::error::EwhError;
use crate::quantities::{units, CostKind, PlantSpec, Quantity};

/// Header of the sweep CSV. Column order is part of the output contract.
pub const SWEEP_CSV_HEADER: [&str; 9] = [
    "plant",
    "product",
    "beta",
    "capital_usd",
    "operational_usd_per_day",
    "revenue_usd_per_day",
    "daily_cost_usd_per_day",
    "increased_price_usd_per_kwh",
    "carbon_penalty_usd_per_ton",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    Scenario,
    Sweep,
    Breakeven,
    Curve,
    Penalty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

/// Flags accepted by the `ewh` binary.
#[derive(Debug, Parser)]
#[command(name = "ewh", version, about = "Energy-water-hydrogen nexus cost engine")]
pub struct Args {
    /// Command to run; may also be given with --command.
    #[arg(value_enum)]
    pub command_arg: Option<CommandName>,
    #[arg(long, value_enum)]
    pub command: Option<CommandName>,
    /// Parameter file (TOML). Defaults to the bundled paper-2024 preset.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub plant: Option<String>,
    #[arg(long)]
    pub product: Option<String>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Comma-separated distances in km.
    #[arg(long, value_delimiter = ',')]
    pub distances: Option<Vec<f64>>,
    /// Comma-separated water flows in m³/h.
    #[arg(long, value_delimiter = ',')]
    pub flows: Option<Vec<f64>>,
    /// Break-even bisection tolerance in km.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

/// Command-specific overrides of the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub plant: Option<String>,
    pub product: Option<String>,
    pub beta: Option<f64>,
    pub distances_km: Option<Vec<f64>>,
    pub flows_m3h: Option<Vec<f64>>,
    pub tolerance_km: Option<f64>,
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub config_path: Option<PathBuf>,
    pub command: CommandName,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub overrides: Overrides,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid configuration\n{0}")]
    Config(String),
    #[error("computation failed\n{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<EwhError> for CliError {
    fn from(e: EwhError) -> Self {
        match e {
            EwhError::Config(v) => CliError::Config(v.to_string()),
            EwhError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl Args {
    pub fn into_manifest(self) -> Result<RunManifest, CliError> {
        let command = match (self.command_arg, self.command) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::Usage("positional command and --command disagree".into()))
            }
            (Some(c), _) | (None, Some(c)) => c,
            (None, None) => return Err(CliError::Usage("no command given (scenario, sweep, breakeven, curve, penalty)".into())),
        };
        Ok(RunManifest {
            config_path: self.config,
            command,
            format: self.format,
            out: self.out,
            overrides: Overrides {
                plant: self.plant,
                product: self.product,
                beta: self.beta,
                distances_km: self.distances,
                flows_m3h: self.flows,
                tolerance_km: self.tolerance,
            },
        })
    }
}

/// Rendered output plus any per-cell failures.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub failures: Vec<String>,
}

/// Loads the config, runs the command and writes the output. Cell failures
/// still produce output for the cells that succeeded.
pub fn run(manifest: &RunManifest) -> Result<(), CliError> {
    let config = match &manifest.config_path {
        Some(p) => load_config(p)?,
        None => Config::paper_2024(),
    };
    let output = execute(manifest, &config)?;
    match &manifest.out {
        Some(path) => std::fs::write(path, &output.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(output.text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    if output.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(output.failures.join("\n")))
    }
}

/// Runs the command against an already validated config.
pub fn execute(manifest: &RunManifest, config: &Config) -> Result<Output, CliError> {
    let o = &manifest.overrides;
    let plants = select_plants(config, o.plant.as_deref())?;
    let product = o.product.as_deref().map(parse_product).transpose()?;
    let beta = o
        .beta
        .map(|b| ReuseFraction::new(b).map_err(|_| CliError::Config(format!("--beta: {b} outside [0, 1]"))))
        .transpose()?;
    if let Some(t) = o.tolerance_km {
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::Config(format!("--tolerance: {t} must be > 0 km")));
        }
    }
    let f = manifest.format;
    match manifest.command {
        CommandName::Scenario => scenario(config, o, product, beta, f),
        CommandName::Sweep => sweep(config, plants, product, beta, f),
        CommandName::Breakeven => breakeven(config, plants, product, beta, o.tolerance_km, f),
        CommandName::Curve => curve(config, o, product, f),
        CommandName::Penalty => penalty(config, plants, product, f),
    }
}

fn parse_product(name: &str) -> Result<ProductKind, CliError> {
    name.parse()
        .map_err(|_| CliError::Config(format!("--product: unknown product `{name}`")))
}

fn select_plants(config: &Config, name: Option<&str>) -> Result<Vec<PlantSpec>, CliError> {
    match name {
        None => Ok(config.plants.clone()),
        Some(n) => config
            .plant(n)
            .cloned()
            .map(|p| vec![p])
            .ok_or_else(|| CliError::Config(format!("--plant: unknown plant `{n}`"))),
    }
}

fn scenario(
    config: &Config,
    o: &Overrides,
    product: Option<ProductKind>,
    beta: Option<ReuseFraction>,
    format: OutputFormat,
) -> Result<Output, CliError> {
    let mut s = config.scenario_config();
    if let Some(name) = &o.plant {
        s.plant = config.plant(name).cloned().expect("checked in execute");
    }
    if let Some(k) = product {
        s.product = Some(ProductSpec::builtin(k));
    }
    if let Some(b) = beta {
        s.beta = b;
    }
    if let Some(k) = s.product {
        if s.econ.product_price(k.kind()).is_none() {
            return Err(CliError::Config(format!("economics.prices.{}: missing price", k.kind())));
        }
    }
    let r = total_daily_cost(&s)?;
    let product = s.product.map_or("none".to_string(), |p| p.kind().to_string());
    let text = match format {
        OutputFormat::Json => {
            let items: Vec<Value> = r
                .ledger
                .items()
                .iter()
                .map(|i| {
                    let (value, unit) = money(i.amount);
                    json!({"term": i.term, "kind": i.kind, "label": i.label, "value": value, "unit": unit})
                })
                .collect();
            let v = json!({
                "plant": s.plant.name(),
                "product": product,
                "beta": s.beta.value(),
                "water": s.water.label(),
                "items": items,
                "daily_cost_usd_per_day": r.daily_cost_usd_per_day(),
                "increased_price_usd_per_kwh": r.increased_price_usd_per_kwh(),
                "carbon_penalty_usd_per_ton": r.carbon_penalty_usd_per_ton(),
                "hydrogen_capital_usd": r.hydrogen_capital.canonical(),
            });
            pretty(&v)
        }
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["term", "kind", "label", "value", "unit"]).unwrap();
            for i in r.ledger.items() {
                let (value, unit) = money(i.amount);
                w.write_record([i.term.to_string(), kind(i.kind).into(), i.label.clone(), value.to_string(), unit.into()])
                    .unwrap();
            }
            for (name, value, unit) in metrics(&r) {
                w.write_record([name, "metric", name, &value.to_string(), unit]).unwrap();
            }
            csv_text(w)
        }
        OutputFormat::Table => {
            let mut t = format!(
                "plant {}  product {}  beta {}  water {}\n\n",
                s.plant.name(),
                product,
                s.beta.value(),
                s.water.label()
            );
            let mut rows = vec![vec!["term".into(), "kind".into(), "amount".into()]];
            for i in r.ledger.items() {
                let (value, unit) = money(i.amount);
                let unit = if unit == "usd" { "M$" } else { "M$/day" };
                rows.push(vec![i.term.to_string(), kind(i.kind).into(), format!("{} {unit}", sig4(value / 1e6))]);
            }
            t.push_str(&table(&rows));
            t.push('\n');
            let _ = writeln!(t, "daily cost        {} M$/day", sig4(r.daily_cost_usd_per_day() / 1e6));
            let _ = writeln!(t, "increased price   {:.4} $/kWh", r.increased_price_usd_per_kwh());
            let _ = writeln!(t, "carbon penalty    {:.2} $/ton", r.carbon_penalty_usd_per_ton());
            t
        }
    };
    Ok(Output { text, failures: vec![] })
}

fn metrics(r: &ScenarioResult) -> [(&'static str, f64, &'static str); 3] {
    [
        ("daily_cost", r.daily_cost_usd_per_day(), "usd_per_day"),
        ("increased_price", r.increased_price_usd_per_kwh(), "usd_per_kwh"),
        ("carbon_penalty", r.carbon_penalty_usd_per_ton(), "usd_per_ton"),
    ]
}

fn money(q: Quantity) -> (f64, &'static str) {
    match q.value_in(units::USD) {
        Ok(v) => (v, "usd"),
        Err(_) => (q.value_in(units::USD_PER_DAY).expect("ledger holds $ or $/day"), "usd_per_day"),
    }
}

fn kind(k: CostKind) -> &'static str {
    match k {
        CostKind::Capital => "capital",
        CostKind::Operational => "operational",
        CostKind::Revenue => "revenue",
    }
}

fn sweep(
    config: &Config,
    plants: Vec<PlantSpec>,
    product: Option<ProductKind>,
    beta: Option<ReuseFraction>,
    format: OutputFormat,
) -> Result<Output, CliError> {
    let mut products = config.sweep.products.clone();
    if let Some(k) = product {
        products = vec![k];
    }
    let betas = beta.map_or_else(|| config.sweep.betas.clone(), |b| vec![b]);
    let grid = crate::analysis::SweepGrid::new(
        plants,
        products.into_iter().map(ProductSpec::builtin).collect(),
        betas,
        config.sweep.water,
    )?;
    let cells = scenario_sweep(&grid, &config.econ);
    Ok(render_sweep(&cells, format))
}

/// Renders sweep cells; failed cells are listed in `failures` and left out
/// of the table.
pub fn render_sweep(cells: &[SweepCell], format: OutputFormat) -> Output {
    let mut failures = Vec::new();
    let mut ok = Vec::new();
    for c in cells {
        match &c.result {
            Ok(r) => ok.push((c, r)),
            Err(e) => failures.push(e.to_string()),
        }
    }
    let product = |c: &SweepCell| c.product.map_or("none".to_string(), |p| p.to_string());
    let text = match format {
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(SWEEP_CSV_HEADER).unwrap();
            for (c, r) in &ok {
                w.write_record([
                    c.plant.clone(),
                    product(c),
                    c.beta.to_string(),
                    r.capital_usd().to_string(),
                    r.operational_usd_per_day().to_string(),
                    r.revenue_usd_per_day().to_string(),
                    r.daily_cost_usd_per_day().to_string(),
                    r.increased_price_usd_per_kwh().to_string(),
                    r.carbon_penalty_usd_per_ton().to_string(),
                ])
                .unwrap();
            }
            csv_text(w)
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = ok
                .iter()
                .map(|(c, r)| {
                    json!({
                        "plant": c.plant,
                        "product": c.product,
                        "beta": c.beta,
                        "capital_usd": r.capital_usd(),
                        "operational_usd_per_day": r.operational_usd_per_day(),
                        "revenue_usd_per_day": r.revenue_usd_per_day(),
                        "daily_cost_usd_per_day": r.daily_cost_usd_per_day(),
                        "increased_price_usd_per_kwh": r.increased_price_usd_per_kwh(),
                        "carbon_penalty_usd_per_ton": r.carbon_penalty_usd_per_ton(),
                    })
                })
                .collect();
            pretty(&json!({ "rows": rows, "failures": failures }))
        }
        OutputFormat::Table => {
            let mut rows = vec![[
                "plant",
                "product",
                "beta",
                "capital M$",
                "daily cost M$/day",
                "price +$/kWh",
                "penalty $/ton",
            ]
            .map(String::from)
            .to_vec()];
            for (c, r) in &ok {
                rows.push(vec![
                    c.plant.clone(),
                    product(c),
                    c.beta.to_string(),
                    sig4(r.capital_usd() / 1e6),
                    sig4(r.daily_cost_usd_per_day() / 1e6),
                    format!("{:.2}", r.increased_price_usd_per_kwh()),
                    format!("{:.2}", r.carbon_penalty_usd_per_ton()),
                ]);
            }
            table(&rows)
        }
    };
    Output { text, failures }
}

fn breakeven(
    config: &Config,
    plants: Vec<PlantSpec>,
    product: Option<ProductKind>,
    beta: Option<ReuseFraction>,
    tolerance_km: Option<f64>,
    format: OutputFormat,
) -> Result<Output, CliError> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for plant in &plants {
        let mut q = config.breakeven_query(plant);
        if let Some(k) = product {
            q.product = ProductSpec::builtin(k);
        }
        if let Some(b) = beta {
            q = q.with_beta(b);
        }
        if let Some(t) = tolerance_km {
            q = q.with_tolerance(Quantity::new(t, units::KM).map_err(EwhError::from)?)?;
        }
        match breakeven_distance(&q, &config.econ) {
            Ok(d) => rows.push((plant.name().to_string(), q.product.kind(), q.beta.value(), d.value_in(units::KM).unwrap())),
            Err(e) => failures.push(format!("plant {}: {e}", plant.name())),
        }
    }
    let text = match format {
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["plant", "product", "beta", "breakeven_km"]).unwrap();
            for (p, k, b, d) in &rows {
                w.write_record([p.clone(), k.to_string(), b.to_string(), d.to_string()]).unwrap();
            }
            csv_text(w)
        }
        OutputFormat::Json => pretty(&json!({
            "rows": rows.iter().map(|(p, k, b, d)| json!({"plant": p, "product": k, "beta": b, "breakeven_km": d})).collect::<Vec<_>>(),
            "failures": failures,
        })),
        OutputFormat::Table => {
            let mut t = vec![vec!["plant".into(), "product".into(), "beta".into(), "break-even km".into()]];
            for (p, k, b, d) in &rows {
                t.push(vec![p.clone(), k.to_string(), b.to_string(), format!("{d:.1}")]);
            }
            table(&t)
        }
    };
    Ok(Output { text, failures })
}

fn curve(config: &Config, o: &Overrides, product: Option<ProductKind>, format: OutputFormat) -> Result<Output, CliError> {
    let plant = config
        .plant(o.plant.as_deref().unwrap_or(&config.curve.plant))
        .expect("validated plant")
        .clone();
    let product = ProductSpec::builtin(product.unwrap_or(config.curve.product));
    let to_q = |v: &[f64], unit| {
        v.iter()
            .map(|&x| Quantity::new(x, unit).map_err(|e| CliError::Config(e.to_string())))
            .collect::<Result<Vec<_>, _>>()
    };
    let distances = match &o.distances_km {
        Some(d) => to_q(d, units::KM)?,
        None => config.curve.distances.clone(),
    };
    let flows = match &o.flows_m3h {
        Some(f) => to_q(f, units::CUBIC_METER_PER_HOUR)?,
        None => config.curve.flows.clone(),
    };
    let cells = transfer_cost_curve(&plant, &product, &distances, &flows, &config.econ)?;
    let mut failures = Vec::new();
    let mut ok = Vec::new();
    for c in &cells {
        match &c.point {
            Ok(p) => ok.push((c.distance_km, c.flow_m3h, *p)),
            Err(e) => failures.push(format!("cell (distance {} km, flow {} m³/h): {e}", c.distance_km, c.flow_m3h)),
        }
    }
    let text = match format {
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record([
                "plant",
                "product",
                "distance_km",
                "flow_m3_per_h",
                "capital_usd_per_day",
                "operational_usd_per_day",
                "total_usd_per_day",
            ])
            .unwrap();
            for (d, f, p) in &ok {
                w.write_record([
                    plant.name().to_string(),
                    product.kind().to_string(),
                    d.to_string(),
                    f.to_string(),
                    p.capital_usd_per_day.to_string(),
                    p.operational_usd_per_day.to_string(),
                    p.total_usd_per_day.to_string(),
                ])
                .unwrap();
            }
            csv_text(w)
        }
        OutputFormat::Json => pretty(&json!({
            "plant": plant.name(),
            "product": product.kind(),
            "cells": ok.iter().map(|(d, f, p)| json!({
                "distance_km": d,
                "flow_m3_per_h": f,
                "capital_usd_per_day": p.capital_usd_per_day,
                "operational_usd_per_day": p.operational_usd_per_day,
                "total_usd_per_day": p.total_usd_per_day,
            })).collect::<Vec<_>>(),
            "failures": failures,
        })),
        OutputFormat::Table => {
            let mut t = vec![["distance km", "flow m³/h", "capital $/day", "energy $/day", "total $/day"]
                .map(String::from)
                .to_vec()];
            for (d, f, p) in &ok {
                t.push(vec![
                    d.to_string(),
                    f.to_string(),
                    format!("{:.0}", p.capital_usd_per_day),
                    format!("{:.0}", p.operational_usd_per_day),
                    format!("{:.0}", p.total_usd_per_day),
                ]);
            }
            table(&t)
        }
    };
    Ok(Output { text, failures })
}

fn penalty(
    config: &Config,
    plants: Vec<PlantSpec>,
    product: Option<ProductKind>,
    format: OutputFormat,
) -> Result<Output, CliError> {
    let products = product.map_or_else(|| config.sweep.products.clone(), |k| vec![k]);
    let mut strategies = vec![Strategy::StoreAll];
    strategies.extend(products.into_iter().map(|k| Strategy::ReuseAll(ProductSpec::builtin(k))));
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for plant in &plants {
        for &s in &strategies {
            match penalty_threshold(plant, s, &config.econ) {
                Ok(q) => rows.push((plant.name().to_string(), s.to_string(), q.value_in(units::USD_PER_TON).unwrap())),
                Err(e) => failures.push(format!("plant {}, {s}: {e}", plant.name())),
            }
        }
    }
    let text = match format {
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["plant", "strategy", "penalty_threshold_usd_per_ton"]).unwrap();
            for (p, s, v) in &rows {
                w.write_record([p.clone(), s.clone(), v.to_string()]).unwrap();
            }
            csv_text(w)
        }
        OutputFormat::Json => pretty(&json!({
            "rows": rows.iter().map(|(p, s, v)| json!({"plant": p, "strategy": s, "penalty_threshold_usd_per_ton": v})).collect::<Vec<_>>(),
            "failures": failures,
        })),
        OutputFormat::Table => {
            let mut t = vec![vec!["plant".into(), "strategy".into(), "threshold $/ton".into()]];
            for (p, s, v) in &rows {
                t.push(vec![p.clone(), s.clone(), format!("{v:.2}")]);
            }
            table(&t)
        }
    };
    Ok(Output { text, failures })
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// Four significant digits, fixed notation.
pub fn sig4(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.3}");
    }
    let mut digits = x.abs().log10().floor() as i32;
    // rounding may carry into a new leading digit, e.g. 9.9996 -> 10.00
    let scale = 10f64.powi(3 - digits);
    if ((x.abs() * scale).round() / scale).log10().floor() as i32 > digits {
        digits += 1;
    }
    let decimals = (3 - digits).max(0) as usize;
    format!("{x:.decimals$}")
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                let pad = widths[c] - s.chars().count();
                if c == 0 {
                    format!("{s}{}", " ".repeat(pad))
                } else {
                    format!("{}{s}", " ".repeat(pad))
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if i == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * cols.saturating_sub(1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }
    out
}
