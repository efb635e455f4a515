//! TOML parameter files. Every quantity is written as a `"value unit"`
//! string and dimension-checked on load; unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{BreakevenQuery, SweepGrid};
use crate::ccss::ReuseFraction;
use crate::conversion::{ProductKind, ProductSpec};
use crate::economics::ScenarioConfig;
use crate::error::{EwhError, Issue, ValidationErrors};
use crate::quantities::{units, EconParams, EconParamsBuilder, PlantSpec, Quantity, Unit};
use crate::water::WaterSupplyMode;

const PAPER_2024: &str = include_str!("../presets/paper-2024.toml");

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    economics: RawEconomics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    plants: Vec<RawPlant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scenario: Option<RawScenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<RawSweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    breakeven: Option<RawBreakeven>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    curve: Option<RawCurve>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEconomics {
    elec_price: Option<String>,
    r_cts: Option<String>,
    r_ccs: Option<String>,
    c_cts: Option<String>,
    c_ccs: Option<String>,
    c_wind: Option<String>,
    c_des: Option<String>,
    c_tw: Option<String>,
    c_sw: Option<String>,
    c_we: Option<String>,
    xi_p: Option<String>,
    wind_capacity_factor: Option<f64>,
    eta_pump: Option<f64>,
    r_w: Option<String>,
    r_w_reference_distance: Option<String>,
    e_des: Option<Vec<String>>,
    interest_rate: Option<f64>,
    horizon_years: Option<i64>,
    capture_efficiency: Option<f64>,
    include_hydrogen_capital: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    prices: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlant {
    name: String,
    capacity: String,
    emission_factor: String,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    plant: Option<String>,
    product: Option<String>,
    beta: Option<f64>,
    water: Option<String>,
    distance: Option<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    products: Option<Vec<String>>,
    betas: Option<Vec<f64>>,
    water: Option<String>,
    distance: Option<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBreakeven {
    product: Option<String>,
    beta: Option<f64>,
    d_lo: Option<String>,
    d_hi: Option<String>,
    tolerance: Option<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    plant: Option<String>,
    product: Option<String>,
    distances: Option<Vec<String>>,
    flows: Option<Vec<String>>,
}

/// Single-scenario settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSection {
    pub plant: String,
    pub product: Option<ProductKind>,
    pub beta: ReuseFraction,
    pub water: WaterSupplyMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSection {
    pub products: Vec<ProductKind>,
    pub betas: Vec<ReuseFraction>,
    pub water: WaterSupplyMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreakevenSection {
    pub product: ProductKind,
    pub beta: ReuseFraction,
    pub d_lo: Quantity,
    pub d_hi: Quantity,
    pub tolerance: Quantity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSection {
    pub plant: String,
    pub product: ProductKind,
    pub distances: Vec<Quantity>,
    pub flows: Vec<Quantity>,
}

/// A fully validated parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub econ: EconParams,
    pub plants: Vec<PlantSpec>,
    pub scenario: ScenarioSection,
    pub sweep: SweepSection,
    pub breakeven: BreakevenSection,
    pub curve: CurveSection,
}

/// Reads and validates a config file, reporting every problem at once.
pub fn load_config(path: impl AsRef<Path>) -> Result<Config, EwhError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| EwhError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Config::from_toml_str(&text)?)
}

struct Resolver {
    issues: Vec<Issue>,
}

impl Resolver {
    fn issue(&mut self, key: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue::new(key, message));
    }

    fn quantity(&mut self, key: &str, text: &str, unit: Unit, label: &str) -> Option<Quantity> {
        match Quantity::parse(text) {
            Err(e) => {
                self.issue(key, format!("{e} (expected unit {label})"));
                None
            }
            Ok(q) if q.dimension() != unit.dimension() => {
                self.issue(key, format!("unit mismatch: expected {label}, found {}", q.dimension()));
                None
            }
            Ok(q) => Some(q),
        }
    }

    /// Parses without a dimension check; the parameter builder does that.
    fn any_quantity(&mut self, key: &str, text: Option<&String>) -> Option<Quantity> {
        let text = text?;
        match Quantity::parse(text) {
            Ok(q) => Some(q),
            Err(e) => {
                self.issue(key, e.to_string());
                None
            }
        }
    }

    fn beta(&mut self, key: &str, v: f64) -> Option<ReuseFraction> {
        match ReuseFraction::new(v) {
            Ok(b) => Some(b),
            Err(_) => {
                self.issue(key, format!("{v} outside [0, 1]"));
                None
            }
        }
    }

    fn product(&mut self, key: &str, name: &str) -> Option<ProductKind> {
        match name.parse() {
            Ok(k) => Some(k),
            Err(_) => {
                self.issue(key, format!("unknown product `{name}` (expected methane, methanol or ethanol)"));
                None
            }
        }
    }

    fn water(&mut self, prefix: &str, mode: Option<&str>, distance: Option<&String>) -> Option<WaterSupplyMode> {
        match mode.unwrap_or("desalination") {
            "desalination" => Some(WaterSupplyMode::Desalination),
            "solar_seawater" => Some(WaterSupplyMode::SolarSeawater),
            "transfer" => {
                let key = format!("{prefix}.distance");
                let Some(text) = distance else {
                    self.issue(key, "missing required key for transfer water (expected unit km)");
                    return None;
                };
                let d = self.quantity(&key, text, units::KM, "km")?;
                match WaterSupplyMode::transfer(d.value_in(units::KM).ok()?) {
                    Ok(m) => Some(m),
                    Err(e) => {
                        self.issue(key, e.to_string());
                        None
                    }
                }
            }
            other => {
                self.issue(
                    format!("{prefix}.water"),
                    format!("unknown water mode `{other}` (expected desalination, transfer or solar_seawater)"),
                );
                None
            }
        }
    }
}

impl Config {
    /// The calibrated preset shipped with the crate.
    pub fn paper_2024() -> Config {
        Config::from_toml_str(PAPER_2024).expect("bundled preset is valid")
    }

    pub fn paper_2024_toml() -> &'static str {
        PAPER_2024
    }

    pub fn from_toml_str(text: &str) -> Result<Config, ValidationErrors> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| ValidationErrors(vec![Issue::new("<config>", e.to_string().trim())]))?;
        resolve(raw)
    }

    pub fn plant(&self, name: &str) -> Option<&PlantSpec> {
        self.plants.iter().find(|p| p.name() == name)
    }

    pub fn scenario_config(&self) -> ScenarioConfig {
        let plant = self.plant(&self.scenario.plant).expect("validated plant").clone();
        ScenarioConfig {
            plant,
            product: self.scenario.product.map(ProductSpec::builtin),
            beta: self.scenario.beta,
            water: self.scenario.water,
            econ: self.econ.clone(),
            capture: None,
        }
    }

    pub fn sweep_grid(&self) -> SweepGrid {
        SweepGrid::new(
            self.plants.clone(),
            self.sweep.products.iter().map(|&k| ProductSpec::builtin(k)).collect(),
            self.sweep.betas.clone(),
            self.sweep.water,
        )
        .expect("validated sweep axes")
    }

    pub fn breakeven_query(&self, plant: &PlantSpec) -> BreakevenQuery {
        let b = &self.breakeven;
        BreakevenQuery::new(plant.clone(), ProductSpec::builtin(b.product))
            .with_beta(b.beta)
            .with_bounds(b.d_lo, b.d_hi)
            .and_then(|q| q.with_tolerance(b.tolerance))
            .expect("validated break-even settings")
    }

    /// Writes the resolved configuration with every quantity in canonical
    /// units, so that loading it back reproduces the same values bit for bit.
    pub fn to_toml(&self) -> String {
        let e = &self.econ;
        let s = |q: Quantity| q.to_canonical_string();
        let water = |m: WaterSupplyMode| {
            let d = match m {
                WaterSupplyMode::NetworkTransfer { distance } => Some(s(distance)),
                _ => None,
            };
            (Some(m.label().to_string()), d)
        };
        let (sc_water, sc_dist) = water(self.scenario.water);
        let (sw_water, sw_dist) = water(self.sweep.water);
        let raw = RawConfig {
            economics: RawEconomics {
                elec_price: Some(s(e.elec_price())),
                r_cts: Some(s(e.r_cts())),
                r_ccs: Some(s(e.r_ccs())),
                c_cts: Some(s(e.c_cts())),
                c_ccs: Some(s(e.c_ccs())),
                c_wind: Some(s(e.c_wind())),
                c_des: Some(s(e.c_des())),
                c_tw: Some(s(e.pipe_cost().quantity())),
                c_sw: e.c_sw().map(s),
                c_we: Some(s(e.c_we())),
                xi_p: Some(s(e.xi_p())),
                wind_capacity_factor: Some(e.wind_capacity_factor()),
                eta_pump: Some(e.eta_pump()),
                r_w: Some(s(e.r_w())),
                r_w_reference_distance: Some(s(e.r_w_reference_distance())),
                e_des: Some(e.e_des().iter().map(|&q| s(q)).collect()),
                interest_rate: Some(e.interest_rate()),
                horizon_years: Some(e.horizon_years() as i64),
                capture_efficiency: Some(e.capture_efficiency()),
                include_hydrogen_capital: Some(e.include_hydrogen_capital()),
                prices: e.product_prices().iter().map(|(k, &q)| (k.to_string(), s(q))).collect(),
            },
            plants: self
                .plants
                .iter()
                .map(|p| RawPlant {
                    name: p.name().to_string(),
                    capacity: s(p.capacity()),
                    emission_factor: s(p.emission_factor()),
                })
                .collect(),
            scenario: Some(RawScenario {
                plant: Some(self.scenario.plant.clone()),
                product: self.scenario.product.map(|k| k.to_string()),
                beta: Some(self.scenario.beta.value()),
                water: sc_water,
                distance: sc_dist,
            }),
            sweep: Some(RawSweep {
                products: Some(self.sweep.products.iter().map(|k| k.to_string()).collect()),
                betas: Some(self.sweep.betas.iter().map(|b| b.value()).collect()),
                water: sw_water,
                distance: sw_dist,
            }),
            breakeven: Some(RawBreakeven {
                product: Some(self.breakeven.product.to_string()),
                beta: Some(self.breakeven.beta.value()),
                d_lo: Some(s(self.breakeven.d_lo)),
                d_hi: Some(s(self.breakeven.d_hi)),
                tolerance: Some(s(self.breakeven.tolerance)),
            }),
            curve: Some(RawCurve {
                plant: Some(self.curve.plant.clone()),
                product: Some(self.curve.product.to_string()),
                distances: Some(self.curve.distances.iter().map(|&q| s(q)).collect()),
                flows: Some(self.curve.flows.iter().map(|&q| s(q)).collect()),
            }),
        };
        toml::to_string(&raw).expect("config serialises")
    }
}

fn resolve(raw: RawConfig) -> Result<Config, ValidationErrors> {
    let mut r = Resolver { issues: Vec::new() };
    let econ = resolve_econ(&mut r, &raw.economics);

    let mut plants = Vec::new();
    if raw.plants.is_empty() {
        plants = PlantSpec::presets();
    }
    for (i, p) in raw.plants.iter().enumerate() {
        let key = format!("plants[{i}]");
        let cap = r.quantity(&format!("{key}.capacity"), &p.capacity, units::KW, "kW");
        let ef = r.quantity(&format!("{key}.emission_factor"), &p.emission_factor, units::KG_PER_KWH, "kg/kWh");
        if let (Some(cap), Some(ef)) = (cap, ef) {
            match PlantSpec::new(p.name.clone(), cap, ef) {
                Ok(plant) if plants.iter().any(|q: &PlantSpec| q.name() == plant.name()) => {
                    r.issue(format!("{key}.name"), format!("duplicate plant `{}`", p.name));
                }
                Ok(plant) => plants.push(plant),
                Err(e) => r.issue(key, e.to_string()),
            }
        }
    }
    let first_plant = plants.first().map(|p| p.name().to_string()).unwrap_or_default();
    let known_plant = |r: &mut Resolver, key: &str, name: &str| {
        if !plants.iter().any(|p| p.name() == name) {
            r.issue(key, format!("unknown plant `{name}`"));
        }
    };

    let sc = raw.scenario.unwrap_or_default();
    let scenario_plant = sc.plant.clone().unwrap_or_else(|| first_plant.clone());
    known_plant(&mut r, "scenario.plant", &scenario_plant);
    let sc_product = sc.product.as_deref().and_then(|p| r.product("scenario.product", p));
    let sc_beta = r.beta("scenario.beta", sc.beta.unwrap_or(0.0));
    let sc_water = r.water("scenario", sc.water.as_deref(), sc.distance.as_ref());
    if let Some(b) = sc_beta {
        if b.value() > 0.0 && sc.product.is_none() {
            r.issue("scenario.product", "required when beta > 0");
        }
    }

    let sw = raw.sweep.unwrap_or_default();
    let sw_products = match &sw.products {
        None => ProductKind::ALL.to_vec(),
        Some(list) => list
            .iter()
            .enumerate()
            .filter_map(|(i, p)| r.product(&format!("sweep.products[{i}]"), p))
            .collect(),
    };
    let sw_betas: Vec<ReuseFraction> = sw
        .betas
        .clone()
        .unwrap_or_else(|| vec![0.5, 1.0])
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| r.beta(&format!("sweep.betas[{i}]"), b))
        .collect();
    if sw.betas.as_ref().is_some_and(|b| b.is_empty()) {
        r.issue("sweep.betas", "must not be empty");
    }
    let sw_water = r.water("sweep", sw.water.as_deref(), sw.distance.as_ref());

    let be = raw.breakeven.unwrap_or_default();
    let be_product = r.product("breakeven.product", be.product.as_deref().unwrap_or("methane"));
    let be_beta = r.beta("breakeven.beta", be.beta.unwrap_or(1.0));
    let km = |r: &mut Resolver, key: &str, v: &Option<String>, default: &str| {
        r.quantity(key, v.as_deref().unwrap_or(default), units::KM, "km")
    };
    let d_lo = km(&mut r, "breakeven.d_lo", &be.d_lo, "1 km");
    let d_hi = km(&mut r, "breakeven.d_hi", &be.d_hi, "1000 km");
    let tolerance = km(&mut r, "breakeven.tolerance", &be.tolerance, "0.5 km");
    if let (Some(lo), Some(hi)) = (d_lo, d_hi) {
        if !(lo.canonical() >= 0.0 && lo.canonical() < hi.canonical()) {
            r.issue("breakeven.d_lo", "bounds need 0 <= d_lo < d_hi");
        }
    }
    if tolerance.is_some_and(|t| t.canonical() <= 0.0) {
        r.issue("breakeven.tolerance", "must be > 0");
    }

    let cv = raw.curve.unwrap_or_default();
    let curve_plant = cv.plant.clone().unwrap_or_else(|| first_plant.clone());
    known_plant(&mut r, "curve.plant", &curve_plant);
    let curve_product = r.product("curve.product", cv.product.as_deref().unwrap_or("methane"));
    let list = |r: &mut Resolver, key: &str, v: &Option<Vec<String>>, default: &[&str], unit: Unit, label: &str| {
        let items: Vec<String> = match v {
            Some(v) => v.clone(),
            None => default.iter().map(|s| s.to_string()).collect(),
        };
        if items.is_empty() {
            r.issue(key, "must not be empty");
        }
        items
            .iter()
            .enumerate()
            .filter_map(|(i, t)| r.quantity(&format!("{key}[{i}]"), t, unit, label))
            .collect::<Vec<_>>()
    };
    let distances = list(&mut r, "curve.distances", &cv.distances, &["60 km", "260 km", "300 km"], units::KM, "km");
    let flows = list(
        &mut r,
        "curve.flows",
        &cv.flows,
        &["0 m³/h", "45 m³/h", "90 m³/h", "135 m³/h", "180 m³/h"],
        units::CUBIC_METER_PER_HOUR,
        "m³/h",
    );

    // Settings that only fail at evaluation time are checked here, so no
    // computation starts on a config that cannot finish.
    if let Some(econ) = &econ {
        let needs_c_sw = [sc_water, sw_water].contains(&Some(WaterSupplyMode::SolarSeawater));
        if needs_c_sw && econ.c_sw().is_none() {
            r.issue("economics.c_sw", "missing required key for solar_seawater water (expected unit $/(m³/h))");
        }
        let mut priced: Vec<ProductKind> = sw_products.clone();
        priced.extend(sc_product);
        priced.extend(be_product);
        priced.sort();
        priced.dedup();
        for k in priced {
            if econ.product_price(k).is_none() {
                r.issue(format!("economics.prices.{k}"), "missing price (expected unit $/ton)");
            }
        }
    }

    if !r.issues.is_empty() {
        return Err(ValidationErrors(r.issues));
    }
    Ok(Config {
        econ: econ.expect("no issues"),
        plants,
        scenario: ScenarioSection {
            plant: scenario_plant,
            product: sc_product,
            beta: sc_beta.unwrap(),
            water: sc_water.unwrap(),
        },
        sweep: SweepSection {
            products: sw_products,
            betas: sw_betas,
            water: sw_water.unwrap(),
        },
        breakeven: BreakevenSection {
            product: be_product.unwrap(),
            beta: be_beta.unwrap(),
            d_lo: d_lo.unwrap(),
            d_hi: d_hi.unwrap(),
            tolerance: tolerance.unwrap(),
        },
        curve: CurveSection {
            plant: curve_plant,
            product: curve_product.unwrap(),
            distances,
            flows,
        },
    })
}

fn resolve_econ(r: &mut Resolver, e: &RawEconomics) -> Option<EconParams> {
    let q = |r: &mut Resolver, key: &str, v: &Option<String>| r.any_quantity(&format!("economics.{key}"), v.as_ref());
    let mut b = EconParamsBuilder {
        elec_price: q(r, "elec_price", &e.elec_price),
        r_cts: q(r, "r_cts", &e.r_cts),
        r_ccs: q(r, "r_ccs", &e.r_ccs),
        c_cts: q(r, "c_cts", &e.c_cts),
        c_ccs: q(r, "c_ccs", &e.c_ccs),
        c_wind: q(r, "c_wind", &e.c_wind),
        c_des: q(r, "c_des", &e.c_des),
        c_tw: q(r, "c_tw", &e.c_tw),
        c_sw: q(r, "c_sw", &e.c_sw),
        c_we: q(r, "c_we", &e.c_we),
        xi_p: q(r, "xi_p", &e.xi_p),
        wind_capacity_factor: e.wind_capacity_factor,
        eta_pump: e.eta_pump,
        r_w: q(r, "r_w", &e.r_w),
        r_w_reference_distance: q(r, "r_w_reference_distance", &e.r_w_reference_distance),
        e_des: None,
        interest_rate: e.interest_rate,
        horizon_years: None,
        capture_efficiency: e.capture_efficiency,
        include_hydrogen_capital: e.include_hydrogen_capital,
        product_prices: BTreeMap::new(),
    };
    let before = r.issues.len();
    if let Some(list) = &e.e_des {
        let parsed: Vec<Option<Quantity>> = list
            .iter()
            .enumerate()
            .map(|(i, t)| r.any_quantity(&format!("economics.e_des[{i}]"), Some(t)))
            .collect();
        b.e_des = parsed.into_iter().collect();
    }
    if let Some(n) = e.horizon_years {
        match u32::try_from(n) {
            Ok(n) => b.horizon_years = Some(n),
            Err(_) => r.issue("economics.horizon_years", format!("{n} must be >= 1")),
        }
    }
    for (name, text) in &e.prices {
        let key = format!("economics.prices.{name}");
        if let Some(kind) = r.product(&key, name) {
            if let Some(q) = r.any_quantity(&key, Some(text)) {
                b.product_prices.insert(kind, q);
            }
        }
    }
    let parse_failed = r.issues.len() > before;
    match b.build() {
        Ok(p) if !parse_failed => Some(p),
        Ok(_) => None,
        Err(ValidationErrors(issues)) => {
            // parse failures already reported; keep the builder's other findings
            for i in issues {
                if !r.issues.iter().any(|x| x.key == i.key) {
                    r.issues.push(i);
                }
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with(edit: impl Fn(&mut String)) -> Result<Config, ValidationErrors> {
        let mut text = PAPER_2024.to_string();
        edit(&mut text);
        Config::from_toml_str(&text)
    }

    #[test]
    fn preset_loads() {
        let c = Config::paper_2024();
        assert_eq!(c.plants.len(), 3);
        assert_eq!(c.econ.horizon_years(), 20);
    }

    #[test]
    fn beta_out_of_range_names_bound() {
        let err = with(|t| t.push_str("\n[scenario]\nbeta = 1.2\nproduct = \"methane\"\n")).unwrap_err();
        let issue = err.0.iter().find(|i| i.key == "scenario.beta").unwrap();
        assert!(issue.message.contains("[0, 1]"), "{issue}");
    }

    #[test]
    fn unknown_key_rejected() {
        let err = with(|t| *t = t.replace("[economics]", "[economics]\nelec_prise = \"1 $/kWh\"")).unwrap_err();
        assert!(err.to_string().contains("elec_prise"), "{err}");
    }

    #[test]
    fn xi_p_override_reaches_engine() {
        let c = with(|t| *t = t.replace("xi_p = \"52.5 kWh/kg\"", "xi_p = \"50 kWh/kg\"")).unwrap();
        assert_eq!(c.econ.xi_p().value_in(units::KWH_PER_KG).unwrap(), 50.0);
    }

    #[test]
    fn all_problems_reported_together() {
        let err = with(|t| {
            *t = t
                .replace("elec_price = \"0.25 $/kWh\"", "elec_price = \"0.25 $/kg\"")
                .replace("eta_pump = 0.9", "eta_pump = 1.9");
            t.push_str("\n[scenario]\nwater = \"solar_seawater\"\n");
        })
        .unwrap_err();
        let keys: Vec<&str> = err.0.iter().map(|i| i.key.as_str()).collect();
        assert!(keys.contains(&"economics.elec_price"), "{keys:?}");
        assert!(keys.contains(&"economics.eta_pump"), "{keys:?}");
    }

    #[test]
    fn solar_needs_c_sw() {
        let err = with(|t| t.push_str("\n[scenario]\nwater = \"solar_seawater\"\n")).unwrap_err();
        assert!(err.0.iter().any(|i| i.key == "economics.c_sw"), "{err}");
    }

    #[test]
    fn export_round_trips_bit_for_bit() {
        let c = Config::paper_2024();
        let text = c.to_toml();
        let back = Config::from_toml_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_toml(), text);
    }
}
