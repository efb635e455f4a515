use std::collections::BTreeMap;

use super::unit::{units, Quantity, Unit};
use crate::conversion::ProductKind;
use crate::error::{Issue, ValidationErrors};

/// Default specific energy of the four desalination load segments, kWh/m³.
pub const DEFAULT_E_DES: [f64; 4] = [3.5, 3.8, 4.1, 4.4];

const DEFAULT_XI_P: f64 = 52.5;
const DEFAULT_WIND_CF: f64 = 0.423;
const DEFAULT_C_WE: f64 = 500.0;
const DEFAULT_R_W: f64 = 2.0e-4;
const DEFAULT_R_W_REFERENCE_KM: f64 = 100.0;
const DEFAULT_HORIZON: u32 = 20;
const DEFAULT_INTEREST: f64 = 0.05;

/// Capital cost basis of the water-transfer pipe, selected by the unit of
/// the configured rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PipeCost {
    /// `$ / m`: pipe capital is `c_tw · d`.
    PerMeter(Quantity),
    /// `$ / (m · m³/h)`: pipe capital is `W̄ · c_tw · d`.
    PerCapacityMeter(Quantity),
}

impl PipeCost {
    pub fn from_quantity(q: Quantity) -> Option<PipeCost> {
        let per_m = units::USD_PER_METER.dimension();
        let per_cap_m = per_m.div(units::CUBIC_METER_PER_HOUR.dimension());
        match q.dimension() {
            d if d == per_m => Some(PipeCost::PerMeter(q)),
            d if d == per_cap_m => Some(PipeCost::PerCapacityMeter(q)),
            _ => None,
        }
    }

    pub fn quantity(&self) -> Quantity {
        match *self {
            PipeCost::PerMeter(q) | PipeCost::PerCapacityMeter(q) => q,
        }
    }
}

/// Prices, unit costs and financial assumptions. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct EconParams {
    elec_price: Quantity,
    r_cts: Quantity,
    r_ccs: Quantity,
    c_cts: Quantity,
    c_ccs: Quantity,
    c_wind: Quantity,
    c_des: Quantity,
    pipe: PipeCost,
    c_sw: Option<Quantity>,
    c_we: Quantity,
    xi_p: Quantity,
    wind_capacity_factor: f64,
    eta_pump: f64,
    r_w: Quantity,
    r_w_reference_distance: Quantity,
    e_des: [Quantity; 4],
    interest_rate: f64,
    horizon_years: u32,
    capture_efficiency: f64,
    include_hydrogen_capital: bool,
    product_prices: BTreeMap<ProductKind, Quantity>,
}

impl EconParams {
    /// The calibrated parameter set shipped as `presets/paper-2024.toml`.
    pub fn paper_2024() -> EconParams {
        crate::config::Config::paper_2024().econ
    }

    pub fn to_builder(&self) -> EconParamsBuilder {
        EconParamsBuilder {
            elec_price: Some(self.elec_price),
            r_cts: Some(self.r_cts),
            r_ccs: Some(self.r_ccs),
            c_cts: Some(self.c_cts),
            c_ccs: Some(self.c_ccs),
            c_wind: Some(self.c_wind),
            c_des: Some(self.c_des),
            c_tw: Some(self.pipe.quantity()),
            c_sw: self.c_sw,
            c_we: Some(self.c_we),
            xi_p: Some(self.xi_p),
            wind_capacity_factor: Some(self.wind_capacity_factor),
            eta_pump: Some(self.eta_pump),
            r_w: Some(self.r_w),
            r_w_reference_distance: Some(self.r_w_reference_distance),
            e_des: Some(self.e_des.to_vec()),
            interest_rate: Some(self.interest_rate),
            horizon_years: Some(self.horizon_years),
            capture_efficiency: Some(self.capture_efficiency),
            include_hydrogen_capital: Some(self.include_hydrogen_capital),
            product_prices: self.product_prices.clone(),
        }
    }

    pub fn elec_price(&self) -> Quantity {
        self.elec_price
    }
    pub fn r_cts(&self) -> Quantity {
        self.r_cts
    }
    pub fn r_ccs(&self) -> Quantity {
        self.r_ccs
    }
    pub fn c_cts(&self) -> Quantity {
        self.c_cts
    }
    pub fn c_ccs(&self) -> Quantity {
        self.c_ccs
    }
    pub fn c_wind(&self) -> Quantity {
        self.c_wind
    }
    pub fn c_des(&self) -> Quantity {
        self.c_des
    }
    pub fn pipe_cost(&self) -> PipeCost {
        self.pipe
    }
    pub fn c_sw(&self) -> Option<Quantity> {
        self.c_sw
    }
    pub fn c_we(&self) -> Quantity {
        self.c_we
    }
    pub fn xi_p(&self) -> Quantity {
        self.xi_p
    }
    pub fn wind_capacity_factor(&self) -> f64 {
        self.wind_capacity_factor
    }
    pub fn eta_pump(&self) -> f64 {
        self.eta_pump
    }
    /// Head-loss coefficient at [`EconParams::r_w_reference_distance`].
    pub fn r_w(&self) -> Quantity {
        self.r_w
    }
    pub fn r_w_reference_distance(&self) -> Quantity {
        self.r_w_reference_distance
    }
    /// Head-loss coefficient of a pipe of length `distance`; friction head
    /// grows linearly with length.
    pub fn r_w_at(&self, distance: Quantity) -> Quantity {
        let ratio = distance.canonical() / self.r_w_reference_distance.canonical();
        self.r_w.scale(ratio).expect("finite head-loss coefficient")
    }
    pub fn e_des(&self) -> &[Quantity; 4] {
        &self.e_des
    }
    pub fn interest_rate(&self) -> f64 {
        self.interest_rate
    }
    pub fn horizon_years(&self) -> u32 {
        self.horizon_years
    }
    pub fn capture_efficiency(&self) -> f64 {
        self.capture_efficiency
    }
    pub fn include_hydrogen_capital(&self) -> bool {
        self.include_hydrogen_capital
    }
    pub fn product_price(&self, kind: ProductKind) -> Option<Quantity> {
        self.product_prices.get(&kind).copied()
    }
    pub fn product_prices(&self) -> &BTreeMap<ProductKind, Quantity> {
        &self.product_prices
    }
}

/// Mutable staging area for [`EconParams`]. `build` checks every field at
/// once and reports all problems together.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EconParamsBuilder {
    pub elec_price: Option<Quantity>,
    pub r_cts: Option<Quantity>,
    pub r_ccs: Option<Quantity>,
    pub c_cts: Option<Quantity>,
    pub c_ccs: Option<Quantity>,
    pub c_wind: Option<Quantity>,
    pub c_des: Option<Quantity>,
    pub c_tw: Option<Quantity>,
    pub c_sw: Option<Quantity>,
    pub c_we: Option<Quantity>,
    pub xi_p: Option<Quantity>,
    pub wind_capacity_factor: Option<f64>,
    pub eta_pump: Option<f64>,
    pub r_w: Option<Quantity>,
    pub r_w_reference_distance: Option<Quantity>,
    pub e_des: Option<Vec<Quantity>>,
    pub interest_rate: Option<f64>,
    pub horizon_years: Option<u32>,
    pub capture_efficiency: Option<f64>,
    pub include_hydrogen_capital: Option<bool>,
    pub product_prices: BTreeMap<ProductKind, Quantity>,
}

struct Checker {
    prefix: &'static str,
    issues: Vec<Issue>,
}

impl Checker {
    fn issue(&mut self, key: &str, message: String) {
        self.issues.push(Issue::new(format!("{}.{key}", self.prefix), message));
    }

    fn required(&mut self, key: &str, q: Option<Quantity>, unit: Unit, label: &str) -> Option<Quantity> {
        match q {
            None => {
                self.issue(key, format!("missing required key (expected unit {label})"));
                None
            }
            Some(q) => self.checked(key, q, unit, label),
        }
    }

    fn defaulted(&mut self, key: &str, q: Option<Quantity>, default: f64, unit: Unit, label: &str) -> Option<Quantity> {
        match q {
            None => Some(Quantity::new(default, unit).expect("finite default")),
            Some(q) => self.checked(key, q, unit, label),
        }
    }

    fn checked(&mut self, key: &str, q: Quantity, unit: Unit, label: &str) -> Option<Quantity> {
        if q.dimension() != unit.dimension() {
            self.issue(
                key,
                format!("unit mismatch: expected {label} ({}), found {}", unit.dimension(), q.dimension()),
            );
            return None;
        }
        if q.canonical() < 0.0 {
            self.issue(key, format!("must be >= 0, found {}", q.value_in(unit).unwrap_or(q.canonical())));
            return None;
        }
        Some(q)
    }

    fn fraction(&mut self, key: &str, v: f64, open_zero: bool) -> Option<f64> {
        let ok = if open_zero { v > 0.0 && v <= 1.0 } else { (0.0..=1.0).contains(&v) };
        if !ok || !v.is_finite() {
            let bound = if open_zero { "(0, 1]" } else { "[0, 1]" };
            self.issue(key, format!("{v} outside {bound}"));
            return None;
        }
        Some(v)
    }
}

impl EconParamsBuilder {
    pub fn build(self) -> Result<EconParams, ValidationErrors> {
        use units::*;
        let mut c = Checker {
            prefix: "economics",
            issues: Vec::new(),
        };
        let elec_price = c.required("elec_price", self.elec_price, USD_PER_KWH, "$/kWh");
        let r_cts = c.required("r_cts", self.r_cts, USD_PER_TON, "$/ton");
        let r_ccs = c.required("r_ccs", self.r_ccs, USD_PER_TON, "$/ton");
        let c_cts = c.required("c_cts", self.c_cts, USD_PER_TON_PER_DAY, "$/(ton/day)");
        let c_ccs = c.required("c_ccs", self.c_ccs, USD_PER_TON_PER_DAY, "$/(ton/day)");
        let c_wind = c.required("c_wind", self.c_wind, USD_PER_KW, "$/kW");
        let c_des = c.required("c_des", self.c_des, USD_PER_CUBIC_METER_PER_HOUR, "$/(m³/h)");
        let pipe = match self.c_tw {
            None => {
                c.issue("c_tw", "missing required key (expected unit $/m or $/(m·m³/h))".into());
                None
            }
            Some(q) => match PipeCost::from_quantity(q) {
                Some(p) if q.canonical() >= 0.0 => Some(p),
                Some(_) => {
                    c.issue("c_tw", format!("must be >= 0, found {}", q.canonical()));
                    None
                }
                None => {
                    c.issue(
                        "c_tw",
                        format!("unit mismatch: expected $/m or $/(m·m³/h), found {}", q.dimension()),
                    );
                    None
                }
            },
        };
        let c_sw = self
            .c_sw
            .and_then(|q| c.checked("c_sw", q, USD_PER_CUBIC_METER_PER_HOUR, "$/(m³/h)"));
        let c_we = c.defaulted("c_we", self.c_we, DEFAULT_C_WE, USD_PER_KG_PER_HOUR, "$/(kg/h)");
        let xi_p = c.defaulted("xi_p", self.xi_p, DEFAULT_XI_P, KWH_PER_KG, "kWh/kg");
        if let Some(x) = xi_p {
            if x.canonical() <= 0.0 {
                c.issue("xi_p", "must be > 0".into());
            }
        }
        let wind_cf = c.fraction("wind_capacity_factor", self.wind_capacity_factor.unwrap_or(DEFAULT_WIND_CF), true);
        let eta = match self.eta_pump {
            None => {
                c.issue("eta_pump", "missing required key (dimensionless, (0, 1])".into());
                None
            }
            Some(v) => c.fraction("eta_pump", v, true),
        };
        let r_w = c.defaulted("r_w", self.r_w, DEFAULT_R_W, HEAD_LOSS_COEFF, "h²/m⁵");
        let r_w_ref = c.defaulted(
            "r_w_reference_distance",
            self.r_w_reference_distance,
            DEFAULT_R_W_REFERENCE_KM,
            KM,
            "km",
        );
        if let Some(d) = r_w_ref {
            if d.canonical() <= 0.0 {
                c.issue("r_w_reference_distance", "must be > 0".into());
            }
        }
        let e_des = match self.e_des {
            None => Some(DEFAULT_E_DES.map(|v| Quantity::new(v, KWH_PER_CUBIC_METER).unwrap())),
            Some(v) if v.len() != 4 => {
                c.issue("e_des", format!("expected exactly 4 segments, found {}", v.len()));
                None
            }
            Some(v) => {
                let checked: Vec<_> = v
                    .iter()
                    .map(|&q| c.checked("e_des", q, KWH_PER_CUBIC_METER, "kWh/m³"))
                    .collect();
                checked
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .map(|v| [v[0], v[1], v[2], v[3]])
            }
        };
        let interest_rate = self.interest_rate.unwrap_or(DEFAULT_INTEREST);
        if !(interest_rate >= 0.0 && interest_rate.is_finite()) {
            c.issue("interest_rate", format!("{interest_rate} must be >= 0"));
        }
        let horizon_years = self.horizon_years.unwrap_or(DEFAULT_HORIZON);
        if horizon_years < 1 {
            c.issue("horizon_years", "must be >= 1".into());
        }
        let capture = c.fraction("capture_efficiency", self.capture_efficiency.unwrap_or(1.0), true);
        let mut prices = BTreeMap::new();
        for (kind, q) in self.product_prices {
            if let Some(q) = c.checked(&format!("prices.{kind}"), q, USD_PER_TON, "$/ton") {
                prices.insert(kind, q);
            }
        }
        if !c.issues.is_empty() {
            return Err(ValidationErrors(c.issues));
        }
        Ok(EconParams {
            elec_price: elec_price.unwrap(),
            r_cts: r_cts.unwrap(),
            r_ccs: r_ccs.unwrap(),
            c_cts: c_cts.unwrap(),
            c_ccs: c_ccs.unwrap(),
            c_wind: c_wind.unwrap(),
            c_des: c_des.unwrap(),
            pipe: pipe.unwrap(),
            c_sw,
            c_we: c_we.unwrap(),
            xi_p: xi_p.unwrap(),
            wind_capacity_factor: wind_cf.unwrap(),
            eta_pump: eta.unwrap(),
            r_w: r_w.unwrap(),
            r_w_reference_distance: r_w_ref.unwrap(),
            e_des: e_des.unwrap(),
            interest_rate,
            horizon_years,
            capture_efficiency: capture.unwrap(),
            include_hydrogen_capital: self.include_hydrogen_capital.unwrap_or(false),
            product_prices: prices,
        })
    }
}
