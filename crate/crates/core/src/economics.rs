//! Total daily cost of a scenario and the metrics derived from it.

use crate::ccss::{ccss_capital, ccss_operational, CcssPlan, ReuseFraction};
use crate::conversion::{chemical_revenue, hydrogen_capital, nexus_rates, power_capital, NexusRates, ProductSpec};
use crate::error::EwhError;
use crate::quantities::{
    constant_profile, emissions_at_capacity, units, CostKind, CostLedger, Dimension, EconParams, PlantSpec, Quantity,
    Term, TimeSeries,
};
use crate::water::{water_capital, water_operational, WaterSupplyMode, WaterSupplyPlan};

/// Hours in the baseline evaluation horizon.
pub const DAY_HOURS: usize = 24;

/// How capital outlays are spread over the project life.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnualizationPolicy {
    pub horizon_years: u32,
    pub interest_rate: f64,
    pub include_hydrogen_capital: bool,
}

impl AnnualizationPolicy {
    pub fn new(horizon_years: u32, interest_rate: f64, include_hydrogen_capital: bool) -> Result<Self, EwhError> {
        if horizon_years < 1 {
            return Err(EwhError::domain("horizon_years", horizon_years as f64, ">= 1"));
        }
        if !(interest_rate >= 0.0 && interest_rate.is_finite()) {
            return Err(EwhError::domain("interest_rate", interest_rate, ">= 0"));
        }
        Ok(AnnualizationPolicy {
            horizon_years,
            interest_rate,
            include_hydrogen_capital,
        })
    }

    pub fn from_econ(econ: &EconParams) -> Self {
        AnnualizationPolicy {
            horizon_years: econ.horizon_years(),
            interest_rate: econ.interest_rate(),
            include_hydrogen_capital: econ.include_hydrogen_capital(),
        }
    }

    /// `(1+λ)^(N−1) / (365·N)`, per day.
    pub fn factor(&self) -> f64 {
        self.growth() / self.days()
    }

    fn growth(&self) -> f64 {
        (1.0 + self.interest_rate).powi(self.horizon_years as i32 - 1)
    }

    fn days(&self) -> f64 {
        365.0 * self.horizon_years as f64
    }
}

/// Capital outlay turned into a flat daily charge.
pub fn daily_capital_charge(capital: Quantity, policy: &AnnualizationPolicy) -> Result<Quantity, EwhError> {
    let usd = capital.value_in(units::USD)?;
    if usd < 0.0 {
        return Err(EwhError::domain("capital", usd, ">= 0 $"));
    }
    // divide last so a unit growth factor gives exactly capital / (365·N)
    Ok(Quantity::new(usd * policy.growth() / policy.days(), units::USD_PER_DAY)?)
}

/// One plant, one carbon fate, one water route.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub plant: PlantSpec,
    /// Required whenever `beta > 0`.
    pub product: Option<ProductSpec>,
    pub beta: ReuseFraction,
    pub water: WaterSupplyMode,
    pub econ: EconParams,
    /// Captured CO₂ per hour; defaults to a day at full load.
    pub capture: Option<TimeSeries>,
}

impl ScenarioConfig {
    pub fn storage(plant: PlantSpec, econ: EconParams) -> Self {
        ScenarioConfig {
            plant,
            product: None,
            beta: ReuseFraction::STORE_ALL,
            water: WaterSupplyMode::Desalination,
            econ,
            capture: None,
        }
    }

    pub fn reuse(
        plant: PlantSpec,
        product: ProductSpec,
        beta: ReuseFraction,
        water: WaterSupplyMode,
        econ: EconParams,
    ) -> Self {
        ScenarioConfig {
            plant,
            product: Some(product),
            beta,
            water,
            econ,
            capture: None,
        }
    }

    fn capture_series(&self) -> Result<TimeSeries, EwhError> {
        match &self.capture {
            Some(s) => Ok(s.clone()),
            None => {
                let rate = emissions_at_capacity(&self.plant).scale(self.econ.capture_efficiency())?;
                constant_profile(rate, DAY_HOURS)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub ledger: CostLedger,
    pub daily_cost: Quantity,
    pub increased_price: Quantity,
    pub carbon_penalty: Quantity,
    /// Electrolyzer capital; only part of the ledger when the policy says so.
    pub hydrogen_capital: Quantity,
    pub rates: Option<NexusRates>,
}

impl ScenarioResult {
    pub fn capital_usd(&self) -> f64 {
        self.ledger.capital_total().canonical()
    }

    pub fn operational_usd_per_day(&self) -> f64 {
        per_day(self.ledger.daily_total_of(CostKind::Operational))
    }

    pub fn capital_charge_usd_per_day(&self) -> f64 {
        per_day(self.ledger.daily_total_of(CostKind::Capital))
    }

    pub fn revenue_usd_per_day(&self) -> f64 {
        per_day(self.ledger.daily_total_of(CostKind::Revenue))
    }

    pub fn daily_cost_usd_per_day(&self) -> f64 {
        per_day(self.daily_cost)
    }

    pub fn increased_price_usd_per_kwh(&self) -> f64 {
        self.increased_price.value_in(units::USD_PER_KWH).expect("$/kWh")
    }

    pub fn carbon_penalty_usd_per_ton(&self) -> f64 {
        self.carbon_penalty.value_in(units::USD_PER_TON).expect("$/ton")
    }
}

fn per_day(q: Quantity) -> f64 {
    q.value_in(units::USD_PER_DAY).expect("$/day")
}

/// Assembles every cost term of the scenario into a ledger and totals it.
///
/// Storage-only scenarios (β = 0) carry no power, water, hydrogen or
/// revenue terms.
pub fn total_daily_cost(scenario: &ScenarioConfig) -> Result<ScenarioResult, EwhError> {
    let econ = &scenario.econ;
    let plant = &scenario.plant;
    let policy = AnnualizationPolicy::from_econ(econ);
    let plan = CcssPlan::new(scenario.beta);
    let captured = scenario.capture_series()?;
    let mut ledger = CostLedger::new();
    let mut capital = Vec::new();

    let c_ccss = ccss_capital(&plan, plant, econ).map_err(|e| e.in_term("ccss_capital"))?;
    capital.push(("CCS plant and CO₂ pipeline", Term::CcssCapital, c_ccss));
    let g_ccss = ccss_operational(&plan, &captured, econ).map_err(|e| e.in_term("ccss_operational"))?;

    let mut daily = vec![("CO₂ capture and transfer", Term::CcssOperational, CostKind::Operational, g_ccss)];
    let mut h_capital = Quantity::zero(Dimension::MONEY);
    let mut rates = None;

    if scenario.beta.value() > 0.0 {
        let product = scenario
            .product
            .as_ref()
            .ok_or_else(|| EwhError::invalid("a reuse scenario (beta > 0) needs a product"))?;
        let r = nexus_rates(plant, product, scenario.beta);
        rates = Some(r);

        let c_p = power_capital(r.hydrogen, econ).map_err(|e| e.in_term("power_capital"))?;
        capital.push(("wind farm", Term::PowerCapital, c_p));

        let water = WaterSupplyPlan::new(scenario.water, r.water).map_err(|e| e.in_term("water_capital"))?;
        let c_w = water_capital(&water, econ).map_err(|e| e.in_term("water_capital"))?;
        capital.push(("water supply", Term::WaterCapital, c_w));

        h_capital = hydrogen_capital(plant, product, scenario.beta, econ).map_err(|e| e.in_term("hydrogen_capital"))?;
        if policy.include_hydrogen_capital {
            capital.push(("electrolyzers", Term::HydrogenCapital, h_capital));
        }

        let flow = water_flow(&captured, plant, r.water)?;
        let g_w = water_operational(&water, &flow, econ).map_err(|e| e.in_term("water_operational"))?;
        daily.push(("water supply energy", Term::WaterOperational, CostKind::Operational, g_w));

        let g_chi =
            chemical_revenue(product, &captured, scenario.beta, econ).map_err(|e| e.in_term("chemical_revenue"))?;
        daily.push(("product sales", Term::ChemicalRevenue, CostKind::Revenue, g_chi));
    }

    let capital_values: Vec<f64> = capital.iter().map(|c| c.2.canonical()).collect();
    let capital_sum = Quantity::from_canonical(crate::quantities::exact_sum(&capital_values), Dimension::MONEY)?;
    for (label, term, amount) in capital {
        ledger.push(label, term, CostKind::Capital, amount)?;
    }
    let charge = daily_capital_charge(capital_sum, &policy).map_err(|e| e.in_term("capital_charge"))?;
    ledger.push("daily capital charge", Term::CapitalCharge, CostKind::Capital, charge)?;
    for (label, term, kind, amount) in daily {
        ledger.push(label, term, kind, amount)?;
    }

    let daily_cost = ledger.daily_total();
    Ok(ScenarioResult {
        increased_price: increased_price(daily_cost, plant)?,
        carbon_penalty: carbon_penalty(daily_cost, plant)?,
        daily_cost,
        ledger,
        hydrogen_capital: h_capital,
        rates,
    })
}

/// Water demand follows the capture profile; at full load it equals W̄.
fn water_flow(captured: &TimeSeries, plant: &PlantSpec, w_max: Quantity) -> Result<TimeSeries, EwhError> {
    let full = plant.emissions_kg_per_hour();
    let w = w_max.canonical();
    captured.map(units::CUBIC_METER_PER_HOUR.dimension(), |c| {
        if full > 0.0 {
            (w * c / full).min(w)
        } else {
            0.0
        }
    })
}

/// Electricity price rise that recovers the daily cost from one hour of
/// full-capacity generation.
pub fn increased_price(daily_cost: Quantity, plant: &PlantSpec) -> Result<Quantity, EwhError> {
    let cost = daily_cost.value_in(units::USD_PER_DAY)?;
    let kw = plant.capacity().value_in(units::KW)?;
    if kw <= 0.0 {
        return Err(EwhError::domain("capacity", kw, "> 0 kW"));
    }
    Ok(Quantity::new(cost / kw, units::USD_PER_KWH)?)
}

/// Break-even emission penalty: daily cost spread over a day of full-load
/// emissions.
pub fn carbon_penalty(daily_cost: Quantity, plant: &PlantSpec) -> Result<Quantity, EwhError> {
    let cost = daily_cost.value_in(units::USD_PER_DAY)?;
    let tons = emissions_at_capacity(plant).value_in(units::TON_PER_HOUR)? * DAY_HOURS as f64;
    if tons <= 0.0 {
        return Err(EwhError::domain("emissions", tons, "> 0 ton/day"));
    }
    Ok(Quantity::new(cost / tons, units::USD_PER_TON)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversion::ProductKind;
    use proptest::prelude::*;

    fn usd(v: f64) -> Quantity {
        Quantity::new(v, units::USD).unwrap()
    }

    fn charge(capital: f64, n: u32, lambda: f64) -> f64 {
        let p = AnnualizationPolicy::new(n, lambda, false).unwrap();
        per_day(daily_capital_charge(usd(capital), &p).unwrap())
    }

    #[test]
    fn capital_charge_examples() {
        assert!((charge(7300.0, 20, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(charge(365.0, 1, 0.0), 1.0);
        let mut growth = 1.0;
        for _ in 0..19 {
            growth *= 1.05;
        }
        let oracle = 1.0e6 * growth / 7300.0;
        assert!((charge(1.0e6, 20, 0.05) - oracle).abs() < 1e-9);
        assert!((charge(1.0e6, 20, 0.05) - 346.157).abs() < 1e-3);
        let p = AnnualizationPolicy::new(20, 0.05, false).unwrap();
        assert!(daily_capital_charge(usd(-1.0), &p).is_err());
        assert!(AnnualizationPolicy::new(0, 0.05, false).is_err());
    }

    #[test]
    fn storage_scenario_has_no_reuse_terms() {
        let s = ScenarioConfig::storage(PlantSpec::biomass(), EconParams::paper_2024());
        let r = total_daily_cost(&s).unwrap();
        for t in [Term::PowerCapital, Term::WaterCapital, Term::WaterOperational, Term::ChemicalRevenue] {
            assert!(r.ledger.find(t).is_none(), "{t}");
        }
        assert_eq!(r.operational_usd_per_day(), 165_600.0);
        assert_eq!(r.revenue_usd_per_day(), 0.0);
    }

    #[test]
    fn ledger_total_is_daily_cost() {
        let s = ScenarioConfig::reuse(
            PlantSpec::natural_gas(),
            ProductSpec::methanol(),
            ReuseFraction::HALF,
            WaterSupplyMode::Desalination,
            EconParams::paper_2024(),
        );
        let r = total_daily_cost(&s).unwrap();
        let parts: Vec<f64> = r.ledger.items().iter().filter(|i| i.is_daily()).map(|i| i.amount.canonical()).collect();
        assert_eq!(crate::quantities::exact_sum(&parts), r.daily_cost.canonical());
        let split = r.capital_charge_usd_per_day() + r.operational_usd_per_day() + r.revenue_usd_per_day();
        assert!((split - r.daily_cost_usd_per_day()).abs() < 1e-6);
    }

    #[test]
    fn hydrogen_capital_flag() {
        let econ = EconParams::paper_2024();
        let mk = |e: EconParams| {
            ScenarioConfig::reuse(
                PlantSpec::biomass(),
                ProductSpec::methane(),
                ReuseFraction::REUSE_ALL,
                WaterSupplyMode::Desalination,
                e,
            )
        };
        let without = total_daily_cost(&mk(econ.clone())).unwrap();
        assert!(without.ledger.find(Term::HydrogenCapital).is_none());
        let mut b = econ.to_builder();
        b.include_hydrogen_capital = Some(true);
        let with = total_daily_cost(&mk(b.build().unwrap())).unwrap();
        let extra = with.daily_cost_usd_per_day() - without.daily_cost_usd_per_day();
        let expected = with.hydrogen_capital.canonical() * AnnualizationPolicy::from_econ(&econ).factor();
        assert!((extra - expected).abs() < 1e-6);
    }

    #[test]
    fn reuse_without_product_rejected() {
        let mut s = ScenarioConfig::storage(PlantSpec::biomass(), EconParams::paper_2024());
        s.beta = ReuseFraction::HALF;
        assert!(total_daily_cost(&s).is_err());
    }

    #[test]
    fn solar_without_c_sw_names_term() {
        let s = ScenarioConfig::reuse(
            PlantSpec::biomass(),
            ProductSpec::methane(),
            ReuseFraction::REUSE_ALL,
            WaterSupplyMode::SolarSeawater,
            EconParams::paper_2024(),
        );
        let err = total_daily_cost(&s).unwrap_err();
        assert!(err.to_string().starts_with("water_capital"), "{err}");
    }

    #[test]
    fn derived_metric_examples() {
        let bio = PlantSpec::biomass();
        let d = |m: f64| Quantity::new(m * 1e6, units::USD_PER_DAY).unwrap();
        let p = increased_price(d(0.207), &bio).unwrap().value_in(units::USD_PER_KWH).unwrap();
        assert!((p - 0.414).abs() < 1e-12);
        let p = increased_price(d(0.395), &bio).unwrap().value_in(units::USD_PER_KWH).unwrap();
        assert!((p - 0.79).abs() < 1e-12);
        assert_eq!(increased_price(d(0.0), &bio).unwrap().canonical(), 0.0);
        let c = carbon_penalty(d(0.207), &bio).unwrap().value_in(units::USD_PER_TON).unwrap();
        assert!((c - 207_000.0 / 2760.0).abs() < 1e-9);
        let c = carbon_penalty(d(0.633), &PlantSpec::coal()).unwrap().value_in(units::USD_PER_TON).unwrap();
        assert!((c - 64.33).abs() < 0.01);
        assert!(carbon_penalty(d(-0.5), &bio).unwrap().canonical() < 0.0);
        let idle = PlantSpec::new("idle", Quantity::new(0.0, units::KW).unwrap(), bio.emission_factor()).unwrap();
        assert!(increased_price(d(1.0), &idle).is_err());
        assert!(carbon_penalty(d(1.0), &idle).is_err());
    }

    proptest! {
        #[test]
        fn charge_linear_and_increasing(c in 0.0f64..1e9, l1 in 0.0f64..0.2, l2 in 0.0f64..0.2, n in 2u32..50) {
            let a = charge(c, n, l1);
            prop_assert!((charge(2.0 * c, n, l1) - 2.0 * a).abs() <= 1e-9 * a.max(1.0));
            if l1 < l2 && c > 0.0 {
                prop_assert!(charge(c, n, l1) < charge(c, n, l2));
            }
        }

        #[test]
        fn cost_monotone_in_price_and_r_ccs(rho in 0.0f64..3000.0, dr in 0.0f64..500.0, r_ccs in 0.0f64..100.0, dq in 0.0f64..50.0) {
            let base = EconParams::paper_2024();
            let eval = |rho: f64, r: f64| {
                let mut b = base.to_builder();
                b.product_prices.insert(ProductKind::Methanol, Quantity::new(rho, units::USD_PER_TON).unwrap());
                b.r_ccs = Some(Quantity::new(r, units::USD_PER_TON).unwrap());
                let s = ScenarioConfig::reuse(
                    PlantSpec::biomass(),
                    ProductSpec::methanol(),
                    ReuseFraction::HALF,
                    WaterSupplyMode::Desalination,
                    b.build().unwrap(),
                );
                total_daily_cost(&s).unwrap().daily_cost_usd_per_day()
            };
            prop_assert!(eval(rho + dr, r_ccs) <= eval(rho, r_ccs));
            prop_assert!(eval(rho, r_ccs + dq) >= eval(rho, r_ccs));
        }
    }
}
