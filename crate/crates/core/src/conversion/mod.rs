//! Power and hydrogen sections of the nexus, plus chemical sales.
//!
//! The electrolyzers run on a dedicated wind farm, so their electricity only
//! shows up as wind capital, never as purchased energy.

mod stoichiometry;

pub use stoichiometry::{
    stoichiometry, Formula, MassRatios, ProductKind, ProductSpec, Reaction, ATOMIC_MASS_C, ATOMIC_MASS_H,
    ATOMIC_MASS_O,
};

use crate::ccss::ReuseFraction;
use crate::error::EwhError;
use crate::quantities::{units, EconParams, PlantSpec, Quantity, TimeSeries};

/// Density used to turn feed-water mass into volume, kg/m³.
pub const WATER_DENSITY: f64 = 1000.0;

/// Peak hydrogen output H̄ of the electrolyzer fleet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenPlan {
    h_max: Quantity,
}

impl HydrogenPlan {
    pub fn new(h_max: Quantity) -> Result<Self, EwhError> {
        let v = h_max.value_in(units::TON_PER_HOUR)?;
        if v < 0.0 {
            return Err(EwhError::domain("h_max", v, ">= 0 ton/h"));
        }
        Ok(HydrogenPlan { h_max })
    }

    pub fn h_max(&self) -> Quantity {
        self.h_max
    }
}

/// Full-load flows through the nexus for one plant and product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NexusRates {
    pub hydrogen: Quantity,
    pub water: Quantity,
    pub product: Quantity,
}

/// Hydrogen, feed water and product rates when a share β of the plant's
/// full-load emissions is converted.
pub fn nexus_rates(plant: &PlantSpec, product: &ProductSpec, beta: ReuseFraction) -> NexusRates {
    let co2 = plant.emissions_kg_per_hour() * beta.value();
    let r = product.ratios();
    let q = |v: f64, u| Quantity::from_canonical(v, u).expect("finite rate");
    NexusRates {
        hydrogen: q(co2 * r.xi_h, units::KG_PER_HOUR.dimension()),
        water: q(co2 * r.water_demand / WATER_DENSITY, units::CUBIC_METER_PER_HOUR.dimension()),
        product: q(co2 * r.xi_chi, units::KG_PER_HOUR.dimension()),
    }
}

/// Wind farm capital `c_wind · ξᵖ·H̄ / cf`: nameplate capacity chosen so the
/// average output covers the electrolyzer load.
pub fn power_capital(h_max: Quantity, econ: &EconParams) -> Result<Quantity, EwhError> {
    let plan = HydrogenPlan::new(h_max)?;
    let load = econ.xi_p().checked_mul(plan.h_max)?;
    let capital = econ
        .c_wind()
        .checked_mul(load)?
        .scale(1.0 / econ.wind_capacity_factor())?;
    capital.expect(units::USD.dimension())?;
    Ok(capital)
}

/// Electrolyzer capital `ξʰ · β · C̄ · c_we`.
pub fn hydrogen_capital(
    plant: &PlantSpec,
    product: &ProductSpec,
    beta: ReuseFraction,
    econ: &EconParams,
) -> Result<Quantity, EwhError> {
    let h_max = nexus_rates(plant, product, beta).hydrogen;
    let capital = h_max.checked_mul(econ.c_we())?;
    capital.expect(units::USD.dimension())?;
    Ok(capital)
}

/// Daily product sales `−Σ_t ρ · ξᵡ · β · c_t`, negative because revenue
/// offsets cost.
pub fn chemical_revenue(
    product: &ProductSpec,
    captured: &TimeSeries,
    beta: ReuseFraction,
    econ: &EconParams,
) -> Result<Quantity, EwhError> {
    captured.expect(units::KG_PER_HOUR.dimension())?;
    let price = econ
        .product_price(product.kind())
        .ok_or(EwhError::MissingParameter(price_key(product.kind())))?
        .canonical();
    let per_kg_co2 = price * product.ratios().xi_chi * beta.value();
    let total: f64 = captured
        .canonical_values()
        .iter()
        .map(|&c| per_kg_co2 * c * TimeSeries::STEP_HOURS)
        .sum();
    Ok(Quantity::new(-total * captured.per_day_factor(), units::USD_PER_DAY)?)
}

fn price_key(kind: ProductKind) -> &'static str {
    match kind {
        ProductKind::Methane => "prices.methane",
        ProductKind::Methanol => "prices.methanol",
        ProductKind::Ethanol => "prices.ethanol",
    }
}
