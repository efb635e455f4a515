use std::fmt;

use crate::ccss::ReuseFraction;
use crate::conversion::ProductSpec;
use crate::economics::{total_daily_cost, ScenarioConfig};
use crate::error::EwhError;
use crate::quantities::{EconParams, PlantSpec, Quantity};
use crate::water::WaterSupplyMode;

/// Carbon fate a plant could adopt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    StoreAll,
    ReuseAll(ProductSpec),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::StoreAll => f.write_str("store_all"),
            Strategy::ReuseAll(p) => write!(f, "reuse_all_{}", p.kind()),
        }
    }
}

/// Lowest emission penalty ($/ton) at which the strategy is cheaper than
/// emitting and paying. Negative means the strategy pays for itself.
pub fn penalty_threshold(plant: &PlantSpec, strategy: Strategy, econ: &EconParams) -> Result<Quantity, EwhError> {
    let scenario = match strategy {
        Strategy::StoreAll => ScenarioConfig::storage(plant.clone(), econ.clone()),
        Strategy::ReuseAll(p) => ScenarioConfig::reuse(
            plant.clone(),
            p,
            ReuseFraction::REUSE_ALL,
            WaterSupplyMode::Desalination,
            econ.clone(),
        ),
    };
    Ok(total_daily_cost(&scenario)?.carbon_penalty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::units;

    fn threshold(plant: &PlantSpec, s: Strategy) -> f64 {
        penalty_threshold(plant, s, &EconParams::paper_2024())
            .unwrap()
            .value_in(units::USD_PER_TON)
            .unwrap()
    }

    #[test]
    fn biomass_store_all_near_75() {
        let t = threshold(&PlantSpec::biomass(), Strategy::StoreAll);
        assert!((t - 75.09).abs() < 75.09 * 0.02, "{t}");
    }

    #[test]
    fn methane_pays_for_itself() {
        for plant in PlantSpec::presets() {
            assert!(threshold(&plant, Strategy::ReuseAll(ProductSpec::methane())) < 0.0);
        }
    }

    #[test]
    fn storage_is_dearest() {
        for plant in PlantSpec::presets() {
            let store = threshold(&plant, Strategy::StoreAll);
            for p in [ProductSpec::methane(), ProductSpec::methanol()] {
                assert!(store > threshold(&plant, Strategy::ReuseAll(p)));
            }
        }
    }
}
