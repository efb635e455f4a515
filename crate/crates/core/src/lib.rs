//! Techno-economic model of an energy-water-hydrogen nexus bolted onto a
//! carbon-emitting power plant.
//!
//! Captured CO₂ is either piped to storage or combined with green hydrogen
//! into methane, methanol or ethanol. The crate prices both fates, including
//! the wind farm, electrolyzers and water supply the reuse chain needs, and
//! turns the result into daily cost, electricity price uplift and the
//! carbon penalty at which each option breaks even.
//!
//! ```
//! use ewh_nexus::prelude::*;
//!
//! let econ = EconParams::paper_2024();
//! let store = ScenarioConfig::storage(PlantSpec::biomass(), econ);
//! let result = total_daily_cost(&store).unwrap();
//! assert!(result.carbon_penalty_usd_per_ton() > 0.0);
//! ```

pub mod analysis;
pub mod ccss;
pub mod cli;
pub mod config;
pub mod conversion;
pub mod economics;
pub mod error;
pub mod quantities;
pub mod water;

pub use error::{EwhError, Result};

/// The types most callers need.
pub mod prelude {
    pub use crate::analysis::{
        breakeven_distance, penalty_threshold, scenario_sweep, transfer_cost_curve, BreakevenQuery, Strategy,
        SweepGrid,
    };
    pub use crate::ccss::{ccss_capital, ccss_operational, CcssPlan, ReuseFraction};
    pub use crate::config::{load_config, Config};
    pub use crate::conversion::{
        chemical_revenue, hydrogen_capital, nexus_rates, power_capital, stoichiometry, ProductKind, ProductSpec,
    };
    pub use crate::economics::{
        carbon_penalty, daily_capital_charge, increased_price, total_daily_cost, AnnualizationPolicy, ScenarioConfig,
        ScenarioResult,
    };
    pub use crate::error::EwhError;
    pub use crate::quantities::{
        constant_profile, emissions_at_capacity, units, CostLedger, EconParams, PlantSpec, Quantity, TimeSeries,
    };
    pub use crate::water::{WaterSupplyMode, WaterSupplyPlan};
}
