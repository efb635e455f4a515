//! Unit-carrying values and the domain records every other module consumes.

mod econ;
mod ledger;
mod plant;
mod series;
mod unit;

pub use econ::{EconParams, EconParamsBuilder, PipeCost, DEFAULT_E_DES};
pub use ledger::{exact_sum, CostItem, CostKind, CostLedger, Term};
pub use plant::{emissions_at_capacity, PlantSpec};
pub use series::{constant_profile, TimeSeries};
pub use unit::{units, Dimension, Quantity, Unit, UnitError};
