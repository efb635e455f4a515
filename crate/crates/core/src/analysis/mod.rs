//! Decision support built on scenario evaluation: sweeps, water break-even
//! distance, pipe transfer cost curves and penalty thresholds.

mod breakeven;
mod curve;
mod penalty;
mod sweep;

pub use breakeven::{breakeven_distance, cost_gap, BreakevenQuery};
pub use curve::{transfer_cost_curve, CurveCell, CurvePoint};
pub use penalty::{penalty_threshold, Strategy};
pub use sweep::{scenario_sweep, SweepCell, SweepError, SweepGrid};
