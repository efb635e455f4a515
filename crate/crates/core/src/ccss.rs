//! Carbon capture, transfer and storage costs.
//!
//! A fraction β of the captured CO₂ is reused on site; only the remaining
//! `1 − β` travels down the transfer pipeline to storage.

use crate::error::EwhError;
use crate::quantities::{units, EconParams, PlantSpec, Quantity, TimeSeries};

/// Share of captured CO₂ diverted to chemical synthesis, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ReuseFraction(f64);

impl ReuseFraction {
    pub const STORE_ALL: ReuseFraction = ReuseFraction(0.0);
    pub const HALF: ReuseFraction = ReuseFraction(0.5);
    pub const REUSE_ALL: ReuseFraction = ReuseFraction(1.0);

    pub fn new(beta: f64) -> Result<Self, EwhError> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(EwhError::domain("beta", beta, "[0, 1]"));
        }
        Ok(ReuseFraction(beta))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn stored(&self) -> f64 {
        1.0 - self.0
    }
}

/// CO₂ handling plan; transfer to storage is always by pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcssPlan {
    pub beta: ReuseFraction,
}

impl CcssPlan {
    pub fn new(beta: ReuseFraction) -> Self {
        CcssPlan { beta }
    }
}

/// Capture plant plus pipeline capital: `((1−β)·c_cts + c_ccs)·C̄`, with C̄
/// taken as the daily carbon mass at full load.
pub fn ccss_capital(plan: &CcssPlan, plant: &PlantSpec, econ: &EconParams) -> Result<Quantity, EwhError> {
    let rate = econ
        .c_cts()
        .scale(plan.beta.stored())?
        .checked_add(econ.c_ccs())?;
    let capital = rate.checked_mul(crate::quantities::emissions_at_capacity(plant))?;
    capital.expect(units::USD.dimension())?;
    Ok(capital)
}

/// Daily operating cost `Σ_t ((1−β)·c_t·r_cts + c_t·r_ccs)` over the capture
/// profile, normalised to one day.
pub fn ccss_operational(plan: &CcssPlan, captured: &TimeSeries, econ: &EconParams) -> Result<Quantity, EwhError> {
    captured.expect(units::KG_PER_HOUR.dimension())?;
    let r_cts = econ.r_cts().canonical();
    let r_ccs = econ.r_ccs().canonical();
    let stored = plan.beta.stored();
    let total: f64 = captured
        .canonical_values()
        .iter()
        .map(|&c| (stored * c * r_cts + c * r_ccs) * TimeSeries::STEP_HOURS)
        .sum();
    Ok(Quantity::new(total * captured.per_day_factor(), units::USD_PER_DAY)?)
}
