use crate::ccss::ReuseFraction;
use crate::conversion::{nexus_rates, ProductSpec};
use crate::economics::{daily_capital_charge, AnnualizationPolicy};
use crate::error::EwhError;
use crate::quantities::{constant_profile, units, EconParams, PlantSpec, Quantity};
use crate::water::{water_capital, water_operational, WaterSupplyMode, WaterSupplyPlan};

/// Daily cost of moving water `flow` over `distance`, pipe sized to W̄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub capital_usd_per_day: f64,
    pub operational_usd_per_day: f64,
    pub total_usd_per_day: f64,
}

#[derive(Debug)]
pub struct CurveCell {
    pub distance_km: f64,
    pub flow_m3h: f64,
    pub point: Result<CurvePoint, EwhError>,
}

/// Grid of transfer costs, distance-major. The pipe is sized to the full
/// reuse water demand of `plant` making `product`; flows above that fail
/// cell by cell.
pub fn transfer_cost_curve(
    plant: &PlantSpec,
    product: &ProductSpec,
    distances: &[Quantity],
    flows: &[Quantity],
    econ: &EconParams,
) -> Result<Vec<CurveCell>, EwhError> {
    if distances.is_empty() || flows.is_empty() {
        return Err(EwhError::invalid("transfer curve needs at least one distance and one flow"));
    }
    let w_max = nexus_rates(plant, product, ReuseFraction::REUSE_ALL).water;
    let policy = AnnualizationPolicy::from_econ(econ);
    let mut out = Vec::with_capacity(distances.len() * flows.len());
    for &d in distances {
        let d_km = d.value_in(units::KM)?;
        for &f in flows {
            let flow_m3h = f.value_in(units::CUBIC_METER_PER_HOUR)?;
            let point = (|| {
                let plan = WaterSupplyPlan::new(WaterSupplyMode::transfer(d_km)?, w_max)?;
                let capital = daily_capital_charge(water_capital(&plan, econ)?, &policy)?;
                let operational = water_operational(&plan, &constant_profile(f, 24)?, econ)?;
                let capital = capital.value_in(units::USD_PER_DAY)?;
                let operational = operational.value_in(units::USD_PER_DAY)?;
                Ok(CurvePoint {
                    capital_usd_per_day: capital,
                    operational_usd_per_day: operational,
                    total_usd_per_day: capital + operational,
                })
            })();
            out.push(CurveCell {
                distance_km: d_km,
                flow_m3h,
                point,
            });
        }
    }
    Ok(out)
}
