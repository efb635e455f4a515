use crate::ccss::ReuseFraction;
use crate::conversion::ProductSpec;
use crate::economics::{total_daily_cost, ScenarioConfig};
use crate::error::EwhError;
use crate::quantities::{units, EconParams, PlantSpec, Quantity};
use crate::water::WaterSupplyMode;

pub const DEFAULT_BOUNDS_KM: (f64, f64) = (1.0, 1000.0);
pub const DEFAULT_TOLERANCE_KM: f64 = 0.5;

/// Pipe length at which network transfer costs as much as desalination.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakevenQuery {
    pub plant: PlantSpec,
    pub product: ProductSpec,
    pub beta: ReuseFraction,
    d_lo_km: f64,
    d_hi_km: f64,
    tolerance_km: f64,
}

impl BreakevenQuery {
    /// Full reuse, bounds [1, 1000] km, tolerance 0.5 km.
    pub fn new(plant: PlantSpec, product: ProductSpec) -> Self {
        BreakevenQuery {
            plant,
            product,
            beta: ReuseFraction::REUSE_ALL,
            d_lo_km: DEFAULT_BOUNDS_KM.0,
            d_hi_km: DEFAULT_BOUNDS_KM.1,
            tolerance_km: DEFAULT_TOLERANCE_KM,
        }
    }

    pub fn with_bounds(mut self, d_lo: Quantity, d_hi: Quantity) -> Result<Self, EwhError> {
        let lo = d_lo.value_in(units::KM)?;
        let hi = d_hi.value_in(units::KM)?;
        if !(lo >= 0.0 && lo < hi) {
            return Err(EwhError::invalid(format!("distance bounds need 0 <= d_lo < d_hi, got [{lo}, {hi}] km")));
        }
        self.d_lo_km = lo;
        self.d_hi_km = hi;
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: Quantity) -> Result<Self, EwhError> {
        let tol = tolerance.value_in(units::KM)?;
        if tol.is_nan() || tol <= 0.0 {
            return Err(EwhError::domain("tolerance", tol, "> 0 km"));
        }
        self.tolerance_km = tol;
        Ok(self)
    }

    pub fn with_beta(mut self, beta: ReuseFraction) -> Self {
        self.beta = beta;
        self
    }

    pub fn bounds_km(&self) -> (f64, f64) {
        (self.d_lo_km, self.d_hi_km)
    }

    pub fn tolerance_km(&self) -> f64 {
        self.tolerance_km
    }
}

/// `g(d)`: daily cost with a `d` km transfer pipe minus daily cost with
/// desalination, in $/day.
pub fn cost_gap(query: &BreakevenQuery, econ: &EconParams, d_km: f64) -> Result<f64, EwhError> {
    let eval = |water| {
        let s = ScenarioConfig::reuse(query.plant.clone(), query.product, query.beta, water, econ.clone());
        total_daily_cost(&s).map(|r| r.daily_cost_usd_per_day())
    };
    Ok(eval(WaterSupplyMode::transfer(d_km)?)? - eval(WaterSupplyMode::Desalination)?)
}

/// Bisection on `g(d)`; the returned distance is within the query tolerance
/// of the crossing.
pub fn breakeven_distance(query: &BreakevenQuery, econ: &EconParams) -> Result<Quantity, EwhError> {
    let (mut lo, mut hi) = query.bounds_km();
    let g_lo = cost_gap(query, econ, lo)?;
    let g_hi = cost_gap(query, econ, hi)?;
    if g_lo > 0.0 || g_hi < 0.0 {
        return Err(EwhError::NoCrossing {
            d_lo_km: lo,
            d_hi_km: hi,
            g_lo,
            g_hi,
        });
    }
    while hi - lo > query.tolerance_km() {
        let mid = 0.5 * (lo + hi);
        if cost_gap(query, econ, mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Quantity::new(0.5 * (lo + hi), units::KM)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(q: Quantity) -> f64 {
        q.value_in(units::KM).unwrap()
    }

    #[test]
    fn biomass_breakeven_near_61_km() {
        let q = BreakevenQuery::new(PlantSpec::biomass(), ProductSpec::methane());
        let d = km(breakeven_distance(&q, &EconParams::paper_2024()).unwrap());
        assert!((d - 61.0).abs() < 61.0 * 0.15, "{d}");
    }

    #[test]
    fn gap_increases_with_distance() {
        let q = BreakevenQuery::new(PlantSpec::natural_gas(), ProductSpec::methanol());
        let e = EconParams::paper_2024();
        let mut last = f64::NEG_INFINITY;
        for d in [1.0, 10.0, 100.0, 500.0, 1000.0] {
            let g = cost_gap(&q, &e, d).unwrap();
            assert!(g > last);
            last = g;
        }
    }

    #[test]
    fn no_crossing_reports_both_ends() {
        let q = BreakevenQuery::new(PlantSpec::biomass(), ProductSpec::methane())
            .with_bounds(Quantity::new(200.0, units::KM).unwrap(), Quantity::new(300.0, units::KM).unwrap())
            .unwrap();
        match breakeven_distance(&q, &EconParams::paper_2024()) {
            Err(EwhError::NoCrossing { g_lo, g_hi, .. }) => assert!(g_lo > 0.0 && g_hi > 0.0),
            other => panic!("expected no crossing, got {other:?}"),
        }
    }

    #[test]
    fn query_validation() {
        let q = BreakevenQuery::new(PlantSpec::biomass(), ProductSpec::methane());
        let km = |v| Quantity::new(v, units::KM).unwrap();
        assert!(q.clone().with_bounds(km(10.0), km(5.0)).is_err());
        assert!(q.with_tolerance(km(0.0)).is_err());
    }
}
