//! Water supply for electrolysis: desalination, network transfer by pipe,
//! or solar-powered seawater electrolysis.

use crate::error::EwhError;
use crate::quantities::{units, EconParams, PipeCost, Quantity, TimeSeries};

/// Pump power constant: watts per (metre of head × m³/h), ≈ ρg/3600.
pub const PUMP_WATTS_PER_HEAD_FLOW: f64 = 2.725;

/// Exactly one supply route is active.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaterSupplyMode {
    Desalination,
    NetworkTransfer { distance: Quantity },
    SolarSeawater,
}

impl WaterSupplyMode {
    pub fn transfer(distance_km: f64) -> Result<Self, EwhError> {
        let distance = Quantity::new(distance_km, units::KM)?;
        let mode = WaterSupplyMode::NetworkTransfer { distance };
        mode.validate()?;
        Ok(mode)
    }

    fn validate(&self) -> Result<(), EwhError> {
        if let WaterSupplyMode::NetworkTransfer { distance } = self {
            let km = distance.value_in(units::KM)?;
            if km < 0.0 {
                return Err(EwhError::domain("distance", km, ">= 0 km"));
            }
        }
        Ok(())
    }

    /// Binary selector `[α₁, α₂, α₃]` (desalination, transfer, solar); sums to 1.
    pub fn alphas(&self) -> [f64; 3] {
        match self {
            WaterSupplyMode::Desalination => [1.0, 0.0, 0.0],
            WaterSupplyMode::NetworkTransfer { .. } => [0.0, 1.0, 0.0],
            WaterSupplyMode::SolarSeawater => [0.0, 0.0, 1.0],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            WaterSupplyMode::Desalination => "desalination",
            WaterSupplyMode::NetworkTransfer { .. } => "transfer",
            WaterSupplyMode::SolarSeawater => "solar_seawater",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaterSupplyPlan {
    mode: WaterSupplyMode,
    w_max: Quantity,
}

impl WaterSupplyPlan {
    pub fn new(mode: WaterSupplyMode, w_max: Quantity) -> Result<Self, EwhError> {
        let w = w_max.value_in(units::CUBIC_METER_PER_HOUR)?;
        if w <= 0.0 {
            return Err(EwhError::domain("w_max", w, "> 0 m³/h"));
        }
        mode.validate()?;
        Ok(WaterSupplyPlan { mode, w_max })
    }

    pub fn mode(&self) -> WaterSupplyMode {
        self.mode
    }

    pub fn w_max(&self) -> Quantity {
        self.w_max
    }

    pub fn alphas(&self) -> [f64; 3] {
        self.mode.alphas()
    }
}

fn flow_m3h(f: Quantity) -> Result<f64, EwhError> {
    let v = f.value_in(units::CUBIC_METER_PER_HOUR)?;
    if v < 0.0 {
        return Err(EwhError::domain("flow", v, ">= 0 m³/h"));
    }
    Ok(v)
}

/// Load segment `k ∈ 1..=4` with `0.25(k−1)·W̄ < f ≤ 0.25k·W̄`; zero flow
/// belongs to the first segment.
pub fn desal_segment(f: f64, w_max: f64) -> usize {
    ((4.0 * f / w_max).ceil() as usize).clamp(1, 4)
}

/// Reverse-osmosis power for flow `f`, linear within each load segment.
pub fn desal_power(f: Quantity, w_max: Quantity, econ: &EconParams) -> Result<Quantity, EwhError> {
    let w = w_max.value_in(units::CUBIC_METER_PER_HOUR)?;
    let flow = f.value_in(units::CUBIC_METER_PER_HOUR)?;
    if flow < 0.0 {
        return Err(EwhError::domain("flow", flow, "lower bound 0 m³/h"));
    }
    if flow > w {
        return Err(EwhError::domain("flow", flow, format!("upper bound W̄ = {w} m³/h")));
    }
    let k = desal_segment(flow, w);
    Ok(econ.e_des()[k - 1].checked_mul(f)?)
}

/// Friction head `y = r_w · f²`.
pub fn head_loss(f: Quantity, r_w: Quantity) -> Result<Quantity, EwhError> {
    let flow = flow_m3h(f)?;
    r_w.expect(units::HEAD_LOSS_COEFF.dimension())?;
    let y = r_w.canonical() * flow * flow;
    Ok(Quantity::new(y, units::METER)?)
}

/// Pump power `2.725 · y · f / η` (W), returned in kW.
pub fn pump_power(f: Quantity, r_w: Quantity, eta: f64) -> Result<Quantity, EwhError> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(EwhError::domain("eta_pump", eta, "(0, 1]"));
    }
    let flow = flow_m3h(f)?;
    let head = head_loss(f, r_w)?.canonical();
    let watts = PUMP_WATTS_PER_HEAD_FLOW * head * flow / eta;
    Ok(Quantity::new(watts / 1000.0, units::KW)?)
}

/// Capital of the active supply route.
pub fn water_capital(plan: &WaterSupplyPlan, econ: &EconParams) -> Result<Quantity, EwhError> {
    let w = plan.w_max;
    let capital = match plan.mode {
        WaterSupplyMode::Desalination => w.checked_mul(econ.c_des())?,
        WaterSupplyMode::NetworkTransfer { distance } => match econ.pipe_cost() {
            PipeCost::PerMeter(c) => c.checked_mul(distance)?,
            PipeCost::PerCapacityMeter(c) => w.checked_mul(c)?.checked_mul(distance)?,
        },
        WaterSupplyMode::SolarSeawater => {
            let c_sw = econ.c_sw().ok_or(EwhError::MissingParameter("c_sw"))?;
            w.checked_mul(c_sw)?
        }
    };
    capital.expect(units::USD.dimension())?;
    Ok(capital)
}

/// Daily electricity bill for desalination or pumping; zero for the solar
/// route, which carries its own generation.
pub fn water_operational(
    plan: &WaterSupplyPlan,
    flow: &TimeSeries,
    econ: &EconParams,
) -> Result<Quantity, EwhError> {
    flow.expect(units::CUBIC_METER_PER_HOUR.dimension())?;
    let price = econ.elec_price().canonical();
    let mut total = 0.0;
    for f in flow.iter() {
        let w = flow_m3h(f)?;
        if w > plan.w_max.canonical() {
            return Err(EwhError::domain(
                "flow",
                w,
                format!("upper bound W̄ = {} m³/h", plan.w_max.canonical()),
            ));
        }
        let power = match plan.mode {
            WaterSupplyMode::Desalination => desal_power(f, plan.w_max, econ)?,
            WaterSupplyMode::NetworkTransfer { distance } => {
                pump_power(f, econ.r_w_at(distance), econ.eta_pump())?
            }
            WaterSupplyMode::SolarSeawater => return Ok(Quantity::new(0.0, units::USD_PER_DAY)?),
        };
        total += price * power.canonical() * TimeSeries::STEP_HOURS;
    }
    Ok(Quantity::new(total * flow.per_day_factor(), units::USD_PER_DAY)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::constant_profile;
    use proptest::prelude::*;

    fn m3h(v: f64) -> Quantity {
        Quantity::new(v, units::CUBIC_METER_PER_HOUR).unwrap()
    }

    fn rw(v: f64) -> Quantity {
        Quantity::new(v, units::HEAD_LOSS_COEFF).unwrap()
    }

    fn kw(q: Quantity) -> f64 {
        q.value_in(units::KW).unwrap()
    }

    fn econ() -> EconParams {
        EconParams::paper_2024()
    }

    #[test]
    fn desal_power_examples() {
        let e = econ();
        assert_eq!(kw(desal_power(m3h(0.0), m3h(188.0), &e).unwrap()), 0.0);
        assert!((kw(desal_power(m3h(94.0), m3h(188.0), &e).unwrap()) - 357.2).abs() < 1e-9);
        assert!(matches!(
            desal_power(m3h(1.01 * 188.0), m3h(188.0), &e),
            Err(EwhError::Domain { .. })
        ));
        assert!(desal_power(m3h(-1.0), m3h(188.0), &e).is_err());
    }

    #[test]
    fn segment_boundaries_are_upper_inclusive() {
        assert_eq!(desal_segment(0.0, 100.0), 1);
        assert_eq!(desal_segment(25.0, 100.0), 1);
        assert_eq!(desal_segment(25.0001, 100.0), 2);
        assert_eq!(desal_segment(100.0, 100.0), 4);
    }

    #[test]
    fn head_and_pump_examples() {
        assert_eq!(head_loss(m3h(0.0), rw(2e-4)).unwrap().canonical(), 0.0);
        assert!((head_loss(m3h(100.0), rw(2e-4)).unwrap().canonical() - 2.0).abs() < 1e-12);
        assert!(head_loss(m3h(-1.0), rw(2e-4)).is_err());
        assert_eq!(kw(pump_power(m3h(0.0), rw(2e-4), 0.9).unwrap()), 0.0);
        let p = kw(pump_power(m3h(100.0), rw(2e-4), 0.9).unwrap());
        assert!((p - 2.725 * 2.0 * 100.0 / 0.9 / 1000.0).abs() < 1e-12);
        assert!((p - 0.6056).abs() < 1e-4);
        assert!(pump_power(m3h(1.0), rw(2e-4), 0.0).is_err());
        assert!(pump_power(m3h(1.0), rw(2e-4), 1.1).is_err());
    }

    #[test]
    fn capital_by_mode() {
        let e = econ();
        let desal = WaterSupplyPlan::new(WaterSupplyMode::Desalination, m3h(188.0)).unwrap();
        assert!((water_capital(&desal, &e).unwrap().canonical() - 37.6e6).abs() < 1e-6);
        let pipe0 = WaterSupplyPlan::new(WaterSupplyMode::transfer(0.0).unwrap(), m3h(188.0)).unwrap();
        assert_eq!(water_capital(&pipe0, &e).unwrap().canonical(), 0.0);
        let solar = WaterSupplyPlan::new(WaterSupplyMode::SolarSeawater, m3h(188.0)).unwrap();
        assert!(matches!(water_capital(&solar, &e), Err(EwhError::MissingParameter("c_sw"))));
    }

    #[test]
    fn printed_pipe_form_is_bilinear() {
        let mut b = econ().to_builder();
        b.c_tw = Some(Quantity::parse("2 $/(m m³/h)").unwrap());
        let e = b.build().unwrap();
        let cap = |w: f64, d: f64| {
            let p = WaterSupplyPlan::new(WaterSupplyMode::transfer(d).unwrap(), m3h(w)).unwrap();
            water_capital(&p, &e).unwrap().canonical()
        };
        assert!((cap(100.0, 10.0) - 2.0 * 100.0 * 10_000.0).abs() < 1e-6);
        assert!((cap(200.0, 10.0) - 2.0 * cap(100.0, 10.0)).abs() < 1e-6);
        assert!((cap(100.0, 30.0) - 3.0 * cap(100.0, 10.0)).abs() < 1e-6);
    }

    #[test]
    fn operational_examples() {
        let e = econ();
        let flow = constant_profile(m3h(94.0), 24).unwrap();
        let desal = WaterSupplyPlan::new(WaterSupplyMode::Desalination, m3h(188.0)).unwrap();
        let cost = water_operational(&desal, &flow, &e).unwrap().value_in(units::USD_PER_DAY).unwrap();
        assert!((cost - 2143.2).abs() < 1e-6);
        let solar = WaterSupplyPlan::new(WaterSupplyMode::SolarSeawater, m3h(188.0)).unwrap();
        assert_eq!(water_operational(&solar, &flow, &e).unwrap().canonical(), 0.0);
        let zero = constant_profile(m3h(0.0), 24).unwrap();
        assert_eq!(water_operational(&desal, &zero, &e).unwrap().canonical(), 0.0);
        let over = constant_profile(m3h(200.0), 24).unwrap();
        assert!(water_operational(&desal, &over, &e).is_err());
    }

    #[test]
    fn plan_invariants() {
        assert!(WaterSupplyPlan::new(WaterSupplyMode::Desalination, m3h(0.0)).is_err());
        assert!(WaterSupplyMode::transfer(-1.0).is_err());
        for mode in [
            WaterSupplyMode::Desalination,
            WaterSupplyMode::transfer(10.0).unwrap(),
            WaterSupplyMode::SolarSeawater,
        ] {
            let a = mode.alphas();
            assert_eq!(a.iter().sum::<f64>(), 1.0);
            assert_eq!(a.iter().filter(|&&x| x == 1.0).count(), 1);
        }
    }

    fn scan_segment(f: f64, w: f64) -> usize {
        if f == 0.0 {
            return 1;
        }
        for k in 1..=4 {
            let lo = 0.25 * (k - 1) as f64 * w;
            let hi = 0.25 * k as f64 * w;
            if lo < f && f <= hi {
                return k;
            }
        }
        unreachable!("flow within [0, W̄]")
    }

    #[test]
    fn segment_matches_interval_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let w: f64 = rng.gen_range(1.0..1000.0);
            let f: f64 = rng.gen_range(0.0..=w);
            assert_eq!(desal_segment(f, w), scan_segment(f, w), "f={f} w={w}");
        }
    }

    proptest! {
        #[test]
        fn pump_power_is_cubic(f in 0.01f64..2000.0, a in 0.1f64..10.0, r in 1e-7f64..1e-2) {
            let p1 = kw(pump_power(m3h(f), rw(r), 0.9).unwrap());
            let pa = kw(pump_power(m3h(a * f), rw(r), 0.9).unwrap());
            prop_assert!(((pa - a.powi(3) * p1) / pa).abs() < 1e-12);
            let p2 = kw(pump_power(m3h(2.0 * f), rw(r), 0.9).unwrap());
            prop_assert!((p2 / p1 - 8.0).abs() < 1e-12);
        }

        #[test]
        fn desal_power_non_negative(frac in 0.0f64..=1.0, w in 1.0f64..1000.0) {
            let p = kw(desal_power(m3h(frac * w), m3h(w), &econ()).unwrap());
            prop_assert!(p >= 0.0);
        }

        #[test]
        fn transfer_opex_monotone_in_rw(r1 in 1e-6f64..1e-2, r2 in 1e-6f64..1e-2, f in 1.0f64..500.0) {
            let cost = |r: f64| {
                let mut b = econ().to_builder();
                b.r_w = Some(rw(r));
                let e = b.build().unwrap();
                let plan = WaterSupplyPlan::new(WaterSupplyMode::transfer(100.0).unwrap(), m3h(f)).unwrap();
                let s = constant_profile(m3h(f), 24).unwrap();
                water_operational(&plan, &s, &e).unwrap().canonical()
            };
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            prop_assert!(cost(lo) <= cost(hi));
        }
    }
}
