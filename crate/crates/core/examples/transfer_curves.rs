// Capital and pumping cost of water transfer over 60, 260 and 300 km for a
// range of flows, as CSV.

use ewh_nexus::prelude::*;

fn run_example() -> anyhow::Result<()> {
    let econ = EconParams::paper_2024();
    let distances = [60.0, 260.0, 300.0].map(|d| Quantity::new(d, units::KM)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let flows = (0..=9)
        .map(|i| Quantity::new(20.0 * i as f64, units::CUBIC_METER_PER_HOUR))
        .collect::<Result<Vec<_>, _>>()?;
    let cells = transfer_cost_curve(&PlantSpec::biomass(), &ProductSpec::methane(), &distances, &flows, &econ)?;
    println!("distance_km,flow_m3_per_h,capital_usd_per_day,operational_usd_per_day,total_usd_per_day");
    for c in cells {
        let p = c.point?;
        println!(
            "{},{},{},{},{}",
            c.distance_km, c.flow_m3h, p.capital_usd_per_day, p.operational_usd_per_day, p.total_usd_per_day
        );
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
