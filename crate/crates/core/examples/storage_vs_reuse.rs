// Daily cost of storing captured CO₂ versus turning it into chemicals,
// for every plant, product and reuse share.

use ewh_nexus::prelude::*;

fn run_example() -> anyhow::Result<()> {
    let econ = EconParams::paper_2024();

    let scenario = ScenarioConfig::reuse(
        PlantSpec::biomass(),
        ProductSpec::methanol(),
        ReuseFraction::HALF,
        WaterSupplyMode::Desalination,
        econ.clone(),
    );
    let result = total_daily_cost(&scenario)?;
    println!("biomass, half the CO₂ to methanol:");
    for item in result.ledger.items() {
        println!("  {:<20} {:<12} {}", item.term.to_string(), item.label, item.amount);
    }
    println!("  daily cost {:.0} $/day\n", result.daily_cost_usd_per_day());

    println!("{:<12} {:<9} {:>4} {:>14} {:>10}", "plant", "product", "beta", "M$/day", "$/ton");
    for cell in scenario_sweep(&SweepGrid::paper(), &econ) {
        let r = cell.result?;
        println!(
            "{:<12} {:<9} {:>4} {:>14.4} {:>10.2}",
            cell.plant,
            cell.product.map_or("none".into(), |p| p.to_string()),
            cell.beta,
            r.daily_cost_usd_per_day() / 1e6,
            r.carbon_penalty_usd_per_ton()
        );
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
