// Distance beyond which building a desalination plant beats piping water
// in from the network.

use ewh_nexus::analysis::cost_gap;
use ewh_nexus::prelude::*;

fn run_example() -> anyhow::Result<()> {
    let econ = EconParams::paper_2024();
    for plant in PlantSpec::presets() {
        let query = BreakevenQuery::new(plant.clone(), ProductSpec::methane());
        let d = breakeven_distance(&query, &econ)?;
        print!("{:<12} break-even {:>6.1} km   gap:", plant.name(), d.value_in(units::KM)?);
        for km in [10.0, 100.0, 300.0] {
            print!("  {km} km {:+.0} $/day", cost_gap(&query, &econ, km)?);
        }
        println!();
    }

    // a window that never crosses is reported, not guessed
    let km = |v| Quantity::new(v, units::KM);
    let narrow = BreakevenQuery::new(PlantSpec::biomass(), ProductSpec::methane()).with_bounds(km(300.0)?, km(400.0)?)?;
    if let Err(e) = breakeven_distance(&narrow, &econ) {
        println!("{e}");
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
