// Hydrogen, feed water and product flows needed to reuse every ton of CO₂
// the three reference plants emit.

use ewh_nexus::prelude::*;

fn run_example() -> anyhow::Result<()> {
    for product in ProductSpec::all() {
        let r = stoichiometry(&product);
        println!(
            "{}: {:.4} kg H₂, {:.4} kg product, {:.3} L water per kg CO₂",
            product.kind(),
            r.xi_h,
            r.xi_chi,
            r.water_demand
        );
        for plant in PlantSpec::presets() {
            let rates = nexus_rates(&plant, &product, ReuseFraction::REUSE_ALL);
            println!(
                "  {:<12} CO₂ {:>5.0} t/h  H₂ {:>5.1} t/h  water {:>6.1} m³/h  product {:>6.1} t/h",
                plant.name(),
                emissions_at_capacity(&plant).value_in(units::TON_PER_HOUR)?,
                rates.hydrogen.value_in(units::TON_PER_HOUR)?,
                rates.water.value_in(units::CUBIC_METER_PER_HOUR)?,
                rates.product.value_in(units::TON_PER_HOUR)?,
            );
        }
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
