// Emission penalty above which each carbon strategy becomes the cheaper
// choice for the plant owner.

use ewh_nexus::prelude::*;

fn run_example() -> anyhow::Result<()> {
    let econ = EconParams::paper_2024();
    let mut strategies = vec![Strategy::StoreAll];
    strategies.extend(ProductSpec::all().into_iter().map(Strategy::ReuseAll));
    for plant in PlantSpec::presets() {
        println!("{}", plant.name());
        for &s in &strategies {
            let t = penalty_threshold(&plant, s, &econ)?.value_in(units::USD_PER_TON)?;
            let note = if t < 0.0 { "  (profitable without any penalty)" } else { "" };
            println!("  {:<20} {:>8.2} $/ton{note}", s.to_string(), t);
        }
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
