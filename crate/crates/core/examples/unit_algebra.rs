// Quantities carry their dimension; mixing incompatible units is an error,
// not a silent coercion.

use ewh_nexus::prelude::*;

fn run_example() -> anyhow::Result<()> {
    let capacity = Quantity::parse("500 MW")?;
    let factor = Quantity::parse("230 g/kWh")?;
    let emissions = capacity.checked_mul(factor)?;
    println!("emissions: {} ton/h", emissions.value_in(units::TON_PER_HOUR)?);
    println!("           {} ton/day", emissions.value_in(units::TON_PER_DAY)?);

    let c_des = Quantity::parse("0.2 M$/(m³/h)")?;
    let w_max = Quantity::parse("188 m3/h")?;
    println!("desalination capital: {} M$", c_des.checked_mul(w_max)?.value_in(units::MUSD)?);

    match capacity.checked_add(factor) {
        Ok(_) => unreachable!(),
        Err(e) => println!("500 MW + 230 g/kWh -> {e}"),
    }

    // canonical strings parse back to the same bits
    let price = Quantity::parse("1400 $/ton")?;
    let text = price.to_canonical_string();
    assert_eq!(Quantity::parse(&text)?, price);
    println!("1400 $/ton is stored as {text}");
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
