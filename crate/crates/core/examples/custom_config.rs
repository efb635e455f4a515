// Loading a parameter file, overriding a few values, and exporting the
// resolved set so a run can be reproduced exactly.

use ewh_nexus::prelude::*;

const OVERRIDES: &str = r#"
[economics]
elec_price = "0.18 $/kWh"
r_cts = "15 $/ton"
r_ccs = "45 $/ton"
c_cts = "2900 $/(ton/day)"
c_ccs = "40700 $/(ton/day)"
c_wind = "1030 $/kW"
c_des = "0.2 M$/(m³/h)"
c_tw = "852 $/m"
eta_pump = 0.9
xi_p = "50 kWh/kg"
include_hydrogen_capital = true

[economics.prices]
methane = "1400 $/ton"
methanol = "616 $/ton"
ethanol = "493 $/ton"

[scenario]
plant = "coal"
product = "methane"
beta = 0.5
water = "transfer"
distance = "80 km"
"#;

fn run_example() -> anyhow::Result<()> {
    let config = Config::from_toml_str(OVERRIDES)?;
    let result = total_daily_cost(&config.scenario_config())?;
    println!(
        "coal, half to methane, 80 km pipe: {:.0} $/day ({:.2} $/ton)",
        result.daily_cost_usd_per_day(),
        result.carbon_penalty_usd_per_ton()
    );

    let exported = config.to_toml();
    let reloaded = Config::from_toml_str(&exported)?;
    let again = total_daily_cost(&reloaded.scenario_config())?;
    assert_eq!(again.daily_cost.canonical().to_bits(), result.daily_cost.canonical().to_bits());
    println!("exported config reproduces the run bit for bit ({} bytes)", exported.len());

    let bad = OVERRIDES.replace("beta = 0.5", "beta = 1.2").replace("eta_pump = 0.9", "eta_pump = 0");
    if let Err(errors) = Config::from_toml_str(&bad) {
        print!("{errors}");
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
