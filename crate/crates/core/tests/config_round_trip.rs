use ewh_nexus::config::{load_config, Config};
use ewh_nexus::prelude::*;
use proptest::prelude::*;

#[test]
fn load_from_disk_matches_bundled_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("preset.toml");
    std::fs::write(&path, Config::paper_2024_toml()).unwrap();
    assert_eq!(load_config(&path).unwrap(), Config::paper_2024());
}

#[test]
fn missing_file_is_io_error() {
    assert!(matches!(load_config("/nonexistent/x.toml"), Err(EwhError::Io { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exported_config_is_bit_identical(
        elec in 0.01f64..1.0,
        c_tw in 1.0f64..5000.0,
        xi_p in 45.0f64..60.0,
        beta in 0.0f64..=1.0,
        km in 0.0f64..500.0,
    ) {
        let text = Config::paper_2024_toml()
            .replace("elec_price = \"0.25 $/kWh\"", &format!("elec_price = \"{elec} $/kWh\""))
            .replace("c_tw = \"852 $/m\"", &format!("c_tw = \"{c_tw} $/m\""))
            .replace("xi_p = \"52.5 kWh/kg\"", &format!("xi_p = \"{xi_p} kWh/kg\""))
            + &format!("\n[scenario]\nplant = \"natural_gas\"\nproduct = \"methanol\"\nbeta = {beta}\nwater = \"transfer\"\ndistance = \"{km} km\"\n");
        let config = Config::from_toml_str(&text).unwrap();
        let back = Config::from_toml_str(&config.to_toml()).unwrap();
        prop_assert_eq!(&back, &config);
        let a = total_daily_cost(&config.scenario_config()).unwrap();
        let b = total_daily_cost(&back.scenario_config()).unwrap();
        prop_assert_eq!(a.daily_cost.canonical().to_bits(), b.daily_cost.canonical().to_bits());
    }
}
