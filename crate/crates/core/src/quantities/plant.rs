use super::unit::{units, Quantity};
use crate::error::EwhError;

/// A conventional power plant retrofitted with carbon capture.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantSpec {
    name: String,
    capacity: Quantity,
    emission_factor: Quantity,
}

impl PlantSpec {
    pub fn new(
        name: impl Into<String>,
        capacity: Quantity,
        emission_factor: Quantity,
    ) -> Result<Self, EwhError> {
        let name = name.into();
        let cap = capacity.value_in(units::KW)?;
        let ef = emission_factor.value_in(units::KG_PER_KWH)?;
        if cap < 0.0 {
            return Err(EwhError::domain("capacity", cap, ">= 0 kW"));
        }
        if ef < 0.0 {
            return Err(EwhError::domain("emission_factor", ef, ">= 0 kg/kWh"));
        }
        Ok(PlantSpec {
            name,
            capacity,
            emission_factor,
        })
    }

    fn preset(name: &str, grams_per_kwh: f64) -> Self {
        PlantSpec::new(
            name,
            Quantity::new(500.0, units::MW).unwrap(),
            Quantity::new(grams_per_kwh, units::G_PER_KWH).unwrap(),
        )
        .expect("preset plant is valid")
    }

    /// 500 MW coal plant, 820 g CO₂/kWh.
    pub fn coal() -> Self {
        Self::preset("coal", 820.0)
    }

    /// 500 MW natural-gas plant, 490 g CO₂/kWh.
    pub fn natural_gas() -> Self {
        Self::preset("natural_gas", 490.0)
    }

    /// 500 MW biomass plant, 230 g CO₂/kWh.
    pub fn biomass() -> Self {
        Self::preset("biomass", 230.0)
    }

    pub fn presets() -> Vec<PlantSpec> {
        vec![Self::biomass(), Self::natural_gas(), Self::coal()]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn capacity(&self) -> Quantity {
        self.capacity
    }

    pub fn emission_factor(&self) -> Quantity {
        self.emission_factor
    }

    /// C̄ in kg/h (canonical).
    pub(crate) fn emissions_kg_per_hour(&self) -> f64 {
        self.capacity.canonical() * self.emission_factor.canonical()
    }
}

/// Carbon emitted when the plant runs at full capacity, in ton/h.
pub fn emissions_at_capacity(plant: &PlantSpec) -> Quantity {
    plant
        .capacity
        .checked_mul(plant.emission_factor)
        .expect("finite product of validated quantities")
}

#[cfg(test)]
mod tests {
    use super::*;
    use units::*;

    fn ton_h(p: &PlantSpec) -> f64 {
        emissions_at_capacity(p).value_in(TON_PER_HOUR).unwrap()
    }

    #[test]
    fn table_emission_rates() {
        assert!((ton_h(&PlantSpec::biomass()) - 115.0).abs() < 1e-9);
        assert!((ton_h(&PlantSpec::natural_gas()) - 245.0).abs() < 1e-9);
        assert!((ton_h(&PlantSpec::coal()) - 410.0).abs() < 1e-9);
    }

    #[test]
    fn zero_capacity_emits_nothing() {
        let p = PlantSpec::new(
            "idle",
            Quantity::new(0.0, KW).unwrap(),
            Quantity::parse("820 g/kWh").unwrap(),
        )
        .unwrap();
        assert_eq!(ton_h(&p), 0.0);
    }

    #[test]
    fn rejects_bad_units_and_signs() {
        let ef = Quantity::parse("230 g/kWh").unwrap();
        assert!(PlantSpec::new("x", Quantity::new(1.0, KWH).unwrap(), ef).is_err());
        assert!(PlantSpec::new("x", Quantity::new(-1.0, KW).unwrap(), ef).is_err());
        let neg = Quantity::parse("-1 g/kWh").unwrap();
        assert!(PlantSpec::new("x", Quantity::new(1.0, KW).unwrap(), neg).is_err());
    }
}
