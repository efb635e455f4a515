//! Reaction stoichiometry for CO₂ hydrogenation products.
//!
//! Molar masses are built from standard atomic weights so that every
//! balanced reaction conserves mass exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EwhError;

pub const ATOMIC_MASS_H: f64 = 1.008;
pub const ATOMIC_MASS_C: f64 = 12.011;
pub const ATOMIC_MASS_O: f64 = 15.999;

/// Atom counts of a C/H/O molecule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formula {
    pub c: u32,
    pub h: u32,
    pub o: u32,
}

impl Formula {
    pub const CO2: Formula = Formula::new(1, 0, 2);
    pub const H2: Formula = Formula::new(0, 2, 0);
    pub const H2O: Formula = Formula::new(0, 2, 1);
    pub const CH4: Formula = Formula::new(1, 4, 0);
    pub const CH3OH: Formula = Formula::new(1, 4, 1);
    pub const C2H6O: Formula = Formula::new(2, 6, 1);

    pub const fn new(c: u32, h: u32, o: u32) -> Self {
        Formula { c, h, o }
    }

    /// g/mol.
    pub fn molar_mass(&self) -> f64 {
        self.c as f64 * ATOMIC_MASS_C + self.h as f64 * ATOMIC_MASS_H + self.o as f64 * ATOMIC_MASS_O
    }

    fn times(&self, n: u32) -> [u32; 3] {
        [self.c * n, self.h * n, self.o * n]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Methane,
    Methanol,
    Ethanol,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [ProductKind::Methane, ProductKind::Methanol, ProductKind::Ethanol];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProductKind::Methane => "methane",
            ProductKind::Methanol => "methanol",
            ProductKind::Ethanol => "ethanol",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductKind {
    type Err = EwhError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "methane" | "ch4" => Ok(ProductKind::Methane),
            "methanol" | "ch3oh" => Ok(ProductKind::Methanol),
            "ethanol" | "c2h6o" => Ok(ProductKind::Ethanol),
            other => Err(EwhError::invalid(format!(
                "unknown product `{other}` (expected methane, methanol or ethanol)"
            ))),
        }
    }
}

/// `co2 CO₂ + h2 H₂ → product P + water H₂O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reaction {
    pub co2: u32,
    pub h2: u32,
    pub product: Formula,
    pub product_moles: u32,
    pub water: u32,
}

impl Reaction {
    pub fn is_balanced(&self) -> bool {
        let lhs = add(Formula::CO2.times(self.co2), Formula::H2.times(self.h2));
        let rhs = add(
            self.product.times(self.product_moles),
            Formula::H2O.times(self.water),
        );
        lhs == rhs
    }
}

fn add(a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// A chemical product together with the mass ratios its reaction implies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSpec {
    kind: ProductKind,
    reaction: Reaction,
}

/// Mass ratios per kg of CO₂ converted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassRatios {
    /// kg H₂ per kg CO₂.
    pub xi_h: f64,
    /// kg product per kg CO₂.
    pub xi_chi: f64,
    /// Electrolysis feed water, litres (≡ kg) per kg CO₂.
    pub water_demand: f64,
    /// Water released by the synthesis reaction, kg per kg CO₂.
    pub water_byproduct: f64,
}

impl ProductSpec {
    pub fn new(kind: ProductKind, reaction: Reaction) -> Result<Self, EwhError> {
        if reaction.co2 == 0 || reaction.product_moles == 0 {
            return Err(EwhError::invalid(format!("{kind}: reaction must consume CO₂ and yield product")));
        }
        if !reaction.is_balanced() {
            return Err(EwhError::invalid(format!("{kind}: reaction is not atom-balanced")));
        }
        Ok(ProductSpec { kind, reaction })
    }

    /// `CO₂ + 4H₂ → CH₄ + 2H₂O`
    pub fn methane() -> Self {
        Self::builtin(ProductKind::Methane)
    }

    /// `CO₂ + 3H₂ → CH₃OH + H₂O`
    pub fn methanol() -> Self {
        Self::builtin(ProductKind::Methanol)
    }

    /// `2CO₂ + 6H₂ → C₂H₆O + 3H₂O`
    pub fn ethanol() -> Self {
        Self::builtin(ProductKind::Ethanol)
    }

    pub fn builtin(kind: ProductKind) -> Self {
        let reaction = match kind {
            ProductKind::Methane => Reaction { co2: 1, h2: 4, product: Formula::CH4, product_moles: 1, water: 2 },
            ProductKind::Methanol => Reaction { co2: 1, h2: 3, product: Formula::CH3OH, product_moles: 1, water: 1 },
            ProductKind::Ethanol => Reaction { co2: 2, h2: 6, product: Formula::C2H6O, product_moles: 1, water: 3 },
        };
        ProductSpec::new(kind, reaction).expect("built-in reactions are balanced")
    }

    pub fn all() -> Vec<ProductSpec> {
        ProductKind::ALL.iter().map(|&k| Self::builtin(k)).collect()
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn reaction(&self) -> &Reaction {
        &self.reaction
    }

    pub fn ratios(&self) -> MassRatios {
        stoichiometry(self)
    }
}

/// Mass ratios implied by a product's reaction, per kg of CO₂.
pub fn stoichiometry(product: &ProductSpec) -> MassRatios {
    let r = &product.reaction;
    let co2 = r.co2 as f64 * Formula::CO2.molar_mass();
    // one water molecule is split per H₂ molecule produced
    MassRatios {
        xi_h: r.h2 as f64 * Formula::H2.molar_mass() / co2,
        xi_chi: r.product_moles as f64 * r.product.molar_mass() / co2,
        water_demand: r.h2 as f64 * Formula::H2O.molar_mass() / co2,
        water_byproduct: r.water as f64 * Formula::H2O.molar_mass() / co2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_reactions_balance() {
        for p in ProductSpec::all() {
            assert!(p.reaction().is_balanced(), "{}", p.kind());
        }
    }

    #[test]
    fn unbalanced_reaction_rejected() {
        let r = Reaction { co2: 1, h2: 3, product: Formula::CH4, product_moles: 1, water: 2 };
        assert!(ProductSpec::new(ProductKind::Methane, r).is_err());
    }

    #[test]
    fn hydrogen_per_kg_co2() {
        // 3 × 2.016 / 44.009
        assert!((ProductSpec::methanol().ratios().xi_h - 0.137426).abs() < 1e-6);
        assert_eq!(ProductSpec::methanol().ratios().xi_h, ProductSpec::ethanol().ratios().xi_h);
        // 4 × 2.016 / 44.009
        assert!((ProductSpec::methane().ratios().xi_h - 0.183235).abs() < 1e-6);
    }

    #[test]
    fn feed_water_per_kg_co2() {
        let m = ProductSpec::methane().ratios();
        assert!((m.water_demand - 1.6374).abs() < 1e-4);
        let m = ProductSpec::methanol().ratios();
        assert!((m.water_demand - 1.2280).abs() < 1e-4);
    }

    #[test]
    fn product_per_kg_co2() {
        assert!((ProductSpec::methane().ratios().xi_chi - 16.043 / 44.009).abs() < 1e-12);
        assert!((ProductSpec::ethanol().ratios().xi_chi - 46.069 / 88.018).abs() < 1e-12);
    }

    #[test]
    fn mass_is_conserved() {
        for p in ProductSpec::all() {
            let m = p.ratios();
            let lhs = 1.0 + m.xi_h;
            let rhs = m.xi_chi + m.water_byproduct;
            assert!(((lhs - rhs) / lhs).abs() < 1e-9, "{}", p.kind());
        }
    }

    #[test]
    fn product_names_parse() {
        assert_eq!("Methanol".parse::<ProductKind>().unwrap(), ProductKind::Methanol);
        assert!("propane".parse::<ProductKind>().is_err());
    }
}
