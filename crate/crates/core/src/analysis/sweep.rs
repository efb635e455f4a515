use rayon::prelude::*;
use thiserror::Error;

use crate::ccss::ReuseFraction;
use crate::conversion::{ProductKind, ProductSpec};
use crate::economics::{total_daily_cost, ScenarioConfig, ScenarioResult};
use crate::error::EwhError;
use crate::quantities::{EconParams, PlantSpec};
use crate::water::WaterSupplyMode;

/// Axes of a scenario sweep. Every plant also gets one storage-only row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    plants: Vec<PlantSpec>,
    products: Vec<ProductSpec>,
    betas: Vec<ReuseFraction>,
    water: WaterSupplyMode,
}

impl SweepGrid {
    /// Reuse fractions of zero are covered by the storage rows and dropped
    /// from the product axis; the rest are sorted and deduplicated.
    pub fn new(
        plants: Vec<PlantSpec>,
        products: Vec<ProductSpec>,
        betas: Vec<ReuseFraction>,
        water: WaterSupplyMode,
    ) -> Result<Self, EwhError> {
        if plants.is_empty() {
            return Err(EwhError::invalid("sweep needs at least one plant"));
        }
        if betas.is_empty() {
            return Err(EwhError::invalid("sweep needs at least one reuse fraction"));
        }
        let mut betas: Vec<ReuseFraction> = betas.into_iter().filter(|b| b.value() > 0.0).collect();
        betas.sort_by(|a, b| a.value().total_cmp(&b.value()));
        betas.dedup();
        Ok(SweepGrid {
            plants,
            products,
            betas,
            water,
        })
    }

    /// Three preset plants, three products, half and full reuse, desalinated
    /// water: 21 rows.
    pub fn paper() -> Self {
        SweepGrid::new(
            PlantSpec::presets(),
            ProductSpec::all(),
            vec![ReuseFraction::HALF, ReuseFraction::REUSE_ALL],
            WaterSupplyMode::Desalination,
        )
        .expect("non-empty axes")
    }

    pub fn plants(&self) -> &[PlantSpec] {
        &self.plants
    }

    pub fn products(&self) -> &[ProductSpec] {
        &self.products
    }

    pub fn betas(&self) -> &[ReuseFraction] {
        &self.betas
    }

    fn cells(&self) -> Vec<(&PlantSpec, Option<&ProductSpec>, ReuseFraction)> {
        let mut out = Vec::new();
        for plant in &self.plants {
            out.push((plant, None, ReuseFraction::STORE_ALL));
            for product in &self.products {
                for &beta in &self.betas {
                    out.push((plant, Some(product), beta));
                }
            }
        }
        out
    }
}

/// A failed cell, tagged with its coordinates.
#[derive(Debug, Error)]
#[error("cell (plant {plant}, product {}, beta {beta}): {source}", product.map_or("none", |p| p.as_str()))]
pub struct SweepError {
    pub plant: String,
    pub product: Option<ProductKind>,
    pub beta: f64,
    #[source]
    pub source: EwhError,
}

#[derive(Debug)]
pub struct SweepCell {
    pub plant: String,
    pub product: Option<ProductKind>,
    pub beta: f64,
    pub result: Result<ScenarioResult, SweepError>,
}

/// Evaluates every cell in parallel. Output order is plant, storage row,
/// then product, then β ascending, regardless of completion order; a failed
/// cell is reported in place without aborting the rest.
pub fn scenario_sweep(grid: &SweepGrid, econ: &EconParams) -> Vec<SweepCell> {
    grid.cells()
        .into_par_iter()
        .map(|(plant, product, beta)| {
            let scenario = match product {
                None => ScenarioConfig::storage(plant.clone(), econ.clone()),
                Some(p) => ScenarioConfig::reuse(plant.clone(), *p, beta, grid.water, econ.clone()),
            };
            let kind = product.map(|p| p.kind());
            let result = total_daily_cost(&scenario).map_err(|source| SweepError {
                plant: plant.name().to_string(),
                product: kind,
                beta: beta.value(),
                source,
            });
            SweepCell {
                plant: plant.name().to_string(),
                product: kind,
                beta: beta.value(),
                result,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_grid_has_21_rows_in_order() {
        let cells = scenario_sweep(&SweepGrid::paper(), &EconParams::paper_2024());
        assert_eq!(cells.len(), 21);
        assert!(cells.iter().all(|c| c.result.is_ok()));
        assert_eq!(cells[0].plant, "biomass");
        assert_eq!(cells[0].product, None);
        assert_eq!((cells[1].product, cells[1].beta), (Some(ProductKind::Methane), 0.5));
        assert_eq!((cells[2].product, cells[2].beta), (Some(ProductKind::Methane), 1.0));
        assert_eq!(cells[7].plant, "natural_gas");
        assert_eq!(cells[7].product, None);
    }

    #[test]
    fn empty_products_gives_storage_rows() {
        let grid = SweepGrid::new(
            PlantSpec::presets(),
            vec![],
            vec![ReuseFraction::HALF],
            WaterSupplyMode::Desalination,
        )
        .unwrap();
        let cells = scenario_sweep(&grid, &EconParams::paper_2024());
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|c| c.product.is_none()));
    }

    #[test]
    fn methane_cheaper_than_ethanol_at_full_reuse() {
        let cells = scenario_sweep(&SweepGrid::paper(), &EconParams::paper_2024());
        for plant in PlantSpec::presets() {
            let cost = |k| {
                cells
                    .iter()
                    .find(|c| c.plant == plant.name() && c.product == Some(k) && c.beta == 1.0)
                    .unwrap()
                    .result
                    .as_ref()
                    .unwrap()
                    .daily_cost_usd_per_day()
            };
            assert!(cost(ProductKind::Methane) < cost(ProductKind::Ethanol));
        }
    }

    #[test]
    fn failing_cell_does_not_abort() {
        let mut b = EconParams::paper_2024().to_builder();
        b.product_prices.remove(&ProductKind::Ethanol);
        let cells = scenario_sweep(&SweepGrid::paper(), &b.build().unwrap());
        let failed: Vec<_> = cells.iter().filter(|c| c.result.is_err()).collect();
        assert_eq!(failed.len(), 6);
        let msg = failed[0].result.as_ref().unwrap_err().to_string();
        assert!(msg.contains("biomass") && msg.contains("ethanol"), "{msg}");
    }

    #[test]
    fn sweep_is_deterministic() {
        let e = EconParams::paper_2024();
        let flat = |cells: Vec<SweepCell>| -> Vec<u64> {
            cells
                .into_iter()
                .map(|c| c.result.unwrap().daily_cost.canonical().to_bits())
                .collect()
        };
        assert_eq!(flat(scenario_sweep(&SweepGrid::paper(), &e)), flat(scenario_sweep(&SweepGrid::paper(), &e)));
    }
}
