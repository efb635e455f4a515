//! Itemised cost flows of one scenario evaluation.

use std::fmt;

use serde::Serialize;

use super::unit::{units, Dimension, Quantity};
use crate::error::EwhError;

/// Which model term produced a ledger item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    /// Capture plant plus CO₂ transfer pipeline.
    CcssCapital,
    /// Capture and transfer charges on captured tonnage.
    CcssOperational,
    /// Dedicated wind farm sized to the electrolyzer load.
    PowerCapital,
    /// Desalination plant, transfer pipe or solar-seawater unit.
    WaterCapital,
    /// Electricity bought for desalination or pumping.
    WaterOperational,
    /// Electrolyzer fleet.
    HydrogenCapital,
    /// Sales of the synthesised chemical (negative cost).
    ChemicalRevenue,
    /// Capital converted to a daily charge over the project horizon.
    CapitalCharge,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Term::CcssCapital => "ccss_capital",
            Term::CcssOperational => "ccss_operational",
            Term::PowerCapital => "power_capital",
            Term::WaterCapital => "water_capital",
            Term::WaterOperational => "water_operational",
            Term::HydrogenCapital => "hydrogen_capital",
            Term::ChemicalRevenue => "chemical_revenue",
            Term::CapitalCharge => "capital_charge",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    Capital,
    Operational,
    Revenue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostItem {
    pub label: String,
    pub term: Term,
    pub kind: CostKind,
    /// Either `$` (capital outlay) or a daily flow `$/day`.
    pub amount: Quantity,
}

impl CostItem {
    pub fn is_daily(&self) -> bool {
        self.amount.dimension() == units::USD_PER_DAY.dimension()
    }
}

/// Ordered list of cost items. Totals are correctly rounded sums, so they do
/// not depend on item order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostLedger {
    items: Vec<CostItem>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an item; the amount must be `$` or `$/day`.
    pub fn push(
        &mut self,
        label: impl Into<String>,
        term: Term,
        kind: CostKind,
        amount: Quantity,
    ) -> Result<(), EwhError> {
        let dim = amount.dimension();
        if dim != Dimension::MONEY && dim != units::USD_PER_DAY.dimension() {
            return Err(EwhError::invalid(format!(
                "ledger amount for {term} must be $ or $/day, found {dim}"
            )));
        }
        self.items.push(CostItem {
            label: label.into(),
            term,
            kind,
            amount,
        });
        Ok(())
    }

    pub fn items(&self) -> &[CostItem] {
        &self.items
    }

    pub fn find(&self, term: Term) -> Option<&CostItem> {
        self.items.iter().find(|i| i.term == term)
    }

    fn sum_where(&self, dim: Dimension, pred: impl Fn(&CostItem) -> bool) -> Quantity {
        let parts: Vec<f64> = self
            .items
            .iter()
            .filter(|i| i.amount.dimension() == dim && pred(i))
            .map(|i| i.amount.canonical())
            .collect();
        Quantity::from_canonical(exact_sum(&parts), dim).expect("sum of finite items")
    }

    /// Sum of capital outlays in `$`.
    pub fn capital_total(&self) -> Quantity {
        self.sum_where(Dimension::MONEY, |_| true)
    }

    /// Sum of every daily flow: capital charge, operating costs, revenues.
    pub fn daily_total(&self) -> Quantity {
        self.sum_where(units::USD_PER_DAY.dimension(), |_| true)
    }

    /// Daily flows of one kind only.
    pub fn daily_total_of(&self, kind: CostKind) -> Quantity {
        self.sum_where(units::USD_PER_DAY.dimension(), |i| i.kind == kind)
    }

    pub fn shuffled_by(&self, order: &[usize]) -> CostLedger {
        CostLedger {
            items: order.iter().map(|&i| self.items[i].clone()).collect(),
        }
    }
}

/// Correctly rounded floating-point sum (Shewchuk's algorithm with the
/// half-even fix-up used by Python's `math.fsum`).
pub fn exact_sum(values: &[f64]) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for &v in values {
        let mut x = v;
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }
    let mut n = partials.len();
    if n == 0 {
        return 0.0;
    }
    n -= 1;
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        let yr = x - hi;
        if y == yr {
            hi = x;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_sum_beats_naive() {
        let v = [1e100, 1.0, -1e100, 1e-100];
        assert_eq!(exact_sum(&v), 1.0);
        assert_eq!(exact_sum(&[0.1; 10]), 1.0);
        assert_eq!(exact_sum(&[]), 0.0);
    }

    #[test]
    fn rejects_non_money_amounts() {
        let mut l = CostLedger::new();
        let bad = Quantity::new(1.0, units::KW).unwrap();
        assert!(l.push("x", Term::PowerCapital, CostKind::Capital, bad).is_err());
    }

    proptest! {
        #[test]
        fn totals_invariant_under_shuffle(
            amounts in prop::collection::vec(-1e9f64..1e9, 1..20),
            seed in any::<u64>(),
        ) {
            let mut l = CostLedger::new();
            for (i, a) in amounts.iter().enumerate() {
                let unit = if i % 3 == 0 { units::USD } else { units::USD_PER_DAY };
                l.push(format!("item{i}"), Term::CcssOperational, CostKind::Operational,
                       Quantity::new(*a, unit).unwrap()).unwrap();
            }
            let mut order: Vec<usize> = (0..amounts.len()).collect();
            let mut s = seed;
            for i in (1..order.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let shuffled = l.shuffled_by(&order);
            prop_assert_eq!(l.daily_total(), shuffled.daily_total());
            prop_assert_eq!(l.capital_total(), shuffled.capital_total());
        }
    }
}
