use super::unit::{Dimension, Quantity, UnitError};
use crate::error::EwhError;

/// Hourly profile of a physical flow (all steps share one unit).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    dim: Dimension,
}

impl TimeSeries {
    /// Hours per step.
    pub const STEP_HOURS: f64 = 1.0;

    pub fn new(values: Vec<Quantity>) -> Result<Self, EwhError> {
        let first = values
            .first()
            .ok_or_else(|| EwhError::invalid("time series must not be empty"))?;
        let dim = first.dimension();
        let mut raw = Vec::with_capacity(values.len());
        for (t, q) in values.iter().enumerate() {
            q.expect(dim)?;
            if q.canonical() < 0.0 {
                return Err(EwhError::domain(
                    "time series value",
                    q.canonical(),
                    format!(">= 0 (step {t})"),
                ));
            }
            raw.push(q.canonical());
        }
        Ok(TimeSeries { values: raw, dim })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn expect(&self, dim: Dimension) -> Result<(), UnitError> {
        Quantity::zero(self.dim).expect(dim)
    }

    /// Canonical magnitudes, one per hour.
    pub fn canonical_values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = Quantity> + '_ {
        let dim = self.dim;
        self.values
            .iter()
            .map(move |&v| Quantity::from_canonical(v, dim).expect("validated at construction"))
    }

    /// Sum of the rate over all steps (rate × 1 h per step).
    pub fn integral(&self) -> Result<Quantity, UnitError> {
        let total: f64 = self.values.iter().sum::<f64>() * Self::STEP_HOURS;
        Quantity::from_canonical(total, self.dim.mul(Dimension::TIME))
    }

    /// Scales a total accumulated over the series to a per-day figure.
    pub fn per_day_factor(&self) -> f64 {
        24.0 / (self.values.len() as f64 * Self::STEP_HOURS)
    }

    pub fn map(&self, dim: Dimension, f: impl Fn(f64) -> f64) -> Result<TimeSeries, EwhError> {
        let values = self
            .values
            .iter()
            .map(|&v| Quantity::from_canonical(f(v), dim))
            .collect::<Result<Vec<_>, _>>()?;
        TimeSeries::new(values)
    }
}

/// Full-load operation: `hours` equal hourly entries of `rate`.
pub fn constant_profile(rate: Quantity, hours: usize) -> Result<TimeSeries, EwhError> {
    if hours < 1 {
        return Err(EwhError::domain("hours", hours as f64, ">= 1"));
    }
    TimeSeries::new(vec![rate; hours])
}
