//! Dimension-checked quantities.
//!
//! Every quantity is stored as a magnitude in the canonical base
//! (kg, kWh, h, $, m) together with the exponent vector of its dimension.
//! Adding or comparing quantities of different dimensions is an error;
//! multiplying or dividing them produces the combined dimension.
//!
//! Units are parsed from plain strings such as `"ton/h"`, `"$/(m³/h)"`,
//! `"h²/m⁵"` or `"M$/(m^3/h)"`, so parameter files can carry the same
//! notation used in engineering tables.

use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Mismatch {
        expected: Dimension,
        found: Dimension,
    },
    #[error("non-finite magnitude {0}")]
    NonFinite(f64),
    #[error("unknown unit symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed unit expression `{expr}`: {reason}")]
    Syntax { expr: String, reason: String },
    #[error("malformed quantity `{0}`, expected `<value> <unit>`")]
    Quantity(String),
}

/// Exponents over the canonical base (kg, kWh, h, $, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dimension {
    pub mass: i8,
    pub energy: i8,
    pub time: i8,
    pub money: i8,
    pub length: i8,
}

impl Dimension {
    pub const NONE: Dimension = Dimension::new(0, 0, 0, 0, 0);
    pub const MASS: Dimension = Dimension::new(1, 0, 0, 0, 0);
    pub const ENERGY: Dimension = Dimension::new(0, 1, 0, 0, 0);
    pub const TIME: Dimension = Dimension::new(0, 0, 1, 0, 0);
    pub const MONEY: Dimension = Dimension::new(0, 0, 0, 1, 0);
    pub const LENGTH: Dimension = Dimension::new(0, 0, 0, 0, 1);

    pub const fn new(mass: i8, energy: i8, time: i8, money: i8, length: i8) -> Self {
        Dimension {
            mass,
            energy,
            time,
            money,
            length,
        }
    }

    pub const fn mul(self, o: Dimension) -> Dimension {
        Dimension::new(
            self.mass + o.mass,
            self.energy + o.energy,
            self.time + o.time,
            self.money + o.money,
            self.length + o.length,
        )
    }

    pub const fn div(self, o: Dimension) -> Dimension {
        Dimension::new(
            self.mass - o.mass,
            self.energy - o.energy,
            self.time - o.time,
            self.money - o.money,
            self.length - o.length,
        )
    }

    pub const fn powi(self, n: i8) -> Dimension {
        Dimension::new(
            self.mass * n,
            self.energy * n,
            self.time * n,
            self.money * n,
            self.length * n,
        )
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Dimension::NONE
    }

    fn exponents(&self) -> [(&'static str, i8); 5] {
        [
            ("$", self.money),
            ("kg", self.mass),
            ("kWh", self.energy),
            ("m", self.length),
            ("h", self.time),
        ]
    }
}

/// Renders the canonical unit, e.g. `$ h/kg` or `kWh/h`. The output parses
/// back to a unit with scale exactly 1.
impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |positive: bool| {
            self.exponents()
                .iter()
                .filter(|(_, e)| if positive { *e > 0 } else { *e < 0 })
                .map(|(s, e)| match e.abs() {
                    1 => (*s).to_string(),
                    n => format!("{s}^{n}"),
                })
                .collect::<Vec<_>>()
        };
        let num = render(true);
        let den = render(false);
        match (num.is_empty(), den.len()) {
            (true, 0) => write!(f, "1"),
            (false, 0) => write!(f, "{}", num.join(" ")),
            (num_empty, n) => {
                let num = if num_empty { "1".to_string() } else { num.join(" ") };
                if n == 1 {
                    write!(f, "{num}/{}", den[0])
                } else {
                    write!(f, "{num}/({})", den.join(" "))
                }
            }
        }
    }
}

/// A unit: a scale factor onto the canonical base plus a dimension.
///
/// The factor is kept as a ratio `num / den` so units such as `$/day`
/// (1/24 of `$/h`) convert by an exact division rather than by multiplying
/// with a rounded reciprocal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unit {
    num: f64,
    den: f64,
    dim: Dimension,
}

impl Unit {
    pub const fn new(scale: f64, dim: Dimension) -> Self {
        Unit { num: scale, den: 1.0, dim }
    }

    pub const fn ratio(num: f64, den: f64, dim: Dimension) -> Self {
        Unit { num, den, dim }
    }

    pub fn scale(&self) -> f64 {
        self.num / self.den
    }

    fn into_base(self, magnitude: f64) -> f64 {
        if self.den == 1.0 {
            magnitude * self.num
        } else {
            magnitude * self.num / self.den
        }
    }

    fn out_of_base(self, value: f64) -> f64 {
        if self.num == 1.0 {
            value * self.den
        } else {
            value * self.den / self.num
        }
    }

    pub const fn dimension(&self) -> Dimension {
        self.dim
    }

    /// The canonical unit of `dim` (scale 1).
    pub const fn canonical(dim: Dimension) -> Self {
        Unit::new(1.0, dim)
    }

    fn powi(self, n: i8) -> Unit {
        let (num, den) = if n >= 0 { (self.num, self.den) } else { (self.den, self.num) };
        let k = i32::from(n.unsigned_abs());
        Unit::ratio(num.powi(k), den.powi(k), self.dim.powi(n))
    }

    pub fn parse(expr: &str) -> Result<Unit, UnitError> {
        UnitParser::new(expr).parse()
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, o: Unit) -> Unit {
        Unit::ratio(self.num * o.num, self.den * o.den, self.dim.mul(o.dim))
    }
}

impl Div for Unit {
    type Output = Unit;
    fn div(self, o: Unit) -> Unit {
        Unit::ratio(self.num * o.den, self.den * o.num, self.dim.div(o.dim))
    }
}

const HOUR: Dimension = Dimension::TIME;
const PER_HOUR: Dimension = Dimension::NONE.div(Dimension::TIME);

/// Named units used throughout the model.
pub mod units {
    use super::*;

    pub const DIMENSIONLESS: Unit = Unit::new(1.0, Dimension::NONE);
    pub const KG: Unit = Unit::new(1.0, Dimension::MASS);
    pub const TON: Unit = Unit::new(1000.0, Dimension::MASS);
    pub const HOUR: Unit = Unit::new(1.0, super::HOUR);
    pub const DAY: Unit = Unit::new(24.0, super::HOUR);
    pub const KWH: Unit = Unit::new(1.0, Dimension::ENERGY);
    pub const KW: Unit = Unit::new(1.0, Dimension::ENERGY.mul(PER_HOUR));
    pub const MW: Unit = Unit::new(1.0e3, KW.dim);
    pub const METER: Unit = Unit::new(1.0, Dimension::LENGTH);
    pub const KM: Unit = Unit::new(1000.0, Dimension::LENGTH);
    pub const CUBIC_METER: Unit = Unit::new(1.0, Dimension::LENGTH.powi(3));
    pub const USD: Unit = Unit::new(1.0, Dimension::MONEY);
    pub const MUSD: Unit = Unit::new(1.0e6, Dimension::MONEY);

    pub const KG_PER_HOUR: Unit = Unit::new(1.0, Dimension::MASS.mul(PER_HOUR));
    pub const TON_PER_HOUR: Unit = Unit::new(1000.0, Dimension::MASS.mul(PER_HOUR));
    pub const TON_PER_DAY: Unit = Unit::ratio(1000.0, 24.0, Dimension::MASS.mul(PER_HOUR));
    pub const CUBIC_METER_PER_HOUR: Unit =
        Unit::new(1.0, Dimension::LENGTH.powi(3).mul(PER_HOUR));
    pub const USD_PER_DAY: Unit = Unit::ratio(1.0, 24.0, Dimension::MONEY.mul(PER_HOUR));
    pub const USD_PER_KWH: Unit = Unit::new(1.0, Dimension::MONEY.div(Dimension::ENERGY));
    pub const USD_PER_TON: Unit = Unit::ratio(1.0, 1000.0, Dimension::MONEY.div(Dimension::MASS));
    pub const USD_PER_KW: Unit = Unit::new(1.0, Dimension::MONEY.div(KW.dim));
    pub const USD_PER_CUBIC_METER_PER_HOUR: Unit =
        Unit::new(1.0, Dimension::MONEY.div(CUBIC_METER_PER_HOUR.dim));
    pub const USD_PER_METER: Unit = Unit::new(1.0, Dimension::MONEY.div(Dimension::LENGTH));
    pub const USD_PER_TON_PER_DAY: Unit =
        Unit::ratio(24.0, 1000.0, Dimension::MONEY.div(KG_PER_HOUR.dim));
    pub const USD_PER_KG_PER_HOUR: Unit = Unit::new(1.0, Dimension::MONEY.div(KG_PER_HOUR.dim));
    pub const KWH_PER_KG: Unit = Unit::new(1.0, Dimension::ENERGY.div(Dimension::MASS));
    pub const KWH_PER_CUBIC_METER: Unit =
        Unit::new(1.0, Dimension::ENERGY.div(CUBIC_METER.dim));
    pub const KG_PER_KWH: Unit = Unit::new(1.0, Dimension::MASS.div(Dimension::ENERGY));
    pub const G_PER_KWH: Unit = Unit::ratio(1.0, 1000.0, Dimension::MASS.div(Dimension::ENERGY));
    /// Head-loss coefficient: metres of head per (m³/h)².
    pub const HEAD_LOSS_COEFF: Unit = Unit::new(
        1.0,
        Dimension::LENGTH.div(CUBIC_METER_PER_HOUR.dim.powi(2)),
    );
}

fn symbol(sym: &str) -> Option<Unit> {
    use units::*;
    let u = match sym {
        "1" | "-" => DIMENSIONLESS,
        "%" => Unit::ratio(1.0, 100.0, Dimension::NONE),
        "g" => Unit::ratio(1.0, 1000.0, Dimension::MASS),
        "kg" => KG,
        "t" | "ton" | "tonne" | "tone" => TON,
        "h" | "hr" => HOUR,
        "day" | "d" => DAY,
        "yr" | "year" => Unit::new(24.0 * 365.0, HOUR.dim),
        "Wh" => Unit::ratio(1.0, 1000.0, Dimension::ENERGY),
        "kWh" => KWH,
        "MWh" => Unit::new(1.0e3, Dimension::ENERGY),
        "GWh" => Unit::new(1.0e6, Dimension::ENERGY),
        "W" => Unit::ratio(1.0, 1000.0, KW.dim),
        "kW" => KW,
        "MW" => Unit::new(1.0e3, KW.dim),
        "GW" => Unit::new(1.0e6, KW.dim),
        "m" => METER,
        "km" => KM,
        "L" | "l" => Unit::ratio(1.0, 1000.0, CUBIC_METER.dim),
        "$" | "USD" => USD,
        "k$" => Unit::new(1.0e3, Dimension::MONEY),
        "M$" => MUSD,
        "G$" => Unit::new(1.0e9, Dimension::MONEY),
        _ => return None,
    };
    Some(u)
}

fn superscript_digit(c: char) -> Option<i8> {
    Some(match c {
        '⁰' => 0,
        '¹' => 1,
        '²' => 2,
        '³' => 3,
        '⁴' => 4,
        '⁵' => 5,
        '⁶' => 6,
        '⁷' => 7,
        '⁸' => 8,
        '⁹' => 9,
        _ => return None,
    })
}

/// Recursive-descent parser for `term (('*'|'·'|' '|'/') term)*` where a
/// term is a symbol or parenthesised expression with an optional exponent.
struct UnitParser<'a> {
    expr: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> UnitParser<'a> {
    fn new(expr: &'a str) -> Self {
        UnitParser {
            expr,
            chars: expr.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, reason: impl Into<String>) -> UnitError {
        UnitError::Syntax {
            expr: self.expr.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Unit, UnitError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Ok(units::DIMENSIONLESS);
        }
        let u = self.product()?;
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected `{c}`")));
        }
        Ok(u)
    }

    fn product(&mut self) -> Result<Unit, UnitError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc / self.factor()?;
                }
                Some(c) if c == '(' || c == '1' || is_symbol_char(c) => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Unit, UnitError> {
        self.skip_ws();
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.pos += 1;
                inner
            }
            Some('1') => {
                self.pos += 1;
                units::DIMENSIONLESS
            }
            Some(c) if is_symbol_char(c) => {
                let start = self.pos;
                while self.peek().is_some_and(is_symbol_char) {
                    self.pos += 1;
                }
                let sym: String = self.chars[start..self.pos].iter().collect();
                symbol(&sym).ok_or(UnitError::UnknownSymbol(sym))?
            }
            Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            None => return Err(self.err("unexpected end of expression")),
        };
        let exp = self.exponent()?;
        Ok(base.powi(exp))
    }

    fn exponent(&mut self) -> Result<i8, UnitError> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            if self.peek() == Some('-') {
                self.pos += 1;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            return text
                .parse::<i8>()
                .map_err(|_| self.err(format!("bad exponent `{text}`")));
        }
        // plain trailing digits, as in `m3`
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            return text
                .parse::<i8>()
                .map_err(|_| self.err(format!("bad exponent `{text}`")));
        }
        let mut neg = false;
        if self.peek() == Some('⁻') {
            neg = true;
            self.pos += 1;
        }
        let mut value: Option<i8> = None;
        while let Some(d) = self.peek().and_then(superscript_digit) {
            value = Some(value.unwrap_or(0) * 10 + d);
            self.pos += 1;
        }
        match (value, neg) {
            (Some(v), true) => Ok(-v),
            (Some(v), false) => Ok(v),
            (None, true) => Err(self.err("dangling superscript minus")),
            (None, false) => Ok(1),
        }
    }
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '$' || c == '%'
}

/// A finite magnitude carried in canonical units with its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    dim: Dimension,
}

impl Quantity {
    /// Builds `magnitude` expressed in `unit`. Rejects NaN and infinities.
    pub fn new(magnitude: f64, unit: Unit) -> Result<Quantity, UnitError> {
        Quantity::from_canonical(unit.into_base(magnitude), unit.dim)
    }

    pub fn from_canonical(value: f64, dim: Dimension) -> Result<Quantity, UnitError> {
        if !value.is_finite() {
            return Err(UnitError::NonFinite(value));
        }
        Ok(Quantity { value, dim })
    }

    pub fn dimensionless(value: f64) -> Result<Quantity, UnitError> {
        Quantity::from_canonical(value, Dimension::NONE)
    }

    pub fn zero(dim: Dimension) -> Quantity {
        Quantity { value: 0.0, dim }
    }

    /// Magnitude in canonical units.
    pub fn canonical(&self) -> f64 {
        self.value
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    /// Magnitude expressed in `unit`, failing if the dimensions differ.
    pub fn value_in(&self, unit: Unit) -> Result<f64, UnitError> {
        self.expect(unit.dim)?;
        Ok(unit.out_of_base(self.value))
    }

    pub fn expect(&self, dim: Dimension) -> Result<(), UnitError> {
        if self.dim != dim {
            return Err(UnitError::Mismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(self, o: Quantity) -> Result<Quantity, UnitError> {
        o.expect(self.dim)?;
        Quantity::from_canonical(self.value + o.value, self.dim)
    }

    pub fn checked_sub(self, o: Quantity) -> Result<Quantity, UnitError> {
        o.expect(self.dim)?;
        Quantity::from_canonical(self.value - o.value, self.dim)
    }

    pub fn checked_mul(self, o: Quantity) -> Result<Quantity, UnitError> {
        Quantity::from_canonical(self.value * o.value, self.dim.mul(o.dim))
    }

    pub fn checked_div(self, o: Quantity) -> Result<Quantity, UnitError> {
        Quantity::from_canonical(self.value / o.value, self.dim.div(o.dim))
    }

    pub fn scale(self, factor: f64) -> Result<Quantity, UnitError> {
        Quantity::from_canonical(self.value * factor, self.dim)
    }

    pub fn partial_cmp_checked(&self, o: &Quantity) -> Result<std::cmp::Ordering, UnitError> {
        o.expect(self.dim)?;
        Ok(self.value.total_cmp(&o.value))
    }

    /// Parses `"<value> <unit>"`, e.g. `"500 MW"` or `"0.2 M$/(m³/h)"`.
    pub fn parse(text: &str) -> Result<Quantity, UnitError> {
        let text = text.trim();
        let split = text
            .char_indices()
            .find(|&(i, c)| {
                c.is_whitespace()
                    || (i > 0
                        && !(c.is_ascii_digit()
                            || c == '.'
                            || c == 'e'
                            || c == 'E'
                            || c == '+'
                            || c == '-'))
            })
            .map(|(i, _)| i)
            .unwrap_or(text.len());
        let (num, unit) = text.split_at(split);
        let magnitude: f64 = num
            .parse()
            .map_err(|_| UnitError::Quantity(text.to_string()))?;
        Quantity::new(magnitude, Unit::parse(unit)?)
    }

    /// Renders in canonical units such that [`Quantity::parse`] returns a
    /// bit-identical value.
    pub fn to_canonical_string(&self) -> String {
        if self.dim.is_dimensionless() {
            format!("{:?}", self.value)
        } else {
            format!("{:?} {}", self.value, self.dim)
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::units::*;
    use super::*;

    #[test]
    fn parses_compound_units() {
        let u = Unit::parse("$/(m³/h)").unwrap();
        assert_eq!(u.dimension(), USD_PER_CUBIC_METER_PER_HOUR.dimension());
        let u = Unit::parse("M$/(m^3/h)").unwrap();
        assert_eq!(u.scale(), 1.0e6);
        let u = Unit::parse("h²/m⁵").unwrap();
        assert_eq!(u.dimension(), HEAD_LOSS_COEFF.dimension());
        let u = Unit::parse("g/kWh").unwrap();
        assert_eq!(u.dimension(), KG_PER_KWH.dimension());
        assert_eq!(u.scale(), 1.0e-3);
        let u = Unit::parse("$/(ton/day)").unwrap();
        assert_eq!(u.dimension(), USD_PER_TON_PER_DAY.dimension());
        assert!((u.scale() - 0.024).abs() < 1e-15);
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        assert!(matches!(
            Unit::parse("furlong/h"),
            Err(UnitError::UnknownSymbol(_))
        ));
        assert!(Unit::parse("kg/(h").is_err());
    }

    #[test]
    fn quantity_parse_and_convert() {
        let q = Quantity::parse("500 MW").unwrap();
        assert_eq!(q.value_in(KW).unwrap(), 500_000.0);
        let q = Quantity::parse("230 g/kWh").unwrap();
        assert!((q.value_in(KG_PER_KWH).unwrap() - 0.23).abs() < 1e-15);
        let q = Quantity::parse("2e-4 h^2/m^5").unwrap();
        assert_eq!(q.value_in(HEAD_LOSS_COEFF).unwrap(), 2e-4);
        let q = Quantity::parse("0.423").unwrap();
        assert!(q.dimension().is_dimensionless());
        let q = Quantity::parse("90%").unwrap();
        assert!((q.canonical() - 0.9).abs() < 1e-15);
        assert!(Quantity::parse("abc kW").is_err());
    }

    #[test]
    fn mismatched_add_is_rejected() {
        let a = Quantity::new(1.0, KW).unwrap();
        let b = Quantity::new(1.0, KWH).unwrap();
        assert!(matches!(a.checked_add(b), Err(UnitError::Mismatch { .. })));
        assert!(a.value_in(KWH).is_err());
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Quantity::new(f64::NAN, KW).is_err());
        assert!(Quantity::new(f64::INFINITY, USD).is_err());
    }

    #[test]
    fn canonical_string_round_trips() {
        for q in [
            Quantity::new(0.1, USD_PER_TON_PER_DAY).unwrap(),
            Quantity::new(3.3, HEAD_LOSS_COEFF).unwrap(),
            Quantity::new(1.0 / 3.0, TON_PER_DAY).unwrap(),
            Quantity::dimensionless(0.423).unwrap(),
        ] {
            let back = Quantity::parse(&q.to_canonical_string()).unwrap();
            assert_eq!(back, q, "{}", q.to_canonical_string());
        }
    }
}
