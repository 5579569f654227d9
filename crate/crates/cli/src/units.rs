//! Quantities written as `"<number> <unit>"`, converted to SI on read.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Pressure,
    Density,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Length => "length",
            Dimension::Pressure => "pressure",
            Dimension::Density => "density",
        })
    }
}

/// Unit name, dimension and power-of-ten factor to SI.
const UNITS: &[(&str, Dimension, i64)] = &[
    ("m", Dimension::Length, 0),
    ("cm", Dimension::Length, -2),
    ("mm", Dimension::Length, -3),
    ("Pa", Dimension::Pressure, 0),
    ("kPa", Dimension::Pressure, 3),
    ("MPa", Dimension::Pressure, 6),
    ("GPa", Dimension::Pressure, 9),
    ("kg/m^3", Dimension::Density, 0),
    ("kg/m3", Dimension::Density, 0),
    ("g/cm^3", Dimension::Density, 3),
    ("g/cm3", Dimension::Density, 3),
];

/// A parsed quantity in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

pub fn parse_quantity(text: &str) -> Result<Quantity, String> {
    let text = text.trim();
    let split = text
        .find(|c: char| c.is_whitespace())
        .ok_or_else(|| format!("`{text}` has no unit suffix"))?;
    let (number, unit) = text.split_at(split);
    let unit = unit.trim();
    let value: f64 = number.parse().map_err(|_| format!("`{number}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("`{number}` is not finite"));
    }
    let &(_, dimension, shift) = UNITS
        .iter()
        .find(|(name, _, _)| *name == unit)
        .ok_or_else(|| format!("unknown unit `{unit}`"))?;
    Ok(Quantity {
        value: shift_decimal(number, shift).unwrap_or(value),
        dimension,
    })
}

/// Applies the prefix in the decimal text so `2.7 cm` reads as exactly
/// the double nearest 0.027.
fn shift_decimal(number: &str, shift: i64) -> Option<f64> {
    let (mantissa, exponent) = match number.find(['e', 'E']) {
        Some(i) => (&number[..i], number[i + 1..].parse::<i64>().ok()?),
        None => (number, 0),
    };
    format!("{mantissa}e{}", exponent + shift).parse().ok()
}

/// Parse and require a specific dimension.
pub fn parse_as(text: &str, want: Dimension) -> Result<f64, String> {
    let q = parse_quantity(text)?;
    if q.dimension != want {
        return Err(format!("expected a {want}, got a {} (`{text}`)", q.dimension));
    }
    Ok(q.value)
}
