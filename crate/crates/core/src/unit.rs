use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A real number confined to the unit interval `[0, 1]`.
///
/// Construction rejects out-of-range and non-finite values, so a `UnitValue`
/// can be fed to any scalar operation or membership function without further
/// checks.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(v: f64) -> Result<Self> {
        if v.is_finite() && (0.0..=1.0).contains(&v) {
            Ok(UnitValue(v))
        } else {
            Err(Error::OutOfUnitRange(v))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<f64> for UnitValue {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        UnitValue::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(UnitValue::new(-0.1).is_err());
        assert!(UnitValue::new(1.1).is_err());
        assert!(UnitValue::new(f64::NAN).is_err());
        assert!(UnitValue::new(f64::INFINITY).is_err());
    }

    #[test]
    fn accepts_endpoints() {
        assert_eq!(UnitValue::new(0.0).unwrap().get(), 0.0);
        assert_eq!(UnitValue::new(1.0).unwrap().get(), 1.0);
    }
}
