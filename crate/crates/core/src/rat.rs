//! Exact rational scalars for the piecewise-function layer.
//!
//! Every `f64` embeds exactly into `Rat`, so values coming from the floating
//! point scalar layer (operation evaluations, CLI flags) carry no rounding
//! when they become breakpoints or segment coefficients. The reverse
//! direction [`to_f64`] rounds to nearest.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Exact embedding of a finite `f64`. Panics on NaN or infinities, which
/// cannot occur for values already validated to lie in `[0, 1]`.
pub fn from_f64(v: f64) -> Rat {
    Rat::from_float(v).expect("finite float")
}

pub fn from_ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Round-to-nearest conversion. `num-rational` handles arbitrarily large
/// numerators and denominators here, so this is safe for rationals produced
/// by long chains of exact operations.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational convertible to f64")
}

pub fn in_unit(r: &Rat) -> bool {
    !r.is_negative() && *r <= one()
}

pub fn min<'a>(a: &'a Rat, b: &'a Rat) -> &'a Rat {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max<'a>(a: &'a Rat, b: &'a Rat) -> &'a Rat {
    if a >= b {
        a
    } else {
        b
    }
}
