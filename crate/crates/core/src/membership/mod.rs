//! Exact membership functions `[0,1] -> [0,1]`.
//!
//! The representation is piecewise linear with jump discontinuities: strictly
//! increasing breakpoints `0 = t0 < t1 < ... < tm = 1`, an explicit value at
//! every breakpoint, and an affine map on every open interval between them.
//! Characteristic functions and step witnesses all live in this class, which
//! a jump-free piecewise-linear type could not house.
//!
//! All coefficients are arbitrary-precision rationals. Operations that look
//! numeric elsewhere (envelopes, pointwise min/max, supremum, order
//! decisions) are exact here, and equality of canonical forms is plain
//! structural equality.

mod convex;
mod envelope;
mod generate;
mod io;
mod pointwise;

pub use convex::{ConvexityResult, ConvexityWitness};
pub use generate::LGenerator;
pub use io::FunctionJson;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::unit::UnitValue;
use std::fmt;

/// Affine map `t ↦ slope·t + intercept` governing one open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub slope: Rat,
    pub intercept: Rat,
}

impl Affine {
    pub fn new(slope: Rat, intercept: Rat) -> Self {
        Affine { slope, intercept }
    }

    pub fn constant(value: Rat) -> Self {
        Affine {
            slope: rat::zero(),
            intercept: value,
        }
    }

    pub fn at(&self, t: &Rat) -> Rat {
        &self.slope * t + &self.intercept
    }

    /// Affine through `(x0, y0)` and `(x1, y1)`; `x0 != x1`.
    pub fn through(x0: &Rat, y0: &Rat, x1: &Rat, y1: &Rat) -> Self {
        let slope = (y1 - y0) / (x1 - x0);
        let intercept = y0 - &slope * x0;
        Affine { slope, intercept }
    }

    /// Compose with an outer affine `u ↦ a·u + b`.
    pub fn compose_outer(&self, outer: &crate::scalar::AffineSection) -> Affine {
        Affine {
            slope: &outer.slope * &self.slope,
            intercept: &outer.slope * &self.intercept + &outer.intercept,
        }
    }
}

/// A piecewise-linear-with-jumps membership function in canonical form.
///
/// Canonical means no interior breakpoint is redundant: adjacent segments
/// sharing the same affine map with an agreeing point value are merged.
/// Structural equality (`==`) of two canonical forms is function equality.
#[derive(Clone, PartialEq)]
pub struct MembershipFunction {
    breakpoints: Vec<Rat>,
    point_values: Vec<Rat>,
    segments: Vec<Affine>,
}

impl fmt::Debug for MembershipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MembershipFunction[")?;
        for i in 0..self.breakpoints.len() {
            if i > 0 {
                let s = &self.segments[i - 1];
                write!(f, " ({}t+{}) ", s.slope, s.intercept)?;
            }
            write!(f, "{}↦{}", self.breakpoints[i], self.point_values[i])?;
        }
        write!(f, "]")
    }
}

impl MembershipFunction {
    /// Build and canonicalize from raw parts, validating every invariant.
    pub fn from_parts(
        breakpoints: Vec<Rat>,
        point_values: Vec<Rat>,
        segments: Vec<Affine>,
    ) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidFunction(
                "need at least the endpoints 0 and 1".to_string(),
            ));
        }
        if point_values.len() != breakpoints.len() || segments.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidFunction(format!(
                "length mismatch: {} breakpoints, {} values, {} segments",
                breakpoints.len(),
                point_values.len(),
                segments.len()
            )));
        }
        if breakpoints[0] != rat::zero() || *breakpoints.last().unwrap() != rat::one() {
            return Err(Error::InvalidFunction(
                "domain must span exactly [0, 1]".to_string(),
            ));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidFunction(
                    "breakpoints must be strictly increasing".to_string(),
                ));
            }
        }
        for v in &point_values {
            if !rat::in_unit(v) {
                return Err(Error::InvalidFunction(format!(
                    "breakpoint value {v} outside [0, 1]"
                )));
            }
        }
        for (i, seg) in segments.iter().enumerate() {
            // An affine map on an interval attains its extremes at the
            // one-sided limits, so checking both limits bounds the range.
            let lo = seg.at(&breakpoints[i]);
            let hi = seg.at(&breakpoints[i + 1]);
            if !rat::in_unit(&lo) || !rat::in_unit(&hi) {
                return Err(Error::InvalidFunction(format!("segment {i} leaves [0, 1]")));
            }
        }
        let mut f = MembershipFunction {
            breakpoints,
            point_values,
            segments,
        };
        f.canonicalize();
        Ok(f)
    }

    fn canonicalize(&mut self) {
        let mut i = 1;
        while i + 1 < self.breakpoints.len() {
            let mergeable = self.segments[i - 1] == self.segments[i]
                && self.point_values[i] == self.segments[i - 1].at(&self.breakpoints[i]);
            if mergeable {
                self.breakpoints.remove(i);
                self.point_values.remove(i);
                self.segments.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn point_values(&self) -> &[Rat] {
        &self.point_values
    }

    pub fn segments(&self) -> &[Affine] {
        &self.segments
    }

    /// Exact evaluation: the stored value at a breakpoint, the affine map
    /// inside a segment.
    pub fn eval(&self, t: &Rat) -> Rat {
        debug_assert!(rat::in_unit(t), "argument outside [0, 1]");
        match self.breakpoints.binary_search(t) {
            Ok(i) => self.point_values[i].clone(),
            Err(i) => self.segments[i - 1].at(t),
        }
    }

    pub fn eval_unit(&self, x: UnitValue) -> UnitValue {
        UnitValue::new(self.eval_f64(x.get())).expect("values stay in [0, 1]")
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        rat::to_f64(&self.eval(&rat::from_f64(t)))
    }

    /// Values at `i/n` for `i = 0..=n`, for the sampling grid.
    pub fn sample_values(&self, n: usize) -> Vec<f64> {
        (0..=n)
            .map(|i| rat::to_f64(&self.eval(&rat::from_ratio(i as i64, n as i64))))
            .collect()
    }

    /// One-sided limit approaching breakpoint `i` from the right.
    pub(crate) fn limit_right(&self, i: usize) -> Rat {
        self.segments[i].at(&self.breakpoints[i])
    }

    /// One-sided limit approaching breakpoint `i` from the left.
    pub(crate) fn limit_left(&self, i: usize) -> Rat {
        self.segments[i - 1].at(&self.breakpoints[i])
    }

    pub fn constant(value: Rat) -> Result<Self> {
        if !rat::in_unit(&value) {
            return Err(Error::InvalidFunction(format!(
                "constant {value} outside [0, 1]"
            )));
        }
        Ok(MembershipFunction {
            breakpoints: vec![rat::zero(), rat::one()],
            point_values: vec![value.clone(), value.clone()],
            segments: vec![Affine::constant(value)],
        })
    }

    /// Characteristic function of the singleton `{x}`.
    pub fn chi_point(x: UnitValue) -> Self {
        let xr = rat::from_f64(x.get());
        Self::chi_point_rat(xr)
    }

    pub(crate) fn chi_point_rat(x: Rat) -> Self {
        let zero_seg = Affine::constant(rat::zero());
        if x == rat::zero() {
            MembershipFunction {
                breakpoints: vec![rat::zero(), rat::one()],
                point_values: vec![rat::one(), rat::zero()],
                segments: vec![zero_seg],
            }
        } else if x == rat::one() {
            MembershipFunction {
                breakpoints: vec![rat::zero(), rat::one()],
                point_values: vec![rat::zero(), rat::one()],
                segments: vec![zero_seg],
            }
        } else {
            MembershipFunction {
                breakpoints: vec![rat::zero(), x, rat::one()],
                point_values: vec![rat::zero(), rat::one(), rat::zero()],
                segments: vec![zero_seg.clone(), zero_seg],
            }
        }
    }

    /// Characteristic function of the closed interval `[a, b]`.
    pub fn chi_interval(a: UnitValue, b: UnitValue) -> Result<Self> {
        if a.get() > b.get() {
            return Err(Error::IntervalOrder(a.get(), b.get()));
        }
        Ok(Self::chi_interval_rat(
            rat::from_f64(a.get()),
            rat::from_f64(b.get()),
        ))
    }

    pub(crate) fn chi_interval_rat(a: Rat, b: Rat) -> Self {
        assert!(a <= b);
        if a == b {
            return Self::chi_point_rat(a);
        }
        let zero_seg = Affine::constant(rat::zero());
        let one_seg = Affine::constant(rat::one());
        let mut breakpoints = vec![rat::zero()];
        let mut point_values = vec![if a == rat::zero() {
            rat::one()
        } else {
            rat::zero()
        }];
        let mut segments = Vec::new();
        if a > rat::zero() {
            breakpoints.push(a.clone());
            point_values.push(rat::one());
            segments.push(zero_seg.clone());
        }
        if b < rat::one() {
            breakpoints.push(b.clone());
            point_values.push(rat::one());
            segments.push(one_seg.clone());
            breakpoints.push(rat::one());
            point_values.push(rat::zero());
            segments.push(zero_seg);
        } else {
            breakpoints.push(rat::one());
            point_values.push(rat::one());
            segments.push(one_seg);
        }
        MembershipFunction {
            breakpoints,
            point_values,
            segments,
        }
    }

    /// The step-identity witness: `0` on `[0, x)`, then `t ↦ t` on `[x, 1]`.
    /// Increasing, so normal and convex.
    pub fn w_func(x: UnitValue) -> Self {
        let xr = rat::from_f64(x.get());
        let id_seg = Affine::new(rat::one(), rat::zero());
        if xr == rat::zero() {
            return MembershipFunction {
                breakpoints: vec![rat::zero(), rat::one()],
                point_values: vec![rat::zero(), rat::one()],
                segments: vec![id_seg],
            };
        }
        if xr == rat::one() {
            return MembershipFunction {
                breakpoints: vec![rat::zero(), rat::one()],
                point_values: vec![rat::zero(), rat::one()],
                segments: vec![Affine::constant(rat::zero())],
            };
        }
        MembershipFunction {
            breakpoints: vec![rat::zero(), xr.clone(), rat::one()],
            point_values: vec![rat::zero(), xr, rat::one()],
            segments: vec![Affine::constant(rat::zero()), id_seg],
        }
    }

    /// The descending-line witness: `t ↦ (x - 1)·t + 1`, running from
    /// `(0, 1)` down to `(1, x)`. Decreasing, so normal and convex.
    pub fn v_func(x: UnitValue) -> Self {
        let xr = rat::from_f64(x.get());
        MembershipFunction {
            breakpoints: vec![rat::zero(), rat::one()],
            point_values: vec![rat::one(), xr.clone()],
            segments: vec![Affine::new(xr - rat::one(), rat::one())],
        }
    }

    /// Tent with peak value 1 at `peak` and shoulder heights at the ends.
    pub fn tent(peak: UnitValue, left_shoulder: UnitValue, right_shoulder: UnitValue) -> Self {
        let p = rat::from_f64(peak.get());
        let ls = rat::from_f64(left_shoulder.get());
        let rs = rat::from_f64(right_shoulder.get());
        if p == rat::zero() {
            let seg = Affine::through(&rat::zero(), &rat::one(), &rat::one(), &rs);
            return MembershipFunction {
                breakpoints: vec![rat::zero(), rat::one()],
                point_values: vec![rat::one(), rs],
                segments: vec![seg],
            };
        }
        if p == rat::one() {
            let seg = Affine::through(&rat::zero(), &ls, &rat::one(), &rat::one());
            return MembershipFunction {
                breakpoints: vec![rat::zero(), rat::one()],
                point_values: vec![ls, rat::one()],
                segments: vec![seg],
            };
        }
        let rise = Affine::through(&rat::zero(), &ls, &p, &rat::one());
        let fall = Affine::through(&p, &rat::one(), &rat::one(), &rs);
        MembershipFunction {
            breakpoints: vec![rat::zero(), p, rat::one()],
            point_values: vec![ls, rat::one(), rs],
            segments: vec![rise, fall],
        }
    }

    /// Exact reflection `t ↦ f(1 - t)`. An involution on the nose: rational
    /// coefficients make double reflection structurally the identity.
    pub fn negate(&self) -> Self {
        let one = rat::one();
        let breakpoints: Vec<Rat> = self.breakpoints.iter().rev().map(|t| &one - t).collect();
        let point_values: Vec<Rat> = self.point_values.iter().rev().cloned().collect();
        let segments: Vec<Affine> = self
            .segments
            .iter()
            .rev()
            .map(|s| Affine {
                slope: -&s.slope,
                intercept: &s.slope + &s.intercept,
            })
            .collect();
        MembershipFunction {
            breakpoints,
            point_values,
            segments,
        }
    }

    /// Apply an exact affine map to all values: `t ↦ a·f(t) + b`. The caller
    /// guarantees the image stays in `[0, 1]`.
    pub(crate) fn map_values(&self, outer: &crate::scalar::AffineSection) -> Result<Self> {
        MembershipFunction::from_parts(
            self.breakpoints.clone(),
            self.point_values.iter().map(|v| outer.apply(v)).collect(),
            self.segments
                .iter()
                .map(|s| s.compose_outer(outer))
                .collect(),
        )
    }

    /// Detect a singleton characteristic function structurally.
    pub fn as_chi_point(&self) -> Option<Rat> {
        let ones: Vec<usize> = self
            .point_values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == rat::one())
            .map(|(i, _)| i)
            .collect();
        if ones.len() != 1 {
            return None;
        }
        let zero = Affine::constant(rat::zero());
        if self.segments.iter().all(|s| *s == zero)
            && self
                .point_values
                .iter()
                .enumerate()
                .all(|(i, v)| i == ones[0] || *v == rat::zero())
        {
            Some(self.breakpoints[ones[0]].clone())
        } else {
            None
        }
    }

    /// Detect a closed-interval characteristic function structurally
    /// (singletons count as degenerate intervals).
    pub fn as_chi_interval(&self) -> Option<(Rat, Rat)> {
        if let Some(x) = self.as_chi_point() {
            return Some((x.clone(), x));
        }
        let ones: Vec<usize> = self
            .point_values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == rat::one())
            .map(|(i, _)| i)
            .collect();
        if ones.is_empty() {
            return None;
        }
        let a = self.breakpoints[ones[0]].clone();
        let b = self.breakpoints[*ones.last().unwrap()].clone();
        let candidate = Self::chi_interval_rat(a.clone(), b.clone());
        if *self == candidate {
            Some((a, b))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.breakpoints.len() == 2
            && self.segments[0].slope == rat::zero()
            && self.point_values[0] == self.segments[0].intercept
            && self.point_values[1] == self.segments[0].intercept
        {
            Some(self.point_values[0].clone())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: f64) -> UnitValue {
        UnitValue::new(v).unwrap()
    }

    #[test]
    fn constructor_examples() {
        // step-identity witness around 0.5
        let w = MembershipFunction::w_func(u(0.5));
        assert_eq!(w.eval_f64(0.3), 0.0);
        assert_eq!(w.eval_f64(0.5), 0.5);
        assert_eq!(w.eval_f64(0.8), 0.8);

        // descending line hits its parameter at t = 1
        let v = MembershipFunction::v_func(u(0.4));
        assert_eq!(v.eval_f64(1.0), 0.4);
        assert_eq!(v.eval_f64(0.0), 1.0);
        let v0 = MembershipFunction::v_func(u(0.0));
        assert_eq!(v0.eval_f64(0.5), 0.5);

        // v_func(1) is the constant-1 function, structurally
        let v1 = MembershipFunction::v_func(u(1.0));
        assert_eq!(v1, MembershipFunction::constant(rat::one()).unwrap());
    }

    #[test]
    fn chi_semantics() {
        let cp = MembershipFunction::chi_point(u(1.0));
        assert_eq!(cp.eval_f64(1.0), 1.0);
        assert_eq!(cp.eval_f64(0.999), 0.0);

        let full = MembershipFunction::chi_interval(u(0.0), u(1.0)).unwrap();
        assert_eq!(full, MembershipFunction::constant(rat::one()).unwrap());

        let ci = MembershipFunction::chi_interval(u(0.2), u(0.7)).unwrap();
        assert_eq!(ci.eval_f64(0.2), 1.0);
        assert_eq!(ci.eval_f64(0.7), 1.0);
        assert_eq!(ci.eval_f64(0.19), 0.0);
        assert_eq!(ci.eval_f64(0.71), 0.0);

        assert!(MembershipFunction::chi_interval(u(0.7), u(0.2)).is_err());
    }

    #[test]
    fn chi_detection() {
        let cp = MembershipFunction::chi_point(u(0.5));
        assert_eq!(cp.as_chi_point(), Some(rat::from_ratio(1, 2)));
        let ci = MembershipFunction::chi_interval(u(0.25), u(0.75)).unwrap();
        assert_eq!(
            ci.as_chi_interval(),
            Some((rat::from_ratio(1, 4), rat::from_ratio(3, 4)))
        );
        let tent = MembershipFunction::tent(u(0.5), u(0.0), u(0.0));
        assert!(tent.as_chi_point().is_none());
        assert!(tent.as_chi_interval().is_none());
    }

    #[test]
    fn canonical_merge() {
        // Two identical constant segments with an agreeing midpoint merge.
        let f = MembershipFunction::from_parts(
            vec![rat::zero(), rat::from_ratio(1, 2), rat::one()],
            vec![rat::from_ratio(1, 4); 3],
            vec![
                Affine::constant(rat::from_ratio(1, 4)),
                Affine::constant(rat::from_ratio(1, 4)),
            ],
        )
        .unwrap();
        assert_eq!(f.breakpoints().len(), 2);
        assert_eq!(
            f,
            MembershipFunction::constant(rat::from_ratio(1, 4)).unwrap()
        );
    }

    #[test]
    fn negate_is_involution() {
        let funcs = [
            MembershipFunction::chi_point(u(0.0)),
            MembershipFunction::chi_point(u(0.3)),
            MembershipFunction::w_func(u(0.3)),
            MembershipFunction::v_func(u(0.7)),
            MembershipFunction::tent(u(0.3), u(0.1), u(0.25)),
        ];
        for f in &funcs {
            assert_eq!(f.negate().negate(), *f);
        }
        // Reflection swaps the point characteristics at 0 and 1.
        assert_eq!(
            MembershipFunction::chi_point(u(0.0)).negate(),
            MembershipFunction::chi_point(u(1.0))
        );
        // Constants are fixed by reflection.
        let c = MembershipFunction::constant(rat::from_ratio(2, 5)).unwrap();
        assert_eq!(c.negate(), c);
    }

    #[test]
    fn negate_evaluates_reflected() {
        let v = MembershipFunction::v_func(u(0.4));
        let n = v.negate();
        for t in [0.0, 0.25, 0.5, 0.8, 1.0] {
            assert_eq!(n.eval_f64(t), v.eval_f64(1.0 - t));
        }
    }

    #[test]
    fn invalid_parts_rejected() {
        // domain must be [0, 1]
        assert!(MembershipFunction::from_parts(
            vec![rat::zero(), rat::from_ratio(1, 2)],
            vec![rat::zero(), rat::zero()],
            vec![Affine::constant(rat::zero())],
        )
        .is_err());
        // segment escaping the unit range
        assert!(MembershipFunction::from_parts(
            vec![rat::zero(), rat::one()],
            vec![rat::zero(), rat::zero()],
            vec![Affine::new(rat::from_int(2), rat::zero())],
        )
        .is_err());
    }
}
