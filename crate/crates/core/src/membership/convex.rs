//! Exact convexity (quasiconcavity) decision.
//!
//! A membership function is convex in the fuzzy sense when `f(y) >= f(x) ∧
//! f(z)` for all `x <= y <= z`; equivalently, its value profile never rises
//! strictly after having fallen strictly. The profile of a piecewise
//! representation is a finite sequence of breakpoint values and one-sided
//! limits, so the decision is a single scan. Failures come with a concrete
//! witness triple of attained points.

use super::MembershipFunction;
use crate::rat::{self, Rat};

/// Witness of a convexity violation: attained points `x < y < z` with
/// `f(y) < min(f(x), f(z))`, values included.
#[derive(Debug, Clone)]
pub struct ConvexityWitness {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
    pub fx: Rat,
    pub fy: Rat,
    pub fz: Rat,
}

#[derive(Debug, Clone)]
pub struct ConvexityResult {
    pub convex: bool,
    pub witness: Option<ConvexityWitness>,
}

/// Where in the piecewise structure a profile event sits.
#[derive(Debug, Clone, Copy, PartialEq)]
enum EventPos {
    /// Exactly at breakpoint `i`; the value is attained there.
    At(usize),
    /// The right limit entering segment `i`; attained arbitrarily close to
    /// the left end of the open interval.
    JustInside(usize),
    /// The left limit leaving segment `i`; attained arbitrarily close to
    /// the right end of the open interval.
    JustBefore(usize),
}

impl MembershipFunction {
    pub fn is_convex(&self) -> ConvexityResult {
        let m = self.segments().len();
        let mut events: Vec<(EventPos, Rat)> = Vec::with_capacity(3 * m + 1);
        for i in 0..m {
            events.push((EventPos::At(i), self.point_values()[i].clone()));
            events.push((EventPos::JustInside(i), self.limit_right(i)));
            events.push((EventPos::JustBefore(i), self.limit_left(i + 1)));
        }
        events.push((EventPos::At(m), self.point_values()[m].clone()));

        // Track the running maximum and the minimum since that maximum was
        // set; a later event strictly above the minimum while the minimum
        // sits strictly below the maximum is a violation.
        let mut best_max = events[0].clone();
        let mut cur_min = events[0].clone();
        for event in &events[1..] {
            if event.1 > cur_min.1 && cur_min.1 < best_max.1 {
                let witness = self.materialize_witness(&best_max, &cur_min, event);
                return ConvexityResult {
                    convex: false,
                    witness: Some(witness),
                };
            }
            if event.1 >= best_max.1 {
                best_max = event.clone();
                cur_min = event.clone();
            } else if event.1 < cur_min.1 {
                cur_min = event.clone();
            }
        }
        ConvexityResult {
            convex: true,
            witness: None,
        }
    }

    /// Turn three profile events into attained points with strict
    /// inequalities. Limit events are replaced by nearby interior points;
    /// the offset shrinks until ordering and strictness both verify.
    fn materialize_witness(
        &self,
        high_left: &(EventPos, Rat),
        dip: &(EventPos, Rat),
        high_right: &(EventPos, Rat),
    ) -> ConvexityWitness {
        let half = rat::from_ratio(1, 2);
        let mut scale = rat::from_ratio(1, 4);
        for _ in 0..128 {
            let x = self.event_point(&high_left.0, &scale);
            let y = self.event_point(&dip.0, &scale);
            let z = self.event_point(&high_right.0, &scale);
            if x < y && y < z {
                let fx = self.eval(&x);
                let fy = self.eval(&y);
                let fz = self.eval(&z);
                if fy < fx && fy < fz {
                    return ConvexityWitness {
                        x,
                        y,
                        z,
                        fx,
                        fy,
                        fz,
                    };
                }
            }
            scale *= &half;
        }
        unreachable!("strict profile violation always materializes");
    }

    fn event_point(&self, pos: &EventPos, scale: &Rat) -> Rat {
        match pos {
            EventPos::At(i) => self.breakpoints()[*i].clone(),
            EventPos::JustInside(i) => {
                let a = &self.breakpoints()[*i];
                let b = &self.breakpoints()[*i + 1];
                a + (b - a) * scale
            }
            EventPos::JustBefore(i) => {
                let a = &self.breakpoints()[*i];
                let b = &self.breakpoints()[*i + 1];
                b - (b - a) * scale
            }
        }
    }
}
