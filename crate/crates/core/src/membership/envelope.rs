//! Running suprema: the monotone envelopes `f^L`, `f^R` and their strict
//! (endpoint-excluding) variants used by the exact convolution engine.
//!
//! A supremum over a segment is attained at the closed end of the sweep or
//! approached at an open end; either way it equals an affine value at an
//! endpoint, so everything here is exact.

use super::{Affine, MembershipFunction};
use crate::rat::{self, Rat};

impl MembershipFunction {
    /// Exact supremum of the attained values and one-sided limits.
    pub fn sup(&self) -> Rat {
        let mut best = self.point_values[0].clone();
        for v in &self.point_values[1..] {
            if v > &best {
                best = v.clone();
            }
        }
        for i in 0..self.segments.len() {
            for limit in [self.limit_right(i), self.limit_left(i + 1)] {
                if limit > best {
                    best = limit;
                }
            }
        }
        best
    }

    /// Normal means the supremum is exactly 1.
    pub fn is_normal(&self) -> bool {
        self.sup() == rat::one()
    }

    /// Left envelope `f^L(x) = sup { f(y) : y <= x }`, monotone increasing.
    pub fn envelope_left(&self) -> MembershipFunction {
        let m = self.segments.len();
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut pvs = vec![self.point_values[0].clone()];
        let mut segs: Vec<Affine> = Vec::new();
        // Running sup over [0, current position], including the point value
        // at the current breakpoint.
        let mut running = self.point_values[0].clone();

        for i in 0..m {
            let a = self.breakpoints[i].clone();
            let b = self.breakpoints[i + 1].clone();
            let seg = &self.segments[i];
            let lo = seg.at(&a);
            let hi = seg.at(&b);

            if seg.slope <= rat::zero() {
                // Inside (a, b) the sup over (a, x] is the right limit at a.
                let level = rat::max(&running, &lo).clone();
                segs.push(Affine::constant(level));
            } else if lo >= running {
                // Rising above everything seen: envelope follows the segment.
                segs.push(seg.clone());
            } else if hi <= running {
                segs.push(Affine::constant(running.clone()));
            } else {
                // Rising segment crosses the running level strictly inside.
                let cross = (&running - &seg.intercept) / &seg.slope;
                debug_assert!(a < cross && cross < b);
                segs.push(Affine::constant(running.clone()));
                bps.push(cross);
                pvs.push(running.clone());
                segs.push(seg.clone());
            }

            // Sup over the open interval is the larger one-sided limit.
            let interval_sup = rat::max(&lo, &hi);
            if *interval_sup > running {
                running = interval_sup.clone();
            }
            if self.point_values[i + 1] > running {
                running = self.point_values[i + 1].clone();
            }
            bps.push(b);
            pvs.push(running.clone());
        }

        MembershipFunction::from_parts(bps, pvs, segs).expect("envelope stays valid")
    }

    /// Right envelope `f^R(x) = sup { f(y) : y >= x }`, monotone decreasing.
    /// Computed by reflecting the left envelope; reflection is exact.
    pub fn envelope_right(&self) -> MembershipFunction {
        self.negate().envelope_left().negate()
    }

    /// `x ↦ sup { f(y) : y > x }` on `[0, 1)`. The value stored at `x = 1`
    /// is `f(1)` by convention; callers treating the empty supremum
    /// specially must override it.
    pub fn sup_strictly_right(&self) -> MembershipFunction {
        let m = self.segments.len();
        // Suffix sups over [t_i, 1].
        let mut suffix = vec![rat::zero(); m + 1];
        suffix[m] = self.point_values[m].clone();
        for i in (0..m).rev() {
            let mut best = suffix[i + 1].clone();
            for candidate in [
                self.point_values[i].clone(),
                self.limit_right(i),
                self.limit_left(i + 1),
            ] {
                if candidate > best {
                    best = candidate;
                }
            }
            suffix[i] = best;
        }

        let mut bps: Vec<Rat> = Vec::new();
        let mut pvs: Vec<Rat> = Vec::new();
        let mut segs: Vec<Affine> = Vec::new();

        for i in 0..m {
            let a = self.breakpoints[i].clone();
            let b = self.breakpoints[i + 1].clone();
            let seg = &self.segments[i];
            let lo = seg.at(&a);
            let hi = seg.at(&b);
            let rest = &suffix[i + 1];

            // Value at the breakpoint a itself: sup over (a, 1].
            let at_a = rat::max(rat::max(&lo, &hi), rest).clone();
            bps.push(a.clone());
            pvs.push(at_a);

            if seg.slope >= rat::zero() {
                // Sup over (x, b) is the left limit at b.
                let level = rat::max(&hi, rest).clone();
                segs.push(Affine::constant(level));
            } else {
                // Decreasing: sup over (x, b) approaches f from the right,
                // i.e. follows the segment, until the tail sup takes over.
                if hi >= *rest {
                    segs.push(seg.clone());
                } else if lo <= *rest {
                    segs.push(Affine::constant(rest.clone()));
                } else {
                    let cross = (rest - &seg.intercept) / &seg.slope;
                    debug_assert!(a < cross && cross < b);
                    segs.push(seg.clone());
                    bps.push(cross);
                    pvs.push(rest.clone());
                    segs.push(Affine::constant(rest.clone()));
                }
            }
        }
        bps.push(rat::one());
        pvs.push(self.point_values[m].clone());

        MembershipFunction::from_parts(bps, pvs, segs).expect("strict sup stays valid")
    }

    /// `x ↦ sup { f(y) : y < x }` on `(0, 1]`, with `f(0)` stored at 0.
    pub fn sup_strictly_left(&self) -> MembershipFunction {
        self.negate().sup_strictly_right().negate()
    }
}
