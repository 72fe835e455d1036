//! Exact pointwise lattice operations and comparisons.
//!
//! Two piecewise functions are compared over the union of their breakpoints;
//! inside each merged interval both are affine, so minima, maxima and order
//! are decided from segment endpoints plus exact crossing points.

use super::{Affine, MembershipFunction};
use crate::rat::{self, Rat};

#[derive(Clone, Copy, PartialEq)]
enum Combine {
    Min,
    Max,
}

/// View of both functions over a common refinement: for every merged open
/// interval, the pair of governing affine maps.
struct MergedGrid {
    points: Vec<Rat>,
    /// Affine pair per interval, expanded from each function.
    pairs: Vec<(Affine, Affine)>,
}

fn merge_breakpoints(f: &MembershipFunction, g: &MembershipFunction) -> Vec<Rat> {
    let mut points = Vec::with_capacity(f.breakpoints().len() + g.breakpoints().len());
    let (a, b) = (f.breakpoints(), g.breakpoints());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
            let p = a[i].clone();
            if i < a.len() {
                i += 1;
            }
            p
        } else {
            let p = b[j].clone();
            j += 1;
            p
        };
        if points.last() != Some(&next) {
            points.push(next);
        }
    }
    points
}

fn segment_on(f: &MembershipFunction, lo: &Rat) -> Affine {
    // The unique segment of f whose interval contains (lo, next); since the
    // merged grid refines f's grid, lo lies in [t_k, t_{k+1}).
    match f.breakpoints().binary_search(lo) {
        Ok(k) => f.segments()[k.min(f.segments().len() - 1)].clone(),
        Err(k) => f.segments()[k - 1].clone(),
    }
}

fn merged_grid(f: &MembershipFunction, g: &MembershipFunction) -> MergedGrid {
    let points = merge_breakpoints(f, g);
    let pairs = points
        .windows(2)
        .map(|w| (segment_on(f, &w[0]), segment_on(g, &w[0])))
        .collect();
    MergedGrid { points, pairs }
}

impl MergedGrid {
    /// Insert exact crossing points of each affine pair, so that afterwards
    /// one side dominates throughout every interval.
    fn split_at_crossings(&mut self) {
        let mut points = Vec::with_capacity(self.points.len());
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (w, (fa, ga)) in self.points.windows(2).zip(self.pairs.iter()) {
            points.push(w[0].clone());
            if fa.slope != ga.slope {
                let cross = (&ga.intercept - &fa.intercept) / (&fa.slope - &ga.slope);
                if w[0] < cross && cross < w[1] {
                    pairs.push((fa.clone(), ga.clone()));
                    points.push(cross);
                }
            }
            pairs.push((fa.clone(), ga.clone()));
        }
        points.push(self.points.last().unwrap().clone());
        self.points = points;
        self.pairs = pairs;
    }
}

fn combine(f: &MembershipFunction, g: &MembershipFunction, mode: Combine) -> MembershipFunction {
    let mut grid = merged_grid(f, g);
    grid.split_at_crossings();

    let pick = |a: &Rat, b: &Rat| -> Rat {
        match mode {
            Combine::Min => rat::min(a, b).clone(),
            Combine::Max => rat::max(a, b).clone(),
        }
    };

    let point_values: Vec<Rat> = grid
        .points
        .iter()
        .map(|t| pick(&f.eval(t), &g.eval(t)))
        .collect();

    let segments: Vec<Affine> = grid
        .points
        .windows(2)
        .zip(grid.pairs.iter())
        .map(|(w, (fa, ga))| {
            // No crossing strictly inside: domination is decided by the
            // one-sided limits at both ends.
            let f_lo = fa.at(&w[0]);
            let f_hi = fa.at(&w[1]);
            let g_lo = ga.at(&w[0]);
            let g_hi = ga.at(&w[1]);
            let f_wins = match mode {
                Combine::Min => f_lo <= g_lo && f_hi <= g_hi,
                Combine::Max => f_lo >= g_lo && f_hi >= g_hi,
            };
            if f_wins {
                fa.clone()
            } else {
                ga.clone()
            }
        })
        .collect();

    MembershipFunction::from_parts(grid.points, point_values, segments)
        .expect("pointwise combination stays valid")
}

impl MembershipFunction {
    /// Exact pointwise minimum.
    pub fn pointwise_min(&self, other: &MembershipFunction) -> MembershipFunction {
        combine(self, other, Combine::Min)
    }

    /// Exact pointwise maximum.
    pub fn pointwise_max(&self, other: &MembershipFunction) -> MembershipFunction {
        combine(self, other, Combine::Max)
    }

    /// Exact decision of `f(t) <= g(t)` for every `t`, including one-sided
    /// limits inside segments.
    pub fn pointwise_leq(&self, other: &MembershipFunction) -> bool {
        let grid = merged_grid(self, other);
        for t in &grid.points {
            if self.eval(t) > other.eval(t) {
                return false;
            }
        }
        for (w, (fa, ga)) in grid.points.windows(2).zip(grid.pairs.iter()) {
            // f - g is affine on the open interval; nonpositive there iff
            // nonpositive at both one-sided limits.
            if fa.at(&w[0]) > ga.at(&w[0]) || fa.at(&w[1]) > ga.at(&w[1]) {
                return false;
            }
        }
        true
    }

    /// First point where the two functions provably differ: a merged
    /// breakpoint with different stored values, or an interior point of a
    /// merged interval whose affine maps differ. Returns the point and both
    /// values. `None` means the functions are pointwise equal.
    pub fn first_difference(&self, other: &MembershipFunction) -> Option<(Rat, Rat, Rat)> {
        let grid = merged_grid(self, other);
        for t in &grid.points {
            let (a, b) = (self.eval(t), other.eval(t));
            if a != b {
                return Some((t.clone(), a, b));
            }
        }
        for (w, (fa, ga)) in grid.points.windows(2).zip(grid.pairs.iter()) {
            if fa != ga {
                // Distinct affine maps agree at no more than one point, so
                // one of two interior probes separates them.
                let quarter = &w[0] + (&w[1] - &w[0]) / rat::from_int(4);
                let mid = (&w[0] + &w[1]) / rat::from_int(2);
                for t in [mid, quarter] {
                    let (a, b) = (fa.at(&t), ga.at(&t));
                    if a != b {
                        return Some((t, a, b));
                    }
                }
            }
        }
        None
    }

    /// True when every interior breakpoint value agrees with both one-sided
    /// limits and the endpoint values agree with their inward limits.
    pub fn is_continuous(&self) -> bool {
        let m = self.segments().len();
        if self.limit_right(0) != self.point_values()[0]
            || self.limit_left(m) != self.point_values()[m]
        {
            return false;
        }
        for i in 1..m {
            if self.limit_left(i) != self.point_values()[i]
                || self.limit_right(i) != self.point_values()[i]
            {
                return false;
            }
        }
        true
    }

    /// Equality test. `eps = 0` is structural equality of canonical forms;
    /// positive `eps` compares values over the merged grid (breakpoints and
    /// one-sided limits) in floating point.
    pub fn func_eq(&self, other: &MembershipFunction, eps: f64) -> bool {
        if eps == 0.0 {
            return self == other;
        }
        let grid = merged_grid(self, other);
        for t in &grid.points {
            let d = rat::to_f64(&self.eval(t)) - rat::to_f64(&other.eval(t));
            if d.abs() > eps {
                return false;
            }
        }
        for (w, (fa, ga)) in grid.points.windows(2).zip(grid.pairs.iter()) {
            for t in [&w[0], &w[1]] {
                let d = rat::to_f64(&fa.at(t)) - rat::to_f64(&ga.at(t));
                if d.abs() > eps {
                    return false;
                }
            }
        }
        true
    }
}
