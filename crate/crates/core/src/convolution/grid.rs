//! The sampled sup-convolution engine.
//!
//! Every sample pair `(i/n, j/n)` contributes `star(f(i/n), g(j/n))` to the
//! bucket of `combiner(i/n, j/n)`. Bucketing is `k = floor(x̂·n)` with
//! `x̂ = 1` sent to bucket `n`, so the top bucket is exactly the combiner's
//! level set of 1. Buckets no pair landed in are refined by subdividing the
//! straddling cells; whatever remains unfilled is flagged, never
//! interpolated.

use super::MembershipFunction;
use crate::error::{Error, Result};
use crate::membership::Affine;
use crate::rat::{self, Rat};
use crate::scalar::BinaryOp;
use serde::{Deserialize, Serialize};

/// Subdivision depth for unfilled-bucket refinement.
pub(crate) const REFINE_DEPTH: u32 = 6;

#[inline]
pub(crate) fn bucket_of(x: f64, n: usize) -> usize {
    if x >= 1.0 {
        n
    } else {
        let k = (x * n as f64).floor();
        if k < 0.0 {
            0
        } else {
            k as usize
        }
    }
}

/// Precomputed bucket indices of `combiner(i/n, j/n)` for every sample pair.
/// Shared across all convolutions with the same combiner and resolution.
pub struct BucketTable {
    n: usize,
    idx: Vec<u32>,
}

impl BucketTable {
    pub fn build(combiner: &BinaryOp, n: usize) -> Self {
        let side = n + 1;
        let mut idx = vec![0u32; side * side];
        for i in 0..side {
            let x = i as f64 / n as f64;
            for j in 0..side {
                let y = j as f64 / n as f64;
                idx[i * side + j] = bucket_of(combiner.eval(x, y), n) as u32;
            }
        }
        BucketTable { n, idx }
    }

    pub fn resolution(&self) -> usize {
        self.n
    }
}

/// Sampled image of a membership function on `n + 1` buckets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    resolution: usize,
    values: Vec<f64>,
    filled: Vec<bool>,
}

impl GridFunction {
    pub(crate) fn new_unfilled(n: usize) -> Self {
        GridFunction {
            resolution: n,
            values: vec![0.0; n + 1],
            filled: vec![false; n + 1],
        }
    }

    #[inline]
    pub(crate) fn offer(&mut self, bucket: usize, value: f64) {
        if !self.filled[bucket] || value > self.values[bucket] {
            self.values[bucket] = value;
            self.filled[bucket] = true;
        }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn filled(&self) -> &[bool] {
        &self.filled
    }

    pub fn unfilled_count(&self) -> usize {
        self.filled.iter().filter(|f| !**f).count()
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.filled)
            .filter(|(_, f)| **f)
            .map(|(v, _)| *v)
            .fold(0.0, f64::max)
    }

    /// Largest |difference| over mutually filled buckets.
    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        assert_eq!(self.resolution, other.resolution, "resolution mismatch");
        self.values
            .iter()
            .zip(&self.filled)
            .zip(other.values.iter().zip(&other.filled))
            .filter(|((_, fa), (_, fb))| **fa && **fb)
            .map(|((a, _), (b, _))| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Discrete left envelope: running max over filled buckets.
    pub fn discrete_envelope_left(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut running = 0.0f64;
        for (v, f) in self.values.iter().zip(&self.filled) {
            if *f {
                running = running.max(*v);
            }
            out.push(running);
        }
        out
    }

    /// Discrete right envelope: running max from the right.
    pub fn discrete_envelope_right(&self) -> Vec<f64> {
        let mut out = vec![0.0f64; self.values.len()];
        let mut running = 0.0f64;
        for k in (0..self.values.len()).rev() {
            if self.filled[k] {
                running = running.max(self.values[k]);
            }
            out[k] = running;
        }
        out
    }

    /// Values resampled at another resolution by linear interpolation over
    /// filled buckets.
    pub fn resampled_values(&self, n: usize) -> Vec<f64> {
        let lifted = self
            .lift_to_membership()
            .expect("grid function with filled endpoints lifts");
        lifted.sample_values(n)
    }

    /// Connect filled buckets into a continuous piecewise-linear function.
    /// Unfilled interior buckets are spanned by the segment joining their
    /// filled neighbors; unfilled ends extend the nearest filled value.
    pub fn lift_to_membership(&self) -> Result<MembershipFunction> {
        let n = self.resolution;
        let filled_idx: Vec<usize> = (0..=n).filter(|k| self.filled[*k]).collect();
        if filled_idx.is_empty() {
            return Err(Error::UnfilledBuckets(n + 1));
        }
        let mut nodes: Vec<(Rat, Rat)> = Vec::with_capacity(filled_idx.len() + 2);
        let first = filled_idx[0];
        let last = *filled_idx.last().unwrap();
        if first != 0 {
            nodes.push((
                rat::zero(),
                rat::from_f64(self.values[first].clamp(0.0, 1.0)),
            ));
        }
        for &k in &filled_idx {
            nodes.push((
                rat::from_ratio(k as i64, n as i64),
                rat::from_f64(self.values[k].clamp(0.0, 1.0)),
            ));
        }
        if last != n {
            nodes.push((rat::one(), rat::from_f64(self.values[last].clamp(0.0, 1.0))));
        }
        let breakpoints: Vec<Rat> = nodes.iter().map(|(t, _)| t.clone()).collect();
        let point_values: Vec<Rat> = nodes.iter().map(|(_, v)| v.clone()).collect();
        let segments: Vec<Affine> = nodes
            .windows(2)
            .map(|w| Affine::through(&w[0].0, &w[0].1, &w[1].0, &w[1].1))
            .collect();
        MembershipFunction::from_parts(breakpoints, point_values, segments)
    }

    /// CSV export: `x,value,filled` per bucket.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value,filled\n");
        let n = self.resolution;
        for k in 0..=n {
            out.push_str(&format!(
                "{},{},{}\n",
                k as f64 / n as f64,
                self.values[k],
                self.filled[k]
            ));
        }
        out
    }
}

/// One full sweep over the sample pairs with a prebuilt bucket table.
pub(crate) fn grid_sweep(
    star: &BinaryOp,
    table: &BucketTable,
    f_samples: &[f64],
    g_samples: &[f64],
) -> GridFunction {
    let n = table.n;
    let side = n + 1;
    debug_assert_eq!(f_samples.len(), side);
    debug_assert_eq!(g_samples.len(), side);
    let mut out = GridFunction::new_unfilled(n);
    for (i, fv) in f_samples.iter().enumerate() {
        let row = &table.idx[i * side..(i + 1) * side];
        for (bucket, gv) in row.iter().zip(g_samples) {
            out.offer(*bucket as usize, star.eval(*fv, *gv));
        }
    }
    out
}

pub(crate) fn grid_convolve(
    star: &BinaryOp,
    combiner: &BinaryOp,
    f: &MembershipFunction,
    g: &MembershipFunction,
    table: &BucketTable,
    refine_depth: u32,
) -> GridFunction {
    let n = table.n;
    let f_samples = f.sample_values(n);
    let g_samples = g.sample_values(n);
    let mut out = grid_sweep(star, table, &f_samples, &g_samples);
    if out.unfilled_count() > 0 {
        refine_unfilled(star, combiner, f, g, &mut out, refine_depth);
    }
    out
}

/// Subdivide sample cells whose corner images straddle an unfilled bucket.
/// Range pruning by corners assumes a continuous combiner; for anything
/// wilder the bucket simply stays flagged.
fn refine_unfilled(
    star: &BinaryOp,
    combiner: &BinaryOp,
    f: &MembershipFunction,
    g: &MembershipFunction,
    out: &mut GridFunction,
    depth: u32,
) {
    let n = out.resolution;
    let unfilled: Vec<usize> = (0..=n).filter(|k| !out.filled[*k]).collect();
    for &k in &unfilled {
        let (lo, hi) = bucket_range(k, n);
        for i in 0..n {
            for j in 0..n {
                let y0 = i as f64 / n as f64;
                let y1 = (i + 1) as f64 / n as f64;
                let z0 = j as f64 / n as f64;
                let z1 = (j + 1) as f64 / n as f64;
                refine_cell(star, combiner, f, g, out, k, lo, hi, y0, y1, z0, z1, depth);
                if out.filled[k] {
                    break;
                }
            }
            if out.filled[k] {
                break;
            }
        }
    }
}

fn bucket_range(k: usize, n: usize) -> (f64, f64) {
    if k == n {
        (1.0, 1.0)
    } else {
        (k as f64 / n as f64, (k + 1) as f64 / n as f64)
    }
}

#[allow(clippy::too_many_arguments)]
fn refine_cell(
    star: &BinaryOp,
    combiner: &BinaryOp,
    f: &MembershipFunction,
    g: &MembershipFunction,
    out: &mut GridFunction,
    bucket: usize,
    lo: f64,
    hi: f64,
    y0: f64,
    y1: f64,
    z0: f64,
    z1: f64,
    depth: u32,
) {
    let corners = [
        combiner.eval(y0, z0),
        combiner.eval(y0, z1),
        combiner.eval(y1, z0),
        combiner.eval(y1, z1),
    ];
    let cmin = corners.iter().cloned().fold(f64::INFINITY, f64::min);
    let cmax = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if cmax < lo || cmin > hi {
        return;
    }
    let yc = 0.5 * (y0 + y1);
    let zc = 0.5 * (z0 + z1);
    let xc = combiner.eval(yc, zc);
    let n = out.resolution;
    if bucket_of(xc, n) == bucket {
        out.offer(bucket, star.eval(f.eval_f64(yc), g.eval_f64(zc)));
        return;
    }
    if depth == 0 {
        return;
    }
    for (a0, a1) in [(y0, yc), (yc, y1)] {
        for (b0, b1) in [(z0, zc), (zc, z1)] {
            refine_cell(
                star,
                combiner,
                f,
                g,
                out,
                bucket,
                lo,
                hi,
                a0,
                a1,
                b0,
                b1,
                depth - 1,
            );
            if out.filled[bucket] {
                return;
            }
        }
    }
}
